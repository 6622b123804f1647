//! Embedded 5x7 bitmap font for lead-name labels.
//!
//! The glyph set covers exactly the characters that occur in the 12 lead
//! names: I, V, a, R, L, F and the digits 1..6. Each glyph row is a 5-bit
//! pattern, most significant bit leftmost.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::layout::PxRect;
use crate::raster::RasterImage;

pub const GLYPH_WIDTH: i64 = 5;
pub const GLYPH_HEIGHT: i64 = 7;
/// Blank columns between adjacent glyph cells, before scaling.
pub const GLYPH_SPACING: i64 = 1;

fn glyph_rows(c: char) -> Option<&'static [u8; 7]> {
    match c {
        'I' => Some(&[0b01110, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110]),
        'V' => Some(&[0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b01010, 0b00100]),
        'a' => Some(&[0b00000, 0b00000, 0b01110, 0b00001, 0b01111, 0b10001, 0b01111]),
        'R' => Some(&[0b11110, 0b10001, 0b10001, 0b11110, 0b10100, 0b10010, 0b10001]),
        'L' => Some(&[0b10000, 0b10000, 0b10000, 0b10000, 0b10000, 0b10000, 0b11111]),
        'F' => Some(&[0b11111, 0b10000, 0b10000, 0b11110, 0b10000, 0b10000, 0b10000]),
        '1' => Some(&[0b00100, 0b01100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110]),
        '2' => Some(&[0b01110, 0b10001, 0b00001, 0b00010, 0b00100, 0b01000, 0b11111]),
        '3' => Some(&[0b01110, 0b10001, 0b00001, 0b00110, 0b00001, 0b10001, 0b01110]),
        '4' => Some(&[0b00010, 0b00110, 0b01010, 0b10010, 0b11111, 0b00010, 0b00010]),
        '5' => Some(&[0b11111, 0b10000, 0b11110, 0b00001, 0b00001, 0b10001, 0b01110]),
        '6' => Some(&[0b00110, 0b01000, 0b10000, 0b11110, 0b10001, 0b10001, 0b01110]),
        _ => None,
    }
}

/// Paint `text` with its top-left glyph cell at `anchor`, each font pixel
/// scaled to a `font_scale` square. Painting clips at the image edges.
///
/// Returns the tight rectangle of the pixels actually painted, or `None`
/// when every pixel fell outside the image. Fails with
/// [`Error::UnsupportedGlyph`] before painting anything if `text` contains a
/// character outside the embedded set.
pub fn draw_text(
    image: &mut RasterImage,
    text: &str,
    anchor: (i64, i64),
    font_scale: u32,
    paint: &[u8],
) -> Result<Option<PxRect>> {
    if font_scale == 0 {
        return Err(Error::InvalidArgument("font scale must be at least 1"));
    }
    let glyphs: Vec<&[u8; 7]> = text
        .chars()
        .map(|c| glyph_rows(c).ok_or(Error::UnsupportedGlyph(c)))
        .collect::<Result<_>>()?;

    let scale = font_scale as i64;
    let mut bounds: Option<PxRect> = None;
    for (gi, rows) in glyphs.iter().enumerate() {
        let cell_x = anchor.0 + gi as i64 * (GLYPH_WIDTH + GLYPH_SPACING) * scale;
        for (row, bits) in rows.iter().enumerate() {
            for col in 0..GLYPH_WIDTH {
                if bits & (1 << (GLYPH_WIDTH - 1 - col)) == 0 {
                    continue;
                }
                let x0 = cell_x + col * scale;
                let y0 = anchor.1 + row as i64 * scale;
                for dy in 0..scale {
                    for dx in 0..scale {
                        if image.put(x0 + dx, y0 + dy, paint) {
                            let (px, py) = (x0 + dx, y0 + dy);
                            bounds = Some(match bounds {
                                None => PxRect {
                                    x0: px,
                                    y0: py,
                                    x1: px + 1,
                                    y1: py + 1,
                                },
                                Some(b) => PxRect {
                                    x0: b.x0.min(px),
                                    y0: b.y0.min(py),
                                    x1: b.x1.max(px + 1),
                                    y1: b.y1.max(py + 1),
                                },
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(bounds)
}
