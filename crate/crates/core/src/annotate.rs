//! Bounding boxes over render traces and YOLO-format labels.
//!
//! Class 0 is a lead waveform region; classes 1..=12 are the lead names in
//! canonical order, so `c = 1` is the name "I" and `c = 9` is "V3".

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::layout::PxRect;
use crate::lead::LeadId;
use crate::raster::{RenderTrace, TraceEntry};

/// Default padding around tight boxes; keeps flat-signal boxes from
/// degenerating to one pixel of height.
pub const DEFAULT_BBOX_PAD_PX: u32 = 2;

/// Axis-aligned pixel box inside an image; max edges exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BBox {
    pub x_min: u32,
    pub y_min: u32,
    pub x_max: u32,
    pub y_max: u32,
}

impl BBox {
    pub fn new(x_min: u32, y_min: u32, x_max: u32, y_max: u32) -> Result<Self> {
        if x_min >= x_max || y_min >= y_max {
            return Err(Error::InvalidCrop);
        }
        Ok(Self {
            x_min,
            y_min,
            x_max,
            y_max,
        })
    }

    pub fn width(&self) -> u32 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> u32 {
        self.y_max - self.y_min
    }

    pub fn contains(&self, x: u32, y: u32) -> bool {
        x >= self.x_min && x < self.x_max && y >= self.y_min && y < self.y_max
    }

    pub fn fits_in(&self, width: u32, height: u32) -> bool {
        self.x_max <= width && self.y_max <= height
    }

    /// Expand by `pad` on every side, clamping to the image bounds.
    pub fn pad_clamped(&self, pad: u32, width: u32, height: u32) -> BBox {
        BBox {
            x_min: self.x_min.saturating_sub(pad),
            y_min: self.y_min.saturating_sub(pad),
            x_max: (self.x_max + pad).min(width),
            y_max: (self.y_max + pad).min(height),
        }
    }

    /// Conversion from a signed rect; fails when the rect reaches outside
    /// the image or is degenerate.
    pub fn from_px_rect(rect: &PxRect, width: u32, height: u32) -> Result<Self> {
        if rect.x0 < 0 || rect.y0 < 0 || rect.x1 > width as i64 || rect.y1 > height as i64 {
            return Err(Error::OutOfBounds);
        }
        Self::new(rect.x0 as u32, rect.y0 as u32, rect.x1 as u32, rect.y1 as u32)
    }
}

/// Tight box around a lead instance's painted waveform pixels, padded by
/// `pad_px` and clamped to the image.
pub fn lead_region_bbox(
    entry: &TraceEntry,
    pad_px: u32,
    img_width: u32,
    img_height: u32,
) -> Result<BBox> {
    if entry.waveform_pixels.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let mut x_min = u32::MAX;
    let mut y_min = u32::MAX;
    let mut x_max = 0u32;
    let mut y_max = 0u32;
    for (x, y) in &entry.waveform_pixels {
        x_min = x_min.min(*x);
        y_min = y_min.min(*y);
        x_max = x_max.max(*x + 1);
        y_max = y_max.max(*y + 1);
    }
    Ok(BBox {
        x_min,
        y_min,
        x_max,
        y_max,
    }
    .pad_clamped(pad_px, img_width, img_height))
}

/// The painted lead-name rectangle, padded and clamped. Fails when names
/// were not rendered for this entry.
pub fn name_bbox(
    entry: &TraceEntry,
    pad_px: u32,
    img_width: u32,
    img_height: u32,
) -> Result<BBox> {
    let rect = entry.name_glyph_rect.ok_or(Error::NameNotRendered)?;
    let bbox = BBox::from_px_rect(&rect, img_width, img_height)?;
    Ok(bbox.pad_clamped(pad_px, img_width, img_height))
}

/// YOLO class index of a lead's name label.
pub fn name_class(lead: LeadId) -> u8 {
    lead.index() as u8 + 1
}

/// One YOLO detection label: class index plus normalized box center and
/// size, origin at the image's top-left corner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YoloAnnotation {
    pub class: u8,
    pub x: f64,
    pub y: f64,
    pub w: f64,
    pub h: f64,
}

impl YoloAnnotation {
    /// Serialize as `c x y w h` with six decimal places.
    pub fn to_line(&self) -> String {
        format!(
            "{} {:.6} {:.6} {:.6} {:.6}",
            self.class, self.x, self.y, self.w, self.h
        )
    }

    /// Parse a label line produced by [`YoloAnnotation::to_line`].
    pub fn parse_line(line: &str) -> Result<Self> {
        let mut parts = line.split_ascii_whitespace();
        let mut next = || {
            parts
                .next()
                .ok_or(Error::InvalidArgument("label line has fewer than 5 fields"))
        };
        let class: u8 = next()?
            .parse()
            .map_err(|_| Error::InvalidArgument("label class is not an integer"))?;
        let mut floats = [0.0f64; 4];
        for slot in &mut floats {
            *slot = next()?
                .parse()
                .map_err(|_| Error::InvalidArgument("label coordinate is not a number"))?;
        }
        Ok(Self {
            class,
            x: floats[0],
            y: floats[1],
            w: floats[2],
            h: floats[3],
        })
    }

    /// Back to pixel corners for the given image size.
    pub fn denormalize(&self, img_width: u32, img_height: u32) -> (f64, f64, f64, f64) {
        let w = self.w * img_width as f64;
        let h = self.h * img_height as f64;
        let x0 = self.x * img_width as f64 - w / 2.0;
        let y0 = self.y * img_height as f64 - h / 2.0;
        (x0, y0, x0 + w, y0 + h)
    }
}

/// Normalize a pixel box to a YOLO annotation for an image of the given
/// size.
pub fn to_yolo(bbox: &BBox, class: u8, img_width: u32, img_height: u32) -> Result<YoloAnnotation> {
    if !bbox.fits_in(img_width, img_height) {
        return Err(Error::OutOfBounds);
    }
    if class > 12 {
        return Err(Error::InvalidArgument("class index must be 0..=12"));
    }
    let w = img_width as f64;
    let h = img_height as f64;
    Ok(YoloAnnotation {
        class,
        x: (bbox.x_min + bbox.x_max) as f64 / (2.0 * w),
        y: (bbox.y_min + bbox.y_max) as f64 / (2.0 * h),
        w: bbox.width() as f64 / w,
        h: bbox.height() as f64 / h,
    })
}

/// Annotate a rendered page: one class-0 box per lead instance in render
/// order, then one name box per rendered name in render order.
pub fn annotate_page(trace: &RenderTrace, pad_px: u32) -> Result<Vec<YoloAnnotation>> {
    let mut labels = Vec::with_capacity(trace.entries.len() * 2);
    for entry in &trace.entries {
        let bbox = lead_region_bbox(entry, pad_px, trace.width, trace.height)?;
        labels.push(to_yolo(&bbox, 0, trace.width, trace.height)?);
    }
    for entry in &trace.entries {
        if entry.name_glyph_rect.is_none() {
            continue;
        }
        let bbox = name_bbox(entry, pad_px, trace.width, trace.height)?;
        labels.push(to_yolo(&bbox, name_class(entry.lead), trace.width, trace.height)?);
    }
    Ok(labels)
}
