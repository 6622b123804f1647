//! Deterministic software rasterizer for ECG pages.
//!
//! Paint order is background, minor grid, major grid, separators, lead
//! names, waveforms. Waveforms are per-sample polylines drawn with Bresenham
//! segments and a square brush; nothing is anti-aliased, so mask renders are
//! strictly two-tone and pixel sets can be compared exactly. Alongside the
//! pixel buffer every render produces a [`RenderTrace`] recording which
//! pixels each lead instance painted; the trace is the ground truth for
//! bounding boxes, masks and overlap classification.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::font;
use crate::layout::{page_geometry, signal_to_px, CellGeom, LayoutSpec, PxRect, StyleSpec};
use crate::lead::LeadId;
use crate::math;
use crate::signal::SignalRecord;

/// Owned 2-D pixel buffer, row-major, top-left origin. 1 channel
/// (grayscale) or 3 channels (RGB).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: u32,
    height: u32,
    channels: u8,
    pixels: Vec<u8>,
}

impl RasterImage {
    pub fn new_gray(width: u32, height: u32, fill: u8) -> Self {
        Self {
            width,
            height,
            channels: 1,
            pixels: alloc::vec![fill; width as usize * height as usize],
        }
    }

    pub fn new_rgb(width: u32, height: u32, fill: [u8; 3]) -> Self {
        let mut pixels = Vec::with_capacity(width as usize * height as usize * 3);
        for _ in 0..width as usize * height as usize {
            pixels.extend_from_slice(&fill);
        }
        Self {
            width,
            height,
            channels: 3,
            pixels,
        }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn channels(&self) -> u8 {
        self.channels
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn in_bounds(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && x < self.width as i64 && y < self.height as i64
    }

    fn offset(&self, x: u32, y: u32) -> usize {
        (y as usize * self.width as usize + x as usize) * self.channels as usize
    }

    /// Paint one pixel, clipping at the image edges. Returns whether the
    /// pixel was inside the image. `px` must match the channel count.
    pub fn put(&mut self, x: i64, y: i64, px: &[u8]) -> bool {
        debug_assert_eq!(px.len(), self.channels as usize);
        if !self.in_bounds(x, y) {
            return false;
        }
        let at = self.offset(x as u32, y as u32);
        self.pixels[at..at + px.len()].copy_from_slice(px);
        true
    }

    /// Pixel value at (x, y); slice length equals the channel count.
    pub fn get(&self, x: u32, y: u32) -> &[u8] {
        let at = self.offset(x, y);
        &self.pixels[at..at + self.channels as usize]
    }

    pub fn get_gray(&self, x: u32, y: u32) -> u8 {
        debug_assert_eq!(self.channels, 1);
        self.pixels[self.offset(x, y)]
    }

    pub fn get_rgb(&self, x: u32, y: u32) -> [u8; 3] {
        debug_assert_eq!(self.channels, 3);
        let at = self.offset(x, y);
        [self.pixels[at], self.pixels[at + 1], self.pixels[at + 2]]
    }

    /// Vertical run `[y0, y1)` at column x, clipped.
    pub fn vline(&mut self, x: i64, y0: i64, y1: i64, px: &[u8]) {
        for y in y0.max(0)..y1.min(self.height as i64) {
            self.put(x, y, px);
        }
    }

    /// Horizontal run `[x0, x1)` at row y, clipped.
    pub fn hline(&mut self, y: i64, x0: i64, x1: i64, px: &[u8]) {
        for x in x0.max(0)..x1.min(self.width as i64) {
            self.put(x, y, px);
        }
    }

    /// Copy out the sub-image `[x0, x1) x [y0, y1)`. The rectangle must be
    /// inside the image and non-degenerate.
    pub fn crop(&self, x0: u32, y0: u32, x1: u32, y1: u32) -> RasterImage {
        assert!(x0 < x1 && y0 < y1 && x1 <= self.width && y1 <= self.height);
        let ch = self.channels as usize;
        let w = (x1 - x0) as usize;
        let mut pixels = Vec::with_capacity(w * (y1 - y0) as usize * ch);
        for y in y0..y1 {
            let start = self.offset(x0, y);
            pixels.extend_from_slice(&self.pixels[start..start + w * ch]);
        }
        RasterImage {
            width: x1 - x0,
            height: y1 - y0,
            channels: self.channels,
            pixels,
        }
    }

    /// Integer-luma grayscale conversion; grayscale images pass through
    /// unchanged.
    pub fn to_gray(&self) -> RasterImage {
        if self.channels == 1 {
            return self.clone();
        }
        let mut pixels = Vec::with_capacity(self.width as usize * self.height as usize);
        for rgb in self.pixels.chunks_exact(3) {
            let luma =
                (rgb[0] as u32 * 299 + rgb[1] as u32 * 587 + rgb[2] as u32 * 114 + 500) / 1000;
            pixels.push(luma as u8);
        }
        RasterImage {
            width: self.width,
            height: self.height,
            channels: 1,
            pixels,
        }
    }
}

/// Pixels painted for one rendered lead instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub lead: LeadId,
    pub is_rhythm: bool,
    /// Painted waveform pixels, sorted and deduplicated, all inside the page.
    pub waveform_pixels: Vec<(u32, u32)>,
    /// Tight rectangle of the painted lead-name glyphs, when names were
    /// rendered and at least one glyph pixel landed on the page.
    pub name_glyph_rect: Option<PxRect>,
}

/// Exact record of what a render painted, per lead instance, in render
/// order (grid cells row-major, rhythm strip last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderTrace {
    pub width: u32,
    pub height: u32,
    pub entries: Vec<TraceEntry>,
}

impl RenderTrace {
    pub fn entry_for(&self, lead: LeadId, is_rhythm: bool) -> Option<&TraceEntry> {
        self.entries
            .iter()
            .find(|e| e.lead == lead && e.is_rhythm == is_rhythm)
    }

    /// Union of waveform pixels over every instance of `lead`.
    pub fn lead_pixels(&self, lead: LeadId) -> Vec<(u32, u32)> {
        let mut pixels: Vec<(u32, u32)> = self
            .entries
            .iter()
            .filter(|e| e.lead == lead)
            .flat_map(|e| e.waveform_pixels.iter().copied())
            .collect();
        pixels.sort_unstable();
        pixels.dedup();
        pixels
    }
}

enum RenderMode<'a> {
    Display(&'a StyleSpec),
    Mask {
        target: Option<LeadId>,
        line_thickness_px: u32,
    },
}

/// Render the display page: calibrated grid, separators, lead names and all
/// waveforms, styled by `style`. Two calls with equal inputs produce
/// byte-identical buffers.
pub fn render_page(
    record: &SignalRecord,
    layout: &LayoutSpec,
    style: &StyleSpec,
) -> Result<(RasterImage, RenderTrace)> {
    style.validate()?;
    render(record, layout, RenderMode::Display(style))
}

/// Render the grayscale mask page: background 255, waveforms 0, no grid,
/// names or separators. With `target` set, only that lead's instances are
/// painted (clean-mask mode). `line_thickness_px` must match the display
/// style for the mask to align with the page pixel-for-pixel.
pub fn render_mask_page(
    record: &SignalRecord,
    layout: &LayoutSpec,
    target: Option<LeadId>,
    line_thickness_px: u32,
) -> Result<(RasterImage, RenderTrace)> {
    if line_thickness_px == 0 {
        return Err(Error::InvalidArgument("line thickness must be at least 1"));
    }
    render(
        record,
        layout,
        RenderMode::Mask {
            target,
            line_thickness_px,
        },
    )
}

fn render(
    record: &SignalRecord,
    layout: &LayoutSpec,
    mode: RenderMode<'_>,
) -> Result<(RasterImage, RenderTrace)> {
    let geom = page_geometry(layout);
    let required_s = geom.cells.iter().map(|c| c.t1).fold(0.0f64, f64::max);
    if record.duration_s() + 1e-9 < required_s {
        return Err(Error::RecordTooShort {
            required_s,
            actual_s: record.duration_s(),
        });
    }

    let mut image = match &mode {
        RenderMode::Display(style) => {
            RasterImage::new_rgb(geom.width_px, geom.height_px, style.background_color)
        }
        RenderMode::Mask { .. } => RasterImage::new_gray(geom.width_px, geom.height_px, 255),
    };

    let mut name_rects: Vec<Option<PxRect>> = alloc::vec![None; geom.cells.len()];
    if let RenderMode::Display(style) = &mode {
        if style.show_grid {
            paint_grid(&mut image, layout, style);
        }
        if style.show_separators {
            paint_separators(&mut image, &geom, style);
        }
        if style.show_lead_names {
            for (i, cell) in geom.cells.iter().enumerate() {
                // Fixed anchor just inside the cell's top-left corner.
                let anchor = (cell.rect.x0 + 4, cell.rect.y0 + 4);
                name_rects[i] = font::draw_text(
                    &mut image,
                    cell.lead.name(),
                    anchor,
                    style.font_scale,
                    &style.waveform_color,
                )?;
            }
        }
    }

    let (thickness, target) = match &mode {
        RenderMode::Display(style) => (style.line_thickness_px, None),
        RenderMode::Mask {
            target,
            line_thickness_px,
        } => (*line_thickness_px, *target),
    };
    let paint: &[u8] = match &mode {
        RenderMode::Display(style) => &style.waveform_color,
        RenderMode::Mask { .. } => &[0u8],
    };

    let mut entries = Vec::with_capacity(geom.cells.len());
    for (i, cell) in geom.cells.iter().enumerate() {
        if let Some(target) = target {
            if cell.lead != target {
                continue;
            }
        }
        let pixels = paint_waveform(&mut image, record, cell, layout, thickness, paint)?;
        entries.push(TraceEntry {
            lead: cell.lead,
            is_rhythm: cell.is_rhythm,
            waveform_pixels: pixels,
            name_glyph_rect: name_rects[i],
        });
    }

    let trace = RenderTrace {
        width: geom.width_px,
        height: geom.height_px,
        entries,
    };
    Ok((image, trace))
}

fn paint_waveform(
    image: &mut RasterImage,
    record: &SignalRecord,
    cell: &CellGeom,
    layout: &LayoutSpec,
    thickness: u32,
    paint: &[u8],
) -> Result<Vec<(u32, u32)>> {
    let range = record.sample_range(cell.t0, cell.t1);
    if range.is_empty() {
        return Err(Error::InvalidArgument(
            "sampling rate too low to place a sample in every cell window",
        ));
    }
    let samples = record.lead(cell.lead);
    let fs = record.fs();
    let mut points = Vec::with_capacity(range.len());
    for k in range {
        let t = k as f64 / fs;
        points.push(signal_to_px(t, samples[k], cell, &layout.calibration)?);
    }

    let mut sink = Vec::new();
    if points.len() == 1 {
        stamp_brush(image, points[0].0, points[0].1, thickness, paint, &mut sink);
    }
    for pair in points.windows(2) {
        draw_segment(image, pair[0], pair[1], thickness, paint, &mut sink);
    }
    sink.sort_unstable();
    sink.dedup();
    Ok(sink)
}

/// Stamp a `thickness` x `thickness` square centred on (x, y), biased
/// towards the top-left for even sizes. Records painted pixels in `sink`.
fn stamp_brush(
    image: &mut RasterImage,
    x: i64,
    y: i64,
    thickness: u32,
    paint: &[u8],
    sink: &mut Vec<(u32, u32)>,
) {
    let t = thickness as i64;
    let lo = (t - 1) / 2;
    for dy in 0..t {
        for dx in 0..t {
            let px = x - lo + dx;
            let py = y - lo + dy;
            if image.put(px, py, paint) {
                sink.push((px as u32, py as u32));
            }
        }
    }
}

/// Bresenham line from p0 to p1 inclusive, thickened with the square brush.
fn draw_segment(
    image: &mut RasterImage,
    p0: (i64, i64),
    p1: (i64, i64),
    thickness: u32,
    paint: &[u8],
    sink: &mut Vec<(u32, u32)>,
) {
    let (mut x, mut y) = p0;
    let dx = (p1.0 - p0.0).abs();
    let sx = if p0.0 < p1.0 { 1 } else { -1 };
    let dy = -(p1.1 - p0.1).abs();
    let sy = if p0.1 < p1.1 { 1 } else { -1 };
    let mut err = dx + dy;
    loop {
        stamp_brush(image, x, y, thickness, paint, sink);
        if x == p1.0 && y == p1.1 {
            break;
        }
        let e2 = 2 * err;
        if e2 >= dy {
            err += dy;
            x += sx;
        }
        if e2 <= dx {
            err += dx;
            y += sy;
        }
    }
}

fn paint_grid(image: &mut RasterImage, layout: &LayoutSpec, style: &StyleSpec) {
    let ppb = layout.calibration.px_per_large_box as f64;
    let minor = ppb / 5.0;
    let w = image.width() as i64;
    let h = image.height() as i64;

    // Minor lines first, majors painted over them.
    let mut k = 0i64;
    loop {
        let x = math::round_px(k as f64 * minor);
        if x >= w {
            break;
        }
        image.vline(x, 0, h, &style.grid_minor_color);
        k += 1;
    }
    let mut k = 0i64;
    loop {
        let y = math::round_px(k as f64 * minor);
        if y >= h {
            break;
        }
        image.hline(y, 0, w, &style.grid_minor_color);
        k += 1;
    }
    let mut k = 0i64;
    loop {
        let x = math::round_px(k as f64 * ppb);
        if x >= w {
            break;
        }
        image.vline(x, 0, h, &style.grid_major_color);
        k += 1;
    }
    let mut k = 0i64;
    loop {
        let y = math::round_px(k as f64 * ppb);
        if y >= h {
            break;
        }
        image.hline(y, 0, w, &style.grid_major_color);
        k += 1;
    }
}

fn paint_separators(
    image: &mut RasterImage,
    geom: &crate::layout::PageGeometry,
    style: &StyleSpec,
) {
    let mut xs: Vec<i64> = geom.cells.iter().map(|c| c.rect.x0).collect();
    let mut ys: Vec<i64> = geom.cells.iter().map(|c| c.rect.y0).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();

    let plot_x0 = geom.cells.iter().map(|c| c.rect.x0).min().unwrap_or(0);
    let plot_x1 = geom.cells.iter().map(|c| c.rect.x1).max().unwrap_or(0);
    // Horizontal separators at every interior band boundary.
    for y in ys.iter().skip(1) {
        image.hline(*y, plot_x0, plot_x1, &style.separator_color);
    }
    // Vertical separators between columns, spanning the grid rows only.
    let (rows_y0, rows_y1) = geom.rows_y_range();
    for x in xs.iter().skip(1) {
        image.vline(*x, rows_y0, rows_y1, &style.separator_color);
    }
}
