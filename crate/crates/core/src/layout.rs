//! Lead-grid layouts, calibration math and pixel geometry.
//!
//! A page is a grid of lead cells plus an optional full-width rhythm strip.
//! All pixel coordinates are integers rounded half-away-from-zero, so a
//! layout maps to exactly one geometry on every platform.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lead::LeadId;
use crate::math;

/// Seconds covered by one page row.
pub const PAGE_SECONDS: f64 = 10.0;

/// Default lead-row height in large boxes; keeps typical waveforms inside
/// their band.
pub const DEFAULT_ROW_HEIGHT_BOXES: f64 = 6.0;

/// Reduced row height that reliably makes neighbouring waveforms bleed into
/// each other's bands.
pub const OVERLAP_ROW_HEIGHT_BOXES: f64 = 3.0;

/// Clinical calibration: the size of one large grid box in seconds, mV and
/// pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Calibration {
    pub seconds_per_large_box: f64,
    pub mv_per_large_box: f64,
    pub px_per_large_box: u32,
}

impl Default for Calibration {
    fn default() -> Self {
        Self {
            seconds_per_large_box: 0.2,
            mv_per_large_box: 0.5,
            px_per_large_box: 20,
        }
    }
}

impl Calibration {
    /// Pixels per second.
    pub fn scale_x(&self) -> f64 {
        self.px_per_large_box as f64 / self.seconds_per_large_box
    }

    /// Pixels per mV.
    pub fn scale_y(&self) -> f64 {
        self.px_per_large_box as f64 / self.mv_per_large_box
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.seconds_per_large_box.is_finite()
            && self.seconds_per_large_box > 0.0
            && self.mv_per_large_box.is_finite()
            && self.mv_per_large_box > 0.0
            && self.px_per_large_box > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument("calibration values must be positive"))
        }
    }
}

/// The four supported grid configurations (rows x columns).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayoutKind {
    ThreeByOne,
    ThreeByFour,
    SixByTwo,
    TwelveByOne,
}

impl LayoutKind {
    pub const ALL: [LayoutKind; 4] = [
        LayoutKind::ThreeByOne,
        LayoutKind::ThreeByFour,
        LayoutKind::SixByTwo,
        LayoutKind::TwelveByOne,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            LayoutKind::ThreeByOne => "3x1",
            LayoutKind::ThreeByFour => "3x4",
            LayoutKind::SixByTwo => "6x2",
            LayoutKind::TwelveByOne => "12x1",
        }
    }

    pub fn from_name(name: &str) -> Result<LayoutKind> {
        match name.trim() {
            "3x1" => Ok(LayoutKind::ThreeByOne),
            "3x4" => Ok(LayoutKind::ThreeByFour),
            "6x2" => Ok(LayoutKind::SixByTwo),
            "12x1" => Ok(LayoutKind::TwelveByOne),
            other => Err(Error::InvalidLayout(other.to_string())),
        }
    }

    pub const fn rows(self) -> usize {
        match self {
            LayoutKind::ThreeByOne | LayoutKind::ThreeByFour => 3,
            LayoutKind::SixByTwo => 6,
            LayoutKind::TwelveByOne => 12,
        }
    }

    pub const fn cols(self) -> usize {
        match self {
            LayoutKind::ThreeByFour => 4,
            LayoutKind::SixByTwo => 2,
            _ => 1,
        }
    }

    const fn supports_rhythm(self) -> bool {
        matches!(self, LayoutKind::ThreeByFour | LayoutKind::SixByTwo)
    }

    /// Leads in row-major cell order.
    fn lead_table(self) -> &'static [LeadId] {
        use LeadId::*;
        match self {
            LayoutKind::ThreeByOne => &[I, II, III],
            // Standard clinical column order: limb, augmented, V1-V3, V4-V6.
            LayoutKind::ThreeByFour => &[I, AVR, V1, V4, II, AVL, V2, V5, III, AVF, V3, V6],
            LayoutKind::SixByTwo => &[I, V1, II, V2, III, V3, AVR, V4, AVL, V5, AVF, V6],
            LayoutKind::TwelveByOne => &LeadId::ALL,
        }
    }
}

impl core::fmt::Display for LayoutKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Page margins in large boxes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margins {
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
}

impl Default for Margins {
    fn default() -> Self {
        Self {
            left: 1.0,
            right: 1.0,
            top: 1.0,
            bottom: 1.0,
        }
    }
}

/// One grid cell: which lead it shows, where it sits and which time window
/// of the record it covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub lead: LeadId,
    pub row: usize,
    pub col: usize,
    /// Window start, inclusive, seconds.
    pub t0: f64,
    /// Window end, exclusive, seconds.
    pub t1: f64,
}

/// A fully resolved page layout.
#[derive(Debug, Clone, PartialEq)]
pub struct LayoutSpec {
    pub kind: LayoutKind,
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<Cell>,
    /// Lead repeated full-length at the bottom of the page, if any.
    pub rhythm: Option<LeadId>,
    pub row_height_boxes: f64,
    pub margins_boxes: Margins,
    pub calibration: Calibration,
}

/// Build one of the four supported layouts. `rhythm` adds a full-length
/// lead II strip and is only valid for the multi-column layouts.
pub fn make_layout(
    kind: LayoutKind,
    calibration: Calibration,
    row_height_boxes: f64,
    rhythm: bool,
) -> Result<LayoutSpec> {
    calibration.validate()?;
    if !(row_height_boxes.is_finite() && row_height_boxes > 0.0) {
        return Err(Error::InvalidArgument("row height must be positive"));
    }
    if rhythm && !kind.supports_rhythm() {
        return Err(Error::InvalidArgument(
            "rhythm strip is only supported for 3x4 and 6x2 layouts",
        ));
    }

    let rows = kind.rows();
    let cols = kind.cols();
    let window = PAGE_SECONDS / cols as f64;
    let table = kind.lead_table();
    let mut cells = Vec::with_capacity(table.len());
    for (i, lead) in table.iter().enumerate() {
        let row = i / cols;
        let col = i % cols;
        cells.push(Cell {
            lead: *lead,
            row,
            col,
            t0: col as f64 * window,
            t1: (col + 1) as f64 * window,
        });
    }

    Ok(LayoutSpec {
        kind,
        rows,
        cols,
        cells,
        rhythm: rhythm.then_some(LeadId::II),
        row_height_boxes,
        margins_boxes: Margins::default(),
        calibration,
    })
}

/// Axis-aligned pixel rectangle, max edges exclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PxRect {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl PxRect {
    pub fn width(&self) -> i64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> i64 {
        self.y1 - self.y0
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        x >= self.x0 && x < self.x1 && y >= self.y0 && y < self.y1
    }

    pub fn intersects(&self, other: &PxRect) -> bool {
        self.x0 < other.x1 && other.x0 < self.x1 && self.y0 < other.y1 && other.y0 < self.y1
    }
}

/// Pixel placement of one rendered lead instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellGeom {
    pub lead: LeadId,
    pub is_rhythm: bool,
    /// Band rectangle the lead nominally occupies. Waveforms may exceed it.
    pub rect: PxRect,
    /// y of 0 mV for this lead.
    pub baseline_y: i64,
    pub t0: f64,
    pub t1: f64,
}

/// Resolved page geometry: page size plus one entry per rendered lead
/// instance (grid cells in row-major order, rhythm strip last).
#[derive(Debug, Clone, PartialEq)]
pub struct PageGeometry {
    pub width_px: u32,
    pub height_px: u32,
    pub cells: Vec<CellGeom>,
}

impl PageGeometry {
    /// Vertical extent of the grid rows (excludes the rhythm band).
    pub fn rows_y_range(&self) -> (i64, i64) {
        let mut y0 = i64::MAX;
        let mut y1 = i64::MIN;
        for cell in self.cells.iter().filter(|c| !c.is_rhythm) {
            y0 = y0.min(cell.rect.y0);
            y1 = y1.max(cell.rect.y1);
        }
        (y0, y1)
    }
}

/// Compute the deterministic pixel geometry of a layout.
pub fn page_geometry(layout: &LayoutSpec) -> PageGeometry {
    let ppb = layout.calibration.px_per_large_box as f64;
    let scale_x = layout.calibration.scale_x();
    let margins = &layout.margins_boxes;
    let left = margins.left * ppb;
    let top = margins.top * ppb;
    let band_h = layout.row_height_boxes * ppb;
    let window = PAGE_SECONDS / layout.cols as f64;

    let bands = layout.rows + usize::from(layout.rhythm.is_some());
    let width_px = math::ceil(left + PAGE_SECONDS * scale_x + margins.right * ppb) as u32;
    let height_px = math::ceil(top + bands as f64 * band_h + margins.bottom * ppb) as u32;

    let band_rect = |row: usize, x0: f64, x1: f64| PxRect {
        x0: math::round_px(x0),
        y0: math::round_px(top + row as f64 * band_h),
        x1: math::round_px(x1),
        y1: math::round_px(top + (row + 1) as f64 * band_h),
    };
    let baseline = |row: usize| math::round_px(top + (row as f64 + 0.5) * band_h);

    let mut cells = Vec::with_capacity(layout.cells.len() + 1);
    for cell in &layout.cells {
        let x0 = left + cell.col as f64 * window * scale_x;
        let x1 = left + (cell.col + 1) as f64 * window * scale_x;
        cells.push(CellGeom {
            lead: cell.lead,
            is_rhythm: false,
            rect: band_rect(cell.row, x0, x1),
            baseline_y: baseline(cell.row),
            t0: cell.t0,
            t1: cell.t1,
        });
    }
    if let Some(lead) = layout.rhythm {
        cells.push(CellGeom {
            lead,
            is_rhythm: true,
            rect: band_rect(layout.rows, left, left + PAGE_SECONDS * scale_x),
            baseline_y: baseline(layout.rows),
            t0: 0.0,
            t1: PAGE_SECONDS,
        });
    }

    PageGeometry {
        width_px,
        height_px,
        cells,
    }
}

const WINDOW_EPS: f64 = 1e-9;

/// Map a (time, voltage) pair to integer pixel coordinates inside a cell.
/// y grows downward and is deliberately not clamped to the cell band.
pub fn signal_to_px(t: f64, v: f64, cell: &CellGeom, calibration: &Calibration) -> Result<(i64, i64)> {
    if t < cell.t0 - WINDOW_EPS || t >= cell.t1 + WINDOW_EPS {
        return Err(Error::OutOfWindow {
            t,
            t0: cell.t0,
            t1: cell.t1,
        });
    }
    let x = cell.rect.x0 as f64 + (t - cell.t0) * calibration.scale_x();
    let y = cell.baseline_y as f64 - v * calibration.scale_y();
    Ok((math::round_px(x), math::round_px(y)))
}

/// Inverse of [`signal_to_px`] up to pixel quantization.
pub fn px_to_signal(x: i64, y: i64, cell: &CellGeom, calibration: &Calibration) -> (f64, f64) {
    let t = cell.t0 + (x - cell.rect.x0) as f64 / calibration.scale_x();
    let v = (cell.baseline_y - y) as f64 / calibration.scale_y();
    (t, v)
}

/// Visual styling of a rendered page.
#[derive(Debug, Clone, PartialEq)]
pub struct StyleSpec {
    pub show_grid: bool,
    pub show_lead_names: bool,
    pub show_separators: bool,
    pub font_scale: u32,
    pub waveform_color: [u8; 3],
    pub grid_major_color: [u8; 3],
    pub grid_minor_color: [u8; 3],
    pub background_color: [u8; 3],
    pub separator_color: [u8; 3],
    pub line_thickness_px: u32,
}

impl Default for StyleSpec {
    fn default() -> Self {
        Self {
            show_grid: true,
            show_lead_names: true,
            show_separators: true,
            font_scale: 2,
            waveform_color: [0, 0, 0],
            grid_major_color: [230, 112, 112],
            grid_minor_color: [247, 196, 196],
            background_color: [255, 255, 255],
            separator_color: [128, 128, 128],
            line_thickness_px: 1,
        }
    }
}

impl StyleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.waveform_color == self.background_color {
            return Err(Error::InvalidArgument(
                "waveform color must differ from the background color",
            ));
        }
        if self.font_scale == 0 || self.line_thickness_px == 0 {
            return Err(Error::InvalidArgument(
                "font scale and line thickness must be at least 1",
            ));
        }
        Ok(())
    }
}
