//! Core primitives for turning 12-lead ECG time-series records into
//! calibrated clinical-style page images and machine-learning annotations.
//!
//! Everything in this crate is deterministic and IO-free: records and layouts
//! go in; pixel buffers, render traces, bounding boxes and digitized series
//! come out. Float math goes through `libm` so renders are byte-identical
//! across platforms. File formats, encoders and the batch CLI live in the
//! companion `ecgforge` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod annotate;
pub mod error;
pub mod font;
pub mod layout;
pub mod lead;
mod math;
pub mod raster;
pub mod segmask;
pub mod signal;
pub mod verify;

pub use annotate::{annotate_page, lead_region_bbox, name_bbox, to_yolo, BBox, YoloAnnotation};
pub use error::{Error, Result};
pub use layout::{
    make_layout, page_geometry, signal_to_px, Calibration, CellGeom, LayoutKind, LayoutSpec,
    Margins, PageGeometry, PxRect, StyleSpec,
};
pub use lead::LeadId;
pub use raster::{render_mask_page, render_page, RasterImage, RenderTrace, TraceEntry};
pub use segmask::{binarize_mask, classify_overlap, crop_lead, make_overlap_sample, LeadCrop};
pub use signal::{resample, synth_record, SignalRecord};
pub use verify::{digitize_mask, score, DigitizedTrace, Score};
