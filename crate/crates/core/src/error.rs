//! Error type shared by all core operations.

use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    /// Layout name is not one of the supported grid configurations.
    #[error("unknown layout name `{0}` (expected 3x1, 3x4, 6x2 or 12x1)")]
    InvalidLayout(String),

    /// A sample time fell outside the cell's time window.
    #[error("time {t} s is outside the cell window [{t0}, {t1}) s")]
    OutOfWindow { t: f64, t0: f64, t1: f64 },

    /// The record does not cover the layout's time windows.
    #[error("record covers {actual_s} s but the layout requires {required_s} s")]
    RecordTooShort { required_s: f64, actual_s: f64 },

    /// A character without a bitmap glyph was passed to the text painter.
    #[error("no bitmap glyph for {0:?}")]
    UnsupportedGlyph(char),

    /// A trace entry holds no painted waveform pixels.
    #[error("trace entry has no waveform pixels")]
    EmptyTrace,

    /// Lead names were not rendered, so no name box exists.
    #[error("lead name was not rendered for this trace entry")]
    NameNotRendered,

    /// A bounding box does not fit inside the image.
    #[error("bounding box exceeds the image bounds")]
    OutOfBounds,

    /// A crop rectangle collapsed to zero area after clamping.
    #[error("crop rectangle is degenerate after clamping")]
    InvalidCrop,

    /// A grayscale mask contained a value other than 0 or 255.
    #[error("mask is not two-tone: found gray value {0}")]
    NotTwoTone(u8),

    /// A binary mask contains no foreground pixels at all.
    #[error("mask has no foreground pixels")]
    EmptyMask,
}
