//! File formats, configuration and batch orchestration for the `ecgforge`
//! dataset generator. The rendering and annotation primitives live in
//! `ecgforge-core`; this crate adds WFDB/CSV/JSON ingestion, PNG/BMP/JPEG
//! encoding, the task pipelines and the round-trip verification command.

pub mod config;
pub mod csvio;
pub mod encode;
pub mod error;
pub mod jsonio;
pub mod pipeline;
pub mod verifycmd;
pub mod wfdb;

pub use config::{ConfigOverrides, PipelineConfig, Task};
pub use error::{ConfigError, LoadError};
pub use pipeline::{run_generate, RunSummary};
pub use verifycmd::{run_verify, VerifySummary};
