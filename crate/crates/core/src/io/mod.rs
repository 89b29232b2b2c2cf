//! Run configuration and file formats.

mod artifacts;
mod config;
mod snapshot;

pub use artifacts::{diagnostics_csv, spectral_csv, write_text, FailureRecord, DIAGNOSTICS_HEADER};
pub use config::{parse_config, Case, OutputFormats, RunConfig};
pub use snapshot::{read_snapshot, write_snapshot, Snapshot, SnapshotRow, COLUMNS};
