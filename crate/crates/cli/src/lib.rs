//! Batch front end for `mfspec_core`: JSON configs in, CSV or JSON tables out.

pub mod config;
pub mod run;
pub mod table;
pub mod validate;

pub use config::{parse_config, RunConfig};
pub use run::{execute, run_file, Outcome, Status};
