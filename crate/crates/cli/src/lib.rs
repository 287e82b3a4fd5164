//! Spec-file format and command-line driver for `pwl-density`.

pub mod app;
pub mod error;
pub mod format;
pub mod lcg;
pub mod spec;

pub use app::run;
pub use error::CliError;
pub use spec::{parse_spec, write_spec, DistributionSpec, Model};
