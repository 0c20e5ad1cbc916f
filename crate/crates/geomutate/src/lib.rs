//! Test harness, file formats and command line for GIS mutation testing on
//! top of `geomutate-core`.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod harness;
pub mod manifest;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
