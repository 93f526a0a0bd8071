//! IO companion of the CVA engine: CSV market-data loading, synthetic
//! fixture generation, the calibration pipeline, and the parallel
//! scenario runner behind the `cva` binary.

pub mod calibrate;
pub mod config;
pub mod error;
pub mod fixtures;
pub mod market_data;
pub mod params_io;
pub mod run;

pub use error::{CliError, Result};
