//! Experiment runner for Cantor-sequence quantum walks: config files, a
//! parallel job runner and CSV output.

pub mod angle;
pub mod config;
pub mod error;
pub mod output;
pub mod runner;

pub use error::{AppError, Result};
pub use runner::{JobResult, RunOutput, Runner, SweepRow};
