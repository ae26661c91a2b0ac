//! Command-line front end for `lambda-osc-core`: argument parsing, CSV and
//! JSON output, and the `verify` report.

pub mod cli;
pub mod commands;
pub mod output;
pub mod scalar;
pub mod verify;

pub use commands::{run, AppError, Rendered};
pub use scalar::LambdaValue;
