//! File formats and subcommands behind the `posmap` binary.

pub mod args;
pub mod commands;
pub mod error;
pub mod matrix_file;
pub mod report;

pub use error::CliError;
