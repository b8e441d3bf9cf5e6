//! File formats, reports, SVG drawings and the subcommands behind the
//! `oslcm` binary.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod render;
pub mod report;

pub use error::{CliError, ParseError};
