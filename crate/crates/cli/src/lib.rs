//! File formats, reports and the `novelty` command-line tool built on
//! [`novelty_core`].

pub mod alloc_track;
pub mod bench;
pub mod cli;
pub mod error;
pub mod io;
pub mod report;

pub use error::{CliError, Result};
