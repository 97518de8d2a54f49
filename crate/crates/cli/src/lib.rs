//! Library half of the `ldm-wiretap` command-line tool: sweep specifications,
//! CSV rendering and exit-code mapping.

pub mod error;
pub mod spec;
pub mod table;

pub use error::CliError;
