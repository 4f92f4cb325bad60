//! Command-line front end for `linrec`.

mod commands;
pub mod io;

pub use commands::{run, Cli, CliError, Output};
