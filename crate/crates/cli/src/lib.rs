//! Text format and command-line front end for the `multicat` library.

pub mod commands;
pub mod text;

pub use commands::{run, Cli, Outcome, OPERATIONS};
