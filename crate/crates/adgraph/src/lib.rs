//! Command-line front end for `adgraph-core`.
//!
//! Each subcommand is a library function returning structured data, with
//! separate rendering into text or JSON, so tests can drive them without
//! spawning processes. `main.rs` only parses arguments and maps errors to
//! exit codes.

pub mod bindings;
pub mod commands;
pub mod dot;
pub mod error;
pub mod format;
pub mod trace;

pub use bindings::parse_bindings;
pub use commands::{check, evaluate, gradient, Gradient, Mode};
pub use error::CliError;
pub use trace::{trace, Notation, TraceRow};
