//! Library half of the `xhermite` command-line tool: argument validation,
//! typed report structures, and the subcommand implementations. The binary
//! in `main.rs` is a thin shell over these so that everything is testable
//! without spawning a process.

pub mod commands;
pub mod config;
pub mod reports;
