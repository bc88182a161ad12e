//! Instance files, JSON reports and subcommands behind the `latref` binary.

pub mod commands;
pub mod instance;
pub mod json;
