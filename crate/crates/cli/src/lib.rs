//! Workspace files, reports and subcommands for the `trimat` binary.

pub mod commands;
pub mod format;
pub mod report;
pub mod workspace;
