//! File formats, reports and subcommands of the `descoord` tool.

pub mod commands;
pub mod dot;
pub mod format;
pub mod report;
