//! JSON formats and subcommands of the `painleve` command-line tool.

pub mod commands;
pub mod json;
