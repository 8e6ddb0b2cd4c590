//! The `pretzel` command line: notation parsing, subcommands, report rendering
//! and the result cache.

pub mod cache;
pub mod commands;
pub mod output;
pub mod parse;

pub use commands::{main_with_args, Cli, Command};
pub use parse::{parse_pretzel, render, ParseError};
