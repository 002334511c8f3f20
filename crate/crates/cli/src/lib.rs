//! Parsing and wire-format support for the `mlv` command-line tool.

pub mod output;
pub mod parse;
