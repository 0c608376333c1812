//! File formats and JSON schemas for the `hstar` command-line tool.

pub mod format;
