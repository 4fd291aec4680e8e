//! Text formats and literal parsing for the `waring` command-line tool.

pub mod expr;
pub mod format;
