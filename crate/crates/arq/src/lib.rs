//! Text formats and the command-line front end for `arq-core`.

pub mod cli;
pub mod dot;
pub mod dsl;
pub mod report;
