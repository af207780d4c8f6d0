//! File format, JSON reports and subcommands for the `plumbsw` binary.
//!
//! * [`dsl`]: the graph file format.
//! * [`report`]: the JSON report and its plain-text rendering.
//! * [`commands`]: `analyze`, `sw`, `ehrhart-fit` and `verify`.

pub mod commands;
pub mod dsl;
pub mod report;

pub use commands::{cmd_analyze, cmd_ehrhart_fit, cmd_sw, cmd_verify, CliError, Method, Options};
pub use dsl::{parse_graph, ParseError};
pub use report::Report;

/// Reads and parses a graph file.
pub fn load(path: &str) -> Result<plumbsw_core::PlumbingGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })?;
    parse_graph(&text).map_err(|source| CliError::Parse { path: Some(path.to_string()), source })
}
