//! Text formats and the command-line front end.

pub mod cli;
mod document;
mod records;

pub use document::{
    parse_graph_document, serialize_graph, serialize_loaded, serialize_pair, DocumentError, Loaded,
};
pub use records::{read_report, record, render, write_report, RecordError, RECORD_FORMAT};
