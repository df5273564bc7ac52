//! Command-line front end for `m4-core`: JSON certificates, schemas and
//! digest manifests.

pub mod cli;
pub mod json;
pub mod manifest;
pub mod schema;

pub const TOOL_VERSION: &str = concat!("m4 ", env!("CARGO_PKG_VERSION"));
