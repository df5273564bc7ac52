//! The JSON schema shipped with the tool.

/// Draft 2020-12 schema accepted by every JSON document the tool emits.
pub const OUTPUT_SCHEMA: &str = include_str!("../schemas/m4-output.schema.json");
