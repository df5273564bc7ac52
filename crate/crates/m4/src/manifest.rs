//! Digest manifests for regression comparison of certificates.
//!
//! Each line is `<sha256 hex>  <certificate path>`, sorted by path. The
//! digest covers the certificate with `tool_version` removed, so it is stable
//! across releases that do not change the output.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::json::to_text;

pub fn certificate_digest(cert: &Value) -> String {
    let mut v = cert.clone();
    if let Value::Object(m) = &mut v {
        m.shift_remove("tool_version");
    }
    Sha256::digest(to_text(&v).as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn parse_manifest(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .filter_map(|l| l.split_once("  "))
        .map(|(d, p)| (p.to_string(), d.to_string()))
        .collect()
}

pub fn render_manifest(entries: &BTreeMap<String, String>) -> String {
    entries.iter().map(|(p, d)| format!("{d}  {p}\n")).collect()
}

/// Adds or replaces the entry for `cert_path`, keeping the others.
pub fn update_manifest(manifest: &Path, cert_path: &str, digest: &str) -> io::Result<()> {
    let mut entries = match fs::read_to_string(manifest) {
        Ok(text) => parse_manifest(&text),
        Err(e) if e.kind() == io::ErrorKind::NotFound => BTreeMap::new(),
        Err(e) => return Err(e),
    };
    entries.insert(cert_path.to_string(), digest.to_string());
    fs::write(manifest, render_manifest(&entries))
}
