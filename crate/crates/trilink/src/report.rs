//! Report documents emitted by the command-line interface: serializable
//! key/value structures plus a flattened human-readable rendering.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::gauss::InvariantReport;
use crate::geometry::BridgeCheckSummary;

/// FNV-1a hash of raw config bytes, used as the link identity for file
/// sources.
pub fn content_hash(bytes: &[u8]) -> String {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a:{hash:016x}")
}

/// One μ evaluation: method, truncation, raw value and integer reading.
#[derive(Clone, Debug, Serialize)]
pub struct MuSection {
    pub method: String,
    pub grid: usize,
    pub cutoff: Option<usize>,
    pub raw: f64,
    pub rounded: i64,
    pub residual: f64,
    /// primitive-pairing cross-check, when the command runs one
    #[serde(skip_serializing_if = "Option::is_none")]
    pub whitehead_raw: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check_gap: Option<f64>,
}

impl MuSection {
    pub fn new(method: String, grid: usize, cutoff: Option<usize>, raw: f64) -> Self {
        let rounded = raw.round() as i64;
        MuSection {
            method,
            grid,
            cutoff,
            raw,
            rounded,
            residual: (raw - rounded as f64).abs(),
            whitehead_raw: None,
            cross_check_gap: None,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InvariantsDocument {
    pub command: String,
    pub link: String,
    pub flags: BTreeMap<String, String>,
    pub invariants: InvariantReport,
    /// present only when the pairwise linking numbers all vanish
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<MuSection>,
    pub timings_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Serialize)]
pub struct MuDocument {
    pub command: String,
    pub link: String,
    pub flags: BTreeMap<String, String>,
    pub mu: MuSection,
    pub timings_ms: BTreeMap<String, f64>,
}

#[derive(Debug, Serialize)]
pub struct BridgeDocument {
    pub command: String,
    pub flags: BTreeMap<String, String>,
    pub summary: BridgeCheckSummary,
    pub timings_ms: BTreeMap<String, f64>,
}

/// Flatten a JSON document into aligned `path  value` rows.
pub fn human_table(value: &serde_json::Value) -> String {
    let mut rows: Vec<(String, String)> = Vec::new();
    flatten("", value, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (key, val) in rows {
        out.push_str(&format!("{key:<width$}  {val}\n"));
    }
    out
}

fn flatten(prefix: &str, value: &serde_json::Value, rows: &mut Vec<(String, String)>) {
    match value {
        serde_json::Value::Object(map) => {
            for (key, inner) in map {
                let path = if prefix.is_empty() {
                    key.clone()
                } else {
                    format!("{prefix}.{key}")
                };
                flatten(&path, inner, rows);
            }
        }
        serde_json::Value::Array(items) => {
            let rendered: Vec<String> = items
                .iter()
                .map(|item| match item {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        item.to_string()
                    }
                    other => value_string(other),
                })
                .collect();
            rows.push((prefix.to_string(), format!("[{}]", rendered.join(", "))));
        }
        other => rows.push((prefix.to_string(), value_string(other))),
    }
}

fn value_string(value: &serde_json::Value) -> String {
    match value {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn content_hash_is_stable() {
        assert_eq!(content_hash(b""), "fnv1a:cbf29ce484222325");
        assert_eq!(content_hash(b"a"), content_hash(b"a"));
        assert_ne!(content_hash(b"a"), content_hash(b"b"));
    }

    #[test]
    fn human_table_flattens_nested_documents() {
        let doc = serde_json::json!({
            "command": "mu",
            "mu": { "raw": -0.999, "rounded": -1 },
            "degrees": [0.0, 1.0, 2.0],
        });
        let table = human_table(&doc);
        assert!(table.contains("mu.raw"));
        assert!(table.contains("degrees"));
        assert!(table.contains("command"));
    }
}
