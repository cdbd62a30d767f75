//! JSON report documents shared by the CLI, the cache and the C ABI.
//!
//! Every document carries `schema-version`, `operation`, `parameters` and
//! `status`. Vertices are written in the textual permutation syntax.
//! Keys are emitted in sorted order, so equal inputs give equal bytes
//! apart from the volatile timing fields.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::fault::{CertificateSource, CutCertificate, SearchResult};
use crate::star::StarGraph;

pub const SCHEMA_VERSION: u64 = 1;

/// Fields excluded from run-to-run identity.
pub const VOLATILE_FIELDS: &[&str] = &["elapsed-ms", "created-at"];

pub fn document(operation: &str, parameters: Value, status: &str, body: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("schema-version".into(), json!(SCHEMA_VERSION));
    doc.insert("operation".into(), json!(operation));
    doc.insert("parameters".into(), parameters);
    doc.insert("status".into(), json!(status));
    if let Value::Object(fields) = body {
        doc.extend(fields);
    }
    Value::Object(doc)
}

pub fn error_document(err: &Error) -> Value {
    json!({
        "schema-version": SCHEMA_VERSION,
        "status": "error",
        "error": { "kind": err.kind(), "message": err.to_string() },
    })
}

pub fn vertex_names(g: &StarGraph, vertices: &[usize]) -> Vec<String> {
    vertices.iter().map(|&v| g.label(v).to_string()).collect()
}

pub fn certificate_json(g: &StarGraph, c: &CutCertificate) -> Value {
    json!({
        "h": c.h,
        "size": c.size(),
        "valid": c.valid,
        "cut": vertex_names(g, &c.cut),
        "witness": vertex_names(g, &c.witness),
    })
}

pub fn search_status(r: &SearchResult) -> &'static str {
    if r.budget_hit {
        "skipped-budget"
    } else if r.value.is_some() {
        "ok"
    } else {
        "none-found"
    }
}

/// Body fields of a search result (merged into a document).
pub fn search_json(g: &StarGraph, r: &SearchResult) -> Value {
    json!({
        "value": r.value,
        "certificate": r.certificate.as_ref().map(|c| certificate_json(g, c)),
        "certificate-source": r.certificate_source.map(|s| match s {
            CertificateSource::Search => "search",
            CertificateSource::Hint => "hint",
        }),
        "exhaustive_below": r.exhaustive_below,
        "lower_bound": r.lower_bound,
        "upper_bound": r.upper_bound,
        "candidates": r.candidates,
        "budget_hit": r.budget_hit,
        "elapsed-ms": r.elapsed.as_millis() as u64,
    })
}

/// Removes timing fields recursively.
pub fn strip_volatile(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for key in VOLATILE_FIELDS {
                map.remove(*key);
            }
            map.values_mut().for_each(strip_volatile);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_volatile),
        _ => {}
    }
}

pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("json values serialize");
    s.push('\n');
    s
}

/// Parses a vertex-set file: one textual permutation per line; blank lines
/// and `#` comments are ignored.
pub fn parse_vertex_list(g: &StarGraph, text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v = g
            .parse_vertex(line)
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        if out.contains(&v) {
            return Err(Error::Parse(format!("line {}: vertex {line} listed twice", lineno + 1)));
        }
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_file_syntax() {
        let g = StarGraph::build(4, 2).unwrap();
        let text = "# header\n\n1,2\n 2,1 # trailing\n";
        let vs = parse_vertex_list(&g, text).unwrap();
        assert_eq!(vertex_names(&g, &vs), ["1,2", "2,1"]);
        assert!(parse_vertex_list(&g, "1,1\n").is_err());
        assert!(parse_vertex_list(&g, "1,2\n1,2\n").is_err());
        assert!(parse_vertex_list(&g, "1,2,3\n").is_err());
    }

    #[test]
    fn strip_removes_nested_timing() {
        let mut v = json!({"elapsed-ms": 3, "a": [{"elapsed-ms": 1, "b": 2}], "created-at": 9});
        strip_volatile(&mut v);
        assert_eq!(v, json!({"a": [{"b": 2}]}));
    }

    #[test]
    fn document_has_fixed_header() {
        let d = document("info", json!({"n": 4}), "ok", json!({"order": 12}));
        let keys: Vec<&String> = d.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["operation", "order", "parameters", "schema-version", "status"]);
    }
}
