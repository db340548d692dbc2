//! Graph text format and DOT export.
//!
//! ```text
//! # comment
//! vertices: A B C
//! edge: A -> B
//! edge: B -> C
//! ```
//!
//! Vertices must be declared before an edge names them. LF and CRLF line
//! endings are both accepted.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{is_valid_name, DirectedGraph};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<DirectedGraph> {
    let mut vertices: Vec<&str> = Vec::new();
    let mut declared: BTreeSet<&str> = BTreeSet::new();
    let mut edges: BTreeSet<(&str, &str)> = BTreeSet::new();

    for (i, raw) in text.split('\n').enumerate() {
        let line_no = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw).trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices:") {
            for name in rest.split_whitespace() {
                if !is_valid_name(name) {
                    return Err(err(line_no, format!("invalid vertex name {name:?}")));
                }
                if !declared.insert(name) {
                    return Err(err(line_no, format!("duplicate vertex {name}")));
                }
                vertices.push(name);
            }
        } else if let Some(rest) = line.strip_prefix("edge:") {
            let (tail, head) = rest
                .split_once("->")
                .ok_or_else(|| err(line_no, "expected \"edge: NAME -> NAME\""))?;
            let (tail, head) = (tail.trim(), head.trim());
            for name in [tail, head] {
                if !is_valid_name(name) {
                    return Err(err(line_no, format!("invalid vertex name {name:?}")));
                }
                if !declared.contains(name) {
                    return Err(err(line_no, format!("undeclared vertex {name}")));
                }
            }
            if tail == head {
                return Err(err(line_no, format!("self-loop on {tail}")));
            }
            if !edges.insert((tail, head)) {
                return Err(err(line_no, format!("duplicate edge {tail} -> {head}")));
            }
        } else {
            return Err(err(line_no, format!("unrecognised line {line:?}")));
        }
    }
    DirectedGraph::new(vertices, edges)
}

/// Canonical text: one `vertices:` line, then edges sorted by (tail, head).
pub fn serialize_graph(g: &DirectedGraph) -> String {
    let mut out = String::from("vertices:");
    for v in g.vertices() {
        out.push(' ');
        out.push_str(v.as_str());
    }
    out.push('\n');
    for (t, h) in g.edges() {
        let _ = writeln!(out, "edge: {} -> {}", g.name(t), g.name(h));
    }
    out
}

pub fn export_dot(g: &DirectedGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for (t, h) in g.edges() {
        let _ = writeln!(out, "  \"{}\" -> \"{}\";", g.name(t), g.name(h));
    }
    out.push_str("}\n");
    out
}
