//! Line-oriented text format.
//!
//! ```text
//! g 2
//! v 2
//! e 0 0 0
//! e 1 0 1
//! e 2 1 1
//! n 0 a1
//! ```
//!
//! Edge lines carry an explicit id; ids must form `0..edge_count`. Name lines
//! are optional. Blank lines and lines starting with `#` are skipped.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::TrivalentGraph;
use crate::error::GraphError;

pub(super) fn to_text(graph: &TrivalentGraph) -> String {
    let mut out = String::new();
    writeln!(out, "g {}", graph.genus()).unwrap();
    writeln!(out, "v {}", graph.vertex_count()).unwrap();
    for (id, (u, v)) in graph.edges().iter().enumerate() {
        writeln!(out, "e {id} {u} {v}").unwrap();
    }
    for (id, name) in graph.names() {
        writeln!(out, "n {id} {name}").unwrap();
    }
    out
}

pub(super) fn from_text(text: &str) -> Result<TrivalentGraph, GraphError> {
    let mut genus = None;
    let mut vertices = None;
    let mut edges: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    let mut names = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: &str| GraphError::Parse {
            line,
            msg: msg.to_string(),
        };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let tag = fields.next().unwrap();
        let mut num = |what: &str| -> Result<usize, GraphError> {
            fields
                .next()
                .ok_or_else(|| err(&format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|_| err(&format!("malformed {what}")))
        };
        match tag {
            "g" => genus = Some(num("genus")?),
            "v" => vertices = Some(num("vertex count")?),
            "e" => {
                let id = num("edge id")?;
                let u = num("endpoint")?;
                let v = num("endpoint")?;
                if edges.insert(id, (u, v)).is_some() {
                    return Err(err("duplicate edge id"));
                }
            }
            "n" => {
                let id = num("edge id")?;
                let name = fields.collect::<Vec<_>>().join(" ");
                if name.is_empty() {
                    return Err(err("missing edge name"));
                }
                names.insert(id, name);
                continue;
            }
            _ => return Err(err(&format!("unknown record {tag:?}"))),
        }
        if fields.next().is_some() {
            return Err(err("trailing fields"));
        }
    }
    let genus = genus.ok_or(GraphError::Parse {
        line: 0,
        msg: "missing genus line".into(),
    })?;
    let vertices = vertices.ok_or(GraphError::Parse {
        line: 0,
        msg: "missing vertex line".into(),
    })?;
    if edges.keys().enumerate().any(|(i, &id)| i != id) {
        return Err(GraphError::Parse {
            line: 0,
            msg: "edge ids must be 0..edge_count".into(),
        });
    }
    if let Some(&bad) = names.keys().find(|&&id| id >= edges.len()) {
        return Err(GraphError::Parse {
            line: 0,
            msg: format!("name for unknown edge {bad}"),
        });
    }
    let genus = u32::try_from(genus).map_err(|_| GraphError::Parse {
        line: 0,
        msg: "genus too large".into(),
    })?;
    Ok(TrivalentGraph::new(genus, vertices, edges.into_values().collect())?.with_names(names))
}
