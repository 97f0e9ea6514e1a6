//! Whitespace-separated edge lists (KONECT/SNAP style) in, canonical edge lists out.
//!
//! Data rows hold two endpoint tokens followed by anything (weights,
//! timestamps), which is ignored. Lines starting with `%` or `#` are
//! comments. External ids are arbitrary strings mapped to dense ids in order
//! of first appearance. Self-loops are dropped, duplicate or reversed edges
//! collapse, so directed inputs come out symmetrized.
//!
//! A file whose first line is the canonical header (`% canonical nodes=N`)
//! instead declares the ids `0..N` literally, which keeps isolated nodes and
//! node numbering intact across a write/read cycle.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

const CANONICAL_PREFIX: &str = "% canonical nodes=";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListDocument {
    pub source_path: Option<String>,
    /// Data rows read, before cleaning.
    pub raw_edge_count: usize,
    pub dropped_self_loops: usize,
    pub dropped_duplicates: usize,
    /// External id of each dense node id.
    pub node_ids: Vec<String>,
}

impl EdgeListDocument {
    /// Dense id of an external id.
    pub fn dense_id(&self, external: &str) -> Option<usize> {
        self.node_ids.iter().position(|s| s == external)
    }

    pub fn edge_count(&self) -> usize {
        self.raw_edge_count - self.dropped_self_loops - self.dropped_duplicates
    }
}

fn canonical_node_count(first_line: &str) -> Option<usize> {
    first_line.trim().strip_prefix(CANONICAL_PREFIX)?.trim().parse().ok()
}

/// Parses edge-list text into a cleaned graph plus its provenance record.
pub fn parse_edge_list(text: &str) -> Result<(EdgeListDocument, Graph)> {
    let declared = text.lines().next().and_then(canonical_node_count);
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut node_ids: Vec<String> = Vec::new();
    if let Some(n) = declared {
        node_ids = (0..n).map(|i| i.to_string()).collect();
        ids = node_ids.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    }
    let mut doc = EdgeListDocument {
        source_path: None,
        raw_edge_count: 0,
        dropped_self_loops: 0,
        dropped_duplicates: 0,
        node_ids: Vec::new(),
    };
    let mut seen = HashSet::new();
    let mut edges = Vec::new();

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("expected two endpoint ids, got `{line}`"),
            });
        };
        doc.raw_edge_count += 1;
        let mut dense = |tok: &str| -> Result<usize> {
            if let Some(&id) = ids.get(tok) {
                return Ok(id);
            }
            if declared.is_some() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: format!("node `{tok}` outside the declared range"),
                });
            }
            let id = node_ids.len();
            ids.insert(tok.to_owned(), id);
            node_ids.push(tok.to_owned());
            Ok(id)
        };
        let (u, v) = (dense(a)?, dense(b)?);
        if u == v {
            doc.dropped_self_loops += 1;
            continue;
        }
        if !seen.insert((u.min(v), u.max(v))) {
            doc.dropped_duplicates += 1;
            continue;
        }
        edges.push((u, v));
    }
    if node_ids.is_empty() {
        return Err(Error::EmptyInput("edge list has no data rows"));
    }
    let g = Graph::from_edges(node_ids.len(), edges)?;
    doc.node_ids = node_ids;
    Ok((doc, g))
}

pub fn read_edge_list<R: Read>(mut reader: R) -> Result<(EdgeListDocument, Graph)> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    parse_edge_list(&text)
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<(EdgeListDocument, Graph)> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let (mut doc, g) = parse_edge_list(&text)?;
    doc.source_path = Some(path.display().to_string());
    Ok((doc, g))
}

/// Canonical text form: the node-count header, then `u v` with `u < v`, sorted.
pub fn to_canonical_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(12 * g.edge_count() + 32);
    let _ = writeln!(out, "{CANONICAL_PREFIX}{}", g.node_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub nodes: usize,
    pub edges: usize,
    pub mean_degree: f64,
    pub clustering: f64,
    pub avg_path_length: f64,
    pub largest_component: usize,
    pub components: usize,
    pub raw_edge_count: usize,
    pub dropped_self_loops: usize,
    pub dropped_duplicates: usize,
    pub warnings: Vec<String>,
}

pub fn graph_summary(g: &Graph, doc: &EdgeListDocument) -> GraphSummary {
    let path = g.average_shortest_path();
    let mut warnings = Vec::new();
    if g.edge_count() == 0 {
        warnings.push("graph has no edges after cleaning".to_owned());
    }
    if path.degenerate {
        warnings.push("largest component is a single node; path length reported as 0".to_owned());
    }
    GraphSummary {
        nodes: g.node_count(),
        edges: g.edge_count(),
        mean_degree: g.mean_degree(),
        clustering: g.global_clustering(),
        avg_path_length: path.mean,
        largest_component: path.component_size,
        components: g.components().len(),
        raw_edge_count: doc.raw_edge_count,
        dropped_self_loops: doc.dropped_self_loops,
        dropped_duplicates: doc.dropped_duplicates,
        warnings,
    }
}
