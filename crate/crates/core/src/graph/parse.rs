//! Plain-text edge lists.
//!
//! One edge per line as two whitespace-separated nonnegative integers.
//! Blank lines and lines starting with `#` are ignored. An optional header
//! line `n <count>` before the first edge fixes the vertex count.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

struct RawEdgeList {
    declared_n: Option<usize>,
    edges: Vec<(u64, u64)>,
}

fn parse_raw(text: &str) -> Result<RawEdgeList> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens[0] == "n" {
            if declared_n.is_some() || !edges.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: "header `n <count>` must appear once, before any edge".into(),
                });
            }
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: "expected `n <count>`".into(),
                });
            }
            let count = parse_index(tokens[1], line)?;
            declared_n = Some(usize::try_from(count).map_err(|_| Error::Parse {
                line,
                message: format!("vertex count {count} too large"),
            })?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected two vertex indices, found {} tokens", tokens.len()),
            });
        }
        let u = parse_index(tokens[0], line)?;
        let v = parse_index(tokens[1], line)?;
        if u == v {
            return Err(Error::SelfLoop {
                vertex: u as usize,
                line: Some(line),
            });
        }
        if let Some(n) = declared_n {
            if let Some(&w) = [u, v].iter().find(|&&w| w >= n as u64) {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex {w} exceeds declared count {n}"),
                });
            }
        }
        edges.push((u, v));
    }
    Ok(RawEdgeList { declared_n, edges })
}

fn parse_index(token: &str, line: usize) -> Result<u64> {
    token.parse::<u64>().map_err(|_| Error::Parse {
        line,
        message: format!("invalid vertex index `{token}`"),
    })
}

/// Parses an edge list into a graph with dense labels. Without a header the
/// vertex count is one more than the largest index, so unused indices become
/// isolated vertices.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let raw = parse_raw(text)?;
    let n = match raw.declared_n {
        Some(n) => n,
        None => raw
            .edges
            .iter()
            .map(|&(u, v)| u.max(v) as usize + 1)
            .max()
            .unwrap_or(0),
    };
    Graph::from_edges(n, raw.edges.iter().map(|&(u, v)| (u as usize, v as usize)))
}

/// A graph together with the original label of each dense vertex index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<u64>,
    index_of: BTreeMap<u64, usize>,
}

impl LabeledGraph {
    /// Identity labels `0..n`.
    pub fn unlabeled(graph: Graph) -> Self {
        let labels: Vec<u64> = (0..graph.n() as u64).collect();
        Self::with_labels(graph, labels)
    }

    fn with_labels(graph: Graph, labels: Vec<u64>) -> Self {
        let index_of = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        LabeledGraph {
            graph,
            labels,
            index_of,
        }
    }

    pub fn vertex_for_label(&self, label: u64) -> Result<VertexId> {
        self.index_of
            .get(&label)
            .map(|&i| VertexId(i))
            .ok_or(Error::UnknownLabel(label))
    }

    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v.index()]
    }
}

/// Parses an edge list, compacting sparse labels. With a header the labels
/// are taken as dense indices `0..count`; without one, only labels that
/// occur in some edge become vertices, numbered in ascending label order.
pub fn parse_labeled_edge_list(text: &str) -> Result<LabeledGraph> {
    let raw = parse_raw(text)?;
    if let Some(n) = raw.declared_n {
        let g = Graph::from_edges(n, raw.edges.iter().map(|&(u, v)| (u as usize, v as usize)))?;
        return Ok(LabeledGraph::unlabeled(g));
    }
    let mut labels: Vec<u64> = raw.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    let index_of: BTreeMap<u64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let g = Graph::from_edges(
        labels.len(),
        raw.edges.iter().map(|(u, v)| (index_of[u], index_of[v])),
    )?;
    Ok(LabeledGraph {
        graph: g,
        labels,
        index_of,
    })
}

/// Writes the graph as an edge list with an `n <count>` header.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "n {}", g.n()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}
