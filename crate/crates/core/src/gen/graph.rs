use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Result, SboError};

/// Simple undirected graph with 1-based node ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Edges are stored as given, each normalized to `(min, max)`. Self-loops,
    /// out-of-range endpoints and repeated edges are rejected.
    pub fn new(node_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if node_count == 0 {
            return Err(SboError::Validation("graph needs at least one node".into()));
        }
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u == v {
                return Err(SboError::Validation(format!("self-loop at node {u}")));
            }
            if u == 0 || v == 0 || u > node_count || v > node_count {
                return Err(SboError::Validation(format!(
                    "edge ({u}, {v}) has an endpoint outside 1..={node_count}"
                )));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(SboError::Validation(format!("duplicate edge ({u}, {v})")));
            }
            normalized.push(e);
        }
        Ok(Self {
            node_count,
            edges: normalized,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Parses `n m` followed by `m` lines `u v`. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .enumerate()
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let pair = |(no, line): (usize, &str)| -> Result<(usize, usize)> {
            let bad = || SboError::Validation(format!("line {}: expected two integers, got {line:?}", no + 1));
            let mut it = line.split_whitespace();
            let a = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let b = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if it.next().is_some() {
                return Err(bad());
            }
            Ok((a, b))
        };
        let header = lines
            .next()
            .ok_or_else(|| SboError::Validation("empty graph file".into()))?;
        let (n, m) = pair(header)?;
        let edges = lines.map(pair).collect::<Result<Vec<_>>>()?;
        if edges.len() != m {
            return Err(SboError::Validation(format!(
                "header announces {m} edges, found {}",
                edges.len()
            )));
        }
        Self::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.node_count, self.edges.len());
        for (u, v) in &self.edges {
            writeln!(out, "{u} {v}").expect("writing to a string");
        }
        out
    }
}
