use std::collections::HashSet;
use std::fmt;

use super::HardnessError;

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    /// Normalized so that `u < v`, in input order.
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from zero-based edges, rejecting loops and duplicates.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, HardnessError> {
        let mut seen = HashSet::new();
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(HardnessError::InvalidGraph(format!(
                    "edge {} {} references a vertex outside 1..={vertex_count}",
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(HardnessError::InvalidGraph(format!("self-loop at vertex {}", u + 1)));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(HardnessError::InvalidGraph(format!("duplicate edge {} {}", e.0 + 1, e.1 + 1)));
            }
            normalized.push(e);
        }
        Ok(Graph {
            vertex_count,
            edges: normalized,
        })
    }

    /// Parses the edge-list format: a header `n m`, then `m` lines `u v` (one-based).
    pub fn parse(text: &str) -> Result<Self, HardnessError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse_pair = |line: usize, text: &str| -> Result<(usize, usize), HardnessError> {
            let fields: Vec<&str> = text.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(HardnessError::Parse {
                    line,
                    reason: format!("expected two integers, found {:?}", text),
                });
            }
            let num = |s: &str| {
                s.parse::<usize>().map_err(|_| HardnessError::Parse {
                    line,
                    reason: format!("{s:?} is not a nonnegative integer"),
                })
            };
            Ok((num(fields[0])?, num(fields[1])?))
        };
        let (line, header) = lines.next().ok_or(HardnessError::Parse {
            line: 1,
            reason: "missing header line \"n m\"".into(),
        })?;
        let (n, m) = parse_pair(line, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, text) in lines {
            let (u, v) = parse_pair(line, text)?;
            if u == 0 || v == 0 || u > n || v > n {
                return Err(HardnessError::Parse {
                    line,
                    reason: format!("vertex indices must lie in 1..={n}"),
                });
            }
            edges.push((u - 1, v - 1));
        }
        if edges.len() != m {
            return Err(HardnessError::Parse {
                line,
                reason: format!("header declares {m} edges but {} were listed", edges.len()),
            });
        }
        Graph::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.contains(&e)
    }

    pub fn is_cover(&self, vertices: &[usize]) -> bool {
        self.edges
            .iter()
            .all(|(u, v)| vertices.contains(u) || vertices.contains(v))
    }

    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycles on at least 3 vertices are simple")
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("complete graphs are simple")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|v| (v - 1, v))).expect("paths are simple")
    }
}

impl fmt::Display for Graph {
    /// The edge-list format accepted by [`Graph::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.vertex_count, self.edges.len())?;
        for (u, v) in &self.edges {
            writeln!(f, "{} {}", u + 1, v + 1)?;
        }
        Ok(())
    }
}
