//! Undirected simple connected graphs and their combinatorial Laplacian.
//!
//! Vertices are `0..n`. Every constructor rejects self-loops and disconnected
//! inputs, so any [`Graph`] value can be handed straight to the spectral code.

mod families;
mod random;

pub use families::{GraphFamily, GraphRegistry};
pub use random::{random_graph, RANDOM_GRAPH_RETRIES};

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted, deduplicated, each pair stored as `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
    name: Option<String>,
}

impl Graph {
    /// Builds a graph from an edge iterator. Edges may appear in either
    /// orientation and more than once.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        name: Option<String>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { vertex: u, line: 0 });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if b >= n {
                return Err(Error::IndexOutOfRange { index: b, n });
            }
            set.insert((a, b));
        }
        let g = Self {
            n,
            edges: set.into_iter().collect(),
            name,
        };
        let components = g.component_count();
        if components > 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn component_count(&self) -> usize {
        count_components(self.n, &self.edges)
    }

    /// Combinatorial Laplacian `D - A`.
    ///
    /// This is positive semidefinite; heat flow is `exp(-tL)` throughout the
    /// crate.
    pub fn laplacian(&self) -> SymmetricMatrix {
        let deg = self.degrees();
        let edges: BTreeSet<_> = self.edges.iter().copied().collect();
        SymmetricMatrix::from_upper(self.n, |i, j| {
            if i == j {
                deg[i] as f64
            } else if edges.contains(&(i, j)) {
                -1.0
            } else {
                0.0
            }
        })
    }

    /// One `"u v"` line per edge, `u < v`, ascending, newline-terminated.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.edges.len() * 8);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Parses whitespace-separated `u v` lines. Blank lines and lines starting
/// with `#` are skipped; `n` is one more than the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut max_vertex = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || Error::MalformedLine {
            line: line_no,
            content: raw.to_string(),
        };
        let mut tokens = line.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(malformed());
        };
        let u: usize = a.parse().map_err(|_| malformed())?;
        let v: usize = b.parse().map_err(|_| malformed())?;
        if u == v {
            return Err(Error::SelfLoop {
                vertex: u,
                line: line_no,
            });
        }
        max_vertex = max_vertex.max(Some(u.max(v)));
        edges.push((u, v));
    }
    let n = max_vertex.map_or(0, |m| m + 1);
    Graph::new(n, edges, None)
}

fn count_components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for &(u, v) in edges {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            components -= 1;
        }
    }
    components
}

pub(crate) fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    count_components(n, edges) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path_and_cycle() {
        let p3 = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(p3.n(), 3);
        assert_eq!(p3.edges(), &[(0, 1), (1, 2)]);

        let c4 = parse_edge_list("0 1\n1 2\n2 3\n3 0").unwrap();
        assert_eq!(c4.n(), 4);
        assert_eq!(c4.edge_count(), 4);
    }

    #[test]
    fn parse_skips_comments_and_dedups() {
        let g = parse_edge_list("# header\n\n0 1\n1 0\n  1 2  \n# tail\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_edge_list("0 1\n\n2 3"),
            Err(Error::Disconnected { components: 2 })
        ));
        assert!(matches!(
            parse_edge_list("0 1\n1 x"),
            Err(Error::MalformedLine { line: 2, .. })
        ));
        assert!(matches!(
            parse_edge_list("0 1 2"),
            Err(Error::MalformedLine { .. })
        ));
        assert!(matches!(
            parse_edge_list("0 -1"),
            Err(Error::MalformedLine { .. })
        ));
        assert!(matches!(
            parse_edge_list("0 1\n2 2"),
            Err(Error::SelfLoop { vertex: 2, line: 2 })
        ));
        assert!(matches!(
            parse_edge_list("# nothing\n"),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn isolated_trailing_vertex_is_disconnected() {
        // Vertex 1 never appears but 0 and 2 do.
        assert!(matches!(
            parse_edge_list("0 2"),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn laplacian_small_graphs() {
        let p3 = parse_edge_list("0 1\n1 2").unwrap().laplacian();
        let expected = [1.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 1.0];
        assert_eq!(p3.as_slice(), &expected);

        let k3 = parse_edge_list("0 1\n0 2\n1 2").unwrap().laplacian();
        let expected = [2.0, -1.0, -1.0, -1.0, 2.0, -1.0, -1.0, -1.0, 2.0];
        assert_eq!(k3.as_slice(), &expected);

        let c4 = parse_edge_list("0 1\n1 2\n2 3\n3 0").unwrap().laplacian();
        for i in 0..4 {
            assert_eq!(c4.get(i, i), 2.0);
            assert_eq!(c4.get(i, (i + 1) % 4), -1.0);
            assert_eq!(c4.get(i, (i + 2) % 4), 0.0);
        }
    }

    #[test]
    fn serializer_format() {
        let g = parse_edge_list("2 1\n0 1").unwrap();
        assert_eq!(g.to_edge_list(), "0 1\n1 2\n");
    }
}
