//! Simple undirected graphs, edge-list ingestion and summary statistics.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// A simple undirected graph on dense node indices `0..n`.
///
/// Adjacency lists are sorted and symmetric; self-loops and parallel edges
/// are removed at construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge iterator, dropping self-loops and
    /// duplicates. Panics if an endpoint is `>= n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Self::from_raw_adjacency(adj)
    }

    fn from_raw_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Self {
            adj,
            edge_count: twice / 2,
        }
    }

    /// The complete graph on `n` nodes.
    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        Self {
            adj,
            edge_count: n * n.saturating_sub(1) / 2,
        }
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn avg_degree(&self) -> f64 {
        if self.adj.is_empty() {
            return 0.0;
        }
        2.0 * self.edge_count as f64 / self.adj.len() as f64
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Returns the graph with node `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.node_count());
        Graph::from_edges(
            self.node_count(),
            self.edges().map(|(u, v)| (perm[u], perm[v])),
        )
    }

    /// The subgraph induced by the neighbors of `v`, excluding `v`.
    ///
    /// Node `i` of the result is the `i`-th smallest neighbor of `v`.
    pub fn neighborhood(&self, v: usize) -> Result<Graph> {
        let n = self.node_count();
        if v >= n {
            return Err(Error::NodeOutOfRange { node: v, n });
        }
        let ring = &self.adj[v];
        let mut adj = vec![Vec::new(); ring.len()];
        let mut edge_count = 0;
        for (i, &u) in ring.iter().enumerate() {
            for j in sorted_intersection_positions(&self.adj[u], ring) {
                if j > i {
                    adj[i].push(j);
                    adj[j].push(i);
                    edge_count += 1;
                }
            }
        }
        // Pushes for `i` arrive in increasing order of the partner, so
        // lists are already sorted.
        Ok(Graph { adj, edge_count })
    }

    /// Number of edges among the neighbors of `v`, i.e. triangles through `v`.
    pub fn neighborhood_edge_count(&self, v: usize) -> usize {
        let ring = &self.adj[v];
        let twice: usize = ring
            .iter()
            .map(|&u| sorted_intersection_positions(&self.adj[u], ring).count())
            .sum();
        twice / 2
    }

    /// Total number of triangles in the graph.
    pub fn triangle_count(&self) -> usize {
        let through: usize = (0..self.node_count())
            .map(|v| self.neighborhood_edge_count(v))
            .sum();
        through / 3
    }

    pub fn local_clustering(&self, v: usize) -> f64 {
        let k = self.degree(v);
        if k < 2 {
            return 0.0;
        }
        let pairs = (k * (k - 1) / 2) as f64;
        self.neighborhood_edge_count(v) as f64 / pairs
    }

    pub fn summary_stats(&self) -> SummaryStats {
        let n = self.node_count();
        let clustering = if n == 0 {
            0.0
        } else {
            (0..n).map(|v| self.local_clustering(v)).sum::<f64>() / n as f64
        };
        SummaryStats {
            n,
            m: self.edge_count,
            avg_degree: self.avg_degree(),
            clustering,
        }
    }

    /// Graph on the same nodes containing exactly the given subset of edges.
    pub(crate) fn with_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied())
    }
}

/// Yields the positions in `ring` of the elements shared with `list`.
/// Both slices must be sorted.
fn sorted_intersection_positions<'a>(
    list: &'a [usize],
    ring: &'a [usize],
) -> impl Iterator<Item = usize> + 'a {
    let mut a = 0;
    let mut b = 0;
    std::iter::from_fn(move || {
        while a < list.len() && b < ring.len() {
            match list[a].cmp(&ring[b]) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    let pos = b;
                    a += 1;
                    b += 1;
                    return Some(pos);
                }
            }
        }
        None
    })
}

/// Basic measures of a network.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SummaryStats {
    pub n: usize,
    pub m: usize,
    pub avg_degree: f64,
    pub clustering: f64,
}

/// A graph read from an edge list, with the original node tokens.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `labels[i]` is the token that was remapped to node `i`.
    pub labels: Vec<String>,
    pub duplicate_edges: usize,
    pub self_loops: usize,
}

/// Parses a whitespace-separated edge list.
///
/// Lines starting with `#` (after leading whitespace) and blank lines are
/// skipped. Tokens are remapped to dense indices in first-appearance order.
/// Reversed duplicates such as `a b` / `b a` collapse to one undirected edge.
pub fn load_edge_list<'a>(text: &'a str) -> Result<LoadedGraph> {
    let mut index: HashMap<&'a str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut raw_edges = Vec::new();
    let mut self_loops = 0;

    for (lineno, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: lineno + 1,
                found: tokens.len(),
            });
        }
        let mut id = |tok: &'a str| -> usize {
            *index.entry(tok).or_insert_with(|| {
                labels.push(tok.to_string());
                labels.len() - 1
            })
        };
        let u = id(tokens[0]);
        let v = id(tokens[1]);
        if u == v {
            self_loops += 1;
        } else {
            raw_edges.push((u.min(v), u.max(v)));
        }
    }

    if labels.is_empty() {
        return Err(Error::EmptyInput);
    }

    let before = raw_edges.len();
    raw_edges.sort_unstable();
    raw_edges.dedup();
    let duplicate_edges = before - raw_edges.len();

    let graph = Graph::with_edges(labels.len(), &raw_edges);
    Ok(LoadedGraph {
        graph,
        labels,
        duplicate_edges,
        self_loops,
    })
}
