//! Immutable simple undirected graphs.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hash::Fnv64;

/// Vertex identifier, always in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

/// A simple undirected graph on vertices `0..n` with sorted adjacency lists.
///
/// Graphs never change after construction, so they can be shared freely
/// between threads.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
}

/// Result of building a graph from a raw edge list that may contain repeats.
#[derive(Debug, Clone)]
pub struct Built {
    pub graph: Graph,
    /// Edges that appeared more than once, normalized to `(min, max)`.
    pub duplicates: Vec<(Vertex, Vertex)>,
}

impl Graph {
    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph, rejecting self-loops and out-of-range endpoints.
    /// Repeated edges are collapsed and reported in [`Built::duplicates`].
    pub fn build<I>(n: usize, edges: I) -> Result<Built, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut duplicates = Vec::new();
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            let before = list.len();
            let mut prev = None;
            list.retain(|&v| {
                let keep = prev != Some(v);
                if !keep && u < v {
                    duplicates.push((u, v));
                }
                prev = Some(v);
                keep
            });
            debug_assert!(list.len() <= before);
        }
        duplicates.sort_unstable();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Built {
            graph: Graph { adj, edge_count },
            duplicates,
        })
    }

    /// Builds a graph from edges that are known to be simple and distinct.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::build(n, edges).map(|b| b.graph)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// `true` when every vertex can reach every other one. The empty graph
    /// counts as connected.
    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.n()
    }

    /// Stable 64-bit identifier derived from the adjacency structure.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv64::new();
        h.write_usize(self.n());
        for (u, v) in self.edges() {
            h.write_usize(u);
            h.write_usize(v);
        }
        h.finish()
    }

    /// The subgraph induced by `keep`, relabelled to `0..keep.len()` in the
    /// order given.
    pub fn induced(&self, keep: &[Vertex]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = keep.iter().enumerate().flat_map(|(i, &u)| {
            let index = &index;
            self.adj[u]
                .iter()
                .filter_map(move |&v| (index[v] != usize::MAX && i < index[v]).then_some((i, index[v])))
        });
        Graph::from_edges(keep.len(), edges).expect("induced subgraph of a simple graph is simple")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_dedups_and_sorts() {
        let b = Graph::build(3, [(2, 0), (0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(b.duplicates, vec![(0, 1)]);
        assert_eq!(b.graph.edge_count(), 3);
        assert_eq!(b.graph.neighbors(0), &[1, 2]);
        assert_eq!(b.graph.neighbors(2), &[0, 1]);
    }

    #[test]
    fn rejects_self_loop_and_range() {
        assert_eq!(Graph::build(3, [(2, 2)]).unwrap_err(), GraphError::SelfLoop(2));
        assert!(matches!(
            Graph::build(2, [(0, 2)]).unwrap_err(),
            GraphError::VertexOutOfRange { .. }
        ));
    }

    #[test]
    fn induced_relabels() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let h = g.induced(&[3, 0, 1]);
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::empty(0).is_connected());
        assert!(!Graph::empty(2).is_connected());
        assert!(Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap().is_connected());
    }
}
