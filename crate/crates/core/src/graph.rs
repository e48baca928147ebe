//! Simple undirected graphs.

use rand::Rng;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..vertex_count`. Edges are stored
/// as `(u, v)` with `u < v`, in insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Input(format!(
                    "edge {} ({}, {}) has an endpoint outside [1, {vertex_count}]",
                    i + 1,
                    u + 1,
                    v + 1
                )));
            }
            if u == v {
                return Err(Error::Input(format!(
                    "edge {} is a loop on {}",
                    i + 1,
                    u + 1
                )));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::Input(format!(
                    "edge {} ({}, {}) is a parallel edge",
                    i + 1,
                    u + 1,
                    v + 1
                )));
            }
            normalized.push(e);
        }
        Ok(Graph {
            vertex_count,
            edges: normalized,
        })
    }

    pub fn complete(vertex_count: usize) -> Self {
        let edges = (0..vertex_count)
            .flat_map(|u| (u + 1..vertex_count).map(move |v| (u, v)))
            .collect();
        Graph {
            vertex_count,
            edges,
        }
    }

    pub fn edgeless(vertex_count: usize) -> Self {
        Graph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// Erdős–Rényi graph: each vertex pair is an edge with probability `p`.
    pub fn random<R: Rng>(vertex_count: usize, p: f64, rng: &mut R) -> Self {
        let edges = (0..vertex_count)
            .flat_map(|u| (u + 1..vertex_count).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p.clamp(0.0, 1.0)))
            .collect();
        Graph {
            vertex_count,
            edges,
        }
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

    /// Number of edges with both endpoints in `vertices`.
    pub fn induced_edge_count(&self, vertices: &[usize]) -> usize {
        let mut member = vec![false; self.vertex_count];
        for &v in vertices {
            if v < self.vertex_count {
                member[v] = true;
            }
        }
        self.edges
            .iter()
            .filter(|&&(u, v)| member[u] && member[v])
            .count()
    }
}
