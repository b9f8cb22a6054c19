//! Simple undirected graphs with stable edge indexing.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(u, v)` with `u < v`, sorted lexicographically. Edge
/// `j` is the `j`-th pair of [`Graph::edges`]; every matrix built from a graph
/// uses that index for its edge columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from unordered vertex pairs.
    ///
    /// Pairs are normalized to `u < v` and sorted. Self-loops, repeated pairs
    /// (in either orientation) and endpoints `>= n` are rejected.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, order: n });
                }
            }
            if a == b {
                return Err(Error::InvalidEdge(a));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adjacency })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Index of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut component = Vec::new();
            while let Some(v) = stack.pop() {
                component.push(v);
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// A proper 2-coloring (`false`/`true` per vertex) if the graph is
    /// bipartite. Each component's smallest vertex gets `false`.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut stack = Vec::new();
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            stack.push(start);
            while let Some(v) = stack.pop() {
                let cv = color[v]?;
                for &w in &self.adjacency[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cv);
                            stack.push(w);
                        }
                        Some(cw) if cw == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        color.into_iter().collect()
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// The subdivision graph: edge `j = (u, v)` is replaced by the path
    /// `u - w_j - v`, where `w_j` has index `n + j`.
    pub fn subdivision(&self) -> Graph {
        let mut pairs = Vec::with_capacity(2 * self.edges.len());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            pairs.push((u, self.n + j));
            pairs.push((v, self.n + j));
        }
        Graph::from_edge_list(self.n + self.edges.len(), &pairs)
            .expect("subdivision of a simple graph is simple")
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::MatrixShape("permutation length differs from graph order"));
        }
        let mut hit = vec![false; self.n];
        for &p in perm {
            if p >= self.n || core::mem::replace(&mut hit[p], true) {
                return Err(Error::VertexOutOfRange { vertex: p, order: self.n });
            }
        }
        let pairs: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edge_list(self.n, &pairs)
    }

    /// Subgraph induced on the complement of `removed`, with the remaining
    /// vertices renumbered in increasing order.
    pub fn delete_vertices(&self, removed: &[usize]) -> Result<Graph> {
        let mut keep = vec![true; self.n];
        for &v in removed {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, order: self.n });
            }
            keep[v] = false;
        }
        let mut index = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if keep[v] {
                index[v] = next;
                next += 1;
            }
        }
        let pairs: Vec<_> = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u] && keep[v])
            .map(|&(u, v)| (index[u], index[v]))
            .collect();
        Graph::from_edge_list(next, &pairs)
    }
}
