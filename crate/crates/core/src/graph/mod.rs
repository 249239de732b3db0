//! Undirected simple graphs on vertices `0..n` with bitset adjacency.

mod edge_list;
pub mod generators;
mod set;

pub use edge_list::{parse_edge_list, serialize_edge_list};
pub use set::VertexSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("self-loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// An undirected simple graph. Immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    edges: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![VertexSet::new(n); n], edges: 0 }
    }

    /// Builds a graph from an edge list, rejecting loops, repeated edges
    /// (in either orientation) and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if !g.add_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(g)
    }

    /// Adds `uv`, returning `false` if it was already present. Only used while
    /// a graph is being assembled.
    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> bool {
        debug_assert!(u != v);
        if self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        self.edges += 1;
        true
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if !self.adj[u].contains(v) {
            return false;
        }
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        self.edges -= 1;
        true
    }

    /// Order `|G|`.
    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Size `||G||`.
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> Result<usize, GraphError> {
        self.adj.iter().map(VertexSet::len).min().ok_or(GraphError::Empty)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::new(self.n())
    }

    /// All edges as `(u, v)` with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nb)| nb.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of edges inside `set`.
    pub fn internal_edges(&self, set: &VertexSet) -> usize {
        set.iter().map(|v| self.adj[v].intersection_len(set)).sum::<usize>() / 2
    }

    /// `||U, W||`: edges with one endpoint in `u` and the other in `w`. The
    /// sets may overlap; every qualifying edge is counted once, so
    /// `edges_between(W, W)` is the internal edge count of `W`.
    pub fn edges_between(&self, u: &VertexSet, w: &VertexSet) -> usize {
        let ordered: usize = u.iter().map(|a| self.adj[a].intersection_len(w)).sum();
        ordered - self.internal_edges(&u.intersection(w))
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> VertexSet {
        self.adj[u].intersection(&self.adj[v])
    }

    /// Degree of `v` into `set`.
    #[inline]
    pub fn degree_into(&self, v: usize, set: &VertexSet) -> usize {
        self.adj[v].intersection_len(set)
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        let mut seen = self.empty_set();
        let mut count = 0;
        for s in 0..self.n() {
            if seen.contains(s) {
                continue;
            }
            count += 1;
            let mut stack = vec![s];
            seen.insert(s);
            while let Some(v) = stack.pop() {
                for w in self.adj[v].iter() {
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// The graph with the listed edges removed (missing edges are ignored).
    pub fn without_edges<I: IntoIterator<Item = (usize, usize)>>(&self, edges: I) -> Graph {
        let mut g = self.clone();
        for (u, v) in edges {
            g.remove_edge(u, v);
        }
        g
    }

    /// The graph with the listed edges added (present edges are ignored).
    pub fn with_edges<I: IntoIterator<Item = (usize, usize)>>(&self, edges: I) -> Result<Graph, GraphError> {
        let mut g = self.clone();
        for (u, v) in edges {
            if u >= g.n() || v >= g.n() {
                return Err(GraphError::OutOfRange { vertex: u.max(v), n: g.n() });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Subgraph induced by `keep`, plus the map from new to old indices.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = keep.iter().collect();
        let mut new_index = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_index[v] = i;
        }
        let mut h = Graph::empty(old.len());
        for (i, &v) in old.iter().enumerate() {
            for w in self.adj[v].intersection(keep).iter() {
                let j = new_index[w];
                if i < j {
                    h.add_edge(i, j);
                }
            }
        }
        (h, old)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges=", self.n(), self.edges)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}
