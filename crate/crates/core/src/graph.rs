//! Graphs encoding intersection systems.
//!
//! A system on a ground set X is determined by a reflexive, symmetric
//! predicate on pairs: a subset of X is admissible exactly when all its
//! pairs are.  `SystemGraph` stores the complementary graph of that
//! predicate: an edge {u, v} means the pair is *not* admissible, so the
//! admissible subsets are precisely the independent sets.
//!
//! Graphs are immutable after construction.  Vertices are dense indices
//! 0..n, adjacency is one bitset row per vertex, and the row invariants
//! (symmetry, no loops) hold by construction.

use crate::constructions::SystemDescriptor;
use crate::error::{Error, Result};
use crate::set::VertexSet;

/// Default upper bound on vertex counts.  Everything here is exact,
/// exponential-in-the-worst-case search, so desk scale is the point;
/// callers with more patience can pass a larger cap explicitly.
pub const DEFAULT_VERTEX_CAP: usize = 5000;

#[derive(Clone, Debug)]
pub struct SystemGraph {
    n: usize,
    adj: Vec<VertexSet>,
    edge_count: usize,
    labels: Option<Vec<String>>,
    meta: Option<SystemDescriptor>,
}

impl SystemGraph {
    /// Builds the graph of a pair predicate: edge {u, v} iff `admissible(u, v)`
    /// is false for u != v.  The predicate must be reflexive (every singleton
    /// admissible) and symmetric; both are checked by evaluation.
    pub fn from_pair_relation<F>(n: usize, admissible: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> bool,
    {
        Self::from_pair_relation_with_cap(n, admissible, DEFAULT_VERTEX_CAP)
    }

    pub fn from_pair_relation_with_cap<F>(n: usize, mut admissible: F, cap: usize) -> Result<Self>
    where
        F: FnMut(usize, usize) -> bool,
    {
        check_size(n as u128, cap)?;
        for v in 0..n {
            if !admissible(v, v) {
                return Err(Error::IrreflexiveRelation { v });
            }
        }
        let mut adj = vec![VertexSet::empty(n); n];
        let mut edge_count = 0;
        for u in 0..n {
            for v in u + 1..n {
                let forward = admissible(u, v);
                if forward != admissible(v, u) {
                    return Err(Error::AsymmetricRelation { u, v });
                }
                if !forward {
                    adj[u].insert(v);
                    adj[v].insert(u);
                    edge_count += 1;
                }
            }
        }
        Ok(SystemGraph {
            n,
            adj,
            edge_count,
            labels: None,
            meta: None,
        })
    }

    /// Builds a graph from an explicit edge list.  Pairs may come in either
    /// orientation; loops and duplicates (in any orientation) are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges_with_cap(n, edges, DEFAULT_VERTEX_CAP)
    }

    pub fn from_edges_with_cap(n: usize, edges: &[(usize, usize)], cap: usize) -> Result<Self> {
        check_size(n as u128, cap)?;
        let mut adj = vec![VertexSet::empty(n); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertices: n,
                    });
                }
            }
            if u == v {
                return Err(Error::LoopEdge { u, v });
            }
            if adj[u].contains(v) {
                return Err(Error::DuplicateEdge { u, v });
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(SystemGraph {
            n,
            adj,
            edge_count: edges.len(),
            labels: None,
            meta: None,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Reads the pair predicate back: a pair is admissible when it is not an
    /// edge, and every singleton is admissible.
    pub fn compatible(&self, u: usize, v: usize) -> bool {
        u == v || !self.is_edge(u, v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as (u, v) with u < v, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of a vertex, falling back to its index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(ls) => ls[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n {
            return Err(Error::LabelCountMismatch {
                expected: self.n,
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn meta(&self) -> Option<&SystemDescriptor> {
        self.meta.as_ref()
    }

    pub fn set_meta(&mut self, meta: SystemDescriptor) {
        self.meta = Some(meta);
    }

    /// Closed neighborhood N[A] = A together with every neighbor of A.
    /// N[empty] is empty.
    pub fn closed_neighborhood(&self, a: &VertexSet) -> VertexSet {
        assert_eq!(a.universe(), self.n, "set universe does not match graph");
        let mut out = a.clone();
        for v in a.iter() {
            out.union_with(&self.adj[v]);
        }
        out
    }

    /// Complement of the closed neighborhood: the vertices not in A and not
    /// adjacent to it.
    pub fn outside_neighborhood(&self, a: &VertexSet) -> VertexSet {
        self.closed_neighborhood(a).complement()
    }

    /// Subgraph induced on a nonempty vertex set, with the mapping back to
    /// the original indices.  Labels are carried over, metadata is not (the
    /// induced graph is no longer the constructed system).
    pub fn induced_subgraph(&self, b: &VertexSet) -> Result<InducedSubgraph> {
        assert_eq!(b.universe(), self.n, "set universe does not match graph");
        if b.is_empty() {
            return Err(Error::EmptySubset);
        }
        let original: Vec<usize> = b.iter().collect();
        let m = original.len();
        let mut adj = vec![VertexSet::empty(m); m];
        let mut edge_count = 0;
        for i in 0..m {
            for j in i + 1..m {
                if self.is_edge(original[i], original[j]) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                    edge_count += 1;
                }
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| original.iter().map(|&v| ls[v].clone()).collect());
        Ok(InducedSubgraph {
            graph: SystemGraph {
                n: m,
                adj,
                edge_count,
                labels,
                meta: None,
            },
            original,
            parent_n: self.n,
        })
    }

    /// Breadth-first connectivity.  Single-vertex graphs are connected.
    pub fn is_connected(&self) -> bool {
        let mut seen = VertexSet::empty(self.n);
        let mut queue = vec![0];
        seen.insert(0);
        while let Some(v) = queue.pop() {
            for w in self.adj[v].iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    queue.push(w);
                }
            }
        }
        seen.len() == self.n
    }
}

fn check_size(requested: u128, cap: usize) -> Result<()> {
    if requested == 0 {
        return Err(Error::EmptyGroundSet);
    }
    if requested > cap as u128 {
        return Err(Error::VertexCapExceeded { requested, cap });
    }
    Ok(())
}

/// A size check usable before any vertex data is materialized, e.g. when the
/// count comes from a binomial formula.
pub(crate) fn check_vertex_budget(requested: u128, cap: usize) -> Result<usize> {
    check_size(requested, cap)?;
    Ok(requested as usize)
}

pub struct InducedSubgraph {
    pub graph: SystemGraph,
    /// `original[i]` is the parent-graph index of induced vertex i,
    /// in increasing order.
    pub original: Vec<usize>,
    parent_n: usize,
}

impl InducedSubgraph {
    /// Maps a set of induced-graph vertices back to parent-graph indices.
    pub fn lift(&self, sub: &VertexSet) -> VertexSet {
        assert_eq!(sub.universe(), self.graph.vertex_count());
        let mut out = VertexSet::empty(self.parent_n);
        for i in sub.iter() {
            out.insert(self.original[i]);
        }
        out
    }

    pub fn parent_vertex_count(&self) -> usize {
        self.parent_n
    }
}
