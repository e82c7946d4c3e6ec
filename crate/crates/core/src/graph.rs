//! Weighted undirected multigraph with dense 0-based vertex and edge ids.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rational::Rational;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Rational,
}

impl EdgeRecord {
    pub fn is_self_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Vertex set `0..vertex_count` plus an ordered edge list. Parallel edges and
/// self-loops are allowed. Adjacency is always derived from the edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMultigraph {
    vertex_count: usize,
    edges: Vec<EdgeRecord>,
}

impl WeightedMultigraph {
    pub fn new(vertex_count: usize) -> Result<Self> {
        if vertex_count < 1 {
            return Err(Error::NoVertices);
        }
        Ok(WeightedMultigraph {
            vertex_count,
            edges: Vec::new(),
        })
    }

    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Rational)>,
    {
        let mut g = WeightedMultigraph::new(vertex_count)?;
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, weight: Rational) -> Result<EdgeId> {
        let id = self.edges.len();
        for x in [u, v] {
            if x >= self.vertex_count {
                return Err(Error::EndpointOutOfRange {
                    edge: id,
                    vertex: x,
                    vertex_count: self.vertex_count,
                });
            }
        }
        self.edges.push(EdgeRecord { id, u, v, weight });
        Ok(id)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeRecord] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> Option<&EdgeRecord> {
        self.edges.get(id)
    }

    pub fn weights(&self) -> impl Iterator<Item = &Rational> {
        self.edges.iter().map(|e| &e.weight)
    }

    pub fn self_loops(&self) -> impl Iterator<Item = &EdgeRecord> {
        self.edges.iter().filter(|e| e.is_self_loop())
    }

    pub fn has_self_loops(&self) -> bool {
        self.edges.iter().any(EdgeRecord::is_self_loop)
    }

    /// Number of incident edge ends; a self-loop counts twice.
    pub fn degree(&self, x: VertexId) -> usize {
        self.edges
            .iter()
            .map(|e| (e.u == x) as usize + (e.v == x) as usize)
            .sum()
    }

    /// `(neighbor, edge id)` lists per vertex. A self-loop appears once in its
    /// vertex's list.
    pub fn adjacency(&self) -> Vec<Vec<(VertexId, EdgeId)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.u].push((e.v, e.id));
            if !e.is_self_loop() {
                adj[e.v].push((e.u, e.id));
            }
        }
        adj
    }

    /// Same structure, every edge weight replaced by `w`.
    pub fn with_uniform_weight(&self, w: &Rational) -> WeightedMultigraph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.weight = w.clone();
        }
        g
    }

    /// `self` followed by `other` with `other`'s vertex ids shifted.
    pub fn disjoint_union(&self, other: &WeightedMultigraph) -> WeightedMultigraph {
        let shift = self.vertex_count;
        let mut g = self.clone();
        g.vertex_count += other.vertex_count;
        for e in &other.edges {
            g.add_edge(e.u + shift, e.v + shift, e.weight.clone())
                .expect("shifted endpoints are in range");
        }
        g
    }

    /// Distinct unordered vertex pairs joined by at least one non-loop edge.
    pub fn simple_edges(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.edges
            .iter()
            .filter(|e| !e.is_self_loop())
            .map(|e| (e.u.min(e.v), e.u.max(e.v)))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        connected_components(self).len() == 1
    }
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSet {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

/// Maximal connected vertex sets, each sorted, ordered by smallest member.
/// Self-loops do not affect connectivity.
pub fn connected_components(g: &WeightedMultigraph) -> Vec<Vec<VertexId>> {
    let mut dsu = DisjointSet::new(g.vertex_count());
    for e in g.edges() {
        dsu.union(e.u, e.v);
    }
    let mut slot = vec![usize::MAX; g.vertex_count()];
    let mut components: Vec<Vec<VertexId>> = Vec::new();
    for x in 0..g.vertex_count() {
        let root = dsu.find(x);
        if slot[root] == usize::MAX {
            slot[root] = components.len();
            components.push(Vec::new());
        }
        components[slot[root]].push(x);
    }
    components
}
