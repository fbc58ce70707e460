//! Loopless weighted multigraphs with a global parameter `D`.
//!
//! Vertices are labeled `0..n-1`. Parallel edges are stored as classes
//! `(u, v, mult)` with `u < v`, sorted by endpoints, so the in-memory form of
//! a graph is unique and all reports are reproducible. Weights live in
//! `[1, D+2]`; the capacity `c(v) = D + 2 - w(v)` is always derived, never
//! stored.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::dsu::Dsu;

pub type Vertex = usize;

/// A maximal class of parallel edges between two distinct vertices.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub mult: u32,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GraphError {
    LoopEdge { v: Vertex },
    WeightOutOfRange { v: Vertex, weight: u32, max: u32 },
    BadIndex { index: usize, n: usize },
    BadParameter(&'static str),
    EmptySubset,
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::LoopEdge { v } => write!(f, "loop edge at vertex {v}"),
            GraphError::WeightOutOfRange { v, weight, max } => {
                write!(f, "weight {weight} at vertex {v} outside [1, {max}]")
            }
            GraphError::BadIndex { index, n } => {
                write!(f, "vertex index {index} out of range for n = {n}")
            }
            GraphError::BadParameter(what) => write!(f, "bad parameter: {what}"),
            GraphError::EmptySubset => write!(f, "subset must be nonempty"),
        }
    }
}

/// A set of vertex labels, kept sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct VertexSubset(Vec<Vertex>);

impl VertexSubset {
    pub fn new(mut vertices: Vec<Vertex>) -> VertexSubset {
        vertices.sort_unstable();
        vertices.dedup();
        VertexSubset(vertices)
    }

    pub fn full(n: usize) -> VertexSubset {
        VertexSubset((0..n).collect())
    }

    pub fn from_mask(mut mask: u64) -> VertexSubset {
        let mut vs = Vec::new();
        while mask != 0 {
            let v = mask.trailing_zeros() as usize;
            vs.push(v);
            mask &= mask - 1;
        }
        VertexSubset(vs)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn mask(&self) -> u64 {
        debug_assert!(self.0.last().is_none_or(|&v| v < 64));
        self.0.iter().fold(0u64, |m, &v| m | (1 << v))
    }
}

impl fmt::Display for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedMultigraph {
    d: u32,
    weights: Vec<u32>,
    edges: Vec<Edge>,
    adj: Vec<Vec<(Vertex, u32)>>,
}

impl WeightedMultigraph {
    /// Validates and builds a graph. Parallel classes for the same pair are
    /// merged; endpoints must be distinct and in range, weights in
    /// `[1, D+2]`, multiplicities at least 1.
    pub fn build(
        n: usize,
        d: u32,
        weights: &[u32],
        edges: &[(Vertex, Vertex, u32)],
    ) -> Result<WeightedMultigraph, GraphError> {
        if n == 0 {
            return Err(GraphError::BadParameter("vertex count must be positive"));
        }
        if d == 0 {
            return Err(GraphError::BadParameter("D must be positive"));
        }
        if weights.len() != n {
            return Err(GraphError::BadParameter("weight list length must equal n"));
        }
        for (v, &w) in weights.iter().enumerate() {
            if w < 1 || w > d + 2 {
                return Err(GraphError::WeightOutOfRange {
                    v,
                    weight: w,
                    max: d + 2,
                });
            }
        }
        let mut classes: Vec<Edge> = Vec::new();
        for &(u, v, mult) in edges {
            if u >= n {
                return Err(GraphError::BadIndex { index: u, n });
            }
            if v >= n {
                return Err(GraphError::BadIndex { index: v, n });
            }
            if u == v {
                return Err(GraphError::LoopEdge { v: u });
            }
            if mult == 0 {
                return Err(GraphError::BadParameter("multiplicity must be at least 1"));
            }
            let (u, v) = if u < v { (u, v) } else { (v, u) };
            classes.push(Edge { u, v, mult });
        }
        classes.sort_unstable_by_key(|e| (e.u, e.v));
        let mut merged: Vec<Edge> = Vec::with_capacity(classes.len());
        for e in classes {
            match merged.last_mut() {
                Some(last) if last.u == e.u && last.v == e.v => last.mult += e.mult,
                _ => merged.push(e),
            }
        }
        let mut adj = vec![Vec::new(); n];
        for e in &merged {
            adj[e.u].push((e.v, e.mult));
            adj[e.v].push((e.u, e.mult));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(WeightedMultigraph {
            d,
            weights: weights.to_vec(),
            edges: merged,
            adj,
        })
    }

    /// Unweighted convenience constructor: `w ≡ 1`.
    pub fn unweighted(
        n: usize,
        d: u32,
        edges: &[(Vertex, Vertex, u32)],
    ) -> Result<WeightedMultigraph, GraphError> {
        Self::build(n, d, &vec![1; n], edges)
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// The global parameter `D`.
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn weight(&self, v: Vertex) -> u32 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Capacity `c(v) = D + 2 - w(v)`, always in `[0, D+1]`.
    pub fn capacity(&self, v: Vertex) -> u32 {
        self.d + 2 - self.weights[v]
    }

    /// Degree counting multiplicities.
    pub fn degree(&self, v: Vertex) -> u32 {
        self.adj[v].iter().map(|&(_, m)| m).sum()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Total number of edges counting multiplicities.
    pub fn edge_units(&self) -> u64 {
        self.edges.iter().map(|e| e.mult as u64).sum()
    }

    /// Neighbors of `v` as `(vertex, multiplicity)` pairs, sorted by vertex.
    pub fn adj(&self, v: Vertex) -> &[(Vertex, u32)] {
        &self.adj[v]
    }

    pub fn multiplicity(&self, u: Vertex, v: Vertex) -> u32 {
        self.adj[u]
            .binary_search_by_key(&v, |&(x, _)| x)
            .map(|i| self.adj[u][i].1)
            .unwrap_or(0)
    }

    pub fn is_simple(&self) -> bool {
        self.edges.iter().all(|e| e.mult == 1)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(u, _) in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    pub fn min_degree(&self) -> u32 {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Induced subgraph on `subset`. Vertices are relabeled `0..|A|-1` in
    /// label order; the returned map sends new labels to old ones. Edges keep
    /// their multiplicities; weights and `D` are preserved.
    pub fn induced(
        &self,
        subset: &VertexSubset,
    ) -> Result<(WeightedMultigraph, Vec<Vertex>), GraphError> {
        if subset.is_empty() {
            return Err(GraphError::EmptySubset);
        }
        if let Some(&bad) = subset.as_slice().iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::BadIndex {
                index: bad,
                n: self.n(),
            });
        }
        let map: Vec<Vertex> = subset.as_slice().to_vec();
        let mut new_label = vec![usize::MAX; self.n()];
        for (new, &old) in map.iter().enumerate() {
            new_label[old] = new;
        }
        let weights: Vec<u32> = map.iter().map(|&v| self.weights[v]).collect();
        let edges: Vec<(Vertex, Vertex, u32)> = self
            .edges
            .iter()
            .filter(|e| new_label[e.u] != usize::MAX && new_label[e.v] != usize::MAX)
            .map(|e| (new_label[e.u], new_label[e.v], e.mult))
            .collect();
        let g = WeightedMultigraph::build(map.len(), self.d, &weights, &edges)
            .expect("induced subgraph of a valid graph is valid");
        Ok((g, map))
    }

    /// True iff the subgraph induced by `subset` is acyclic, treating any
    /// parallel class with multiplicity at least 2 inside the subset as a
    /// 2-cycle.
    pub fn is_forest(&self, subset: &VertexSubset) -> bool {
        for &v in subset.as_slice() {
            assert!(v < self.n(), "subset vertex out of range");
        }
        let mut inside = vec![false; self.n()];
        for &v in subset.as_slice() {
            inside[v] = true;
        }
        let mut dsu = Dsu::new(self.n());
        for e in &self.edges {
            if inside[e.u] && inside[e.v] && (e.mult >= 2 || !dsu.union(e.u, e.v)) {
                return false;
            }
        }
        true
    }

    /// Removes one unit of multiplicity from the class `(u, v)`; the class
    /// disappears when its multiplicity reaches zero. Panics when the pair is
    /// not an edge.
    pub fn delete_edge_unit(&self, u: Vertex, v: Vertex) -> WeightedMultigraph {
        assert!(self.multiplicity(u, v) > 0, "({u}, {v}) is not an edge");
        let edges: Vec<(Vertex, Vertex, u32)> = self
            .edges
            .iter()
            .filter_map(|e| {
                let mult = if (e.u, e.v) == (u.min(v), u.max(v)) {
                    e.mult - 1
                } else {
                    e.mult
                };
                (mult > 0).then_some((e.u, e.v, mult))
            })
            .collect();
        WeightedMultigraph::build(self.n(), self.d, &self.weights, &edges)
            .expect("deleting an edge keeps the graph valid")
    }

}
