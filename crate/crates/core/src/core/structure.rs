//! Loose paths and cycles.
//!
//! Both structures are stored as edges plus a vertex order. Edge `i` of a
//! cycle is `order[i(k-1) .. i(k-1)+k]` read cyclically; a path is the same
//! without wraparound. `first`/`last` of edge `i` are the positions `i(k-1)`
//! and `(i+1)(k-1)`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::core::coloring::KUniformColoring;
use crate::core::edge::{Color, Edge, Vertex};
use crate::error::{Error, InvalidStructure, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureKind {
    Path,
    Cycle,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LoosePath {
    k: usize,
    edges: Vec<Edge>,
    vertex_order: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LooseCycle {
    k: usize,
    edges: Vec<Edge>,
    vertex_order: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Structure {
    Path(LoosePath),
    Cycle(LooseCycle),
}

impl Structure {
    pub fn edges(&self) -> &[Edge] {
        match self {
            Structure::Path(p) => p.edges(),
            Structure::Cycle(c) => c.edges(),
        }
    }
}

fn check_sizes(edges: &[Edge]) -> Result<usize, InvalidStructure> {
    let k = edges.first().ok_or(InvalidStructure::Empty)?.len();
    for (i, e) in edges.iter().enumerate() {
        if e.len() != k {
            return Err(InvalidStructure::WrongEdgeSize(i, e.len(), k));
        }
    }
    Ok(k)
}

fn distinct_count(edges: &[Edge]) -> usize {
    edges.iter().flat_map(|e| e.vertices().iter().copied()).collect::<HashSet<_>>().len()
}

fn sorted_without(e: &Edge, drop: &[Vertex]) -> Vec<Vertex> {
    e.vertices().iter().copied().filter(|v| !drop.contains(v)).collect()
}

fn single(v: Vec<Vertex>) -> Vertex {
    debug_assert_eq!(v.len(), 1);
    v[0]
}

impl LooseCycle {
    /// Builds the cycle whose edges are consecutive windows of `order`.
    pub fn from_order(k: usize, order: Vec<Vertex>) -> Result<LooseCycle> {
        if k < 2 || order.len() % (k - 1) != 0 || order.len() / (k - 1) < 2 {
            return Err(Error::InvalidParameters(format!(
                "cycle order of length {} does not fit k={k}",
                order.len()
            )));
        }
        let len = order.len();
        let n = len / (k - 1);
        let edges = (0..n)
            .map(|i| Edge::new((0..k).map(|t| order[(i * (k - 1) + t) % len]).collect()))
            .collect::<Result<Vec<_>>>()?;
        let c = LooseCycle::from_edges(edges).map_err(|e| Error::InvalidInput(e.to_string()))?;
        // keep the caller's interior order
        Ok(LooseCycle { vertex_order: order, ..c })
    }

    /// Checks the loose cycle pattern and keeps the given edge order.
    ///
    /// Interior vertices of each edge are listed ascending. For two edges the
    /// smaller shared vertex is `first` of edge 0.
    pub fn from_edges(edges: Vec<Edge>) -> Result<LooseCycle, InvalidStructure> {
        let k = check_sizes(&edges)?;
        let n = edges.len();
        if n < 2 {
            return Err(InvalidStructure::TooShort);
        }
        if n == 2 {
            let shared = edges[0].intersection(&edges[1]);
            if shared.len() != 2 {
                return Err(InvalidStructure::BadOverlap(0, 1, shared.len(), 2));
            }
            let found = distinct_count(&edges);
            if found != 2 * (k - 1) {
                return Err(InvalidStructure::VertexCount { expected: 2 * (k - 1), found });
            }
            let (a, b) = (shared[0], shared[1]);
            let mut order = vec![a];
            order.extend(sorted_without(&edges[0], &[a, b]));
            order.push(b);
            order.extend(sorted_without(&edges[1], &[a, b]));
            return Ok(LooseCycle { k, edges, vertex_order: order });
        }
        for i in 0..n {
            for j in i + 1..n {
                let ov = edges[i].overlap(&edges[j]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent && ov != 1 {
                    return Err(InvalidStructure::BadOverlap(i, j, ov, 1));
                }
                if !adjacent && ov != 0 {
                    return Err(InvalidStructure::NotDisjoint(i, j));
                }
            }
        }
        let found = distinct_count(&edges);
        if found != n * (k - 1) {
            return Err(InvalidStructure::VertexCount { expected: n * (k - 1), found });
        }
        let mut order = Vec::with_capacity(found);
        for i in 0..n {
            let first = single(edges[(i + n - 1) % n].intersection(&edges[i]));
            let last = single(edges[i].intersection(&edges[(i + 1) % n]));
            order.push(first);
            order.extend(sorted_without(&edges[i], &[first, last]));
        }
        Ok(LooseCycle { k, edges, vertex_order: order })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i % self.edges.len()]
    }

    pub fn vertex_order(&self) -> &[Vertex] {
        &self.vertex_order
    }

    pub fn endpoints(&self, i: usize) -> Result<(Vertex, Vertex)> {
        let n = self.edges.len();
        if i >= n {
            return Err(Error::IndexError { index: i, len: n });
        }
        let len = self.vertex_order.len();
        Ok((self.vertex_order[i * (self.k - 1)], self.vertex_order[((i + 1) * (self.k - 1)) % len]))
    }

    pub fn first(&self, i: usize) -> Vertex {
        self.vertex_order[(i % self.len()) * (self.k - 1)]
    }

    pub fn last(&self, i: usize) -> Vertex {
        self.vertex_order[((i % self.len() + 1) * (self.k - 1)) % self.vertex_order.len()]
    }

    /// Edge `i` in traversal order, `first` at index 0 and `last` at `k-1`.
    pub fn edge_in_order(&self, i: usize) -> Vec<Vertex> {
        let len = self.vertex_order.len();
        let s = (i % self.len()) * (self.k - 1);
        (0..self.k).map(|t| self.vertex_order[(s + t) % len]).collect()
    }

    /// Vertices of edge `i` other than its first and last.
    pub fn interior(&self, i: usize) -> Vec<Vertex> {
        let o = self.edge_in_order(i);
        o[1..self.k - 1].to_vec()
    }

    pub fn vertices(&self) -> HashSet<Vertex> {
        self.vertex_order.iter().copied().collect()
    }

    /// Position of `v` in the vertex order.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.vertex_order.iter().position(|&x| x == v)
    }

    pub fn is_monochromatic(&self, c: &KUniformColoring, color: Color) -> bool {
        self.edges.iter().all(|e| c.color(e) == color)
    }

    /// Canonical representative: the lexicographically smallest edge
    /// sequence over all rotations and reflections.
    pub fn normalized(&self) -> LooseCycle {
        let n = self.edges.len();
        let mut best: Option<Vec<Edge>> = None;
        for rev in [false, true] {
            let mut base = self.edges.clone();
            if rev {
                base.reverse();
            }
            for r in 0..n {
                let mut cand = base.clone();
                cand.rotate_left(r);
                if best.as_ref().map_or(true, |b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        LooseCycle::from_edges(best.expect("n >= 2")).expect("dihedral image of a valid cycle")
    }
}

impl LoosePath {
    pub fn from_order(k: usize, order: Vec<Vertex>) -> Result<LoosePath> {
        if k < 2 || order.len() < k || (order.len() - 1) % (k - 1) != 0 {
            return Err(Error::InvalidParameters(format!("path order of length {} does not fit k={k}", order.len())));
        }
        let n = (order.len() - 1) / (k - 1);
        let edges = (0..n)
            .map(|i| Edge::new(order[i * (k - 1)..i * (k - 1) + k].to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let p = LoosePath::from_edges(edges).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(LoosePath { vertex_order: order, ..p })
    }

    /// Checks the loose path pattern and keeps the given edge order.
    ///
    /// The free end of the first edge is its smallest non-link vertex and the
    /// free end of the last edge its largest.
    pub fn from_edges(edges: Vec<Edge>) -> Result<LoosePath, InvalidStructure> {
        let k = check_sizes(&edges)?;
        let n = edges.len();
        if n == 1 {
            let order = edges[0].vertices().to_vec();
            return Ok(LoosePath { k, edges, vertex_order: order });
        }
        for i in 0..n {
            for j in i + 1..n {
                let ov = edges[i].overlap(&edges[j]);
                if j == i + 1 && ov != 1 {
                    return Err(InvalidStructure::BadOverlap(i, j, ov, 1));
                }
                if j > i + 1 && ov != 0 {
                    return Err(InvalidStructure::NotDisjoint(i, j));
                }
            }
        }
        let found = distinct_count(&edges);
        if found != n * (k - 1) + 1 {
            return Err(InvalidStructure::VertexCount { expected: n * (k - 1) + 1, found });
        }
        let links: Vec<Vertex> = (0..n - 1).map(|i| single(edges[i].intersection(&edges[i + 1]))).collect();
        let mut order = Vec::with_capacity(found);
        for i in 0..n {
            let first = if i == 0 {
                *sorted_without(&edges[0], &[links[0]]).first().expect("k >= 2")
            } else {
                links[i - 1]
            };
            let last = if i == n - 1 {
                *sorted_without(&edges[i], &[links[i - 1]]).last().expect("k >= 2")
            } else {
                links[i]
            };
            if i == 0 {
                order.push(first);
            }
            order.extend(sorted_without(&edges[i], &[first, last]));
            order.push(last);
        }
        Ok(LoosePath { k, edges, vertex_order: order })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_order(&self) -> &[Vertex] {
        &self.vertex_order
    }

    pub fn endpoints(&self, i: usize) -> Result<(Vertex, Vertex)> {
        let n = self.edges.len();
        if i >= n {
            return Err(Error::IndexError { index: i, len: n });
        }
        Ok((self.vertex_order[i * (self.k - 1)], self.vertex_order[(i + 1) * (self.k - 1)]))
    }

    pub fn vertices(&self) -> HashSet<Vertex> {
        self.vertex_order.iter().copied().collect()
    }

    pub fn is_monochromatic(&self, c: &KUniformColoring, color: Color) -> bool {
        self.edges.iter().all(|e| c.color(e) == color)
    }

    pub fn normalized(&self) -> LoosePath {
        let mut rev = self.edges.clone();
        rev.reverse();
        let best = if rev < self.edges { rev } else { self.edges.clone() };
        LoosePath::from_edges(best).expect("reversal of a valid path")
    }
}

/// Checks `edges` against the path or cycle pattern and returns the
/// normalized structure.
pub fn validate(edges: &[Edge], kind: StructureKind) -> Result<Structure, InvalidStructure> {
    match kind {
        StructureKind::Cycle => Ok(Structure::Cycle(LooseCycle::from_edges(edges.to_vec())?.normalized())),
        StructureKind::Path => Ok(Structure::Path(LoosePath::from_edges(edges.to_vec())?.normalized())),
    }
}

/// `e_i = {(i-1)(k-1), ..., (i-1)(k-1)+k-1} mod n(k-1)`.
pub fn canonical_loose_cycle(n: usize, k: usize) -> Result<LooseCycle> {
    if n < 2 || k < 3 {
        return Err(Error::InvalidParameters(format!("cycle needs n >= 2 and k >= 3, got n={n}, k={k}")));
    }
    LooseCycle::from_order(k, (0..(n * (k - 1)) as Vertex).collect())
}

pub fn canonical_loose_path(n: usize, k: usize) -> Result<LoosePath> {
    if n < 1 || k < 2 {
        return Err(Error::InvalidParameters(format!("path needs n >= 1 and k >= 2, got n={n}, k={k}")));
    }
    LoosePath::from_order(k, (0..(n * (k - 1) + 1) as Vertex).collect())
}
