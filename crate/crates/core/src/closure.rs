//! Transitive closure of the edge relation and reflexive ancestor queries.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::graph::{DirectedGraph, VertexId};

/// Reachability by directed paths of length at least one.
///
/// `reaches(u, u)` holds exactly when `u` lies on a directed cycle. The
/// ancestor relation is the reflexive version of this and is exposed through
/// [`AncestorClosure::is_ancestor`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AncestorClosure {
    forward: Vec<FixedBitSet>,
    backward: Vec<FixedBitSet>,
}

impl AncestorClosure {
    /// Warshall-style closure over bit rows, O(n³ / word size).
    pub fn build(g: &DirectedGraph) -> Self {
        let n = g.vertex_count();
        let mut forward: Vec<FixedBitSet> = (0..n).map(|v| g.child_set(v).clone()).collect();
        for k in 0..n {
            let row_k = forward[k].clone();
            for row in forward.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        let mut backward = vec![FixedBitSet::with_capacity(n); n];
        for (u, row) in forward.iter().enumerate() {
            for v in row.ones() {
                backward[v].insert(u);
            }
        }
        Self { forward, backward }
    }

    pub fn vertex_count(&self) -> usize {
        self.forward.len()
    }

    /// A directed path of length ≥ 1 from `u` to `v` exists.
    pub fn reaches(&self, u: usize, v: usize) -> bool {
        self.forward[u].contains(v)
    }

    /// Reflexive ancestry: `u == v` or `u` reaches `v`.
    pub fn is_ancestor(&self, u: usize, v: usize) -> bool {
        u == v || self.reaches(u, v)
    }

    pub fn on_cycle(&self, v: usize) -> bool {
        self.reaches(v, v)
    }

    /// Vertices reachable from `v` by a nonempty path.
    pub fn reach_set(&self, v: usize) -> &FixedBitSet {
        &self.forward[v]
    }

    /// Reflexive descendants of `v`.
    pub fn descendant_set(&self, v: usize) -> FixedBitSet {
        let mut s = self.forward[v].clone();
        s.insert(v);
        s
    }

    /// Reflexive ancestors of `v`.
    pub fn ancestor_set(&self, v: usize) -> FixedBitSet {
        let mut s = self.backward[v].clone();
        s.insert(v);
        s
    }

    /// Vertices with at least one (reflexive) descendant in `targets`.
    pub fn ancestors_of_set(&self, targets: &FixedBitSet) -> FixedBitSet {
        let mut out = targets.clone();
        for t in targets.ones() {
            out.union_with(&self.backward[t]);
        }
        out
    }

    /// All `(u, v)` with `reaches(u, v)`, sorted.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.forward
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.ones().map(move |v| (u, v)))
    }
}

pub fn build_closure(g: &DirectedGraph) -> AncestorClosure {
    AncestorClosure::build(g)
}

/// Reflexive ancestor query by name, using the graph's cached closure.
pub fn is_ancestor(g: &DirectedGraph, u: &str, v: &str) -> Result<bool> {
    let (u, v) = (g.require(u)?, g.require(v)?);
    Ok(g.closure().is_ancestor(u, v))
}

/// Reflexive descendants of `v` by name; always contains `v`.
pub fn descendants(g: &DirectedGraph, v: &str) -> Result<BTreeSet<VertexId>> {
    let v = g.require(v)?;
    Ok(g.closure()
        .descendant_set(v)
        .ones()
        .map(|d| g.name(d).clone())
        .collect())
}
