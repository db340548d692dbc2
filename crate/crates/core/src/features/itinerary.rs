//! Brute-force m.e.-conductor search by enumerating uncovered itineraries.
//!
//! Used to cross-check the polynomial search in `steps::me_conductors`.

use std::collections::BTreeSet;

use super::{AdjacencyStructure, MeConductorSextuple};
use crate::closure::AncestorClosure;
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;

pub const DEFAULT_ITINERARY_CAP: usize = 8;

pub fn itinerary_oracle(
    g: &DirectedGraph,
    c: &AncestorClosure,
    h: &AdjacencyStructure,
) -> Result<BTreeSet<MeConductorSextuple>> {
    itinerary_oracle_capped(g, c, h, DEFAULT_ITINERARY_CAP)
}

/// All `(X0, X1, X2, Xn-1, Xn, Xn+1)` for which some uncovered itinerary
/// `X0 .. Xn+1` has
/// - every interior triple an unshielded conductor,
/// - both neighbours of every interior vertex among its ancestors,
/// - `X1` not an ancestor of `X0`, and `Xn` not an ancestor of `Xn+1`.
pub fn itinerary_oracle_capped(
    g: &DirectedGraph,
    c: &AncestorClosure,
    h: &AdjacencyStructure,
    cap: usize,
) -> Result<BTreeSet<MeConductorSextuple>> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::OracleCapExceeded { n, cap });
    }
    let mut walk = Walk {
        c,
        h,
        seq: Vec::with_capacity(n),
        found: BTreeSet::new(),
    };
    for x0 in 0..n {
        for x1 in h.graph.neighbours(x0).ones() {
            // X0 must be a proper ancestor of X1 but not a descendant of it.
            if c.reaches(x1, x0) || !c.reaches(x0, x1) {
                continue;
            }
            walk.seq.clear();
            walk.seq.extend([x0, x1]);
            walk.extend();
        }
    }
    Ok(walk
        .found
        .into_iter()
        .map(|s| MeConductorSextuple::from_indices(g, s))
        .collect())
}

struct Walk<'a> {
    c: &'a AncestorClosure,
    h: &'a AdjacencyStructure,
    seq: Vec<usize>,
    found: BTreeSet<[usize; 6]>,
}

impl Walk<'_> {
    fn extend(&mut self) {
        let len = self.seq.len();
        let (prev, last) = (self.seq[len - 2], self.seq[len - 1]);
        let candidates: Vec<usize> = self.h.graph.neighbours(last).ones().collect();
        for w in candidates {
            if self.seq.contains(&w) {
                continue;
            }
            if self.seq[..len - 1].iter().any(|&u| self.h.adjacent(u, w)) {
                continue;
            }
            let conductor = self.c.reaches(last, prev) || self.c.reaches(last, w);
            let both_into_last = self.c.is_ancestor(prev, last) && self.c.is_ancestor(w, last);
            if !conductor || !both_into_last {
                continue;
            }
            self.seq.push(w);
            if !self.c.reaches(last, w) {
                let s = &self.seq;
                let k = s.len();
                self.found
                    .insert([s[0], s[1], s[2], s[k - 3], s[k - 2], s[k - 1]]);
            }
            self.extend();
            self.seq.pop();
        }
    }
}
