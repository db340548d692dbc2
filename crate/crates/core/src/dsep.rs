//! d-connection and d-separation.
//!
//! Two checkers live here. The oracle enumerates every acyclic undirected
//! path together with every choice of edge between consecutive vertices
//! (with both `A -> B` and `B -> A` present, a vertex sequence names more
//! than one path) and tests the collider conditions directly. The fast
//! checker is a reachability search over `(vertex, arrival direction)`
//! states. The fast checker is only trusted because it agrees with the
//! oracle on the test corpus.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DirectedGraph, VertexId};

/// Default vertex cap for exhaustive separation enumeration.
pub const DEFAULT_ORACLE_CAP: usize = 12;

/// Environment variable overriding [`DEFAULT_ORACLE_CAP`].
pub const ORACLE_CAP_ENV: &str = "DCG_MAX_ORACLE_N";

/// The separation cap in effect: `DCG_MAX_ORACLE_N` if set and numeric,
/// otherwise [`DEFAULT_ORACLE_CAP`].
pub fn oracle_cap() -> usize {
    std::env::var(ORACLE_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

/// "`x` and `y` are d-separated given `given`".
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SeparationStatement {
    pub x: VertexId,
    pub y: VertexId,
    pub given: BTreeSet<VertexId>,
}

impl SeparationStatement {
    pub fn new(x: VertexId, y: VertexId, given: BTreeSet<VertexId>) -> Result<Self> {
        if x == y {
            return Err(Error::InvalidStatement(format!("{x} appears on both sides")));
        }
        if let Some(v) = given.iter().find(|v| **v == x || **v == y) {
            return Err(Error::InvalidStatement(format!(
                "{v} is both an endpoint and in the conditioning set"
            )));
        }
        Ok(Self { x, y, given })
    }

    pub fn from_names<S: AsRef<str>>(x: &str, y: &str, given: impl IntoIterator<Item = S>) -> Result<Self> {
        let given = given
            .into_iter()
            .map(|s| VertexId::new(s.as_ref()))
            .collect::<Result<_>>()?;
        Self::new(VertexId::new(x)?, VertexId::new(y)?, given)
    }

    /// Same statement with `x < y`.
    pub fn canonical(mut self) -> Self {
        if self.y < self.x {
            std::mem::swap(&mut self.x, &mut self.y);
        }
        self
    }

    fn resolve(&self, g: &DirectedGraph) -> Result<(usize, usize, FixedBitSet)> {
        let x = g.require(self.x.as_str())?;
        let y = g.require(self.y.as_str())?;
        let mut z = FixedBitSet::with_capacity(g.vertex_count());
        for v in &self.given {
            z.insert(g.require(v.as_str())?);
        }
        Ok((x, y, z))
    }
}

impl fmt::Display for SeparationStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let given: Vec<&str> = self.given.iter().map(VertexId::as_str).collect();
        write!(f, "{} _||_ {} | {{{}}}", self.x, self.y, given.join(","))
    }
}

/// Which of the two possible edges joins consecutive path vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Orientation {
    /// `path[i] -> path[i + 1]`
    Forward,
    /// `path[i] <- path[i + 1]`
    Backward,
}

/// An acyclic path that d-connects its endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DConnectingWitness {
    pub vertex_sequence: Vec<VertexId>,
    pub edge_choices: Vec<Orientation>,
}

impl fmt::Display for DConnectingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertex_sequence[0])?;
        for (v, o) in self.vertex_sequence[1..].iter().zip(&self.edge_choices) {
            let arrow = match o {
                Orientation::Forward => "->",
                Orientation::Backward => "<-",
            };
            write!(f, " {arrow} {v}")?;
        }
        Ok(())
    }
}

/// Vertices with a (reflexive) descendant in `z`, by backward search over
/// parent lists. Kept separate from the cached closure so the oracle does
/// not depend on it.
fn has_descendant_in(g: &DirectedGraph, z: &FixedBitSet) -> FixedBitSet {
    let mut seen = z.clone();
    let mut stack: Vec<usize> = z.ones().collect();
    while let Some(v) = stack.pop() {
        for &p in g.parent_indices(v) {
            if !seen.put(p) {
                stack.push(p);
            }
        }
    }
    seen
}

struct PathSearch<'a> {
    g: &'a DirectedGraph,
    target: usize,
    given: &'a FixedBitSet,
    open_colliders: FixedBitSet,
    path: Vec<usize>,
    choices: Vec<Orientation>,
    on_path: FixedBitSet,
}

impl PathSearch<'_> {
    /// Depth-first extension of `self.path`. `into_last` says whether the edge
    /// used to reach the last vertex points into it.
    fn extend(&mut self, into_last: bool) -> bool {
        let v = *self.path.last().expect("path starts nonempty");
        let interior = self.path.len() > 1;
        let steps = self
            .g
            .child_indices(v)
            .iter()
            .map(|&w| (w, Orientation::Forward))
            .chain(
                self.g
                    .parent_indices(v)
                    .iter()
                    .map(|&w| (w, Orientation::Backward)),
            );
        for (w, orientation) in steps {
            if self.on_path.contains(w) {
                continue;
            }
            if interior {
                let collider = into_last && orientation == Orientation::Backward;
                let passable = if collider {
                    self.open_colliders.contains(v)
                } else {
                    !self.given.contains(v)
                };
                if !passable {
                    continue;
                }
            }
            self.path.push(w);
            self.choices.push(orientation);
            if w == self.target {
                return true;
            }
            self.on_path.insert(w);
            if self.extend(orientation == Orientation::Forward) {
                return true;
            }
            self.on_path.set(w, false);
            self.path.pop();
            self.choices.pop();
        }
        false
    }
}

pub(crate) fn oracle_path(
    g: &DirectedGraph,
    x: usize,
    y: usize,
    given: &FixedBitSet,
) -> Option<(Vec<usize>, Vec<Orientation>)> {
    let n = g.vertex_count();
    let mut on_path = FixedBitSet::with_capacity(n);
    on_path.insert(x);
    let mut search = PathSearch {
        g,
        target: y,
        given,
        open_colliders: has_descendant_in(g, given),
        path: vec![x],
        choices: Vec::new(),
        on_path,
    };
    let found = search.extend(false);
    found.then_some((search.path, search.choices))
}

/// Reachability over `(vertex, arrived along an arrowhead?)` states.
pub(crate) fn fast_connected(g: &DirectedGraph, x: usize, y: usize, given: &FixedBitSet) -> bool {
    let n = g.vertex_count();
    let open = g.closure().ancestors_of_set(given);
    // visited[0]: arrived from a child (tail at v); visited[1]: arrived from a parent.
    let mut visited = [FixedBitSet::with_capacity(n), FixedBitSet::with_capacity(n)];
    let mut stack = vec![(x, false)];
    visited[0].insert(x);
    while let Some((v, from_parent)) = stack.pop() {
        if v == y {
            return true;
        }
        let in_given = given.contains(v) && v != x;
        let mut push = |w: usize, into_w: bool| {
            if !visited[into_w as usize].put(w) {
                stack.push((w, into_w));
            }
        };
        if !from_parent {
            if !in_given {
                for &p in g.parent_indices(v) {
                    push(p, false);
                }
                for &c in g.child_indices(v) {
                    push(c, true);
                }
            }
        } else {
            if !in_given {
                for &c in g.child_indices(v) {
                    push(c, true);
                }
            }
            if open.contains(v) {
                for &p in g.parent_indices(v) {
                    push(p, false);
                }
            }
        }
    }
    false
}

/// Exhaustive path-enumeration check. Returns a witness iff the statement's
/// endpoints are d-connected.
pub fn is_d_connected_oracle(
    g: &DirectedGraph,
    s: &SeparationStatement,
) -> Result<Option<DConnectingWitness>> {
    let (x, y, z) = s.resolve(g)?;
    Ok(
        oracle_path(g, x, y, &z).map(|(path, choices)| DConnectingWitness {
            vertex_sequence: path.into_iter().map(|v| g.name(v).clone()).collect(),
            edge_choices: choices,
        }),
    )
}

/// Polynomial-time check, O(|V| + |E|) after the closure is built.
pub fn is_d_connected_fast(g: &DirectedGraph, s: &SeparationStatement) -> Result<bool> {
    let (x, y, z) = s.resolve(g)?;
    Ok(fast_connected(g, x, y, &z))
}

/// Every separation `x _||_ y | Z` over unordered pairs and subsets of the
/// remaining vertices, as a bit vector in a fixed order: pairs `(x, y)` with
/// `x < y` lexicographically, then subsets as bitmasks over the remaining
/// vertices in index order. A set bit means d-separated.
///
/// Two graphs on the same vertex names are Markov equivalent iff their
/// signatures are equal.
pub fn separation_signature(g: &DirectedGraph, cap: usize) -> Result<FixedBitSet> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::OracleCapExceeded { n, cap });
    }
    if n < 2 {
        return Ok(FixedBitSet::new());
    }
    let per_pair = 1usize << (n - 2);
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let blocks: Vec<FixedBitSet> = pairs
        .par_iter()
        .map(|&(x, y)| {
            let rest: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
            let mut block = FixedBitSet::with_capacity(per_pair);
            let mut z = FixedBitSet::with_capacity(n);
            for mask in 0..per_pair {
                z.clear();
                for (bit, &v) in rest.iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        z.insert(v);
                    }
                }
                if oracle_path(g, x, y, &z).is_none() {
                    block.insert(mask);
                }
            }
            block
        })
        .collect();
    let mut out = FixedBitSet::with_capacity(pairs.len() * per_pair);
    for (i, block) in blocks.iter().enumerate() {
        for m in block.ones() {
            out.insert(i * per_pair + m);
        }
    }
    Ok(out)
}

/// Decodes a position of [`separation_signature`] back into a statement.
pub fn signature_statement(g: &DirectedGraph, position: usize) -> SeparationStatement {
    let n = g.vertex_count();
    let per_pair = 1usize << (n - 2);
    let (pair_index, mask) = (position / per_pair, position % per_pair);
    let (x, y) = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .nth(pair_index)
        .expect("position within signature");
    let rest = (0..n).filter(|&v| v != x && v != y);
    let given = rest
        .enumerate()
        .filter(|(bit, _)| mask >> bit & 1 == 1)
        .map(|(_, v)| g.name(v).clone())
        .collect();
    SeparationStatement {
        x: g.name(x).clone(),
        y: g.name(y).clone(),
        given,
    }
}

/// All d-separations holding in `g`, each with `x < y`. Refuses graphs
/// larger than [`oracle_cap`].
pub fn all_separations(g: &DirectedGraph) -> Result<BTreeSet<SeparationStatement>> {
    all_separations_capped(g, oracle_cap())
}

pub fn all_separations_capped(g: &DirectedGraph, cap: usize) -> Result<BTreeSet<SeparationStatement>> {
    let sig = separation_signature(g, cap)?;
    Ok(sig.ones().map(|p| signature_statement(g, p)).collect())
}
