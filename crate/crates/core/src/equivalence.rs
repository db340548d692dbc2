//! Markov equivalence decisions.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::dsep::{self, SeparationStatement};
use crate::error::{Error, Result};
use crate::features::{self, FeatureSet, MeConductorSextuple, Triple};
use crate::graph::{DirectedGraph, VertexId};

/// The seven compared components, in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    Vertices = 0,
    Adjacencies = 1,
    Conductors = 2,
    PerfectNonConductors = 3,
    MeConductors = 4,
    ImperfectAncestors = 5,
    MeImperfectAncestors = 6,
}

impl Condition {
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn describe(self) -> &'static str {
        match self {
            Condition::Vertices => "same vertices",
            Condition::Adjacencies => "same adjacencies",
            Condition::Conductors => "same unshielded conductors",
            Condition::PerfectNonConductors => "same unshielded perfect non-conductors",
            Condition::MeConductors => "same mutually exclusive conductor pairs",
            Condition::ImperfectAncestors => "same ancestry among imperfect non-conductors",
            Condition::MeImperfectAncestors => {
                "same ancestry between m.e. conductors and imperfect non-conductors"
            }
        }
    }
}

/// The first feature found in one graph but not the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum Witness {
    Vertex(VertexId),
    Adjacency(VertexId, VertexId),
    Triple(Triple),
    Sextuple(MeConductorSextuple),
    AncestorPair(VertexId, VertexId),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Vertex(v) => write!(f, "vertex {v}"),
            Witness::Adjacency(a, b) => write!(f, "adjacency {a}-{b}"),
            Witness::Triple(t) => write!(f, "triple {t}"),
            Witness::Sextuple(s) => write!(f, "sextuple {s}"),
            Witness::AncestorPair(w, v) => write!(f, "pair ({w},{v})"),
        }
    }
}

/// Which input graph a feature or separation belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    First,
    Second,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::First => "first",
            Side::Second => "second",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub condition: Condition,
    pub witness: Witness,
    /// The graph that has the witness feature.
    pub present_in: Side,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    pub failing_condition: Option<Mismatch>,
}

impl fmt::Display for EquivalenceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failing_condition {
            None => write!(f, "equivalent"),
            Some(m) => write!(
                f,
                "not equivalent\ncondition {} ({}) fails: {} only in the {} graph",
                m.condition.index(),
                m.condition.describe(),
                m.witness,
                m.present_in
            ),
        }
    }
}

fn first_difference<T: Ord + Clone>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> Option<(T, Side)> {
    let only_a = a.difference(b).next();
    let only_b = b.difference(a).next();
    match (only_a, only_b) {
        (None, None) => None,
        (Some(x), None) => Some((x.clone(), Side::First)),
        (None, Some(y)) => Some((y.clone(), Side::Second)),
        (Some(x), Some(y)) if x <= y => Some((x.clone(), Side::First)),
        (Some(_), Some(y)) => Some((y.clone(), Side::Second)),
    }
}

impl FeatureSet {
    /// The first differing component in condition order, with a witness.
    pub fn first_mismatch(&self, other: &FeatureSet) -> Option<Mismatch> {
        let mk = |condition, (witness, present_in)| Mismatch {
            condition,
            witness,
            present_in,
        };
        let v1: BTreeSet<_> = self.vertices.iter().cloned().collect();
        let v2: BTreeSet<_> = other.vertices.iter().cloned().collect();
        if let Some((v, side)) = first_difference(&v1, &v2) {
            return Some(mk(Condition::Vertices, (Witness::Vertex(v), side)));
        }
        if let Some(((a, b), side)) = first_difference(&self.hadj.named_edges(), &other.hadj.named_edges()) {
            return Some(mk(Condition::Adjacencies, (Witness::Adjacency(a, b), side)));
        }
        if let Some((t, side)) = first_difference(&self.conductors, &other.conductors) {
            return Some(mk(Condition::Conductors, (Witness::Triple(t), side)));
        }
        if let Some((t, side)) = first_difference(&self.perfect_non_conductors, &other.perfect_non_conductors)
        {
            return Some(mk(Condition::PerfectNonConductors, (Witness::Triple(t), side)));
        }
        if let Some((s, side)) = first_difference(&self.me_conductors, &other.me_conductors) {
            return Some(mk(Condition::MeConductors, (Witness::Sextuple(s), side)));
        }
        if let Some(((w, v), side)) = first_difference(&self.imperfect_ancestors, &other.imperfect_ancestors)
        {
            return Some(mk(
                Condition::ImperfectAncestors,
                (Witness::AncestorPair(w, v), side),
            ));
        }
        if let Some(((w, v), side)) =
            first_difference(&self.me_imperfect_ancestors, &other.me_imperfect_ancestors)
        {
            return Some(mk(
                Condition::MeImperfectAncestors,
                (Witness::AncestorPair(w, v), side),
            ));
        }
        None
    }
}

/// Compares already-computed feature sets.
pub fn compare_features(f1: &FeatureSet, f2: &FeatureSet) -> EquivalenceVerdict {
    let failing_condition = f1.first_mismatch(f2);
    EquivalenceVerdict {
        equivalent: failing_condition.is_none(),
        failing_condition,
    }
}

/// Polynomial-time Markov equivalence.
pub fn markov_equivalent(g1: &DirectedGraph, g2: &DirectedGraph) -> EquivalenceVerdict {
    if g1.vertices() != g2.vertices() {
        // Short-circuit before classifying anything.
        let v1: BTreeSet<_> = g1.vertices().iter().cloned().collect();
        let v2: BTreeSet<_> = g2.vertices().iter().cloned().collect();
        let (v, present_in) = first_difference(&v1, &v2).expect("vertex lists differ");
        return EquivalenceVerdict {
            equivalent: false,
            failing_condition: Some(Mismatch {
                condition: Condition::Vertices,
                witness: Witness::Vertex(v),
                present_in,
            }),
        };
    }
    let (f1, f2) = rayon::join(|| features::classify(g1), || features::classify(g2));
    compare_features(&f1, &f2)
}

/// Why two graphs failed the brute-force comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleDifference {
    VertexSets,
    /// A separation holding in exactly one graph.
    Separation {
        statement: SeparationStatement,
        holds_in: Side,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub equivalent: bool,
    pub difference: Option<OracleDifference>,
}

impl fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.difference {
            None => write!(f, "equivalent"),
            Some(OracleDifference::VertexSets) => write!(f, "not equivalent\nvertex sets differ"),
            Some(OracleDifference::Separation { statement, holds_in }) => write!(
                f,
                "not equivalent\n{statement} holds only in the {holds_in} graph"
            ),
        }
    }
}

/// Brute-force Markov equivalence: identical d-separation sets, computed
/// by path enumeration.
pub fn oracle_equivalent(g1: &DirectedGraph, g2: &DirectedGraph) -> Result<OracleVerdict> {
    oracle_equivalent_capped(g1, g2, dsep::oracle_cap())
}

pub fn oracle_equivalent_capped(g1: &DirectedGraph, g2: &DirectedGraph, cap: usize) -> Result<OracleVerdict> {
    if g1.vertices() != g2.vertices() {
        return Ok(OracleVerdict {
            equivalent: false,
            difference: Some(OracleDifference::VertexSets),
        });
    }
    let s1 = dsep::separation_signature(g1, cap)?;
    let s2 = dsep::separation_signature(g2, cap)?;
    let first = s1.symmetric_difference(&s2).min();
    Ok(match first {
        None => OracleVerdict {
            equivalent: true,
            difference: None,
        },
        Some(pos) => OracleVerdict {
            equivalent: false,
            difference: Some(OracleDifference::Separation {
                statement: dsep::signature_statement(g1, pos),
                holds_in: if s1.contains(pos) {
                    Side::First
                } else {
                    Side::Second
                },
            }),
        },
    })
}

fn unshielded_colliders(g: &DirectedGraph) -> BTreeSet<(usize, usize, usize)> {
    let mut out = BTreeSet::new();
    for b in 0..g.vertex_count() {
        let ps = g.parent_indices(b);
        for (i, &a) in ps.iter().enumerate() {
            for &c in &ps[i + 1..] {
                if !g.has_edge_between(a, c) {
                    out.insert((a, b, c));
                }
            }
        }
    }
    out
}

fn skeleton(g: &DirectedGraph) -> BTreeSet<(usize, usize)> {
    g.edges().map(|(t, h)| (t.min(h), t.max(h))).collect()
}

/// Acyclic equivalence: same vertices, same skeleton, same unshielded
/// colliders. Both inputs must be acyclic.
pub fn verma_pearl_equivalent(g1: &DirectedGraph, g2: &DirectedGraph) -> Result<bool> {
    if !g1.is_acyclic() || !g2.is_acyclic() {
        return Err(Error::CyclicInput);
    }
    Ok(g1.vertices() == g2.vertices()
        && skeleton(g1) == skeleton(g2)
        && unshielded_colliders(g1) == unshielded_colliders(g2))
}

/// Whether some DAG on the same vertices is Markov equivalent to `g`: true
/// iff `g` has no unshielded imperfect non-conductor and no pair of m.e.
/// conductors.
pub fn acyclic_equivalent_exists(g: &DirectedGraph) -> bool {
    features::admits_acyclic_equivalent(g)
}
