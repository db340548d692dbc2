//! Feature extraction for the cyclic equivalence test.
//!
//! [`classify`] computes, in order: the reachability closure, the adjacency
//! graph (real and virtual adjacencies), unshielded conductors, unshielded
//! perfect non-conductors, mutually exclusive conductor sextuples, and the
//! two ancestor-pair sets derived from imperfect non-conductors. Two graphs
//! are Markov equivalent iff these seven components agree.
//!
//! The index-level work happens in [`steps`]; the functions here convert to
//! and from vertex names.

mod itinerary;
pub(crate) mod steps;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::closure::AncestorClosure;
use crate::error::Result;
use crate::graph::{DirectedGraph, UndirectedGraph, VertexId};

pub use itinerary::{itinerary_oracle, itinerary_oracle_capped, DEFAULT_ITINERARY_CAP};
pub use steps::{KRule, TripleKind};

/// Unshielded triple `<a, b, c>` stored with `a < c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
}

pub type ConductorTriple = Triple;
pub type PerfectNonConductorTriple = Triple;
pub type ImperfectNonConductorTriple = Triple;

impl Triple {
    pub fn new(a: VertexId, b: VertexId, c: VertexId) -> Self {
        if c < a {
            Self { a: c, b, c: a }
        } else {
            Self { a, b, c }
        }
    }

    pub fn from_names(a: &str, b: &str, c: &str) -> Result<Self> {
        Ok(Self::new(VertexId::new(a)?, VertexId::new(b)?, VertexId::new(c)?))
    }

    pub(crate) fn from_indices(g: &DirectedGraph, [a, b, c]: [usize; 3]) -> Self {
        Self::new(g.name(a).clone(), g.name(b).clone(), g.name(c).clone())
    }

    pub(crate) fn indices(&self, g: &DirectedGraph) -> Result<[usize; 3]> {
        Ok([
            g.require(self.a.as_str())?,
            g.require(self.b.as_str())?,
            g.require(self.c.as_str())?,
        ])
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{}>", self.a, self.b, self.c)
    }
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.a, &self.b, &self.c].serialize(s)
    }
}

/// A pair of mutually exclusive unshielded conductors `<a,b,c>` and
/// `<d,e,f>`, stored as the lexicographic minimum of the tuple and its
/// reversal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeConductorSextuple(pub [VertexId; 6]);

impl MeConductorSextuple {
    pub fn new(vertices: [VertexId; 6]) -> Self {
        let mut reversed = vertices.clone();
        reversed.reverse();
        Self(vertices.min(reversed))
    }

    pub fn from_names(names: [&str; 6]) -> Result<Self> {
        let ids = names.map(VertexId::new);
        if let Some(Err(e)) = ids.iter().find(|r| r.is_err()) {
            return Err(e.clone());
        }
        Ok(Self::new(ids.map(|r| r.expect("checked above"))))
    }

    pub(crate) fn from_indices(g: &DirectedGraph, s: [usize; 6]) -> Self {
        Self::new(s.map(|v| g.name(v).clone()))
    }
}

impl fmt::Display for MeConductorSextuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(VertexId::as_str).collect();
        write!(f, "<{}>", names.join(","))
    }
}

impl Serialize for MeConductorSextuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Real or virtual adjacency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AdjacencyKind {
    Real,
    Virtual,
}

/// The adjacency graph with each edge tagged real or virtual. An edge with
/// both justifications is real.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyStructure {
    pub graph: UndirectedGraph,
    virtual_edges: BTreeSet<(usize, usize)>,
}

impl AdjacencyStructure {
    pub fn kind(&self, a: usize, b: usize) -> Option<AdjacencyKind> {
        if !self.graph.contains_edge(a, b) {
            None
        } else if self.virtual_edges.contains(&(a.min(b), a.max(b))) {
            Some(AdjacencyKind::Virtual)
        } else {
            Some(AdjacencyKind::Real)
        }
    }

    pub fn kind_by_name(&self, g: &DirectedGraph, a: &str, b: &str) -> Result<Option<AdjacencyKind>> {
        Ok(self.kind(g.require(a)?, g.require(b)?))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.graph.contains_edge(a, b)
    }

    /// Virtual edges as `(a, b)` with `a < b`.
    pub fn virtual_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.virtual_edges.iter().copied()
    }
}

/// Unshielded triples of a graph, partitioned three ways.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UnshieldedTriples {
    pub conductors: BTreeSet<ConductorTriple>,
    pub perfect_non_conductors: BTreeSet<PerfectNonConductorTriple>,
    pub imperfect_non_conductors: BTreeSet<ImperfectNonConductorTriple>,
}

/// Everything compared by the equivalence test. The closure is deliberately
/// absent: equivalent graphs generally have different ancestor relations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FeatureSet {
    pub vertices: Vec<VertexId>,
    pub hadj: UndirectedGraph,
    pub conductors: BTreeSet<ConductorTriple>,
    pub perfect_non_conductors: BTreeSet<PerfectNonConductorTriple>,
    pub me_conductors: BTreeSet<MeConductorSextuple>,
    pub imperfect_ancestors: BTreeSet<(VertexId, VertexId)>,
    pub me_imperfect_ancestors: BTreeSet<(VertexId, VertexId)>,
}

impl FeatureSet {
    /// Line-oriented canonical text, one component per line.
    pub fn to_text(&self) -> String {
        fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
            items
                .into_iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
        let pair = |(w, v): &(VertexId, VertexId)| format!("({w},{v})");
        let lines = [
            format!("vertices: {}", join(&self.vertices)),
            format!(
                "adjacencies: {}",
                join(self.hadj.named_edges().iter().map(|(a, b)| format!("{a}-{b}")))
            ),
            format!("conductors: {}", join(&self.conductors)),
            format!("perfect-non-conductors: {}", join(&self.perfect_non_conductors)),
            format!("me-conductors: {}", join(&self.me_conductors)),
            format!(
                "imperfect-ancestors: {}",
                join(self.imperfect_ancestors.iter().map(pair))
            ),
            format!(
                "me-imperfect-ancestors: {}",
                join(self.me_imperfect_ancestors.iter().map(pair))
            ),
        ];
        let mut out = String::new();
        for line in lines {
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

fn triples_to_names(g: &DirectedGraph, triples: impl IntoIterator<Item = [usize; 3]>) -> BTreeSet<Triple> {
    triples.into_iter().map(|t| Triple::from_indices(g, t)).collect()
}

fn pairs_to_names(g: &DirectedGraph, pairs: &BTreeSet<(usize, usize)>) -> BTreeSet<(VertexId, VertexId)> {
    pairs
        .iter()
        .map(|&(w, v)| (g.name(w).clone(), g.name(v).clone()))
        .collect()
}

fn triple_set_indices(g: &DirectedGraph, set: &BTreeSet<Triple>) -> Result<Vec<[usize; 3]>> {
    set.iter().map(|t| t.indices(g)).collect()
}

pub fn build_hadj(g: &DirectedGraph, c: &AncestorClosure) -> AdjacencyStructure {
    steps::build_hadj(g, c)
}

pub fn unshielded_conductors(
    g: &DirectedGraph,
    c: &AncestorClosure,
    h: &AdjacencyStructure,
) -> BTreeSet<ConductorTriple> {
    let kinds = steps::triple_kinds(g, c, &h.graph);
    triples_to_names(g, steps::of_kind(&kinds, TripleKind::Conductor))
}

pub fn unshielded_perfect_non_conductors(
    g: &DirectedGraph,
    c: &AncestorClosure,
    h: &AdjacencyStructure,
) -> BTreeSet<PerfectNonConductorTriple> {
    let kinds = steps::triple_kinds(g, c, &h.graph);
    triples_to_names(g, steps::of_kind(&kinds, TripleKind::Perfect))
}

pub fn unshielded_imperfect_non_conductors(
    g: &DirectedGraph,
    c: &AncestorClosure,
    h: &AdjacencyStructure,
) -> BTreeSet<ImperfectNonConductorTriple> {
    let kinds = steps::triple_kinds(g, c, &h.graph);
    triples_to_names(g, steps::of_kind(&kinds, TripleKind::Imperfect))
}

/// All three kinds of unshielded triple at once.
pub fn classify_unshielded(
    g: &DirectedGraph,
    c: &AncestorClosure,
    h: &AdjacencyStructure,
) -> UnshieldedTriples {
    let kinds = steps::triple_kinds(g, c, &h.graph);
    UnshieldedTriples {
        conductors: triples_to_names(g, steps::of_kind(&kinds, TripleKind::Conductor)),
        perfect_non_conductors: triples_to_names(g, steps::of_kind(&kinds, TripleKind::Perfect)),
        imperfect_non_conductors: triples_to_names(g, steps::of_kind(&kinds, TripleKind::Imperfect)),
    }
}

/// Mutually exclusive conductor pairs via the restricted-subgraph search.
pub fn me_conductors(
    g: &DirectedGraph,
    c: &AncestorClosure,
    h: &AdjacencyStructure,
    conductors: &BTreeSet<ConductorTriple>,
) -> Result<BTreeSet<MeConductorSextuple>> {
    me_conductors_with_rule(g, c, h, conductors, KRule::PerEndpoint)
}

/// [`me_conductors`] with an explicit choice of how K is cut down.
/// [`KRule::AsWritten`] over-reports on some graphs with six or more vertices;
/// it is kept for comparison.
pub fn me_conductors_with_rule(
    g: &DirectedGraph,
    c: &AncestorClosure,
    h: &AdjacencyStructure,
    conductors: &BTreeSet<ConductorTriple>,
    rule: KRule,
) -> Result<BTreeSet<MeConductorSextuple>> {
    let canonical = triple_set_indices(g, conductors)?;
    let ordered = steps::both_orientations(&canonical);
    let found = steps::me_conductors(c, &h.graph, &ordered, rule);
    Ok(found
        .into_iter()
        .map(|s| MeConductorSextuple::from_indices(g, s))
        .collect())
}

fn imperfect_by_endpoints(g: &DirectedGraph, triples: &UnshieldedTriples) -> Result<steps::ImperfectIndex> {
    let imperfect = triple_set_indices(g, &triples.imperfect_non_conductors)?;
    Ok(steps::ImperfectIndex::new(&imperfect))
}

/// Pairs `(W, V)` where `<A,W,F>` and `<A,V,F>` are both unshielded imperfect
/// non-conductors for some `A, F` and `V` reaches `W`.
pub fn imperfect_ancestors(
    g: &DirectedGraph,
    c: &AncestorClosure,
    triples: &UnshieldedTriples,
) -> Result<BTreeSet<(VertexId, VertexId)>> {
    let index = imperfect_by_endpoints(g, triples)?;
    Ok(pairs_to_names(g, &steps::imperfect_ancestors(c, &index)))
}

/// Pairs `(W, V)` where `<A,W,F>` is an unshielded imperfect non-conductor,
/// `<A,V,C,D,E,F>` is an m.e.-conductor sextuple, and `V` reaches `W`.
pub fn me_imperfect_ancestors(
    g: &DirectedGraph,
    c: &AncestorClosure,
    me: &BTreeSet<MeConductorSextuple>,
    triples: &UnshieldedTriples,
) -> Result<BTreeSet<(VertexId, VertexId)>> {
    let index = imperfect_by_endpoints(g, triples)?;
    let mut ordered = BTreeSet::new();
    for s in me {
        let mut idx = [0usize; 6];
        for (slot, v) in idx.iter_mut().zip(&s.0) {
            *slot = g.require(v.as_str())?;
        }
        ordered.insert(idx);
        idx.reverse();
        ordered.insert(idx);
    }
    Ok(pairs_to_names(
        g,
        &steps::me_imperfect_ancestors(c, &ordered, &index),
    ))
}

/// Runs every classification step and assembles the comparable features.
pub fn classify(g: &DirectedGraph) -> FeatureSet {
    let c = g.closure();
    let h = steps::build_hadj(g, c);
    let kinds = steps::triple_kinds(g, c, &h.graph);
    let conductors: Vec<[usize; 3]> = steps::of_kind(&kinds, TripleKind::Conductor).collect();
    let perfect = steps::of_kind(&kinds, TripleKind::Perfect);
    let imperfect: Vec<[usize; 3]> = steps::of_kind(&kinds, TripleKind::Imperfect).collect();

    let ordered = steps::both_orientations(&conductors);
    let me = steps::me_conductors(c, &h.graph, &ordered, KRule::PerEndpoint);
    let index = steps::ImperfectIndex::new(&imperfect);
    let f_pairs = steps::imperfect_ancestors(c, &index);
    let g_pairs = steps::me_imperfect_ancestors(c, &me, &index);

    FeatureSet {
        vertices: g.vertices().to_vec(),
        conductors: triples_to_names(g, conductors),
        perfect_non_conductors: triples_to_names(g, perfect),
        me_conductors: me
            .into_iter()
            .map(|s| MeConductorSextuple::from_indices(g, s))
            .collect(),
        imperfect_ancestors: pairs_to_names(g, &f_pairs),
        me_imperfect_ancestors: pairs_to_names(g, &g_pairs),
        hadj: h.graph,
    }
}

/// Both conditions for an acyclic Markov-equivalent graph:
/// no unshielded imperfect non-conductor and no m.e.-conductor pair.
pub(crate) fn admits_acyclic_equivalent(g: &DirectedGraph) -> bool {
    let c = g.closure();
    let h = steps::build_hadj(g, c);
    let kinds = steps::triple_kinds(g, c, &h.graph);
    if steps::of_kind(&kinds, TripleKind::Imperfect).next().is_some() {
        return false;
    }
    let conductors: Vec<[usize; 3]> = steps::of_kind(&kinds, TripleKind::Conductor).collect();
    steps::me_conductors(
        c,
        &h.graph,
        &steps::both_orientations(&conductors),
        KRule::PerEndpoint,
    )
    .is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(v: &[&str], e: &[(&str, &str)]) -> DirectedGraph {
        DirectedGraph::new(v.iter().copied(), e.iter().copied()).unwrap()
    }

    fn t(a: &str, b: &str, c: &str) -> Triple {
        Triple::from_names(a, b, c).unwrap()
    }

    #[test]
    fn triple_canonical_form() {
        assert_eq!(t("C", "B", "A"), t("A", "B", "C"));
        assert_eq!(t("C", "B", "A").to_string(), "<A,B,C>");
    }

    #[test]
    fn sextuple_canonical_form() {
        let s = MeConductorSextuple::from_names(["D", "C", "B", "C", "B", "A"]).unwrap();
        assert_eq!(s.to_string(), "<A,B,C,B,C,D>");
        assert_eq!(MeConductorSextuple::new(s.0.clone()), s);
    }

    #[test]
    fn hadj_examples() {
        let chain = graph(&["A", "B", "C"], &[("A", "B"), ("B", "C")]);
        let h = build_hadj(&chain, chain.closure());
        assert_eq!(h.graph.edges().collect::<Vec<_>>(), [(0, 1), (1, 2)]);
        assert!(h.virtual_edges().next().is_none());

        let virt = graph(&["A", "B", "C"], &[("A", "B"), ("C", "B"), ("B", "A")]);
        let h = build_hadj(&virt, virt.closure());
        assert_eq!(h.graph.edge_count(), 3);
        assert_eq!(
            h.kind_by_name(&virt, "A", "C").unwrap(),
            Some(AdjacencyKind::Virtual)
        );
        assert_eq!(
            h.kind_by_name(&virt, "A", "B").unwrap(),
            Some(AdjacencyKind::Real)
        );

        let collider = graph(&["A", "B", "C"], &[("A", "B"), ("C", "B")]);
        let h = build_hadj(&collider, collider.closure());
        assert_eq!(h.graph.edges().collect::<Vec<_>>(), [(0, 1), (1, 2)]);
    }

    #[test]
    fn triple_classes_on_small_graphs() {
        let chain = graph(&["A", "B", "C"], &[("A", "B"), ("B", "C")]);
        let collider = graph(&["A", "B", "C"], &[("A", "B"), ("C", "B")]);
        for g in [&chain, &collider] {
            let h = build_hadj(g, g.closure());
            let parts = classify_unshielded(g, g.closure(), &h);
            assert!(parts.imperfect_non_conductors.is_empty());
        }
        let h = build_hadj(&chain, chain.closure());
        assert_eq!(
            unshielded_conductors(&chain, chain.closure(), &h),
            BTreeSet::from([t("A", "B", "C")])
        );
        assert!(unshielded_perfect_non_conductors(&chain, chain.closure(), &h).is_empty());

        let h = build_hadj(&collider, collider.closure());
        assert!(unshielded_conductors(&collider, collider.closure(), &h).is_empty());
        assert_eq!(
            unshielded_perfect_non_conductors(&collider, collider.closure(), &h),
            BTreeSet::from([t("A", "B", "C")])
        );
    }

    #[test]
    fn perfect_through_a_common_child() {
        let g = graph(
            &["A", "B", "C", "D"],
            &[("A", "B"), ("C", "B"), ("A", "D"), ("C", "D"), ("D", "B")],
        );
        let h = build_hadj(&g, g.closure());
        assert_eq!(
            unshielded_perfect_non_conductors(&g, g.closure(), &h),
            BTreeSet::from([t("A", "B", "C"), t("A", "D", "C")])
        );
    }

    #[test]
    fn classify_collider_and_chain() {
        let collider = graph(&["A", "B", "C"], &[("A", "B"), ("C", "B")]);
        let f = classify(&collider);
        assert!(f.conductors.is_empty());
        assert_eq!(f.perfect_non_conductors, BTreeSet::from([t("A", "B", "C")]));
        assert!(f.me_conductors.is_empty());
        assert!(f.imperfect_ancestors.is_empty() && f.me_imperfect_ancestors.is_empty());
        assert_eq!(
            f.to_text(),
            "vertices: A B C\nadjacencies: A-B B-C\nconductors:\nperfect-non-conductors: <A,B,C>\n\
             me-conductors:\nimperfect-ancestors:\nme-imperfect-ancestors:\n"
        );

        let chain = graph(&["A", "B", "C"], &[("A", "B"), ("B", "C")]);
        let f = classify(&chain);
        assert_eq!(f.conductors, BTreeSet::from([t("A", "B", "C")]));
        assert!(f.perfect_non_conductors.is_empty() && f.me_conductors.is_empty());
    }

    #[test]
    fn k_rules_differ_on_a_seven_edge_graph() {
        let g = graph(
            &["A", "B", "C", "D", "F", "G"],
            &[
                ("A", "B"),
                ("B", "C"),
                ("C", "F"),
                ("F", "B"),
                ("D", "G"),
                ("G", "C"),
                ("C", "G"),
            ],
        );
        let c = g.closure();
        let h = build_hadj(&g, c);
        let conductors = unshielded_conductors(&g, c, &h);
        let s = |n: [&str; 6]| MeConductorSextuple::from_names(n).unwrap();
        let per_endpoint = me_conductors(&g, c, &h, &conductors).unwrap();
        assert_eq!(
            per_endpoint,
            BTreeSet::from([
                s(["A", "B", "C", "B", "C", "D"]),
                s(["A", "B", "G", "B", "G", "D"]),
                s(["A", "F", "C", "F", "C", "D"]),
            ])
        );
        let as_written = me_conductors_with_rule(&g, c, &h, &conductors, KRule::AsWritten).unwrap();
        assert!(as_written.is_superset(&per_endpoint));
        assert!(as_written.contains(&s(["A", "F", "C", "B", "G", "D"])));
    }
}
