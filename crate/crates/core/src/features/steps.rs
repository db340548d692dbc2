//! Index-level classification steps.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use super::AdjacencyStructure;
use crate::closure::AncestorClosure;
use crate::graph::{DirectedGraph, UndirectedGraph};

/// The three mutually exclusive kinds of unshielded triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TripleKind {
    Conductor,
    Perfect,
    Imperfect,
}

pub(crate) fn build_hadj(g: &DirectedGraph, c: &AncestorClosure) -> AdjacencyStructure {
    let mut graph = UndirectedGraph::empty(g.vertices().to_vec());
    for (t, h) in g.edges() {
        graph.add_edge(t, h);
    }
    let mut virtual_edges = BTreeSet::new();
    for child in 0..g.vertex_count() {
        let parents = g.parent_indices(child);
        for (i, &a) in parents.iter().enumerate() {
            for &b in &parents[i + 1..] {
                if g.has_edge_between(a, b) || virtual_edges.contains(&(a, b)) {
                    continue;
                }
                if c.reaches(child, a) || c.reaches(child, b) {
                    virtual_edges.insert((a, b));
                    graph.add_edge(a, b);
                }
            }
        }
    }
    AdjacencyStructure { graph, virtual_edges }
}

/// Every unshielded triple `[a, b, c]` with `a < c`, classified.
pub(crate) fn triple_kinds(
    g: &DirectedGraph,
    c: &AncestorClosure,
    h: &UndirectedGraph,
) -> BTreeMap<[usize; 3], TripleKind> {
    let mut out = BTreeMap::new();
    for b in 0..g.vertex_count() {
        let nb: Vec<usize> = h.neighbours(b).ones().collect();
        let into_b = c.ancestor_set(b);
        for (i, &a) in nb.iter().enumerate() {
            for &z in &nb[i + 1..] {
                if h.contains_edge(a, z) {
                    continue;
                }
                let kind = if c.reaches(b, a) || c.reaches(b, z) {
                    TripleKind::Conductor
                } else {
                    // b descends (reflexively) from a common child of a and z
                    let mut common = g.child_set(a).clone();
                    common.intersect_with(g.child_set(z));
                    if common.is_disjoint(&into_b) {
                        TripleKind::Imperfect
                    } else {
                        TripleKind::Perfect
                    }
                };
                out.insert([a, b, z], kind);
            }
        }
    }
    out
}

pub(crate) fn of_kind(
    kinds: &BTreeMap<[usize; 3], TripleKind>,
    wanted: TripleKind,
) -> impl Iterator<Item = [usize; 3]> + '_ {
    kinds.iter().filter(move |(_, k)| **k == wanted).map(|(t, _)| *t)
}

pub(crate) fn both_orientations(triples: &[[usize; 3]]) -> Vec<[usize; 3]> {
    triples
        .iter()
        .flat_map(|&[a, b, c]| [[a, b, c], [c, b, a]])
        .collect()
}

/// Connected-component labels of the mutual-ancestry subgraph of `h`: edges
/// `x - y` with `x` reaching `y` and `y` reaching `x`.
fn mutual_subgraph(c: &AncestorClosure, h: &UndirectedGraph) -> (Vec<FixedBitSet>, Vec<usize>) {
    let n = c.vertex_count();
    let adj: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut s = h.neighbours(x).clone();
            s.intersect_with(c.reach_set(x));
            s.retain(|y| c.reaches(y, x));
            s
        })
        .collect();
    let mut label = vec![usize::MAX; n];
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = start;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in adj[v].ones() {
                if label[w] == usize::MAX {
                    label[w] = start;
                    stack.push(w);
                }
            }
        }
    }
    (adj, label)
}

trait Retain {
    fn retain(&mut self, keep: impl Fn(usize) -> bool);
}

impl Retain for FixedBitSet {
    fn retain(&mut self, keep: impl Fn(usize) -> bool) {
        let drop: Vec<usize> = self.ones().filter(|&v| !keep(v)).collect();
        for v in drop {
            self.set(v, false);
        }
    }
}

/// Ordered sextuples `[a, b, c, d, e, f]` of m.e. conductors. Both
/// orientations of every pair are returned.
///
/// Candidates are pairs of ordered conductors `<a,b,c>`, `<d,e,f>` with
/// `a != f`, `c != f`, `b != e`, `b` not reaching `a`, `e` not reaching `f`, `a` and
/// `f` non-adjacent, and `b`, `e` non-adjacent unless `b = d` and `c = e`.
/// For each, the subgraph K drops neighbours of `a, b, e, f` as chosen by
/// `rule`, then drops `a` and `f`, and keeps only mutual-ancestry edges; the
/// candidate is accepted when `b` and `e` are connected in K.
pub(crate) fn me_conductors(
    c: &AncestorClosure,
    h: &UndirectedGraph,
    ordered_conductors: &[[usize; 3]],
    rule: KRule,
) -> BTreeSet<[usize; 6]> {
    let n = c.vertex_count();
    let (mutual, label) = mutual_subgraph(c, h);
    // <a,b,c> with b not an ancestor of a; read backwards it is also the
    // right-hand conductor <f,e,d> with e not an ancestor of f.
    let open: Vec<[usize; 3]> = ordered_conductors
        .iter()
        .copied()
        .filter(|&[a, b, _]| !c.reaches(b, a))
        .collect();
    let mut by_label: BTreeMap<usize, Vec<[usize; 3]>> = BTreeMap::new();
    for &t in &open {
        by_label.entry(label[t[1]]).or_default().push(t);
    }

    let mut out = BTreeSet::new();
    let mut allowed = FixedBitSet::with_capacity(n);
    let mut seen = FixedBitSet::with_capacity(n);
    let mut frontier = Vec::with_capacity(n);
    for group in by_label.values() {
        for &[a, b, cc] in group {
            for &[f, e, d] in group {
                if a == f || cc == f || b == e {
                    continue;
                }
                if h.contains_edge(a, f) {
                    continue;
                }
                if h.contains_edge(b, e) && !(b == d && cc == e) {
                    continue;
                }
                k_vertices(h, rule, [a, b, cc, d, e, f], &mut allowed);
                if connected(&mutual, &allowed, b, e, &mut seen, &mut frontier) {
                    out.insert([a, b, cc, d, e, f]);
                }
            }
        }
    }
    out
}

/// How the candidate subgraph K drops neighbours of the end vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRule {
    /// Each end vertex keeps only its own itinerary neighbours: `a` keeps
    /// `b`, `b` keeps `a` and `c`, `e` keeps `d` and `f`, `f` keeps `e`.
    PerEndpoint,
    /// Neighbours of any of `a, b, e, f` are dropped unless they are one of
    /// `b, c, d, e`, whichever end vertex they neighbour.
    AsWritten,
}

/// Vertex set of K for the candidate `[a, b, c, d, e, f]`.
fn k_vertices(h: &UndirectedGraph, rule: KRule, [a, b, c, d, e, f]: [usize; 6], out: &mut FixedBitSet) {
    out.insert_range(..);
    match rule {
        KRule::AsWritten => {
            for v in [a, b, e, f] {
                out.difference_with(h.neighbours(v));
            }
            for v in [b, c, d, e] {
                out.insert(v);
            }
        }
        KRule::PerEndpoint => {
            for (end, keep) in [(a, [b, b]), (b, [a, c]), (e, [d, f]), (f, [e, e])] {
                for v in h.neighbours(end).ones() {
                    if !keep.contains(&v) {
                        out.set(v, false);
                    }
                }
            }
        }
    }
    out.set(a, false);
    out.set(f, false);
}

fn connected(
    adj: &[FixedBitSet],
    allowed: &FixedBitSet,
    from: usize,
    to: usize,
    seen: &mut FixedBitSet,
    frontier: &mut Vec<usize>,
) -> bool {
    if !allowed.contains(from) || !allowed.contains(to) {
        return false;
    }
    seen.clear();
    seen.insert(from);
    frontier.clear();
    frontier.push(from);
    while let Some(v) = frontier.pop() {
        for w in adj[v].intersection(allowed) {
            if w == to {
                return true;
            }
            if !seen.put(w) {
                frontier.push(w);
            }
        }
    }
    false
}

/// Unshielded imperfect non-conductors grouped by their (sorted) endpoints.
pub(crate) struct ImperfectIndex {
    middles: BTreeMap<(usize, usize), Vec<usize>>,
}

impl ImperfectIndex {
    pub(crate) fn new(imperfect: &[[usize; 3]]) -> Self {
        let mut middles: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for &[a, b, c] in imperfect {
            middles.entry((a.min(c), a.max(c))).or_default().push(b);
        }
        Self { middles }
    }

    fn middles(&self, a: usize, f: usize) -> &[usize] {
        self.middles
            .get(&(a.min(f), a.max(f)))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }
}

/// `(w, v)` with `<a,w,f>`, `<a,v,f>` imperfect and `v` reaching `w`.
pub(crate) fn imperfect_ancestors(c: &AncestorClosure, index: &ImperfectIndex) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for middles in index.middles.values() {
        for &w in middles {
            for &v in middles {
                if w != v && c.reaches(v, w) {
                    out.insert((w, v));
                }
            }
        }
    }
    out
}

/// `(w, v)` with `<a,w,f>` imperfect, `[a, v, _, _, _, f]` an m.e.-conductor
/// sextuple and `v` reaching `w`.
pub(crate) fn me_imperfect_ancestors(
    c: &AncestorClosure,
    me: &BTreeSet<[usize; 6]>,
    index: &ImperfectIndex,
) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for s in me {
        let (a, v, f) = (s[0], s[1], s[5]);
        for &w in index.middles(a, f) {
            if w != v && c.reaches(v, w) {
                out.insert((w, v));
            }
        }
    }
    out
}
