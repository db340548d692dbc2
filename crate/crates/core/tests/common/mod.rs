//! Fixtures and definitional oracles shared by the integration tests.
//!
//! Everything here is computed from first principles (breadth-first search
//! over edge lists, direct readings of the definitions) and does not call
//! into the closure, adjacency, or classification code under test.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeSet, VecDeque};

use dcg_core::DirectedGraph;

pub fn graph(v: &[&str], e: &[(&str, &str)]) -> DirectedGraph {
    DirectedGraph::new(v.iter().copied(), e.iter().copied()).unwrap()
}

pub fn g_chain() -> DirectedGraph {
    graph(&["A", "B", "C"], &[("A", "B"), ("B", "C")])
}

pub fn g_collider() -> DirectedGraph {
    graph(&["A", "B", "C"], &[("A", "B"), ("C", "B")])
}

pub fn g_2cycle() -> DirectedGraph {
    graph(&["A", "B"], &[("A", "B"), ("B", "A")])
}

pub fn g_virt() -> DirectedGraph {
    graph(&["A", "B", "C"], &[("A", "B"), ("C", "B"), ("B", "A")])
}

pub fn g_complete_dag() -> DirectedGraph {
    graph(&["A", "B", "C"], &[("A", "B"), ("B", "C"), ("A", "C")])
}

pub const ME_EDGES: [(&str, &str); 7] = [
    ("A", "B"),
    ("B", "C"),
    ("C", "F"),
    ("F", "B"),
    ("D", "G"),
    ("G", "C"),
    ("C", "G"),
];

pub fn g_me() -> DirectedGraph {
    graph(&["A", "B", "C", "D", "F", "G"], &ME_EDGES)
}

pub fn g_imp() -> DirectedGraph {
    graph(
        &["A", "F", "W", "V", "H", "K"],
        &[
            ("A", "W"),
            ("W", "H"),
            ("F", "H"),
            ("H", "W"),
            ("A", "V"),
            ("V", "K"),
            ("F", "K"),
            ("K", "V"),
            ("V", "W"),
        ],
    )
}

pub fn g_me2() -> DirectedGraph {
    let mut edges = ME_EDGES.to_vec();
    edges.extend([("A", "M"), ("C", "M"), ("M", "N"), ("D", "N"), ("N", "M")]);
    graph(&["A", "B", "C", "D", "F", "G", "M", "N"], &edges)
}

pub fn idx(g: &DirectedGraph, name: &str) -> usize {
    g.index_of(name).unwrap()
}

/// Vertices reachable from `v` by a directed path of length ≥ 1 (BFS).
pub fn bfs_reach(g: &DirectedGraph, v: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut queue: VecDeque<usize> = g.child_indices(v).iter().copied().collect();
    while let Some(u) = queue.pop_front() {
        if seen.insert(u) {
            queue.extend(g.child_indices(u).iter().copied());
        }
    }
    seen
}

/// Reachability by repeated squaring of the edge relation until fixpoint.
pub fn squaring_closure(g: &DirectedGraph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut r = vec![vec![false; n]; n];
    for (t, h) in g.edges() {
        r[t][h] = true;
    }
    loop {
        let mut next = r.clone();
        for i in 0..n {
            for k in 0..n {
                if r[i][k] {
                    for j in 0..n {
                        if r[k][j] {
                            next[i][j] = true;
                        }
                    }
                }
            }
        }
        if next == r {
            return r;
        }
        r = next;
    }
}

/// Reflexive ancestry by search.
pub fn ancestor(g: &DirectedGraph, u: usize, v: usize) -> bool {
    u == v || bfs_reach(g, u).contains(&v)
}

/// Real adjacency: an edge either way.
pub fn really_adjacent(g: &DirectedGraph, a: usize, b: usize) -> bool {
    g.has_edge(a, b) || g.has_edge(b, a)
}

/// Virtual adjacency: no edge, and a common child that is an ancestor of
/// one of the two.
pub fn virtually_adjacent(g: &DirectedGraph, a: usize, c: usize) -> bool {
    if a == c || really_adjacent(g, a, c) {
        return false;
    }
    (0..g.vertex_count())
        .any(|b| g.has_edge(a, b) && g.has_edge(c, b) && (ancestor(g, b, a) || ancestor(g, b, c)))
}

pub fn adjacent(g: &DirectedGraph, a: usize, b: usize) -> bool {
    really_adjacent(g, a, b) || virtually_adjacent(g, a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Conductor,
    Perfect,
    Imperfect,
}

/// Reads the unshielded-triple definitions directly. `None` when the triple
/// is not unshielded.
pub fn triple_kind(g: &DirectedGraph, a: usize, b: usize, c: usize) -> Option<Kind> {
    if a == b || b == c || a == c {
        return None;
    }
    if !adjacent(g, a, b) || !adjacent(g, b, c) || adjacent(g, a, c) {
        return None;
    }
    if ancestor(g, b, a) || ancestor(g, b, c) {
        return Some(Kind::Conductor);
    }
    let descends_from_common_child =
        (0..g.vertex_count()).any(|d| g.has_edge(a, d) && g.has_edge(c, d) && ancestor(g, d, b));
    Some(if descends_from_common_child {
        Kind::Perfect
    } else {
        Kind::Imperfect
    })
}

/// Canonical name triples of the given kind, by definition.
pub fn definitional_triples(g: &DirectedGraph, kind: Kind) -> BTreeSet<dcg_core::features::Triple> {
    let n = g.vertex_count();
    let mut out = BTreeSet::new();
    for a in 0..n {
        for b in 0..n {
            for c in a + 1..n {
                if triple_kind(g, a, b, c) == Some(kind) {
                    out.insert(
                        dcg_core::features::Triple::from_names(
                            g.name(a).as_str(),
                            g.name(b).as_str(),
                            g.name(c).as_str(),
                        )
                        .unwrap(),
                    );
                }
            }
        }
    }
    out
}

/// d-connection read straight off the definition: some path of distinct
/// vertices, with a choice of edge between each consecutive pair, on which
/// every vertex of `z` is a collider and every collider has a (reflexive)
/// descendant in `z`.
pub fn d_connected_by_definition(g: &DirectedGraph, x: usize, y: usize, z: &BTreeSet<usize>) -> bool {
    fn extend(
        g: &DirectedGraph,
        path: &mut Vec<usize>,
        into_last: Option<bool>,
        y: usize,
        z: &BTreeSet<usize>,
    ) -> bool {
        let last = *path.last().unwrap();
        for next in 0..g.vertex_count() {
            if path.contains(&next) {
                continue;
            }
            // `true` when the chosen edge points into `next`.
            for points_into_next in [true, false] {
                let exists = if points_into_next {
                    g.has_edge(last, next)
                } else {
                    g.has_edge(next, last)
                };
                if !exists {
                    continue;
                }
                if let Some(into) = into_last {
                    let collider = into && !points_into_next;
                    let ok = if collider {
                        z.iter().any(|&w| ancestor(g, last, w))
                    } else {
                        !z.contains(&last)
                    };
                    if !ok {
                        continue;
                    }
                }
                if next == y {
                    return true;
                }
                path.push(next);
                let found = extend(g, path, Some(points_into_next), y, z);
                path.pop();
                if found {
                    return true;
                }
            }
        }
        false
    }
    extend(g, &mut vec![x], None, y, z)
}

/// Sextuples of m.e. conductors by enumerating uncovered itineraries with
/// the definitional adjacency and triple predicates. Returned as ordered
/// name arrays, both orientations.
pub fn definitional_me_sextuples(g: &DirectedGraph) -> BTreeSet<[String; 6]> {
    fn walk(g: &DirectedGraph, seq: &mut Vec<usize>, out: &mut BTreeSet<[String; 6]>) {
        let n = seq.len();
        if n >= 4 && accepts(g, seq) {
            let pick = [seq[0], seq[1], seq[2], seq[n - 3], seq[n - 2], seq[n - 1]];
            out.insert(pick.map(|i| g.name(i).to_string()));
        }
        for w in 0..g.vertex_count() {
            if seq.contains(&w) || !adjacent(g, *seq.last().unwrap(), w) {
                continue;
            }
            if seq[..seq.len() - 1].iter().any(|&u| adjacent(g, u, w)) {
                continue;
            }
            seq.push(w);
            walk(g, seq, out);
            seq.pop();
        }
    }
    fn accepts(g: &DirectedGraph, s: &[usize]) -> bool {
        let n = s.len();
        let interior_ok = (1..n - 1).all(|k| {
            triple_kind(g, s[k - 1], s[k], s[k + 1]) == Some(Kind::Conductor)
                && ancestor(g, s[k - 1], s[k])
                && ancestor(g, s[k + 1], s[k])
        });
        interior_ok && !ancestor(g, s[1], s[0]) && !ancestor(g, s[n - 2], s[n - 1])
    }
    let mut out = BTreeSet::new();
    for start in 0..g.vertex_count() {
        walk(g, &mut vec![start], &mut out);
    }
    out
}

/// Canonical m.e. sextuples (min of the tuple and its reversal).
pub fn canonical_sextuples(ordered: &BTreeSet<[String; 6]>) -> BTreeSet<[String; 6]> {
    ordered
        .iter()
        .map(|s| {
            let mut r = s.clone();
            r.reverse();
            s.clone().min(r)
        })
        .collect()
}

/// Prints one acceptance line and returns whether it passed.
pub fn report(label: &str, passed: bool, detail: impl std::fmt::Display) -> bool {
    println!("[{}] {label}: {detail}", if passed { "PASS" } else { "FAIL" });
    passed
}
