//! Directed and undirected graph values keyed by vertex name.
//!
//! Vertices are stored in lexicographic name order, so vertex indices, name
//! order, and every iteration order in the crate coincide.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::closure::AncestorClosure;
use crate::error::{Error, Result};

/// Vertex name: a nonempty token over `[A-Za-z0-9_]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VertexId(String);

impl VertexId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_valid_name(&name) {
            Ok(Self(name))
        } else {
            Err(Error::InvalidName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl TryFrom<String> for VertexId {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Self::new(value)
    }
}

impl From<VertexId> for String {
    fn from(v: VertexId) -> Self {
        v.0
    }
}

impl std::borrow::Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Names used by the generator and the exhaustive corpus: `A`..`Z` for small
/// graphs, zero-padded `V01`.. otherwise, so that index order is name order.
pub fn default_names(n: usize) -> Vec<VertexId> {
    if n <= 26 {
        (0..n)
            .map(|i| VertexId(((b'A' + i as u8) as char).to_string()))
            .collect()
    } else {
        let width = n.to_string().len();
        (1..=n).map(|i| VertexId(format!("V{i:0width$}"))).collect()
    }
}

/// A directed graph without self-loops. Between two vertices there may be
/// one edge in each direction.
pub struct DirectedGraph {
    names: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    out_sets: Vec<FixedBitSet>,
    closure: OnceLock<AncestorClosure>,
}

impl DirectedGraph {
    /// Builds a graph from vertex names and `(tail, head)` name pairs.
    pub fn new<V, S, E, T>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        S: AsRef<str>,
        E: IntoIterator<Item = (T, T)>,
        T: AsRef<str>,
    {
        let mut index = BTreeMap::new();
        for v in vertices {
            let id = VertexId::new(v.as_ref())?;
            if index.insert(id.clone(), 0).is_some() {
                return Err(Error::DuplicateVertex(id));
            }
        }
        let names: Vec<VertexId> = index.keys().cloned().collect();
        for (i, id) in names.iter().enumerate() {
            index.insert(id.clone(), i);
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownVertex(s.to_string()))
        };
        let mut pairs = BTreeSet::new();
        for (t, h) in edges {
            let (t, h) = (lookup(t.as_ref())?, lookup(h.as_ref())?);
            if t == h {
                return Err(Error::SelfLoop(names[t].clone()));
            }
            if !pairs.insert((t, h)) {
                return Err(Error::DuplicateEdge(names[t].clone(), names[h].clone()));
            }
        }
        Ok(Self::assemble(names, index, pairs))
    }

    /// Builds a graph from already-validated names and index pairs. Names are
    /// sorted here; edge indices refer to positions in `names` as given.
    pub fn from_index_edges(
        names: Vec<VertexId>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let tails = edges.iter().map(|&(t, h)| (names[t].as_str(), names[h].as_str()));
        Self::new(names.iter().map(VertexId::as_str), tails)
    }

    fn assemble(
        names: Vec<VertexId>,
        index: BTreeMap<VertexId, usize>,
        pairs: BTreeSet<(usize, usize)>,
    ) -> Self {
        let n = names.len();
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        let mut out_sets = vec![FixedBitSet::with_capacity(n); n];
        for &(t, h) in &pairs {
            children[t].push(h);
            parents[h].push(t);
            out_sets[t].insert(h);
        }
        for p in &mut parents {
            p.sort_unstable();
        }
        Self {
            names,
            index,
            parents,
            children,
            out_sets,
            closure: OnceLock::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &VertexId {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub(crate) fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// All edges as `(tail, head)` index pairs in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.children
            .iter()
            .enumerate()
            .flat_map(|(t, hs)| hs.iter().map(move |&h| (t, h)))
    }

    pub fn has_edge(&self, tail: usize, head: usize) -> bool {
        self.out_sets[tail].contains(head)
    }

    /// True when an edge exists in either direction.
    pub fn has_edge_between(&self, a: usize, b: usize) -> bool {
        self.has_edge(a, b) || self.has_edge(b, a)
    }

    pub fn parent_indices(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn child_indices(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub(crate) fn child_set(&self, v: usize) -> &FixedBitSet {
        &self.out_sets[v]
    }

    pub fn parents(&self, v: &str) -> Result<BTreeSet<VertexId>> {
        let v = self.require(v)?;
        Ok(self.parents[v].iter().map(|&p| self.names[p].clone()).collect())
    }

    pub fn children(&self, v: &str) -> Result<BTreeSet<VertexId>> {
        let v = self.require(v)?;
        Ok(self.children[v].iter().map(|&c| self.names[c].clone()).collect())
    }

    /// True iff the graph has no directed cycle (Kahn's algorithm).
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut indegree: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut ready: Vec<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &c in &self.children[v] {
                indegree[c] -= 1;
                if indegree[c] == 0 {
                    ready.push(c);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// The reachability closure, computed on first use and cached.
    pub fn closure(&self) -> &AncestorClosure {
        self.closure.get_or_init(|| AncestorClosure::build(self))
    }

    /// Same vertices with every edge reversed.
    pub fn reversed(&self) -> Self {
        let pairs = self.edges().map(|(t, h)| (h, t)).collect();
        Self::assemble(self.names.clone(), self.index.clone(), pairs)
    }
}

impl Clone for DirectedGraph {
    fn clone(&self) -> Self {
        Self {
            names: self.names.clone(),
            index: self.index.clone(),
            parents: self.parents.clone(),
            children: self.children.clone(),
            out_sets: self.out_sets.clone(),
            closure: self.closure.clone(),
        }
    }
}

impl PartialEq for DirectedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.children == other.children
    }
}

impl Eq for DirectedGraph {}

impl Hash for DirectedGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.names.hash(state);
        self.children.hash(state);
    }
}

impl fmt::Debug for DirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(t, h)| format!("{}->{}", self.names[t], self.names[h]))
            .collect();
        f.debug_struct("DirectedGraph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

/// An undirected simple graph over named vertices; used for the adjacency
/// graph and for the per-candidate subgraphs in the m.e.-conductor search.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UndirectedGraph {
    names: Vec<VertexId>,
    adj: Vec<FixedBitSet>,
}

impl UndirectedGraph {
    pub fn empty(names: Vec<VertexId>) -> Self {
        let n = names.len();
        Self {
            names,
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub(crate) fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert_ne!(a, b);
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.names
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbours(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    /// Edges as `(a, b)` index pairs with `a < b`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(a, nb)| nb.ones().filter(move |&b| b > a).map(move |b| (a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.count_ones(..)).sum::<usize>() / 2
    }

    pub fn named_edges(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.edges()
            .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect()
    }
}

impl fmt::Debug for UndirectedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(a, b)| format!("{}-{}", self.names[a], self.names[b]))
            .collect();
        f.debug_struct("UndirectedGraph")
            .field("vertices", &self.names)
            .field("edges", &edges)
            .finish()
    }
}

#[derive(Serialize)]
struct UndirectedRepr<'a> {
    vertices: &'a [VertexId],
    edges: Vec<[&'a VertexId; 2]>,
}

impl Serialize for UndirectedGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        UndirectedRepr {
            vertices: &self.names,
            edges: self
                .edges()
                .map(|(a, b)| [&self.names[a], &self.names[b]])
                .collect(),
        }
        .serialize(serializer)
    }
}
