//! Exhaustive cross-validation over every directed graph on a few vertices.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::dsep;
use crate::equivalence::acyclic_equivalent_exists;
use crate::error::{Error, Result};
use crate::features::{classify, FeatureSet};
use crate::graph::{default_names, DirectedGraph};

pub const MAX_CORPUS_N: usize = 4;

/// Every directed graph (no self-loops) on `n` labeled vertices, in mask
/// order: bit `k` of the mask selects the `k`-th ordered pair.
pub fn all_graphs(n: usize) -> Vec<DirectedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    assert!(pairs.len() < usize::BITS as usize, "corpus too large");
    let names = default_names(n);
    (0usize..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e);
            DirectedGraph::from_index_edges(names.clone(), edges).expect("valid edges")
        })
        .collect()
}

/// Every DAG on `n` labeled vertices.
pub fn all_dags(n: usize) -> Vec<DirectedGraph> {
    all_graphs(n)
        .into_iter()
        .filter(DirectedGraph::is_acyclic)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub n: usize,
    pub graph_count: usize,
    /// Classes of the brute-force partition, largest first.
    pub class_sizes: Vec<usize>,
    /// Number of classes in the feature-set partition.
    pub feature_class_count: usize,
    pub partitions_agree: bool,
    /// Graph index pairs placed together by one partition and apart by the other.
    pub disagreements: Vec<(usize, usize)>,
    pub classes_without_dag: usize,
    /// Graphs where `acyclic_equivalent_exists` differs from whether their
    /// class has an acyclic member.
    pub acyclic_mismatches: Vec<usize>,
}

impl CorpusReport {
    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn passed(&self) -> bool {
        self.partitions_agree && self.acyclic_mismatches.is_empty()
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "graphs: {}", self.graph_count)?;
        writeln!(f, "classes: {}", self.class_count())?;
        let sizes: Vec<String> = self.class_sizes.iter().map(usize::to_string).collect();
        writeln!(f, "class sizes: {}", sizes.join(" "))?;
        writeln!(f, "feature classes: {}", self.feature_class_count)?;
        writeln!(f, "partitions agree: {}", self.partitions_agree)?;
        writeln!(
            f,
            "classes without an acyclic member: {}",
            self.classes_without_dag
        )?;
        writeln!(
            f,
            "acyclic-equivalent mismatches: {}",
            self.acyclic_mismatches.len()
        )?;
        for (i, j) in self.disagreements.iter().take(10) {
            writeln!(f, "disagreement: graphs {i} and {j}")?;
        }
        Ok(())
    }
}

/// Representative (smallest member index) of each element's class.
fn class_representatives<K: std::hash::Hash + Eq>(keys: &[K]) -> Vec<usize> {
    let mut first: HashMap<&K, usize> = HashMap::new();
    keys.iter()
        .enumerate()
        .map(|(i, k)| *first.entry(k).or_insert(i))
        .collect()
}

/// Partitions every graph on `n` vertices by feature sets and by separation
/// sets, and checks the two partitions coincide.
pub fn run_corpus(n: usize) -> Result<CorpusReport> {
    if n == 0 {
        return Err(Error::InvalidConfig("corpus needs at least one vertex".into()));
    }
    if n > MAX_CORPUS_N {
        return Err(Error::OracleCapExceeded { n, cap: MAX_CORPUS_N });
    }
    let graphs = all_graphs(n);
    let computed: Vec<(FeatureSet, FixedBitSet, bool)> = graphs
        .par_iter()
        .map(|g| {
            let sig = dsep::separation_signature(g, MAX_CORPUS_N).expect("within cap");
            (classify(g), sig, acyclic_equivalent_exists(g))
        })
        .collect();
    let features: Vec<&FeatureSet> = computed.iter().map(|c| &c.0).collect();
    let signatures: Vec<&FixedBitSet> = computed.iter().map(|c| &c.1).collect();
    let by_features = class_representatives(&features);
    let by_oracle = class_representatives(&signatures);

    let mut disagreements = Vec::new();
    for i in 0..graphs.len() {
        // Compare each graph with the representatives of both of its classes.
        for j in [by_features[i], by_oracle[i]] {
            if j < i && (by_features[i] == by_features[j]) != (by_oracle[i] == by_oracle[j]) {
                disagreements.push((j, i));
            }
        }
    }
    disagreements.sort_unstable();
    disagreements.dedup();

    let mut sizes: HashMap<usize, usize> = HashMap::new();
    let mut has_dag: HashMap<usize, bool> = HashMap::new();
    for (i, g) in graphs.iter().enumerate() {
        *sizes.entry(by_oracle[i]).or_default() += 1;
        *has_dag.entry(by_oracle[i]).or_default() |= g.is_acyclic();
    }
    let mut class_sizes: Vec<usize> = sizes.values().copied().collect();
    class_sizes.sort_unstable_by(|a, b| b.cmp(a));
    let acyclic_mismatches = (0..graphs.len())
        .filter(|&i| computed[i].2 != has_dag[&by_oracle[i]])
        .collect();
    let feature_class_count = {
        let mut reps = by_features.clone();
        reps.sort_unstable();
        reps.dedup();
        reps.len()
    };

    Ok(CorpusReport {
        n,
        graph_count: graphs.len(),
        class_sizes,
        feature_class_count,
        partitions_agree: disagreements.is_empty(),
        disagreements,
        classes_without_dag: has_dag.values().filter(|h| !**h).count(),
        acyclic_mismatches,
    })
}
