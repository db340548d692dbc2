//! Markov equivalence for directed graphs with or without cycles.
//!
//! Two directed graphs are Markov equivalent when they entail the same
//! d-separation relations. [`markov_equivalent`] decides this in polynomial
//! time by comparing seven feature sets computed by [`classify`];
//! [`oracle_equivalent`] decides it by brute force and is used to validate
//! the polynomial procedure on small graphs.
//!
//! ```
//! use dcg_core::{markov_equivalent, DirectedGraph};
//!
//! let cyclic = DirectedGraph::new(["A", "B", "C"], [("A", "B"), ("C", "B"), ("B", "A")])?;
//! let dag = DirectedGraph::new(["A", "B", "C"], [("A", "B"), ("B", "C"), ("A", "C")])?;
//! assert!(markov_equivalent(&cyclic, &dag).equivalent);
//! # Ok::<(), dcg_core::Error>(())
//! ```

pub mod closure;
pub mod corpus;
pub mod dsep;
pub mod equivalence;
pub mod error;
pub mod features;
pub mod generate;
pub mod graph;
pub mod io;

pub use closure::{build_closure, AncestorClosure};
pub use dsep::{
    all_separations, is_d_connected_fast, is_d_connected_oracle, DConnectingWitness, SeparationStatement,
};
pub use equivalence::{
    acyclic_equivalent_exists, markov_equivalent, oracle_equivalent, verma_pearl_equivalent, Condition,
    EquivalenceVerdict,
};
pub use error::{Error, Result};
pub use features::{classify, FeatureSet};
pub use generate::{generate_random, GeneratorConfig};
pub use graph::{DirectedGraph, UndirectedGraph, VertexId};
pub use io::{export_dot, parse_graph, serialize_graph};
