//! Seeded random directed graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{default_names, DirectedGraph};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    pub n: usize,
    /// Independent inclusion probability for each ordered pair.
    pub p: f64,
    pub seed: u64,
    /// When false and both orientations of a pair are drawn, a fair coin
    /// keeps one of them.
    pub allow_two_cycles: bool,
}

impl GeneratorConfig {
    pub fn new(n: usize, p: f64, seed: u64) -> Self {
        Self {
            n,
            p,
            seed,
            allow_two_cycles: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidConfig(format!("p = {} is outside [0, 1]", self.p)));
        }
        Ok(())
    }
}

pub fn generate_random(cfg: &GeneratorConfig) -> Result<DirectedGraph> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok(random_with(&mut rng, cfg.n, cfg.p, cfg.allow_two_cycles))
}

/// Draws one graph from an existing generator; used when a test needs a
/// stream of graphs from a single seed.
pub fn random_with<R: Rng>(rng: &mut R, n: usize, p: f64, allow_two_cycles: bool) -> DirectedGraph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let forward = rng.gen_bool(p);
            let backward = rng.gen_bool(p);
            match (forward, backward) {
                (true, true) if !allow_two_cycles => {
                    if rng.gen_bool(0.5) {
                        edges.push((a, b));
                    } else {
                        edges.push((b, a));
                    }
                }
                _ => {
                    if forward {
                        edges.push((a, b));
                    }
                    if backward {
                        edges.push((b, a));
                    }
                }
            }
        }
    }
    DirectedGraph::from_index_edges(default_names(n), edges).expect("generated edges are valid")
}

/// A DAG drawn by orienting each sampled pair along a random permutation.
pub fn random_dag_with<R: Rng>(rng: &mut R, n: usize, p: f64) -> DirectedGraph {
    use rand::seq::SliceRandom;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((order[i], order[j]));
            }
        }
    }
    DirectedGraph::from_index_edges(default_names(n), edges).expect("generated edges are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes() {
        for seed in [0, 7, 99] {
            let empty = generate_random(&GeneratorConfig::new(3, 0.0, seed)).unwrap();
            assert_eq!(empty.edge_count(), 0);
            let full = generate_random(&GeneratorConfig::new(3, 1.0, seed)).unwrap();
            assert_eq!(full.edge_count(), 6);
        }
    }

    #[test]
    fn no_two_cycles_keeps_one_orientation() {
        let cfg = GeneratorConfig {
            allow_two_cycles: false,
            ..GeneratorConfig::new(6, 1.0, 3)
        };
        let g = generate_random(&cfg).unwrap();
        assert_eq!(g.edge_count(), 15);
        assert!(g.edges().all(|(t, h)| !g.has_edge(h, t)));
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = GeneratorConfig::new(5, 0.3, 42);
        assert_eq!(generate_random(&cfg).unwrap(), generate_random(&cfg).unwrap());
    }

    #[test]
    fn invalid_configs() {
        assert!(generate_random(&GeneratorConfig::new(0, 0.5, 1)).is_err());
        assert!(generate_random(&GeneratorConfig::new(3, 1.5, 1)).is_err());
        assert!(generate_random(&GeneratorConfig::new(3, f64::NAN, 1)).is_err());
    }

    #[test]
    fn random_dags_are_acyclic() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            assert!(random_dag_with(&mut rng, 7, 0.5).is_acyclic());
        }
    }
}
