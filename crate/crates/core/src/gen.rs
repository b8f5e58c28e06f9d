//! Reproducible random chordal instance generators.
//!
//! Three families, all chordal by construction: k-trees (grown clique by
//! clique), interval graphs (intersections of random segments), and
//! subtree-intersection graphs (random subtrees of a random tree). A fixed
//! seed fully determines the output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::WeightedGraph;

/// PRNG identity recorded alongside generated instances.
pub const GENERATOR_ID: &str = "chacha8";

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Start from K_{k+1}, attach each new vertex to a random k-clique.
    KTree { k: usize },
    /// Intersection graph of n random segments in [0,1]; `density` scales
    /// segment lengths.
    Interval { density: f64 },
    /// Intersection graph of random connected subtrees of a random tree;
    /// subtree sizes are uniform in 1..=max_subtree.
    SubtreeIntersection { max_subtree: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightModel {
    Unit,
    /// Integers uniform in 1..=max.
    UniformInt { max: u64 },
    /// Discrete heavy-tailed weights: w = 2^G with G geometric(1/2), capped.
    ExponentialLike { cap_exponent: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub weights: WeightModel,
    pub seed: u64,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GenError {
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
}

impl GenSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.n == 0 {
            return Err(GenError::InvalidParameter("n must be at least 1".into()));
        }
        match &self.family {
            Family::KTree { k } => {
                if *k == 0 {
                    return Err(GenError::InvalidParameter(
                        "k-tree parameter must be at least 1".into(),
                    ));
                }
            }
            Family::Interval { density } => {
                if !(density.is_finite() && *density > 0.0 && *density <= 100.0) {
                    return Err(GenError::InvalidParameter(format!(
                        "interval density {density} outside (0, 100]"
                    )));
                }
            }
            Family::SubtreeIntersection { max_subtree } => {
                if *max_subtree == 0 {
                    return Err(GenError::InvalidParameter(
                        "max subtree size must be at least 1".into(),
                    ));
                }
            }
        }
        match self.weights {
            WeightModel::UniformInt { max } if max == 0 => Err(GenError::InvalidParameter(
                "uniform weight bound must be at least 1".into(),
            )),
            WeightModel::ExponentialLike { cap_exponent } if cap_exponent > 30 => {
                Err(GenError::InvalidParameter(
                    "exponential weight cap above 2^30 is not supported".into(),
                ))
            }
            _ => Ok(()),
        }
    }
}

/// Generates the instance described by `spec`; deterministic per seed.
pub fn generate(spec: &GenSpec) -> Result<WeightedGraph, GenError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut g = match &spec.family {
        Family::KTree { k } => ktree(spec.n, *k, &mut rng),
        Family::Interval { density } => interval_graph(spec.n, *density, &mut rng).0,
        Family::SubtreeIntersection { max_subtree } => {
            subtree_graph(spec.n, *max_subtree, &mut rng)
        }
    };
    assign_weights(&mut g, spec.weights, &mut rng);
    debug_assert!(
        crate::chordal::recognize_chordal(&g).is_ok(),
        "generated graph must be chordal"
    );
    Ok(g)
}

/// Interval-family generation that also returns the segments, so tests can
/// check the graph equals their pairwise intersections.
pub fn generate_interval(spec: &GenSpec) -> Result<(WeightedGraph, Vec<(f64, f64)>), GenError> {
    spec.validate()?;
    let Family::Interval { density } = spec.family else {
        return Err(GenError::InvalidParameter(
            "generate_interval requires the interval family".into(),
        ));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (mut g, intervals) = interval_graph(spec.n, density, &mut rng);
    assign_weights(&mut g, spec.weights, &mut rng);
    Ok((g, intervals))
}

fn ktree(n: usize, k: usize, rng: &mut ChaCha8Rng) -> WeightedGraph {
    let mut g = WeightedGraph::new(n);
    let base = n.min(k + 1);
    for u in 0..base {
        for v in u + 1..base {
            g.add_edge(u, v).unwrap();
        }
    }
    if n <= k + 1 {
        return g;
    }
    // All k-cliques of the current graph; attaching v to clique Q creates the
    // k new k-cliques {v} ∪ Q∖{q}.
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let all: Vec<usize> = (0..=k).collect();
    for skip in 0..=k {
        let mut q: Vec<usize> = all.clone();
        q.remove(skip);
        cliques.push(q);
    }
    for v in k + 1..n {
        let q = cliques[rng.gen_range(0..cliques.len())].clone();
        for &u in &q {
            g.add_edge(u, v).unwrap();
        }
        for skip in 0..q.len() {
            let mut fresh = q.clone();
            fresh[skip] = v;
            fresh.sort_unstable();
            cliques.push(fresh);
        }
    }
    g
}

fn interval_graph(n: usize, density: f64, rng: &mut ChaCha8Rng) -> (WeightedGraph, Vec<(f64, f64)>) {
    let intervals: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let start: f64 = rng.gen::<f64>();
            let len: f64 = density * rng.gen::<f64>();
            (start, start + len)
        })
        .collect();
    let mut g = WeightedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let (a, b) = intervals[u];
            let (c, d) = intervals[v];
            if a <= d && c <= b {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    (g, intervals)
}

fn subtree_graph(n: usize, max_subtree: usize, rng: &mut ChaCha8Rng) -> WeightedGraph {
    // Random tree on n nodes by uniform attachment.
    let mut tree_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        tree_adj[u].push(v);
        tree_adj[v].push(u);
    }
    // One random connected subtree per vertex, grown frontier by frontier.
    let mut subtrees: Vec<Vec<usize>> = Vec::with_capacity(n);
    for _ in 0..n {
        let target = rng.gen_range(1..=max_subtree);
        let mut nodes = vec![rng.gen_range(0..n)];
        let mut frontier: Vec<usize> = tree_adj[nodes[0]].clone();
        while nodes.len() < target && !frontier.is_empty() {
            let pick = frontier.swap_remove(rng.gen_range(0..frontier.len()));
            if nodes.contains(&pick) {
                continue;
            }
            nodes.push(pick);
            for &nb in &tree_adj[pick] {
                if !nodes.contains(&nb) {
                    frontier.push(nb);
                }
            }
        }
        nodes.sort_unstable();
        subtrees.push(nodes);
    }
    let mut g = WeightedGraph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let meet = subtrees[u]
                .iter()
                .any(|t| subtrees[v].binary_search(t).is_ok());
            if meet {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn assign_weights(g: &mut WeightedGraph, model: WeightModel, rng: &mut ChaCha8Rng) {
    for v in 0..g.vertex_count() {
        let w = match model {
            WeightModel::Unit => 1.0,
            WeightModel::UniformInt { max } => rng.gen_range(1..=max) as f64,
            WeightModel::ExponentialLike { cap_exponent } => {
                let mut exp = 0u32;
                while exp < cap_exponent && rng.gen::<bool>() {
                    exp += 1;
                }
                (1u64 << exp) as f64
            }
        };
        g.set_weight(v, w).unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::{clique_number, recognize_chordal};

    fn spec(family: Family, n: usize, seed: u64) -> GenSpec {
        GenSpec {
            family,
            n,
            weights: WeightModel::Unit,
            seed,
        }
    }

    #[test]
    fn one_tree_is_a_tree() {
        let g = generate(&spec(Family::KTree { k: 1 }, 5, 3)).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(recognize_chordal(&g).is_ok());
    }

    #[test]
    fn same_seed_same_graph() {
        let s = spec(Family::KTree { k: 3 }, 10, 42);
        let a = generate(&s).unwrap();
        let b = generate(&s).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.weights(), b.weights());
    }

    #[test]
    fn different_seeds_differ_somewhere() {
        let a = generate(&spec(Family::Interval { density: 0.3 }, 12, 1)).unwrap();
        let b = generate(&spec(Family::Interval { density: 0.3 }, 12, 2)).unwrap();
        assert_ne!(a.edges(), b.edges());
    }

    #[test]
    fn ktree_clique_number_is_k_plus_one() {
        for seed in 0..5 {
            let g = generate(&spec(Family::KTree { k: 3 }, 9, seed)).unwrap();
            let peo = recognize_chordal(&g).unwrap();
            assert_eq!(clique_number(&g, &peo), 4);
        }
    }

    #[test]
    fn interval_graph_matches_its_intervals() {
        let s = GenSpec {
            family: Family::Interval { density: 0.4 },
            n: 15,
            weights: WeightModel::UniformInt { max: 9 },
            seed: 7,
        };
        let (g, iv) = generate_interval(&s).unwrap();
        for u in 0..15 {
            for v in u + 1..15 {
                let meets = iv[u].0 <= iv[v].1 && iv[v].0 <= iv[u].1;
                assert_eq!(g.has_edge(u, v), meets);
            }
        }
    }

    #[test]
    fn single_interval_is_a_single_vertex() {
        let g = generate(&spec(Family::Interval { density: 0.5 }, 1, 0)).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn all_families_produce_chordal_graphs() {
        for seed in 0..10 {
            for family in [
                Family::KTree { k: 2 },
                Family::Interval { density: 0.5 },
                Family::SubtreeIntersection { max_subtree: 4 },
            ] {
                let g = generate(&spec(family, 14, seed)).unwrap();
                assert!(recognize_chordal(&g).is_ok());
            }
        }
    }

    #[test]
    fn weight_models_stay_positive_integers() {
        let s = GenSpec {
            family: Family::KTree { k: 2 },
            n: 20,
            weights: WeightModel::ExponentialLike { cap_exponent: 6 },
            seed: 5,
        };
        let g = generate(&s).unwrap();
        for &w in g.weights() {
            assert!(w >= 1.0 && w <= 64.0 && w.fract() == 0.0);
        }
    }

    #[test]
    fn invalid_parameters_are_rejected() {
        assert!(generate(&spec(Family::KTree { k: 0 }, 5, 0)).is_err());
        assert!(generate(&spec(Family::Interval { density: 0.0 }, 5, 0)).is_err());
        assert!(generate(&spec(Family::KTree { k: 2 }, 0, 0)).is_err());
    }
}
