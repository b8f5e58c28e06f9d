//! Randomized rounding of the k-color relaxation and its derandomization.
//!
//! Sampling: keep vertex v with probability (1−f)·x_v, then sweep the
//! elimination order and drop any vertex that already has k selected earlier
//! neighbors. The sweep output is k-colorable by construction, and a
//! Chebyshev argument over the (pairwise independent) sample shows the
//! expected surviving weight is at least (1−f)·(1−1/(f²k)) times the LP
//! objective; f = k^{−1/3} balances the two losses at 1 − 2·k^{−1/3}.
//!
//! Because the argument only needs pairwise independence, the random bits can
//! be drawn from the quadratic-size family h_{a,b}(v) = (a·v + b) mod p.
//! Enumerating all p² seeds and keeping the best run is a deterministic
//! algorithm achieving the expectation bound.

use rand::Rng;

use crate::chordal::PerfectEliminationOrder;
use crate::graph::WeightedGraph;
use crate::mkcs::{greedy_witness, KColorLpSolution, MkcsResult};

/// Keeps `sample[v]` vertices that still fit the color budget: a vertex
/// survives the sweep when fewer than k of its earlier neighbors survived.
/// Survivors are exactly a set whose greedy coloring needs ≤ k colors.
fn sweep(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
    k: usize,
    sample: &[bool],
) -> Vec<usize> {
    let mut kept = vec![false; g.vertex_count()];
    let mut selected = Vec::new();
    for &v in peo.order() {
        if !sample[v] {
            continue;
        }
        let earlier = peo
            .left_neighbors(g, v)
            .iter()
            .filter(|&&u| kept[u])
            .count();
        if earlier <= k - 1 {
            kept[v] = true;
            selected.push(v);
        }
    }
    selected.sort_unstable();
    selected
}

fn result_from_sample(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
    k: usize,
    sample: &[bool],
) -> MkcsResult {
    let selected = sweep(g, peo, k, sample);
    let colors = greedy_witness(g, peo, &selected);
    MkcsResult::new(g, k, selected, colors)
}

/// One randomized rounding run with damping factor `f`.
pub fn round_mkcs<R: Rng>(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
    lp: &KColorLpSolution,
    k: usize,
    f: f64,
    rng: &mut R,
) -> MkcsResult {
    assert!((0.0..=1.0).contains(&f), "damping factor must lie in [0,1]");
    assert_eq!(lp.k(), k, "relaxation was solved for a different budget");
    debug_assert!(lp.validate(g, peo, 1e-6).is_ok());
    let sample: Vec<bool> = lp
        .x()
        .iter()
        .map(|&x| rng.gen::<f64>() < (1.0 - f) * x)
        .collect();
    result_from_sample(g, peo, k, &sample)
}

/// Pairwise-independent selection family over GF(p).
///
/// Seed (a, b) selects vertex v when (a·v + b) mod p < t_v, where the
/// threshold t_v = ⌊q_v·p⌋ quantizes the target probability q_v downward to a
/// multiple of 1/p. For v ≠ u the map (a,b) ↦ (h(v), h(u)) is a bijection on
/// [p)², so over the full seed space the joint selection counts factor
/// exactly: #{both selected} = t_v·t_u, giving exact pairwise independence.
#[derive(Debug, Clone)]
pub struct PairwiseSpace {
    p: u64,
    thresholds: Vec<u64>,
}

impl PairwiseSpace {
    /// Builds the space for the given per-vertex probabilities. `p` is the
    /// smallest prime at least max(n, ⌈1/quantization⌉), so each probability
    /// is honored with error below `quantization` (always rounding down).
    pub fn new(probabilities: &[f64], quantization: f64) -> PairwiseSpace {
        assert!(
            quantization > 0.0 && quantization <= 1.0,
            "quantization must lie in (0, 1]"
        );
        let n = probabilities.len() as u64;
        let floor = (1.0 / quantization).ceil() as u64;
        let p = smallest_prime_at_least(n.max(floor).max(2));
        let thresholds = probabilities
            .iter()
            .map(|&q| {
                assert!((0.0..=1.0 + 1e-12).contains(&q), "probability {q} out of range");
                ((q.min(1.0) * p as f64).floor() as u64).min(p)
            })
            .collect();
        PairwiseSpace { p, thresholds }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn num_seeds(&self) -> u64 {
        self.p * self.p
    }

    /// Quantized probability actually realized for vertex `v`.
    pub fn realized_probability(&self, v: usize) -> f64 {
        self.thresholds[v] as f64 / self.p as f64
    }

    pub fn thresholds(&self) -> &[u64] {
        &self.thresholds
    }

    /// Whether seed (a, b) selects vertex `v`.
    pub fn selects(&self, a: u64, b: u64, v: usize) -> bool {
        (a * v as u64 + b) % self.p < self.thresholds[v]
    }

    /// The full selection vector for one seed.
    pub fn sample(&self, a: u64, b: u64) -> Vec<bool> {
        (0..self.thresholds.len())
            .map(|v| self.selects(a, b, v))
            .collect()
    }
}

/// Deterministic rounding: enumerates every seed of the pairwise-independent
/// family with f = k^{−1/3} and returns the heaviest sweep output (ties to
/// the smallest seed). Guarantees weight ≥ (1 − 2·k^{−1/3})·(LP objective),
/// since the best seed is at least the average and the average obeys the
/// Chebyshev bound.
pub fn round_mkcs_derandomized(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
    lp: &KColorLpSolution,
    k: usize,
) -> MkcsResult {
    assert_eq!(lp.k(), k, "relaxation was solved for a different budget");
    debug_assert!(lp.validate(g, peo, 1e-6).is_ok());
    let f = (k as f64).powf(-1.0 / 3.0);
    let probabilities: Vec<f64> = lp.x().iter().map(|&x| (1.0 - f) * x).collect();
    let space = PairwiseSpace::new(&probabilities, 0.01);
    let mut best: Option<(f64, Vec<bool>)> = None;
    for a in 0..space.prime() {
        for b in 0..space.prime() {
            let sample = space.sample(a, b);
            let weight: f64 = sweep(g, peo, k, &sample)
                .iter()
                .map(|&v| g.weight(v))
                .sum();
            if best.as_ref().map_or(true, |(bw, _)| weight > *bw) {
                best = Some((weight, sample));
            }
        }
    }
    let (_, sample) = best.expect("seed space is nonempty");
    result_from_sample(g, peo, k, &sample)
}

/// Smallest prime ≥ `n` (n ≥ 0; returns 2 for n ≤ 2).
pub fn smallest_prime_at_least(n: u64) -> u64 {
    let mut cand = n.max(2);
    loop {
        if is_prime(cand) {
            return cand;
        }
        cand += 1;
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
