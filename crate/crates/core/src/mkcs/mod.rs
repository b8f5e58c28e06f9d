//! Maximum k-colorable subgraph on chordal graphs.
//!
//! Pick a maximum-weight vertex set whose induced subgraph is k-colorable.
//! On a chordal graph with elimination order v_1..v_n, a set S works exactly
//! when every selected vertex has at most k−1 selected earlier neighbors, so
//! the problem admits a clean LP relaxation (one clique constraint per
//! vertex), an exact dynamic program over the clique tree for modest k, and a
//! rounding scheme that loses only a 2·k^{−1/3} factor. [`mkcs_ptas`] picks
//! among them to guarantee a (1−ε) factor.

mod dp;
mod rounding;

pub use dp::{exact_mkcs_dp, exact_mkcs_dp_with_budget, DpBudget, DpRefusal};
pub use rounding::{
    round_mkcs, round_mkcs_derandomized, smallest_prime_at_least, PairwiseSpace,
};

use crate::chordal::{self, clique_number, recognize_chordal, NotChordal, PerfectEliminationOrder};
use crate::cliquetree::build_clique_tree;
use crate::graph::WeightedGraph;
use crate::lp::{LinearProgram, Relation, Sense};

/// Optimal solution of the fractional relaxation: maximize Σ w_v·x_v subject
/// to x_v + x(N^left(v)) ≤ k and x ∈ [0,1]^V.
#[derive(Debug, Clone)]
pub struct KColorLpSolution {
    k: usize,
    x: Vec<f64>,
    objective: f64,
}

impl KColorLpSolution {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn objective(&self) -> f64 {
        self.objective
    }

    /// Checks the box and left-clique constraints within `tol`.
    pub fn validate(
        &self,
        g: &WeightedGraph,
        peo: &PerfectEliminationOrder,
        tol: f64,
    ) -> Result<(), String> {
        if self.x.len() != g.vertex_count() {
            return Err("value vector length mismatch".into());
        }
        for (v, &xv) in self.x.iter().enumerate() {
            if !(-tol..=1.0 + tol).contains(&xv) {
                return Err(format!("x[{v}] = {xv} outside [0,1]"));
            }
        }
        for v in 0..g.vertex_count() {
            let load: f64 = self.x[v]
                + peo
                    .left_neighbors(g, v)
                    .iter()
                    .map(|&u| self.x[u])
                    .sum::<f64>();
            if load > self.k as f64 + tol {
                return Err(format!("left-clique load at {v} is {load} > k"));
            }
        }
        let obj = g
            .weights()
            .iter()
            .zip(&self.x)
            .map(|(w, x)| w * x)
            .sum::<f64>();
        if (obj - self.objective).abs() > tol * (1.0 + obj.abs()) {
            return Err("stored objective disagrees with Σ w·x".into());
        }
        Ok(())
    }
}

/// A k-colorable induced subgraph: the chosen vertices, their total weight,
/// and a proper coloring certifying k-colorability. Construction validates
/// the certificate, so holding a value of this type is proof of feasibility.
#[derive(Debug, Clone, PartialEq)]
pub struct MkcsResult {
    k: usize,
    selected: Vec<usize>,
    colors: Vec<usize>,
    weight: f64,
}

impl MkcsResult {
    /// `selected` must be strictly increasing; `colors` runs parallel to it,
    /// each in `1..=k`, and must properly color the induced subgraph.
    pub fn new(g: &WeightedGraph, k: usize, selected: Vec<usize>, colors: Vec<usize>) -> Self {
        assert!(k >= 1, "color budget must be positive");
        assert_eq!(selected.len(), colors.len(), "witness length mismatch");
        assert!(
            selected.windows(2).all(|w| w[0] < w[1]),
            "selected vertices must be strictly increasing"
        );
        assert!(
            selected.iter().all(|&v| v < g.vertex_count()),
            "selected vertex out of range"
        );
        assert!(
            colors.iter().all(|&c| (1..=k).contains(&c)),
            "witness color outside 1..=k"
        );
        for (i, &u) in selected.iter().enumerate() {
            for (j, &v) in selected.iter().enumerate().skip(i + 1) {
                if g.has_edge(u, v) {
                    assert_ne!(
                        colors[i], colors[j],
                        "witness colors vertices {u} and {v} alike across an edge"
                    );
                }
            }
        }
        let weight = selected.iter().map(|&v| g.weight(v)).sum();
        MkcsResult {
            k,
            selected,
            colors,
            weight,
        }
    }

    pub fn empty(k: usize) -> Self {
        assert!(k >= 1);
        MkcsResult {
            k,
            selected: Vec::new(),
            colors: Vec::new(),
            weight: 0.0,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Chosen vertices in increasing order.
    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    /// Witness colors, parallel to [`selected`](Self::selected).
    pub fn witness_colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }

    pub fn contains(&self, v: usize) -> bool {
        self.selected.binary_search(&v).is_ok()
    }
}

/// Builds the fractional relaxation: maximize total selected weight subject
/// to one closed-left-neighborhood budget row and one box row per vertex.
/// Exposed so callers can dump the program for inspection.
pub fn kcolor_program(g: &WeightedGraph, peo: &PerfectEliminationOrder, k: usize) -> LinearProgram {
    assert!(k >= 1, "color budget must be positive");
    let n = g.vertex_count();
    let mut lp = LinearProgram::new(Sense::Maximize);
    for v in 0..n {
        lp.add_var(g.weight(v));
    }
    for v in 0..n {
        let mut entries = vec![(v, 1.0)];
        for &u in &peo.left_neighbors(g, v) {
            entries.push((u, 1.0));
        }
        lp.add_row(Relation::Le, k as f64, &entries);
        lp.add_row(Relation::Le, 1.0, &[(v, 1.0)]);
    }
    lp
}

/// Solves the fractional relaxation to optimality. The objective upper-bounds
/// the weight of every k-colorable induced subgraph: the left neighborhoods
/// are cliques, and a clique meets any k-colorable set in at most k vertices.
pub fn solve_kcolor_lp(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
    k: usize,
) -> KColorLpSolution {
    let lp = kcolor_program(g, peo, k);
    let sol = lp
        .solve()
        .expect("the relaxation is feasible at 0 and bounded by the box rows");
    let x: Vec<f64> = sol.primal.iter().map(|&v| v.clamp(0.0, 1.0)).collect();
    let objective = g.weights().iter().zip(&x).map(|(w, x)| w * x).sum();
    let out = KColorLpSolution { k, x, objective };
    debug_assert!(out.validate(g, peo, 1e-6).is_ok());
    out
}

/// Greedily colors `selected` (strictly increasing) along the elimination
/// order; sound whenever every selected vertex has at most k−1 selected
/// earlier neighbors.
pub(crate) fn greedy_witness(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
    selected: &[usize],
) -> Vec<usize> {
    let mut color_of = vec![0usize; g.vertex_count()];
    for &v in peo.order() {
        if selected.binary_search(&v).is_err() {
            continue;
        }
        let mut used: Vec<usize> = peo
            .left_neighbors(g, v)
            .iter()
            .filter(|&&u| color_of[u] != 0)
            .map(|&u| color_of[u])
            .collect();
        used.sort_unstable();
        used.dedup();
        let mut c = 1;
        for u in used {
            if u == c {
                c += 1;
            } else if u > c {
                break;
            }
        }
        color_of[v] = c;
    }
    selected.iter().map(|&v| color_of[v]).collect()
}

/// (1−ε)-approximation dispatcher. Wide budgets (k at least the clique
/// number) take everything; small k runs the exact clique-tree dynamic
/// program; large k rounds the LP relaxation, where the 2·k^{−1/3} loss is
/// already below ε.
pub fn mkcs_ptas(g: &WeightedGraph, k: usize, eps: f64) -> Result<MkcsResult, NotChordal> {
    assert!(k >= 1, "color budget must be positive");
    assert!(eps > 0.0 && eps <= 1.0, "epsilon must lie in (0, 1]");
    let peo = recognize_chordal(g)?;
    let omega = clique_number(g, &peo);
    if k >= omega {
        let selected: Vec<usize> = (0..g.vertex_count()).collect();
        let colors = greedy_witness(g, &peo, &selected);
        return Ok(MkcsResult::new(g, k, selected, colors));
    }
    if (k as f64) <= 8.0 / (eps * eps * eps) {
        let rep = build_clique_tree(g, &peo);
        let budget = DpBudget::default();
        if let Ok(result) = exact_mkcs_dp_with_budget(&rep, k, g.weights(), &budget) {
            return Ok(result);
        }
        // The exact program is too large for the configured budget; fall
        // through to rounding, whose factor may be weaker than 1−ε at this k.
    }
    let lp = solve_kcolor_lp(g, &peo, k);
    Ok(round_mkcs_derandomized(g, &peo, &lp, k))
}

/// Maximum-coverage baseline: k rounds of maximum-weight independent sets
/// over the still-uncovered vertices, each round becoming one color class.
/// Standard coverage analysis gives weight ≥ (1 − 1/e)·OPT.
pub fn greedy_max_coverage_mkcs(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
    k: usize,
) -> MkcsResult {
    assert!(k >= 1, "color budget must be positive");
    let n = g.vertex_count();
    let mut color_of = vec![0usize; n];
    for round in 1..=k {
        let uncovered: Vec<usize> = (0..n).filter(|&v| color_of[v] == 0).collect();
        if uncovered.is_empty() {
            break;
        }
        let (sub, map) = g.induced_subgraph(&uncovered);
        let sub_peo = PerfectEliminationOrder::new(&sub, peo.restrict(&uncovered))
            .expect("restriction of an elimination order stays one");
        let class = chordal::max_weight_independent_set(&sub, &sub_peo);
        for local in class {
            color_of[map[local]] = round;
        }
    }
    let selected: Vec<usize> = (0..n).filter(|&v| color_of[v] != 0).collect();
    let colors: Vec<usize> = selected.iter().map(|&v| color_of[v]).collect();
    MkcsResult::new(g, k, selected, colors)
}
