//! Minimum sum coloring: minimize Σ w_v · color(v) over proper colorings.
//!
//! The main pipeline solves an assignment-plus-configuration relaxation by
//! column generation (pricing each level with a maximum-weight colorable-
//! subgraph oracle) and rounds it along a geometric block schedule. With
//! exact pricing the rounding guarantee is ratio_bound(1, 1, c*) ≈ 1.7956;
//! approximate pricing with factor ρ relaxes the level capacities to 1/ρ and
//! degrades the constant smoothly. A 4-approximation by iterated
//! maximum-weight independent sets and a coverage-based block baseline are
//! provided for comparison.

mod config_lp;
mod ratio;
mod rounding;

pub use config_lp::{
    restricted_master_program, solve_config_lp, solve_config_lp_enumerated, ChordalLevelOracle,
    ConfigColumn, ConfigLpSolution, DualPrices, LevelOracle,
};
pub use ratio::{optimal_c, ratio_bound, sigma_expectation_check, SigmaCheck};
pub use rounding::{msc_round, msc_round_derandomized, GeometricSchedule};

use thiserror::Error;

use crate::chordal::{self, recognize_chordal, NotChordal, PerfectEliminationOrder};
use crate::cliquetree::build_clique_tree;
use crate::graph::{Coloring, WeightedGraph};
use crate::lp::LpError;
use crate::mkcs::DpBudget;

#[derive(Debug, Error)]
pub enum MscError {
    #[error("parameter outside its domain: {0}")]
    Domain(String),
    #[error("relaxation solution rejected: {0}")]
    MalformedSolution(String),
    #[error("linear program failed: {0}")]
    Lp(#[from] LpError),
    #[error("column generation exceeded its budget after {added} columns")]
    ColumnCapExceeded { added: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Everything the end-to-end approximation produced.
#[derive(Debug, Clone)]
pub struct MscOutcome {
    /// Proper coloring from the deterministic rounding.
    pub coloring: Coloring,
    /// Cost of the relaxation; with ρ = 1 this lower-bounds every proper
    /// coloring's objective.
    pub lp_cost: f64,
    /// ratio_bound(ρ, 1, c), the guarantee attached to the schedule.
    pub analytic_ratio: f64,
    /// Schedule growth factor (the minimizer of the ratio for this ρ).
    pub c: f64,
    /// Realized per-level pricing guarantee (1 when every level was exact).
    pub rho: f64,
    /// Restricted-master solves during column generation.
    pub iterations: usize,
    /// Columns admitted by pricing.
    pub columns_generated: usize,
}

/// End-to-end approximation for chordal graphs.
///
/// `eps` is the per-level pricing loss the caller tolerates; it must lie in
/// (0, 1). Levels whose dynamic program fits the state budget are priced
/// exactly, so on small instances the realized `rho` is 1 regardless of
/// `eps` and the objective is at most ≈1.7956 times the relaxation cost in
/// the schedule-average sense; the outcome reports the realized values.
///
/// Errors only on non-chordal input, with an induced-cycle certificate.
/// Panics if eps leaves (0, 1) or an internal solver invariant breaks.
pub fn msc_approx(g: &WeightedGraph, eps: f64) -> Result<MscOutcome, NotChordal> {
    assert!(eps > 0.0 && eps < 1.0, "epsilon must lie in (0, 1)");
    let peo = recognize_chordal(g)?;
    let n = g.vertex_count();
    if n == 0 {
        let (c, analytic_ratio) = optimal_c(1.0, 1.0).expect("fixed admissible parameters");
        return Ok(MscOutcome {
            coloring: Coloring::new(g, Vec::new()).expect("empty coloring"),
            lp_cost: 0.0,
            analytic_ratio,
            c,
            rho: 1.0,
            iterations: 0,
            columns_generated: 0,
        });
    }
    let rep = build_clique_tree(g, &peo);
    let budget = DpBudget {
        max_k: n,
        max_vertices: n.max(60),
        max_states: 2_000_000,
    };
    let mut oracle = ChordalLevelOracle::new(g, &peo, &rep, budget);
    let rho = oracle.rho();
    let (c, analytic_ratio) = optimal_c(rho, 1.0).expect("rho lies in (0, 1]");
    let sol = solve_config_lp(g, &peo, &mut oracle, rho, 1.0)
        .expect("relaxation must solve on recognized chordal input");
    let coloring = msc_round_derandomized(g, &peo, &sol, c, rho, 1.0)
        .expect("rounding must succeed on a validated relaxation solution");
    Ok(MscOutcome {
        coloring,
        lp_cost: sol.cost(),
        analytic_ratio,
        c,
        rho,
        iterations: sol.cg_rounds(),
        columns_generated: sol.generated_columns(),
    })
}

/// Iterated maximum-weight independent sets: round t extracts one over the
/// still-uncolored vertices and colors it t. The objective is at most 4
/// times the optimum.
pub fn greedy_msc_4approx(g: &WeightedGraph, peo: &PerfectEliminationOrder) -> Coloring {
    let n = g.vertex_count();
    let mut colors = vec![0usize; n];
    let mut t = 0usize;
    loop {
        let uncovered: Vec<usize> = (0..n).filter(|&v| colors[v] == 0).collect();
        if uncovered.is_empty() {
            break;
        }
        t += 1;
        let (sub, map) = g.induced_subgraph(&uncovered);
        let sub_peo = PerfectEliminationOrder::new(&sub, peo.restrict(&uncovered))
            .expect("restriction of an elimination order stays one");
        let class = chordal::max_weight_independent_set(&sub, &sub_peo);
        assert!(!class.is_empty(), "a nonempty graph has a nonempty maximal independent set");
        for local in class {
            colors[map[local]] = t;
        }
    }
    Coloring::new(g, colors).expect("independent classes never clash")
}

/// Coverage baseline: blocks of widths min(n, ⌊c^j⌋); block j colors a greedy
/// maximum-coverage selection of the uncolored rest with its own color range.
/// The final block has width n, so every vertex is colored within the block
/// budget.
pub fn coverage_concat_msc(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
    c: f64,
) -> Result<Coloring, MscError> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Coloring::new(g, Vec::new()).expect("empty coloring"));
    }
    let sched = GeometricSchedule::with_offset(c, 1.0)?;
    let mut colors = vec![0usize; n];
    let mut base = 0usize;
    for j in 0..sched.blocks(n) {
        let uncovered: Vec<usize> = (0..n).filter(|&v| colors[v] == 0).collect();
        if uncovered.is_empty() {
            break;
        }
        let width = sched.level(j, n);
        let (sub, map) = g.induced_subgraph(&uncovered);
        let sub_peo = PerfectEliminationOrder::new(&sub, peo.restrict(&uncovered))
            .expect("restriction of an elimination order stays one");
        let block = crate::mkcs::greedy_max_coverage_mkcs(&sub, &sub_peo, width);
        for (i, &local) in block.selected().iter().enumerate() {
            colors[map[local]] = base + block.witness_colors()[i];
        }
        base += width;
    }
    Coloring::new(g, colors)
        .map_err(|e| MscError::Internal(format!("coverage blocks left an improper coloring: {e}")))
}
