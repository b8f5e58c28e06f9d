//! Assignment-plus-configuration relaxation of minimum sum coloring, solved
//! by column generation.
//!
//! Variables: x_{v,k} (vertex v finishes at level k, cost w_v·k) and z_{C,k}
//! (configuration C, a vertex set inducible with ⌊γ·k⌋ colors, active at
//! level k, cost 0). Rows, in creation order:
//!
//!   eq(v):     Σ_k x_{v,k} = 1
//!   cap(k):    Σ_C z_{C,k} ≤ 1/ρ
//!   cov(v,k):  Σ_{C ∋ v} z_{C,k} − Σ_{k' ≤ k} x_{v,k'} ≥ 0
//!
//! Pricing at level k asks for a heavy ⌊γ·k⌋-colorable set under the cov
//! duals; a ρ-approximate answer certifies near-optimality with the cap slack
//! 1/ρ absorbing the approximation.

use std::collections::BTreeSet;

use crate::chordal::{clique_number, greedy_color, PerfectEliminationOrder};
use crate::cliquetree::CliqueTreeRepresentation;
use crate::graph::WeightedGraph;
use crate::lp::{
    solve_with_column_generation, LinearProgram, LpSolution, PricingOracle, ProposedColumn,
    Relation, Sense,
};
use crate::mkcs::{
    exact_mkcs_dp_with_budget, greedy_max_coverage_mkcs, greedy_witness, round_mkcs_derandomized,
    solve_kcolor_lp, DpBudget,
};

use super::MscError;

fn eq_row(v: usize) -> usize {
    v
}

fn cap_row(n: usize, k: usize) -> usize {
    n + k - 1
}

fn cov_row(n: usize, v: usize, k: usize) -> usize {
    2 * n + v * n + k - 1
}

/// Number of colors a level-k configuration may use.
pub(crate) fn level_width(gamma: f64, k: usize) -> usize {
    (gamma * k as f64).floor() as usize
}

/// One configuration: a vertex set together with a proper coloring of its
/// induced subgraph in at most ⌊γ·k⌋ colors, attached to level k.
///
/// Ordering is lexicographic in (level, vertex set, witness), which the
/// rounding step uses to break ties deterministically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConfigColumn {
    k: usize,
    vertices: Vec<usize>,
    witness: Vec<usize>,
}

impl ConfigColumn {
    /// `vertices` must be strictly increasing; `witness` runs parallel with
    /// colors in `1..=max_colors` and must color the induced subgraph
    /// properly.
    pub fn new(
        g: &WeightedGraph,
        k: usize,
        max_colors: usize,
        vertices: Vec<usize>,
        witness: Vec<usize>,
    ) -> Self {
        assert!(k >= 1, "level must be positive");
        assert_eq!(vertices.len(), witness.len(), "witness length mismatch");
        assert!(
            vertices.windows(2).all(|w| w[0] < w[1]),
            "configuration vertices must be strictly increasing"
        );
        assert!(
            vertices.iter().all(|&v| v < g.vertex_count()),
            "configuration vertex out of range"
        );
        assert!(
            witness.iter().all(|&c| (1..=max_colors).contains(&c)),
            "witness color outside 1..={max_colors}"
        );
        let mut color_of = vec![0usize; g.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            color_of[v] = witness[i];
        }
        for &v in &vertices {
            for &u in g.neighbors(v) {
                if u > v && color_of[u] != 0 {
                    assert_ne!(
                        color_of[u], color_of[v],
                        "witness colors vertices {v} and {u} alike across an edge"
                    );
                }
            }
        }
        ConfigColumn {
            k,
            vertices,
            witness,
        }
    }

    pub fn empty(k: usize) -> Self {
        assert!(k >= 1, "level must be positive");
        ConfigColumn {
            k,
            vertices: Vec::new(),
            witness: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Covered vertices in increasing order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Witness colors, parallel to [`vertices`](Self::vertices).
    pub fn witness(&self) -> &[usize] {
        &self.witness
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Dual prices of the master rows, clamped to their admissible signs.
#[derive(Debug, Clone)]
pub struct DualPrices {
    /// One per vertex (eq rows, free sign).
    pub alpha: Vec<f64>,
    /// One per level, `beta[k-1] ≥ 0` (negated cap-row duals).
    pub beta: Vec<f64>,
    /// `theta[v][k-1] ≥ 0` (cov-row duals).
    pub theta: Vec<Vec<f64>>,
}

impl DualPrices {
    pub fn from_master(sol: &LpSolution, n: usize) -> Self {
        let alpha: Vec<f64> = (0..n).map(|v| sol.duals[eq_row(v)]).collect();
        let beta: Vec<f64> = (1..=n)
            .map(|k| (-sol.duals[cap_row(n, k)]).max(0.0))
            .collect();
        let theta: Vec<Vec<f64>> = (0..n)
            .map(|v| {
                (1..=n)
                    .map(|k| sol.duals[cov_row(n, v, k)].max(0.0))
                    .collect()
            })
            .collect();
        DualPrices { alpha, beta, theta }
    }
}

/// Optimal (up to the pricing guarantee) solution of the relaxation.
#[derive(Debug, Clone)]
pub struct ConfigLpSolution {
    n: usize,
    rho: f64,
    gamma: f64,
    /// `x[v][k-1]`, clamped to be nonnegative.
    x: Vec<Vec<f64>>,
    /// Configurations with mass above 1e−12.
    z: Vec<(ConfigColumn, f64)>,
    cost: f64,
    cg_rounds: usize,
    generated_columns: usize,
}

impl ConfigLpSolution {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Mass of vertex v at level k (1-based).
    pub fn x(&self, v: usize, k: usize) -> f64 {
        self.x[v][k - 1]
    }

    pub fn z(&self) -> &[(ConfigColumn, f64)] {
        &self.z
    }

    /// Objective Σ w_v·k·x_{v,k}.
    pub fn cost(&self) -> f64 {
        self.cost
    }

    /// Restricted-master solves performed.
    pub fn cg_rounds(&self) -> usize {
        self.cg_rounds
    }

    /// Columns admitted by pricing (seed columns not counted).
    pub fn generated_columns(&self) -> usize {
        self.generated_columns
    }

    /// Total configuration mass at level k.
    pub fn level_mass(&self, k: usize) -> f64 {
        self.z
            .iter()
            .filter(|(c, _)| c.k() == k)
            .map(|&(_, val)| val)
            .sum()
    }

    /// Checks all three row families at tolerance 1e−7 and recomputes the
    /// cost.
    pub fn validate(&self, g: &WeightedGraph) -> Result<(), String> {
        const TOL: f64 = 1e-7;
        let n = self.n;
        if g.vertex_count() != n || self.x.len() != n {
            return Err("vertex count mismatch".into());
        }
        if !(self.rho > 0.0 && self.rho <= 1.0) || !(self.gamma >= 1.0) {
            return Err("parameters outside their domain".into());
        }
        let mut cost = 0.0;
        for v in 0..n {
            if self.x[v].len() != n {
                return Err(format!("level vector of vertex {v} has wrong length"));
            }
            let mut sum = 0.0;
            for k in 1..=n {
                let xv = self.x[v][k - 1];
                if xv < 0.0 {
                    return Err(format!("x[{v}][{k}] is negative"));
                }
                sum += xv;
                cost += g.weight(v) * k as f64 * xv;
            }
            if (sum - 1.0).abs() > TOL {
                return Err(format!("levels of vertex {v} sum to {sum}, not 1"));
            }
        }
        if (cost - self.cost).abs() > TOL * (1.0 + cost.abs()) {
            return Err(format!("stored cost {} but recomputed {cost}", self.cost));
        }
        let mut mass = vec![0.0f64; n + 1];
        let mut coverage = vec![vec![0.0f64; n + 1]; n];
        for (col, val) in &self.z {
            if *val < 0.0 {
                return Err("negative configuration mass".into());
            }
            if col.k() < 1 || col.k() > n {
                return Err(format!("configuration at level {} out of range", col.k()));
            }
            mass[col.k()] += val;
            for &v in col.vertices() {
                coverage[v][col.k()] += val;
            }
        }
        for k in 1..=n {
            if mass[k] > 1.0 / self.rho + TOL {
                return Err(format!(
                    "level {k} carries mass {} above 1/ρ = {}",
                    mass[k],
                    1.0 / self.rho
                ));
            }
        }
        for v in 0..n {
            let mut cum_x = 0.0;
            for k in 1..=n {
                cum_x += self.x[v][k - 1];
                if coverage[v][k] - cum_x < -TOL {
                    return Err(format!(
                        "vertex {v} at level {k}: coverage {} below cumulative mass {cum_x}",
                        coverage[v][k]
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Per-level configuration oracle: given nonnegative vertex prices and a
/// level k, returns a heavy vertex set inducible with ⌊γ·k⌋ colors together
/// with a witness coloring. The returned weight must be at least ρ times the
/// optimum.
pub trait LevelOracle {
    /// Guaranteed approximation factor (1 means exact).
    fn rho(&self) -> f64;

    /// Width factor: configurations use at most ⌊γ·k⌋ colors.
    fn gamma(&self) -> f64;

    /// (vertices sorted increasing, parallel witness colors in 1..=⌊γ·k⌋).
    fn best_set(&mut self, prices: &[f64], k: usize) -> (Vec<usize>, Vec<usize>);
}

/// Level oracle for chordal inputs with γ = 1. Levels at or above the clique
/// number take every vertex; below it the clique-tree dynamic program is
/// exact when the state budget allows, otherwise LP rounding and greedy
/// coverage compete and the better set is returned (factor
/// max(1 − 2k^{−1/3}, 1 − 1/e)).
pub struct ChordalLevelOracle<'a> {
    g: &'a WeightedGraph,
    peo: &'a PerfectEliminationOrder,
    rep: &'a CliqueTreeRepresentation,
    budget: DpBudget,
    omega: usize,
    rho: f64,
}

impl<'a> ChordalLevelOracle<'a> {
    pub fn new(
        g: &'a WeightedGraph,
        peo: &'a PerfectEliminationOrder,
        rep: &'a CliqueTreeRepresentation,
        budget: DpBudget,
    ) -> Self {
        let omega = clique_number(g, peo);
        let n = g.vertex_count();
        let mut rho = 1.0f64;
        for k in 1..omega.min(n + 1) {
            if budget.check(rep, k).is_err() {
                let rounding = 1.0 - 2.0 * (k as f64).powf(-1.0 / 3.0);
                let coverage = 1.0 - (-1.0f64).exp();
                rho = rho.min(rounding.max(coverage));
            }
        }
        ChordalLevelOracle {
            g,
            peo,
            rep,
            budget,
            omega,
            rho,
        }
    }

    /// True when every level is answered exactly.
    pub fn is_exact(&self) -> bool {
        self.rho == 1.0
    }
}

impl LevelOracle for ChordalLevelOracle<'_> {
    fn rho(&self) -> f64 {
        self.rho
    }

    fn gamma(&self) -> f64 {
        1.0
    }

    fn best_set(&mut self, prices: &[f64], k: usize) -> (Vec<usize>, Vec<usize>) {
        assert_eq!(prices.len(), self.g.vertex_count());
        assert!(prices.iter().all(|&p| p >= 0.0), "prices must be nonnegative");
        if k >= self.omega {
            let all: Vec<usize> = (0..self.g.vertex_count()).collect();
            let witness = greedy_witness(self.g, self.peo, &all);
            return (all, witness);
        }
        if self.budget.check(self.rep, k).is_ok() {
            let result = exact_mkcs_dp_with_budget(self.rep, k, prices, &self.budget)
                .expect("budget was checked");
            return (result.selected().to_vec(), result.witness_colors().to_vec());
        }
        let priced = self
            .g
            .with_weights(prices)
            .expect("prices are nonnegative");
        let lp = solve_kcolor_lp(&priced, self.peo, k);
        let rounded = round_mkcs_derandomized(&priced, self.peo, &lp, k);
        let covered = greedy_max_coverage_mkcs(&priced, self.peo, k);
        let best = if rounded.weight() >= covered.weight() {
            rounded
        } else {
            covered
        };
        (best.selected().to_vec(), best.witness_colors().to_vec())
    }
}

struct Pricer<'a> {
    g: &'a WeightedGraph,
    n: usize,
    gamma: f64,
    oracle: &'a mut dyn LevelOracle,
    pool: BTreeSet<(usize, Vec<usize>)>,
    generated: Vec<ConfigColumn>,
}

impl PricingOracle for Pricer<'_> {
    fn price(&mut self, solution: &LpSolution) -> Vec<ProposedColumn> {
        let n = self.n;
        let prices = DualPrices::from_master(solution, n);
        let mut out = Vec::new();
        for k in 1..=n {
            let theta_k: Vec<f64> = (0..n).map(|v| prices.theta[v][k - 1]).collect();
            let (set, witness) = self.oracle.best_set(&theta_k, k);
            if set.is_empty() {
                continue;
            }
            let value: f64 = set.iter().map(|&v| theta_k[v]).sum();
            let beta = prices.beta[k - 1];
            if value <= beta + 1e-7 * (1.0 + beta) {
                continue;
            }
            if !self.pool.insert((k, set.clone())) {
                continue;
            }
            let mut entries = vec![(cap_row(n, k), 1.0)];
            entries.extend(set.iter().map(|&v| (cov_row(n, v, k), 1.0)));
            out.push(ProposedColumn {
                objective: 0.0,
                entries,
            });
            self.generated
                .push(ConfigColumn::new(self.g, k, level_width(self.gamma, k), set, witness));
        }
        out
    }
}

fn empty_solution(rho: f64, gamma: f64) -> ConfigLpSolution {
    ConfigLpSolution {
        n: 0,
        rho,
        gamma,
        x: Vec::new(),
        z: Vec::new(),
        cost: 0.0,
        cg_rounds: 0,
        generated_columns: 0,
    }
}

/// Lays out the fixed rows (eq, cap, cov) and the x variables, returning the
/// prepared program.
fn master_skeleton(g: &WeightedGraph, rho: f64) -> LinearProgram {
    let n = g.vertex_count();
    let mut lp = LinearProgram::new(Sense::Minimize);
    for v in 0..n {
        for k in 1..=n {
            lp.add_var(g.weight(v) * k as f64);
        }
    }
    let xvar = |v: usize, k: usize| v * n + k - 1;
    for v in 0..n {
        let entries: Vec<(usize, f64)> = (1..=n).map(|k| (xvar(v, k), 1.0)).collect();
        lp.add_row(Relation::Eq, 1.0, &entries);
    }
    for _k in 1..=n {
        lp.add_row(Relation::Le, 1.0 / rho, &[]);
    }
    for v in 0..n {
        for k in 1..=n {
            let entries: Vec<(usize, f64)> = (1..=k).map(|kp| (xvar(v, kp), -1.0)).collect();
            lp.add_row(Relation::Ge, 0.0, &entries);
        }
    }
    lp
}

/// Rebuilds the restricted master over the support of a solved relaxation:
/// the fixed assignment rows plus one column per kept class. Exposed so
/// callers can dump the program for inspection.
pub fn restricted_master_program(g: &WeightedGraph, sol: &ConfigLpSolution) -> LinearProgram {
    let n = g.vertex_count();
    let mut lp = master_skeleton(g, sol.rho());
    for (col, _) in sol.z() {
        let mut entries = vec![(cap_row(n, col.k()), 1.0)];
        entries.extend(col.vertices().iter().map(|&v| (cov_row(n, v, col.k()), 1.0)));
        lp.add_column(0.0, &entries);
    }
    lp
}

fn extract_solution(
    g: &WeightedGraph,
    rho: f64,
    gamma: f64,
    columns: &[(ConfigColumn, usize)],
    sol: &LpSolution,
    cg_rounds: usize,
    generated_columns: usize,
) -> Result<ConfigLpSolution, MscError> {
    let n = g.vertex_count();
    let mut x = vec![vec![0.0f64; n]; n];
    for v in 0..n {
        for k in 1..=n {
            x[v][k - 1] = sol.primal[v * n + k - 1].max(0.0);
        }
    }
    let mut z = Vec::new();
    for (col, var) in columns {
        let val = sol.primal[*var];
        if val > 1e-12 {
            z.push((col.clone(), val));
        }
    }
    let mut cost = 0.0;
    for v in 0..n {
        for k in 1..=n {
            cost += g.weight(v) * k as f64 * x[v][k - 1];
        }
    }
    let out = ConfigLpSolution {
        n,
        rho,
        gamma,
        x,
        z,
        cost,
        cg_rounds,
        generated_columns,
    };
    out.validate(g)
        .map_err(|e| MscError::Internal(format!("relaxation solution failed validation: {e}")))?;
    Ok(out)
}

/// Solves the relaxation by column generation. `rho` must not exceed the
/// oracle's guarantee and `gamma` must be at least the oracle's width factor.
///
/// Seed columns: one empty configuration per level, plus the full vertex set
/// at every level whose width ⌊γ·k⌋ reaches the clique number (level n always
/// qualifies, so the master starts feasible).
pub fn solve_config_lp(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
    oracle: &mut dyn LevelOracle,
    rho: f64,
    gamma: f64,
) -> Result<ConfigLpSolution, MscError> {
    assert!(rho > 0.0 && rho <= 1.0, "rho must lie in (0, 1]");
    assert!(gamma >= 1.0, "gamma must be at least 1");
    assert!(
        oracle.rho() >= rho - 1e-12,
        "oracle guarantee {} is weaker than the requested rho {rho}",
        oracle.rho()
    );
    assert!(
        oracle.gamma() <= gamma + 1e-12,
        "oracle width factor {} exceeds the requested gamma {gamma}",
        oracle.gamma()
    );
    let n = g.vertex_count();
    if n == 0 {
        return Ok(empty_solution(rho, gamma));
    }
    let mut lp = master_skeleton(g, rho);
    let omega = clique_number(g, peo);

    let mut columns: Vec<(ConfigColumn, usize)> = Vec::new();
    let mut pool: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for k in 1..=n {
        let var = lp.add_column(0.0, &[(cap_row(n, k), 1.0)]);
        columns.push((ConfigColumn::empty(k), var));
        pool.insert((k, Vec::new()));
    }
    let full_witness = greedy_color(g, peo).colors().to_vec();
    for k in 1..=n {
        if level_width(gamma, k) >= omega {
            let all: Vec<usize> = (0..n).collect();
            let mut entries = vec![(cap_row(n, k), 1.0)];
            entries.extend((0..n).map(|v| (cov_row(n, v, k), 1.0)));
            let var = lp.add_column(0.0, &entries);
            columns.push((
                ConfigColumn::new(g, k, level_width(gamma, k), all.clone(), full_witness.clone()),
                var,
            ));
            pool.insert((k, all));
        }
    }
    let first_generated_var = lp.num_vars();

    let mut pricer = Pricer {
        g,
        n,
        gamma,
        oracle,
        pool,
        generated: Vec::new(),
    };
    let cap = 10 * lp.num_rows() + 1000;
    let (sol, stats) =
        solve_with_column_generation(&mut lp, &mut pricer, cap).map_err(MscError::Lp)?;
    if stats.columns_added >= cap {
        return Err(MscError::ColumnCapExceeded {
            added: stats.columns_added,
        });
    }
    assert_eq!(pricer.generated.len(), stats.columns_added);
    for (i, col) in pricer.generated.into_iter().enumerate() {
        columns.push((col, first_generated_var + i));
    }
    lp.verify_optimality(&sol, 1e-6)
        .map_err(|e| MscError::Internal(format!("master optimality check failed: {e}")))?;
    extract_solution(g, rho, gamma, &columns, &sol, stats.rounds, stats.columns_added)
}

/// Solves the relaxation with every configuration enumerated up front
/// (exponential; capped at 7 vertices). Reference implementation for testing
/// the column-generation path.
pub fn solve_config_lp_enumerated(
    g: &WeightedGraph,
    rho: f64,
    gamma: f64,
) -> Result<ConfigLpSolution, MscError> {
    assert!(rho > 0.0 && rho <= 1.0, "rho must lie in (0, 1]");
    assert!(gamma >= 1.0, "gamma must be at least 1");
    let n = g.vertex_count();
    assert!(n <= 7, "full enumeration is exponential; capped at 7 vertices");
    if n == 0 {
        return Ok(empty_solution(rho, gamma));
    }
    let mut lp = master_skeleton(g, rho);
    let mut columns: Vec<(ConfigColumn, usize)> = Vec::new();
    for k in 1..=n {
        let width = level_width(gamma, k);
        let var = lp.add_column(0.0, &[(cap_row(n, k), 1.0)]);
        columns.push((ConfigColumn::empty(k), var));
        for mask in 1u32..(1 << n) {
            let vertices: Vec<usize> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            let witness = if width >= vertices.len() {
                Some((1..=vertices.len()).collect::<Vec<usize>>())
            } else {
                let (sub, _) = g.induced_subgraph(&vertices);
                crate::oracle::k_coloring(&sub, width)
            };
            let Some(witness) = witness else {
                continue;
            };
            let mut entries = vec![(cap_row(n, k), 1.0)];
            entries.extend(vertices.iter().map(|&v| (cov_row(n, v, k), 1.0)));
            let var = lp.add_column(0.0, &entries);
            columns.push((ConfigColumn::new(g, k, width, vertices, witness), var));
        }
    }
    let sol = lp.solve().map_err(MscError::Lp)?;
    lp.verify_optimality(&sol, 1e-6)
        .map_err(|e| MscError::Internal(format!("enumerated optimality check failed: {e}")))?;
    extract_solution(g, rho, gamma, &columns, &sol, 1, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::recognize_chordal;
    use crate::cliquetree::build_clique_tree;
    use crate::gen::{generate, Family, GenSpec, WeightModel};

    fn cg_cost(g: &WeightedGraph) -> f64 {
        let peo = recognize_chordal(g).unwrap();
        let rep = build_clique_tree(g, &peo);
        let mut oracle = ChordalLevelOracle::new(g, &peo, &rep, DpBudget::default());
        assert!(oracle.is_exact());
        let sol = solve_config_lp(g, &peo, &mut oracle, 1.0, 1.0).unwrap();
        sol.validate(g).unwrap();
        sol.cost()
    }

    #[test]
    fn single_edge_costs_three() {
        let g = WeightedGraph::complete(2);
        assert!((cg_cost(&g) - 3.0).abs() < 1e-6);
        let e = solve_config_lp_enumerated(&g, 1.0, 1.0).unwrap();
        assert!((e.cost() - 3.0).abs() < 1e-6);
    }

    #[test]
    fn triangle_costs_six() {
        let g = WeightedGraph::complete(3);
        assert!((cg_cost(&g) - 6.0).abs() < 1e-6);
        let e = solve_config_lp_enumerated(&g, 1.0, 1.0).unwrap();
        assert!((e.cost() - 6.0).abs() < 1e-6);
    }

    #[test]
    fn relaxation_lower_bounds_total_weight() {
        // Every vertex sits at level ≥ 1, so the cost is at least Σ w.
        let g = WeightedGraph::path(3);
        let cost = cg_cost(&g);
        assert!(cost >= 3.0 - 1e-9);
        assert!(cost <= 4.0 + 1e-6);
    }

    #[test]
    fn generation_matches_enumeration_on_random_trees() {
        for seed in 0..10 {
            for n in [3usize, 4, 5] {
                let spec = GenSpec {
                    family: Family::KTree { k: 1 },
                    n,
                    weights: WeightModel::UniformInt { max: 5 },
                    seed,
                };
                let g = generate(&spec).unwrap();
                let peo = recognize_chordal(&g).unwrap();
                let rep = build_clique_tree(&g, &peo);
                let mut oracle = ChordalLevelOracle::new(&g, &peo, &rep, DpBudget::default());
                let by_cg = solve_config_lp(&g, &peo, &mut oracle, 1.0, 1.0).unwrap();
                let by_enum = solve_config_lp_enumerated(&g, 1.0, 1.0).unwrap();
                assert!(
                    (by_cg.cost() - by_enum.cost()).abs() < 1e-6,
                    "seed {seed} n {n}: {} vs {}",
                    by_cg.cost(),
                    by_enum.cost()
                );
            }
        }
    }

    #[test]
    fn slack_capacity_lowers_no_cost_but_keeps_validity() {
        let mut g = WeightedGraph::complete(3);
        for v in 0..3 {
            g.set_weight(v, 2.0).unwrap();
        }
        let e = solve_config_lp_enumerated(&g, 0.5, 1.0).unwrap();
        e.validate(&g).unwrap();
        // Doubling the capacity can only help: cost ≤ the ρ = 1 cost.
        assert!(e.cost() <= 12.0 + 1e-6);
        for k in 1..=3 {
            assert!(e.level_mass(k) <= 2.0 + 1e-7);
        }
    }

    #[test]
    fn wider_levels_accept_more_colors() {
        // γ = 2 lets level 1 hold two colors, so a path's ends and middle fit
        // one level-1 configuration.
        let g = WeightedGraph::path(3);
        let e = solve_config_lp_enumerated(&g, 1.0, 2.0).unwrap();
        assert!((e.cost() - 3.0).abs() < 1e-6);
    }

    #[test]
    fn oracle_reports_partial_guarantee_under_tight_budget() {
        let g = WeightedGraph::complete(5);
        let peo = recognize_chordal(&g).unwrap();
        let rep = build_clique_tree(&g, &peo);
        let budget = DpBudget {
            max_k: 8,
            max_vertices: 60,
            max_states: 1,
        };
        let oracle = ChordalLevelOracle::new(&g, &peo, &rep, budget);
        assert!(!oracle.is_exact());
        let expect = 1.0 - (-1.0f64).exp();
        assert!((oracle.rho() - expect).abs() < 1e-12);
    }

    #[test]
    fn exact_oracle_takes_everything_at_wide_levels() {
        let g = WeightedGraph::path(4);
        let peo = recognize_chordal(&g).unwrap();
        let rep = build_clique_tree(&g, &peo);
        let mut oracle = ChordalLevelOracle::new(&g, &peo, &rep, DpBudget::default());
        let (set, witness) = oracle.best_set(&[1.0; 4], 2);
        assert_eq!(set, vec![0, 1, 2, 3]);
        assert!(witness.iter().all(|&c| c <= 2));
        // Level 1 must pick an independent set; the ends beat the middle.
        let (set1, _) = oracle.best_set(&[1.0, 1.0, 1.0, 1.0], 1);
        assert_eq!(set1.len(), 2);
    }
}
