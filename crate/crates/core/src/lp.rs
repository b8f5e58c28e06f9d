//! Self-contained linear-programming solver with dual extraction and column
//! generation.
//!
//! The solver is a two-phase primal simplex over a dense tableau. It is built
//! for the moderately sized, numerically tame programs that arise in this
//! crate (clique-capacity relaxations and coloring configuration programs),
//! favoring robustness over speed: reduced costs are recomputed from the
//! tableau every iteration, the pivot rule falls back to Bland's rule when
//! the objective stalls, and the reported solution is refactorized from the
//! original constraint data rather than read off the accumulated tableau.
//!
//! Variables are nonnegative; upper bounds are expressed as ordinary rows by
//! the caller. Duals follow the Lagrangian convention spelled out on
//! [`LpSolution::duals`].

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Error)]
pub enum LpError {
    #[error("program is infeasible (phase-1 residual {residual:.3e})")]
    Infeasible { residual: f64 },
    #[error("program is unbounded")]
    Unbounded,
    #[error("simplex iteration limit reached")]
    IterationLimit,
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("bad input: {0}")]
    BadInput(String),
}

/// Optimal primal/dual pair returned by [`LinearProgram::solve`].
#[derive(Debug, Clone)]
pub struct LpSolution {
    /// Objective value in the program's own sense.
    pub objective: f64,
    /// One value per variable, in creation order; always nonnegative up to
    /// roundoff.
    pub primal: Vec<f64>,
    /// One multiplier per row, in creation order.
    ///
    /// Sign convention: for a minimization program, `Ge` rows have
    /// nonnegative duals, `Le` rows nonpositive, `Eq` rows free, and reduced
    /// costs `c_j - yᵀA_j` are nonnegative. For a maximization program all
    /// signs flip (`Le` nonnegative, reduced costs nonpositive). In both
    /// senses strong duality holds: `objective = Σ_i rhs_i · duals_i`.
    pub duals: Vec<f64>,
}

#[derive(Debug, Clone)]
struct Row {
    relation: Relation,
    rhs: f64,
    entries: Vec<(usize, f64)>,
}

/// A linear program under construction. Rows and variables may be added in
/// any order; [`add_column`](LinearProgram::add_column) inserts a variable
/// with coefficients in existing rows, which is what column generation needs.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    sense: Sense,
    objective: Vec<f64>,
    rows: Vec<Row>,
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        LinearProgram {
            sense,
            objective: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// Adds a nonnegative variable with the given objective coefficient and
    /// returns its index.
    pub fn add_var(&mut self, objective: f64) -> usize {
        self.objective.push(objective);
        self.objective.len() - 1
    }

    /// Adds a constraint row over existing variables and returns its index.
    pub fn add_row(&mut self, relation: Relation, rhs: f64, entries: &[(usize, f64)]) -> usize {
        for &(v, _) in entries {
            assert!(v < self.objective.len(), "row references unknown variable {v}");
        }
        self.rows.push(Row {
            relation,
            rhs,
            entries: entries.to_vec(),
        });
        self.rows.len() - 1
    }

    /// Adds a variable together with its coefficients in existing rows.
    pub fn add_column(&mut self, objective: f64, entries: &[(usize, f64)]) -> usize {
        let var = self.add_var(objective);
        for &(r, coeff) in entries {
            assert!(r < self.rows.len(), "column references unknown row {r}");
            self.rows[r].entries.push((var, coeff));
        }
        var
    }

    pub fn objective_of(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Solves the program to optimality.
    pub fn solve(&self) -> Result<LpSolution, LpError> {
        Simplex::new(self)?.run()
    }

    /// Serializes the program in CPLEX LP text format (for diagnostics).
    pub fn to_lp_format(&self) -> String {
        let mut out = String::new();
        out.push_str(match self.sense {
            Sense::Minimize => "Minimize\n obj:",
            Sense::Maximize => "Maximize\n obj:",
        });
        let mut first = true;
        for (j, &c) in self.objective.iter().enumerate() {
            if c != 0.0 {
                push_term(&mut out, c, j, first);
                first = false;
            }
        }
        if first {
            out.push_str(" 0 x0");
        }
        out.push_str("\nSubject To\n");
        for (i, row) in self.rows.iter().enumerate() {
            out.push_str(&format!(" r{i}:"));
            let mut first = true;
            for &(v, coeff) in &row.entries {
                if coeff != 0.0 {
                    push_term(&mut out, coeff, v, first);
                    first = false;
                }
            }
            if first {
                out.push_str(" 0 x0");
            }
            let rel = match row.relation {
                Relation::Le => "<=",
                Relation::Ge => ">=",
                Relation::Eq => "=",
            };
            out.push_str(&format!(" {} {}\n", rel, row.rhs));
        }
        out.push_str("End\n");
        out
    }

    /// Checks that `sol` is an optimal primal/dual pair for this program:
    /// primal feasibility, dual sign conditions, reduced-cost feasibility,
    /// and a vanishing duality gap, all within `tol` (scaled by magnitudes).
    pub fn verify_optimality(&self, sol: &LpSolution, tol: f64) -> Result<(), String> {
        if sol.primal.len() != self.num_vars() || sol.duals.len() != self.num_rows() {
            return Err("solution shape mismatch".into());
        }
        for (j, &x) in sol.primal.iter().enumerate() {
            if x < -tol {
                return Err(format!("variable {j} is negative: {x}"));
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            let lhs: f64 = row.entries.iter().map(|&(v, c)| c * sol.primal[v]).sum();
            let scale = 1.0 + row.rhs.abs() + lhs.abs();
            let slack = lhs - row.rhs;
            let bad = match row.relation {
                Relation::Le => slack > tol * scale,
                Relation::Ge => slack < -tol * scale,
                Relation::Eq => slack.abs() > tol * scale,
            };
            if bad {
                return Err(format!("row {i} violated by {slack:.3e}"));
            }
            let y = sol.duals[i];
            // Dual sign in the minimization convention; flip for Max.
            let y_min = match self.sense {
                Sense::Minimize => y,
                Sense::Maximize => -y,
            };
            let sign_bad = match row.relation {
                Relation::Le => y_min > tol * (1.0 + y.abs()),
                Relation::Ge => y_min < -tol * (1.0 + y.abs()),
                Relation::Eq => false,
            };
            if sign_bad {
                return Err(format!("row {i} dual {y} has the wrong sign"));
            }
        }
        // Reduced costs per variable.
        let mut yta = vec![0.0; self.num_vars()];
        for (i, row) in self.rows.iter().enumerate() {
            for &(v, c) in &row.entries {
                yta[v] += sol.duals[i] * c;
            }
        }
        for j in 0..self.num_vars() {
            let rc = self.objective[j] - yta[j];
            let scale = 1.0 + self.objective[j].abs() + yta[j].abs();
            let bad = match self.sense {
                Sense::Minimize => rc < -tol * scale,
                Sense::Maximize => rc > tol * scale,
            };
            if bad {
                return Err(format!("variable {j} has infeasible reduced cost {rc:.3e}"));
            }
        }
        let dual_obj: f64 = self
            .rows
            .iter()
            .zip(&sol.duals)
            .map(|(row, y)| row.rhs * y)
            .sum();
        let gap = sol.objective - dual_obj;
        if gap.abs() > tol * (1.0 + sol.objective.abs()) {
            return Err(format!("duality gap {gap:.3e}"));
        }
        let direct = self.objective_of(&sol.primal);
        if (direct - sol.objective).abs() > tol * (1.0 + direct.abs()) {
            return Err(format!(
                "reported objective {} differs from cᵀx {}",
                sol.objective, direct
            ));
        }
        Ok(())
    }
}

fn push_term(out: &mut String, coeff: f64, var: usize, first: bool) {
    if coeff < 0.0 {
        out.push_str(&format!(" - {} x{var}", fmt_coeff(-coeff)));
    } else if first {
        out.push_str(&format!(" {} x{var}", fmt_coeff(coeff)));
    } else {
        out.push_str(&format!(" + {} x{var}", fmt_coeff(coeff)));
    }
}

fn fmt_coeff(c: f64) -> String {
    if c == c.trunc() && c.abs() < 1e15 {
        format!("{}", c as i64)
    } else {
        format!("{c}")
    }
}

/// A column proposed by a pricing oracle: objective coefficient plus sparse
/// coefficients in existing rows.
#[derive(Debug, Clone)]
pub struct ProposedColumn {
    pub objective: f64,
    pub entries: Vec<(usize, f64)>,
}

/// Prices candidate columns against the current restricted master solution.
pub trait PricingOracle {
    /// Returns columns to add; an empty vector terminates generation. The
    /// oracle sees the full solution (primal and duals) of the current
    /// restricted program and is responsible for not proposing duplicates.
    fn price(&mut self, solution: &LpSolution) -> Vec<ProposedColumn>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CgStats {
    /// Number of restricted-master solves.
    pub rounds: usize,
    pub columns_added: usize,
}

/// Alternates restricted-master solves with oracle pricing until the oracle
/// has nothing to add or `max_added` columns have been admitted. Returns the
/// final master solution; if generation stopped because the column budget ran
/// out, that solution is still optimal for the restricted program (and the
/// caller decides what that is worth).
pub fn solve_with_column_generation(
    lp: &mut LinearProgram,
    oracle: &mut dyn PricingOracle,
    max_added: usize,
) -> Result<(LpSolution, CgStats), LpError> {
    let mut stats = CgStats {
        rounds: 0,
        columns_added: 0,
    };
    loop {
        let sol = lp.solve()?;
        stats.rounds += 1;
        if stats.columns_added >= max_added {
            return Ok((sol, stats));
        }
        let mut proposed = oracle.price(&sol);
        if proposed.is_empty() {
            return Ok((sol, stats));
        }
        proposed.truncate(max_added - stats.columns_added);
        for col in proposed {
            lp.add_column(col.objective, &col.entries);
            stats.columns_added += 1;
        }
    }
}

const EPS_PIVOT: f64 = 1e-9;
const EPS_RC: f64 = 1e-9;
const PHASE1_TOL: f64 = 1e-7;
const STALL_WINDOW: usize = 64;

/// Dense tableau state shared by both simplex phases.
struct Simplex {
    sense: Sense,
    nvars: usize,
    /// Constraint data after normalizing every rhs to be nonnegative.
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    rel: Vec<Relation>,
    flipped: Vec<bool>,
    /// Minimization objective over the structural variables.
    cmin: Vec<f64>,
    /// Tableau: one row per surviving constraint, columns are structural
    /// variables, then slack/surplus, then artificial, then the rhs.
    tab: Vec<Vec<f64>>,
    basis: Vec<usize>,
    /// Original row index of each tableau row (vacuous rows get dropped).
    kept: Vec<usize>,
    slack_col: Vec<Option<usize>>,
    art_start: usize,
    ncols: usize,
}

impl Simplex {
    fn new(lp: &LinearProgram) -> Result<Self, LpError> {
        let nvars = lp.num_vars();
        let nrows = lp.num_rows();
        let mut a = vec![vec![0.0; nvars]; nrows];
        let mut b = vec![0.0; nrows];
        let mut rel = vec![Relation::Eq; nrows];
        let mut flipped = vec![false; nrows];
        for (i, row) in lp.rows.iter().enumerate() {
            for &(v, c) in &row.entries {
                if !c.is_finite() {
                    return Err(LpError::BadInput(format!("row {i} has coefficient {c}")));
                }
                a[i][v] += c;
            }
            if !row.rhs.is_finite() {
                return Err(LpError::BadInput(format!("row {i} has rhs {}", row.rhs)));
            }
            b[i] = row.rhs;
            rel[i] = row.relation;
            if b[i] < 0.0 {
                flipped[i] = true;
                b[i] = -b[i];
                for x in &mut a[i] {
                    *x = -*x;
                }
                rel[i] = match rel[i] {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
            }
        }
        let cmin: Vec<f64> = match lp.sense {
            Sense::Minimize => lp.objective.clone(),
            Sense::Maximize => lp.objective.iter().map(|c| -c).collect(),
        };
        if cmin.iter().any(|c| !c.is_finite()) {
            return Err(LpError::BadInput("objective has a non-finite coefficient".into()));
        }

        // Column layout: structural, slack/surplus, artificial, rhs.
        let mut slack_col = vec![None; nrows];
        let mut next = nvars;
        for i in 0..nrows {
            if rel[i] != Relation::Eq {
                slack_col[i] = Some(next);
                next += 1;
            }
        }
        let art_start = next;
        let mut art_col = vec![None; nrows];
        for i in 0..nrows {
            if rel[i] != Relation::Le {
                art_col[i] = Some(next);
                next += 1;
            }
        }
        let ncols = next;

        let mut tab = Vec::with_capacity(nrows);
        let mut basis = Vec::with_capacity(nrows);
        for i in 0..nrows {
            let mut row = vec![0.0; ncols + 1];
            row[..nvars].copy_from_slice(&a[i]);
            if let Some(s) = slack_col[i] {
                row[s] = match rel[i] {
                    Relation::Le => 1.0,
                    Relation::Ge => -1.0,
                    Relation::Eq => unreachable!(),
                };
            }
            if let Some(ar) = art_col[i] {
                row[ar] = 1.0;
            }
            row[ncols] = b[i];
            basis.push(match rel[i] {
                Relation::Le => slack_col[i].unwrap(),
                _ => art_col[i].unwrap(),
            });
            tab.push(row);
        }

        Ok(Simplex {
            sense: lp.sense,
            nvars,
            a,
            b,
            rel,
            flipped,
            cmin,
            tab,
            basis,
            kept: (0..nrows).collect(),
            slack_col,
            art_start,
            ncols,
        })
    }

    fn run(&mut self) -> Result<LpSolution, LpError> {
        if !self.tab.is_empty() {
            // Phase 1: minimize the sum of artificials.
            let mut c1 = vec![0.0; self.ncols];
            for c in c1.iter_mut().skip(self.art_start) {
                *c = 1.0;
            }
            let limit = 50_000 + 200 * (self.tab.len() + self.ncols);
            match self.pivot_until_optimal(&c1, false, limit)? {
                PhaseEnd::Optimal => {}
                PhaseEnd::Unbounded => {
                    return Err(LpError::Numerical("phase 1 unbounded".into()))
                }
            }
            let residual: f64 = self
                .basis
                .iter()
                .zip(&self.tab)
                .filter(|(&bv, _)| bv >= self.art_start)
                .map(|(_, row)| row[self.ncols])
                .sum();
            if residual > PHASE1_TOL {
                return Err(LpError::Infeasible { residual });
            }
            self.evict_artificials();
        }

        if !self.tab.is_empty() {
            let mut c2 = vec![0.0; self.ncols];
            c2[..self.nvars].copy_from_slice(&self.cmin);
            let limit = 50_000 + 200 * (self.tab.len() + self.ncols);
            match self.pivot_until_optimal(&c2, true, limit)? {
                PhaseEnd::Optimal => {}
                PhaseEnd::Unbounded => return Err(LpError::Unbounded),
            }
        } else {
            // Every row was vacuous (or there were none): x = 0 is the only
            // basic point; any negative-cost variable is unbounded.
            if self.cmin.iter().any(|&c| c < -EPS_RC) {
                return Err(LpError::Unbounded);
            }
        }

        self.extract()
    }

    /// Reduced costs for cost vector `c` at the current basis.
    fn reduced_costs(&self, c: &[f64]) -> Vec<f64> {
        let cb: Vec<f64> = self.basis.iter().map(|&j| c[j]).collect();
        let mut r = c.to_vec();
        for (i, row) in self.tab.iter().enumerate() {
            if cb[i] != 0.0 {
                for (j, rj) in r.iter_mut().enumerate() {
                    *rj -= cb[i] * row[j];
                }
            }
        }
        r
    }

    fn objective_at_basis(&self, c: &[f64]) -> f64 {
        self.basis
            .iter()
            .zip(&self.tab)
            .map(|(&j, row)| c[j] * row[self.ncols])
            .sum()
    }

    fn pivot_until_optimal(
        &mut self,
        c: &[f64],
        bar_artificials: bool,
        limit: usize,
    ) -> Result<PhaseEnd, LpError> {
        let mut bland = false;
        let mut stall = 0usize;
        let mut last_obj = f64::INFINITY;
        for _ in 0..limit {
            let r = self.reduced_costs(c);
            let col_limit = if bar_artificials { self.art_start } else { self.ncols };
            let entering = if bland {
                (0..col_limit).find(|&j| r[j] < -EPS_RC)
            } else {
                let mut best: Option<usize> = None;
                for j in 0..col_limit {
                    if r[j] < -EPS_RC && best.map_or(true, |bj| r[j] < r[bj]) {
                        best = Some(j);
                    }
                }
                best
            };
            let Some(col) = entering else {
                return Ok(PhaseEnd::Optimal);
            };

            let mut leave: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for (i, row) in self.tab.iter().enumerate() {
                if row[col] > EPS_PIVOT {
                    let ratio = row[self.ncols] / row[col];
                    let better = match leave {
                        None => true,
                        Some(li) => {
                            ratio < best_ratio - 1e-12
                                || (ratio < best_ratio + 1e-12
                                    && if bland {
                                        self.basis[i] < self.basis[li]
                                    } else {
                                        i < li
                                    })
                        }
                    };
                    if better {
                        leave = Some(i);
                        best_ratio = ratio;
                    }
                }
            }
            let Some(rix) = leave else {
                return Ok(PhaseEnd::Unbounded);
            };
            self.pivot(rix, col);

            let obj = self.objective_at_basis(c);
            if obj < last_obj - 1e-12 * (1.0 + last_obj.abs()) {
                stall = 0;
            } else {
                stall += 1;
                if stall >= STALL_WINDOW {
                    bland = true;
                }
            }
            last_obj = obj;
        }
        Err(LpError::IterationLimit)
    }

    fn pivot(&mut self, rix: usize, col: usize) {
        let piv = self.tab[rix][col];
        let row: Vec<f64> = self.tab[rix].iter().map(|x| x / piv).collect();
        self.tab[rix] = row;
        for i in 0..self.tab.len() {
            if i != rix {
                let factor = self.tab[i][col];
                if factor != 0.0 {
                    for j in 0..=self.ncols {
                        self.tab[i][j] -= factor * self.tab[rix][j];
                    }
                    self.tab[i][col] = 0.0;
                }
            }
        }
        self.basis[rix] = col;
    }

    /// After phase 1, pivots artificials out of the basis; rows where that is
    /// impossible are vacuous (all-zero over real columns) and get dropped.
    fn evict_artificials(&mut self) {
        let mut i = 0;
        while i < self.tab.len() {
            if self.basis[i] >= self.art_start {
                let col = (0..self.art_start).find(|&j| self.tab[i][j].abs() > EPS_PIVOT);
                match col {
                    Some(j) => {
                        self.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        self.tab.remove(i);
                        self.basis.remove(i);
                        self.kept.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
    }

    /// Builds the final solution by refactorizing the optimal basis from the
    /// original constraint data; falls back to tableau readout if the
    /// refactorization is unusable.
    fn extract(&self) -> Result<LpSolution, LpError> {
        if let Some(sol) = self.extract_refactorized() {
            return Ok(sol);
        }
        self.extract_from_tableau()
            .ok_or_else(|| LpError::Numerical("could not extract a consistent solution".into()))
    }

    /// Column of the standard-form matrix for tableau column `j`, restricted
    /// to the kept rows.
    fn standard_column(&self, j: usize) -> Vec<f64> {
        self.kept
            .iter()
            .map(|&orig| {
                if j < self.nvars {
                    self.a[orig][j]
                } else if self.slack_col[orig] == Some(j) {
                    match self.rel[orig] {
                        Relation::Le => 1.0,
                        Relation::Ge => -1.0,
                        Relation::Eq => 0.0,
                    }
                } else {
                    0.0
                }
            })
            .collect()
    }

    fn extract_refactorized(&self) -> Option<LpSolution> {
        let m = self.tab.len();
        if m == 0 {
            return Some(self.assemble(vec![0.0; self.nvars], Vec::new()));
        }
        if self.basis.iter().any(|&j| j >= self.art_start) {
            return None;
        }
        // Column-major basis matrix: bmat[k] is the column of basis[k].
        let bmat: Vec<Vec<f64>> = self
            .basis
            .iter()
            .map(|&j| self.standard_column(j))
            .collect();
        let rhs: Vec<f64> = self.kept.iter().map(|&orig| self.b[orig]).collect();
        let mut bt = vec![vec![0.0; m]; m];
        for (k, col) in bmat.iter().enumerate() {
            for r in 0..m {
                bt[r][k] = col[r];
            }
        }
        let xb = solve_dense(bt.clone(), rhs)?;
        let cb: Vec<f64> = self
            .basis
            .iter()
            .map(|&j| if j < self.nvars { self.cmin[j] } else { 0.0 })
            .collect();
        // Bᵀ y = c_B.
        let mut btt = vec![vec![0.0; m]; m];
        for r in 0..m {
            for k in 0..m {
                btt[k][r] = bt[r][k];
            }
        }
        let y = solve_dense(btt, cb)?;
        let mut x = vec![0.0; self.nvars];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.nvars {
                x[j] = xb[i];
            }
        }
        if x.iter().any(|&v| v < -1e-6) {
            return None;
        }
        for v in &mut x {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        Some(self.assemble(x, y))
    }

    fn extract_from_tableau(&self) -> Option<LpSolution> {
        let mut x = vec![0.0; self.nvars];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.nvars {
                x[j] = self.tab[i][self.ncols].max(0.0);
            }
        }
        // Every kept row has a unit column (slack or artificial) whose
        // phase-2 reduced cost is minus the row's dual.
        let mut c2 = vec![0.0; self.ncols];
        c2[..self.nvars].copy_from_slice(&self.cmin);
        let r = self.reduced_costs(&c2);
        let y: Vec<f64> = self
            .kept
            .iter()
            .map(|&orig| {
                let col = self.slack_col[orig].unwrap_or_else(|| {
                    // Eq rows carry an artificial instead of a slack.
                    (self.art_start..self.ncols)
                        .find(|&j| self.standard_art_row(j) == Some(orig))
                        .expect("every Eq row has an artificial")
                });
                let unit = if self.slack_col[orig] == Some(col) {
                    match self.rel[orig] {
                        Relation::Le => 1.0,
                        Relation::Ge => -1.0,
                        Relation::Eq => unreachable!(),
                    }
                } else {
                    1.0
                };
                -r[col] / unit
            })
            .collect();
        Some(self.assemble(x, y))
    }

    /// Original row index whose artificial occupies column `j`.
    fn standard_art_row(&self, j: usize) -> Option<usize> {
        let mut next = self.art_start;
        for (i, rel) in self.rel.iter().enumerate() {
            if *rel != Relation::Le {
                if next == j {
                    return Some(i);
                }
                next += 1;
            }
        }
        None
    }

    /// Maps standard-form primal/duals back to the caller's rows and sense.
    fn assemble(&self, x: Vec<f64>, y_kept: Vec<f64>) -> LpSolution {
        let nrows = self.rel.len();
        let mut y = vec![0.0; nrows];
        for (pos, &orig) in self.kept.iter().enumerate() {
            y[orig] = y_kept[pos];
        }
        for (i, yi) in y.iter_mut().enumerate() {
            if self.flipped[i] {
                *yi = -*yi;
            }
        }
        let mut objective: f64 = self.cmin.iter().zip(&x).map(|(c, v)| c * v).sum();
        if self.sense == Sense::Maximize {
            objective = -objective;
            for yi in &mut y {
                *yi = -*yi;
            }
        }
        LpSolution {
            objective,
            primal: x,
            duals: y,
        }
    }
}

enum PhaseEnd {
    Optimal,
    Unbounded,
}

/// Solves the square system `m x = rhs` by Gaussian elimination with partial
/// pivoting; `None` if numerically singular. `m` is row-major.
fn solve_dense(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&a, &b| m[a][col].abs().partial_cmp(&m[b][col].abs()).unwrap())?;
        if m[piv][col].abs() < 1e-11 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            if f != 0.0 {
                for k in col..n {
                    m[r][k] -= f * m[col][k];
                }
                rhs[r] -= f * rhs[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for col in (0..n).rev() {
        let mut v = rhs[col];
        for k in col + 1..n {
            v -= m[col][k] * x[k];
        }
        x[col] = v / m[col][col];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assert_optimal(lp: &LinearProgram, sol: &LpSolution) {
        lp.verify_optimality(sol, 1e-6)
            .unwrap_or_else(|e| panic!("optimality check failed: {e}"));
    }

    #[test]
    fn two_variable_max_with_tight_duals() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var(3.0);
        let y = lp.add_var(2.0);
        lp.add_row(Relation::Le, 4.0, &[(x, 1.0), (y, 1.0)]);
        lp.add_row(Relation::Le, 2.0, &[(x, 1.0)]);
        let sol = lp.solve().unwrap();
        assert!((sol.objective - 10.0).abs() < 1e-9);
        assert!((sol.primal[x] - 2.0).abs() < 1e-9);
        assert!((sol.primal[y] - 2.0).abs() < 1e-9);
        assert!((sol.duals[0] - 2.0).abs() < 1e-9);
        assert!((sol.duals[1] - 1.0).abs() < 1e-9);
        assert_optimal(&lp, &sol);
    }

    #[test]
    fn min_with_equality_and_upper_bound_row() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_var(2.0);
        let y = lp.add_var(3.0);
        lp.add_row(Relation::Eq, 10.0, &[(x, 1.0), (y, 1.0)]);
        lp.add_row(Relation::Le, 6.0, &[(x, 1.0)]);
        let sol = lp.solve().unwrap();
        assert!((sol.objective - 24.0).abs() < 1e-9);
        assert!((sol.primal[x] - 6.0).abs() < 1e-9);
        assert!((sol.duals[0] - 3.0).abs() < 1e-9);
        assert!((sol.duals[1] + 1.0).abs() < 1e-9);
        assert_optimal(&lp, &sol);
    }

    #[test]
    fn covering_min_duals_are_nonnegative() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_var(1.0);
        let y = lp.add_var(2.0);
        lp.add_row(Relation::Ge, 3.0, &[(x, 1.0), (y, 1.0)]);
        lp.add_row(Relation::Ge, 1.0, &[(y, 1.0)]);
        let sol = lp.solve().unwrap();
        assert!((sol.objective - 4.0).abs() < 1e-9);
        assert!((sol.duals[0] - 1.0).abs() < 1e-9);
        assert!((sol.duals[1] - 1.0).abs() < 1e-9);
        assert_optimal(&lp, &sol);
    }

    #[test]
    fn infeasible_is_reported() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var(1.0);
        lp.add_row(Relation::Le, 1.0, &[(x, 1.0)]);
        lp.add_row(Relation::Ge, 2.0, &[(x, 1.0)]);
        assert!(matches!(lp.solve(), Err(LpError::Infeasible { .. })));
    }

    #[test]
    fn unbounded_is_reported() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var(1.0);
        let y = lp.add_var(0.0);
        lp.add_row(Relation::Ge, 1.0, &[(x, 1.0), (y, 1.0)]);
        assert!(matches!(lp.solve(), Err(LpError::Unbounded)));
    }

    #[test]
    fn negative_rhs_rows_are_normalized() {
        // x - y >= -2 with max y - x: optimum along the flipped row.
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var(-1.0);
        let y = lp.add_var(1.0);
        lp.add_row(Relation::Ge, -2.0, &[(x, 1.0), (y, -1.0)]);
        lp.add_row(Relation::Le, 5.0, &[(y, 1.0)]);
        let sol = lp.solve().unwrap();
        assert!((sol.objective - 2.0).abs() < 1e-9);
        assert_optimal(&lp, &sol);
    }

    #[test]
    fn vacuous_equality_row_gets_zero_dual() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_var(1.0);
        lp.add_row(Relation::Ge, 2.0, &[(x, 1.0)]);
        // Redundant duplicate of the same hyperplane pair.
        lp.add_row(Relation::Ge, 2.0, &[(x, 1.0)]);
        let sol = lp.solve().unwrap();
        assert!((sol.objective - 2.0).abs() < 1e-9);
        assert_optimal(&lp, &sol);
    }

    #[test]
    fn empty_program_is_trivially_optimal() {
        let lp = LinearProgram::new(Sense::Minimize);
        let sol = lp.solve().unwrap();
        assert_eq!(sol.objective, 0.0);
        assert!(sol.primal.is_empty());
    }

    #[test]
    fn add_column_extends_existing_rows() {
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var(1.0);
        let cap = lp.add_row(Relation::Le, 2.0, &[(x, 1.0)]);
        assert!((lp.solve().unwrap().objective - 2.0).abs() < 1e-9);
        lp.add_column(3.0, &[(cap, 2.0)]);
        let sol = lp.solve().unwrap();
        assert!((sol.objective - 3.0).abs() < 1e-9);
        assert_optimal(&lp, &sol);
    }

    #[test]
    fn lp_format_dump_mentions_rows_and_vars() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let x = lp.add_var(2.0);
        let y = lp.add_var(-1.5);
        lp.add_row(Relation::Ge, 1.0, &[(x, 1.0), (y, -2.0)]);
        let text = lp.to_lp_format();
        assert!(text.contains("Minimize"));
        assert!(text.contains("Subject To"));
        assert!(text.contains("r0:"));
        assert!(text.contains("x1"));
        assert!(text.contains(">= 1"));
        assert!(text.ends_with("End\n"));
    }

    struct ToyCoverOracle {
        proposed: bool,
    }

    impl PricingOracle for ToyCoverOracle {
        fn price(&mut self, sol: &LpSolution) -> Vec<ProposedColumn> {
            // Covering master: a combined set costing 1 pays off once the two
            // element duals together exceed 1.
            if !self.proposed && sol.duals[0] + sol.duals[1] > 1.0 + 1e-7 {
                self.proposed = true;
                vec![ProposedColumn {
                    objective: 1.0,
                    entries: vec![(0, 1.0), (1, 1.0)],
                }]
            } else {
                Vec::new()
            }
        }
    }

    #[test]
    fn column_generation_reaches_the_combined_column() {
        let mut lp = LinearProgram::new(Sense::Minimize);
        let a = lp.add_var(1.0);
        let b = lp.add_var(1.0);
        lp.add_row(Relation::Ge, 1.0, &[(a, 1.0)]);
        lp.add_row(Relation::Ge, 1.0, &[(b, 1.0)]);
        let mut oracle = ToyCoverOracle { proposed: false };
        let (sol, stats) = solve_with_column_generation(&mut lp, &mut oracle, 100).unwrap();
        assert!((sol.objective - 1.0).abs() < 1e-9);
        assert_eq!(stats.columns_added, 1);
        assert!(stats.rounds >= 2);
        assert_optimal(&lp, &sol);
    }

    #[test]
    fn degenerate_program_still_terminates() {
        // Many redundant rows through the same vertex.
        let mut lp = LinearProgram::new(Sense::Maximize);
        let x = lp.add_var(1.0);
        let y = lp.add_var(1.0);
        for _ in 0..6 {
            lp.add_row(Relation::Le, 2.0, &[(x, 1.0), (y, 1.0)]);
        }
        lp.add_row(Relation::Le, 1.0, &[(x, 1.0)]);
        lp.add_row(Relation::Le, 1.0, &[(y, 1.0)]);
        let sol = lp.solve().unwrap();
        assert!((sol.objective - 2.0).abs() < 1e-9);
        assert_optimal(&lp, &sol);
    }

    // Exact rational reference for small programs: enumerate basic feasible
    // points as intersections of constraint hyperplanes (including the
    // nonnegativity facets) and take the best feasible one.

    #[derive(Clone, Copy, PartialEq, Eq, Debug)]
    struct Frac {
        num: i128,
        den: i128,
    }

    impl Frac {
        fn new(num: i128, den: i128) -> Frac {
            assert!(den != 0);
            let g = gcd(num.abs(), den.abs()).max(1);
            let sign = if den < 0 { -1 } else { 1 };
            Frac {
                num: sign * num / g,
                den: sign * den / g,
            }
        }
        fn int(v: i128) -> Frac {
            Frac { num: v, den: 1 }
        }
        fn add(self, o: Frac) -> Frac {
            Frac::new(self.num * o.den + o.num * self.den, self.den * o.den)
        }
        fn sub(self, o: Frac) -> Frac {
            Frac::new(self.num * o.den - o.num * self.den, self.den * o.den)
        }
        fn mul(self, o: Frac) -> Frac {
            Frac::new(self.num * o.num, self.den * o.den)
        }
        fn div(self, o: Frac) -> Frac {
            assert!(o.num != 0);
            Frac::new(self.num * o.den, self.den * o.num)
        }
        fn is_zero(self) -> bool {
            self.num == 0
        }
        fn cmp_frac(self, o: Frac) -> std::cmp::Ordering {
            (self.num * o.den).cmp(&(o.num * self.den))
        }
        fn to_f64(self) -> f64 {
            self.num as f64 / self.den as f64
        }
    }

    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    fn solve_square_frac(mut m: Vec<Vec<Frac>>, mut b: Vec<Frac>) -> Option<Vec<Frac>> {
        let n = m.len();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            b.swap(col, piv);
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].div(m[col][col]);
                    for k in col..n {
                        m[r][k] = m[r][k].sub(f.mul(m[col][k]));
                    }
                    b[r] = b[r].sub(f.mul(b[col]));
                }
            }
        }
        Some(
            (0..n)
                .map(|i| b[i].div(m[i][i]))
                .collect(),
        )
    }

    /// Exact optimum of max cᵀx over {Ax ≤ b (rowwise relations), x ≥ 0},
    /// assuming the region is bounded and nonempty.
    fn enumerate_optimum(
        nvars: usize,
        rows: &[(Vec<i128>, i128, Relation)],
        c: &[i128],
    ) -> Option<Frac> {
        let mut hyperplanes: Vec<(Vec<i128>, i128)> =
            rows.iter().map(|(a, b, _)| (a.clone(), *b)).collect();
        for j in 0..nvars {
            let mut e = vec![0i128; nvars];
            e[j] = 1;
            hyperplanes.push((e, 0));
        }
        let total = hyperplanes.len();
        let mut best: Option<Frac> = None;
        for mask in 0u32..(1 << total) {
            if mask.count_ones() as usize != nvars {
                continue;
            }
            let chosen: Vec<usize> = (0..total).filter(|&i| mask >> i & 1 == 1).collect();
            let m: Vec<Vec<Frac>> = chosen
                .iter()
                .map(|&i| hyperplanes[i].0.iter().map(|&v| Frac::int(v)).collect())
                .collect();
            let rhs: Vec<Frac> = chosen.iter().map(|&i| Frac::int(hyperplanes[i].1)).collect();
            let Some(x) = solve_square_frac(m, rhs) else {
                continue;
            };
            let feasible = x.iter().all(|v| v.cmp_frac(Frac::int(0)).is_ge())
                && rows.iter().all(|(a, b, rel)| {
                    let lhs = a
                        .iter()
                        .zip(&x)
                        .fold(Frac::int(0), |acc, (&ai, xi)| acc.add(Frac::int(ai).mul(*xi)));
                    match rel {
                        Relation::Le => lhs.cmp_frac(Frac::int(*b)).is_le(),
                        Relation::Ge => lhs.cmp_frac(Frac::int(*b)).is_ge(),
                        Relation::Eq => lhs.cmp_frac(Frac::int(*b)).is_eq(),
                    }
                });
            if feasible {
                let obj = c
                    .iter()
                    .zip(&x)
                    .fold(Frac::int(0), |acc, (&ci, xi)| acc.add(Frac::int(ci).mul(*xi)));
                best = Some(match best {
                    None => obj,
                    Some(cur) if obj.cmp_frac(cur).is_gt() => obj,
                    Some(cur) => cur,
                });
            }
        }
        best
    }

    proptest! {
        // Random bounded max programs: x = 0 is feasible, explicit x_j ≤ 3
        // rows keep the region bounded, the rational enumerator is exact.
        #[test]
        fn simplex_matches_rational_enumeration(
            nvars in 2usize..=3,
            raw_rows in prop::collection::vec(
                (prop::collection::vec(-4i128..=4, 3), 0i128..=6),
                1..=4,
            ),
            raw_c in prop::collection::vec(-3i128..=3, 3),
        ) {
            let mut rows: Vec<(Vec<i128>, i128, Relation)> = raw_rows
                .into_iter()
                .map(|(a, b)| (a[..nvars].to_vec(), b, Relation::Le))
                .collect();
            for j in 0..nvars {
                let mut e = vec![0i128; nvars];
                e[j] = 1;
                rows.push((e, 3, Relation::Le));
            }
            let c = &raw_c[..nvars];

            let mut lp = LinearProgram::new(Sense::Maximize);
            for &cj in c {
                lp.add_var(cj as f64);
            }
            for (a, b, _) in &rows {
                let entries: Vec<(usize, f64)> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, v as f64))
                    .collect();
                lp.add_row(Relation::Le, *b as f64, &entries);
            }
            let sol = lp.solve().unwrap();
            let exact = enumerate_optimum(nvars, &rows, c).unwrap().to_f64();
            prop_assert!(
                (sol.objective - exact).abs() <= 1e-6 * (1.0 + exact.abs()),
                "simplex {} vs exact {}", sol.objective, exact
            );
            prop_assert!(lp.verify_optimality(&sol, 1e-6).is_ok());
        }

        // Random covering min programs (nonnegative data): feasible and
        // bounded below, so an optimum exists.
        #[test]
        fn covering_simplex_matches_rational_enumeration(
            nvars in 2usize..=3,
            raw_rows in prop::collection::vec(
                (prop::collection::vec(0i128..=4, 3), 0i128..=6),
                1..=4,
            ),
            raw_c in prop::collection::vec(0i128..=3, 3),
        ) {
            // Guarantee every row can be satisfied: bump a zero row's first
            // coefficient.
            let mut rows: Vec<(Vec<i128>, i128, Relation)> = raw_rows
                .into_iter()
                .map(|(mut a, b)| {
                    a.truncate(nvars);
                    if a.iter().all(|&v| v == 0) {
                        a[0] = 1;
                    }
                    (a, b, Relation::Ge)
                })
                .collect();
            // Bound the region so the vertex enumeration covers the optimum
            // even when some costs are zero.
            for j in 0..nvars {
                let mut e = vec![0i128; nvars];
                e[j] = 1;
                rows.push((e, 50, Relation::Le));
            }
            let c = &raw_c[..nvars];

            let mut lp = LinearProgram::new(Sense::Minimize);
            for &cj in c {
                lp.add_var(cj as f64);
            }
            for (a, b, rel) in &rows {
                let entries: Vec<(usize, f64)> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(j, &v)| (j, v as f64))
                    .collect();
                lp.add_row(*rel, *b as f64, &entries);
            }
            let sol = lp.solve().unwrap();
            // Enumerator maximizes, so feed it the negated objective.
            let neg_c: Vec<i128> = c.iter().map(|&v| -v).collect();
            let exact = -enumerate_optimum(nvars, &rows, &neg_c).unwrap().to_f64();
            prop_assert!(
                (sol.objective - exact).abs() <= 1e-6 * (1.0 + exact.abs()),
                "simplex {} vs exact {}", sol.objective, exact
            );
            prop_assert!(lp.verify_optimality(&sol, 1e-6).is_ok());
        }
    }
}
