//! Geometric block rounding of the configuration relaxation into a proper
//! coloring.
//!
//! Levels are visited along breakpoints k_j = h·c^j (h = c^Γ). Block j picks
//! one configuration at level min(n, ⌊k_j⌋), hands its ⌊γ·k'_j⌋ witness
//! classes fresh colors, and advances the color counter by the block width
//! whether or not anything new was covered. Random mode draws the
//! configuration with probability ρ·z and permutes the classes; the
//! deterministic mode scans a fixed offset grid and picks columns greedily by
//! realized objective-to-go.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::chordal::PerfectEliminationOrder;
use crate::graph::{Coloring, WeightedGraph};

use super::config_lp::{level_width, ConfigColumn, ConfigLpSolution};
use super::MscError;

const E_SQUARED: f64 = 7.389056098930650;

/// Breakpoint schedule k_j = h·c^j with h = c^Γ, Γ ∈ [0, 1).
#[derive(Debug, Clone, Copy)]
pub struct GeometricSchedule {
    c: f64,
    offset_exponent: f64,
    h: f64,
}

impl GeometricSchedule {
    pub fn new(c: f64, offset_exponent: f64) -> Result<Self, MscError> {
        if !(c > 1.0 && c < E_SQUARED) {
            return Err(MscError::Domain(format!("c = {c} outside (1, e²)")));
        }
        if !(0.0..1.0).contains(&offset_exponent) {
            return Err(MscError::Domain(format!(
                "offset exponent {offset_exponent} outside [0, 1)"
            )));
        }
        Ok(GeometricSchedule {
            c,
            offset_exponent,
            h: c.powf(offset_exponent),
        })
    }

    /// Uniformly random offset exponent.
    pub fn random<R: Rng>(c: f64, rng: &mut R) -> Result<Self, MscError> {
        Self::new(c, rng.gen::<f64>())
    }

    /// Schedule whose first breakpoint is `h` directly, `h ∈ [1, c)`.
    pub fn with_offset(c: f64, h: f64) -> Result<Self, MscError> {
        if !(c > 1.0 && c < E_SQUARED) {
            return Err(MscError::Domain(format!("c = {c} outside (1, e²)")));
        }
        if !(h >= 1.0 && h < c) {
            return Err(MscError::Domain(format!("offset {h} outside [1, {c})")));
        }
        Ok(GeometricSchedule {
            c,
            offset_exponent: h.ln() / c.ln(),
            h,
        })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn offset_exponent(&self) -> f64 {
        self.offset_exponent
    }

    /// First breakpoint c^Γ ∈ [1, c).
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn breakpoint(&self, j: usize) -> f64 {
        self.h * self.c.powi(j as i32)
    }

    /// Level of block j: the breakpoint, floored and clipped to n.
    pub fn level(&self, j: usize, n: usize) -> usize {
        (self.breakpoint(j) as usize).min(n).max(1)
    }

    /// Number of blocks until the level reaches n: ⌈log_c(n/h)⌉ + 1, the
    /// guaranteed bound on rounding iterations.
    pub fn blocks(&self, n: usize) -> usize {
        if n <= 1 {
            return 1;
        }
        let mut j = ((n as f64 / self.h).ln() / self.c.ln()).ceil().max(0.0) as usize;
        while self.breakpoint(j) < n as f64 {
            j += 1;
        }
        j + 1
    }
}

fn check_inputs(
    g: &WeightedGraph,
    sol: &ConfigLpSolution,
    rho: f64,
    gamma: f64,
) -> Result<(), MscError> {
    if sol.vertex_count() != g.vertex_count() {
        return Err(MscError::MalformedSolution(
            "solution sized for a different graph".into(),
        ));
    }
    if (rho - sol.rho()).abs() > 1e-9 || (gamma - sol.gamma()).abs() > 1e-9 {
        return Err(MscError::Domain(
            "rho/gamma differ from the ones the relaxation was solved with".into(),
        ));
    }
    sol.validate(g).map_err(MscError::MalformedSolution)
}

/// Witness classes of a column, indexed by witness color (0-based), padded to
/// `width` with empty classes.
fn classes_of(col: &ConfigColumn, width: usize) -> Vec<Vec<usize>> {
    let mut classes = vec![Vec::new(); width];
    for (i, &v) in col.vertices().iter().enumerate() {
        classes[col.witness()[i] - 1].push(v);
    }
    classes
}

/// Colors every still-uncolored vertex greedily along the elimination order
/// with colors above `base`; used when the block pass ran out of iterations
/// (only possible for ρ < 1). Returns the updated count of colored vertices.
fn complete_greedily(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
    colors: &mut [usize],
    base: usize,
) {
    for &v in peo.order() {
        if colors[v] != 0 {
            continue;
        }
        let mut used: Vec<usize> = g
            .neighbors(v)
            .iter()
            .map(|&u| colors[u])
            .filter(|&c| c > base)
            .collect();
        used.sort_unstable();
        used.dedup();
        let mut c = base + 1;
        for u in used {
            if u == c {
                c += 1;
            } else if u > c {
                break;
            }
        }
        colors[v] = c;
    }
}

/// Per-level sampling pools: configurations with probability ρ·z, the empty
/// configuration absorbing the unused capacity so each pool sums to one.
fn sampling_pools(sol: &ConfigLpSolution, n: usize, rho: f64) -> Vec<Vec<(ConfigColumn, f64)>> {
    let mut pools: Vec<Vec<(ConfigColumn, f64)>> = vec![Vec::new(); n + 1];
    for (col, mass) in sol.z() {
        pools[col.k()].push((col.clone(), rho * mass));
    }
    for (k, pool) in pools.iter_mut().enumerate().skip(1) {
        let total: f64 = pool.iter().map(|&(_, p)| p).sum();
        let deficit = (1.0 - total).max(0.0);
        match pool.iter_mut().find(|(c, _)| c.is_empty()) {
            Some(entry) => entry.1 += deficit,
            None => pool.push((ConfigColumn::empty(k), deficit)),
        }
    }
    pools
}

/// One randomized rounding pass. Expected objective is bounded by
/// `ratio_bound(rho, gamma, c)` times the relaxation cost.
pub fn msc_round<R: Rng>(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
    sol: &ConfigLpSolution,
    sched: &GeometricSchedule,
    rho: f64,
    gamma: f64,
    rng: &mut R,
) -> Result<Coloring, MscError> {
    check_inputs(g, sol, rho, gamma)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Coloring::new(g, Vec::new()).expect("empty coloring"));
    }
    let pools = sampling_pools(sol, n, rho);
    let mut colors = vec![0usize; n];
    let mut uncolored = n;
    let mut base = 0usize;
    for j in 0..sched.blocks(n) {
        let k = sched.level(j, n);
        let width = level_width(gamma, k);
        let pool = &pools[k];
        let mut u = rng.gen::<f64>();
        let mut chosen = &pool[pool.len() - 1].0;
        for (col, p) in pool {
            if u < *p {
                chosen = col;
                break;
            }
            u -= p;
        }
        let mut classes = classes_of(chosen, width);
        classes.shuffle(rng);
        for (i, class) in classes.iter().enumerate() {
            for &v in class {
                if colors[v] == 0 {
                    colors[v] = base + i + 1;
                    uncolored -= 1;
                }
            }
        }
        base += width;
        if uncolored == 0 {
            break;
        }
    }
    if uncolored > 0 {
        complete_greedily(g, peo, &mut colors, base);
    }
    Coloring::new(g, colors).map_err(|e| MscError::Internal(format!("improper rounding: {e}")))
}

/// Simulation state shared by the deterministic chooser.
#[derive(Clone)]
struct SimState {
    colors: Vec<usize>,
    uncolored_weight: f64,
    uncolored: usize,
    objective: f64,
}

impl SimState {
    fn fresh(g: &WeightedGraph) -> Self {
        SimState {
            colors: vec![0; g.vertex_count()],
            uncolored_weight: g.weights().iter().sum(),
            uncolored: g.vertex_count(),
            objective: 0.0,
        }
    }

    /// Applies a column at `base` with `width` colors: classes ordered by
    /// non-increasing uncovered weight (witness color breaking ties) take the
    /// cheap colors first.
    fn apply(&mut self, g: &WeightedGraph, col: &ConfigColumn, base: usize, width: usize) {
        let classes = classes_of(col, width);
        let mut order: Vec<usize> = (0..classes.len()).collect();
        let class_weight = |class: &[usize]| -> f64 {
            class
                .iter()
                .filter(|&&v| self.colors[v] == 0)
                .map(|&v| g.weight(v))
                .sum()
        };
        let weights: Vec<f64> = classes.iter().map(|cl| class_weight(cl)).collect();
        order.sort_by(|&a, &b| weights[b].partial_cmp(&weights[a]).unwrap().then(a.cmp(&b)));
        for (slot, &ci) in order.iter().enumerate() {
            for &v in &classes[ci] {
                if self.colors[v] == 0 {
                    let color = base + slot + 1;
                    self.colors[v] = color;
                    self.uncolored -= 1;
                    self.uncolored_weight -= g.weight(v);
                    self.objective += g.weight(v) * color as f64;
                }
            }
        }
    }

    fn complete(&mut self, g: &WeightedGraph, peo: &PerfectEliminationOrder, base: usize) {
        if self.uncolored == 0 {
            return;
        }
        complete_greedily(g, peo, &mut self.colors, base);
        self.objective = self
            .colors
            .iter()
            .enumerate()
            .map(|(v, &c)| g.weight(v) * c as f64)
            .sum();
        self.uncolored = 0;
        self.uncolored_weight = 0.0;
    }
}

/// Cheap column score: realized contribution of this block plus everything
/// left charged one color past the block (an optimistic completion).
fn quick_score(
    g: &WeightedGraph,
    state: &SimState,
    col: &ConfigColumn,
    base: usize,
    width: usize,
) -> f64 {
    let classes = classes_of(col, width);
    let mut weights: Vec<f64> = classes
        .iter()
        .map(|cl| {
            cl.iter()
                .filter(|&&v| state.colors[v] == 0)
                .map(|&v| g.weight(v))
                .sum()
        })
        .collect();
    weights.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut contribution = 0.0;
    let mut covered = 0.0;
    for (slot, w) in weights.iter().enumerate() {
        contribution += (base + slot + 1) as f64 * w;
        covered += w;
    }
    contribution + (base + width + 1) as f64 * (state.uncolored_weight - covered)
}

struct Chooser<'a> {
    g: &'a WeightedGraph,
    peo: &'a PerfectEliminationOrder,
    /// Per level: candidate columns with their mass (empty column always
    /// present).
    pools: Vec<Vec<(ConfigColumn, f64)>>,
    gamma: f64,
}

impl Chooser<'_> {
    /// Index into the level pool minimizing the quick score; ties prefer the
    /// larger mass, then the lexicographically smaller column.
    fn quick_pick(&self, state: &SimState, k: usize, base: usize, width: usize) -> usize {
        let pool = &self.pools[k];
        let mut best = 0usize;
        let mut best_score = f64::INFINITY;
        for (i, (col, mass)) in pool.iter().enumerate() {
            let score = quick_score(self.g, state, col, base, width);
            if score < best_score - 1e-12 {
                best = i;
                best_score = score;
            } else if (score - best_score).abs() <= 1e-12 {
                let (bcol, bmass) = &pool[best];
                if *mass > *bmass + 1e-15 || ((mass - bmass).abs() <= 1e-15 && col < bcol) {
                    best = i;
                }
            }
        }
        best
    }

    /// Runs blocks `j..` to completion with quick picks, returning the final
    /// objective.
    fn rollout(&self, mut state: SimState, sched: &GeometricSchedule, j0: usize) -> f64 {
        let n = self.g.vertex_count();
        let blocks = sched.blocks(n);
        let mut base: usize = (0..j0)
            .map(|j| level_width(self.gamma, sched.level(j, n)))
            .sum();
        for j in j0..blocks {
            if state.uncolored == 0 {
                break;
            }
            let k = sched.level(j, n);
            let width = level_width(self.gamma, k);
            let pick = self.quick_pick(&state, k, base, width);
            let col = self.pools[k][pick].0.clone();
            state.apply(self.g, &col, base, width);
            base += width;
        }
        state.complete(self.g, self.peo, base);
        state.objective
    }

    /// Full deterministic pass for one offset: each block picks the candidate
    /// whose rollout realizes the smallest final objective.
    fn run_offset(&self, sched: &GeometricSchedule) -> SimState {
        let n = self.g.vertex_count();
        let blocks = sched.blocks(n);
        let mut state = SimState::fresh(self.g);
        let mut base = 0usize;
        for j in 0..blocks {
            if state.uncolored == 0 {
                break;
            }
            let k = sched.level(j, n);
            let width = level_width(self.gamma, k);
            let pool = &self.pools[k];
            let mut best: Option<(usize, f64)> = None;
            for (i, (col, mass)) in pool.iter().enumerate() {
                let mut trial = state.clone();
                trial.apply(self.g, col, base, width);
                let realized = self.rollout(trial, sched, j + 1);
                let better = match best {
                    None => true,
                    Some((bi, bv)) => {
                        realized < bv - 1e-9
                            || ((realized - bv).abs() <= 1e-9 && {
                                let (bcol, bmass) = &pool[bi];
                                *mass > *bmass + 1e-15
                                    || ((mass - bmass).abs() <= 1e-15 && col < bcol)
                            })
                    }
                };
                if better {
                    best = Some((i, realized));
                }
            }
            let (pick, _) = best.expect("pool always holds the empty column");
            let col = self.pools[k][pick].0.clone();
            state.apply(self.g, &col, base, width);
            base += width;
        }
        state.complete(self.g, self.peo, base);
        state
    }
}

/// Offsets worth scanning: every critical point k/c^j folded into [1, c),
/// midpoints of consecutive criticals, and the midpoint toward c. Between
/// consecutive criticals every block sees the same level sequence, so the
/// scan covers all distinct behaviors.
fn offset_grid(n: usize, c: f64) -> Vec<f64> {
    let mut criticals = vec![1.0f64];
    for k in 1..=n {
        let mut t = k as f64;
        while t >= c {
            t /= c;
        }
        criticals.push(t);
    }
    criticals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    criticals.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    let mut offsets = criticals.clone();
    for w in criticals.windows(2) {
        offsets.push(0.5 * (w[0] + w[1]));
    }
    offsets.push(0.5 * (criticals[criticals.len() - 1] + c));
    offsets.sort_by(|a, b| a.partial_cmp(b).unwrap());
    offsets
}

/// Deterministic rounding: scans the offset grid, runs each offset with
/// greedy per-block column choices over the positive-mass configurations
/// (mass above 1e−9, plus the empty fallback), and keeps the best coloring;
/// ties prefer the smaller offset.
pub fn msc_round_derandomized(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
    sol: &ConfigLpSolution,
    c: f64,
    rho: f64,
    gamma: f64,
) -> Result<Coloring, MscError> {
    if !(c > 1.0 && c < E_SQUARED) {
        return Err(MscError::Domain(format!("c = {c} outside (1, e²)")));
    }
    check_inputs(g, sol, rho, gamma)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Coloring::new(g, Vec::new()).expect("empty coloring"));
    }
    let mut pools: Vec<Vec<(ConfigColumn, f64)>> = vec![Vec::new(); n + 1];
    for (col, mass) in sol.z() {
        if *mass > 1e-9 {
            pools[col.k()].push((col.clone(), *mass));
        }
    }
    for (k, pool) in pools.iter_mut().enumerate().skip(1) {
        if !pool.iter().any(|(c, _)| c.is_empty()) {
            pool.push((ConfigColumn::empty(k), 0.0));
        }
    }
    let chooser = Chooser {
        g,
        peo,
        pools,
        gamma,
    };
    let mut best: Option<(SimState, f64)> = None;
    for h in offset_grid(n, c) {
        let sched = GeometricSchedule::with_offset(c, h)?;
        let state = chooser.run_offset(&sched);
        let better = match &best {
            None => true,
            Some((b, _)) => state.objective < b.objective - 1e-12,
        };
        if better {
            best = Some((state, h));
        }
    }
    let (state, _) = best.expect("offset grid is never empty");
    Coloring::new(g, state.colors)
        .map_err(|e| MscError::Internal(format!("improper rounding: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::recognize_chordal;
    use crate::cliquetree::build_clique_tree;
    use crate::mkcs::DpBudget;
    use crate::msc::config_lp::{solve_config_lp, ChordalLevelOracle};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn solved(g: &WeightedGraph) -> ConfigLpSolution {
        let peo = recognize_chordal(g).unwrap();
        let rep = build_clique_tree(g, &peo);
        let mut oracle = ChordalLevelOracle::new(g, &peo, &rep, DpBudget::default());
        solve_config_lp(g, &peo, &mut oracle, 1.0, 1.0).unwrap()
    }

    #[test]
    fn schedule_breakpoints_and_blocks() {
        let s = GeometricSchedule::with_offset(2.0, 1.0).unwrap();
        assert_eq!(s.level(0, 10), 1);
        assert_eq!(s.level(1, 10), 2);
        assert_eq!(s.level(2, 10), 4);
        assert_eq!(s.level(4, 10), 10);
        // 2^4 = 16 ≥ 10, and ⌈log₂ 10⌉ + 1 = 5.
        assert_eq!(s.blocks(10), 5);
        assert_eq!(s.blocks(1), 1);
        assert!(GeometricSchedule::new(1.0, 0.0).is_err());
        assert!(GeometricSchedule::new(2.0, 1.0).is_err());
        assert!(GeometricSchedule::with_offset(2.0, 2.0).is_err());
    }

    #[test]
    fn random_rounding_is_proper_and_bounded() {
        let g = WeightedGraph::complete(3);
        let peo = recognize_chordal(&g).unwrap();
        let sol = solved(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let sched = GeometricSchedule::random(3.591, &mut rng).unwrap();
            let col = msc_round(&g, &peo, &sol, &sched, 1.0, 1.0, &mut rng).unwrap();
            // Proper by construction; colors of a triangle are distinct.
            let mut cs = col.colors().to_vec();
            cs.sort_unstable();
            cs.dedup();
            assert_eq!(cs.len(), 3);
        }
    }

    #[test]
    fn rounding_expectation_stays_under_the_bound() {
        // Single edge: relaxation cost 3, bound 1.7956·3 ≈ 5.39. The sample
        // mean over 2000 runs must sit clearly below the bound.
        let g = WeightedGraph::complete(2);
        let peo = recognize_chordal(&g).unwrap();
        let sol = solved(&g);
        let (c, ratio) = crate::msc::optimal_c(1.0, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let runs = 2000;
        let mut total = 0.0;
        for _ in 0..runs {
            let sched = GeometricSchedule::random(c, &mut rng).unwrap();
            total += msc_round(&g, &peo, &sol, &sched, 1.0, 1.0, &mut rng)
                .unwrap()
                .objective();
        }
        let mean = total / runs as f64;
        assert!(
            mean <= ratio * sol.cost() + 0.25,
            "mean {mean} vs bound {}",
            ratio * sol.cost()
        );
    }

    #[test]
    fn derandomized_beats_the_sample_mean() {
        let g = WeightedGraph::path(4);
        let peo = recognize_chordal(&g).unwrap();
        let sol = solved(&g);
        let (c, _) = crate::msc::optimal_c(1.0, 1.0).unwrap();
        let det = msc_round_derandomized(&g, &peo, &sol, c, 1.0, 1.0)
            .unwrap()
            .objective();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let runs = 400;
        let mut total = 0.0;
        for _ in 0..runs {
            let sched = GeometricSchedule::random(c, &mut rng).unwrap();
            total += msc_round(&g, &peo, &sol, &sched, 1.0, 1.0, &mut rng)
                .unwrap()
                .objective();
        }
        assert!(det <= total / runs as f64 + 1e-9, "det {det} mean {}", total / runs as f64);
    }

    #[test]
    fn derandomized_triangle_is_optimal() {
        let g = WeightedGraph::complete(3);
        let peo = recognize_chordal(&g).unwrap();
        let sol = solved(&g);
        let (c, _) = crate::msc::optimal_c(1.0, 1.0).unwrap();
        let col = msc_round_derandomized(&g, &peo, &sol, c, 1.0, 1.0).unwrap();
        assert!(col.objective() <= 6.0 + 1e-9);
    }

    #[test]
    fn offset_grid_covers_criticals_and_midpoints() {
        let c = 2.0;
        let grid = offset_grid(4, c);
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
        assert!(grid.iter().all(|&h| (1.0..c).contains(&h)));
        // 3/2 folds to 1.5; 1 and 2 fold to 1.0; the grid holds both plus
        // midpoints.
        assert!(grid.iter().any(|&h| (h - 1.0).abs() < 1e-12));
        assert!(grid.iter().any(|&h| (h - 1.5).abs() < 1e-12));
        assert!(grid.iter().any(|&h| (h - 1.25).abs() < 1e-12));
        assert!(grid.iter().any(|&h| (h - 1.75).abs() < 1e-12));
    }

    #[test]
    fn uncovered_vertices_get_completed() {
        // A solution whose configurations never cover vertex 2 still rounds
        // to a proper coloring via the completion pass (ρ < 1 leaves room).
        let g = WeightedGraph::path(3);
        let peo = recognize_chordal(&g).unwrap();
        let sol = crate::msc::config_lp::solve_config_lp_enumerated(&g, 0.5, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let sched = GeometricSchedule::random(1.9, &mut rng).unwrap();
            let col = msc_round(&g, &peo, &sol, &sched, 0.5, 1.0, &mut rng).unwrap();
            assert!(col.colors().iter().all(|&c| c >= 1));
        }
    }
}
