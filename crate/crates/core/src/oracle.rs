//! Exhaustive reference solvers for small instances.
//!
//! These are the ground truth the approximation algorithms are tested
//! against, so they deliberately share no machinery with the fast paths: no
//! elimination orders, no clique trees, no LPs. They work on arbitrary
//! graphs, not just chordal ones.

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::graph::{Coloring, WeightedGraph};
use crate::mkcs::MkcsResult;

/// Instance-size limits for the exhaustive solvers.
#[derive(Debug, Clone)]
pub struct OracleBudget {
    pub max_vertices_mkcs: usize,
    pub max_vertices_msc: usize,
    /// Wall-clock cap per call, enforced coarsely inside the search loops.
    pub time_cap: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices_mkcs: 12,
            max_vertices_msc: 10,
            time_cap: Duration::from_secs(60),
        }
    }
}

impl OracleBudget {
    fn validate(&self) {
        assert!(self.max_vertices_mkcs > 0, "vertex budgets must be positive");
        assert!(self.max_vertices_msc > 0, "vertex budgets must be positive");
        assert!(!self.time_cap.is_zero(), "time cap must be positive");
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {n} vertices, over the oracle budget of {max}")]
    BudgetExceeded { n: usize, max: usize },
    #[error("oracle call exceeded its time cap")]
    TimeCapExceeded,
}

/// Exact maximum-weight k-colorable induced subgraph by subset enumeration,
/// with k-colorability of each candidate decided by backtracking search.
/// Ties in weight go to the larger vertex set, so a budget of k = n always
/// returns all of V.
pub fn brute_mkcs(g: &WeightedGraph, k: usize) -> Result<MkcsResult, OracleError> {
    brute_mkcs_with_budget(g, k, &OracleBudget::default())
}

pub fn brute_mkcs_with_budget(
    g: &WeightedGraph,
    k: usize,
    budget: &OracleBudget,
) -> Result<MkcsResult, OracleError> {
    assert!(k >= 1, "color budget must be positive");
    budget.validate();
    let n = g.vertex_count();
    if n > budget.max_vertices_mkcs {
        return Err(OracleError::BudgetExceeded {
            n,
            max: budget.max_vertices_mkcs,
        });
    }
    assert!(n < 63, "subset enumeration is limited to 62 vertices");
    let deadline = Instant::now() + budget.time_cap;
    let mut best_weight = -1.0;
    let mut best_size = 0;
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for mask in 0u64..(1u64 << n) {
        if mask % 1024 == 0 && Instant::now() > deadline {
            return Err(OracleError::TimeCapExceeded);
        }
        let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let weight: f64 = subset.iter().map(|&v| g.weight(v)).sum();
        let improves =
            weight > best_weight || (weight == best_weight && subset.len() > best_size);
        if !improves {
            continue;
        }
        let (sub, map) = g.induced_subgraph(&subset);
        if let Some(colors) = try_k_coloring(&sub, k, deadline)? {
            debug_assert_eq!(map, subset);
            best_weight = weight;
            best_size = subset.len();
            best = Some((subset, colors));
        }
    }
    let (selected, colors) = best.expect("the empty subset is always feasible");
    Ok(MkcsResult::new(g, k, selected, colors))
}

/// Exact minimum-sum coloring by branch and bound over color assignments.
/// Vertices are ordered by decreasing degree; the bound charges every
/// uncolored vertex its weight at the cheapest color 1.
pub fn brute_msc(g: &WeightedGraph) -> Result<Coloring, OracleError> {
    brute_msc_with_budget(g, &OracleBudget::default())
}

pub fn brute_msc_with_budget(
    g: &WeightedGraph,
    budget: &OracleBudget,
) -> Result<Coloring, OracleError> {
    budget.validate();
    let n = g.vertex_count();
    if n > budget.max_vertices_msc {
        return Err(OracleError::BudgetExceeded {
            n,
            max: budget.max_vertices_msc,
        });
    }
    let deadline = Instant::now() + budget.time_cap;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    // Some optimum gives every vertex a color at most deg+1: any higher color
    // could be swapped down to a free one without raising the sum.
    let cap: Vec<usize> = (0..n).map(|v| (g.degree(v) + 1).min(n.max(1))).collect();

    // Greedy first-fit incumbent (always within the per-vertex caps).
    let mut colors = vec![0usize; n];
    for &v in &order {
        let mut c = 1;
        while g.neighbors(v).iter().any(|&u| colors[u] == c) {
            c += 1;
        }
        colors[v] = c;
    }
    let mut best_colors = colors.clone();
    let mut best: f64 = (0..n).map(|v| g.weight(v) * colors[v] as f64).sum();

    // Suffix weights for the lower bound.
    let mut suffix = vec![0.0; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + g.weight(order[i]);
    }

    struct Search<'a> {
        g: &'a WeightedGraph,
        order: &'a [usize],
        cap: &'a [usize],
        suffix: &'a [f64],
        deadline: Instant,
        nodes: u64,
        colors: Vec<usize>,
        best: f64,
        best_colors: Vec<usize>,
    }

    impl Search<'_> {
        fn run(&mut self, idx: usize, partial: f64) -> Result<(), OracleError> {
            self.nodes += 1;
            if self.nodes % 8192 == 0 && Instant::now() > self.deadline {
                return Err(OracleError::TimeCapExceeded);
            }
            if partial + self.suffix[idx] >= self.best {
                return Ok(());
            }
            if idx == self.order.len() {
                self.best = partial;
                self.best_colors = self.colors.clone();
                return Ok(());
            }
            let v = self.order[idx];
            for c in 1..=self.cap[v] {
                if self.g.neighbors(v).iter().any(|&u| self.colors[u] == c) {
                    continue;
                }
                self.colors[v] = c;
                self.run(idx + 1, partial + self.g.weight(v) * c as f64)?;
                self.colors[v] = 0;
            }
            Ok(())
        }
    }

    let mut search = Search {
        g,
        order: &order,
        cap: &cap,
        suffix: &suffix,
        deadline,
        nodes: 0,
        colors: vec![0; n],
        best,
        best_colors: best_colors.clone(),
    };
    search.run(0, 0.0)?;
    best = search.best;
    best_colors = search.best_colors;

    let coloring = Coloring::new(g, best_colors).expect("search output is proper");
    debug_assert!((coloring.objective() - best).abs() <= 1e-9 * (1.0 + best.abs()));
    Ok(coloring)
}

/// Exact k-colorability decision.
pub fn is_k_colorable(g: &WeightedGraph, k: usize) -> Result<bool, OracleError> {
    is_k_colorable_with_budget(g, k, &OracleBudget::default())
}

pub fn is_k_colorable_with_budget(
    g: &WeightedGraph,
    k: usize,
    budget: &OracleBudget,
) -> Result<bool, OracleError> {
    budget.validate();
    let n = g.vertex_count();
    if n > budget.max_vertices_mkcs {
        return Err(OracleError::BudgetExceeded {
            n,
            max: budget.max_vertices_mkcs,
        });
    }
    let deadline = Instant::now() + budget.time_cap;
    Ok(try_k_coloring(g, k, deadline)?.is_some())
}

/// Proper k-coloring witness, or `None` if the graph is not k-colorable.
/// Symmetry is broken by pre-coloring a greedily grown maximal clique and by
/// allowing each vertex only one color beyond those already in use.
pub(crate) fn k_coloring(g: &WeightedGraph, k: usize) -> Option<Vec<usize>> {
    try_k_coloring(g, k, Instant::now() + Duration::from_secs(600))
        .expect("generous deadline for internal use")
}

fn try_k_coloring(
    g: &WeightedGraph,
    k: usize,
    deadline: Instant,
) -> Result<Option<Vec<usize>>, OracleError> {
    assert!(k >= 1, "color budget must be positive");
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut clique: Vec<usize> = Vec::new();
    for &v in &order {
        if clique.iter().all(|&u| g.has_edge(u, v)) {
            clique.push(v);
        }
    }
    if clique.len() > k {
        return Ok(None);
    }

    let mut colors = vec![0usize; n];
    for (i, &v) in clique.iter().enumerate() {
        colors[v] = i + 1;
    }
    let rest: Vec<usize> = order
        .iter()
        .copied()
        .filter(|v| colors[*v] == 0)
        .collect();

    fn rec(
        g: &WeightedGraph,
        k: usize,
        rest: &[usize],
        idx: usize,
        colors: &mut Vec<usize>,
        used: usize,
        nodes: &mut u64,
        deadline: Instant,
    ) -> Result<bool, OracleError> {
        *nodes += 1;
        if *nodes % 8192 == 0 && Instant::now() > deadline {
            return Err(OracleError::TimeCapExceeded);
        }
        if idx == rest.len() {
            return Ok(true);
        }
        let v = rest[idx];
        // Colors beyond used+1 are interchangeable; trying one suffices.
        let limit = k.min(used + 1);
        for c in 1..=limit {
            if g.neighbors(v).iter().any(|&u| colors[u] == c) {
                continue;
            }
            colors[v] = c;
            if rec(g, k, rest, idx + 1, colors, used.max(c), nodes, deadline)? {
                return Ok(true);
            }
            colors[v] = 0;
        }
        Ok(false)
    }

    let mut nodes = 0;
    let used = clique.len();
    if rec(g, k, &rest, 0, &mut colors, used, &mut nodes, deadline)? {
        Ok(Some(colors))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mkcs_on_triangle_and_cycle() {
        let k3 = WeightedGraph::complete(3);
        assert_eq!(brute_mkcs(&k3, 2).unwrap().weight(), 2.0);
        let c5 = WeightedGraph::cycle(5);
        assert_eq!(brute_mkcs(&c5, 2).unwrap().weight(), 4.0);
        let empty = WeightedGraph::new(0);
        assert_eq!(brute_mkcs(&empty, 1).unwrap().weight(), 0.0);
    }

    #[test]
    fn mkcs_with_full_budget_takes_everything() {
        let mut g = WeightedGraph::complete(4);
        g.set_weight(2, 0.0).unwrap();
        let res = brute_mkcs(&g, 4).unwrap();
        assert_eq!(res.selected(), &[0, 1, 2, 3]);
    }

    #[test]
    fn mkcs_respects_budget() {
        let g = WeightedGraph::new(13);
        assert_eq!(
            brute_mkcs(&g, 1),
            Err(OracleError::BudgetExceeded { n: 13, max: 12 })
        );
    }

    #[test]
    fn msc_small_exact_values() {
        let k3 = WeightedGraph::complete(3);
        assert_eq!(brute_msc(&k3).unwrap().objective(), 6.0);
        let p3 = WeightedGraph::path(3);
        assert_eq!(brute_msc(&p3).unwrap().objective(), 4.0);
        // Star K_{1,4}: leaves color 1, center color 2.
        let mut star = WeightedGraph::new(5);
        for leaf in 1..5 {
            star.add_edge(0, leaf).unwrap();
        }
        assert_eq!(brute_msc(&star).unwrap().objective(), 6.0);
    }

    #[test]
    fn msc_weights_can_flip_the_star() {
        // Heavy center: color it 1 and the leaves 2.
        let mut star = WeightedGraph::new(4);
        for leaf in 1..4 {
            star.add_edge(0, leaf).unwrap();
        }
        star.set_weight(0, 10.0).unwrap();
        let col = brute_msc(&star).unwrap();
        assert_eq!(col.color(0), 1);
        assert_eq!(col.objective(), 10.0 + 2.0 * 3.0);
    }

    #[test]
    fn msc_on_non_chordal_input() {
        // C4 is bipartite: alternate colors 1 and 2.
        let c4 = WeightedGraph::cycle(4);
        assert_eq!(brute_msc(&c4).unwrap().objective(), 6.0);
    }

    #[test]
    fn colorability_matches_known_values() {
        assert!(!is_k_colorable(&WeightedGraph::cycle(5), 2).unwrap());
        assert!(is_k_colorable(&WeightedGraph::cycle(5), 3).unwrap());
        assert!(!is_k_colorable(&WeightedGraph::complete(4), 3).unwrap());
        assert!(is_k_colorable(&WeightedGraph::complete(4), 4).unwrap());
    }

    #[test]
    fn oracles_are_deterministic() {
        let mut g = WeightedGraph::path(6);
        g.set_weight(3, 4.0).unwrap();
        let a = brute_mkcs(&g, 2).unwrap();
        let b = brute_mkcs(&g, 2).unwrap();
        assert_eq!(a.selected(), b.selected());
        let x = brute_msc(&g).unwrap();
        let y = brute_msc(&g).unwrap();
        assert_eq!(x.colors(), y.colors());
    }
}
