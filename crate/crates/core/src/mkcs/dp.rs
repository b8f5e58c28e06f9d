//! Exact maximum k-colorable subgraph by dynamic programming over a
//! degree-≤3 clique tree.
//!
//! A vertex set S is k-colorable-inducing exactly when every tree node lies
//! in at most k subtrees of selected vertices, so the program's state is
//! (tree node t, selected slice S ⊆ bag(t), |S| ≤ k). Each vertex is counted
//! at the node of its subtree closest to the root, and children constrain
//! the parent only through the shared bag slice. Cost grows with
//! Σ_t C(|bag(t)|, ≤k), which the budget bounds explicitly.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::chordal::recognize_chordal;
use crate::cliquetree::CliqueTreeRepresentation;
use crate::graph::WeightedGraph;
use crate::mkcs::{greedy_witness, MkcsResult};

/// Cost guard for the exact program; all limits are inclusive.
#[derive(Debug, Clone)]
pub struct DpBudget {
    pub max_k: usize,
    pub max_vertices: usize,
    /// Cap on Σ_t C(|bag(t)|, ≤k), the table size.
    pub max_states: usize,
}

impl Default for DpBudget {
    fn default() -> Self {
        DpBudget {
            max_k: 8,
            max_vertices: 60,
            max_states: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DpRefusal {
    #[error("color budget k = {k} exceeds the configured cap {max}")]
    KTooLarge { k: usize, max: usize },
    #[error("{n} vertices exceed the configured cap {max}")]
    TooManyVertices { n: usize, max: usize },
    #[error("{states} DP states exceed the configured cap {max}")]
    StateBudget { states: usize, max: usize },
}

impl DpBudget {
    /// Number of DP states for this tree and budget, saturating.
    pub fn state_count(rep: &CliqueTreeRepresentation, k: usize) -> usize {
        let mut total = 0usize;
        for t in 0..rep.node_count() {
            total = total.saturating_add(subsets_up_to(rep.bag(t).len(), k));
        }
        total
    }

    pub fn check(&self, rep: &CliqueTreeRepresentation, k: usize) -> Result<(), DpRefusal> {
        if k > self.max_k {
            return Err(DpRefusal::KTooLarge { k, max: self.max_k });
        }
        let n = rep.vertex_count();
        if n > self.max_vertices {
            return Err(DpRefusal::TooManyVertices {
                n,
                max: self.max_vertices,
            });
        }
        let states = Self::state_count(rep, k);
        if states > self.max_states {
            return Err(DpRefusal::StateBudget {
                states,
                max: self.max_states,
            });
        }
        Ok(())
    }
}

/// Σ_{i=0}^{min(k,n)} C(n, i), saturating.
fn subsets_up_to(n: usize, k: usize) -> usize {
    let mut total = 0usize;
    let mut binom = 1usize;
    for i in 0..=k.min(n) {
        total = total.saturating_add(binom);
        if i < n {
            binom = binom
                .saturating_mul(n - i)
                .checked_div(i + 1)
                .unwrap_or(usize::MAX);
        }
    }
    total
}

/// Exact optimum under the default [`DpBudget`].
pub fn exact_mkcs_dp(
    rep: &CliqueTreeRepresentation,
    k: usize,
    weights: &[f64],
) -> Result<MkcsResult, DpRefusal> {
    exact_mkcs_dp_with_budget(rep, k, weights, &DpBudget::default())
}

pub fn exact_mkcs_dp_with_budget(
    rep: &CliqueTreeRepresentation,
    k: usize,
    weights: &[f64],
    budget: &DpBudget,
) -> Result<MkcsResult, DpRefusal> {
    assert!(k >= 1, "color budget must be positive");
    assert_eq!(
        weights.len(),
        rep.vertex_count(),
        "one weight per vertex required"
    );
    budget.check(rep, k)?;

    let g = graph_from_representation(rep, weights);
    let nodes = rep.node_count();

    // Root at node 0; children and a post-order via DFS.
    let mut parent = vec![usize::MAX; nodes];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut post = Vec::with_capacity(nodes);
    let mut stack = vec![(0usize, usize::MAX, false)];
    while let Some((t, par, expanded)) = stack.pop() {
        if expanded {
            post.push(t);
            continue;
        }
        parent[t] = par;
        stack.push((t, par, true));
        for nb in rep.neighbors_of(t) {
            if nb != par {
                children[t].push(nb);
                stack.push((nb, t, false));
            }
        }
    }

    // Depths give each vertex its topmost node.
    let mut depth = vec![0usize; nodes];
    for &t in post.iter().rev() {
        if parent[t] != usize::MAX {
            depth[t] = depth[parent[t]] + 1;
        }
    }
    let top: Vec<usize> = (0..rep.vertex_count())
        .map(|v| {
            *rep.subtree(v)
                .iter()
                .min_by_key(|&&t| depth[t])
                .expect("every vertex occupies a node")
        })
        .collect();

    // Per node: state value table. Per (node, child): best child state for
    // each shared-slice key, kept for reconstruction.
    let mut tables: Vec<BTreeMap<Vec<usize>, f64>> = vec![BTreeMap::new(); nodes];
    let mut iface: Vec<Vec<BTreeMap<Vec<usize>, (f64, Vec<usize>)>>> = (0..nodes)
        .map(|t| vec![BTreeMap::new(); children[t].len()])
        .collect();

    for &t in &post {
        // Summarize each child down to its shared slice with this bag.
        for (ci, &c) in children[t].iter().enumerate() {
            let mut best: BTreeMap<Vec<usize>, (f64, Vec<usize>)> = BTreeMap::new();
            for (state, &val) in &tables[c] {
                let key = intersect_sorted(state, rep.bag(t));
                match best.get(&key) {
                    Some((bv, _)) if *bv >= val => {}
                    _ => {
                        best.insert(key, (val, state.clone()));
                    }
                }
            }
            iface[t][ci] = best;
        }

        let bag = rep.bag(t);
        let mut table = BTreeMap::new();
        for_each_subset_up_to(bag, k, &mut |state: &[usize]| {
            let mut val: f64 = state
                .iter()
                .filter(|&&v| top[v] == t)
                .map(|&v| weights[v])
                .sum();
            for (ci, &c) in children[t].iter().enumerate() {
                let key = intersect_sorted(state, rep.bag(c));
                let (cv, _) = iface[t][ci]
                    .get(&key)
                    .expect("child tables cover every shared slice");
                val += cv;
            }
            table.insert(state.to_vec(), val);
        });
        tables[t] = table;
    }

    // Best root state, then walk back down collecting topmost vertices.
    let root_state = tables[0]
        .iter()
        .fold(None::<(&Vec<usize>, f64)>, |acc, (s, &v)| match acc {
            Some((_, bv)) if bv >= v => acc,
            _ => Some((s, v)),
        })
        .map(|(s, _)| s.clone())
        .expect("root table contains at least the empty state");

    let mut selected = Vec::new();
    let mut walk = vec![(0usize, root_state)];
    while let Some((t, state)) = walk.pop() {
        selected.extend(state.iter().copied().filter(|&v| top[v] == t));
        for (ci, &c) in children[t].iter().enumerate() {
            let key = intersect_sorted(&state, rep.bag(c));
            let (_, child_state) = &iface[t][ci][&key];
            walk.push((c, child_state.clone()));
        }
    }
    selected.sort_unstable();

    let peo = recognize_chordal(&g).expect("subtree-intersection graphs are chordal");
    let colors = greedy_witness(&g, &peo, &selected);
    Ok(MkcsResult::new(&g, k, selected, colors))
}

/// Rebuilds the weighted graph the representation describes: vertices are
/// adjacent exactly when their subtrees share a node.
fn graph_from_representation(rep: &CliqueTreeRepresentation, weights: &[f64]) -> WeightedGraph {
    let n = rep.vertex_count();
    let mut g = WeightedGraph::new(n);
    for u in 0..n {
        g.set_weight(u, weights[u]).expect("weights are nonnegative");
        for v in u + 1..n {
            let meet = rep
                .subtree(u)
                .iter()
                .any(|t| rep.subtree(v).binary_search(t).is_ok());
            if meet {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Calls `f` on every subset of `bag` (sorted) with at most `k` elements.
fn for_each_subset_up_to(bag: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(bag: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        f(cur);
        if cur.len() == k {
            return;
        }
        for i in start..bag.len() {
            cur.push(bag[i]);
            rec(bag, k, i + 1, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    rec(bag, k, 0, &mut cur, f);
}
