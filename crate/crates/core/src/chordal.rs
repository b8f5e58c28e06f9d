//! Perfect elimination orders and the classic linear-time chordal toolbox.
//!
//! An ordering `v_1, ..., v_n` is a perfect elimination order (PEO) here when
//! every vertex's *earlier* neighbors form a clique. A graph admits such an
//! order exactly when it is chordal (no induced cycle of length four or
//! more). Lexicographic BFS visits vertices so that, on chordal inputs, the
//! visit order itself satisfies this left-neighborhood condition.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Coloring, WeightedGraph};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PeoError {
    #[error("ordering is not a permutation of the vertices")]
    NotPermutation,
    #[error("ordering is not a perfect elimination order")]
    NotEliminationOrder,
}

/// Certificate of non-chordality: an induced cycle on at least four vertices,
/// listed in cyclic order.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("graph is not chordal; induced cycle {induced_cycle:?}")]
pub struct NotChordal {
    pub induced_cycle: Vec<usize>,
}

/// A vertex ordering in which every left-neighborhood is a clique.
///
/// Constructing one through [`PerfectEliminationOrder::new`] or
/// [`recognize_chordal`] validates the property, so holding a value of this
/// type certifies chordality of the graph it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct PerfectEliminationOrder {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl PerfectEliminationOrder {
    pub fn new(g: &WeightedGraph, order: Vec<usize>) -> Result<Self, PeoError> {
        if !is_permutation(g.vertex_count(), &order) {
            return Err(PeoError::NotPermutation);
        }
        if !verify_peo(g, &order) {
            return Err(PeoError::NotEliminationOrder);
        }
        Ok(Self::from_order(order))
    }

    fn from_order(order: Vec<usize>) -> Self {
        let mut position = vec![0usize; order.len()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        PerfectEliminationOrder { order, position }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    /// Neighbors of `v` that appear before `v` in the order.
    pub fn left_neighbors(&self, g: &WeightedGraph, v: usize) -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&u| self.position[u] < self.position[v])
            .collect()
    }

    /// Restriction to a sorted vertex subset, re-indexed through `subset`:
    /// entry `i` of the result is the position of `subset[i]`'s rank.
    ///
    /// The restriction of a PEO to an induced subgraph is again a PEO.
    pub fn restrict(&self, subset: &[usize]) -> Vec<usize> {
        let mut ranked: Vec<usize> = (0..subset.len()).collect();
        ranked.sort_by_key(|&i| self.position[subset[i]]);
        ranked
    }
}

fn is_permutation(n: usize, order: &[usize]) -> bool {
    if order.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Lexicographic breadth-first search with partition refinement.
///
/// Returns the visit order. Among vertices with equal labels the lowest id is
/// taken first, so the output is deterministic. On chordal graphs the visit
/// order has the left-neighborhood clique property checked by [`verify_peo`].
pub fn lex_bfs(g: &WeightedGraph) -> Vec<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    // Ordered partition of the unvisited vertices, kept as a doubly linked
    // list of classes. The head class always holds the lexicographically
    // largest labels. Splitting moves marked vertices into a fresh class
    // placed immediately before the class they came from.
    let mut members: Vec<BTreeSet<usize>> = vec![(0..n).collect()];
    let mut prev: Vec<Option<usize>> = vec![None];
    let mut next: Vec<Option<usize>> = vec![None];
    let mut head: Option<usize> = Some(0);
    let mut class_of = vec![0usize; n];
    let mut split_of: Vec<usize> = vec![usize::MAX];
    let mut stamp: Vec<usize> = vec![usize::MAX];
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);

    let unlink = |c: usize,
                  prev: &mut Vec<Option<usize>>,
                  next: &mut Vec<Option<usize>>,
                  head: &mut Option<usize>| {
        match prev[c] {
            Some(p) => next[p] = next[c],
            None => *head = next[c],
        }
        if let Some(s) = next[c] {
            prev[s] = prev[c];
        }
    };

    for round in 0..n {
        let h = head.expect("nonempty partition while vertices remain");
        let v = *members[h].iter().next().unwrap();
        members[h].remove(&v);
        if members[h].is_empty() {
            unlink(h, &mut prev, &mut next, &mut head);
        }
        visited[v] = true;
        order.push(v);

        for &u in g.neighbors(v) {
            if visited[u] {
                continue;
            }
            let c = class_of[u];
            let target = if stamp[c] == round {
                split_of[c]
            } else {
                let t = members.len();
                members.push(BTreeSet::new());
                prev.push(prev[c]);
                next.push(Some(c));
                split_of.push(usize::MAX);
                stamp.push(usize::MAX);
                match prev[c] {
                    Some(p) => next[p] = Some(t),
                    None => head = Some(t),
                }
                prev[c] = Some(t);
                stamp[c] = round;
                split_of[c] = t;
                t
            };
            members[c].remove(&u);
            members[target].insert(u);
            class_of[u] = target;
            if members[c].is_empty() {
                unlink(c, &mut prev, &mut next, &mut head);
            }
        }
    }
    order
}

/// Checks the left-neighborhood clique property in `O(n + m)` adjacency
/// probes: for each vertex it suffices that all other left neighbors are
/// adjacent to the latest left neighbor. Non-permutations are rejected.
pub fn verify_peo(g: &WeightedGraph, order: &[usize]) -> bool {
    let n = g.vertex_count();
    if !is_permutation(n, order) {
        return false;
    }
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    for &v in order {
        let mut latest: Option<usize> = None;
        for &u in g.neighbors(v) {
            if position[u] < position[v] {
                match latest {
                    None => latest = Some(u),
                    Some(l) if position[u] > position[l] => latest = Some(u),
                    _ => {}
                }
            }
        }
        let Some(l) = latest else { continue };
        for &u in g.neighbors(v) {
            if position[u] < position[l] && !g.has_edge(u, l) {
                return false;
            }
        }
    }
    true
}

/// Finds some induced cycle of length at least four, if one exists.
///
/// For every vertex `v` with two non-adjacent neighbors `u`, `w`, a shortest
/// `u`-`w` path avoiding the rest of `N[v]` closes an induced cycle through
/// `v`; scanning all such triples finds a cycle in every non-chordal graph
/// because any induced cycle contains such a triple.
pub fn find_induced_long_cycle(g: &WeightedGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    for v in 0..n {
        let nb = g.neighbors(v);
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                if g.has_edge(u, w) {
                    continue;
                }
                let mut blocked = vec![false; n];
                blocked[v] = true;
                for &x in nb {
                    if x != u && x != w {
                        blocked[x] = true;
                    }
                }
                if let Some(path) = shortest_path(g, u, w, &blocked) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    debug_assert!(is_induced_cycle(g, &cycle));
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn shortest_path(
    g: &WeightedGraph,
    from: usize,
    to: usize,
    blocked: &[bool],
) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    parent[from] = from;
    queue.push_back(from);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &y in g.neighbors(x) {
            if !blocked[y] && parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    None
}

/// True when `cycle` lists (in cyclic order) an induced cycle of length >= 4.
pub fn is_induced_cycle(g: &WeightedGraph, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    if !cycle.iter().all(|&v| seen.insert(v)) {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if g.has_edge(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// Tests chordality. Returns a perfect elimination order on success and an
/// induced cycle of length at least four otherwise.
pub fn recognize_chordal(g: &WeightedGraph) -> Result<PerfectEliminationOrder, NotChordal> {
    let order = lex_bfs(g);
    if verify_peo(g, &order) {
        return Ok(PerfectEliminationOrder::from_order(order));
    }
    let cycle = find_induced_long_cycle(g)
        .expect("a failed elimination check implies an induced long cycle");
    Err(NotChordal { induced_cycle: cycle })
}

/// Size of the largest clique, read off the elimination order: every maximal
/// clique consists of some vertex together with its earlier neighbors.
pub fn clique_number(g: &WeightedGraph, peo: &PerfectEliminationOrder) -> usize {
    peo.order()
        .iter()
        .map(|&v| peo.left_neighbors(g, v).len() + 1)
        .max()
        .unwrap_or(0)
}

/// Colors vertices in PEO order with the smallest color absent from the
/// already-colored neighborhood. On chordal graphs this uses exactly as many
/// colors as the largest clique.
pub fn greedy_color(g: &WeightedGraph, peo: &PerfectEliminationOrder) -> Coloring {
    let n = g.vertex_count();
    let mut colors = vec![0usize; n];
    let mut used = Vec::new();
    for &v in peo.order() {
        let left: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| peo.position(u) < peo.position(v))
            .collect();
        used.clear();
        used.resize(left.len() + 2, false);
        for &u in &left {
            if colors[u] < used.len() {
                used[colors[u]] = true;
            }
        }
        colors[v] = (1..used.len()).find(|&c| !used[c]).unwrap_or(1);
    }
    Coloring::new(g, colors).expect("greedy coloring over a PEO is proper")
}

/// Exact maximum-weight independent set on a chordal graph.
///
/// Runs the residual-weight sweep over the reversed PEO: a vertex whose
/// residual weight is positive becomes a candidate and its residual is
/// charged to its left neighbors (a clique). A reverse greedy pass over the
/// candidates then picks an independent set whose weight matches the
/// accumulated charge, which certifies optimality. The result is extended to
/// a maximal independent set so zero-weight vertices are still usable; this
/// cannot change the weight of an optimum.
pub fn max_weight_independent_set(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
) -> Vec<usize> {
    let n = g.vertex_count();
    let mut residual: Vec<f64> = (0..n).map(|v| g.weight(v)).collect();
    let mut marked = Vec::new();
    for &v in peo.order().iter().rev() {
        let slack = residual[v];
        if slack > 0.0 {
            marked.push(v);
            for &u in g.neighbors(v) {
                if peo.position(u) < peo.position(v) {
                    residual[u] -= slack;
                }
            }
        }
    }
    let mut chosen = vec![false; n];
    for &v in marked.iter().rev() {
        if !g.neighbors(v).iter().any(|&u| chosen[u]) {
            chosen[v] = true;
        }
    }
    // Maximal extension; only zero-weight vertices can still be independent.
    for v in 0..n {
        if !chosen[v] && !g.neighbors(v).iter().any(|&u| chosen[u]) {
            debug_assert!(g.weight(v) == 0.0);
            chosen[v] = true;
        }
    }
    (0..n).filter(|&v| chosen[v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perms(n: usize) -> Vec<Vec<usize>> {
        fn go(cur: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest.is_empty() {
                out.push(cur.clone());
                return;
            }
            for i in 0..rest.len() {
                let v = rest.remove(i);
                cur.push(v);
                go(cur, rest, out);
                cur.pop();
                rest.insert(i, v);
            }
        }
        let mut out = Vec::new();
        go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
        out
    }

    #[test]
    fn path_orders_respect_the_left_convention() {
        // Earlier neighbors must form a clique: the middle vertex may sit
        // anywhere except last, where both path ends precede it.
        let g = WeightedGraph::path(3);
        assert!(verify_peo(&g, &[1, 0, 2]));
        assert!(verify_peo(&g, &[0, 1, 2]));
        assert!(!verify_peo(&g, &[0, 2, 1]));
        assert!(!verify_peo(&g, &[2, 0, 1]));
    }

    #[test]
    fn every_order_of_c4_fails() {
        let g = WeightedGraph::cycle(4);
        for order in perms(4) {
            assert!(!verify_peo(&g, &order), "order {order:?} verified on C4");
        }
    }

    #[test]
    fn non_permutations_are_rejected() {
        let g = WeightedGraph::path(3);
        assert!(!verify_peo(&g, &[0, 1]));
        assert!(!verify_peo(&g, &[0, 1, 1]));
        assert!(!verify_peo(&g, &[0, 1, 3]));
    }

    #[test]
    fn lex_bfs_visits_every_vertex_once() {
        let g = WeightedGraph::cycle(5);
        let order = lex_bfs(&g);
        assert!(is_permutation(5, &order));
        assert!(lex_bfs(&WeightedGraph::new(0)).is_empty());
    }

    #[test]
    fn lex_bfs_order_verifies_on_chordal_inputs() {
        let g = WeightedGraph::complete(3);
        assert!(verify_peo(&g, &lex_bfs(&g)));
        let path = WeightedGraph::path(3);
        assert!(verify_peo(&path, &lex_bfs(&path)));
        // Triangle with a pendant vertex.
        let mut g = WeightedGraph::complete(3);
        let mut h = WeightedGraph::new(4);
        for (u, v) in g.edges() {
            h.add_edge(u, v).unwrap();
        }
        h.add_edge(0, 3).unwrap();
        g = h;
        assert!(verify_peo(&g, &lex_bfs(&g)));
    }

    #[test]
    fn lex_bfs_fails_verification_on_c4() {
        let g = WeightedGraph::cycle(4);
        assert!(!verify_peo(&g, &lex_bfs(&g)));
    }

    #[test]
    fn recognize_accepts_interval_like_graph() {
        // Two triangles sharing an edge: chordal.
        let g =
            WeightedGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let peo = recognize_chordal(&g).unwrap();
        assert!(verify_peo(&g, peo.order()));
    }

    #[test]
    fn recognize_certifies_c5() {
        let g = WeightedGraph::cycle(5);
        let err = recognize_chordal(&g).unwrap_err();
        assert_eq!(err.induced_cycle.len(), 5);
        assert!(is_induced_cycle(&g, &err.induced_cycle));
    }

    #[test]
    fn recognize_certifies_c4_inside_larger_graph() {
        // C4 plus an apex adjacent to one cycle vertex.
        let g =
            WeightedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let err = recognize_chordal(&g).unwrap_err();
        assert_eq!(err.induced_cycle.len(), 4);
        assert!(is_induced_cycle(&g, &err.induced_cycle));
    }

    #[test]
    fn recognize_handles_trivial_graphs() {
        assert!(recognize_chordal(&WeightedGraph::new(0)).is_ok());
        assert!(recognize_chordal(&WeightedGraph::new(5)).is_ok());
    }

    #[test]
    fn peo_constructor_validates() {
        let g = WeightedGraph::path(3);
        assert!(PerfectEliminationOrder::new(&g, vec![1, 0, 2]).is_ok());
        assert_eq!(
            PerfectEliminationOrder::new(&g, vec![0, 0, 2]),
            Err(PeoError::NotPermutation)
        );
        let c4 = WeightedGraph::cycle(4);
        assert_eq!(
            PerfectEliminationOrder::new(&c4, vec![0, 1, 2, 3]),
            Err(PeoError::NotEliminationOrder)
        );
    }

    #[test]
    fn greedy_color_uses_clique_number_colors() {
        let g = WeightedGraph::complete(4);
        let peo = recognize_chordal(&g).unwrap();
        assert_eq!(greedy_color(&g, &peo).max_color(), 4);

        let g = WeightedGraph::path(3);
        let peo = recognize_chordal(&g).unwrap();
        assert_eq!(greedy_color(&g, &peo).max_color(), 2);

        // Star K_{1,5}.
        let mut g = WeightedGraph::new(6);
        for leaf in 1..6 {
            g.add_edge(0, leaf).unwrap();
        }
        let peo = recognize_chordal(&g).unwrap();
        assert_eq!(greedy_color(&g, &peo).max_color(), 2);
    }

    #[test]
    fn mwis_prefers_heavy_middle_vertex() {
        let mut g = WeightedGraph::path(3);
        g.set_weight(1, 5.0).unwrap();
        let peo = recognize_chordal(&g).unwrap();
        assert_eq!(max_weight_independent_set(&g, &peo), vec![1]);
    }

    #[test]
    fn mwis_unit_path_takes_endpoints() {
        let g = WeightedGraph::path(3);
        let peo = recognize_chordal(&g).unwrap();
        assert_eq!(max_weight_independent_set(&g, &peo), vec![0, 2]);
    }

    #[test]
    fn mwis_on_clique_is_single_vertex() {
        let g = WeightedGraph::complete(3);
        let peo = recognize_chordal(&g).unwrap();
        assert_eq!(max_weight_independent_set(&g, &peo).len(), 1);
    }

    #[test]
    fn mwis_extends_to_maximal_with_zero_weights() {
        let mut g = WeightedGraph::path(4);
        for v in 0..4 {
            g.set_weight(v, 0.0).unwrap();
        }
        let peo = recognize_chordal(&g).unwrap();
        let is = max_weight_independent_set(&g, &peo);
        assert!(!is.is_empty());
        for (i, &u) in is.iter().enumerate() {
            for &v in &is[i + 1..] {
                assert!(!g.has_edge(u, v));
            }
        }
    }
}
