//! Clique-tree (subtree intersection) representations of chordal graphs.
//!
//! Every chordal graph is the intersection graph of subtrees of a tree: each
//! vertex `v` owns a connected set of tree nodes `T_v`, two vertices are
//! adjacent exactly when their subtrees share a node, and the vertices whose
//! subtrees contain a fixed node form a clique (the node's *bag*). The tree
//! built here has at most `2n` nodes and maximum degree three, which keeps
//! dynamic programs over it to at most two children per node.

use crate::chordal::PerfectEliminationOrder;
use crate::graph::WeightedGraph;

/// Tree plus, for each vertex, the set of tree nodes its subtree occupies.
#[derive(Debug, Clone)]
pub struct CliqueTreeRepresentation {
    edges: Vec<(usize, usize)>,
    bags: Vec<Vec<usize>>,
    subtrees: Vec<Vec<usize>>,
}

impl CliqueTreeRepresentation {
    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    /// Tree edges as `(a, b)` pairs with `a < b`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Vertices whose subtree contains node `t`, in increasing order.
    pub fn bag(&self, t: usize) -> &[usize] {
        &self.bags[t]
    }

    /// Tree nodes occupied by vertex `v`, in increasing order.
    pub fn subtree(&self, v: usize) -> &[usize] {
        &self.subtrees[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.subtrees.len()
    }

    /// Size of the largest bag; equals the largest clique of the graph.
    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors_of(&self, t: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == t {
                out.push(b);
            } else if b == t {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    /// Checks every structural invariant against `g`. Intended for tests;
    /// quadratic in the graph size.
    pub fn validate(&self, g: &WeightedGraph) -> Result<(), String> {
        let t = self.node_count();
        if t == 0 {
            return Err("tree has no nodes".into());
        }
        if self.edges.len() + 1 != t {
            return Err(format!("{} edges for {} nodes", self.edges.len(), t));
        }
        // Connectivity (with the edge count above this also implies acyclicity).
        let mut seen = vec![false; t];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for b in self.neighbors_of(a) {
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err("tree is not connected".into());
        }
        let mut degree = vec![0usize; t];
        for &(a, b) in &self.edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        if let Some(node) = degree.iter().position(|&d| d > 3) {
            return Err(format!("node {node} has degree {}", degree[node]));
        }
        if self.subtrees.len() != g.vertex_count() {
            return Err("subtree count differs from vertex count".into());
        }
        // Bags and subtrees describe the same incidence.
        for (node, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if !self.subtrees[v].contains(&node) {
                    return Err(format!("vertex {v} missing node {node} in its subtree"));
                }
            }
        }
        for (v, sub) in self.subtrees.iter().enumerate() {
            if sub.is_empty() {
                return Err(format!("vertex {v} occupies no tree node"));
            }
            for &node in sub {
                if !self.bags[node].contains(&v) {
                    return Err(format!("node {node} bag misses vertex {v}"));
                }
            }
            // Subtree connectivity.
            let mut inside = vec![false; t];
            for &node in sub {
                inside[node] = true;
            }
            let mut seen = vec![false; t];
            let mut stack = vec![sub[0]];
            seen[sub[0]] = true;
            let mut count = 1;
            while let Some(a) = stack.pop() {
                for b in self.neighbors_of(a) {
                    if inside[b] && !seen[b] {
                        seen[b] = true;
                        count += 1;
                        stack.push(b);
                    }
                }
            }
            if count != sub.len() {
                return Err(format!("subtree of vertex {v} is disconnected"));
            }
        }
        // Intersection property.
        let n = g.vertex_count();
        for u in 0..n {
            for v in u + 1..n {
                let meet = self.subtrees[u]
                    .iter()
                    .any(|node| self.subtrees[v].binary_search(node).is_ok());
                if meet != g.has_edge(u, v) {
                    return Err(format!(
                        "subtree intersection of {u},{v} disagrees with adjacency"
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Builds a maximum-degree-three clique tree from a perfect elimination
/// order.
///
/// The maximal cliques are collected from the left-neighborhood candidates,
/// joined by a maximum-intersection spanning tree (components of a
/// disconnected graph are chained afterwards), and nodes of degree above
/// three are split into chains of copies sharing the same bag.
pub fn build_clique_tree(
    g: &WeightedGraph,
    peo: &PerfectEliminationOrder,
) -> CliqueTreeRepresentation {
    let n = g.vertex_count();

    let mut cliques: Vec<Vec<usize>> = Vec::new();
    for &v in peo.order() {
        let mut cand = peo.left_neighbors(g, v);
        cand.push(v);
        cand.sort_unstable();
        cliques.push(cand);
    }
    cliques.sort();
    cliques.dedup();
    let maximal: Vec<Vec<usize>> = cliques
        .iter()
        .filter(|c| {
            !cliques
                .iter()
                .any(|d| d.len() > c.len() && is_subset(c, d))
        })
        .cloned()
        .collect();
    let cliques = if maximal.is_empty() {
        vec![Vec::new()] // n == 0: a single empty bag keeps the tree nonempty
    } else {
        maximal
    };
    let t = cliques.len();

    // Maximum-weight spanning forest of the clique intersection graph, then
    // chain the remaining components together.
    let mut weighted_pairs = Vec::new();
    for a in 0..t {
        for b in a + 1..t {
            let w = intersection_size(&cliques[a], &cliques[b]);
            if w > 0 {
                weighted_pairs.push((w, a, b));
            }
        }
    }
    weighted_pairs.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut parent: Vec<usize> = (0..t).collect();
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut edges = Vec::new();
    for (_, a, b) in weighted_pairs {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            edges.push((a, b));
        }
    }
    let mut reps = Vec::new();
    for a in 0..t {
        if find(&mut parent, a) == a {
            reps.push(a);
        }
    }
    for pair in reps.windows(2) {
        let (ra, rb) = (find(&mut parent, pair[0]), find(&mut parent, pair[1]));
        if ra != rb {
            parent[ra] = rb;
            edges.push((pair[0], pair[1]));
        }
    }

    let mut bags = cliques;
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); bags.len()];
    for &(a, b) in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }

    // Split every node of degree above three into a chain of bag copies.
    let mut node = 0;
    while node < bags.len() {
        if adjacency[node].len() > 3 {
            let copy = bags.len();
            bags.push(bags[node].clone());
            // Keep two tree neighbors plus the link to the copy; the copy
            // inherits everything else and may itself be split next.
            let moved: Vec<usize> = adjacency[node].split_off(2);
            for &nb in &moved {
                let slot = adjacency[nb].iter().position(|&x| x == node).unwrap();
                adjacency[nb][slot] = copy;
            }
            adjacency.push(moved);
            adjacency[copy].push(node);
            adjacency[node].push(copy);
        } else {
            node += 1;
        }
    }

    let mut edges = Vec::new();
    for a in 0..adjacency.len() {
        for &b in &adjacency[a] {
            if a < b {
                edges.push((a, b));
            }
        }
    }
    edges.sort_unstable();

    let mut subtrees: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (node, bag) in bags.iter().enumerate() {
        for &v in bag {
            subtrees[v].push(node);
        }
    }
    for sub in &mut subtrees {
        sub.sort_unstable();
    }

    let rep = CliqueTreeRepresentation {
        edges,
        bags,
        subtrees,
    };
    debug_assert!(rep.validate(g).is_ok(), "{:?}", rep.validate(g));
    rep
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    a.iter().all(|x| it.any(|y| y == x))
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}
