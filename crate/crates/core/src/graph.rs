//! Vertex-weighted simple graphs, proper colorings, and a text file format.
//!
//! Vertices are dense indices `0..n`. Weights are nonnegative `f64` values;
//! instances that need exact arithmetic (oracle comparisons) use integral
//! weights, which `f64` sums represent exactly well past the sizes handled
//! here.
//!
//! The file format is line oriented and 1-indexed:
//!
//! ```text
//! c optional comment
//! p <n> <m>
//! w <vertex> <weight>
//! e <u> <v>
//! ```
//!
//! `w` lines are optional and default every weight to 1.

use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("negative weight {weight} for vertex {vertex}")]
    NegativeWeight { vertex: usize, weight: f64 },
}

/// Undirected simple graph with a nonnegative weight per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    adj: Vec<Vec<usize>>,
    weights: Vec<f64>,
    m: usize,
}

impl WeightedGraph {
    /// Creates an edgeless graph on `n` unit-weight vertices.
    pub fn new(n: usize) -> Self {
        WeightedGraph {
            adj: vec![Vec::new(); n],
            weights: vec![1.0; n],
            m: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = WeightedGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = WeightedGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Path `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        let mut g = WeightedGraph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v).unwrap();
        }
        g
    }

    /// Cycle `0 - 1 - ... - n-1 - 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = WeightedGraph::path(n);
        g.add_edge(n - 1, 0).unwrap();
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.adj.len() {
            return Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.adj.len(),
            });
        }
        Ok(())
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        if self.has_edge(u, v) {
            return Err(GraphError::DuplicateEdge { u, v });
        }
        let pos_u = self.adj[u].partition_point(|&w| w < v);
        self.adj[u].insert(pos_u, v);
        let pos_v = self.adj[v].partition_point(|&w| w < u);
        self.adj[v].insert(pos_v, u);
        self.m += 1;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.adj.len() || v >= self.adj.len() {
            return false;
        }
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn set_weight(&mut self, v: usize, w: f64) -> Result<(), GraphError> {
        self.check_vertex(v)?;
        if !(w >= 0.0) {
            return Err(GraphError::NegativeWeight { vertex: v, weight: w });
        }
        self.weights[v] = w;
        Ok(())
    }

    /// Returns a copy of the graph with all weights replaced.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self, GraphError> {
        assert_eq!(weights.len(), self.vertex_count(), "weight vector length");
        let mut g = self.clone();
        for (v, &w) in weights.iter().enumerate() {
            g.set_weight(v, w)?;
        }
        Ok(g)
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Edges as `(u, v)` pairs with `u < v`, lexicographically ordered.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.adj.len() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Induced subgraph on `vertices` (must be sorted and duplicate-free).
    /// Returns the subgraph and the map from new index to old index.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> (WeightedGraph, Vec<usize>) {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut back = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            back[v] = i;
        }
        let mut g = WeightedGraph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            g.weights[i] = self.weights[v];
            for &u in &self.adj[v] {
                if u > v && back[u] != usize::MAX {
                    g.add_edge(i, back[u]).unwrap();
                }
            }
        }
        (g, vertices.to_vec())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ColoringError {
    #[error("coloring has {got} entries for a graph with {expected} vertices")]
    LengthMismatch { got: usize, expected: usize },
    #[error("vertex {vertex} has color 0; colors start at 1")]
    ZeroColor { vertex: usize },
    #[error("edge {u}-{v} has both endpoints colored {color}")]
    Improper { u: usize, v: usize, color: usize },
}

/// A proper coloring with positive integer colors.
///
/// Construction validates properness, so holding a `Coloring` certifies it.
/// The objective is the weighted sum of assigned colors.
#[derive(Debug, Clone, PartialEq)]
pub struct Coloring {
    colors: Vec<usize>,
    objective: f64,
}

impl Coloring {
    pub fn new(g: &WeightedGraph, colors: Vec<usize>) -> Result<Self, ColoringError> {
        if colors.len() != g.vertex_count() {
            return Err(ColoringError::LengthMismatch {
                got: colors.len(),
                expected: g.vertex_count(),
            });
        }
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::ZeroColor { vertex: v });
        }
        for (u, v) in g.edges() {
            if colors[u] == colors[v] {
                return Err(ColoringError::Improper {
                    u,
                    v,
                    color: colors[u],
                });
            }
        }
        let objective = colors
            .iter()
            .enumerate()
            .map(|(v, &c)| g.weight(v) * c as f64)
            .sum();
        Ok(Coloring { colors, objective })
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Weighted sum of colors; 0 for the empty graph.
    pub fn objective(&self) -> f64 {
        self.objective
    }

    pub fn max_color(&self) -> usize {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// Vertices holding color `c`, in increasing order.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == c).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Parses the `p`/`w`/`e` text format described in the module docs.
pub fn parse_graph(input: &str) -> Result<WeightedGraph, ParseError> {
    let mut graph: Option<WeightedGraph> = None;
    let mut declared_edges = 0usize;
    let mut seen_edges = 0usize;
    for (idx, raw) in input.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let tag = tokens.next().unwrap();
        match tag {
            "p" => {
                if graph.is_some() {
                    return parse_err(lineno, "duplicate p line");
                }
                let n: usize = match tokens.next().map(str::parse) {
                    Some(Ok(n)) => n,
                    _ => return parse_err(lineno, "p line needs a vertex count"),
                };
                let m: usize = match tokens.next().map(str::parse) {
                    Some(Ok(m)) => m,
                    _ => return parse_err(lineno, "p line needs an edge count"),
                };
                if tokens.next().is_some() {
                    return parse_err(lineno, "trailing tokens on p line");
                }
                graph = Some(WeightedGraph::new(n));
                declared_edges = m;
            }
            "w" => {
                let g = match graph.as_mut() {
                    Some(g) => g,
                    None => return parse_err(lineno, "w line before p line"),
                };
                let v: usize = match tokens.next().map(str::parse) {
                    Some(Ok(v)) => v,
                    _ => return parse_err(lineno, "w line needs a vertex id"),
                };
                let w: f64 = match tokens.next().map(str::parse) {
                    Some(Ok(w)) => w,
                    _ => return parse_err(lineno, "w line needs a weight"),
                };
                if tokens.next().is_some() {
                    return parse_err(lineno, "trailing tokens on w line");
                }
                if v == 0 || v > g.vertex_count() {
                    return parse_err(lineno, format!("vertex {v} out of range"));
                }
                if let Err(e) = g.set_weight(v - 1, w) {
                    return parse_err(lineno, e.to_string());
                }
            }
            "e" => {
                let g = match graph.as_mut() {
                    Some(g) => g,
                    None => return parse_err(lineno, "e line before p line"),
                };
                let u: usize = match tokens.next().map(str::parse) {
                    Some(Ok(u)) => u,
                    _ => return parse_err(lineno, "e line needs two vertex ids"),
                };
                let v: usize = match tokens.next().map(str::parse) {
                    Some(Ok(v)) => v,
                    _ => return parse_err(lineno, "e line needs two vertex ids"),
                };
                if tokens.next().is_some() {
                    return parse_err(lineno, "trailing tokens on e line");
                }
                if u == 0 || u > g.vertex_count() || v == 0 || v > g.vertex_count() {
                    return parse_err(lineno, format!("edge {u}-{v} out of range"));
                }
                if let Err(e) = g.add_edge(u - 1, v - 1) {
                    return parse_err(lineno, e.to_string());
                }
                seen_edges += 1;
            }
            _ => return parse_err(lineno, format!("unknown line tag {tag:?}")),
        }
    }
    let g = match graph {
        Some(g) => g,
        None => return parse_err(0, "missing p line"),
    };
    if seen_edges != declared_edges {
        return parse_err(
            0,
            format!("p line declares {declared_edges} edges but {seen_edges} e lines found"),
        );
    }
    Ok(g)
}

/// Writes a graph in the format accepted by [`parse_graph`].
///
/// Weight lines are emitted only when some weight differs from 1.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p {} {}", g.vertex_count(), g.edge_count());
    if g.weights().iter().any(|&w| w != 1.0) {
        for v in 0..g.vertex_count() {
            let _ = writeln!(out, "w {} {}", v + 1, g.weight(v));
        }
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_and_query() {
        let g = WeightedGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.neighbors(1), &[0, 2]);
        assert_eq!(g.degree(1), 2);
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = WeightedGraph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(GraphError::SelfLoop { vertex: 1 }));
        g.add_edge(0, 1).unwrap();
        assert_eq!(
            g.add_edge(1, 0),
            Err(GraphError::DuplicateEdge { u: 1, v: 0 })
        );
        assert_eq!(
            g.add_edge(0, 3),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert!(g.set_weight(0, -1.0).is_err());
    }

    #[test]
    fn induced_subgraph_keeps_weights_and_edges() {
        let mut g = WeightedGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        g.set_weight(2, 7.0).unwrap();
        let (h, map) = g.induced_subgraph(&[1, 2, 4]);
        assert_eq!(map, vec![1, 2, 4]);
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 1);
        assert!(h.has_edge(0, 1));
        assert_eq!(h.weight(1), 7.0);
    }

    #[test]
    fn coloring_validates() {
        let g = WeightedGraph::path(3);
        assert!(Coloring::new(&g, vec![1, 2, 1]).is_ok());
        assert_eq!(
            Coloring::new(&g, vec![1, 1, 2]),
            Err(ColoringError::Improper { u: 0, v: 1, color: 1 })
        );
        assert_eq!(
            Coloring::new(&g, vec![1, 2]),
            Err(ColoringError::LengthMismatch { got: 2, expected: 3 })
        );
        assert_eq!(
            Coloring::new(&g, vec![0, 1, 2]),
            Err(ColoringError::ZeroColor { vertex: 0 })
        );
    }

    #[test]
    fn coloring_objective_weights_colors() {
        let mut g = WeightedGraph::path(3);
        g.set_weight(1, 5.0).unwrap();
        let c = Coloring::new(&g, vec![2, 1, 2]).unwrap();
        assert_eq!(c.objective(), 2.0 + 5.0 + 2.0);
        assert_eq!(c.max_color(), 2);
        assert_eq!(c.class(2), vec![0, 2]);
    }

    #[test]
    fn empty_graph_objective_is_zero() {
        let g = WeightedGraph::new(0);
        let c = Coloring::new(&g, vec![]).unwrap();
        assert_eq!(c.objective(), 0.0);
        assert_eq!(c.max_color(), 0);
    }

    #[test]
    fn parse_round_trip() {
        let text = "c demo\np 3 2\nw 2 4.5\ne 1 2\ne 2 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.weight(1), 4.5);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
        let emitted = write_graph(&g);
        let g2 = parse_graph(&emitted).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(parse_graph("e 1 2\n").is_err());
        assert!(parse_graph("p 2 1\n").is_err()); // declared edge missing
        assert!(parse_graph("p 2 1\ne 1 3\n").is_err());
        assert!(parse_graph("p 2 2\ne 1 2\ne 2 1\n").is_err()); // duplicate
        assert!(parse_graph("p 2 1\ne 1 1\n").is_err()); // self loop
        assert!(parse_graph("x 1\n").is_err());
        let err = parse_graph("p 2 1\nq 1 2\n").unwrap_err();
        assert_eq!(err.line, 2);
    }
}
