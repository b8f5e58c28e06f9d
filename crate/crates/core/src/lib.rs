//! Approximation algorithms for two coloring problems on vertex-weighted
//! chordal graphs:
//!
//! * **Maximum k-colorable subgraph** (`mkcs`): find a heaviest vertex set
//!   whose induced subgraph can be properly colored with `k` colors.
//! * **Minimum sum coloring** (`msc`): properly color every vertex with a
//!   positive integer so that the weighted sum of assigned colors is minimal.
//!
//! The building blocks are split into focused modules:
//!
//! * [`graph`]: weighted graphs, proper colorings, and a small text format.
//! * [`chordal`]: lexicographic BFS, perfect elimination orders, chordality
//!   recognition with induced-cycle certificates, greedy coloring, and exact
//!   maximum-weight independent sets.
//! * [`cliquetree`]: clique-tree (subtree intersection) representations with
//!   maximum degree three.
//! * [`lp`]: a self-contained primal simplex solver and a column-generation
//!   driver.
//! * [`mkcs`]: the k-colorable-subgraph LP, randomized and derandomized
//!   rounding, an exact clique-tree dynamic program, and greedy baselines.
//! * [`msc`]: the configuration LP solved by column generation, geometric
//!   color-schedule rounding (randomized and derandomized), and baselines.
//! * [`oracle`]: exact brute-force solvers used as ground truth in tests.
//! * [`gen`]: seeded random chordal instance generators.

pub mod chordal;
pub mod cliquetree;
pub mod gen;
pub mod graph;
pub mod lp;
pub mod mkcs;
pub mod msc;
pub mod oracle;

pub use chordal::PerfectEliminationOrder;
pub use cliquetree::CliqueTreeRepresentation;
pub use graph::{Coloring, WeightedGraph};
