//! Randomized cross-module properties: every structural guarantee that the
//! unit tests check pointwise is re-checked here over generated inputs.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sumcolor::chordal::{
    clique_number, greedy_color, max_weight_independent_set, recognize_chordal, verify_peo,
};
use sumcolor::cliquetree::build_clique_tree;
use sumcolor::gen::{generate, generate_interval, Family, GenSpec, WeightModel};
use sumcolor::graph::{parse_graph, write_graph};
use sumcolor::mkcs::{round_mkcs, solve_kcolor_lp};
use sumcolor::msc::{
    msc_round, msc_round_derandomized, solve_config_lp_enumerated, GeometricSchedule,
};
use sumcolor::oracle::{brute_mkcs, brute_msc};
use sumcolor::WeightedGraph;

fn family_from(selector: usize) -> Family {
    match selector % 6 {
        0 => Family::KTree { k: 1 },
        1 => Family::KTree { k: 2 },
        2 => Family::KTree { k: 3 },
        3 => Family::Interval { density: 0.3 },
        4 => Family::Interval { density: 0.9 },
        _ => Family::SubtreeIntersection { max_subtree: 3 },
    }
}

fn weights_from(selector: usize) -> WeightModel {
    match selector % 3 {
        0 => WeightModel::Unit,
        1 => WeightModel::UniformInt { max: 9 },
        _ => WeightModel::ExponentialLike { cap_exponent: 4 },
    }
}

fn chordal_instance(family_sel: usize, n: usize, weight_sel: usize, seed: u64) -> WeightedGraph {
    generate(&GenSpec {
        family: family_from(family_sel),
        n,
        weights: weights_from(weight_sel),
        seed,
    })
    .expect("parameters are valid")
}

/// Arbitrary (not necessarily chordal) graph from an edge bitmask.
fn graph_from_mask(n: usize, mask: u64) -> WeightedGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    WeightedGraph::from_edges(n, &edges).expect("indices in range")
}

/// Whether some subset of vertices induces a chordless cycle of length >= 4:
/// in the induced subgraph every vertex has degree exactly 2, the edge count
/// equals the vertex count, and it is connected.
fn has_induced_long_cycle(g: &WeightedGraph) -> bool {
    let n = g.vertex_count();
    'subsets: for mask in 0u64..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if s.len() < 4 {
            continue;
        }
        let mut edges = 0;
        for (i, &u) in s.iter().enumerate() {
            let mut deg = 0;
            for (j, &v) in s.iter().enumerate() {
                if i != j && g.has_edge(u, v) {
                    deg += 1;
                }
            }
            if deg != 2 {
                continue 'subsets;
            }
            edges += deg;
        }
        if edges / 2 != s.len() {
            continue;
        }
        // Degrees all 2 and |E| = |S|: connected iff a single cycle.
        let mut seen = vec![false; s.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = stack.pop() {
            for (j, &v) in s.iter().enumerate() {
                if !seen[j] && g.has_edge(s[i], v) {
                    seen[j] = true;
                    reached += 1;
                    stack.push(j);
                }
            }
        }
        if reached == s.len() {
            return true;
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Recognition agrees with exhaustive induced-cycle search, and rejection
    // certificates are genuine chordless cycles of the input.
    #[test]
    fn recognition_agrees_with_subset_search(n in 2usize..=10, mask in any::<u64>()) {
        let g = graph_from_mask(n, mask);
        match recognize_chordal(&g) {
            Ok(peo) => {
                prop_assert!(!has_induced_long_cycle(&g));
                prop_assert!(verify_peo(&g, peo.order()));
            }
            Err(cert) => {
                prop_assert!(has_induced_long_cycle(&g));
                let cycle = &cert.induced_cycle;
                prop_assert!(cycle.len() >= 4);
                for (i, &u) in cycle.iter().enumerate() {
                    for (j, &v) in cycle.iter().enumerate().skip(i + 1) {
                        let consecutive =
                            j == i + 1 || (i == 0 && j == cycle.len() - 1);
                        prop_assert_eq!(
                            g.has_edge(u, v),
                            consecutive,
                            "certificate is not chordless at ({}, {})", u, v
                        );
                    }
                }
            }
        }
    }

    // Maximum-weight independent set agrees with subset enumeration.
    #[test]
    fn independent_set_matches_enumeration(
        family_sel in 0usize..6,
        n in 2usize..=12,
        weight_sel in 0usize..3,
        seed in 0u64..10_000,
    ) {
        let g = chordal_instance(family_sel, n, weight_sel, seed);
        let peo = recognize_chordal(&g).unwrap();
        let picked = max_weight_independent_set(&g, &peo);
        for (i, &u) in picked.iter().enumerate() {
            for &v in picked.iter().skip(i + 1) {
                prop_assert!(!g.has_edge(u, v), "returned set is not independent");
            }
        }
        let picked_weight: f64 = picked.iter().map(|&v| g.weight(v)).sum();
        let mut best = 0.0f64;
        'subsets: for mask in 0u64..(1 << n) {
            let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            for (i, &u) in s.iter().enumerate() {
                for &v in s.iter().skip(i + 1) {
                    if g.has_edge(u, v) {
                        continue 'subsets;
                    }
                }
            }
            best = best.max(s.iter().map(|&v| g.weight(v)).sum());
        }
        prop_assert!((picked_weight - best).abs() <= 1e-9 * (1.0 + best));
    }
}

proptest! {
    // Greedy coloring along the elimination order is optimal on chordal
    // graphs: its color count equals the clique number, which in turn equals
    // the largest clique-tree bag.
    #[test]
    fn greedy_coloring_is_optimal_on_chordal_graphs(
        family_sel in 0usize..6,
        n in 1usize..=40,
        weight_sel in 0usize..3,
        seed in 0u64..10_000,
    ) {
        let g = chordal_instance(family_sel, n, weight_sel, seed);
        let peo = recognize_chordal(&g).unwrap();
        let omega = clique_number(&g, &peo);
        let rep = build_clique_tree(&g, &peo);
        prop_assert_eq!(rep.max_bag_size(), omega);
        prop_assert_eq!(greedy_color(&g, &peo).max_color(), omega);
    }

    // The clique tree is a valid subtree representation: adjacency equals
    // subtree intersection, checked pairwise.
    #[test]
    fn clique_tree_subtrees_encode_adjacency(
        family_sel in 0usize..6,
        n in 1usize..=25,
        seed in 0u64..10_000,
    ) {
        let g = chordal_instance(family_sel, n, 0, seed);
        let peo = recognize_chordal(&g).unwrap();
        let rep = build_clique_tree(&g, &peo);
        prop_assert!(rep.validate(&g).is_ok());
        for u in 0..n {
            for v in u + 1..n {
                let intersects = rep
                    .subtree(u)
                    .iter()
                    .any(|t| rep.subtree(v).contains(t));
                prop_assert_eq!(g.has_edge(u, v), intersects);
            }
        }
    }

    // After the rounding sweep, every selected vertex keeps at most k-1
    // selected earlier neighbors, so the selection is k-colorable greedily.
    #[test]
    fn rounding_sweep_respects_the_color_budget(
        family_sel in 0usize..6,
        n in 2usize..=20,
        weight_sel in 0usize..3,
        seed in 0u64..10_000,
        k in 1usize..=5,
        f in 0.0f64..=1.0,
    ) {
        let g = chordal_instance(family_sel, n, weight_sel, seed);
        let peo = recognize_chordal(&g).unwrap();
        let lp = solve_kcolor_lp(&g, &peo, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let result = round_mkcs(&g, &peo, &lp, k, f, &mut rng);
        for &v in result.selected() {
            let earlier_selected = peo
                .left_neighbors(&g, v)
                .iter()
                .filter(|&&u| result.contains(u))
                .count();
            prop_assert!(earlier_selected <= k - 1);
        }
        prop_assert!(result.witness_colors().iter().all(|&c| (1..=k).contains(&c)));
    }

    // A rounded sum coloring never uses more colors than the sum of block
    // widths over the schedule's block bound.
    #[test]
    fn block_rounding_stays_within_its_budget(
        family_sel in 0usize..6,
        n in 1usize..=5,
        weight_sel in 0usize..3,
        seed in 0u64..10_000,
        c in 1.3f64..6.0,
        offset_frac in 0.0f64..1.0,
    ) {
        let g = chordal_instance(family_sel, n, weight_sel, seed);
        let sol = solve_config_lp_enumerated(&g, 1.0, 1.0).unwrap();
        let h = 1.0 + offset_frac * (c - 1.0) * 0.999;
        let sched = GeometricSchedule::with_offset(c, h).unwrap();
        let peo = recognize_chordal(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coloring = msc_round(&g, &peo, &sol, &sched, 1.0, 1.0, &mut rng).unwrap();
        let budget: usize = (0..sched.blocks(n)).map(|j| sched.level(j, n)).sum();
        prop_assert!(coloring.max_color() <= budget);
    }

    // Full-budget subset search takes every vertex; with unit weights the
    // sum-coloring optimum is at least the cost of coloring one omega-clique.
    #[test]
    fn oracle_invariants_hold(
        family_sel in 0usize..6,
        n in 1usize..=8,
        seed in 0u64..10_000,
    ) {
        let g = chordal_instance(family_sel, n, 0, seed);
        let full = brute_mkcs(&g, n).unwrap();
        prop_assert_eq!(full.selected().len(), n);

        let peo = recognize_chordal(&g).unwrap();
        let omega = clique_number(&g, &peo);
        let msc = brute_msc(&g).unwrap();
        let clique_cost = (omega * (omega + 1) / 2) as f64;
        prop_assert!(msc.objective() >= clique_cost - 1e-9);

        // Determinism: a second call reproduces both answers bit for bit.
        let full_again = brute_mkcs(&g, n).unwrap();
        prop_assert_eq!(full_again.selected(), full.selected());
        let msc_again = brute_msc(&g).unwrap();
        prop_assert_eq!(msc_again.colors(), msc.colors());
    }

    // Generation is deterministic per spec, always chordal, and family
    // promises hold: k-trees reach clique number k+1, interval graphs equal
    // the intersection graph of their emitted segments.
    #[test]
    fn generator_keeps_its_promises(
        k in 1usize..=4,
        n in 1usize..=30,
        weight_sel in 0usize..3,
        seed in 0u64..10_000,
        density in 0.05f64..3.0,
    ) {
        let spec = GenSpec {
            family: Family::KTree { k },
            n,
            weights: weights_from(weight_sel),
            seed,
        };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        prop_assert_eq!(&a, &b);
        let peo = recognize_chordal(&a).unwrap();
        if n >= k + 1 {
            prop_assert_eq!(clique_number(&a, &peo), k + 1);
        }

        let ispec = GenSpec {
            family: Family::Interval { density },
            n,
            weights: WeightModel::Unit,
            seed,
        };
        let (ig, segments) = generate_interval(&ispec).unwrap();
        recognize_chordal(&ig).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                let (a0, a1) = segments[u];
                let (b0, b1) = segments[v];
                prop_assert_eq!(ig.has_edge(u, v), a0 <= b1 && b0 <= a1);
            }
        }
    }

    // The text format round-trips: parse(write(g)) reproduces the graph, and
    // a second write is byte-identical.
    #[test]
    fn graph_file_format_round_trips(
        family_sel in 0usize..6,
        n in 1usize..=20,
        weight_sel in 0usize..3,
        seed in 0u64..10_000,
    ) {
        let g = chordal_instance(family_sel, n, weight_sel, seed);
        let text = write_graph(&g);
        let parsed = parse_graph(&text).unwrap();
        prop_assert_eq!(&parsed, &g);
        prop_assert_eq!(write_graph(&parsed), text);
    }
}

/// The derandomized block rounding must not lose to random offsets and class
/// picks: its objective is at most the mean of ten thousand sampled runs.
#[test]
fn derandomized_rounding_dominates_the_sample_mean() {
    let instances = [
        chordal_instance(0, 4, 0, 11),
        chordal_instance(3, 6, 1, 12),
        chordal_instance(5, 5, 2, 13),
    ];
    for g in &instances {
        let peo = recognize_chordal(g).unwrap();
        let sol = solve_config_lp_enumerated(g, 1.0, 1.0).unwrap();
        let c = 3.0;
        let deterministic = msc_round_derandomized(g, &peo, &sol, c, 1.0, 1.0)
            .unwrap()
            .objective();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let runs = 10_000;
        let mut total = 0.0;
        for _ in 0..runs {
            let sched = GeometricSchedule::random(c, &mut rng).unwrap();
            total += msc_round(g, &peo, &sol, &sched, 1.0, 1.0, &mut rng)
                .unwrap()
                .objective();
        }
        let mean = total / runs as f64;
        assert!(
            deterministic <= mean + 1e-9,
            "derandomized {deterministic} above the sampled mean {mean}"
        );
    }
}
