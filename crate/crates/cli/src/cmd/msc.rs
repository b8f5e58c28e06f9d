//! Minimum sum coloring: relaxation pipeline plus the two baselines.

use std::path::Path;

use sumcolor::chordal::recognize_chordal;
use sumcolor::cliquetree::build_clique_tree;
use sumcolor::mkcs::DpBudget;
use sumcolor::msc::{
    coverage_concat_msc, greedy_msc_4approx, msc_round_derandomized, optimal_c, ratio_bound,
    restricted_master_program, solve_config_lp, ChordalLevelOracle, LevelOracle, MscError,
};
use sumcolor::{Coloring, WeightedGraph};

use super::{handle_dump_lp, join_ids, load_graph, report_not_chordal, Globals};
use crate::args::MscMethod;
use crate::fmt::{fmt9, sig9};
use crate::Failure;

pub fn run(
    g: &Globals,
    file: &Path,
    epsilon: f64,
    method: MscMethod,
    c_override: Option<f64>,
) -> Result<(), Failure> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Failure::Usage(format!("--epsilon {epsilon} outside (0, 1)")));
    }
    if method == MscMethod::Greedy4 && c_override.is_some() {
        eprintln!("warning: greedy4 uses no schedule; --c ignored");
    }
    let graph = load_graph(file)?;
    let peo = match recognize_chordal(&graph) {
        Ok(peo) => peo,
        Err(cert) => return Err(report_not_chordal(g.json, &cert)),
    };
    let n = graph.vertex_count();

    // Fields the lp method fills in; baselines leave them empty.
    let mut lp_cost: Option<f64> = None;
    let mut rho: Option<f64> = None;
    let mut c_used: Option<f64> = None;
    let mut analytic_ratio: Option<f64> = None;
    let mut iterations = 0usize;
    let mut columns_generated = 0usize;

    let coloring: Coloring = match method {
        MscMethod::Lp => {
            if n == 0 {
                handle_dump_lp(g, None)?;
                Coloring::new(&graph, Vec::new()).expect("empty coloring")
            } else {
                let rep = build_clique_tree(&graph, &peo);
                let budget = DpBudget {
                    max_k: n,
                    max_vertices: n.max(60),
                    max_states: 2_000_000,
                };
                let mut oracle = ChordalLevelOracle::new(&graph, &peo, &rep, budget);
                let r = oracle.rho();
                let c = match c_override {
                    Some(c) => c,
                    None => {
                        optimal_c(r, 1.0)
                            .map_err(|e| Failure::Internal(format!("ratio optimizer: {e}")))?
                            .0
                    }
                };
                let ratio = ratio_bound(r, 1.0, c)
                    .map_err(|e| Failure::Usage(format!("--c {c} rejected: {e}")))?;
                let sol = solve_config_lp(&graph, &peo, &mut oracle, r, 1.0)
                    .map_err(|e| Failure::Internal(format!("relaxation failed: {e}")))?;
                handle_dump_lp(g, Some(restricted_master_program(&graph, &sol).to_lp_format()))?;
                let colored = msc_round_derandomized(&graph, &peo, &sol, c, r, 1.0)
                    .map_err(|e| Failure::Internal(format!("rounding failed: {e}")))?;
                lp_cost = Some(sol.cost());
                rho = Some(r);
                c_used = Some(c);
                analytic_ratio = Some(ratio);
                iterations = sol.cg_rounds();
                columns_generated = sol.generated_columns();
                colored
            }
        }
        MscMethod::Greedy4 => {
            handle_dump_lp(g, None)?;
            greedy_msc_4approx(&graph, &peo)
        }
        MscMethod::CoverageConcat => {
            handle_dump_lp(g, None)?;
            let c = match c_override {
                Some(c) => c,
                None => {
                    optimal_c(1.0, 1.0)
                        .map_err(|e| Failure::Internal(format!("ratio optimizer: {e}")))?
                        .0
                }
            };
            c_used = Some(c);
            match coverage_concat_msc(&graph, &peo, c) {
                Ok(coloring) => coloring,
                Err(MscError::Domain(msg)) => {
                    return Err(Failure::Usage(format!("--c {c} rejected: {msg}")))
                }
                Err(e) => return Err(Failure::Internal(format!("coverage blocks failed: {e}"))),
            }
        }
    };

    let objective = checked_objective(&graph, &coloring)?;
    let bound_ratio_vs_lp = match lp_cost {
        Some(cost) if cost > 0.0 => {
            let ratio = objective / cost;
            if rho == Some(1.0) && ratio < 1.0 - 1e-9 {
                return Err(Failure::Internal(format!(
                    "objective {objective} beat the exact relaxation bound {cost}"
                )));
            }
            Some(ratio)
        }
        _ => None,
    };

    if g.json {
        let mut colors = serde_json::Map::new();
        for v in 0..n {
            colors.insert((v + 1).to_string(), coloring.color(v).into());
        }
        let mut doc = serde_json::Map::new();
        doc.insert("method".into(), method.id().into());
        doc.insert("objective".into(), sig9(objective).into());
        doc.insert("colors".into(), serde_json::Value::Object(colors));
        doc.insert("bound_ratio_vs_lp".into(), opt9(bound_ratio_vs_lp));
        doc.insert("iterations".into(), iterations.into());
        doc.insert("columns_generated".into(), columns_generated.into());
        doc.insert("lp_cost".into(), opt9(lp_cost));
        doc.insert("rho".into(), opt9(rho));
        doc.insert("c".into(), opt9(c_used));
        doc.insert("analytic_ratio".into(), opt9(analytic_ratio));
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::Value::Object(doc)).expect("static shape")
        );
    } else {
        println!("method: {}", method.id());
        println!("objective: {}", fmt9(objective));
        println!("colors: {}", join_ids(coloring.colors()));
        print_opt("bound_ratio_vs_lp", bound_ratio_vs_lp);
        println!("iterations: {iterations}");
        println!("columns_generated: {columns_generated}");
        print_opt("lp_cost", lp_cost);
        print_opt("rho", rho);
        print_opt("c", c_used);
        print_opt("analytic_ratio", analytic_ratio);
    }
    Ok(())
}

fn opt9(x: Option<f64>) -> serde_json::Value {
    match x {
        Some(v) => sig9(v).into(),
        None => serde_json::Value::Null,
    }
}

fn print_opt(label: &str, x: Option<f64>) {
    match x {
        Some(v) => println!("{label}: {}", fmt9(v)),
        None => println!("{label}: -"),
    }
}

/// Recomputes the objective from the emitted coloring; the `Coloring` type
/// already enforced properness.
pub fn checked_objective(graph: &WeightedGraph, coloring: &Coloring) -> Result<f64, Failure> {
    let recomputed: f64 = (0..graph.vertex_count())
        .map(|v| graph.weight(v) * coloring.color(v) as f64)
        .sum();
    if (recomputed - coloring.objective()).abs() > 1e-9 * (1.0 + recomputed.abs()) {
        return Err(Failure::Internal(format!(
            "reported objective {} disagrees with the coloring's cost {recomputed}",
            coloring.objective()
        )));
    }
    Ok(recomputed)
}
