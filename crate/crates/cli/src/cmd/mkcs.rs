//! Maximum-weight k-colorable subgraph: exact, rounded, PTAS, and greedy.

use std::path::Path;

use sumcolor::chordal::recognize_chordal;
use sumcolor::cliquetree::build_clique_tree;
use sumcolor::mkcs::{
    exact_mkcs_dp, greedy_max_coverage_mkcs, kcolor_program, mkcs_ptas, round_mkcs_derandomized,
    solve_kcolor_lp, MkcsResult,
};
use sumcolor::WeightedGraph;

use super::{handle_dump_lp, join_ids, load_graph, report_not_chordal, Globals};
use crate::args::MkcsMethod;
use crate::fmt::{fmt9, sig9};
use crate::Failure;

pub fn run(
    g: &Globals,
    file: &Path,
    k: usize,
    epsilon: f64,
    method: MkcsMethod,
) -> Result<(), Failure> {
    if k == 0 {
        return Err(Failure::Usage("--k must be at least 1".into()));
    }
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Failure::Usage(format!(
            "--epsilon {epsilon} outside (0, 1]"
        )));
    }
    let graph = load_graph(file)?;
    let peo = match recognize_chordal(&graph) {
        Ok(peo) => peo,
        Err(cert) => return Err(report_not_chordal(g.json, &cert)),
    };

    let mut lp_value: Option<f64> = None;
    let result: MkcsResult = match method {
        MkcsMethod::Exact => {
            let rep = build_clique_tree(&graph, &peo);
            exact_mkcs_dp(&rep, k, graph.weights())
                .map_err(|e| Failure::Usage(format!("exact method refused: {e}")))?
        }
        MkcsMethod::LpRound => {
            let lp = solve_kcolor_lp(&graph, &peo, k);
            lp_value = Some(lp.objective());
            handle_dump_lp(g, Some(kcolor_program(&graph, &peo, k).to_lp_format()))?;
            round_mkcs_derandomized(&graph, &peo, &lp, k)
        }
        MkcsMethod::Ptas => match mkcs_ptas(&graph, k, epsilon) {
            Ok(r) => r,
            Err(cert) => return Err(report_not_chordal(g.json, &cert)),
        },
        MkcsMethod::Greedy => greedy_max_coverage_mkcs(&graph, &peo, k),
    };
    if method != MkcsMethod::LpRound {
        handle_dump_lp(g, None)?;
    }
    check_weight(&graph, &result)?;

    let selected: Vec<usize> = result.selected().iter().map(|&v| v + 1).collect();
    if g.json {
        let mut doc = serde_json::Map::new();
        doc.insert("method".into(), method.id().into());
        doc.insert("k".into(), k.into());
        doc.insert("weight".into(), sig9(result.weight()).into());
        doc.insert("selected".into(), selected.clone().into());
        doc.insert(
            "witness_colors".into(),
            result.witness_colors().to_vec().into(),
        );
        if let Some(v) = lp_value {
            doc.insert("lp_value".into(), sig9(v).into());
            doc.insert(
                "rounding_guarantee".into(),
                sig9(1.0 - 2.0 * (k as f64).powf(-1.0 / 3.0)).into(),
            );
        }
        println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::Value::Object(doc)).expect("static shape")
        );
    } else {
        println!("method: {}", method.id());
        println!("k: {k}");
        println!("weight: {}", fmt9(result.weight()));
        println!("selected: {}", join_ids(&selected));
        println!("witness_colors: {}", join_ids(result.witness_colors()));
        if let Some(v) = lp_value {
            println!("lp_value: {}", fmt9(v));
            println!(
                "rounding_guarantee: {}",
                fmt9(1.0 - 2.0 * (k as f64).powf(-1.0 / 3.0))
            );
        }
    }
    Ok(())
}

/// Recomputes the reported weight from the selected set before anything is
/// trusted downstream.
fn check_weight(graph: &WeightedGraph, result: &MkcsResult) -> Result<(), Failure> {
    let recomputed: f64 = result.selected().iter().map(|&v| graph.weight(v)).sum();
    if (recomputed - result.weight()).abs() > 1e-9 * (1.0 + recomputed.abs()) {
        return Err(Failure::Internal(format!(
            "reported weight {} disagrees with the selected set's weight {recomputed}",
            result.weight()
        )));
    }
    Ok(())
}
