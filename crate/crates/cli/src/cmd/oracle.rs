//! Exhaustive reference answers on small instances.

use sumcolor::oracle::{brute_mkcs, brute_msc, is_k_colorable};

use super::msc::checked_objective;
use super::{handle_dump_lp, join_ids, load_graph, Globals};
use crate::args::OracleWhat;
use crate::fmt::{fmt9, sig9};
use crate::Failure;

pub fn run(g: &Globals, what: &OracleWhat) -> Result<(), Failure> {
    handle_dump_lp(g, None)?;
    match what {
        OracleWhat::Msc { file } => {
            let graph = load_graph(file)?;
            let coloring = brute_msc(&graph)
                .map_err(|e| Failure::Usage(format!("oracle refused: {e}")))?;
            let objective = checked_objective(&graph, &coloring)?;
            if g.json {
                let mut colors = serde_json::Map::new();
                for v in 0..graph.vertex_count() {
                    colors.insert((v + 1).to_string(), coloring.color(v).into());
                }
                let doc = serde_json::json!({
                    "oracle": "msc",
                    "objective": sig9(objective),
                    "colors": colors,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("static shape"));
            } else {
                println!("oracle: msc");
                println!("objective: {}", fmt9(objective));
                println!("colors: {}", join_ids(coloring.colors()));
            }
            Ok(())
        }
        OracleWhat::Mkcs { file, k } => {
            if *k == 0 {
                return Err(Failure::Usage("--k must be at least 1".into()));
            }
            let graph = load_graph(file)?;
            let result = brute_mkcs(&graph, *k)
                .map_err(|e| Failure::Usage(format!("oracle refused: {e}")))?;
            let selected: Vec<usize> = result.selected().iter().map(|&v| v + 1).collect();
            if g.json {
                let doc = serde_json::json!({
                    "oracle": "mkcs",
                    "k": k,
                    "weight": sig9(result.weight()),
                    "selected": selected,
                    "witness_colors": result.witness_colors(),
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("static shape"));
            } else {
                println!("oracle: mkcs");
                println!("k: {k}");
                println!("weight: {}", fmt9(result.weight()));
                println!("selected: {}", join_ids(&selected));
                println!("witness_colors: {}", join_ids(result.witness_colors()));
            }
            Ok(())
        }
        OracleWhat::Kcolor { file, k } => {
            if *k == 0 {
                return Err(Failure::Usage("--k must be at least 1".into()));
            }
            let graph = load_graph(file)?;
            let colorable = is_k_colorable(&graph, *k)
                .map_err(|e| Failure::Usage(format!("oracle refused: {e}")))?;
            if g.json {
                let doc = serde_json::json!({ "oracle": "kcolor", "k": k, "k_colorable": colorable });
                println!("{}", serde_json::to_string_pretty(&doc).expect("static shape"));
            } else {
                println!("oracle: kcolor");
                println!("k: {k}");
                println!("k_colorable: {colorable}");
            }
            if colorable {
                Ok(())
            } else {
                Err(Failure::Negative)
            }
        }
    }
}
