//! Batch harness: runs sum-coloring algorithms over generated instances and
//! tabulates objectives against the relaxation lower bound and, on instances
//! small enough for exhaustive search, the true optimum.

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sumcolor::chordal::recognize_chordal;
use sumcolor::cliquetree::build_clique_tree;
use sumcolor::gen::{generate, GenSpec};
use sumcolor::mkcs::DpBudget;
use sumcolor::msc::{
    coverage_concat_msc, greedy_msc_4approx, msc_approx, optimal_c, solve_config_lp,
    ChordalLevelOracle, LevelOracle,
};
use sumcolor::{Coloring, WeightedGraph};

use super::gen::{family_name, parse_family, parse_weights};
use super::Globals;
use crate::args::{BenchAlgorithm, FamilyArg};
use crate::fmt::{fmt9, sig9};
use crate::Failure;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InstanceMeta {
    /// The spec string itself; doubles as the canonical sort key.
    pub id: String,
    /// Path for instances read from disk; generated instances have none.
    pub file: Option<String>,
    pub family: String,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AlgoMeta {
    pub id: String,
    pub params: serde_json::Value,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RunRecord {
    pub instance: InstanceMeta,
    pub algorithm: AlgoMeta,
    /// Recomputed from the emitted coloring, never copied from the algorithm.
    pub objective: Option<f64>,
    /// Relaxation cost; present only when every level was priced exactly, so
    /// it is a true lower bound.
    pub lp_bound: Option<f64>,
    pub ratio_vs_lp: Option<f64>,
    /// Exhaustive-search optimum when the instance fits the oracle budget.
    pub oracle_value: Option<f64>,
    pub ratio_vs_oracle: Option<f64>,
    pub wall_ms: f64,
    pub iterations: usize,
    pub columns_generated: usize,
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Aggregate {
    pub algorithm: String,
    pub runs: usize,
    pub failures: usize,
    pub ratio_vs_lp_mean: Option<f64>,
    pub ratio_vs_lp_max: Option<f64>,
    pub ratio_vs_oracle_mean: Option<f64>,
    pub ratio_vs_oracle_max: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub records: Vec<RunRecord>,
    pub aggregates: Vec<Aggregate>,
}

struct Instance {
    meta: InstanceMeta,
    graph: WeightedGraph,
    lp_bound: Option<f64>,
    oracle_value: Option<f64>,
}

struct AlgoOutput {
    coloring: Coloring,
    iterations: usize,
    columns_generated: usize,
}

pub fn run(
    g: &Globals,
    specs: &[String],
    algorithms: &[BenchAlgorithm],
    out: Option<&Path>,
) -> Result<(), Failure> {
    super::handle_dump_lp(g, None)?;
    let mut algos: Vec<BenchAlgorithm> = algorithms.to_vec();
    algos.sort_by_key(|a| a.id());
    algos.dedup();

    let mut spec_strings: Vec<String> = specs.to_vec();
    spec_strings.sort();
    spec_strings.dedup();

    let coverage_c = optimal_c(1.0, 1.0)
        .map_err(|e| Failure::Internal(format!("ratio optimizer: {e}")))?
        .0;

    let mut records: Vec<RunRecord> = Vec::new();
    for spec_string in &spec_strings {
        let instance = prepare_instance(spec_string)?;
        for &algo in &algos {
            records.push(run_one(&instance, algo, coverage_c)?);
        }
    }
    // Canonical order: instance id, then algorithm id. Specs and algorithms
    // were sorted going in, so this is already true; keep the sort as the
    // written guarantee.
    records.sort_by(|a, b| {
        (a.instance.id.as_str(), a.algorithm.id.as_str())
            .cmp(&(b.instance.id.as_str(), b.algorithm.id.as_str()))
    });

    let aggregates = aggregate(&records, &algos);
    let report = Report {
        records,
        aggregates,
    };

    let rendered = serde_json::to_string_pretty(&report)
        .map_err(|e| Failure::Internal(format!("report serialization failed: {e}")))?;
    if let Some(path) = out {
        fs::write(path, &rendered)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if g.json {
        println!("{rendered}");
    } else {
        print_table(&report);
    }
    Ok(())
}

/// Parses `family:n:param:weights:seed`; the weights token may itself carry
/// one colon (uniform:MAX, exp:CAP), so the seed is taken from the end.
fn parse_spec(text: &str) -> Result<GenSpec, Failure> {
    let bad = |why: &str| {
        Failure::Usage(format!(
            "bad spec {text:?} ({why}); expected family:n:param:weights:seed"
        ))
    };
    let tokens: Vec<&str> = text.split(':').collect();
    if tokens.len() < 5 || tokens.len() > 6 {
        return Err(bad("wrong number of fields"));
    }
    let family = match tokens[0] {
        "ktree" => FamilyArg::Ktree,
        "interval" => FamilyArg::Interval,
        "subtree" => FamilyArg::Subtree,
        other => return Err(bad(&format!("unknown family {other:?}"))),
    };
    let n: usize = tokens[1].parse().map_err(|_| bad("bad vertex count"))?;
    let param: f64 = tokens[2].parse().map_err(|_| bad("bad family parameter"))?;
    let weights = tokens[3..tokens.len() - 1].join(":");
    let seed: u64 = tokens[tokens.len() - 1]
        .parse()
        .map_err(|_| bad("bad seed"))?;
    Ok(GenSpec {
        family: parse_family(family, param)?,
        n,
        weights: parse_weights(&weights)?,
        seed,
    })
}

fn prepare_instance(spec_string: &str) -> Result<Instance, Failure> {
    let spec = parse_spec(spec_string)?;
    let graph = generate(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
    let peo = recognize_chordal(&graph).map_err(|_| {
        Failure::Internal(format!("generated instance {spec_string:?} is not chordal"))
    })?;
    let n = graph.vertex_count();

    // The relaxation cost lower-bounds every coloring only under exact
    // pricing; otherwise no bound is recorded.
    let rep = build_clique_tree(&graph, &peo);
    let budget = DpBudget {
        max_k: n,
        max_vertices: n.max(60),
        max_states: 2_000_000,
    };
    let mut oracle = ChordalLevelOracle::new(&graph, &peo, &rep, budget);
    let rho = oracle.rho();
    let lp_bound = if oracle.is_exact() {
        let sol = solve_config_lp(&graph, &peo, &mut oracle, rho, 1.0)
            .map_err(|e| Failure::Internal(format!("bound relaxation failed: {e}")))?;
        Some(sol.cost())
    } else {
        None
    };
    let oracle_value = sumcolor::oracle::brute_msc(&graph)
        .ok()
        .map(|c| c.objective());

    Ok(Instance {
        meta: InstanceMeta {
            id: spec_string.to_string(),
            file: None,
            family: family_name(&spec.family).to_string(),
            n,
            m: graph.edge_count(),
            seed: spec.seed,
        },
        graph,
        lp_bound,
        oracle_value,
    })
}

fn run_one(
    instance: &Instance,
    algo: BenchAlgorithm,
    coverage_c: f64,
) -> Result<RunRecord, Failure> {
    let graph = &instance.graph;
    let started = Instant::now();
    let outcome: Result<Result<AlgoOutput, String>, _> =
        panic::catch_unwind(AssertUnwindSafe(|| execute(graph, algo, coverage_c)));
    let wall_ms = sig9(started.elapsed().as_secs_f64() * 1e3);

    let params = match algo {
        BenchAlgorithm::Lp => serde_json::json!({ "epsilon": 0.1 }),
        BenchAlgorithm::Greedy4 => serde_json::json!({}),
        BenchAlgorithm::CoverageConcat => serde_json::json!({ "c": sig9(coverage_c) }),
    };
    let mut record = RunRecord {
        instance: instance.meta.clone(),
        algorithm: AlgoMeta {
            id: algo.id().to_string(),
            params,
        },
        objective: None,
        lp_bound: instance.lp_bound.map(sig9),
        ratio_vs_lp: None,
        oracle_value: instance.oracle_value.map(sig9),
        ratio_vs_oracle: None,
        wall_ms,
        iterations: 0,
        columns_generated: 0,
        error: None,
    };

    let output = match outcome {
        Ok(Ok(output)) => output,
        Ok(Err(message)) => {
            record.error = Some(message);
            return Ok(record);
        }
        Err(_) => {
            record.error = Some("panicked; see stderr".to_string());
            return Ok(record);
        }
    };

    // Trust nothing the algorithm reported: recompute the objective from the
    // emitted coloring (the type already enforced properness) and abort on
    // any disagreement or impossible ratio.
    let objective = super::msc::checked_objective(graph, &output.coloring)?;
    record.objective = Some(sig9(objective));
    record.iterations = output.iterations;
    record.columns_generated = output.columns_generated;
    if let Some(bound) = instance.lp_bound {
        if bound > 0.0 {
            let ratio = objective / bound;
            if ratio < 1.0 - 1e-9 {
                return Err(Failure::Internal(format!(
                    "{} on {}: objective {objective} beat the exact lower bound {bound}",
                    algo.id(),
                    instance.meta.id
                )));
            }
            record.ratio_vs_lp = Some(sig9(ratio));
        }
    }
    if let Some(opt) = instance.oracle_value {
        if opt > 0.0 {
            let ratio = objective / opt;
            if ratio < 1.0 - 1e-9 {
                return Err(Failure::Internal(format!(
                    "{} on {}: objective {objective} beat the optimum {opt}",
                    algo.id(),
                    instance.meta.id
                )));
            }
            record.ratio_vs_oracle = Some(sig9(ratio));
        }
    }
    Ok(record)
}

fn execute(
    graph: &WeightedGraph,
    algo: BenchAlgorithm,
    coverage_c: f64,
) -> Result<AlgoOutput, String> {
    match algo {
        BenchAlgorithm::Lp => match msc_approx(graph, 0.1) {
            Ok(outcome) => Ok(AlgoOutput {
                coloring: outcome.coloring,
                iterations: outcome.iterations,
                columns_generated: outcome.columns_generated,
            }),
            Err(e) => Err(format!("not chordal: {e}")),
        },
        BenchAlgorithm::Greedy4 => {
            let peo = recognize_chordal(graph).map_err(|e| format!("not chordal: {e}"))?;
            Ok(AlgoOutput {
                coloring: greedy_msc_4approx(graph, &peo),
                iterations: 0,
                columns_generated: 0,
            })
        }
        BenchAlgorithm::CoverageConcat => {
            let peo = recognize_chordal(graph).map_err(|e| format!("not chordal: {e}"))?;
            match coverage_concat_msc(graph, &peo, coverage_c) {
                Ok(coloring) => Ok(AlgoOutput {
                    coloring,
                    iterations: 0,
                    columns_generated: 0,
                }),
                Err(e) => Err(format!("coverage blocks failed: {e}")),
            }
        }
    }
}

fn aggregate(records: &[RunRecord], algos: &[BenchAlgorithm]) -> Vec<Aggregate> {
    algos
        .iter()
        .map(|algo| {
            let rows: Vec<&RunRecord> = records
                .iter()
                .filter(|r| r.algorithm.id == algo.id())
                .collect();
            let failures = rows.iter().filter(|r| r.error.is_some()).count();
            let stats = |pick: fn(&RunRecord) -> Option<f64>| {
                let values: Vec<f64> = rows.iter().filter_map(|r| pick(r)).collect();
                if values.is_empty() {
                    (None, None)
                } else {
                    let mean = values.iter().sum::<f64>() / values.len() as f64;
                    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                    (Some(sig9(mean)), Some(sig9(max)))
                }
            };
            let (lp_mean, lp_max) = stats(|r| r.ratio_vs_lp);
            let (oracle_mean, oracle_max) = stats(|r| r.ratio_vs_oracle);
            Aggregate {
                algorithm: algo.id().to_string(),
                runs: rows.len(),
                failures,
                ratio_vs_lp_mean: lp_mean,
                ratio_vs_lp_max: lp_max,
                ratio_vs_oracle_mean: oracle_mean,
                ratio_vs_oracle_max: oracle_max,
            }
        })
        .collect()
}

fn print_table(report: &Report) {
    let headers = [
        "instance",
        "algorithm",
        "objective",
        "lp_bound",
        "ratio_lp",
        "ratio_opt",
        "wall_ms",
        "error",
    ];
    let cell = |x: &Option<f64>| x.map_or("-".to_string(), fmt9);
    let rows: Vec<[String; 8]> = report
        .records
        .iter()
        .map(|r| {
            [
                r.instance.id.clone(),
                r.algorithm.id.clone(),
                cell(&r.objective),
                cell(&r.lp_bound),
                cell(&r.ratio_vs_lp),
                cell(&r.ratio_vs_oracle),
                fmt9(r.wall_ms),
                r.error.clone().unwrap_or_else(|| "-".to_string()),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let print_row = |cells: &[String]| {
        let line: Vec<String> = cells
            .iter()
            .zip(widths.iter().copied())
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        println!("{}", line.join("  ").trim_end());
    };
    print_row(&headers.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in &rows {
        print_row(row);
    }
    if report.records.is_empty() {
        println!("(no runs)");
    }
    println!();
    for agg in &report.aggregates {
        println!(
            "{}: runs {}, failures {}, ratio_vs_lp mean {} max {}, ratio_vs_oracle mean {} max {}",
            agg.algorithm,
            agg.runs,
            agg.failures,
            agg.ratio_vs_lp_mean.map_or("-".to_string(), fmt9),
            agg.ratio_vs_lp_max.map_or("-".to_string(), fmt9),
            agg.ratio_vs_oracle_mean.map_or("-".to_string(), fmt9),
            agg.ratio_vs_oracle_max.map_or("-".to_string(), fmt9),
        );
    }
}
