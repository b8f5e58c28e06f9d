//! Subcommand implementations and shared plumbing.

mod bench;
mod gen;
mod mkcs;
mod msc;
mod oracle;
mod recognize;

use std::fs;
use std::path::{Path, PathBuf};

use sumcolor::chordal::NotChordal;
use sumcolor::graph::parse_graph;
use sumcolor::WeightedGraph;

use crate::args::{Cli, Command};
use crate::Failure;

/// The global flags, separated from the subcommand so both can move freely.
pub struct Globals {
    pub seed: u64,
    pub json: bool,
    pub dump_lp: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    let Cli {
        seed,
        json,
        dump_lp,
        command,
    } = cli;
    let g = Globals { seed, json, dump_lp };
    match command {
        Command::Recognize { file } => recognize::run(&g, &file),
        Command::Mkcs {
            file,
            k,
            epsilon,
            method,
        } => mkcs::run(&g, &file, k, epsilon, method),
        Command::Msc {
            file,
            epsilon,
            method,
            c,
        } => msc::run(&g, &file, epsilon, method, c),
        Command::Oracle { what } => oracle::run(&g, &what),
        Command::Gen {
            family,
            n,
            param,
            weights,
            out,
        } => gen::run(&g, family, n, param, &weights, &out),
        Command::Bench {
            specs,
            algorithms,
            out,
        } => bench::run(&g, &specs, &algorithms, out.as_deref()),
    }
}

/// Reads and parses a graph file; both failure modes are usage errors.
pub fn load_graph(path: &Path) -> Result<WeightedGraph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text)
        .map_err(|e| Failure::Usage(format!("{}:{}: {}", path.display(), e.line, e.message)))
}

/// Prints a not-chordal certificate (text or JSON) and returns the negative
/// decision.
pub fn report_not_chordal(json: bool, cert: &NotChordal) -> Failure {
    let cycle: Vec<usize> = cert.induced_cycle.iter().map(|&v| v + 1).collect();
    if json {
        let doc = serde_json::json!({ "chordal": false, "induced_cycle": cycle });
        println!("{}", serde_json::to_string_pretty(&doc).expect("static shape"));
    } else {
        println!("chordal: false");
        println!("induced_cycle: {}", join_ids(&cycle));
    }
    Failure::Negative
}

/// Space-joins already-1-based ids.
pub fn join_ids(ids: &[usize]) -> String {
    ids.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

/// Writes a dump file when `--dump-lp` was given; warns when the command
/// solved no linear program.
pub fn handle_dump_lp(g: &Globals, lp_text: Option<String>) -> Result<(), Failure> {
    let Some(path) = &g.dump_lp else {
        return Ok(());
    };
    match lp_text {
        Some(text) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            eprintln!("warning: this command solved no linear program; nothing dumped");
            Ok(())
        }
    }
}
