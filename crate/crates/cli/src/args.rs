//! Command-line surface. Vertex ids in all output are 1-based, matching the
//! graph file format.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "sumcolor",
    version,
    about = "Approximation algorithms for minimum sum coloring and maximum \
             k-colorable subgraphs on vertex-weighted chordal graphs",
    after_help = "Exit codes: 0 success, 1 negative decision (not chordal / not \
                  k-colorable), 2 usage or parse error, 3 internal invariant \
                  violation."
)]
pub struct Cli {
    /// Seed for randomized components (generation; the approximation
    /// pipelines are deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the linear program the command solves to this path, in a
    /// standard text LP format. Ignored with a warning when the command
    /// solves no linear program.
    #[arg(long, global = true, value_name = "PATH")]
    pub dump_lp: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Decide chordality; print a perfect elimination order or an induced
    /// cycle of length at least four. Exit 1 when the graph is not chordal.
    Recognize {
        /// Graph file (p/w/e format, 1-based vertex ids).
        file: PathBuf,
    },

    /// Maximum-weight induced subgraph colorable with k colors.
    Mkcs {
        file: PathBuf,

        /// Number of colors available.
        #[arg(long)]
        k: usize,

        /// Accuracy parameter in (0, 1]; only the ptas method reads it.
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,

        #[arg(long, value_enum, default_value_t = MkcsMethod::Ptas)]
        method: MkcsMethod,
    },

    /// Approximate minimum sum coloring: minimize the weighted sum of
    /// assigned color indices over proper colorings.
    Msc {
        file: PathBuf,

        /// Tolerated per-level pricing loss in (0, 1); the realized loss is
        /// reported in the output.
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,

        #[arg(long, value_enum, default_value_t = MscMethod::Lp)]
        method: MscMethod,

        /// Override the geometric schedule growth factor (default: the
        /// minimizer of the analytic ratio).
        #[arg(long)]
        c: Option<f64>,
    },

    /// Exact reference answers by exhaustive search; refuses instances over
    /// the built-in size budget.
    Oracle {
        #[command(subcommand)]
        what: OracleWhat,
    },

    /// Generate a random vertex-weighted chordal instance; writes the graph
    /// file and a JSON sidecar recording the generator spec.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,

        /// Number of vertices.
        #[arg(long)]
        n: usize,

        /// Family parameter: clique size for ktree, density in (0, 100] for
        /// interval, maximum subtree size for subtree.
        #[arg(long)]
        param: f64,

        /// Weight model: unit, uniform:<MAX>, or exp:<CAP_EXPONENT>.
        #[arg(long, default_value = "unit")]
        weights: String,

        /// Output graph file; the sidecar lands at <PATH>.json.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },

    /// Run sum-coloring algorithms over generated instances and tabulate
    /// objectives and ratios against the relaxation lower bound (plus the
    /// exact optimum where the instance is small enough).
    Bench {
        /// Instance spec family:n:param:weights:seed, e.g.
        /// ktree:12:2:uniform:10:7 (repeatable).
        #[arg(long = "spec", value_name = "SPEC")]
        specs: Vec<String>,

        /// Algorithms to run.
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "lp,greedy4,coverage-concat"
        )]
        algorithms: Vec<BenchAlgorithm>,

        /// Write the full JSON report here in addition to the table.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum OracleWhat {
    /// Exact minimum sum coloring.
    Msc { file: PathBuf },
    /// Exact maximum-weight k-colorable subgraph.
    Mkcs {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// k-colorability decision; exit 1 when not k-colorable.
    Kcolor {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MkcsMethod {
    /// Clique-tree dynamic program, exact within its budget.
    Exact,
    /// Fractional relaxation plus derandomized rounding.
    LpRound,
    /// (1-epsilon)-approximation dispatcher.
    Ptas,
    /// Greedy maximum-coverage baseline.
    Greedy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MscMethod {
    /// Column-generation relaxation plus derandomized geometric rounding.
    Lp,
    /// Iterated maximum-weight independent sets (4-approximation).
    Greedy4,
    /// Greedy coverage blocks along a geometric schedule.
    CoverageConcat,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum BenchAlgorithm {
    Lp,
    Greedy4,
    CoverageConcat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Ktree,
    Interval,
    Subtree,
}

impl MkcsMethod {
    pub fn id(self) -> &'static str {
        match self {
            MkcsMethod::Exact => "exact",
            MkcsMethod::LpRound => "lp-round",
            MkcsMethod::Ptas => "ptas",
            MkcsMethod::Greedy => "greedy",
        }
    }
}

impl MscMethod {
    pub fn id(self) -> &'static str {
        match self {
            MscMethod::Lp => "lp",
            MscMethod::Greedy4 => "greedy4",
            MscMethod::CoverageConcat => "coverage-concat",
        }
    }
}

impl BenchAlgorithm {
    pub fn id(self) -> &'static str {
        match self {
            BenchAlgorithm::Lp => "lp",
            BenchAlgorithm::Greedy4 => "greedy4",
            BenchAlgorithm::CoverageConcat => "coverage-concat",
        }
    }
}
