use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oslcm_core::{MedianRule, SearchBudget, TieBreak};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "oslcm",
    version,
    about = "One-sided local crossing minimization on two-layer networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Compute an order with the median heuristic, the exact search, or both.
    Solve(SolveArgs),
    /// Decide whether some order has local crossing number at most k.
    Decide(DecideArgs),
    /// Evaluate a given order.
    Eval(EvalArgs),
    /// Compare heuristic and exact values on a seeded batch of random instances.
    VerifyApprox(VerifyApproxArgs),
    /// Draw an instance as SVG.
    Render(RenderArgs),
    /// Time the counting, heuristic and exact routines.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Median,
    Exact,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    #[value(name = "heuristicA")]
    HeuristicA,
    Floor,
    Ceil,
}

impl Rule {
    pub fn to_core(self) -> MedianRule {
        match self {
            Rule::HeuristicA => MedianRule::HeuristicA,
            Rule::Floor => MedianRule::FloorGeneric,
            Rule::Ceil => MedianRule::CeilGeneric,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::HeuristicA => "heuristicA",
            Rule::Floor => "floor",
            Rule::Ceil => "ceil",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieBreakArg {
    Paper,
    EwOddFirst,
}

impl TieBreakArg {
    pub fn to_core(self) -> TieBreak {
        match self {
            TieBreakArg::Paper => TieBreak::Paper,
            TieBreakArg::EwOddFirst => TieBreak::EwOddFirst,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TieBreakArg::Paper => "paper",
            TieBreakArg::EwOddFirst => "ew-odd-first",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct HeuristicArgs {
    /// Which neighbor becomes the median.
    #[arg(long, value_enum, default_value_t = Rule::HeuristicA)]
    pub rule: Rule,
    /// Ordering of vertices that share a median.
    #[arg(long = "tie-break", value_enum, default_value_t = TieBreakArg::Paper)]
    pub tie_break: TieBreakArg,
}

#[derive(Debug, Clone, Default, Args)]
pub struct BudgetArgs {
    /// Stop the exact search after this many nodes.
    #[arg(long)]
    pub budget_nodes: Option<u64>,
    /// Stop the exact search after this many seconds.
    #[arg(long)]
    pub budget_seconds: Option<f64>,
}

impl BudgetArgs {
    pub fn budget(&self) -> Result<SearchBudget, CliError> {
        let time_limit = match self.budget_seconds {
            None => None,
            Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
            Some(s) => {
                return Err(CliError::Usage(format!(
                    "--budget-seconds must be positive, got {s}"
                )))
            }
        };
        if self.budget_nodes == Some(0) {
            return Err(CliError::Usage("--budget-nodes must be positive".into()));
        }
        Ok(SearchBudget {
            max_nodes: self.budget_nodes,
            time_limit,
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct OrderSource {
    /// Order file: one free vertex id (file numbering) per line.
    #[arg(long, conflicts_with = "order_list")]
    pub order: Option<PathBuf>,
    /// Inline order, e.g. `5,4,6`.
    #[arg(long)]
    pub order_list: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Instance output path (stdout if omitted).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// JSON sidecar with parameters and the vertex name map.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// The family whose heuristic value is three times its parameter.
    Tightness {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Reduction from a 3-Partition instance given as a file of integers.
    Hardness {
        s_file: PathBuf,
        /// Reject inputs that violate the strong-hardness assumptions.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Seeded random instance.
    Random {
        #[arg(long)]
        x_count: u32,
        #[arg(long)]
        y_count: u32,
        #[arg(long, default_value_t = 1)]
        min_degree: u32,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Algo::Median)]
    pub algo: Algo,
    #[command(flatten)]
    pub heuristic: HeuristicArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// Include per-edge crossing counts.
    #[arg(long)]
    pub profile: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the best order found as an order file.
    #[arg(long)]
    pub order_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub k: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub instance: PathBuf,
    #[command(flatten)]
    pub order: OrderSource,
    #[arg(long)]
    pub profile: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyApproxArgs {
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 12)]
    pub max_x: u32,
    #[arg(long, default_value_t = 7)]
    pub max_y: u32,
    #[arg(long, default_value_t = 6)]
    pub max_degree: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Append the tightness instance for this parameter (repeatable).
    #[arg(long)]
    pub tightness: Vec<u32>,
    #[command(flatten)]
    pub heuristic: HeuristicArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// CSV output path (stdout if omitted).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Where instances with ratio above 3 are written.
    #[arg(long, default_value = ".")]
    pub dump_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub instance: PathBuf,
    /// Order to draw; the heuristic order if omitted.
    #[command(flatten)]
    pub order: OrderSource,
    #[command(flatten)]
    pub heuristic: HeuristicArgs,
    /// SVG output path (stdout if omitted).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Instance to time; a random instance is generated if omitted.
    pub instance: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    pub x_count: u32,
    #[arg(long, default_value_t = 220_000)]
    pub y_count: u32,
    #[arg(long, default_value_t = 1)]
    pub min_degree: u32,
    #[arg(long, default_value_t = 9)]
    pub max_degree: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub repeat: u32,
    /// Skip the quadratic counter above this many edges.
    #[arg(long, default_value_t = 20_000)]
    pub oracle_limit: usize,
    /// Run the exact search only up to this many free vertices.
    #[arg(long, default_value_t = 12)]
    pub exact_limit: u32,
    #[command(flatten)]
    pub heuristic: HeuristicArgs,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}
