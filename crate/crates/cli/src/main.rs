mod commands;
mod output;
mod pool;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oritree::embed::DEFAULT_FALLBACK_BUDGET;
use oritree::lab::{HostConstraint, HostSource, TreeKind};
use oritree::{EmbedMode, FourCycleType};

use output::Format;

/// Exit statuses shared by every subcommand.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INPUT: u8 = 1;
    pub const NOT_EMBEDDED: u8 = 2;
    pub const VIOLATION: u8 = 3;
}

#[derive(Parser, Debug)]
#[command(name = "oritree", version, about = "Embed oriented trees into digraphs without oriented 4-cycles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree statistics and 4-cycle classification of a digraph file.
    Stats {
        digraph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the hypotheses of a mode on a tree and a host.
    Check {
        tree: PathBuf,
        digraph: PathBuf,
        #[arg(long, default_value = "general")]
        mode: EmbedMode,
        #[command(flatten)]
        common: Common,
    },
    /// Embed a tree into a host and report the certificate.
    Embed(EmbedArgs),
    /// Run the embedder over hypothesis-satisfying families and count outcomes.
    Verify(VerifyArgs),
    /// Search restricted host families for trees the oracle cannot embed.
    Explore(ExploreArgs),
    /// Write an instance file.
    Generate(GenerateArgs),
    /// Peel a digraph to pseudo-semidegree k/2.
    Peel(PeelArgs),
    /// Enumerate all oriented trees with k arcs.
    Catalog {
        #[arg(long)]
        k: usize,
        /// Directory for one tree file per entry plus index.json.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
pub struct EmbedArgs {
    pub tree: PathBuf,
    pub digraph: PathBuf,
    #[arg(long, default_value = "general")]
    pub mode: EmbedMode,
    /// Node budget for the backtracking fallback and the oracle.
    #[arg(long, default_value_t = DEFAULT_FALLBACK_BUDGET)]
    pub budget: u64,
    /// Settle failures with the exhaustive oracle.
    #[arg(long)]
    pub oracle: bool,
    /// Treat any backtracking under satisfied hypotheses as a violation.
    #[arg(long)]
    pub assert_constructive: bool,
    /// Write the full report (certificate included) as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum TreeSource {
    Random,
    Catalog,
    Paths,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value = "general")]
    pub mode: EmbedMode,
    #[arg(long)]
    pub k: usize,
    /// Number of trials; with catalog trees, the number of catalog entries used.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, value_enum, default_value = "random")]
    pub trees: TreeSource,
    #[arg(long, default_value_t = DEFAULT_FALLBACK_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub assert_constructive: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Problem {
    ForbiddenFamily,
    K2s,
    Girth,
}

#[derive(Args, Debug)]
pub struct ExploreArgs {
    #[arg(value_enum)]
    pub problem: Problem,
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    /// Host order for sampled hosts.
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    /// 4-cycle classes to forbid (forbidden_family).
    #[arg(long, value_delimiter = ',', default_value = "directed")]
    pub forbid: Vec<FourCycleType>,
    /// Part size of the forbidden K_{2,s} (k2s).
    #[arg(long, default_value_t = 3)]
    pub s: usize,
    /// Girth must exceed 2*ell (girth).
    #[arg(long, default_value_t = 2)]
    pub ell: usize,
    #[arg(long, default_value = "random")]
    pub hosts: HostSource,
    #[arg(long, default_value_t = 2_000_000)]
    pub budget: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Kind {
    TwoClique,
    Blowup,
    Girth6,
    RandomDigraph,
    RandomTree,
    Spider,
    Complete,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub k: Option<usize>,
    /// Clique size for two_clique; defaults to floor(k/2) - 1.
    #[arg(long)]
    pub clique: Option<usize>,
    #[arg(long)]
    pub len: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    /// girth6: orient the incidence graph instead of using digons.
    #[arg(long)]
    pub oriented: bool,
    /// girth6 --oriented: point 0 gets all arcs pointing out.
    #[arg(long)]
    pub hub: bool,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, default_value = "none")]
    pub constraint: HostConstraint,
    #[arg(long, default_value = "any")]
    pub tree_kind: TreeKind,
    /// Spider leg lengths; defaults to three balanced legs of total k.
    #[arg(long, value_delimiter = ',')]
    pub legs: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct PeelArgs {
    pub digraph: PathBuf,
    /// Threshold k/2.
    #[arg(long)]
    pub k: usize,
    /// Peeled digraph file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON trace file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::INPUT } else { exit::OK });
        }
    };
    let result = match cli.command {
        Command::Stats { digraph, common } => commands::stats::run(&digraph, &common),
        Command::Check { tree, digraph, mode, common } => commands::embed::check(&tree, &digraph, mode, &common),
        Command::Embed(args) => commands::embed::run(&args),
        Command::Verify(args) => commands::verify::run(&args),
        Command::Explore(args) => commands::explore::run(&args),
        Command::Generate(args) => commands::generate::run(&args),
        Command::Peel(args) => commands::peel::run(&args),
        Command::Catalog { k, out, common } => commands::catalog::run(k, out.as_deref(), &common),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit::INPUT)
        }
    }
}
