//! Batch front end: load an instance file, run one analysis, print one
//! certificate. Exit codes: 0 ok, 2 parse, 3 precondition, 4 input
//! semantics, 5 inconclusive.

mod commands;
mod error;
mod instance;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "tangles", version, about = "Separation systems: tangles, trees of tangles, and tangle-tree duality")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report system statistics and enumerate the tangles of a family.
    Analyze(RunArgs),
    /// Build a tree set distinguishing the tangles of a family.
    Tot(RunArgs),
    /// Decide between a tangle and a tree over a star family.
    Duality(RunArgs),
    /// Write a sample instance file.
    Gen(GenArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Instance file, or - for stdin.
    input: PathBuf,
    /// Tangle family.
    #[arg(long, value_enum, default_value_t = FamilyKind::TangleStars)]
    family: FamilyKind,
    /// Order threshold, for circle, criteria, and matroid instances.
    #[arg(long)]
    k: Option<f64>,
    /// Intersection bound of the fnm family.
    #[arg(long)]
    m: Option<usize>,
    /// Set-size bound of the fnm family; unbounded when omitted.
    #[arg(long)]
    n: Option<usize>,
    /// File with the down-closed set Q of the TQ family, as a JSON list of
    /// [side, side] pairs.
    #[arg(long = "Q")]
    q: Option<PathBuf>,
    /// Write DOT output here.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Also write the certificate here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Instance kind.
    #[arg(value_enum)]
    kind: GenKind,
    /// Ground size.
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also write the instance here.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    /// Sets with co-small join; tangles are abstract tangles.
    #[value(name = "T")]
    Tangles,
    /// Stars with co-small join.
    #[value(name = "Tstar")]
    TangleStars,
    /// Tangle stars plus forced singletons for a down-closed Q.
    #[value(name = "TQ")]
    Extending,
    /// Sets whose avoidance makes an orientation a profile.
    #[value(name = "profiles")]
    Profiles,
    /// Sets whose right sides meet in a clique of the graph.
    #[value(name = "clique")]
    Clique,
    /// Sets of fewer than n separations whose right sides meet in fewer
    /// than m points.
    #[value(name = "fnm")]
    Fnm,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Graph,
    Set,
    Circle,
    Criteria,
    Matroid,
}

fn main() {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Analyze(args) => commands::analyze(args),
        Cmd::Tot(args) => commands::tot(args),
        Cmd::Duality(args) => commands::duality(args),
        Cmd::Gen(args) => commands::gen(args),
    };
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.code());
    }
}
