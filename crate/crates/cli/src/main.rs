//! `kempe`: command-line front end for the kempe-core library.
//!
//! Exit codes: 0 found / success, 1 budget exhausted or check failed,
//! 2 input error, 3 proven nonexistent.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "kempe", version, about = "Kempe chains, correct colorings and complete minors")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Args)]
struct Global {
    /// Graph file (DIMACS `.col` or 0-based edge list), `-` for stdin, or
    /// `corpus:NAME`.
    #[arg(long, global = true, env = "KEMPE_GRAPH")]
    graph: Option<String>,
    /// Generator family, either `cycle` with `--n` or the compact `cycle:5`.
    #[arg(long, global = true, env = "KEMPE_FAMILY")]
    family: Option<String>,
    #[arg(long, global = true, env = "KEMPE_N")]
    n: Option<usize>,
    #[arg(long, global = true, env = "KEMPE_K")]
    k: Option<usize>,
    #[arg(long, global = true, env = "KEMPE_P")]
    p: Option<f64>,
    /// Palette size.
    #[arg(long, global = true, env = "KEMPE_Q")]
    q: Option<usize>,
    /// Inclusive palette range such as `3..6`.
    #[arg(long, global = true, env = "KEMPE_Q_RANGE")]
    q_range: Option<String>,
    #[arg(long, global = true, env = "KEMPE_STRATEGY", default_value = "exhaustive")]
    strategy: String,
    /// Colorings examined (exhaustive) or Kempe swaps (walk) before giving up.
    #[arg(long, global = true, env = "KEMPE_BUDGET")]
    budget: Option<u64>,
    /// Restart count for the Kempe walk.
    #[arg(long, global = true, env = "KEMPE_RESTARTS")]
    restarts: Option<u64>,
    #[arg(long, global = true, env = "KEMPE_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, env = "KEMPE_WORKERS")]
    workers: Option<usize>,
    #[arg(long, global = true, env = "KEMPE_FORMAT", value_enum, default_value = "text")]
    format: OutputFormat,
    #[arg(long, global = true, env = "KEMPE_OUT")]
    out: Option<PathBuf>,
    /// Coloring as a JSON array of 1-based colors, inline or in a file.
    #[arg(long, global = true, env = "KEMPE_COLORING")]
    coloring: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact chromatic number with a witness coloring.
    Chi,
    /// Critical vertices of a coloring.
    Critical,
    /// Kempe chains of one color pair.
    Chains {
        #[arg(long, value_parser = parse_pair)]
        pair: (usize, usize),
    },
    /// Backbone between two critical vertices of different colors.
    Backbone {
        #[arg(long, value_parser = parse_pair)]
        anchors: (usize, usize),
    },
    /// Run the swap loop that removes critical vertices of color `a`.
    Eliminate {
        #[arg(long, value_parser = parse_pair)]
        colors: (usize, usize),
    },
    /// Look for a Kempe clique in a given coloring.
    Clique,
    /// Search for a correct coloring.
    Search,
    /// Check that the clique of a coloring is a strong immersion.
    ImmersionVerify,
    /// Grow and verify a complete-minor model.
    Minor,
    /// Emit a generated graph.
    Gen,
    /// Bundled corpus of named graphs.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Run every reproduction check.
    Harness,
}

#[derive(Debug, Subcommand)]
enum CorpusAction {
    List,
    /// Validate one entry, or all of them.
    Check { name: Option<String> },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated integers, got `{s}`"))?;
    let int = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("`{x}` is not an integer"));
    Ok((int(a)?, int(b)?))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.global, &cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
