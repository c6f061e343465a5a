//! `qsym`: command-line front end for rank-2 graph triples.
//!
//! Exit codes: 0 success, 1 negative answer (invalid input under `validate`,
//! not equivalent under `equiv`), 2 usage or input error, 3 saturation
//! budget exceeded, 4 internal inconsistency.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::RangedU64ValueParser;
use clap::{Args, Parser, Subcommand};

use qsym_core::ncalgebra::{DEFAULT_DEGREE_BOUND, DEFAULT_WORD_BUDGET};

use commands::{Format, Output};
use input::{CliResult, EXIT_NEGATIVE};

const DEFAULT_SEED: u64 = 20_240_611;

#[derive(Parser)]
#[command(name = "qsym", version, about = "Rank-2 graph triples and their quantum automorphism presentations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Machine-readable JSON output.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Human-readable output, also for commands that default to JSON.
    #[arg(long, global = true)]
    text: bool,
    /// Degree bound L of the ideal saturation.
    #[arg(long, global = true, value_name = "L", default_value_t = DEFAULT_DEGREE_BOUND,
          value_parser = RangedU64ValueParser::<usize>::new().range(1..=12))]
    degree_bound: usize,
    /// Maximum number of normal words the saturation may track.
    #[arg(long, global = true, value_name = "W", default_value_t = DEFAULT_WORD_BUDGET)]
    budget: usize,
    /// Worker threads [default: available cores].
    #[arg(long, global = true, value_name = "N",
          value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
    jobs: Option<usize>,
    /// Seed for randomized output.
    #[arg(long, global = true, value_name = "S", default_value_t = DEFAULT_SEED)]
    seed: u64,
}

impl Global {
    fn format(&self, default: Format) -> Format {
        if self.json {
            Format::Json
        } else if self.text {
            Format::Text
        } else {
            default
        }
    }

    fn jobs(&self) -> usize {
        self.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph or triple file; exits 1 if it is invalid.
    Validate { file: PathBuf },
    /// List the composable pairs E1*E2 of a triple (or of a graph with itself).
    Pairs {
        file: PathBuf,
        /// List E2*E1 instead.
        #[arg(long)]
        reverse: bool,
    },
    /// Count the valid theta for the two graphs of a triple.
    ThetaCount { file: PathBuf },
    /// Enumerate valid theta in canonical order.
    ThetaEnum {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Build the triple (G, G, id) over a graph and print it as JSON.
    Pullback { graph: PathBuf },
    /// Count paths of degree (m, n) between every pair of vertices.
    Skeleton {
        file: PathBuf,
        #[arg(long = "m")]
        m: u32,
        #[arg(long = "n")]
        n: u32,
    },
    /// Decide whether two triples are equivalent; exits 1 if not.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        /// Report every witness permutation, not just the first.
        #[arg(long)]
        all: bool,
    },
    /// Classical automorphism group of a triple (JSON by default).
    Aut { file: PathBuf },
    /// Relations presenting the quantum automorphism group (JSON by default).
    Presentation {
        file: PathBuf,
        /// Skip canonicalization: keep generation order, duplicates and zeros.
        #[arg(long)]
        raw: bool,
    },
    /// Saturate the presentation and report what it proves.
    Analyze {
        file: PathBuf,
        /// Write the reduced ideal basis as JSON.
        #[arg(long, value_name = "PATH")]
        dump_ideal: Option<PathBuf>,
    },
    /// Shipped example graphs and triples.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    /// Names of the shipped fixtures.
    List,
    /// Print a fixture as canonical JSON.
    Export {
        name: String,
        /// Base graph of the pullback fixture: a graph fixture name or file.
        #[arg(long, value_name = "G")]
        graph: Option<String>,
    },
    /// Print a random valid triple on at most N vertices (see --seed).
    Random {
        #[arg(long = "n", value_name = "N", default_value_t = 4,
              value_parser = RangedU64ValueParser::<usize>::new().range(1..=8))]
        n: usize,
    },
}

fn run(cli: &Cli) -> CliResult<Output> {
    let g = &cli.global;
    let text = g.format(Format::Text);
    let json = g.format(Format::Json);
    match &cli.command {
        Command::Validate { file } => commands::validate(file, text),
        Command::Pairs { file, reverse } => commands::pairs(file, *reverse, text),
        Command::ThetaCount { file } => commands::theta_count(file, text),
        Command::ThetaEnum { file, limit } => commands::theta_enum(file, *limit, text),
        Command::Pullback { graph } => commands::pullback_of(graph),
        Command::Skeleton { file, m, n } => commands::skeleton(file, *m, *n, text),
        Command::Equiv { first, second, all } => commands::equiv(first, second, *all, text),
        Command::Aut { file } => commands::aut(file, json),
        Command::Presentation { file, raw } => commands::presentation(file, *raw, json),
        Command::Analyze { file, dump_ideal } => {
            let config = commands::analysis_config(g.degree_bound, g.budget, g.jobs());
            commands::analyze(file, config, dump_ideal.as_ref(), text)
        }
        Command::Fixtures { action } => match action {
            FixtureAction::List => Ok(commands::fixture_list(text)),
            FixtureAction::Export { name, graph } => commands::fixture_export(name, graph.as_deref()),
            FixtureAction::Random { n } => Ok(commands::fixture_random(*n, g.seed)),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            if out.negative {
                ExitCode::from(EXIT_NEGATIVE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("qsym: {f}");
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn format_flags() {
        let cli = Cli::parse_from(["qsym", "aut", "t.json", "--text"]);
        assert!(cli.global.format(Format::Json) == Format::Text);
        assert!(Cli::try_parse_from(["qsym", "aut", "t.json", "--text", "--json"]).is_err());
        assert!(Cli::try_parse_from(["qsym", "analyze", "t.json", "--degree-bound", "0"]).is_err());
    }
}
