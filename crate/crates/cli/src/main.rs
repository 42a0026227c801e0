mod commands;
mod error;
mod fixtures;
mod report;
mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{CliError, EXIT_OK, EXIT_VERIFICATION};

/// Multiple relations, splittings and connectivity structures.
#[derive(Parser)]
#[command(name = "conrel", version)]
pub struct Cli {
    /// Workspace file to load.
    #[arg(long, short, global = true, conflicts_with = "fixture")]
    workspace: Option<PathBuf>,
    /// Built-in workspace: borromean3, counterexample17 or brunn:<structure>.
    #[arg(long, global = true)]
    fixture: Option<String>,
    /// Answer with the definition-literal reference implementations.
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Index sets are written as comma-separated index names, e.g. `1,3`;
/// an empty string or `{}` is the empty set.
#[derive(Subcommand)]
pub enum Command {
    /// Join two relations.
    Join { a: String, b: String },
    /// Restrict a relation to an index set.
    Restrict { r: String, set: String },
    /// Extend a relation with free indices.
    Extend {
        r: String,
        /// Target domain, every index by default.
        #[arg(long)]
        to: Option<String>,
    },
    /// Find a bipartition along which a relation (or one of its parts) splits.
    Split {
        r: String,
        #[arg(long)]
        part: Option<String>,
    },
    /// Decide whether an index set is detachable.
    Detachable { r: String, set: String },
    /// External part and socle.
    Socle { r: String },
    /// Solid, anchored, moving and fluid flags.
    Classify { r: String },
    /// Connectivity structure of a relation: its non-splittable parts.
    Structure { r: String },
    /// Least connectivity structure containing a list of sets.
    Generate {
        k: String,
        #[arg(long)]
        integral: bool,
    },
    /// Connected components of an index set.
    Components {
        k: String,
        #[arg(long)]
        within: String,
    },
    /// Relation whose connectivity structure is the given integral structure.
    Brunn { k: String },
    /// Check that the Brunn relation of a structure recovers it.
    VerifyBrunn {
        k: Option<String>,
        /// Check every integral structure on this many points instead.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        exhaustive: Option<u8>,
        /// Use non-splittability witnesses instead of materializing.
        #[arg(long)]
        witness: bool,
    },
    /// Check the join monoid laws on random and workspace relations.
    MonoidCheck {
        #[arg(long, default_value_t = 1000)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the workspace in canonical form.
    Save {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match (&report.raw, cli.format) {
                (Some(raw), _) => raw.clone(),
                (None, Format::Json) => report.to_json(),
                (None, Format::Text) => report.to_text(),
            };
            print!("{text}");
            ExitCode::from(if report.ok { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<report::Report, CliError> {
    let cap = match std::env::var("CONREL_CAP") {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .map_err(|_| CliError::Input(format!("CONREL_CAP: `{v}` is not a tuple count")))?,
        Err(_) => conrel::DEFAULT_CAP,
    };
    let ws = match (&cli.workspace, &cli.fixture) {
        (Some(path), _) => Some(workspace::Workspace::load(path, cap)?),
        (None, Some(name)) => Some(fixtures::load(name, cap)?),
        (None, None) => None,
    };
    if let Some(ws) = &ws {
        for w in &ws.warnings {
            eprintln!("warning: {w}");
        }
    }
    commands::run(&cli.command, ws.as_ref(), cli.oracle, cap)
}
