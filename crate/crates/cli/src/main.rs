//! `gtkit`: command-line front-end for the group theory toolkit.
//!
//! Every subcommand prints a text report, or with `--json` a single JSON
//! object `{command, input, result, verification}`. Exit status is 0 on
//! success, 2 for usage and parse errors, 3 when a bound is exceeded or a
//! verification check fails.

mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::{BurnsideInput, Context, FreeSubgroupArgs};
use gtkit::fingroup::Limits;
use report::{CliError, Report};

#[derive(Parser)]
#[command(name = "gtkit", version, about = "Computational group theory at desk scale")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest group built by closure.
    #[arg(long, global = true, value_name = "N")]
    max_order: Option<usize>,
    /// Seed for randomized constructions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, flags, class equation, Sylow table and composition factors.
    Analyze { spec: String },
    /// List every subgroup (groups up to 512 elements).
    Subgroups {
        spec: String,
        /// Only the maximal subgroups.
        #[arg(long)]
        maximal: bool,
    },
    /// Derived, central and composition series.
    Series {
        spec: String,
        /// derived, lower-central, upper-central, composition or all.
        #[arg(long, default_value = "all")]
        kind: String,
        /// Choose maximal normal subgroups at random (seeded by --seed).
        #[arg(long)]
        random: bool,
    },
    /// Sylow subgroups for one prime or all primes dividing the order.
    Sylow {
        spec: String,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Count orbits of an action by averaging fixed points.
    Burnside {
        #[command(subcommand)]
        action: BurnsideCommand,
    },
    /// Stacked basis (Smith form) of an integer matrix, e.g. "[[2,0],[0,3]]".
    Smith { matrix: String },
    /// Invariant factors of a finite abelian group or a relation matrix.
    AbelianInvariants {
        spec: Option<String>,
        /// Relation matrix: one row per relation, one column per generator.
        #[arg(long)]
        relations: Option<String>,
    },
    /// Schreier generators of the preimage of a subgroup under F_n → S_m.
    FreeSubgroup {
        /// Rank of the free group.
        #[arg(short = 'n', long = "rank")]
        rank: usize,
        /// Images of the free generators, in cycle notation.
        #[arg(long, num_args = 1.., required = true)]
        images: Vec<String>,
        /// Generators of the subgroup of the image (default: trivial, so
        /// the kernel is computed).
        #[arg(long, num_args = 1..)]
        subgroup: Vec<String>,
        /// Degree of the permutations (default: largest point mentioned).
        #[arg(long)]
        degree: Option<usize>,
        /// Comma-separated letter names.
        #[arg(long)]
        alphabet: Option<String>,
        /// Rewrite this word in the Schreier generators.
        #[arg(long)]
        rewrite: Option<String>,
    },
    /// Freely reduce a word such as "x^3 y y^-1 x".
    ReduceWord {
        word: String,
        #[arg(long, default_value = "x,y,z")]
        alphabet: String,
    },
    /// Elementary-matrix decomposition of a unimodular integer matrix, plus
    /// A/B and B/C words for SL_2(Z).
    Sl2Decompose { matrix: String },
    /// The automorphism group (groups up to 64 elements).
    Aut { spec: String },
}

#[derive(Subcommand)]
enum BurnsideCommand {
    /// S_k permuting ordered factorizations of N into k factors.
    Factorizations { n: u64, k: usize },
    /// A group acting on itself by conjugation.
    Conjugation { spec: String },
    /// A group acting on the cosets of a Sylow subgroup for its largest prime.
    Cosets { spec: String },
    /// An action read from a JSON file: {"group": SPEC, "table": [[...], ...]}.
    Table { path: String },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let mut limits = Limits::default();
    if let Some(m) = cli.max_order {
        limits.max_order = m;
    }
    let ctx = Context {
        limits,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Analyze { spec } => commands::analyze(spec, &ctx),
        Command::Subgroups { spec, maximal } => commands::subgroups(spec, *maximal, &ctx),
        Command::Series { spec, kind, random } => commands::series(spec, kind, *random, &ctx),
        Command::Sylow { spec, p } => commands::sylow(spec, *p, &ctx),
        Command::Burnside { action } => {
            let input = match action {
                BurnsideCommand::Factorizations { n, k } => BurnsideInput::Factorizations { n: *n, k: *k },
                BurnsideCommand::Conjugation { spec } => BurnsideInput::Conjugation { spec: spec.clone() },
                BurnsideCommand::Cosets { spec } => BurnsideInput::Cosets { spec: spec.clone() },
                BurnsideCommand::Table { path } => BurnsideInput::Table { path: path.clone() },
            };
            commands::burnside(input, &ctx)
        }
        Command::Smith { matrix } => commands::smith(matrix),
        Command::AbelianInvariants { spec, relations } => {
            commands::abelian_invariants(spec.as_deref(), relations.as_deref(), &ctx)
        }
        Command::FreeSubgroup {
            rank,
            images,
            subgroup,
            degree,
            alphabet,
            rewrite,
        } => commands::free_subgroup(
            &FreeSubgroupArgs {
                rank: *rank,
                images: images.clone(),
                subgroup: subgroup.clone(),
                degree: *degree,
                alphabet: alphabet.clone(),
                rewrite: rewrite.clone(),
            },
            &ctx,
        ),
        Command::ReduceWord { word, alphabet } => commands::reduce_word(word, alphabet),
        Command::Sl2Decompose { matrix } => commands::sl2_decompose(matrix),
        Command::Aut { spec } => commands::aut(spec, &ctx),
    }
}

/// Writes to stdout, treating a closed pipe (e.g. `| head`) as success.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            if cli.json {
                emit(&(serde_json::to_string_pretty(&report).expect("reports serialize") + "\n"));
            } else {
                emit(&report.render());
            }
            if report.verified() {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failed");
                ExitCode::from(3)
            }
        }
        Err(e) => {
            if cli.json {
                let err = serde_json::json!({ "error": e.to_string(), "kind": e.kind() });
                emit(&(serde_json::to_string_pretty(&err).expect("errors serialize") + "\n"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
