//! `ringlab` — exact-arithmetic workbench for finite rings: build rings
//! from expressions, decide the invertible-commutator properties, sweep
//! idempotent identities, and certify 2x2 matrix-ring structure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ringlab_core::deciders::RingProperty;
use ringlab_core::Caps;

mod commands;
mod parallel;
mod parse;
mod report;
mod table_file;

use commands::MethodChoice;
use report::Report;

#[derive(Parser)]
#[command(
    name = "ringlab",
    version,
    about = "Exact-arithmetic workbench for finite rings",
    after_help = "Ring expressions: Z(6), GF(2,[1,1,1]), M(2,Z(3)), UT(2,Z(4)), \
                  Prod(Z(2),Z(3)), Quot(Z(4),{2}), Corner(M(2,Z(2)),[[1,0],[0,0]]), \
                  Table(path). Element literals: 3, -1, [[1,0],[0,1]], (1,2)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the report as JSON (default is text).
    #[arg(long, global = true)]
    json: bool,
    /// Emit the report as text (the default; overrides --json).
    #[arg(long, global = true)]
    text: bool,
    /// Largest carrier that may be built.
    #[arg(long, global = true, value_name = "N")]
    max_card: Option<u64>,
    /// Largest idempotent-pair sweep the deciders will run.
    #[arg(long, global = true, value_name = "N")]
    max_pairs: Option<u64>,
    /// Cardinality up to which ring axioms are checked on all triples.
    #[arg(long, global = true, value_name = "N")]
    axiom_cap: Option<u64>,
    /// Worker threads for pair sweeps (results are identical to --jobs 1).
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    jobs: usize,
    /// Seed for sampled checks above the exhaustive caps.
    #[arg(long, global = true, value_name = "SEED")]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    K,
    Kbar,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Theorem,
    Units,
    Both,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Build a ring and summarize its structure.
    Describe { ring: String },
    /// Decide the invertible-commutator property K or its anti-commutator
    /// variant, by brute force, unit search, classification, or all.
    Decide {
        ring: String,
        #[arg(long, value_enum)]
        property: PropertyArg,
        #[arg(long, value_enum, default_value = "brute")]
        method: MethodArg,
    },
    /// Full diagnostic for one idempotent pair.
    Pair {
        ring: String,
        /// Two element literals, e.g. "[[2,2],[2,2]],[[1,0],[0,0]]".
        #[arg(long)]
        elems: String,
    },
    /// Sweep the idempotent identities and tally violations.
    Identities {
        ring: String,
        /// Force full sweeps even on large carriers.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Recognize 2x2 matrix structure from a witness (or search for one).
    Recognize {
        ring: String,
        /// auto, B..K, IDEM, or INVOL.
        #[arg(long, default_value = "auto")]
        witness_kind: String,
        /// Two element literals for an explicit witness kind.
        #[arg(long)]
        elems: Option<String>,
        /// Write the corner ring as a table file.
        #[arg(long, value_name = "PATH")]
        emit_corner: Option<PathBuf>,
    },
    /// Least pair of units summing to one.
    Sum2units { ring: String },
    /// The identity of M_m(T) as a sum of two units over the given base T.
    Henriksen {
        ring: String,
        #[arg(long)]
        m: usize,
    },
    /// Run the built-in fixture battery.
    Fixtures {
        /// Also emit, re-ingest, and re-verify a certificate corner ring.
        #[arg(long)]
        recheck: bool,
    },
}

fn caps_from(cli: &Cli) -> Caps {
    let mut caps = Caps::default();
    if let Some(n) = cli.max_card {
        caps.enumeration_cap = n;
    }
    if let Some(n) = cli.max_pairs {
        caps.pair_budget = n;
    }
    if let Some(n) = cli.axiom_cap {
        caps.axiom_check_cap = n;
    }
    if let Some(s) = cli.seed {
        caps.seed = s;
    }
    caps
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = caps_from(&cli);
    let jobs = cli.jobs.max(1);
    let start = Instant::now();
    let outcome = match &cli.command {
        Command::Describe { ring } => commands::describe(ring, caps),
        Command::Decide {
            ring,
            property,
            method,
        } => {
            let prop = match property {
                PropertyArg::K => RingProperty::K,
                PropertyArg::Kbar => RingProperty::KBar,
            };
            let method = match method {
                MethodArg::Brute => MethodChoice::Brute,
                MethodArg::Theorem => MethodChoice::Theorem,
                MethodArg::Units => MethodChoice::Units,
                MethodArg::Both => MethodChoice::Both,
                MethodArg::All => MethodChoice::All,
            };
            commands::decide(ring, prop, method, jobs, caps)
        }
        Command::Pair { ring, elems } => commands::pair(ring, elems, caps),
        Command::Identities { ring, exhaustive } => {
            commands::identities(ring, *exhaustive, caps)
        }
        Command::Recognize {
            ring,
            witness_kind,
            elems,
            emit_corner,
        } => commands::recognize(
            ring,
            witness_kind,
            elems.as_deref(),
            emit_corner.as_ref(),
            jobs,
            caps,
        ),
        Command::Sum2units { ring } => commands::sum2units(ring, caps),
        Command::Henriksen { ring, m } => commands::henriksen(ring, *m, caps),
        Command::Fixtures { recheck } => commands::fixtures(*recheck, caps),
    };
    match outcome {
        Ok((ring_summary, payload)) => {
            let report = Report {
                command: command_echo(),
                ring: ring_summary,
                payload,
                elapsed_ms: start.elapsed().as_millis(),
            };
            if cli.json && !cli.text {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
            } else {
                print!("{}", report.render_text());
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
