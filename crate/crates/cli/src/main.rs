//! Command-line surface over the type-space library: load and validate
//! spaces, evaluate expressions, compute descriptions and quotients, check
//! morphisms, run measure-extension demos and the sober-drunk
//! demonstrations.
//!
//! Every command is a thin shell over library operations. Reports print
//! human-readable lines followed by a machine-readable document in the same
//! format the fixtures use. Identical inputs produce byte-identical output.
//!
//! Exit codes: 0 success/valid, 1 property violation found, 2 input error.

mod commands;
mod io;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "fatspace", version, about = "Finitely additive type spaces at finite scale")]
struct Cli {
    /// State-count budget for sober-drunk construction (2^(2n+1) states).
    #[arg(long, global = true, default_value_t = 512)]
    max_states: u64,
    /// Candidate-map budget for morphism enumeration.
    #[arg(long, global = true, default_value_t = 50_000)]
    max_maps: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every type-space invariant of a space file.
    Validate { space: std::path::PathBuf },
    /// Evaluate a belief expression on a space.
    Eval {
        space: std::path::PathBuf,
        /// Expression text, e.g. "B[a,1/2](not nat(h))".
        #[arg(long, conflicts_with = "expr_file")]
        expr: Option<String>,
        /// File with one expression per line or an expr_list document.
        #[arg(long)]
        expr_file: Option<std::path::PathBuf>,
    },
    /// Print a state's description fingerprint at a depth.
    Describe {
        space: std::path::PathBuf,
        #[arg(long)]
        state: String,
        /// Defaults to the refinement tower's stabilization index.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Compute the description quotient and the refinement tower summary.
    Minimize {
        space: std::path::PathBuf,
        /// Write the quotient space document here.
        #[arg(short, long)]
        out: Option<std::path::PathBuf>,
    },
    /// Check a state map between two spaces, or enumerate all morphisms.
    Morphism {
        source: std::path::PathBuf,
        target: std::path::PathBuf,
        /// A state_map document; omit with --enumerate.
        #[arg(long, conflicts_with = "enumerate")]
        map: Option<std::path::PathBuf>,
        /// Enumerate all type morphisms within the map budget.
        #[arg(long)]
        enumerate: bool,
    },
    /// Extend a measure: by a set to a prescribed value, or to a finer field.
    Extend {
        measure: std::path::PathBuf,
        /// Comma-separated element names of the new set.
        #[arg(long, requires = "p", conflicts_with = "target_field")]
        set: Option<String>,
        /// Prescribed value for the new set, e.g. 1/2.
        #[arg(long)]
        p: Option<String>,
        /// A set_field document describing the refining field.
        #[arg(long)]
        target_field: Option<std::path::PathBuf>,
        /// Write the extended measure document here.
        #[arg(short, long)]
        out: Option<std::path::PathBuf>,
    },
    /// Sober-drunk record spaces: construction, separation, lemma checks.
    Soberdrunk {
        #[command(subcommand)]
        action: SoberdrunkAction,
    },
}

#[derive(Subcommand)]
enum SoberdrunkAction {
    /// Build the level-n space with its constructed beliefs.
    Build {
        n: u32,
        /// Write the space document here.
        #[arg(short, long)]
        out: Option<std::path::PathBuf>,
    },
    /// Produce and verify a depth-separated state pair at level n.
    Separate {
        n: u32,
        /// Agreement depth; defaults to n-1.
        #[arg(long)]
        alpha: Option<u32>,
    },
    /// Run the exhaustive combinatorial lemma checks at levels up to n.
    Lemmas { n: u32 },
}

fn main() {
    let cli = Cli::parse();
    let budgets = commands::Budgets { max_states: cli.max_states, max_maps: cli.max_maps };
    let outcome = match cli.command {
        Command::Validate { space } => commands::validate(&space),
        Command::Eval { space, expr, expr_file } => {
            commands::eval(&space, expr.as_deref(), expr_file.as_deref())
        }
        Command::Describe { space, state, depth } => commands::describe(&space, &state, depth),
        Command::Minimize { space, out } => commands::minimize(&space, out.as_deref()),
        Command::Morphism { source, target, map, enumerate } => {
            commands::morphism(&source, &target, map.as_deref(), enumerate, &budgets)
        }
        Command::Extend { measure, set, p, target_field, out } => commands::extend(
            &measure,
            set.as_deref(),
            p.as_deref(),
            target_field.as_deref(),
            out.as_deref(),
        ),
        Command::Soberdrunk { action } => match action {
            SoberdrunkAction::Build { n, out } => {
                commands::soberdrunk_build(n, out.as_deref(), &budgets)
            }
            SoberdrunkAction::Separate { n, alpha } => {
                commands::soberdrunk_separate(n, alpha, &budgets)
            }
            SoberdrunkAction::Lemmas { n } => commands::soberdrunk_lemmas(n, &budgets),
        },
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}
