//! `shiftlab` — a workbench for languages of constrained shift spaces:
//! digit expansions, gap rules, generator presentations, decomposition
//! checks, measure estimates, and sliding-block-code transport.
//!
//! Exit codes: 0 = all requested checks passed, 1 = some check failed,
//! 2 = configuration or usage error, 3 = enumeration budget exceeded.

mod commands;
mod reproduce;
mod system;

use clap::{Parser, Subcommand};
use commands::Ctx;
use shiftlab::lang::Budget;
use shiftlab::Error;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "shiftlab",
    version,
    about = "symbolic-dynamics workbench: shift-space languages, decompositions, and measures"
)]
struct Cli {
    /// Directory for the word-count cache (also SHIFTLAB_CACHE_DIR).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,

    /// Per-layer cap on enumerated words.
    #[arg(long, global = true, default_value_t = 5_000_000)]
    budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Digit expansion, counts, and decomposition of a beta shift.
    Beta {
        /// Expansion base: golden, a decimal like 1.8, a fraction like
        /// 9/5, or root(<polynomial>, near=<guess>).
        #[arg(long)]
        beta: String,
        /// How many expansion digits to print.
        #[arg(long, default_value_t = 64)]
        digits: usize,
        /// Trusted digit depth for membership queries.
        #[arg(long, default_value_t = 64)]
        depth: usize,
        /// Print word counts up to this length.
        #[arg(long)]
        enumerate: Option<usize>,
        /// Describe the decomposition and check parse cover.
        #[arg(long)]
        decompose: bool,
        /// Comma-separated conditions to verify (I, II, III, cover).
        #[arg(long)]
        verify: Option<String>,
        /// Write a JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Entropy and counts of an S-gap shift.
    Sgap {
        /// Explicit gap set, e.g. 1,2.
        #[arg(long)]
        set: Option<String>,
        /// Named gap family: pow2 or all.
        #[arg(long)]
        rule: Option<String>,
        /// Truncation bound for named families.
        #[arg(long, default_value_t = 64)]
        max: u64,
        /// Print word counts up to this length.
        #[arg(long)]
        enumerate: Option<usize>,
        /// Write a JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimal connector between two words of an S-gap shift.
    Connect {
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        rule: Option<String>,
        #[arg(long, default_value_t = 64)]
        max: u64,
        /// Left word.
        #[arg(long)]
        left: String,
        /// Right word.
        #[arg(long)]
        right: String,
        /// Largest connector length tried.
        #[arg(long, default_value_t = 16)]
        t_cap: usize,
    },
    /// Inspect a coded system given by a generator file.
    Coded {
        /// File with one generator word per line.
        #[arg(long)]
        generators: PathBuf,
        /// Print boundary-fragment counts up to this length.
        #[arg(long)]
        cn: Option<usize>,
        /// Print word counts up to this length.
        #[arg(long)]
        enumerate: Option<usize>,
        /// Compare boundary growth to language growth to this length.
        #[arg(long)]
        boundary: Option<usize>,
        /// Write a JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run decomposition conditions against a system spec.
    Verify {
        /// System spec, e.g. beta:golden, sgap:set=1,2, coded:FILE,
        /// full:2, factor:CODE.json:beta:golden.
        #[arg(long)]
        system: String,
        /// Comma-separated: I, II, III, cover, dichotomy.
        #[arg(long, default_value = "I,II,III")]
        conditions: String,
        /// Depth for cover / growth windows.
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Report format: json or csv.
        #[arg(long, default_value = "json")]
        report: String,
        /// Write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical, periodic, and stationary measure estimates.
    Measure {
        #[arg(long)]
        system: String,
        /// Slice length for the empirical measure.
        #[arg(long, default_value_t = 24)]
        mme_depth: usize,
        /// Period bound for the periodic-point inventory.
        #[arg(long, default_value_t = 20)]
        per: usize,
        /// Report cylinders up to this length.
        #[arg(long, default_value_t = 3)]
        targets_len: usize,
        /// Also compute two-sided scaled-frequency bounds.
        #[arg(long)]
        gibbs: bool,
        /// Length window for those bounds.
        #[arg(long, default_value_t = 8)]
        gibbs_depth: usize,
        /// Write a JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a sliding block code and verify the image language.
    Factor {
        /// Base system spec.
        #[arg(long)]
        system: String,
        /// JSON code file.
        #[arg(long)]
        code: PathBuf,
        /// Run identity, slice, cover, and gluing checks.
        #[arg(long)]
        verify: bool,
        /// Image depth for counts and checks.
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Write a JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run a named end-to-end scenario (or `all`).
    Reproduce {
        #[arg(long)]
        id: String,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::BudgetExceeded { .. } | Error::VerifyBudget { .. } => 3,
                _ => 2,
            }
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> shiftlab::Result<bool> {
    let cache_path = cli
        .cache
        .or_else(|| std::env::var_os("SHIFTLAB_CACHE_DIR").map(PathBuf::from));
    let ctx = Ctx {
        budget: Budget {
            max_words_per_layer: cli.budget,
        },
        cache_path,
    };
    match cli.command {
        Command::Beta {
            beta,
            digits,
            depth,
            enumerate,
            decompose,
            verify,
            out,
        } => commands::cmd_beta(
            &ctx,
            &beta,
            depth,
            digits,
            enumerate,
            decompose,
            verify.as_deref(),
            out.as_deref(),
        ),
        Command::Sgap {
            set,
            rule,
            max,
            enumerate,
            out,
        } => commands::cmd_sgap(
            &ctx,
            set.as_deref(),
            rule.as_deref(),
            max,
            enumerate,
            out.as_deref(),
        ),
        Command::Connect {
            set,
            rule,
            max,
            left,
            right,
            t_cap,
        } => commands::cmd_min_gap(
            &ctx,
            set.as_deref(),
            rule.as_deref(),
            max,
            &left,
            &right,
            t_cap,
        ),
        Command::Coded {
            generators,
            cn,
            enumerate,
            boundary,
            out,
        } => commands::cmd_coded(&ctx, &generators, cn, enumerate, boundary, out.as_deref()),
        Command::Verify {
            system,
            conditions,
            depth,
            report,
            out,
        } => commands::cmd_verify(&ctx, &system, &conditions, depth, &report, out.as_deref()),
        Command::Measure {
            system,
            mme_depth,
            per,
            targets_len,
            gibbs,
            gibbs_depth,
            out,
        } => commands::cmd_measure(
            &ctx,
            &system,
            mme_depth,
            per,
            targets_len,
            gibbs,
            gibbs_depth,
            out.as_deref(),
        ),
        Command::Factor {
            system,
            code,
            verify,
            depth,
            out,
        } => commands::cmd_factor(&ctx, &system, &code, verify, depth, out.as_deref()),
        Command::Reproduce { id } => reproduce::run(&ctx, &id),
    }
}
