//! `spal`: exact palindromic subsequence counting, enumeration, bound
//! auditing, and extremal search over all words, from the command line.
//!
//! Exit codes: 0 success, 2 bad input, 3 count overflow, 4 enumeration
//! cap exceeded, 5 a checked bound or prediction failed, 6 search budget
//! exceeded. The `SPAL_BUDGET_N` environment variable overrides the
//! default length budget for exhaustive sweeps; `--force` raises the
//! budget to the requested sweep size.

mod output;

use std::env;
use std::fmt;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};

use spal::bounds::{
    alphabet_power_sum, conjectured_max, doubled_bound, fib_bound, high_q_max, power_sum_bound,
    quadratic_power_bound, sp3_bound, sp_top_bounds,
};
use spal::palcount::{count_pal_factors, enumerate_pal_factors, enumerate_spal, spal_profile};
use spal::verify::{
    audit_word, sample_conjecture_sweep, sweep_table, verify_conjecture, SearchConfig,
    DEFAULT_SEARCH_BUDGET,
};
use spal::words::{detect_format, parse_word, WordFormat};
use spal::{Count, Error, Result, Word};

use output::{BoundsReport, OutputFormat};

const EXIT_VIOLATION: i32 = 5;

#[derive(Parser)]
#[command(
    name = "spal",
    version,
    about = "Palindromic subsequence counts, bounds, and extremal search"
)]
struct Cli {
    /// Output style: plain for humans, csv or json for tooling.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,

    /// Worker threads for sweeps: 1 forces the sequential path, 0 picks
    /// automatically. Results are identical for every setting.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Read word arguments as comma-separated integer letter ids even
    /// when they contain no comma.
    #[arg(long, global = true)]
    int_letters: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Search every canonical word up to the length budget.
    Exhaustive,
    /// Draw seeded uniform canonical words per (length, alphabet) cell.
    Sample,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sample => "sample",
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact palindromic subsequence and factor counts of one word.
    Count { word: String },

    /// List every distinct palindromic subsequence and factor of one word.
    Enumerate {
        word: String,
        /// Refuse to materialize more than this many subsequences.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
    },

    /// Evaluate every applicable bound against one word's exact counts.
    Audit { word: String },

    /// Exact maxima over all words, by length and alphabet size.
    Table {
        /// Largest word length to include.
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        /// Raise the search budget to the requested size.
        #[arg(long)]
        force: bool,
    },

    /// Check the predicted maxima, exhaustively or by sampling.
    Conjecture {
        /// Largest word length to check.
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Words drawn per (length, alphabet) cell in sample mode.
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Seed for the deterministic sample streams.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Raise the search budget to the requested size (exhaustive mode).
        #[arg(long)]
        force: bool,
    },

    /// Closed-form bound values for a length and optional alphabet size.
    Bounds { n: usize, q: Option<usize> },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            process::exit(exit_code(&err));
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } | Error::Domain { .. } | Error::LengthExceeded { .. } => 2,
        Error::Overflow => 3,
        Error::CapExceeded { .. } => 4,
        Error::BudgetExceeded { .. } => 6,
    }
}

fn parse_word_arg(text: &str, int_letters: bool) -> Result<Word> {
    let format = if int_letters {
        WordFormat::CommaInts
    } else {
        detect_format(text)
    };
    parse_word(text, format)
}

/// The exhaustive-search length budget: `SPAL_BUDGET_N` when set, the
/// library default otherwise.
fn search_budget() -> Result<usize> {
    match env::var("SPAL_BUDGET_N") {
        Ok(text) => text.trim().parse().map_err(|_| Error::Domain {
            op: "SPAL_BUDGET_N",
            reason: format!("expected a word length, found {text:?}"),
        }),
        Err(env::VarError::NotPresent) => Ok(DEFAULT_SEARCH_BUDGET),
        Err(err) => Err(Error::Domain {
            op: "SPAL_BUDGET_N",
            reason: err.to_string(),
        }),
    }
}

/// Builds the sweep configuration and refuses oversized sweeps up front
/// so no partial work happens before the budget error.
fn sweep_config(jobs: Option<usize>, n_max: usize, force: bool) -> Result<SearchConfig> {
    let budget = search_budget()?;
    let budget_n = if force { n_max.max(budget) } else { budget };
    if n_max > budget_n {
        return Err(Error::BudgetExceeded {
            requested: n_max,
            budget: budget_n,
        });
    }
    Ok(SearchConfig { budget_n, jobs })
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Count { ref word } => {
            let word = parse_word_arg(word, cli.int_letters)?;
            let profile = spal_profile(&word)?;
            let factors = count_pal_factors(&word);
            print!("{}", output::render_count(cli.format, &word, &profile, factors));
            Ok(0)
        }
        Command::Enumerate { ref word, cap } => {
            let word = parse_word_arg(word, cli.int_letters)?;
            let spal_list = enumerate_spal(&word, cap)?;
            let pal_list = enumerate_pal_factors(&word);
            print!(
                "{}",
                output::render_enumerate(cli.format, &word, &spal_list, &pal_list)
            );
            Ok(0)
        }
        Command::Audit { ref word } => {
            let word = parse_word_arg(word, cli.int_letters)?;
            let report = audit_word(&word)?;
            print!("{}", output::render_audit(cli.format, &report));
            Ok(if report.all_hold() { 0 } else { EXIT_VIOLATION })
        }
        Command::Table { n_max, force } => {
            let config = sweep_config(cli.jobs, n_max, force)?;
            let records = sweep_table(n_max, &config)?;
            print!("{}", output::render_table(cli.format, &records));
            Ok(0)
        }
        Command::Conjecture {
            n_max,
            mode,
            samples,
            seed,
            force,
        } => match mode {
            Mode::Exhaustive => {
                let config = sweep_config(cli.jobs, n_max, force)?;
                let mut checks = Vec::with_capacity(n_max);
                for n in 1..=n_max {
                    checks.push(verify_conjecture(n, &config)?);
                }
                print!("{}", output::render_conjecture(cli.format, &checks));
                Ok(if checks.iter().all(|c| c.holds) {
                    0
                } else {
                    EXIT_VIOLATION
                })
            }
            Mode::Sample => {
                let config = SearchConfig {
                    budget_n: n_max,
                    jobs: cli.jobs,
                };
                let reports = sample_conjecture_sweep(n_max, samples, seed, &config)?;
                print!("{}", output::render_samples(cli.format, &reports, seed));
                Ok(if reports.iter().all(|r| r.holds()) {
                    0
                } else {
                    EXIT_VIOLATION
                })
            }
        },
        Command::Bounds { n, q } => {
            let report = bounds_report(n, q)?;
            print!("{}", output::render_bounds(cli.format, &report));
            Ok(0)
        }
    }
}

/// Inapplicable is not an error for a bounds query: a value outside a
/// bound's side conditions renders as an empty slot.
fn maybe(r: Result<Count>) -> Result<Option<Count>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Domain { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn bounds_report(n: usize, q: Option<usize>) -> Result<BoundsReport> {
    let mut rows: Vec<(&'static str, Option<Count>)> = Vec::new();
    rows.push(("fibonacci_bound", maybe(fib_bound(n))?));
    let conjecture = match conjectured_max(n) {
        Ok(c) => Some(c),
        Err(Error::Domain { .. }) => None,
        Err(e) => return Err(e),
    };
    rows.push(("conjectured_max", conjecture.as_ref().map(|c| c.max_sp)));
    rows.push(("sp3_bound", maybe(sp3_bound(n))?));
    let top = match sp_top_bounds(n) {
        Ok(t) => Some(t),
        Err(Error::Domain { .. }) => None,
        Err(e) => return Err(e),
    };
    rows.push(("top_full", top.as_ref().map(|t| t.full)));
    rows.push(("top_penultimate", top.as_ref().and_then(|t| t.penultimate)));
    rows.push((
        "top_antepenultimate",
        top.as_ref().and_then(|t| t.antepenultimate),
    ));
    rows.push(("top_two_sum", top.as_ref().and_then(|t| t.top_two_sum)));
    match q {
        Some(q) => {
            rows.push(("alphabet_power_sum", maybe(alphabet_power_sum(n, q))?));
            rows.push(("power_sum_bound", maybe(power_sum_bound(n, q))?));
            rows.push(("quadratic_power_bound", maybe(quadratic_power_bound(n, q))?));
            rows.push(("high_q_max", maybe(high_q_max(n, q))?));
            rows.push((
                "doubled_bound",
                if n == 2 * q {
                    maybe(doubled_bound(q))?
                } else {
                    None
                },
            ));
        }
        None => {
            for name in [
                "alphabet_power_sum",
                "power_sum_bound",
                "quadratic_power_bound",
                "high_q_max",
                "doubled_bound",
            ] {
                rows.push((name, None));
            }
        }
    }
    Ok(BoundsReport {
        n,
        q,
        rows,
        conjectured_q: conjecture.map(|c| c.achieving_q),
    })
}
