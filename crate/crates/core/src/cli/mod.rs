//! The `cobweb` command line.
//!
//! ```text
//! cobweb <verb> [args] [--format plain|csv|dot|structured] [--out <path>]
//!        [--max-n <int>] [--unsafe-enumeration-limit <int>]
//! ```
//!
//! Exit status: 0 success, 1 verification failure, 2 usage error,
//! 3 refused by the enumeration guard or a size cap.

mod bench;
mod export;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::chains::{
    count_from_root_formula, count_layer_chains_formula, verify_observation_with_guard, ChainError,
    Enumerator, LayerSpec, Observation, DEFAULT_GUARD,
};
use crate::fibcalc::{falling_f_factorial, fib, fib_factorial, fibonomial, fibonomial_row};
use crate::poset::{build_cobweb, CobwebPoset, PosetError, Vertex, LARGE_DEPTH_WARNING};
use crate::zeta::{render_blocks, zeta_matrix, ZetaError};

pub use bench::{bench, BenchRow};
pub use export::hasse_dot;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;

const DEFAULT_VERIFY_MAX_N: usize = 7;
const DEFAULT_BENCH_MAX_N: usize = 9;

#[derive(Debug, Parser)]
#[command(
    name = "cobweb",
    version,
    about = "Fibonomial calculus and cobweb poset chain counting"
)]
struct Args {
    #[command(subcommand)]
    verb: Verb,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Largest level for `verify` and `bench`.
    #[arg(long, global = true)]
    max_n: Option<usize>,

    /// Raise the enumeration guard (default 100000000 predicted chains).
    #[arg(long, global = true, value_name = "N")]
    unsafe_enumeration_limit: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Dot,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ObsArg {
    Obs1,
    Obs2,
    Obs3,
    All,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// F_n
    Fib { n: usize },
    /// n_F! = F_1 F_2 ... F_n
    Fibfact { n: usize },
    /// F_n F_{n-1} ... F_{n-k+1}
    Falling { n: usize, k: usize },
    /// Fibonomial coefficient (n k)_F
    Binom { n: usize, k: usize },
    /// Row n of the Fibonomial triangle
    Row { n: usize },
    /// Summarize the cobweb poset P_depth
    Build { depth: usize },
    /// Export the zeta matrix (csv) or Hasse diagram (dot) of P_depth
    Export { depth: usize },
    /// Count chains to level N from the root, or from level K with `chains K N`
    Chains { first: usize, second: Option<usize> },
    /// Check the chain-counting formulas against enumeration
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        obs: ObsArg,
    },
    /// Time formula counting against enumeration
    Bench { max_n: Option<usize> },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Refused(String),
    #[error("verification failed")]
    Verification(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Refused(_) => EXIT_REFUSED,
            CliError::Verification(_) => EXIT_VERIFICATION,
            CliError::Io { .. } => EXIT_USAGE,
        }
    }
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::DepthTooLarge(_) => CliError::Refused(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        match e {
            ChainError::GuardExceeded { .. } => CliError::Refused(e.to_string()),
            ChainError::QuotientMismatch { .. } => CliError::Verification(e.to_string()),
            ChainError::Poset(p) => p.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ZetaError> for CliError {
    fn from(e: ZetaError) -> Self {
        match e {
            ZetaError::TooLarge { .. } => CliError::Refused(e.to_string()),
            ZetaError::Poset(p) => p.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn unsupported(verb: &str, format: Format) -> CliError {
    CliError::Usage(format!(
        "--format {} is not supported by `{verb}`",
        format.to_possible_value().unwrap().get_name()
    ))
}

/// Output of a successful command, plus whether it reports a failed check.
struct Outcome {
    body: String,
    failed: bool,
}

impl From<String> for Outcome {
    fn from(body: String) -> Self {
        Self {
            body,
            failed: false,
        }
    }
}

/// Parses `argv` (program name first), runs the command, and returns the
/// exit status. Output goes to `stdout` unless `--out` names a file.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let guard = args.unsafe_enumeration_limit.unwrap_or(DEFAULT_GUARD);
    if guard != DEFAULT_GUARD {
        let _ = writeln!(
            stderr,
            "warning: enumeration guard overridden to {guard} predicted chains"
        );
    }
    let result = execute(&args, guard, stderr).and_then(|outcome| {
        match &args.out {
            Some(path) => fs::write(path, &outcome.body).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?,
            None => {
                let _ = stdout.write_all(outcome.body.as_bytes());
            }
        }
        Ok(outcome.failed)
    });
    match result {
        Ok(false) => EXIT_OK,
        Ok(true) => EXIT_VERIFICATION,
        Err(e) => {
            match &e {
                CliError::Verification(detail) => {
                    let _ = writeln!(stderr, "error: {e}: {detail}");
                }
                CliError::Usage(_) => {
                    let _ = writeln!(stderr, "error: {e}\n\nusage: cobweb <verb> [args] [--format plain|csv|dot|structured] [--out <path>] [--max-n <int>] [--unsafe-enumeration-limit <int>]");
                }
                _ => {
                    let _ = writeln!(stderr, "error: {e}");
                }
            }
            e.exit_code()
        }
    }
}

fn warn_depth(depth: usize, stderr: &mut dyn Write) {
    if depth > LARGE_DEPTH_WARNING {
        let _ = writeln!(
            stderr,
            "warning: depth {depth} materializes F_{} - 1 vertices",
            depth + 2
        );
    }
}

fn scalar(
    verb: &str,
    format: Format,
    fields: &str,
    value: impl std::fmt::Display,
) -> Result<Outcome, CliError> {
    match format {
        Format::Plain | Format::Csv => Ok(format!("{value}\n").into()),
        Format::Structured => Ok(format!("{fields} value={value}\n").into()),
        Format::Dot => Err(unsupported(verb, format)),
    }
}

fn execute(args: &Args, guard: u64, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    match &args.verb {
        Verb::Fib { n } => scalar(
            "fib",
            fmt_or(args, Format::Plain),
            &format!("n={n}"),
            fib(*n),
        ),
        Verb::Fibfact { n } => scalar(
            "fibfact",
            fmt_or(args, Format::Plain),
            &format!("n={n}"),
            fib_factorial(*n),
        ),
        Verb::Falling { n, k } => scalar(
            "falling",
            fmt_or(args, Format::Plain),
            &format!("n={n} k={k}"),
            falling_f_factorial(*n, *k),
        ),
        Verb::Binom { n, k } => scalar(
            "binom",
            fmt_or(args, Format::Plain),
            &format!("n={n} k={k}"),
            fibonomial(*n, *k),
        ),
        Verb::Row { n } => {
            let row = fibonomial_row(*n);
            let joined = |sep: &str| {
                row.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(sep)
                    + "\n"
            };
            match fmt_or(args, Format::Plain) {
                Format::Plain => Ok(joined(" ").into()),
                Format::Csv => Ok(joined(",").into()),
                Format::Structured => {
                    let mut out = String::new();
                    for (k, v) in row.iter().enumerate() {
                        let _ = writeln!(out, "n={n} k={k} value={v}");
                    }
                    Ok(out.into())
                }
                f => Err(unsupported("row", f)),
            }
        }
        Verb::Build { depth } => {
            warn_depth(*depth, stderr);
            let poset = build_cobweb(*depth)?;
            build_summary(&poset, fmt_or(args, Format::Plain))
        }
        Verb::Export { depth } => {
            warn_depth(*depth, stderr);
            let poset = build_cobweb(*depth)?;
            match fmt_or(args, Format::Csv) {
                Format::Csv => Ok(zeta_matrix(&poset)?.to_csv().into()),
                Format::Dot => Ok(hasse_dot(&poset).into()),
                Format::Plain => Ok(render_blocks(&zeta_matrix(&poset)?, &poset).into()),
                f => Err(unsupported("export", f)),
            }
        }
        Verb::Chains { first, second } => {
            let (k, n) = match second {
                Some(n) => (*first, *n),
                None => (1, *first),
            };
            warn_depth(n, stderr);
            chains(k, n, second.is_none(), guard, fmt_or(args, Format::Plain))
        }
        Verb::Verify { obs } => {
            let max_n = args.max_n.unwrap_or(DEFAULT_VERIFY_MAX_N);
            let which: Vec<Observation> = match obs {
                ObsArg::Obs1 => vec![Observation::Obs1],
                ObsArg::Obs2 => vec![Observation::Obs2],
                ObsArg::Obs3 => vec![Observation::Obs3],
                ObsArg::All => Observation::ALL.to_vec(),
            };
            let format = fmt_or(args, Format::Plain);
            if !matches!(format, Format::Plain | Format::Structured) {
                return Err(unsupported("verify", format));
            }
            let mut body = String::new();
            let mut failed = false;
            for obs in which {
                let report = verify_observation_with_guard(obs, max_n, guard)?;
                failed |= !report.passed();
                body.push_str(&match format {
                    Format::Structured => report.to_structured(),
                    _ => report.to_plain(),
                });
            }
            Ok(Outcome { body, failed })
        }
        Verb::Bench { max_n } => {
            let max_n = max_n.or(args.max_n).unwrap_or(DEFAULT_BENCH_MAX_N);
            let format = fmt_or(args, Format::Plain);
            if !matches!(format, Format::Plain | Format::Structured) {
                return Err(unsupported("bench", format));
            }
            let rows = bench(max_n, guard)?;
            let body = render_bench(&rows, format);
            if let Some(bad) = rows.iter().find(|r| !r.agrees()) {
                let _ = stderr.write_all(body.as_bytes());
                return Err(CliError::Verification(format!(
                    "n = {}: formula {} but enumeration {}",
                    bad.n,
                    bad.formula,
                    bad.enumeration.as_ref().unwrap().0
                )));
            }
            Ok(body.into())
        }
    }
}

fn fmt_or(args: &Args, default: Format) -> Format {
    args.format.unwrap_or(default)
}

fn build_summary(poset: &CobwebPoset, format: Format) -> Result<Outcome, CliError> {
    let sizes = poset
        .level_sizes()
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>();
    match format {
        Format::Plain => Ok(format!(
            "cobweb poset P_{}\nlevel sizes: {}\nvertices: {}\ncover pairs: {}\n",
            poset.depth(),
            sizes.join(" "),
            poset.vertex_count(),
            poset.cover_count()
        )
        .into()),
        Format::Structured => Ok(format!(
            "depth={} level_sizes={} vertices={} covers={}\n",
            poset.depth(),
            sizes.join(","),
            poset.vertex_count(),
            poset.cover_count()
        )
        .into()),
        f => Err(CliError::Usage(format!(
            "--format {} is not supported by `build`; use `export`",
            f.to_possible_value().unwrap().get_name()
        ))),
    }
}

fn chains(
    k: usize,
    n: usize,
    from_root: bool,
    guard: u64,
    format: Format,
) -> Result<Outcome, CliError> {
    let formula = if from_root {
        count_from_root_formula(n)?
    } else {
        count_layer_chains_formula(k, n)?
    };
    let poset = build_cobweb(n)?;
    let enumerator = Enumerator::new(&poset).with_guard(guard);
    let oracle = if from_root {
        enumerator.count_from_root(n)?
    } else {
        enumerator.count_layer(LayerSpec::new(Vertex::new(k, 0), n)?)?
    };
    let failed = formula != oracle;
    let status = if failed { "fail" } else { "pass" };
    let body = match format {
        Format::Plain => format!("formula: {formula}\nenumerated: {oracle}\n"),
        Format::Structured => {
            format!("k={k} n={n} formula={formula} oracle={oracle} status={status}\n")
        }
        f => return Err(unsupported("chains", f)),
    };
    Ok(Outcome { body, failed })
}

fn render_bench(rows: &[BenchRow], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Structured => {
            for r in rows {
                match &r.enumeration {
                    Some((count, t)) => {
                        let _ = writeln!(
                            out,
                            "n={} formula={} oracle={count} formula_ns={} enumerate_ns={} status={}",
                            r.n,
                            r.formula,
                            r.formula_time.as_nanos(),
                            t.as_nanos(),
                            if r.agrees() { "pass" } else { "fail" }
                        );
                    }
                    None => {
                        let _ = writeln!(
                            out,
                            "n={} formula={} oracle=skipped formula_ns={} status=skipped",
                            r.n,
                            r.formula,
                            r.formula_time.as_nanos()
                        );
                    }
                }
            }
        }
        _ => {
            out.push_str("# timings are wall-clock and vary between runs\n");
            let _ = writeln!(
                out,
                "{:>3}  {:>24}  {:>12}  {:>14}  {:>10}",
                "n", "chains", "formula_ns", "enumerate_ns", "speedup"
            );
            for r in rows {
                match (&r.enumeration, r.speedup()) {
                    (Some((_, t)), Some(s)) => {
                        let _ = writeln!(
                            out,
                            "{:>3}  {:>24}  {:>12}  {:>14}  {:>9.1}x",
                            r.n,
                            r.formula,
                            r.formula_time.as_nanos(),
                            t.as_nanos(),
                            s
                        );
                    }
                    _ => {
                        let _ = writeln!(
                            out,
                            "{:>3}  {:>24}  {:>12}  {:>14}  {:>10}",
                            r.n,
                            r.formula,
                            r.formula_time.as_nanos(),
                            "skipped",
                            "guard"
                        );
                    }
                }
            }
        }
    }
    out
}
