//! `quotdt`: series, verification suites, distributions and saddle sweeps.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use quotdt::asymptotic::{saddle_sweep, sweep_csv, Combination, SweepOptions, DEFAULT_TAIL_TOL};
use quotdt::planepart::{distribution, distribution_csv, DistSource, Distribution};
use quotdt::qseries::{expand_dt, series_to_csv, SeriesRecord};
use quotdt::verify::{run_suite, Suite};

#[derive(Parser, Debug)]
#[command(name = "quotdt", version, about = "Exact DT series of affine 3-space and related checks")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Coefficients of the rank-r DT series through q^N.
    Dt {
        /// Rank (number of colours), at least 1.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        /// Highest power of q kept.
        #[arg(long, alias = "n", default_value_t = 6)]
        trunc: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run a named identity suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Rank (number of colours), at least 1.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        /// Order through which the identity is checked.
        #[arg(long, alias = "trunc", default_value_t = 6)]
        n: usize,
        #[command(flatten)]
        out: OutputArgs,
        /// Corrupt one reference value (exercises the failure path).
        #[arg(long, hide = true)]
        perturb: bool,
    },
    /// Exact distribution of the statistic S_{n,r}.
    Dist {
        /// Rank (number of colours), at least 1.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        /// Size of the colored plane partitions.
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = SourceArg::Mpoly)]
        source: SourceArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Saddle point, moment estimates and log-count approximation per n.
    Saddle {
        /// Rank (number of colours), at least 1.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        /// One or more sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
        n: Vec<u64>,
        /// Coefficients alpha,beta,gamma of alpha X + beta Y + gamma Z.
        #[arg(long, value_delimiter = ',', num_args = 1, default_value = "-2,-2,4", allow_hyphen_values = true)]
        weights: Vec<f64>,
        /// Relative tail tolerance for the moment sums.
        #[arg(long, default_value_t = DEFAULT_TAIL_TOL)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output format (json for dt/verify, csv for dist/saddle by default).
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SourceArg {
    Enum,
    Mpoly,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Factorization,
    Wallcross,
    Plethystic,
    Euler,
    Enumeration,
    Qpoly,
    Feitfine,
    Telescoping,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Factorization => Suite::Factorization,
            SuiteArg::Wallcross => Suite::Wallcross,
            SuiteArg::Plethystic => Suite::Plethystic,
            SuiteArg::Euler => Suite::Euler,
            SuiteArg::Enumeration => Suite::Enumeration,
            SuiteArg::Qpoly => Suite::Qpoly,
            SuiteArg::Feitfine => Suite::Feitfine,
            SuiteArg::Telescoping => Suite::Telescoping,
        }
    }
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<quotdt::Error> for Failure {
    fn from(e: quotdt::Error) -> Self {
        match e {
            quotdt::Error::Verification(m) => Failure::Mismatch(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn emit(out: &OutputArgs, text: String) -> Result<(), Failure> {
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct DistJson {
    r: usize,
    n: u32,
    total: String,
    mean: String,
    variance: String,
    hist: BTreeMap<String, String>,
}

fn dist_json(d: &Distribution) -> String {
    to_json(&DistJson {
        r: d.r,
        n: d.n,
        total: d.total().to_string(),
        mean: d.mean().to_string(),
        variance: d.variance().to_string(),
        hist: d.hist.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Dt { r, trunc, out } => {
            let series = expand_dt(r as usize, trunc);
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&SeriesRecord::new(r as usize, &series)),
                Format::Csv => series_to_csv(&series)?,
            };
            emit(&out, text)
        }
        Command::Verify { suite, r, n, out, perturb } => {
            let report = run_suite(suite.into(), r as usize, n, perturb)?;
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Json => to_json(&report),
                Format::Csv => format!(
                    "suite,r,n,passed,detail\n{},{},{},{},\"{}\"\n",
                    report.suite,
                    report.r,
                    report.n,
                    report.passed,
                    report.detail.replace('"', "\"\"")
                ),
            };
            emit(&out, text)?;
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Mismatch(format!("{}: {}", report.suite, report.detail)))
            }
        }
        Command::Dist { r, n, source, out } => {
            let source = match source {
                SourceArg::Enum => DistSource::Enum,
                SourceArg::Mpoly => DistSource::MPoly,
            };
            let d = distribution(r as usize, n, source)?;
            let text = match out.format.unwrap_or(Format::Csv) {
                Format::Csv => distribution_csv(std::slice::from_ref(&d)),
                Format::Json => dist_json(&d),
            };
            emit(&out, text)
        }
        Command::Saddle { r, n, weights, tol, out } => {
            let [alpha, beta, gamma] = weights[..] else {
                return Err(Failure::Usage(format!("--weights needs three values, got {}", weights.len())));
            };
            if !(tol > 0.0 && tol < 1.0) {
                return Err(Failure::Usage(format!("--tol must lie in (0, 1), got {tol}")));
            }
            let opts = SweepOptions { tail_tol: tol, ..SweepOptions::default() };
            let rows = saddle_sweep(r as usize, &n, Combination::new(alpha, beta, gamma), opts)?;
            let text = match out.format.unwrap_or(Format::Csv) {
                Format::Csv => sweep_csv(&rows),
                Format::Json => to_json(&rows),
            };
            emit(&out, text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
