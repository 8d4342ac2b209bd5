//! `dab`: exact tables, oracle checks, samples and limit-surface data for
//! doubly alternating Baxter permutations.
//!
//! Exit status is 0 on success, 1 when a computation or a verification suite
//! fails, and 2 on a usage error (bad flag, value out of range).

mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dab_core::enumerate::{count_matrix, CornerTable, EXACT_MAX_M, FLOAT_MAX_M};
use dab_core::perm::brute_count_matrix;
use dab_core::sample::{SampleBatch, SAMPLE_MAX_M};
use dab_core::surface::{slice_compare, surface_grid, GRID_TOL};
use dab_core::{CountMatrix, Error, Mode};

/// Largest half-length the brute-force matrix accepts.
const BRUTE_MAX_M: usize = 6;

#[derive(Parser)]
#[command(
    name = "dab",
    version,
    about = "Doubly alternating Baxter permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Matrix of B(m,i,j) (exact mode) or of P(m,i,j) (float mode).
    Exact {
        #[command(flatten)]
        size: Size,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        #[command(flatten)]
        emit: Emit,
    },
    /// Matrix of B(m,i,j) by exhaustive enumeration (m <= 6).
    Brute {
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        emit: Emit,
    },
    /// Run the oracle-equivalence suites and print a pass/fail table.
    Verify {
        #[arg(long, default_value_t = verify::VERIFY_MAX_M)]
        max_m: usize,
    },
    /// Uniform samples from B_2m (or B_2m+1 with --odd).
    Sample {
        #[command(flatten)]
        size: Size,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample length 2m+1 instead of 2m.
        #[arg(long)]
        odd: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid of the limit surface at cell centres.
    Surface {
        #[arg(long, default_value_t = 100)]
        grid: usize,
        #[arg(long, default_value_t = GRID_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// m P(m, 2 alpha m, 2 beta m) against phi(alpha, beta) for a range of beta.
    Slice {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta_min: f64,
        #[arg(long)]
        beta_max: f64,
        #[arg(long, default_value_t = 81)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The six corner probabilities, exactly.
    Corners {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Half-length `--m`, or permutation length `--n`.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Size {
    /// Half-length: permutations have length 2m.
    #[arg(long)]
    m: Option<usize>,
    /// Permutation length; must be even unless --odd is given.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct Emit {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfRange { .. } | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            Error::Parse { .. } => Failure::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(format!("write failed: {e}"))
    }
}

type Outcome = Result<ExitCode, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl Size {
    /// The half-length implied by `--m` or `--n`.
    fn resolve(&self, odd_allowed: bool, odd_flag: bool) -> Result<usize, Failure> {
        match (self.m, self.n) {
            (Some(m), None) => Ok(m),
            (None, Some(n)) if n % 2 == 0 && !odd_flag => Ok(n / 2),
            (None, Some(n)) if n % 2 == 1 && odd_allowed && odd_flag => Ok(n / 2),
            (None, Some(n)) if odd_flag => Err(usage(format!(
                "--n {n} is even but --odd asks for odd length; pass --m {} instead",
                n / 2
            ))),
            (None, Some(n)) => Err(usage(if odd_allowed {
                format!("--n {n} is odd; add --odd to sample odd lengths")
            } else {
                format!("--n {n} is odd; this command works with even lengths n = 2m")
            })),
            _ => Err(usage("give exactly one of --m and --n")),
        }
    }
}

fn check_m(m: usize, lo: usize, hi: usize, what: &str) -> Result<(), Failure> {
    if m < lo || m > hi {
        Err(usage(format!(
            "m = {m} is out of range for {what}: need {lo} <= m <= {hi}"
        )))
    } else {
        Ok(())
    }
}

fn emit_matrix(mat: &CountMatrix, emit: &Emit) -> Outcome {
    let text = match emit.format {
        Format::Csv => mat.to_csv(),
        Format::Json => mat.to_json(),
    };
    output::emit(&text, emit.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Exact { size, mode, emit } => {
            let m = size.resolve(false, false)?;
            let (mode, bound) = match mode {
                ModeArg::Exact => (Mode::Exact, EXACT_MAX_M),
                ModeArg::Float => (Mode::Float, FLOAT_MAX_M),
            };
            check_m(m, 1, bound, &format!("{mode} mode"))?;
            emit_matrix(&count_matrix(m, mode)?, &emit)
        }
        Command::Brute { size, emit } => {
            let m = size.resolve(false, false)?;
            check_m(m, 1, BRUTE_MAX_M, "brute force")?;
            emit_matrix(&brute_count_matrix(2 * m)?, &emit)
        }
        Command::Verify { max_m } => {
            check_m(max_m, 1, verify::VERIFY_MAX_M, "verify")?;
            let reports = verify::run(max_m);
            output::emit(&verify::render(&reports), None)?;
            if reports.iter().all(|r| r.failure.is_none()) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Sample {
            size,
            count,
            seed,
            odd,
            out,
        } => {
            let m = size.resolve(true, odd)?;
            check_m(m, 0, SAMPLE_MAX_M, "sampling")?;
            if count == 0 {
                return Err(usage("--count must be at least 1"));
            }
            let batch = SampleBatch::generate(m, count, seed, odd)?;
            output::emit(&batch.to_text(), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Surface { grid, tol, out } => {
            let g = surface_grid(grid, tol)?;
            output::emit(&g.to_csv(), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Slice {
            size,
            alpha,
            beta_min,
            beta_max,
            steps,
            out,
        } => {
            let m = size.resolve(false, false)?;
            check_m(m, 1, FLOAT_MAX_M, "slices")?;
            if steps == 0 {
                return Err(usage("--steps must be at least 1"));
            }
            if beta_min.is_nan() || beta_max.is_nan() || beta_min > beta_max {
                return Err(usage(format!(
                    "--beta-min {beta_min} must not exceed --beta-max {beta_max}"
                )));
            }
            let betas: Vec<f64> = if steps == 1 {
                vec![beta_min]
            } else {
                let step = (beta_max - beta_min) / (steps - 1) as f64;
                // Rounded to 12 decimals so that 0.1 + 2 * 0.1 prints as 0.3.
                (0..steps)
                    .map(|k| match k {
                        0 => beta_min,
                        k if k + 1 == steps => beta_max,
                        k => ((beta_min + k as f64 * step) * 1e12).round() / 1e12,
                    })
                    .collect()
            };
            let table = slice_compare(m, alpha, &betas)?;
            output::emit(&table.to_csv(), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Corners { size, out } => {
            let m = size.resolve(false, false)?;
            check_m(m, 2, FLOAT_MAX_M, "corners")?;
            let table = CornerTable::compute(m as i64)?;
            output::emit(&table.to_csv(), out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("DAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| usage(format!("DAB_THREADS={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Compute(format!("cannot start thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| run(cli.command)) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("dab: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("dab: {msg}");
            ExitCode::from(1)
        }
    }
}
