use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use monoclass::{classify, classify_relation, ClassificationReport, Tolerance};

mod input;
mod output;
mod sweep;
mod table;
mod verify;

use input::Source;
use output::Format;

/// Classify monotone linear operators and relations into the classes
/// PM, SM, 3CM, MM and 3*.
#[derive(Parser)]
#[command(name = "monoclass", version)]
struct Cli {
    /// Output format; defaults to json for reports and csv for tables.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Absolute and relative eigenvalue tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct InputArgs {
    /// Rows given on the command line, as JSON or CSV.
    #[arg(long)]
    inline: Option<String>,
    /// File holding the rows, as JSON or CSV.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl InputArgs {
    fn source(&self) -> Source<'_> {
        match (&self.inline, &self.file) {
            (Some(s), _) => Source::Inline(s),
            (None, Some(p)) => Source::File(p),
            (None, None) => unreachable!("clap requires one input"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a square matrix.
    Classify(InputArgs),
    /// Classify a linear relation given by graph basis rows (x, x*) of length 2d.
    ClassifyRelation(InputArgs),
    /// Class-relationship table with live examples.
    Table {
        #[arg(value_enum)]
        which: table::Which,
        /// Number of truncations N in the alpha* series of infinite-dimensional rows.
        #[arg(long)]
        alpha_decay: Option<usize>,
    },
    /// n-cyclic monotonicity of rotations over a grid of angles.
    Sweep {
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 50)]
        grid: usize,
    },
    /// Run the self-check suites.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per suite.
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = verify::Suite::All)]
        suite: verify::Suite,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<verify::Fault>,
    },
}

/// Writes `text` plus a newline to stdout; a closed pipe is not an error.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{}", text.trim_end()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_report(r: &ClassificationReport, format: Format) -> Result<()> {
    let text = match format {
        Format::Json => output::report_json(r)?,
        Format::Text => output::report_text(r),
        Format::Csv => output::report_csv(r)?,
        Format::Dot => bail!("reports support json, text and csv"),
    };
    emit(&text)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let tol = match cli.tol {
        Some(eps) => Tolerance::uniform(eps)?,
        None => Tolerance::default(),
    };
    match cli.command {
        Command::Classify(args) => {
            let a = input::read_matrix(&args.source())?;
            print_report(&classify(&a, &tol), cli.format.unwrap_or(Format::Json))?;
        }
        Command::ClassifyRelation(args) => {
            let a = input::read_relation(&args.source(), &tol)?;
            print_report(&classify_relation(&a, &tol), cli.format.unwrap_or(Format::Json))?;
        }
        Command::Table { which, alpha_decay } => {
            let rows = table::build(which, alpha_decay, &tol)?;
            emit(&table::render(&rows, cli.format.unwrap_or(Format::Csv))?)?;
        }
        Command::Sweep { n_max, grid } => {
            let points = sweep::run(n_max, grid, &tol)?;
            emit(&sweep::render(&points, cli.format.unwrap_or(Format::Csv))?)?;
        }
        Command::Verify {
            seed,
            budget,
            suite,
            inject_fault,
        } => {
            if budget == 0 {
                bail!("--budget must be at least 1");
            }
            let report = verify::run(seed, budget, suite, inject_fault, &tol);
            emit(&verify::render(&report, cli.format.unwrap_or(Format::Json))?)?;
            if !report.ok {
                let failed: usize = report.suites.iter().map(|s| s.failed).sum();
                eprintln!("verification failed: {failed} check(s)");
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
