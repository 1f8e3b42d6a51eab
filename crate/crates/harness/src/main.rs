use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use modtime_harness::{convergence_study, run_suite, StudyKind, Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "modtime", version, about = "Verify modular-time identities and run refinement studies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite; exit 0 when every case passes, 1 otherwise.
    Verify {
        suite: Suite,
        /// Oscillator truncation / modular carrier dimension.
        #[arg(long)]
        d: Option<usize>,
        /// Relativistic grid size.
        #[arg(long)]
        n: Option<usize>,
        /// Mellin lattice size.
        #[arg(long)]
        m: Option<usize>,
        /// Inverse temperatures, comma separated.
        #[arg(long = "beta", value_delimiter = ',', default_values_t = [0.5, 1.0])]
        betas: Vec<f64>,
        #[arg(long, default_value_t = modtime_harness::config::DEFAULT_SEED)]
        seed: u64,
        /// Replace every upper-bound tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Keep only cases whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Tabulate the error of a refinement sweep.
    Study {
        kind: StudyKind,
        /// Sizes, comma separated.
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        sizes: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

const USAGE: u8 = 2;

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), ExitCode> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", path.display());
            ExitCode::from(USAGE)
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify { suite, d, n, m, betas, seed, tol, only, out, format } => {
            let cfg = SuiteConfig { suite, d, n, m, betas, seed, tol, only };
            let report = match run_suite(&cfg) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(USAGE);
                }
            };
            let text = match format {
                Format::Json => report.to_json() + "\n",
                Format::Csv => report.body.to_csv(),
            };
            if let Err(code) = emit(&text, out.as_ref()) {
                return code;
            }
            let body = &report.body;
            for c in body.cases.iter().filter(|c| c.status == modtime_harness::Status::Fail) {
                eprintln!("FAIL {} [{}] residual={:?} tol={:e} {}", c.case, c.anchor, c.residual, c.tol, c.note.as_deref().unwrap_or(""));
            }
            for a in &body.missing_anchors {
                eprintln!("MISSING anchor {a}");
            }
            let s = &body.summary;
            eprintln!(
                "{}: {} cases, {} passed, {} failed, {} skipped in {:.2} s",
                body.suite, s.total, s.passed, s.failed, s.skipped, report.stamp.wall_time_s
            );
            if body.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Study { kind, sizes, out, format } => match convergence_study(kind, &sizes) {
            Ok(table) => {
                let text = match format {
                    Format::Json => table.to_json() + "\n",
                    Format::Csv => table.to_csv(),
                };
                match emit(&text, out.as_ref()) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(code) => code,
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(USAGE)
            }
        },
    }
}
