use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use spin7_core::analysis::{analyze, Analysis, AnalyzeOptions};
use spin7_core::config::{Config, ConfigError};
use spin7_core::report::{render_json, render_summary, render_table};
use spin7_core::verify::{run_identities, VerifyOptions};
use spin7_core::wps::{scan_admissible, ScanCandidate};

const EXIT_MATH: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "spin7", version, about = "Spin(7) linear algebra and orbifold invariants")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the exact identity suite for the Cayley form.
    VerifyForms {
        /// Also probe the Newton projection onto admissible 4-forms.
        #[arg(long)]
        with_newton: bool,
        /// Residual tolerance of the Newton projection.
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
        /// Number of random directions per slope study.
        #[arg(long, default_value_t = 20)]
        directions: usize,
        /// Flip one sign of the Cayley form (mutation check of the suite).
        #[arg(long, hide = true)]
        inject_sign_flip: bool,
    },
    /// Check a configuration and compute the invariants of M.
    Analyze {
        config: PathBuf,
        /// Accept equations whose quasismoothness cannot be certified.
        #[arg(long)]
        allow_uncertified: bool,
    },
    /// Search weighted projective 4-spaces for admissible candidates.
    Scan {
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
        #[arg(long, default_value_t = 4)]
        ambient_dim: usize,
        /// Also list rejected weight systems with the failing checks.
        #[arg(long)]
        all: bool,
    },
    /// Summarise several configurations in one table.
    Report {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
        #[arg(long)]
        allow_uncertified: bool,
    },
}

fn load(path: &Path, opts: AnalyzeOptions) -> Result<Analysis, ConfigError> {
    let orb = Config::load(path)?.validate()?;
    Ok(analyze(&orb, opts))
}

fn render_scan(candidates: &[ScanCandidate], all: bool) -> String {
    let mut out = String::new();
    let shown: Vec<&ScanCandidate> = candidates.iter().filter(|c| all || c.admissible).collect();
    writeln!(
        out,
        "{} weight systems examined, {} admissible",
        candidates.len(),
        candidates.iter().filter(|c| c.admissible).count()
    )
    .unwrap();
    for c in shown {
        let w: Vec<String> = c.weights.iter().map(u32::to_string).collect();
        let verdict = if c.admissible { "admissible" } else { "rejected" };
        writeln!(out, "({}) {verdict}", w.join(",")).unwrap();
        for check in &c.checks {
            let mark = if check.passed { "ok  " } else { "FAIL" };
            writeln!(out, "  [{mark}] {:<40} {}", check.name, check.detail).unwrap();
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::VerifyForms {
            with_newton,
            tolerance,
            directions,
            inject_sign_flip,
        } => {
            if tolerance.is_nan() || tolerance <= 0.0 {
                eprintln!("error: --tolerance must be positive");
                return ExitCode::from(EXIT_INPUT);
            }
            let report = run_identities(&VerifyOptions {
                with_newton,
                inject_sign_flip,
                tolerance,
                directions,
                ..VerifyOptions::default()
            });
            match cli.format {
                Format::Table => print!("{}", report.render_table()),
                Format::Structured => print!("{}", render_json(&report)),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MATH)
            }
        }
        Command::Analyze {
            config,
            allow_uncertified,
        } => match load(&config, AnalyzeOptions { allow_uncertified }) {
            Ok(a) => {
                match cli.format {
                    Format::Table => print!("{}", render_table(&a)),
                    Format::Structured => print!("{}", render_json(&a)),
                }
                if let Some(f) = &a.failure {
                    eprintln!("error: {f}");
                    ExitCode::from(EXIT_MATH)
                } else {
                    ExitCode::SUCCESS
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_INPUT)
            }
        },
        Command::Scan {
            max_weight,
            ambient_dim,
            all,
        } => {
            let candidates = scan_admissible(max_weight, ambient_dim);
            match cli.format {
                Format::Table => print!("{}", render_scan(&candidates, all)),
                Format::Structured => {
                    let shown: Vec<&ScanCandidate> =
                        candidates.iter().filter(|c| all || c.admissible).collect();
                    print!("{}", render_json(&shown))
                }
            }
            ExitCode::SUCCESS
        }
        Command::Report {
            configs,
            allow_uncertified,
        } => {
            let mut analyses = Vec::new();
            for path in &configs {
                match load(path, AnalyzeOptions { allow_uncertified }) {
                    Ok(a) => analyses.push(a),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(EXIT_INPUT);
                    }
                }
            }
            match cli.format {
                Format::Table => print!("{}", render_summary(&analyses)),
                Format::Structured => print!("{}", render_json(&analyses)),
            }
            if analyses.iter().all(Analysis::passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_MATH)
            }
        }
    }
}
