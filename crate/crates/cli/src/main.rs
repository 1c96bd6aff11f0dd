//! `opmeans` — seeded verification suites over operator-mean laws, law
//! replay from serialized instances, and ad-hoc matrix powers.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use opmeans_core::funcalc::{real_power_contour, real_power_spectral, spectrum_bounds, ContourSpec};
use opmeans_core::fuzz::{emit_report, render_report, run_suite, FuzzConfig, ReportFormat};
use opmeans_core::laws::{evaluate_instance_with, LawInstance};
use opmeans_core::linalg::{ComplexMatrix, PositiveMatrix};

#[derive(Parser)]
#[command(
    name = "opmeans",
    about = "Numerical verification of operator-mean identities and inequalities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleArg {
    /// Cross-check the spectral power against the contour-integral route.
    Contour,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded law suites over random matrix instances.
    Fuzz {
        /// Master seed for instance generation.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Trials per (law, dimension) cell.
        #[arg(long, default_value_t = 1000)]
        trials: u32,
        /// Comma-separated matrix dimensions (each in 1..=16).
        #[arg(long, value_delimiter = ',', default_values_t = vec![1, 2, 3, 4, 6, 8])]
        dims: Vec<usize>,
        /// Condition-number cap for generated instances.
        #[arg(long, default_value_t = 100.0)]
        cond_max: f64,
        /// Comma-separated weight grid.
        #[arg(long = "nu", value_delimiter = ',',
              default_values_t = vec![0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0])]
        nu: Vec<f64>,
        /// Law-id globs selecting which laws to run.
        #[arg(long = "suite", value_delimiter = ',', default_values_t = vec!["*".to_owned()])]
        suite: Vec<String>,
        /// Relative tolerance for order margins.
        #[arg(long, default_value_t = 1e-9)]
        tol_rel: f64,
        /// Report file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Json)]
        format: FormatArg,
        /// Serialize the worst instance per law even without failures.
        #[arg(long)]
        keep_worst: bool,
    },
    /// Replay one law on a serialized instance file.
    Check {
        /// Law id; must match the instance file.
        #[arg(long)]
        law: String,
        /// Path to a JSON law instance (e.g. a report's worst_instance).
        #[arg(long)]
        input: PathBuf,
        /// Relative tolerance for order margins.
        #[arg(long, default_value_t = 1e-9)]
        tol_rel: f64,
    },
    /// Real power of a positive matrix, optionally cross-checked by the
    /// contour-integral oracle.
    Power {
        /// Path to a matrix JSON file; must be positive definite.
        #[arg(long)]
        input: PathBuf,
        /// Exponent.
        #[arg(long)]
        alpha: f64,
        #[arg(long, value_enum)]
        oracle: Option<OracleArg>,
        /// Quadrature nodes for the contour oracle (power of two, >= 16).
        #[arg(long, default_value_t = 256)]
        nodes: usize,
    },
}

fn run_fuzz(config: &FuzzConfig) -> opmeans_core::Result<ExitCode> {
    let report = run_suite(config)?;
    for (law_id, summary) in &report.per_law {
        eprintln!(
            "{:42} trials {:7}  failures {:3}  worst margin {:+.3e}",
            law_id, summary.trials, summary.failures, summary.worst_margin
        );
    }
    let failures = report.total_failures();
    eprintln!(
        "{} laws, {} failures, {} ms",
        report.per_law.len(),
        failures,
        report.wall_time_ms
    );
    match &config.out_path {
        Some(path) => emit_report(&report, config.format, std::path::Path::new(path))?,
        None => print!("{}", render_report(&report, config.format)?),
    }
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run_check(law: &str, input: &PathBuf, tol_rel: f64) -> opmeans_core::Result<ExitCode> {
    let text = std::fs::read_to_string(input)?;
    let instance: LawInstance = serde_json::from_str(&text)?;
    if instance.law_id != law {
        return Err(opmeans_core::Error::InvalidInstance {
            reason: format!("instance is for law `{}`, not `{law}`", instance.law_id),
        });
    }
    let report = evaluate_instance_with(&instance, tol_rel)?;
    let value = serde_json::to_value(&report)?;
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn run_power(
    input: &PathBuf,
    alpha: f64,
    oracle: Option<OracleArg>,
    nodes: usize,
) -> opmeans_core::Result<ExitCode> {
    let text = std::fs::read_to_string(input)?;
    let matrix: ComplexMatrix = serde_json::from_str(&text)?;
    let positive = PositiveMatrix::try_from_matrix(matrix)?;
    let spectral = real_power_spectral(&positive, alpha)?;
    match oracle {
        None => {
            let value = serde_json::to_value(spectral.matrix())?;
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
        Some(OracleArg::Contour) => {
            let contour = ContourSpec::enclosing(spectrum_bounds(&positive), nodes)?;
            let quadrature = real_power_contour(&positive, alpha, &contour)?;
            let diff = quadrature.sub(spectral.matrix())?.frobenius_norm();
            let rel = diff / spectral.matrix().frobenius_norm().max(1e-300);
            let value = serde_json::json!({
                "spectral": spectral.matrix(),
                "contour": quadrature,
                "contour_spec": contour,
                "rel_residual": rel,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Fuzz {
            seed,
            trials,
            dims,
            cond_max,
            nu,
            suite,
            tol_rel,
            out,
            format,
            keep_worst,
        } => {
            let config = FuzzConfig {
                master_seed: seed,
                trials,
                dims,
                cond_max,
                nu_grid: nu,
                suites: suite,
                tol_rel,
                out_path: out.map(|p| p.display().to_string()),
                format: match format {
                    FormatArg::Json => ReportFormat::Json,
                    FormatArg::Csv => ReportFormat::Csv,
                },
                keep_worst,
            };
            run_fuzz(&config)
        }
        Command::Check { law, input, tol_rel } => run_check(&law, &input, tol_rel),
        Command::Power { input, alpha, oracle, nodes } => run_power(&input, alpha, oracle, nodes),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
