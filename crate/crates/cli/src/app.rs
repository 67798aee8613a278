use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use confhol::{analyze, catalog, Analysis, AnalysisOptions, LieAlgebraSpec};
use serde::Serialize;

use crate::algebra_file::{parse_algebra_file, FileError};
use crate::report::{AnalysisReport, Fixed, Section};

#[derive(Debug, Parser)]
#[command(
    name = "confhol",
    version,
    about = "Conformal holonomy of bi-invariant metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the built-in algebras
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the pipeline and print a report
    Analyze(Input),
    /// Run the pipeline and check every identity against the tolerance
    Verify(Input),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["algebra", "file"])))]
struct Input {
    /// Built-in algebra, e.g. `so(4)` or `so(3)+so(3)`
    #[arg(long)]
    algebra: Option<String>,
    /// Structure-constant JSON file
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Section::All)]
    report: Section,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Serialize)]
struct CheckRow {
    check: &'static str,
    value: Fixed,
    ok: bool,
}

#[derive(Serialize)]
struct VerifyReport {
    algebra: String,
    checks: Vec<CheckRow>,
    holonomy_dim: usize,
    candidate_name: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Algebra(#[from] confhol::Error),
    #[error("residuals above tolerance {tolerance:e}: {names}")]
    Residuals { tolerance: f64, names: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use confhol::Error as E;
        match self {
            CliError::Usage(_)
            | CliError::File(FileError::Io { .. } | FileError::Syntax { .. })
            | CliError::Io(_) => 1,
            CliError::File(FileError::Content { source, .. }) | CliError::Algebra(source) => {
                match source {
                    E::NotSemisimple { .. } | E::InvalidAlgebra { .. } => 2,
                    E::NoConvergence { .. } | E::Contract(_) => 3,
                    _ => 1,
                }
            }
            CliError::Residuals { .. } => 3,
        }
    }
}

/// Parses `args` (including the program name), writes the report to `out`
/// and diagnostics to `err`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Catalog { format } => {
            match format {
                Format::Text => {
                    for name in confhol::catalog::LISTED {
                        writeln!(out, "{name}")?;
                    }
                }
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(confhol::catalog::LISTED).expect("names serialize")
                )?,
            }
            Ok(())
        }
        Command::Analyze(input) => {
            let a = load_and_analyze(&input)?;
            let report = AnalysisReport::new(&a, input.report);
            match input.format {
                Format::Text => write!(out, "{}", report.to_text())?,
                Format::Json => write!(out, "{}", report.to_json())?,
            }
            let mut failed: Vec<&str> = a.residuals.failures(input.tolerance);
            if !(a.curvature_summary.kappa_minus1_max <= input.tolerance) {
                failed.push("kappa_minus1");
            }
            if !(a.curvature_summary.kappa1_max <= input.tolerance) {
                failed.push("kappa1");
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Residuals {
                    tolerance: input.tolerance,
                    names: failed.join(", "),
                })
            }
        }
        Command::Verify(input) => {
            let a = load_and_analyze(&input)?;
            let checks = verification(&a, input.tolerance);
            match input.format {
                Format::Text => {
                    for (name, value, ok) in &checks {
                        writeln!(
                            out,
                            "{:<4} {name:<24} {value:.3e}",
                            if *ok { "ok" } else { "FAIL" }
                        )?;
                    }
                    let h = &a.holonomy_report;
                    writeln!(
                        out,
                        "holonomy dim {} ({})",
                        h.algebra_dim,
                        h.candidate_name.as_deref().unwrap_or("-")
                    )?;
                }
                Format::Json => {
                    let body = VerifyReport {
                        algebra: a.algebra_name.clone(),
                        checks: checks
                            .iter()
                            .map(|&(check, v, ok)| CheckRow {
                                check,
                                value: Fixed(v),
                                ok,
                            })
                            .collect(),
                        holonomy_dim: a.holonomy_report.algebra_dim,
                        candidate_name: a.holonomy_report.candidate_name.clone(),
                    };
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string_pretty(&body).expect("verify report serializes")
                    )?;
                }
            }
            let failed: Vec<&str> = checks.iter().filter(|c| !c.2).map(|c| c.0).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Residuals {
                    tolerance: input.tolerance,
                    names: failed.join(", "),
                })
            }
        }
    }
}

fn load(input: &Input) -> Result<LieAlgebraSpec, CliError> {
    match (&input.algebra, &input.file) {
        (Some(name), None) => Ok(catalog(name)?),
        (None, Some(path)) => Ok(parse_algebra_file(path)?),
        _ => Err(CliError::Usage(
            "exactly one of --algebra or --file is required".into(),
        )),
    }
}

fn load_and_analyze(input: &Input) -> Result<Analysis, CliError> {
    if !(input.tolerance.is_finite() && input.tolerance > 0.0) {
        return Err(CliError::Usage(format!(
            "--tolerance must be positive, got {}",
            input.tolerance
        )));
    }
    let alg = load(input)?;
    let options = AnalysisOptions {
        tolerance: input.tolerance,
        ..AnalysisOptions::default()
    };
    Ok(analyze(&alg, &options)?)
}

/// Every identity the pipeline should satisfy, as `(name, value, passed)`.
pub fn verification(a: &Analysis, tol: f64) -> Vec<(&'static str, f64, bool)> {
    let n = a.dim as f64;
    let mut v: Vec<(&'static str, f64)> = a.residuals.entries().to_vec();
    v.push(("kappa_minus1_max", a.curvature_summary.kappa_minus1_max));
    v.push(("kappa1_max", a.curvature_summary.kappa1_max));
    v.push(("scal_minus_n_over_4", (a.metric.scal - n / 4.0).abs()));
    v.push(("einstein_residual", a.metric.einstein_residual()));
    v.push(("cotton_york_max", a.metric.cotton_york_max()));
    v.push(("weyl_trace_residual", a.metric.weyl_trace_residual()));
    v.push(("holonomy_closure", a.holonomy.closure_residual));
    v.push(("riemannian_closure", a.riemannian_holonomy.closure_residual));
    v.into_iter().map(|(k, x)| (k, x, x <= tol)).collect()
}
