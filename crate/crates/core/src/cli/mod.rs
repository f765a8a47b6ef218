//! Command-line driver.
//!
//! Exit codes are a stable contract:
//!
//! | code | meaning |
//! |---|---|
//! | 0 | success; `converge`: converges to I; `falsify`: falsified |
//! | 2 | bad arguments, config or policy |
//! | 3 | domain or quadrature failure during evaluation |
//! | 4 | `converge`: converges elsewhere |
//! | 5 | `converge`: inconclusive; `examples`: some row did not converge to I |
//! | 6 | `falsify`: not falsified |

pub mod config;
pub mod csv_report;
pub mod worked;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use config::{parse_config, ConfigError, ExperimentConfig};

use crate::analysis::{
    self, AdmissibilityReport, ConvergenceReport, Falsification, NSchedule, Verdict,
};
use crate::error::Error;
use crate::oracle::EndpointMode;
use crate::sums::TagRule;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_ELSEWHERE: i32 = 4;
pub const EXIT_INCONCLUSIVE: i32 = 5;
pub const EXIT_NOT_FALSIFIED: i32 = 6;

#[derive(Debug, Parser)]
#[command(
    name = "riemann-lab",
    version,
    about = "Generalized Riemann sums: evaluate, converge, falsify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Experiment config file (key = value lines).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Integrand expression or `catalog:<name>`; overrides the config.
    #[arg(long)]
    function: Option<String>,
    /// Replaces the seed of a `random:<seed>` tag rule.
    #[arg(long)]
    seed: Option<u64>,
    /// Pull singular endpoints of ln f in by 1e-9 instead of failing.
    #[arg(long)]
    allow_improper: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the sum (or product) at a single n.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: usize,
    },
    /// Run a convergence study over the configured schedule.
    Converge {
        #[command(flatten)]
        common: Common,
        /// Also write the rows as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run every worked example and print a summary table.
    Examples,
    /// Try to show the configured family converges to the wrong value.
    Falsify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0.25, allow_negative_numbers = true)]
        margin: f64,
    },
    /// Print the finite-n hypothesis checks only.
    Admissibility {
        #[command(flatten)]
        common: Common,
    },
}

/// Maps a library error to its exit code.
pub fn exit_code(e: &Error) -> i32 {
    match e.root() {
        Error::Domain { .. }
        | Error::NotPositive { .. }
        | Error::NoConvergence { .. }
        | Error::TooFewPoints { .. } => EXIT_DOMAIN,
        _ => EXIT_CONFIG,
    }
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(exit_code(&e), e.to_string())
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure(EXIT_CONFIG, format!("config error: {e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(EXIT_CONFIG, format!("i/o error: {e}"))
    }
}

fn load(common: &Common) -> Result<(ExperimentConfig, EndpointMode), Failure> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure(
                    EXIT_CONFIG,
                    format!("cannot read config {}: {e}", path.display()),
                )
            })?;
            parse_config(&text)?
        }
        None => ExperimentConfig::default(),
    };
    if let Some(function) = &common.function {
        cfg.spec.integrand = config::parse_function(function)?;
    }
    if let Some(seed) = common.seed {
        match cfg.spec.tag {
            TagRule::Random(_) => cfg.spec.tag = TagRule::Random(seed),
            other => {
                return Err(Failure(
                    EXIT_CONFIG,
                    format!("--seed needs a random:<seed> tag rule, config has `{other}`"),
                ))
            }
        }
    }
    cfg.spec.validate()?;
    let mode = if common.allow_improper {
        EndpointMode::AllowImproper
    } else {
        EndpointMode::Strict
    };
    Ok((cfg, mode))
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Eval { common, n } => cmd_eval(&common, n, out),
        Command::Converge { common, csv } => cmd_converge(&common, csv, out),
        Command::Examples => cmd_examples(out),
        Command::Falsify { common, margin } => cmd_falsify(&common, margin, out),
        Command::Admissibility { common } => {
            let (cfg, _) = load(&common)?;
            let report = analysis::check_admissibility(&cfg.spec, &cfg.schedule);
            writeln!(out, "spec: {}", cfg.spec)?;
            render_admissibility(&report, out)?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_eval(common: &Common, n: usize, out: &mut dyn Write) -> Result<i32, Failure> {
    let (cfg, _) = load(common)?;
    let value = cfg.spec.value(n)?;
    writeln!(out, "{value:?}")?;
    Ok(EXIT_OK)
}

fn verdict_code(verdict: &Verdict) -> i32 {
    match verdict {
        Verdict::ConvergesToI => EXIT_OK,
        Verdict::ConvergesElsewhere { .. } => EXIT_ELSEWHERE,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn cmd_converge(
    common: &Common,
    csv: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let (cfg, mode) = load(common)?;
    let options = analysis::RunOptions {
        endpoint_mode: mode,
        ..cfg.run_options()
    };
    let report = analysis::run_convergence(&cfg.spec, &cfg.schedule, &options)?;
    render_report(&report, out)?;
    if let Some(path) = csv {
        let file = File::create(&path).map_err(|e| {
            Failure(
                EXIT_CONFIG,
                format!("cannot create {}: {e}", path.display()),
            )
        })?;
        csv_report::write_csv(&report, BufWriter::new(file))
            .map_err(|e| Failure(EXIT_CONFIG, format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(verdict_code(&report.verdict))
}

fn cmd_falsify(common: &Common, margin: f64, out: &mut dyn Write) -> Result<i32, Failure> {
    if !(margin > 0.0 && margin.is_finite()) {
        return Err(Failure(
            EXIT_CONFIG,
            format!("--margin must be > 0, got {margin}"),
        ));
    }
    let (cfg, mode) = load(common)?;
    let options = analysis::RunOptions {
        endpoint_mode: mode,
        ..cfg.run_options()
    };
    let outcome = analysis::falsify(&cfg.spec, &cfg.schedule, margin, &options)?;
    render_report(&outcome.report, out)?;
    match outcome.verdict {
        Falsification::Falsified { gap } => {
            writeln!(out, "falsified: gap {gap:.17e} (margin {margin})")?;
            Ok(EXIT_OK)
        }
        Falsification::NotFalsified => {
            writeln!(out, "not falsified at margin {margin}")?;
            Ok(EXIT_NOT_FALSIFIED)
        }
    }
}

fn cmd_examples(out: &mut dyn Write) -> Result<i32, Failure> {
    let schedule = NSchedule::default();
    writeln!(
        out,
        "{:<12} {:<44} {:>9} {:>20} {:>20} {:>11} {:>11}  {:<14} verdict",
        "example", "family", "n_max", "value", "target", "|error|", "tolerance", "hypotheses"
    )?;
    let mut all_converge = true;
    for example in worked::worked_examples() {
        match worked::run_worked(&example, &schedule) {
            Ok(row) => {
                all_converge &= row.verdict == Verdict::ConvergesToI;
                writeln!(
                    out,
                    "{:<12} {:<44} {:>9} {:>20.15} {:>20.15} {:>11.3e} {:>11.3e}  {:<14} {}",
                    row.id,
                    row.description,
                    row.n_max,
                    row.value,
                    row.reference,
                    row.abs_error,
                    row.tolerance,
                    row.admissibility.to_string(),
                    row.verdict
                )?;
            }
            Err(e) => {
                all_converge = false;
                writeln!(
                    out,
                    "{:<12} {:<44} FAILED: {e}",
                    example.id, example.description
                )?;
            }
        }
    }
    Ok(if all_converge {
        EXIT_OK
    } else {
        EXIT_INCONCLUSIVE
    })
}

pub fn render_admissibility(
    report: &AdmissibilityReport,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    writeln!(
        out,
        "disturbance condition read as: {}",
        report.interpretation
    )?;
    writeln!(out, "{:>10} {:>14} {:>14}", "n", "max_k d/n", "K(n)/n")?;
    for ((n, d), k) in report
        .ns
        .iter()
        .zip(&report.max_d_over_n)
        .zip(&report.k_over_n)
    {
        writeln!(out, "{n:>10} {d:>14.6e} {k:>14.6e}")?;
    }
    writeln!(out, "disturbance: {}", report.disturbance)?;
    writeln!(out, "deletion:    {}", report.deletion)
}

pub fn render_report(report: &ConvergenceReport, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "spec:      {}", report.spec)?;
    writeln!(out, "reference: {:.17e}", report.reference)?;
    writeln!(out, "tolerance: {:e}", report.tolerance)?;
    writeln!(
        out,
        "{:>10} {:>24} {:>24} {:>12} {:>12} {:>12}",
        "n", "sum", "signed error", "|error|", "max_k d/n", "K(n)/n"
    )?;
    let adm = &report.admissibility;
    for ((row, d), k) in report.rows.iter().zip(&adm.max_d_over_n).zip(&adm.k_over_n) {
        writeln!(
            out,
            "{:>10} {:>24.17e} {:>24.16e} {:>12.4e} {:>12.4e} {:>12.4e}",
            row.n, row.value, row.signed_error, row.abs_error, d, k
        )?;
    }
    match &report.order {
        Some(fit) => writeln!(
            out,
            "order:     alpha = {:.6} (rms residual {:.2e}, {} point(s) excluded)",
            fit.alpha, fit.residual, fit.excluded
        )?,
        None => writeln!(out, "order:     not estimated (errors at rounding level)")?,
    }
    writeln!(
        out,
        "hypotheses: disturbance {}, deletion {} ({})",
        adm.disturbance, adm.deletion, adm.interpretation
    )?;
    if let Some(note) = &report.outside_hypotheses {
        writeln!(out, "note:      {note}")?;
    }
    writeln!(out, "verdict:   {}", report.verdict)
}
