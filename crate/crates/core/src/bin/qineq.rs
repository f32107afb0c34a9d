//! Command-line harness: theorem verification campaigns, adversarial slack
//! search, and spectrum/resolvent utilities with reproducible JSON output.
//!
//! Exit codes: 0 all checks passed, 1 violation found, 2 usage or
//! configuration error, 3 internal numerical failure.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qineq::error::{Error, ErrorKind};
use qineq::inequalities::{run_campaign, run_search, RunConfig, TheoremId};
use qineq::io::to_json;
use qineq::qlinalg::{chi, chi_inv, classify, op_norm, QMatrix};
use qineq::quaternion::Quaternion;
use qineq::report::ChainReport;
use qineq::spectral::{bounds, delta, resolvent_series, spectrum};
use qineq::tol::CHAIN_TOL;

#[derive(Parser)]
#[command(name = "qineq", version, about = "Quaternionic operator inequality verifier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run a theorem checker over seeded random instances.
    Verify(VerifyArgs),
    /// Print the spherical spectrum of a matrix file, its spectral radius,
    /// and (for selfadjoint input) the bounds m_T / M_T.
    Spectrum {
        /// Matrix file: {"n": n, "entries": [[[x0,x1,x2,x3], ...], ...]}.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Sum the resolvent power series of Delta_q(T) and cross-check it
    /// against direct inversion.
    Resolvent {
        input: PathBuf,
        /// Quaternion q as four comma-separated floats x0,x1,x2,x3.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value_t = 1e-10)]
        rel_tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Random-restart hill climbing toward minimum chain slack.
    Search {
        #[command(flatten)]
        config: VerifyArgs,
        /// Number of perturbation evaluations (0 = one plain verify trial).
        #[arg(long, default_value_t = 200)]
        budget: u64,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id, e.g. mondlog, holder-mccarthy, kyfan-operator.
    #[arg(long)]
    theorem: String,
    /// Operator dimension(s), comma-separated; trials cycle through them.
    #[arg(long, default_value = "1,2,4,8")]
    dim: String,
    #[arg(long, default_value_t = 100)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Spectrum bounds m,M (random per trial when omitted).
    #[arg(long, allow_hyphen_values = true)]
    spectrum: Option<String>,
    /// Scalar function spec `<id>[:r=<float>]`, e.g. exp or power:r=-1.
    #[arg(long)]
    function: Option<String>,
    /// Exponent r for the power-family theorems.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
    /// kyfan-operator chain variant (1, 2, or 3; trials cycle when omitted).
    #[arg(long)]
    variant: Option<u8>,
    /// Chain tolerance (default: QINEQ_TOL env var, else 1e-9).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write reports to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// kyfan-operator only: also evaluate the literal (T-MI) exponent
    /// reading of the variant-2 middle operator.
    #[arg(long, default_value_t = false)]
    diagnostic: bool,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}

fn parse_pair(text: &str) -> Result<(f64, f64), Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(usage(format!("expected m,M got `{text}`")));
    }
    let m = parts[0].trim().parse().map_err(|_| usage(format!("bad float in `{text}`")))?;
    let upper = parts[1].trim().parse().map_err(|_| usage(format!("bad float in `{text}`")))?;
    Ok((m, upper))
}

fn parse_dims(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|p| p.trim().parse().map_err(|_| usage(format!("bad dimension in `{text}`"))))
        .collect()
}

fn parse_quaternion(text: &str) -> Result<Quaternion, Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(usage(format!("expected x0,x1,x2,x3 got `{text}`")));
    }
    let mut c = [0f64; 4];
    for (slot, p) in c.iter_mut().zip(&parts) {
        *slot = p.trim().parse().map_err(|_| usage(format!("bad float in `{text}`")))?;
    }
    Ok(Quaternion::new(c[0], c[1], c[2], c[3]))
}

fn default_tol() -> Result<f64, Error> {
    match std::env::var("QINEQ_TOL") {
        Ok(text) => text
            .parse()
            .map_err(|_| usage(format!("QINEQ_TOL is not a float: `{text}`"))),
        Err(_) => Ok(CHAIN_TOL),
    }
}

fn build_config(args: &VerifyArgs) -> Result<RunConfig, Error> {
    let theorem = TheoremId::parse(&args.theorem)?;
    let mut cfg = RunConfig::new(theorem);
    cfg.dims = parse_dims(&args.dim)?;
    cfg.trials = args.trials;
    cfg.seed = args.seed;
    cfg.tol = match args.tol {
        Some(t) => t,
        None => default_tol()?,
    };
    cfg.spectrum = args.spectrum.as_deref().map(parse_pair).transpose()?;
    cfg.function = args.function.clone();
    cfg.exponent = args.r;
    cfg.variant = args.variant;
    cfg.diagnostic = args.diagnostic;
    Ok(cfg)
}

fn open_sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(std::io::stdout())),
    })
}

fn write_report(out: &mut dyn Write, format: Format, report: &ChainReport) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", to_json(report)),
        Format::Text => {
            let chain = report
                .terms
                .iter()
                .map(|t| format!("{} = {}", t.label, t.value))
                .collect::<Vec<_>>()
                .join("  <=  ");
            writeln!(
                out,
                "{} trial={} pass={} invalid={} slack={:e}\n    {}",
                report.theorem,
                report.witness.trial.map_or(-1i64, |t| t as i64),
                report.pass,
                report.invalid,
                report.slack,
                chain
            )
        }
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Error> {
    let cfg = build_config(args)?;
    let mut out = open_sink(&args.output)?;
    let mut io_err: Option<std::io::Error> = None;
    let summary = run_campaign(&cfg, |report| {
        if io_err.is_none() {
            if let Err(e) = write_report(out.as_mut(), args.format, report) {
                io_err = Some(e);
            }
        }
    })?;
    if let Some(e) = io_err {
        return Err(e.into());
    }
    match args.format {
        Format::Json => writeln!(out, "{}", to_json(&serde_json::json!({ "summary": summary })))?,
        Format::Text => writeln!(
            out,
            "summary theorem={} trials={} pass={} invalid={} violations={} min_slack={:e}",
            summary.theorem,
            summary.trials,
            summary.pass_count,
            summary.invalid_count,
            summary.violation_count,
            summary.min_slack
        )?,
    }
    out.flush()?;
    Ok(if summary.all_passed() { 0 } else { 1 })
}

fn cmd_spectrum(input: &PathBuf, format: Format) -> Result<u8, Error> {
    let t = qineq::io::read_matrix(input)?;
    let spec = spectrum(&t)?;
    let radius = spec.radius();
    let selfadjoint = classify(&t).selfadjoint;
    let mut out = BufWriter::new(std::io::stdout());
    match format {
        Format::Json => {
            writeln!(out, "{}", to_json(&spec))?;
            writeln!(out, "{}", to_json(&serde_json::json!({ "spectral_radius": radius })))?;
            if selfadjoint {
                let b = bounds(&t)?;
                writeln!(out, "{}", to_json(&b))?;
            }
        }
        Format::Text => {
            for s in &spec.spheres {
                writeln!(out, "sphere re={} im={} mult={}", s.re, s.im, s.mult)?;
            }
            writeln!(out, "spectral_radius {radius}")?;
            if selfadjoint {
                let b = bounds(&t)?;
                writeln!(out, "m_T {}  M_T {}", b.lower, b.upper)?;
            }
        }
    }
    out.flush()?;
    Ok(0)
}

fn cmd_resolvent(input: &PathBuf, q_text: &str, rel_tol: f64, format: Format) -> Result<u8, Error> {
    let t = qineq::io::read_matrix(input)?;
    let q = parse_quaternion(q_text)?;
    let series = resolvent_series(&t, q, rel_tol)?;
    let d = delta(&t, q);
    let residual = op_norm(
        &(&d.matmul(&series.matrix).expect("same dimension") - &QMatrix::identity(t.n())),
    );
    let direct = chi(&d)
        .matrix()
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Numerical("Delta_q(T) is numerically singular".into()))
        .and_then(|inv| chi_inv(&qineq::qlinalg::ComplexBlock::from_matrix(t.n(), inv)))?;
    let rel_err = op_norm(&(&series.matrix - &direct)) / 1f64.max(op_norm(&direct));
    let mut out = BufWriter::new(std::io::stdout());
    match format {
        Format::Json => writeln!(
            out,
            "{}",
            to_json(&serde_json::json!({
                "result": series.matrix,
                "terms_used": series.terms_used,
                "tail_bound": series.tail_bound,
                "residual": residual,
                "direct_inversion_rel_error": rel_err,
            }))
        )?,
        Format::Text => {
            writeln!(out, "terms_used {}", series.terms_used)?;
            writeln!(out, "tail_bound {:e}", series.tail_bound)?;
            writeln!(out, "residual {:e}", residual)?;
            writeln!(out, "direct_inversion_rel_error {:e}", rel_err)?;
            writeln!(out, "result {}", to_json(&series.matrix))?;
        }
    }
    out.flush()?;
    Ok(0)
}

fn cmd_search(args: &VerifyArgs, budget: u64) -> Result<u8, Error> {
    let cfg = build_config(args)?;
    let outcome = run_search(&cfg, budget)?;
    let mut out = open_sink(&args.output)?;
    match args.format {
        Format::Json => writeln!(out, "{}", to_json(&outcome))?,
        Format::Text => {
            writeln!(
                out,
                "search theorem={} budget={} evaluations={} restarts={} min_slack={:e} suspected_violation={}",
                outcome.theorem,
                outcome.budget,
                outcome.evaluations,
                outcome.restarts,
                outcome.min_slack,
                outcome.suspected_violation
            )?;
            for report in &outcome.reports {
                write_report(out.as_mut(), Format::Text, report)?;
            }
        }
    }
    out.flush()?;
    Ok(if outcome.suspected_violation { 1 } else { 0 })
}

fn run() -> Result<u8, Error> {
    let cli = Cli::parse();
    match &cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Spectrum { input, format } => cmd_spectrum(input, *format),
        Command::Resolvent {
            input,
            q,
            rel_tol,
            format,
        } => cmd_resolvent(input, q, *rel_tol, *format),
        Command::Search { config, budget } => cmd_search(config, *budget),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err.kind() {
                ErrorKind::Usage | ErrorKind::Io => 2,
                ErrorKind::Numerical => 3,
            })
        }
    }
}
