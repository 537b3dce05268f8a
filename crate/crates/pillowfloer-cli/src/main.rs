mod report;
mod svg;
mod verify;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pillowfloer::curves::{curves_from_json, figure_eight, CurveError, DEFAULT_SAMPLES};
use pillowfloer::floer::{build_complex, ComplexOptions, FloerError, SearchLimits};
use pillowfloer::knots::{
    pl_figure_eight, rational_eps, signature_two_bridge, torus_knot_homology, two_bridge_complex_with, two_bridge_curve,
    KnotError, TorusOptions, TorusSpec, TraceOptions, TwoBridgeSpec, DEFAULT_EPS_A, DEFAULT_EPS_B,
};
use pillowfloer::pillowcase::PerturbationFunction;
use serde_json::json;

use report::{ComponentTable, Parameters, RunReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Floer(#[from] FloerError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("{0} verify suite(s) failed")]
    Verify(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_)
            | CliError::Io { .. }
            | CliError::Knot(KnotError::InvalidSpec(_) | KnotError::NonCoprime { .. }) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "pillowfloer", version, about = "ℤ/4-graded Floer homology of curves in the pillowcase")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact complex of the 2-bridge knot K(p, q) against the figure eight.
    TwoBridge {
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[command(flatten)]
        common: Common,
    },
    /// Torus knot T(p, q) with p·r + q·s = 1, traced from its character variety.
    Torus {
        p: i64,
        q: i64,
        #[arg(allow_negative_numbers = true)]
        r: i64,
        #[arg(allow_negative_numbers = true)]
        s: i64,
        #[command(flatten)]
        common: Common,
        /// Perturbation amplitude on the first meridian.
        #[arg(long = "epsA", default_value_t = DEFAULT_EPS_A, allow_negative_numbers = true)]
        eps_a: f64,
        /// Perturbation amplitude on the second meridian.
        #[arg(long = "epsB", default_value_t = DEFAULT_EPS_B, allow_negative_numbers = true)]
        eps_b: f64,
        /// Residual accepted by the continuation corrector.
        #[arg(long)]
        tol: Option<f64>,
        /// Grid cells per side for the seed scan.
        #[arg(long = "seed-grid")]
        seed_grid: Option<usize>,
    },
    /// Floer complex of the curves in a curve file against L0.
    Floer {
        /// Curve file holding L1.
        #[arg(long)]
        l1: PathBuf,
        /// Curve file holding a single L0; defaults to the perturbed figure eight.
        #[arg(long)]
        l0: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Draws a saved JSON report as SVG.
    Render {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Runs the randomized property suites.
    Verify {
        /// One of z, maslov, floer, curves, knots; all when omitted.
        suite: Option<String>,
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Args)]
struct Common {
    /// Size of the figure-eight perturbation.
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Sine series `k:amp,...` for the figure-eight isotopy.
    #[arg(long, default_value = "")]
    g: String,
    /// Knot signature used for the absolute grading.
    #[arg(long, allow_negative_numbers = true)]
    signature: Option<i64>,
    /// Vertices of the sampled figure eight.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Bigon search window, in periods.
    #[arg(long, default_value_t = SearchLimits::default().window)]
    window: f64,
    /// Extra periods a bigon boundary may wrap.
    #[arg(long, default_value_t = SearchLimits::default().k_max)]
    kmax: i64,
    /// Writes the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Writes the SVG picture here.
    #[arg(long)]
    svg: Option<PathBuf>,
}

impl Common {
    fn perturbation(&self) -> Result<PerturbationFunction, CliError> {
        if self.g.trim().is_empty() {
            return Ok(PerturbationFunction::zero());
        }
        self.g.parse().map_err(|e| CliError::Usage(format!("--g: {e}")))
    }

    fn limits(&self) -> SearchLimits {
        SearchLimits { k_max: self.kmax, window: self.window }
    }

    fn parameters(&self) -> Result<Parameters, CliError> {
        if self.eps.is_nan() || self.eps <= 0.0 {
            return Err(CliError::Usage(format!("--eps must be positive, got {}", self.eps)));
        }
        Ok(Parameters {
            eps: self.eps,
            g: self.perturbation()?,
            eps_a: None,
            eps_b: None,
            signature: self.signature,
            samples: self.samples,
            window: self.window,
            k_max: self.kmax,
            tol: None,
            seed_grid: None,
        })
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn cmd_two_bridge(p: i64, q: i64, common: &Common) -> Result<RunReport, CliError> {
    let mut params = common.parameters()?;
    if !params.g.terms.is_empty() {
        return Err(CliError::Usage("the exact 2-bridge pipeline uses the unperturbed figure eight; drop --g".into()));
    }
    let spec = TwoBridgeSpec::new(p, q)?;
    let signature = common.signature.unwrap_or_else(|| signature_two_bridge(spec));
    params.signature = Some(signature);
    let tb = two_bridge_complex_with(spec, common.eps, signature)?;
    let l0 = pl_figure_eight(rational_eps(common.eps)?)?;
    let arc = two_bridge_curve(spec)?;
    let mut report = RunReport::new("two-bridge", json!({ "p": p, "q": q }), params);
    report.fill_from_complex(&tb.complex, &l0, &[arc])?;
    Ok(report)
}

fn cmd_torus(
    (p, q, r, s): (i64, i64, i64, i64),
    eps_a: f64,
    eps_b: f64,
    tol: Option<f64>,
    seed_grid: Option<usize>,
    common: &Common,
) -> Result<RunReport, CliError> {
    let mut params = common.parameters()?;
    let spec = TorusSpec::new(p, q, r, s, eps_a, eps_b)?;
    let defaults = TraceOptions::default();
    let trace = TraceOptions {
        newton_tol: tol.unwrap_or(defaults.newton_tol),
        seed_grid: seed_grid.unwrap_or(defaults.seed_grid),
        ..defaults
    };
    params.eps_a = Some(eps_a);
    params.eps_b = Some(eps_b);
    params.tol = Some(trace.newton_tol);
    params.seed_grid = Some(trace.seed_grid);
    let opts = TorusOptions {
        eps: common.eps,
        g: params.g.clone(),
        l0_samples: common.samples,
        trace,
        signature: common.signature,
        limits: common.limits(),
    };
    let tr = torus_knot_homology(&spec, &opts)?;
    params.signature = Some(tr.signature);
    let input = json!({ "p": p, "q": q, "r": r, "s": s });
    let mut report = RunReport::new("torus", input, params);
    for (i, c) in tr.components.iter().enumerate() {
        let grades: Vec<Option<u8>> = c.grades.iter().map(|&g| Some(g)).collect();
        let mut row = ComponentTable::new(&tr.curves[i], &tr.complex.components[i], &grades, c.cover_degree, c.chain, c.homology);
        row.vertical_degree = c.vertical_degree;
        row.canonical = c.canonical;
        report.components.push(row);
    }
    report.chain_total = tr.chain_total;
    report.total = tr.total;
    report.warnings = tr.warnings.clone();
    if tr.g_used != report.parameters.g {
        report.warnings.push(format!("L0 perturbed to g = {} for transversality", tr.g_used));
    }
    let l0 = figure_eight(common.eps, &tr.g_used, common.samples)?;
    report.set_geometry(&tr.complex, &l0, &tr.curves);
    Ok(report)
}

fn cmd_floer(l1_path: &Path, l0_path: Option<&Path>, common: &Common) -> Result<RunReport, CliError> {
    let params = common.parameters()?;
    let l1 = curves_from_json(&read(l1_path)?)?;
    if l1.is_empty() {
        return Err(CliError::Usage(format!("{}: no curves", l1_path.display())));
    }
    let l0 = match l0_path {
        Some(path) => {
            let mut curves = curves_from_json(&read(path)?)?;
            if curves.len() != 1 {
                return Err(CliError::Usage(format!("{}: expected one curve, found {}", path.display(), curves.len())));
            }
            curves.remove(0)
        }
        None => figure_eight(common.eps, &params.g, common.samples)?,
    };
    let opts = ComplexOptions { limits: common.limits(), signature: common.signature };
    let cx = build_complex(&l0, &l1, &opts)?;
    let mut input = json!({ "l1": l1_path.display().to_string() });
    if let Some(path) = l0_path {
        input["l0"] = json!(path.display().to_string());
    }
    let mut report = RunReport::new("floer", input, params);
    report.fill_from_complex(&cx, &l0, &l1)?;
    Ok(report)
}

fn emit(report: &RunReport, common: &Common) -> Result<(), CliError> {
    print!("{}", report.text());
    if let Some(path) = &common.json {
        write(path, &report.to_json())?;
    }
    if let Some(path) = &common.svg {
        write(path, &svg::render(report))?;
    }
    Ok(())
}

fn cmd_verify(suite: Option<&str>, cases: usize, seed: u64) -> Result<(), CliError> {
    let names: Vec<&str> = match suite {
        Some(s) if verify::SUITES.contains(&s) => vec![s],
        Some(s) => return Err(CliError::Usage(format!("unknown suite `{s}`; expected one of {}", verify::SUITES.join(", ")))),
        None => verify::SUITES.to_vec(),
    };
    let mut failed = 0;
    for name in names {
        let r = verify::run(name, cases, seed).expect("suite names checked");
        let status = if r.ok() { "PASS" } else { "FAIL" };
        println!("{status} {}: {} passed, {} rejected, {} failed", r.name, r.passed, r.rejected, r.failures.len());
        for f in &r.failures {
            println!("  {f}");
        }
        failed += usize::from(!r.ok());
    }
    if failed > 0 {
        return Err(CliError::Verify(failed));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::TwoBridge { p, q, common } => emit(&cmd_two_bridge(p, q, &common)?, &common),
        Command::Torus { p, q, r, s, common, eps_a, eps_b, tol, seed_grid } => {
            emit(&cmd_torus((p, q, r, s), eps_a, eps_b, tol, seed_grid, &common)?, &common)
        }
        Command::Floer { l1, l0, common } => emit(&cmd_floer(&l1, l0.as_deref(), &common)?, &common),
        Command::Render { report, svg } => {
            let text = read(&report)?;
            let parsed: RunReport =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", report.display())))?;
            if parsed.schema != report::SCHEMA {
                return Err(CliError::Usage(format!("{}: schema `{}`, expected `{}`", report.display(), parsed.schema, report::SCHEMA)));
            }
            write(&svg, &svg::render(&parsed))
        }
        Command::Verify { suite, cases, seed } => cmd_verify(suite.as_deref(), cases, seed),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
