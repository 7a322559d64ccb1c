//! The `spinor-lab` command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use spinor_lab_core::check::{run_suite, CheckConfig, DEFAULT_TOL, DEFAULT_TRIALS, SUITES};
use spinor_lab_core::scenario::{
    linspace, rest_particle_curve, satellite_momentum, scenario_axis, sweep, ScenarioConfig,
    DEFAULT_MAX_RAPIDITY, DEFAULT_STEPS,
};
use spinor_lab_core::states::{bloch, current, spinor, DensityMatrix, Spinor, SpinorKind};
use spinor_lab_core::{Error, FourVector};

#[derive(Parser)]
#[command(name = "spinor-lab", version, about = "Dirac spinors, Lorentz boosts and spin quantization axes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every invariance suite and report the largest residual of each.
    Check(CheckArgs),
    /// Detector axis for one (m, η, ω) point.
    Axis(AxisArgs),
    /// Axis inclination over an (η, ω) grid, as CSV.
    Sweep(SweepArgs),
    /// Rest-particle inclination curve θ(ω), as CSV.
    Fig2(Fig2Args),
    /// Inspect a spinor given as JSON or built from flags.
    State(StateArgs),
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, env = "SPINOR_LAB_TOL", default_value_t = DEFAULT_TOL, value_parser = positive)]
    tol: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
}

#[derive(Args)]
struct AxisArgs {
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    m: f64,
    #[arg(long, default_value_t = 0.0, value_parser = nonnegative)]
    eta: f64,
    #[arg(long, default_value_t = 0.0, value_parser = nonnegative)]
    omega: f64,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    m: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_RAPIDITY, value_parser = nonnegative)]
    eta_max: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_RAPIDITY, value_parser = nonnegative)]
    omega_max: f64,
    /// Points per axis.
    #[arg(long, default_value_t = DEFAULT_STEPS as u64, value_parser = clap::value_parser!(u64).range(1..))]
    steps: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Fig2Args {
    #[arg(long, default_value_t = 5.0, value_parser = nonnegative)]
    omega_max: f64,
    #[arg(long, default_value_t = 201, value_parser = clap::value_parser!(u64).range(2..))]
    steps: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["file", "p"])))]
struct StateArgs {
    /// JSON record `{kind, m, p, components}`.
    #[arg(long, conflicts_with_all = ["m", "p", "alpha", "kind"])]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0, value_parser = positive)]
    m: f64,
    /// Four-momentum as `E,px,py,pz`.
    #[arg(long, value_parser = parse_four_vector)]
    p: Option<FourVector>,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..2))]
    alpha: u8,
    #[arg(long, value_enum, default_value_t = KindArg::Particle)]
    kind: KindArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Particle,
    Antiparticle,
}

impl From<KindArg> for SpinorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Particle => SpinorKind::Particle,
            KindArg::Antiparticle => SpinorKind::Antiparticle,
        }
    }
}

fn number(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v = number(s)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{v} must be > 0"))
    }
}

fn nonnegative(s: &str) -> Result<f64, String> {
    let v = number(s)?;
    if v >= 0.0 {
        Ok(v)
    } else {
        Err(format!("{v} must be >= 0"))
    }
}

fn parse_four_vector(s: &str) -> Result<FourVector, String> {
    let parts = s.split(',').map(number).collect::<Result<Vec<_>, _>>()?;
    let arr: [f64; 4] = parts
        .try_into()
        .map_err(|v: Vec<f64>| format!("expected 4 components, got {}", v.len()))?;
    Ok(FourVector(arr))
}

/// Failure carrying its exit status.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(Error::Domain(_)) | Some(Error::Parse(_)) => 2,
            _ => 1,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (program name first), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code as u8;
        }
    };
    let result = match cli.command {
        Command::Check(a) => cmd_check(a, out),
        Command::Axis(a) => cmd_axis(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Fig2(a) => cmd_fig2(a, out),
        Command::State(a) => cmd_state(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {:#}", f.err);
            f.code
        }
    }
}

fn cmd_check(a: CheckArgs, out: &mut dyn Write) -> CmdResult {
    let cfg = CheckConfig {
        seed: a.seed,
        trials: a.trials as usize,
    };
    writeln!(out, "seed {} trials {} tol {:e}", cfg.seed, cfg.trials, a.tol)
        .context("writing report")?;
    let mut first_failure = None;
    for name in SUITES {
        let report = run_suite(name, &cfg)?;
        let ok = report.passes(a.tol);
        writeln!(
            out,
            "{:<16} {:>12.3e}  {}",
            report.name,
            report.max_residual,
            if ok { "PASS" } else { "FAIL" }
        )
        .context("writing report")?;
        if !ok && first_failure.is_none() {
            first_failure = Some(report);
        }
    }
    match first_failure {
        None => Ok(()),
        Some(r) => Err(Failure {
            code: 1,
            err: anyhow::anyhow!(
                "suite {} failed: residual {:e} exceeds {:e}",
                r.name,
                r.max_residual,
                a.tol
            ),
        }),
    }
}

fn cmd_axis(a: AxisArgs, out: &mut dyn Write) -> CmdResult {
    let cfg = ScenarioConfig::new(a.m, a.eta, a.omega)?;
    let p = satellite_momentum(&cfg);
    let axis = scenario_axis(&cfg)?;
    let record = json!({
        "eta": a.eta,
        "omega": a.omega,
        "p_prime": p.0,
        "theta_rad": axis.theta(),
        "theta_deg": axis.theta().to_degrees(),
        "phi": axis.phi(),
        "cos2_half_theta": axis.cos2_half_theta(),
    });
    let text = serde_json::to_string_pretty(&record).context("serializing")?;
    writeln!(out, "{text}").context("writing output")?;
    Ok(())
}

fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_csv(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    header: &str,
    rows: impl Iterator<Item = Vec<f64>>,
) -> CmdResult {
    let sink: Box<dyn Write + '_> = match path {
        Some(path) => Box::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        ),
        None => Box::new(stdout),
    };
    let mut w = BufWriter::new(sink);
    let body = || -> io::Result<()> {
        w.write_all(header.as_bytes())?;
        w.write_all(b"\n")?;
        for row in rows {
            let line = row.into_iter().map(fmt).collect::<Vec<_>>().join(",");
            w.write_all(line.as_bytes())?;
            w.write_all(b"\n")?;
        }
        w.flush()
    };
    body().context("writing CSV")?;
    Ok(())
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write) -> CmdResult {
    let etas = linspace(a.eta_max, a.steps as usize)?;
    let omegas = linspace(a.omega_max, a.steps as usize)?;
    let rows = sweep(&etas, &omegas, a.m)?;
    write_csv(
        a.out.as_deref(),
        out,
        "eta,omega,theta_rad,phi_rad,cos2_half_theta",
        rows.iter()
            .map(|r| vec![r.eta, r.omega, r.theta, r.phi, r.cos2_half_theta]),
    )
}

fn cmd_fig2(a: Fig2Args, out: &mut dyn Write) -> CmdResult {
    let rows = rest_particle_curve(a.omega_max, a.steps as usize)?;
    write_csv(
        a.out.as_deref(),
        out,
        "omega,theta_rad,cos2_half_theta",
        rows.iter().map(|r| vec![r.omega, r.theta, r.cos2_half_theta]),
    )
}

fn load_state(a: &StateArgs) -> Result<Spinor, Failure> {
    if let Some(path) = &a.file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        return Ok(Spinor::from_json(&text)?);
    }
    let p = a.p.expect("clap enforces --file or --p");
    Ok(spinor(a.kind.into(), a.m, &p, a.alpha)?)
}

fn cmd_state(a: StateArgs, out: &mut dyn Write) -> CmdResult {
    let psi = load_state(&a)?;
    let j = current(&psi);
    let bloch_vec = match psi.kind {
        SpinorKind::Particle => Some(bloch(&DensityMatrix::projector(&psi))?.0),
        SpinorKind::Antiparticle => None,
    };
    let pair = |z: &Complex64| [z.re, z.im];
    let record = json!({
        "kind": psi.kind,
        "m": psi.mass,
        "p": psi.momentum.0,
        "components": psi.components.iter().map(pair).collect::<Vec<_>>(),
        "psi_bar_psi": psi.bar_norm(),
        "u_dag_u": psi.dagger_norm(),
        "j0": j.t(),
        "current": j.0,
        "bloch": bloch_vec,
    });
    let text = serde_json::to_string_pretty(&record).context("serializing")?;
    writeln!(out, "{text}").context("writing output")?;
    Ok(())
}

#[cfg(test)]
mod tests;
