//! Earth and satellite pipeline.
//!
//! A particle of mass `m` is prepared spin-up along `z` and moves with
//! rapidity `η` along `-z` in the Earth frame. A satellite moving with rapidity
//! `ω` along `-x` sees the momentum
//! `p' = (m cosh ω cosh η, m sinh ω cosh η, 0, -m sinh η)` and must tilt its
//! detectors by the angle returned from [`scenario_axis`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::measurement::{rest_particle_axis, solve_axis, MeasurementAxis};
use crate::tensor::FourVector;

/// Default number of grid points per rapidity axis.
pub const DEFAULT_STEPS: usize = 61;
/// Default upper rapidity of the sweep grid.
pub const DEFAULT_MAX_RAPIDITY: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub m: f64,
    pub eta: f64,
    pub omega: f64,
}

impl ScenarioConfig {
    pub fn new(m: f64, eta: f64, omega: f64) -> Result<Self> {
        if !(m.is_finite() && m > 0.0) {
            return domain(format!("mass must be positive and finite, got {m}"));
        }
        if !(eta.is_finite() && eta >= 0.0) {
            return domain(format!("particle rapidity must be finite and ≥ 0, got {eta}"));
        }
        if !(omega.is_finite() && omega >= 0.0) {
            return domain(format!("satellite rapidity must be finite and ≥ 0, got {omega}"));
        }
        Ok(ScenarioConfig { m, eta, omega })
    }
}

/// Particle momentum in the Earth frame.
pub fn earth_momentum(cfg: &ScenarioConfig) -> FourVector {
    FourVector::new(cfg.m * cfg.eta.cosh(), 0.0, 0.0, -cfg.m * cfg.eta.sinh())
}

/// Particle momentum seen from the satellite.
pub fn satellite_momentum(cfg: &ScenarioConfig) -> FourVector {
    let (m, ch, sh) = (cfg.m, cfg.eta.cosh(), cfg.eta.sinh());
    FourVector::new(
        m * cfg.omega.cosh() * ch,
        m * cfg.omega.sinh() * ch,
        0.0,
        -m * sh,
    )
}

pub fn scenario_axis(cfg: &ScenarioConfig) -> Result<MeasurementAxis> {
    solve_axis(cfg.m, &satellite_momentum(cfg))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub eta: f64,
    pub omega: f64,
    pub p_prime: FourVector,
    pub theta: f64,
    pub phi: f64,
    pub cos2_half_theta: f64,
}

impl SweepRow {
    fn new(cfg: &ScenarioConfig, axis: MeasurementAxis) -> Self {
        SweepRow {
            eta: cfg.eta,
            omega: cfg.omega,
            p_prime: satellite_momentum(cfg),
            theta: axis.theta(),
            phi: axis.phi(),
            cos2_half_theta: axis.cos2_half_theta(),
        }
    }
}

/// `steps` evenly spaced points on `[0, max]`. A single step yields `[0]`.
pub fn linspace(max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return domain("grid needs at least one point");
    }
    if !(max.is_finite() && max >= 0.0) {
        return domain(format!("grid bound must be finite and ≥ 0, got {max}"));
    }
    if steps == 1 {
        return Ok(vec![0.0]);
    }
    let n = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i == steps - 1 { max } else { max * i as f64 / n })
        .collect())
}

pub fn default_grid() -> Vec<f64> {
    linspace(DEFAULT_MAX_RAPIDITY, DEFAULT_STEPS).expect("default grid is valid")
}

/// Solves every grid point; rows come back η-major regardless of scheduling.
pub fn sweep(eta_grid: &[f64], omega_grid: &[f64], m: f64) -> Result<Vec<SweepRow>> {
    let configs = eta_grid
        .iter()
        .flat_map(|&eta| omega_grid.iter().map(move |&omega| (eta, omega)))
        .map(|(eta, omega)| ScenarioConfig::new(m, eta, omega))
        .collect::<Result<Vec<_>>>()?;
    configs
        .par_iter()
        .map(|cfg| scenario_axis(cfg).map(|axis| SweepRow::new(cfg, axis)))
        .collect()
}

/// One point of the rest-particle curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RestCurveRow {
    pub omega: f64,
    pub theta: f64,
    pub cos2_half_theta: f64,
}

pub fn rest_particle_curve(omega_max: f64, steps: usize) -> Result<Vec<RestCurveRow>> {
    if steps < 2 {
        return domain("the rest-particle curve needs at least two points");
    }
    Ok(linspace(omega_max, steps)?
        .into_iter()
        .map(|omega| {
            let axis = rest_particle_axis(omega);
            RestCurveRow {
                omega,
                theta: axis.theta(),
                cos2_half_theta: axis.cos2_half_theta(),
            }
        })
        .collect())
}
