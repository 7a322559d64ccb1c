//! Seeded invariance suites.
//!
//! Every suite draws its inputs from its own ChaCha8 stream derived from the
//! run seed, evaluates the residual of each identity and reports the largest
//! one. Reports contain no timings, so two runs with the same seed and trial
//! count produce identical output.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dirac::{alpha_beta_residual, block_form_residual, clifford_residual};
use crate::error::Result;
use crate::lorentz::{
    boost_single_plane, closure_residual, rotation, spinor_boost_rapidity, vector_boost,
    SpinorTransform,
};
use crate::measurement::{
    expectation_closed_form, measurement_operator, rest_particle_axis,
    rest_particle_cos2_half_theta, solve_axis, solve_axis_oracle, spin_expectation,
    MeasurementAxis, Sign,
};
use crate::scenario::{satellite_momentum, ScenarioConfig};
use crate::states::{
    density, expectation, particle_projector, spinor, spinor_sqrt_form, superpose, trace_powers,
    transform_operator, Covariant, Ensemble, SpinorKind,
};
use crate::tensor::{c, Axis, FourVector, Mat4, Rapidity};

pub const DEFAULT_TRIALS: usize = 1000;
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub seed: u64,
    pub trials: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            trials: DEFAULT_TRIALS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub max_residual: f64,
}

impl SuiteReport {
    /// NaN residuals never pass.
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual <= tol
    }
}

pub const SUITES: [&str; 8] = [
    "clifford",
    "closure",
    "representation",
    "spinors",
    "covariance",
    "measurement",
    "axis",
    "rest-particle",
];

/// Runs every suite in a fixed order.
pub fn run_all(cfg: &CheckConfig) -> Result<Vec<SuiteReport>> {
    SUITES.iter().map(|name| run_suite(name, cfg)).collect()
}

pub fn run_suite(name: &str, cfg: &CheckConfig) -> Result<SuiteReport> {
    let idx = SUITES
        .iter()
        .position(|s| *s == name)
        .ok_or_else(|| crate::Error::Domain(format!("unknown suite {name}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(idx as u64);
    let n = cfg.trials;
    let max_residual = match idx {
        0 => clifford_suite(),
        1 => closure_residual(),
        2 => representation_suite(&mut rng, n)?,
        3 => spinor_suite(&mut rng, n)?,
        4 => covariance_suite(&mut rng, n)?,
        5 => measurement_suite(&mut rng, n)?,
        6 => axis_suite(&mut rng, n)?,
        _ => rest_particle_suite()?,
    };
    Ok(SuiteReport {
        name: name.to_string(),
        max_residual,
    })
}

/// Maximum that propagates NaN.
pub fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn worst<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    it.into_iter().fold(0.0, nan_max)
}

fn par_worst<T, F>(inputs: &[T], f: F) -> Result<f64>
where
    T: Sync,
    F: Fn(&T) -> Result<f64> + Sync + Send,
{
    let vals = inputs.par_iter().map(f).collect::<Result<Vec<f64>>>()?;
    Ok(worst(vals))
}

pub fn random_unit_vector<R: Rng>(rng: &mut R) -> [f64; 3] {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    let r = (1.0 - z * z).max(0.0).sqrt();
    [r * phi.cos(), r * phi.sin(), z]
}

/// On-shell momentum with rapidity uniform in `[0, max_rapidity]` and an
/// isotropic direction.
pub fn random_momentum<R: Rng>(rng: &mut R, m: f64, max_rapidity: f64) -> FourVector {
    let eta: f64 = rng.gen_range(0.0..=max_rapidity);
    let n = random_unit_vector(rng);
    let k = m * eta.sinh();
    FourVector::new(m * eta.cosh(), k * n[0], k * n[1], k * n[2])
}

/// A rotation about a random axis followed by a boost with random rapidity
/// vector of length at most `max_rapidity`.
pub fn random_transform<R: Rng>(rng: &mut R, max_rapidity: f64) -> Result<SpinorTransform> {
    let len: f64 = rng.gen_range(0.0..=max_rapidity);
    let n = random_unit_vector(rng);
    let boost = boost_single_plane(n.map(|v| v * len))?;
    let axis = Axis::ALL[rng.gen_range(0..3)];
    let rot = rotation(axis, rng.gen_range(-PI..PI))?;
    Ok(boost * rot)
}

pub fn random_coefficients<R: Rng>(rng: &mut R) -> (Complex64, Complex64) {
    let t: f64 = rng.gen_range(0.0..=PI);
    let (p0, p1): (f64, f64) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
    let (s, co) = (0.5 * t).sin_cos();
    (
        Complex64::from_polar(co, p0),
        Complex64::from_polar(s, p1),
    )
}

fn random_matrix<R: Rng>(rng: &mut R) -> Mat4 {
    let mut a = Mat4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            a.0[i][j] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
    }
    a
}

fn clifford_suite() -> f64 {
    worst([clifford_residual(), alpha_beta_residual(), block_form_residual()])
}

fn representation_suite<R: Rng>(rng: &mut R, n: usize) -> Result<f64> {
    let inputs: Vec<(f64, Axis)> = (0..n)
        .map(|_| (rng.gen_range(-3.0..=3.0), Axis::ALL[rng.gen_range(0..3)]))
        .collect();
    par_worst(&inputs, |&(eta, axis)| {
        let mut e = [0.0; 3];
        e[axis.index() - 1] = eta;
        let exp_form = boost_single_plane(e)?;
        let closed = spinor_boost_rapidity(1.0, Rapidity::new(eta, axis))?;
        let witness = if eta != 0.0 && !(closed.unitarity_defect() > 0.0) {
            f64::INFINITY
        } else {
            0.0
        };
        let lambda = closed.vector_representation();
        Ok(worst([
            exp_form.matrix.dist(&closed.matrix),
            closed.pseudo_unitarity_residual(),
            exp_form.pseudo_unitarity_residual(),
            lambda.max_abs_diff(&vector_boost(Rapidity::new(-eta, axis))),
            lambda.metric_residual(),
            witness,
        ]))
    })
}

fn spinor_suite<R: Rng>(rng: &mut R, n: usize) -> Result<f64> {
    let inputs: Vec<(f64, FourVector)> = (0..n)
        .map(|_| {
            let m = rng.gen_range(0.5..=2.0);
            (m, random_momentum(rng, m, 5.0))
        })
        .collect();
    par_worst(&inputs, |&(m, p)| {
        let mut r: Vec<f64> = Vec::with_capacity(24);
        let mut completeness = Mat4::zeros();
        for kind in [SpinorKind::Particle, SpinorKind::Antiparticle] {
            let s = [spinor(kind, m, &p, 0)?, spinor(kind, m, &p, 1)?];
            for a in 0..2 {
                r.push(s[a].dirac_residual());
                r.push((s[a].dagger_norm() - p.t() / m).abs());
                let sq = spinor_sqrt_form(kind, m, &p, a as u8)?;
                r.push(s[a].max_abs_diff(&sq));
                for b in 0..2 {
                    let target = if a == b { kind.sign() } else { 0.0 };
                    r.push((s[a].dual().dot(&s[b]) - target).norm());
                }
                if kind == SpinorKind::Particle {
                    completeness += Mat4::outer(&s[a].components, &s[a].dual().0);
                }
            }
        }
        r.push(completeness.dist(&particle_projector(m, &p)));
        Ok(worst(r))
    })
}

struct CovarianceCase {
    members: Vec<(f64, FourVector, Complex64, Complex64)>,
    m: f64,
    d: SpinorTransform,
    a: Mat4,
}

fn covariance_suite<R: Rng>(rng: &mut R, n: usize) -> Result<f64> {
    let mut inputs = Vec::with_capacity(n);
    for _ in 0..n {
        let m = rng.gen_range(0.5..=2.0);
        let p = random_momentum(rng, m, 2.0);
        let k = rng.gen_range(1..=3);
        let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let members = raw
            .iter()
            .map(|q| {
                let (a0, a1) = random_coefficients(rng);
                (q / total, p, a0, a1)
            })
            .collect();
        let d = random_transform(rng, 2.0)?;
        let a = random_matrix(rng);
        inputs.push(CovarianceCase { members, m, d, a });
    }
    par_worst(&inputs, |case| {
        let mut r = Vec::with_capacity(12);
        let mut ens = Vec::with_capacity(case.members.len());
        for &(q, p, a0, a1) in &case.members {
            let psi = superpose(case.m, &p, a0, a1)?;
            let moved = psi.transformed(&case.d);
            r.push((moved.bar_norm() - psi.bar_norm()).abs());
            ens.push((q, psi));
        }
        let rho = density(&Ensemble::new(ens)?);
        let rho2 = rho.transformed(&case.d);
        let a2 = transform_operator(&case.d, &case.a);
        r.push((expectation(&a2, &rho2) - expectation(&case.a, &rho)).norm());
        let before = trace_powers(&rho, 4)?;
        let after = trace_powers(&rho2, 4)?;
        r.extend(before.iter().zip(&after).map(|(x, y)| (x - y).norm()));
        r.push((rho2.purity() - rho.purity()).abs());
        Ok(worst(r))
    })
}

fn measurement_suite<R: Rng>(rng: &mut R, n: usize) -> Result<f64> {
    let inputs: Vec<_> = (0..n)
        .map(|_| {
            let eta: f64 = rng.gen_range(0.0..=5.0);
            let dir: f64 = rng.gen_range(-PI..PI);
            let p = FourVector::new(eta.cosh(), eta.sinh() * dir.cos(), 0.0, eta.sinh() * dir.sin());
            let theta = rng.gen_range(0.0..=PI);
            let phi = rng.gen_range(-PI..PI);
            (p, random_coefficients(rng), theta, phi)
        })
        .collect();
    par_worst(&inputs, |&(p, (a0, a1), theta, phi)| {
        let axis = MeasurementAxis::new(theta, phi)?;
        let plus = measurement_operator(&axis, Sign::Plus);
        let minus = measurement_operator(&axis, Sign::Minus);
        let psi = superpose(1.0, &p, a0, a1)?;
        let sum = spin_expectation(&psi, &plus)? + spin_expectation(&psi, &minus)?;
        let u = spinor(SpinorKind::Particle, 1.0, &p, 0)?;
        let mut r = vec![(sum - 1.0).abs()];
        for (sign, op) in [(Sign::Plus, &plus), (Sign::Minus, &minus)] {
            let closed = expectation_closed_form(1.0, &p, &axis, sign)?;
            r.push((closed - spin_expectation(&u, op)?).abs());
        }
        Ok(worst(r))
    })
}

fn axis_suite<R: Rng>(rng: &mut R, n: usize) -> Result<f64> {
    let inputs: Vec<ScenarioConfig> = (0..n)
        .map(|_| ScenarioConfig::new(1.0, rng.gen_range(0.0..=3.0), rng.gen_range(0.0..=3.0)))
        .collect::<Result<_>>()?;
    par_worst(&inputs, |cfg| {
        let p = satellite_momentum(cfg);
        let axis = solve_axis(cfg.m, &p)?;
        let oracle = solve_axis_oracle(cfg.m, &p)?;
        let u = spinor(SpinorKind::Particle, cfg.m, &p, 0)?;
        let plus = spin_expectation(&u, &measurement_operator(&axis, Sign::Plus))?;
        let minus = spin_expectation(&u, &measurement_operator(&axis, Sign::Minus))?;
        Ok(worst([
            (plus - 1.0).abs(),
            minus.abs(),
            (axis.theta() - oracle.theta()).abs(),
            axis.phi().abs(),
        ]))
    })
}

fn rest_particle_suite() -> Result<f64> {
    let mut r = Vec::new();
    let mut prev = 0.0;
    for i in 1..=50 {
        let w = 0.1 * i as f64;
        let axis = rest_particle_axis(w);
        let solved = solve_axis(1.0, &FourVector::new(w.cosh(), w.sinh(), 0.0, 0.0))?;
        r.push((axis.theta() - solved.theta()).abs());
        r.push((axis.cos2_half_theta() - rest_particle_cos2_half_theta(w)).abs());
        if !(axis.theta() > prev && axis.theta() < PI / 2.0) {
            r.push(f64::INFINITY);
        }
        prev = axis.theta();
    }
    Ok(worst(r))
}
