//! Spin measurement along a tilted axis and the quantization-axis solver.
//!
//! A detector orientation `(θ, φ)` defines the kets
//! `|+⟩ = (cos θ/2, e^{iφ} sin θ/2)` and `|-⟩ = (sin θ/2, -e^{iφ} cos θ/2)`
//! and the block-diagonal operators `M± = diag(|±⟩⟨±|, |±⟩⟨±|)`.
//! For the spin-up spinor `u(p, 0)` with `p_y = 0` the alignment functional
//! `ū M+ u` has the closed form
//!
//! ```text
//! {[(m+E)² - p_z²] cos²(θ/2) - p_x² sin²(θ/2) - 2 p_x p_z cos(θ/2) sin(θ/2) cos φ} / (2m(m+E))
//! ```
//!
//! and `ū M- u` is the same with `cos ↔ sin` and the cross term sign flipped,
//! so the two always sum to `ū u = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::states::{real_part, spinor, Spinor, SpinorKind};
use crate::tensor::{re, CVec, FourVector, Mat2, Mat4, Tolerances};

/// Detector orientation: polar angle `θ ∈ [0, π]`, relative phase `φ ∈ [-π, π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementAxis {
    theta: f64,
    phi: f64,
}

impl MeasurementAxis {
    /// Wraps `φ` into `[-π, π)` and fixes `φ = 0` at the poles.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return domain("axis angles must be finite");
        }
        if !(0.0..=PI).contains(&theta) {
            return domain(format!("θ must lie in [0, π], got {theta}"));
        }
        let mut phi = (phi + PI).rem_euclid(2.0 * PI) - PI;
        if theta == 0.0 || theta == PI {
            phi = 0.0;
        }
        Ok(MeasurementAxis { theta, phi })
    }

    pub fn z() -> Self {
        MeasurementAxis { theta: 0.0, phi: 0.0 }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn cos2_half_theta(&self) -> f64 {
        let ch = (0.5 * self.theta).cos();
        ch * ch
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// `|θ, φ, ±⟩`.
pub fn axis_ket(axis: &MeasurementAxis, sign: Sign) -> CVec<2> {
    let (s, co) = (0.5 * axis.theta).sin_cos();
    let phase = Complex64::from_polar(1.0, axis.phi);
    match sign {
        Sign::Plus => [re(co), phase * s],
        Sign::Minus => [re(s), -phase * co],
    }
}

/// `M± = diag(P±, P±)` with `P± = |±⟩⟨±|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementOperator {
    pub sign: Sign,
    pub axis: MeasurementAxis,
    pub matrix: Mat4,
}

pub fn projector(axis: &MeasurementAxis, sign: Sign) -> Mat2 {
    let k = axis_ket(axis, sign);
    Mat2::new(std::array::from_fn(|i| std::array::from_fn(|j| k[i] * k[j].conj())))
}

pub fn measurement_operator(axis: &MeasurementAxis, sign: Sign) -> MeasurementOperator {
    let p = projector(axis, sign);
    MeasurementOperator {
        sign,
        axis: *axis,
        matrix: Mat4::block_diag(&p, &p),
    }
}

/// `ψ̄ M ψ`, reported raw: off the aligned axis the value may exceed 1.
pub fn spin_expectation(psi: &Spinor, op: &MeasurementOperator) -> Result<f64> {
    let tol = Tolerances::default();
    let nb = psi.bar_norm();
    if (nb.abs() - 1.0).abs() > tol.normalization {
        return domain(format!("spinor is not normalized: ψ̄ψ = {nb}"));
    }
    let z = psi.dual().sandwich(&op.matrix, psi);
    real_part(z, tol.imaginary, "ψ̄Mψ")
}

fn check_scenario_plane(m: f64, p: &FourVector) -> Result<()> {
    p.check_on_shell(m, Tolerances::default().on_shell)?;
    if p.y().abs() > Tolerances::default().on_shell * p.t() {
        return domain(format!(
            "p_y = {} must vanish; rotate the momentum into the x-z plane first",
            p.y()
        ));
    }
    Ok(())
}

/// Closed-form `ū(p,0) M± u(p,0)` for on-shell `p` in the x-z plane.
pub fn expectation_closed_form(
    m: f64,
    p: &FourVector,
    axis: &MeasurementAxis,
    sign: Sign,
) -> Result<f64> {
    check_scenario_plane(m, p)?;
    let (e, px, pz) = (p.t(), p.x(), p.z());
    let (s, co) = (0.5 * axis.theta).sin_cos();
    let big = (m + e) * (m + e) - pz * pz;
    let cross = 2.0 * px * pz * co * s * axis.phi.cos();
    let num = match sign {
        Sign::Plus => big * co * co - px * px * s * s - cross,
        Sign::Minus => big * s * s - px * px * co * co + cross,
    };
    Ok(num / (2.0 * m * (m + e)))
}

/// Detector axis for which the prepared spin-up spinor `u(p, 0)` gives
/// `ū M+ u = 1` (and so `ū M- u = 0`).
///
/// At `φ = 0` the condition reads `A cos θ + B sin θ = m(m+E)` with
/// `A = m(m+E) + p_x²` and `B = -p_x p_z`; its unique root in `[0, π]` is
/// `θ = atan2(B, A) + arccos(m(m+E) / √(A² + B²))`.
pub fn solve_axis(m: f64, p: &FourVector) -> Result<MeasurementAxis> {
    check_scenario_plane(m, p)?;
    let (e, px, pz) = (p.t(), p.x(), p.z());
    let rhs = m * (m + e);
    let a = rhs + px * px;
    let b = -px * pz;
    let r = a.hypot(b);
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Solver("degenerate alignment equation".into()));
    }
    let ratio = rhs / r;
    if ratio > 1.0 + 1e-12 {
        return Err(Error::Solver(format!(
            "alignment equation has no root (m(m+E)/R = {ratio})"
        )));
    }
    let theta = b.atan2(a) + ratio.min(1.0).acos();
    MeasurementAxis::new(theta.clamp(0.0, PI), 0.0)
}

/// Number of grid points used by [`solve_axis_oracle`].
pub const ORACLE_GRID: usize = 10_000;

/// Independent check on [`solve_axis`]: scans `θ ∈ [0, π]` at `φ = 0` on a
/// dense grid using the matrix expectation `ū M+ u - 1`, brackets the sign
/// change and bisects to `1e-13`.
pub fn solve_axis_oracle(m: f64, p: &FourVector) -> Result<MeasurementAxis> {
    check_scenario_plane(m, p)?;
    let u = spinor(SpinorKind::Particle, m, p, 0)?;
    let ubar = u.dual().0;
    let residual = |theta: f64| -> f64 {
        let ax = MeasurementAxis { theta, phi: 0.0 };
        let op = measurement_operator(&ax, Sign::Plus);
        let mu = op.matrix.apply(&u.components);
        ubar.iter().zip(mu.iter()).map(|(a, b)| a * b).sum::<Complex64>().re - 1.0
    };

    let f0 = residual(0.0);
    if f0.abs() <= 1e-14 {
        return Ok(MeasurementAxis::z());
    }
    let step = PI / ORACLE_GRID as f64;
    let mut lo = 0.0;
    let mut flo = f0;
    let mut bracket = None;
    for i in 1..=ORACLE_GRID {
        let hi = if i == ORACLE_GRID { PI } else { i as f64 * step };
        let fhi = residual(hi);
        if fhi == 0.0 {
            return MeasurementAxis::new(hi, 0.0);
        }
        if flo.signum() != fhi.signum() {
            bracket = Some((lo, hi, flo));
            break;
        }
        lo = hi;
        flo = fhi;
    }
    let Some((mut a, mut b, mut fa)) = bracket else {
        return Err(Error::Solver("no sign change of the alignment residual on [0, π]".into()));
    };
    while b - a > 1e-13 {
        let mid = 0.5 * (a + b);
        let fm = residual(mid);
        if fm == 0.0 {
            a = mid;
            b = mid;
            break;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    MeasurementAxis::new(0.5 * (a + b), 0.0)
}

/// `cos²(θ/2)` for a particle at rest seen from an observer with rapidity `ω`:
/// `[2(1 + cosh ω) + sinh²ω] / [(1 + cosh ω)² + sinh²ω]`.
pub fn rest_particle_cos2_half_theta(omega: f64) -> f64 {
    let (ch, sh) = (omega.cosh(), omega.sinh());
    (2.0 * (1.0 + ch) + sh * sh) / ((1.0 + ch) * (1.0 + ch) + sh * sh)
}

/// Axis for the rest-particle family. `sin²(θ/2) = sinh²ω / [(1 + cosh ω)² + sinh²ω]`
/// is the complement of the closed form, so `θ = 2 atan2(|sinh ω|, √(2(1+cosh ω) + sinh²ω))`
/// avoids the cancellation in `arccos` near `θ = 0`.
pub fn rest_particle_axis(omega: f64) -> MeasurementAxis {
    let (ch, sh) = (omega.cosh(), omega.sinh());
    let theta = 2.0 * sh.abs().atan2((2.0 * (1.0 + ch) + sh * sh).sqrt());
    MeasurementAxis {
        theta,
        phi: 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::rest_spinor;
    use crate::tensor::{inner, ONE, ZERO};
    use std::f64::consts::LN_2;

    const PRIME: FourVector = FourVector::new(1.5625, 0.9375, 0.0, -0.75);

    #[test]
    fn axis_normalization() {
        let a = MeasurementAxis::new(0.0, 1.3).unwrap();
        assert_eq!(a.phi(), 0.0);
        let a = MeasurementAxis::new(PI, -2.0).unwrap();
        assert_eq!(a.phi(), 0.0);
        let a = MeasurementAxis::new(1.0, PI).unwrap();
        assert!((a.phi() + PI).abs() < 1e-15);
        let a = MeasurementAxis::new(1.0, 7.0).unwrap();
        assert!((a.phi() - (7.0 - 2.0 * PI)).abs() < 1e-15);
        assert!(MeasurementAxis::new(-0.1, 0.0).is_err());
        assert!(MeasurementAxis::new(3.2, 0.0).is_err());
    }

    #[test]
    fn ket_examples() {
        let k = axis_ket(&MeasurementAxis::z(), Sign::Plus);
        assert_eq!(k, [ONE, ZERO]);
        let k = axis_ket(&MeasurementAxis::new(PI, 0.0).unwrap(), Sign::Plus);
        assert!((k[0]).norm() < 1e-16 && (k[1] - ONE).norm() < 1e-16);
        let ax = MeasurementAxis::new(1.1, 2.3).unwrap();
        let (kp, km) = (axis_ket(&ax, Sign::Plus), axis_ket(&ax, Sign::Minus));
        assert!(inner(&kp, &km).norm() < 1e-16);
        assert!((inner(&kp, &kp) - ONE).norm() < 1e-15);
        assert!((inner(&km, &km) - ONE).norm() < 1e-15);
    }

    #[test]
    fn operator_examples() {
        let mp = measurement_operator(&MeasurementAxis::z(), Sign::Plus);
        assert_eq!(mp.matrix, Mat4::diag([ONE, ZERO, ONE, ZERO]));

        let ax = MeasurementAxis::new(0.7, 1.2).unwrap();
        let p = measurement_operator(&ax, Sign::Plus).matrix;
        let n = measurement_operator(&ax, Sign::Minus).matrix;
        assert!((p + n).dist(&Mat4::identity()) < 1e-15);
        assert!((p * p).dist(&p) < 1e-15);
        assert!((n * n).dist(&n) < 1e-15);

        let u0 = rest_spinor(SpinorKind::Particle, 1.0, 0).unwrap();
        assert!((spin_expectation(&u0, &mp).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn expectation_examples() {
        let u0 = rest_spinor(SpinorKind::Particle, 1.0, 0).unwrap();
        let z = MeasurementAxis::z();
        assert!((spin_expectation(&u0, &measurement_operator(&z, Sign::Plus)).unwrap() - 1.0).abs() < 1e-15);
        assert!(spin_expectation(&u0, &measurement_operator(&z, Sign::Minus)).unwrap().abs() < 1e-15);

        let u = spinor(SpinorKind::Particle, 1.0, &PRIME, 0).unwrap();
        let v = spin_expectation(&u, &measurement_operator(&z, Sign::Plus)).unwrap();
        assert!((v - 6.00390625 / 5.125).abs() < 1e-14);
        assert!((v - 1.171494).abs() < 1e-6);
    }

    #[test]
    fn unnormalized_spinor_rejected() {
        let mut u = rest_spinor(SpinorKind::Particle, 1.0, 0).unwrap();
        u.components = u.components.map(|z| z * 2.0);
        let op = measurement_operator(&MeasurementAxis::z(), Sign::Plus);
        assert!(spin_expectation(&u, &op).is_err());
    }

    #[test]
    fn closed_form_examples() {
        let z = MeasurementAxis::z();
        let p0 = FourVector::at_rest(1.0);
        assert!((expectation_closed_form(1.0, &p0, &z, Sign::Plus).unwrap() - 1.0).abs() < 1e-15);
        let v = expectation_closed_form(1.0, &PRIME, &z, Sign::Plus).unwrap();
        assert!((v - 6.00390625 / 5.125).abs() < 1e-15);

        for (t, f) in [(0.3, 0.0), (1.9, 2.2), (3.0, -1.0)] {
            let ax = MeasurementAxis::new(t, f).unwrap();
            let s = expectation_closed_form(1.0, &PRIME, &ax, Sign::Plus).unwrap()
                + expectation_closed_form(1.0, &PRIME, &ax, Sign::Minus).unwrap();
            assert!((s - 1.0).abs() < 1e-14);
        }
        let off_plane = FourVector::new(1.25, 0.0, 0.75, 0.0);
        assert!(expectation_closed_form(1.0, &off_plane, &z, Sign::Plus).is_err());
    }

    #[test]
    fn solver_examples() {
        let a = solve_axis(1.0, &FourVector::at_rest(1.0)).unwrap();
        assert_eq!((a.theta(), a.phi()), (0.0, 0.0));
        let a = solve_axis(1.0, &FourVector::new(1.25, 0.75, 0.0, 0.0)).unwrap();
        assert!((a.theta() - 0.8f64.acos()).abs() < 1e-15);
        assert!((a.theta() - 0.6435011).abs() < 1e-7);
        assert!((a.cos2_half_theta() - 0.9).abs() < 1e-15);
        let a = solve_axis(1.0, &FourVector::new(1.25, 0.0, 0.0, -0.75)).unwrap();
        assert_eq!(a.theta(), 0.0);
        assert!(solve_axis(1.0, &FourVector::new(1.25, 0.0, 0.75, 0.0)).is_err());
    }

    #[test]
    fn solver_satisfies_both_conditions() {
        let a = solve_axis(1.0, &PRIME).unwrap();
        let u = spinor(SpinorKind::Particle, 1.0, &PRIME, 0).unwrap();
        let plus = spin_expectation(&u, &measurement_operator(&a, Sign::Plus)).unwrap();
        let minus = spin_expectation(&u, &measurement_operator(&a, Sign::Minus)).unwrap();
        assert!((plus - 1.0).abs() < 1e-13);
        assert!(minus.abs() < 1e-13);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(solve_axis_oracle(1.0, &FourVector::at_rest(1.0)).unwrap().theta(), 0.0);
        let a = solve_axis_oracle(1.0, &FourVector::new(1.25, 0.75, 0.0, 0.0)).unwrap();
        assert!((a.theta() - 0.8f64.acos()).abs() < 1e-9);
        let a = solve_axis_oracle(1.0, &PRIME).unwrap();
        let b = solve_axis(1.0, &PRIME).unwrap();
        assert!((a.theta() - b.theta()).abs() < 1e-10);
    }

    #[test]
    fn rest_particle_examples() {
        assert_eq!(rest_particle_axis(0.0).theta(), 0.0);
        assert_eq!(rest_particle_cos2_half_theta(0.0), 1.0);
        assert!((rest_particle_cos2_half_theta(LN_2) - 0.9).abs() < 1e-15);
        assert!((rest_particle_axis(LN_2).theta() - 0.8f64.acos()).abs() < 1e-15);
        let t5 = rest_particle_axis(5.0).theta();
        assert!((t5 - 1.557).abs() < 1e-3 && t5 < PI / 2.0);
        // the stable form agrees with 2·arccos(√cos²)
        for w in [0.3, 1.0, 2.5, 5.0] {
            let direct = 2.0 * rest_particle_cos2_half_theta(w).sqrt().acos();
            assert!((rest_particle_axis(w).theta() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn rest_particle_family_matches_solver() {
        for i in 1..=50 {
            let w = 0.1 * i as f64;
            let p = FourVector::new(w.cosh(), w.sinh(), 0.0, 0.0);
            let a = solve_axis(1.0, &p).unwrap();
            assert!((a.theta() - rest_particle_axis(w).theta()).abs() < 1e-12);
        }
    }
}
