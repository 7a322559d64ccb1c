//! Dirac spinors, duals, pure superpositions, the probability current,
//! spinor density matrices and their momentum-indexed Bloch decomposition.
//!
//! Normalization follows the Lorentz-invariant pairing `ψ̄ψ = ψ†γ⁰ψ`:
//! `ū(p,α)u(p,β) = δ_αβ` and `v̄(p,α)v(p,β) = -δ_αβ`, with `u†u = E/m`.
//! Density matrices are `ρ = Σ q ψψ̄`; they are pseudo-Hermitian
//! (`γ⁰ρ†γ⁰ = ρ`) rather than Hermitian and transform by similarity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirac::{gamma0, sigma_contract, slash, weyl_gammas};
use crate::error::{domain, Error, Result};
use crate::lorentz::SpinorTransform;
use crate::tensor::{
    bilinear, c, herm_sqrt2, inner, CVec, FourVector, Mat2, Mat4, Tolerances, ONE, ZERO,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpinorKind {
    Particle,
    Antiparticle,
}

impl SpinorKind {
    /// `+1` for particles, `-1` for antiparticles: the value of `ψ̄ψ` for a
    /// normalized basis spinor.
    pub fn sign(self) -> f64 {
        match self {
            SpinorKind::Particle => 1.0,
            SpinorKind::Antiparticle => -1.0,
        }
    }
}

/// A four-component Dirac spinor at a definite momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor {
    pub components: CVec<4>,
    pub kind: SpinorKind,
    pub momentum: FourVector,
    pub mass: f64,
    /// Spin label for basis spinors `u(p, α)`, `v(p, α)`.
    pub spin: Option<u8>,
}

/// Row spinor `ψ̄ = ψ†γ⁰`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualSpinor(pub CVec<4>);

impl DualSpinor {
    /// `ψ̄ χ`
    pub fn dot(&self, chi: &Spinor) -> Complex64 {
        bilinear(&self.0, &chi.components)
    }

    /// `ψ̄ A χ`
    pub fn sandwich(&self, a: &Mat4, chi: &Spinor) -> Complex64 {
        bilinear(&self.0, &a.apply(&chi.components))
    }

    /// Transforms as `ψ̄ D⁻¹`.
    pub fn transformed(&self, d: &SpinorTransform) -> DualSpinor {
        let inv = d.inverse().matrix;
        DualSpinor(std::array::from_fn(|j| (0..4).map(|i| self.0[i] * inv[(i, j)]).sum()))
    }
}

impl Spinor {
    pub fn dual(&self) -> DualSpinor {
        dual(self)
    }

    /// `ψ̄ψ`, real for any spinor.
    pub fn bar_norm(&self) -> f64 {
        self.dual().dot(self).re
    }

    /// `ψ†ψ`.
    pub fn dagger_norm(&self) -> f64 {
        inner(&self.components, &self.components).re
    }

    pub fn max_abs_diff(&self, other: &Spinor) -> f64 {
        self.components
            .iter()
            .zip(other.components.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖(slash(p) ∓ m) ψ‖` with `-` for particles and `+` for antiparticles.
    pub fn dirac_residual(&self) -> f64 {
        let op = slash(&self.momentum) - Mat4::identity().scale_re(self.kind.sign() * self.mass);
        crate::tensor::vec_norm(&op.apply(&self.components))
    }

    pub fn to_record(&self) -> SpinorRecord {
        SpinorRecord {
            kind: self.kind,
            m: self.mass,
            p: self.momentum.0,
            components: self.components.map(|z| [z.re, z.im]),
        }
    }

    pub fn from_record(rec: &SpinorRecord) -> Result<Spinor> {
        let p = FourVector(rec.p);
        p.check_on_shell(rec.m, Tolerances::default().on_shell)?;
        if rec.components.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Parse("non-finite spinor component".into()));
        }
        Ok(Spinor {
            components: rec.components.map(|[a, b]| c(a, b)),
            kind: rec.kind,
            momentum: p,
            mass: rec.m,
            spin: None,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Spinor> {
        let rec: SpinorRecord =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Spinor::from_record(&rec)
    }
}

/// Serialized form of a spinor: `{kind, m, p: [4], components: [[re, im]; 4]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpinorRecord {
    pub kind: SpinorKind,
    pub m: f64,
    pub p: [f64; 4],
    pub components: [[f64; 2]; 4],
}

fn check_alpha(alpha: u8) -> Result<()> {
    if alpha > 1 {
        return domain(format!("spin label must be 0 or 1, got {alpha}"));
    }
    Ok(())
}

/// `ξ^α` for particles, `η^α` (with `η⁰ = (0,1)`, `η¹ = (1,0)`) for antiparticles.
fn two_spinor(kind: SpinorKind, alpha: u8) -> CVec<2> {
    match (kind, alpha) {
        (SpinorKind::Particle, 0) | (SpinorKind::Antiparticle, 1) => [ONE, ZERO],
        _ => [ZERO, ONE],
    }
}

fn stack(upper: CVec<2>, lower: CVec<2>, scale: f64) -> CVec<4> {
    [upper[0], upper[1], lower[0], lower[1]].map(|z| z * scale)
}

/// Rest-frame spinor: `u(p₀,α) = (ξ^α, ξ^α)/√2`, `v(p₀,α) = (η^α, -η^α)/√2`.
pub fn rest_spinor(kind: SpinorKind, m: f64, alpha: u8) -> Result<Spinor> {
    spinor(kind, m, &FourVector::at_rest(m), alpha)
}

/// Basis spinor at momentum `p`, built as the closed-form boost of the rest
/// spinor:
/// `u = ((m + p·σ)ξ, (m + p·σ̄)ξ) / √(4m(E+m))`,
/// `v = ((m + p·σ)η, -(m + p·σ̄)η) / √(4m(E+m))`.
pub fn spinor(kind: SpinorKind, m: f64, p: &FourVector, alpha: u8) -> Result<Spinor> {
    check_alpha(alpha)?;
    p.check_on_shell(m, Tolerances::default().on_shell)?;
    let (ps, pbs) = sigma_contract(p);
    let mid = Mat2::identity().scale_re(m);
    let x = two_spinor(kind, alpha);
    let upper = (mid + ps).apply(&x);
    let mut lower = (mid + pbs).apply(&x);
    if kind == SpinorKind::Antiparticle {
        lower = lower.map(|z| -z);
    }
    Ok(Spinor {
        components: stack(upper, lower, 1.0 / (4.0 * m * (p.t() + m)).sqrt()),
        kind,
        momentum: *p,
        mass: m,
        spin: Some(alpha),
    })
}

/// The same basis spinor through the square-root form
/// `(√(p·σ) ξ, ±√(p·σ̄) ξ) / √(2m)`.
pub fn spinor_sqrt_form(kind: SpinorKind, m: f64, p: &FourVector, alpha: u8) -> Result<Spinor> {
    check_alpha(alpha)?;
    p.check_on_shell(m, Tolerances::default().on_shell)?;
    let (ps, pbs) = sigma_contract(p);
    let x = two_spinor(kind, alpha);
    let upper = herm_sqrt2(&ps)?.apply(&x);
    let mut lower = herm_sqrt2(&pbs)?.apply(&x);
    if kind == SpinorKind::Antiparticle {
        lower = lower.map(|z| -z);
    }
    Ok(Spinor {
        components: stack(upper, lower, 1.0 / (2.0 * m).sqrt()),
        kind,
        momentum: *p,
        mass: m,
        spin: Some(alpha),
    })
}

/// `ψ̄ = ψ†γ⁰`.
pub fn dual(psi: &Spinor) -> DualSpinor {
    let g0 = gamma0();
    DualSpinor(std::array::from_fn(|j| {
        (0..4).map(|i| psi.components[i].conj() * g0[(i, j)]).sum()
    }))
}

/// `ψ(p) = a₀ u(p,0) + a₁ u(p,1)`; requires `|a₀|² + |a₁|² = 1`.
pub fn superpose(m: f64, p: &FourVector, a0: Complex64, a1: Complex64) -> Result<Spinor> {
    let n = a0.norm_sqr() + a1.norm_sqr();
    if n == 0.0 {
        return domain("superposition with a₀ = a₁ = 0 is not a state");
    }
    if (n - 1.0).abs() > Tolerances::default().normalization {
        return domain(format!("coefficients are not normalized: |a₀|² + |a₁|² = {n}"));
    }
    combine(m, p, a0, a1)
}

/// As [`superpose`], rescaling the coefficients to unit norm first.
pub fn superpose_normalizing(
    m: f64,
    p: &FourVector,
    a0: Complex64,
    a1: Complex64,
) -> Result<Spinor> {
    let n = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
    if n == 0.0 || !n.is_finite() {
        return domain("superposition with a₀ = a₁ = 0 is not a state");
    }
    combine(m, p, a0 / n, a1 / n)
}

fn combine(m: f64, p: &FourVector, a0: Complex64, a1: Complex64) -> Result<Spinor> {
    let u0 = spinor(SpinorKind::Particle, m, p, 0)?;
    let u1 = spinor(SpinorKind::Particle, m, p, 1)?;
    Ok(Spinor {
        components: std::array::from_fn(|i| a0 * u0.components[i] + a1 * u1.components[i]),
        kind: SpinorKind::Particle,
        momentum: *p,
        mass: m,
        spin: None,
    })
}

/// Probability current `j^μ = ψ̄γ^μψ`, so `j⁰ = ψ†ψ` and `j^k = ψ†γ⁰γ^kψ`.
///
/// With `α_k = diag(σ_k, -σ_k)` one has `γ⁰γ^k = -α_k`; the spatial part is
/// therefore `-ψ†α⃗ψ`, which is the sign that makes `j` parallel to `p` and
/// conserved for solutions of `(slash(p) - m)ψ = 0`.
pub fn current(psi: &Spinor) -> FourVector {
    let g = weyl_gammas();
    let bar = psi.dual();
    FourVector(std::array::from_fn(|mu| bar.sandwich(&g.gamma[mu], psi).re))
}

/// Convex mixture of particle spinors sharing one momentum.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    members: Vec<(f64, Spinor)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, Spinor)>) -> Result<Self> {
        let tol = Tolerances::default().normalization;
        let Some((_, first)) = members.first() else {
            return domain("ensemble is empty");
        };
        let (p, m) = (first.momentum, first.mass);
        let mut total = 0.0;
        for (q, psi) in &members {
            if !(*q >= 0.0) || !q.is_finite() {
                return domain(format!("ensemble weight {q} is not a nonnegative number"));
            }
            if psi.kind != SpinorKind::Particle {
                return domain("ensembles are defined on the particle subspace");
            }
            if psi.momentum.max_abs_diff(&p) > tol * p.t() || (psi.mass - m).abs() > tol * m {
                return domain("all ensemble members must share one momentum and mass");
            }
            let nb = psi.bar_norm();
            if (nb - 1.0).abs() > tol {
                return domain(format!("ensemble member is not normalized: ψ̄ψ = {nb}"));
            }
            total += q;
        }
        if (total - 1.0).abs() > tol {
            return domain(format!("ensemble weights sum to {total}, not 1"));
        }
        Ok(Ensemble { members })
    }

    pub fn pure(psi: Spinor) -> Result<Self> {
        Ensemble::new(vec![(1.0, psi)])
    }

    pub fn members(&self) -> &[(f64, Spinor)] {
        &self.members
    }
}

/// `ρ(p) = Σ q_k ψ_k ψ̄_k` at momentum `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    pub matrix: Mat4,
    pub momentum: FourVector,
    pub mass: f64,
}

impl DensityMatrix {
    /// `ψψ̄` without normalization checks.
    pub fn projector(psi: &Spinor) -> DensityMatrix {
        DensityMatrix {
            matrix: Mat4::outer(&psi.components, &psi.dual().0),
            momentum: psi.momentum,
            mass: psi.mass,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        (self.matrix * self.matrix).trace().re
    }

    /// `‖γ⁰ρ†γ⁰ - ρ‖`.
    pub fn pseudo_hermiticity_residual(&self) -> f64 {
        pseudo_adjoint(&self.matrix).dist(&self.matrix)
    }

    pub fn trace_powers(&self, kmax: u32) -> Result<Vec<Complex64>> {
        trace_powers(self, kmax)
    }
}

/// `γ⁰ A† γ⁰`.
pub fn pseudo_adjoint(a: &Mat4) -> Mat4 {
    let g0 = gamma0();
    *g0 * a.adjoint() * *g0
}

pub fn density(ens: &Ensemble) -> DensityMatrix {
    let (_, first) = ens.members[0];
    let mut rho = Mat4::zeros();
    for (q, psi) in &ens.members {
        rho += Mat4::outer(&psi.components, &psi.dual().0).scale_re(*q);
    }
    DensityMatrix {
        matrix: rho,
        momentum: first.momentum,
        mass: first.mass,
    }
}

/// Objects carried between frames by a spinor-representation transformation.
pub trait Covariant: Sized {
    fn transformed(&self, d: &SpinorTransform) -> Self;
}

impl Covariant for Spinor {
    /// `ψ' = Dψ`, momentum relabeled by the matching vector transformation.
    fn transformed(&self, d: &SpinorTransform) -> Spinor {
        Spinor {
            components: d.matrix.apply(&self.components),
            kind: self.kind,
            momentum: d.vector_representation().apply(&self.momentum),
            mass: self.mass,
            spin: self.spin,
        }
    }
}

impl Covariant for DensityMatrix {
    /// `ρ' = DρD⁻¹`.
    fn transformed(&self, d: &SpinorTransform) -> DensityMatrix {
        DensityMatrix {
            matrix: d.matrix * self.matrix * d.inverse().matrix,
            momentum: d.vector_representation().apply(&self.momentum),
            mass: self.mass,
        }
    }
}

pub fn transform<T: Covariant>(d: &SpinorTransform, x: &T) -> T {
    x.transformed(d)
}

/// Observables transform alongside states: `A' = DAD⁻¹`.
pub fn transform_operator(d: &SpinorTransform, a: &Mat4) -> Mat4 {
    d.matrix * *a * d.inverse().matrix
}

/// `Tr(Aρ)`.
pub fn expectation(a: &Mat4, rho: &DensityMatrix) -> Complex64 {
    (*a * rho.matrix).trace()
}

/// Spinor-built Pauli operators and the particle-subspace identity at one momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaBasis {
    pub x: Mat4,
    pub y: Mat4,
    pub z: Mat4,
    /// `I(p) = Σ_α u ū = (slash(p) + m) / 2m`
    pub identity: Mat4,
}

impl SigmaBasis {
    pub fn components(&self) -> [Mat4; 3] {
        [self.x, self.y, self.z]
    }
}

/// `Σ_x = u₀ū₁ + u₁ū₀`, `Σ_y = i(u₁ū₀ - u₀ū₁)`, `Σ_z = u₀ū₀ - u₁ū₁`, and `I(p)`.
pub fn sigma_ops(m: f64, p: &FourVector) -> Result<SigmaBasis> {
    let u0 = spinor(SpinorKind::Particle, m, p, 0)?;
    let u1 = spinor(SpinorKind::Particle, m, p, 1)?;
    let (b0, b1) = (u0.dual().0, u1.dual().0);
    let o = |a: &Spinor, b: &CVec<4>| Mat4::outer(&a.components, b);
    let (o00, o01, o10, o11) = (o(&u0, &b0), o(&u0, &b1), o(&u1, &b0), o(&u1, &b1));
    Ok(SigmaBasis {
        x: o01 + o10,
        y: (o10 - o01).scale(c(0.0, 1.0)),
        z: o00 - o11,
        identity: o00 + o11,
    })
}

/// `(slash(p) + m) / 2m`, the closed form of `I(p)`.
pub fn particle_projector(m: f64, p: &FourVector) -> Mat4 {
    (slash(p) + Mat4::identity().scale_re(m)).scale_re(1.0 / (2.0 * m))
}

/// Bloch vector `r⃗` with `ρ = I(p)/2 + r_l Σ^l(p)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector(pub [f64; 3]);

impl BlochVector {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

/// `r_l = Tr(ρ Σ^l(p))`.
pub fn bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    let basis = sigma_ops(rho.mass, &rho.momentum)?;
    let comps = basis.components();
    Ok(BlochVector(std::array::from_fn(|l| {
        expectation(&comps[l], rho).re
    })))
}

/// `ρ = I(p)/2 + r_l Σ^l(p)/2`; requires `|r⃗| <= 1`.
pub fn bloch_compose(m: f64, p: &FourVector, r: &BlochVector) -> Result<DensityMatrix> {
    if r.0.iter().any(|v| !v.is_finite()) || r.norm() > 1.0 + Tolerances::default().normalization
    {
        return domain(format!("Bloch vector length {} exceeds 1", r.norm()));
    }
    let basis = sigma_ops(m, p)?;
    let mut rho = basis.identity.scale_re(0.5);
    for (s, rl) in basis.components().iter().zip(r.0) {
        rho += s.scale_re(0.5 * rl);
    }
    Ok(DensityMatrix {
        matrix: rho,
        momentum: *p,
        mass: m,
    })
}

/// `[Tr ρ, Tr ρ², …, Tr ρ^kmax]`.
pub fn trace_powers(rho: &DensityMatrix, kmax: u32) -> Result<Vec<Complex64>> {
    if kmax == 0 {
        return domain("kmax must be at least 1");
    }
    let mut out = Vec::with_capacity(kmax as usize);
    let mut power = rho.matrix;
    out.push(power.trace());
    for _ in 1..kmax {
        power = power * rho.matrix;
        out.push(power.trace());
    }
    Ok(out)
}

/// Real part of `z`, failing if the imaginary part exceeds `tol · (1 + |z|)`.
pub(crate) fn real_part(z: Complex64, tol: f64, what: &str) -> Result<f64> {
    if z.im.abs() > tol * (1.0 + z.norm()) {
        return Err(Error::Numerical(format!(
            "{what} should be real but has imaginary part {:e}",
            z.im
        )));
    }
    Ok(z.re)
}
