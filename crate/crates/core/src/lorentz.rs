//! Lorentz algebra generators, the (non-unitary) spinor representation of
//! the Lorentz group, and real four-vector boosts.
//!
//! Conventions:
//! * `S^μν = (i/4)[γ^μ, γ^ν]`.
//! * `D(ω) = exp(-(i/2) ω_μν S^μν)` with the sum over **all** ordered pairs,
//!   so an antisymmetric `ω` counts each plane twice. A pure boost of
//!   rapidity `η` along `k` is `ω_0k = -ω_k0 = η` in this form, which is the
//!   same matrix as the single-plane form `exp(-(i/2) ω_0k S^0k)` with
//!   `ω_0k = 2η` (see [`boost_single_plane`]).
//! * [`vector_boost`] uses the frame-boost sign: `L(η, z)` maps `(m, 0, 0, 0)`
//!   to `(m cosh η, 0, 0, -m sinh η)`.

use std::ops::Mul;

use crate::dirac::{gamma0, slash, unslash, sigma_contract, weyl_gammas};
use crate::error::{domain, Result};
use crate::tensor::{
    c, mat_exp, momentum_from_rapidity, Axis, FourVector, Mat2, Mat4, Rapidity, Tolerances,
    METRIC,
};

/// Antisymmetric parameters `ω_μν`.
pub type LorentzParams = [[f64; 4]; 4];

/// One of the six generators `S^μν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzGenerator {
    pub mu: usize,
    pub nu: usize,
    pub matrix: Mat4,
}

impl LorentzGenerator {
    pub fn is_boost(&self) -> bool {
        self.mu == 0 || self.nu == 0
    }
}

/// `S^μν = (i/4)[γ^μ, γ^ν]` for `μ ≠ ν`.
pub fn generator(mu: usize, nu: usize) -> Result<LorentzGenerator> {
    if mu > 3 || nu > 3 {
        return domain(format!("generator indices must be in 0..=3, got ({mu}, {nu})"));
    }
    if mu == nu {
        return domain(format!("generator S^{mu}{nu} needs distinct indices"));
    }
    Ok(LorentzGenerator {
        mu,
        nu,
        matrix: generator_matrix(mu, nu),
    })
}

fn generator_matrix(mu: usize, nu: usize) -> Mat4 {
    let g = weyl_gammas();
    g.gamma[mu].commutator(&g.gamma[nu]).scale(c(0.0, 0.25))
}

/// The six independent generators, boosts `S^01, S^02, S^03` first, then
/// rotations `S^12, S^13, S^23`.
pub fn generators() -> [LorentzGenerator; 6] {
    const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    PAIRS.map(|(m, n)| LorentzGenerator {
        mu: m,
        nu: n,
        matrix: generator_matrix(m, n),
    })
}

/// Largest residual of
/// `[S^μν, S^ρσ] = i(g^νρ S^μσ - g^μρ S^νσ - g^νσ S^μρ + g^μσ S^νρ)`
/// over all index quadruples (with `S^μμ = 0`).
pub fn closure_residual() -> f64 {
    let mut s = [[Mat4::zeros(); 4]; 4];
    for (mu, row) in s.iter_mut().enumerate() {
        for (nu, m) in row.iter_mut().enumerate() {
            if mu != nu {
                *m = generator_matrix(mu, nu);
            }
        }
    }
    let g = |a: usize, b: usize| if a == b { METRIC[a] } else { 0.0 };
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            for rho in 0..4 {
                for sg in 0..4 {
                    let lhs = s[mu][nu].commutator(&s[rho][sg]);
                    let rhs = (s[mu][sg].scale_re(g(nu, rho)) - s[nu][sg].scale_re(g(mu, rho))
                        - s[mu][rho].scale_re(g(nu, sg))
                        + s[nu][rho].scale_re(g(mu, sg)))
                    .scale(c(0.0, 1.0));
                    worst = worst.max(lhs.dist(&rhs));
                }
            }
        }
    }
    worst
}

/// A spinor-representation group element `D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorTransform {
    pub matrix: Mat4,
    /// `ω_μν` in the all-pairs convention, when known.
    pub params: Option<LorentzParams>,
}

impl SpinorTransform {
    pub fn identity() -> Self {
        SpinorTransform {
            matrix: Mat4::identity(),
            params: Some([[0.0; 4]; 4]),
        }
    }

    pub fn from_matrix(matrix: Mat4) -> Self {
        SpinorTransform {
            matrix,
            params: None,
        }
    }

    /// `D⁻¹ = γ⁰ D† γ⁰`.
    pub fn inverse(&self) -> Self {
        inverse(self)
    }

    pub fn det(&self) -> num_complex::Complex64 {
        self.matrix.det()
    }

    /// `‖γ⁰D†γ⁰ D - I‖`; vanishes for every group element.
    pub fn pseudo_unitarity_residual(&self) -> f64 {
        (self.inverse().matrix * self.matrix).dist(&Mat4::identity())
    }

    /// `‖D†D - I‖`; strictly positive for boosts.
    pub fn unitarity_defect(&self) -> f64 {
        (self.matrix.adjoint() * self.matrix).dist(&Mat4::identity())
    }

    /// The four-vector transformation `Λ` with `D slash(x) D⁻¹ = slash(Λx)`.
    pub fn vector_representation(&self) -> VectorBoost {
        let inv = self.inverse().matrix;
        let mut l = [[0.0; 4]; 4];
        for nu in 0..4 {
            let mut e = FourVector::default();
            e.0[nu] = 1.0;
            let col = unslash(&(self.matrix * slash(&e) * inv));
            for mu in 0..4 {
                l[mu][nu] = col[mu];
            }
        }
        VectorBoost {
            matrix: l,
            rapidity: None,
        }
    }
}

impl Mul for SpinorTransform {
    type Output = SpinorTransform;
    fn mul(self, rhs: Self) -> Self {
        SpinorTransform::from_matrix(self.matrix * rhs.matrix)
    }
}

fn check_antisymmetric(omega: &LorentzParams) -> Result<()> {
    for mu in 0..4 {
        for nu in 0..4 {
            let (a, b) = (omega[mu][nu], omega[nu][mu]);
            if !a.is_finite() || (a + b).abs() > 1e-12 * (1.0 + a.abs()) {
                return domain(format!(
                    "ω must be finite and antisymmetric: ω[{mu}][{nu}] = {a}, ω[{nu}][{mu}] = {b}"
                ));
            }
        }
    }
    Ok(())
}

/// `D(ω) = exp(-(i/2) Σ_{μ,ν} ω_μν S^μν)`.
pub fn group_element(omega: &LorentzParams) -> Result<SpinorTransform> {
    check_antisymmetric(omega)?;
    let mut x = Mat4::zeros();
    for mu in 0..4 {
        for nu in 0..4 {
            if mu != nu && omega[mu][nu] != 0.0 {
                x += generator_matrix(mu, nu).scale_re(omega[mu][nu]);
            }
        }
    }
    let matrix = mat_exp(&x.scale(c(0.0, -0.5)))?;
    Ok(SpinorTransform {
        matrix,
        params: Some(*omega),
    })
}

/// Boost in single-plane form `exp(-(i/2) Σ_k ω_0k S^0k)` with
/// `ω_0k = 2η_k`, i.e. `exp(-i η_k S^0k)`.
pub fn boost_single_plane(eta: [f64; 3]) -> Result<SpinorTransform> {
    let mut x = Mat4::zeros();
    for (k, e) in eta.iter().enumerate() {
        let omega_0k = 2.0 * e;
        x += generator_matrix(0, k + 1).scale_re(omega_0k);
    }
    let matrix = mat_exp(&x.scale(c(0.0, -0.5)))?;
    let mut params = [[0.0; 4]; 4];
    for k in 0..3 {
        params[0][k + 1] = eta[k];
        params[k + 1][0] = -eta[k];
    }
    Ok(SpinorTransform {
        matrix,
        params: Some(params),
    })
}

/// Rotation `exp(-iθ S^ij)` in the plane of the two axes other than `axis`,
/// i.e. by angle `θ` about `axis`.
pub fn rotation(axis: Axis, angle: f64) -> Result<SpinorTransform> {
    let (i, j) = match axis {
        Axis::X => (2, 3),
        Axis::Y => (3, 1),
        Axis::Z => (1, 2),
    };
    let mut omega = [[0.0; 4]; 4];
    omega[i][j] = angle;
    omega[j][i] = -angle;
    group_element(&omega)
}

/// Closed-form boost `diag(m + p·σ, m + p·σ̄) / √(2m(E + m))`, taking the rest
/// spinors of mass `m` to momentum `p`.
pub fn spinor_boost(m: f64, p: &FourVector) -> Result<SpinorTransform> {
    spinor_boost_with(m, p, &Tolerances::default())
}

pub fn spinor_boost_with(m: f64, p: &FourVector, tol: &Tolerances) -> Result<SpinorTransform> {
    p.check_on_shell(m, tol.on_shell)?;
    let e = p.t();
    if e + m <= 0.0 {
        return domain("E + m must be positive");
    }
    let (ps, pbs) = sigma_contract(p);
    let mid = Mat2::identity().scale_re(m);
    let norm = 1.0 / (2.0 * m * (e + m)).sqrt();
    let matrix = Mat4::block_diag(&(mid + ps), &(mid + pbs)).scale_re(norm);

    let pn = p.spatial_norm();
    let mut params = [[0.0; 4]; 4];
    if pn > 0.0 {
        let eta = (pn / m).asinh();
        for k in 0..3 {
            params[0][k + 1] = eta * p[k + 1] / pn;
            params[k + 1][0] = -params[0][k + 1];
        }
    }
    Ok(SpinorTransform {
        matrix,
        params: Some(params),
    })
}

/// Closed-form boost to the momentum of a mass-`m` particle with rapidity `eta`.
pub fn spinor_boost_rapidity(m: f64, eta: Rapidity) -> Result<SpinorTransform> {
    spinor_boost(m, &momentum_from_rapidity(m, eta)?)
}

/// `γ⁰ D† γ⁰`.
pub fn inverse(d: &SpinorTransform) -> SpinorTransform {
    let g0 = gamma0();
    SpinorTransform {
        matrix: *g0 * d.matrix.adjoint() * *g0,
        params: d.params.map(|w| w.map(|row| row.map(|v| -v))),
    }
}

/// A real 4×4 Lorentz transformation acting on contravariant four-vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VectorBoost {
    pub matrix: [[f64; 4]; 4],
    /// Set for axis-aligned boosts built by [`vector_boost`].
    pub rapidity: Option<Rapidity>,
}

impl VectorBoost {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        VectorBoost {
            matrix: m,
            rapidity: None,
        }
    }

    /// Pure boost mapping `(m, 0, 0, 0)` to the on-shell momentum `p`.
    pub fn from_momentum(m: f64, p: &FourVector) -> Result<Self> {
        p.check_on_shell(m, Tolerances::default().on_shell)?;
        let e = p.t();
        let mut l = [[0.0; 4]; 4];
        l[0][0] = e / m;
        for i in 1..4 {
            l[0][i] = p[i] / m;
            l[i][0] = p[i] / m;
            for j in 1..4 {
                l[i][j] = if i == j { 1.0 } else { 0.0 } + p[i] * p[j] / (m * (e + m));
            }
        }
        Ok(VectorBoost {
            matrix: l,
            rapidity: None,
        })
    }

    pub fn apply(&self, x: &FourVector) -> FourVector {
        FourVector(std::array::from_fn(|i| {
            (0..4).map(|j| self.matrix[i][j] * x[j]).sum()
        }))
    }

    pub fn compose(&self, other: &VectorBoost) -> VectorBoost {
        let mut m = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                m[i][j] = (0..4).map(|k| self.matrix[i][k] * other.matrix[k][j]).sum();
            }
        }
        VectorBoost {
            matrix: m,
            rapidity: None,
        }
    }

    /// Largest entry of `|LᵀgL - g|`.
    pub fn metric_residual(&self) -> f64 {
        let l = &self.matrix;
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let v: f64 = (0..4).map(|k| l[k][i] * METRIC[k] * l[k][j]).sum();
                let target = if i == j { METRIC[i] } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &VectorBoost) -> f64 {
        (0..16)
            .map(|n| (self.matrix[n / 4][n % 4] - other.matrix[n / 4][n % 4]).abs())
            .fold(0.0, f64::max)
    }
}

/// `L(η)`: `cosh η` on `(0,0)` and `(k,k)`, `-sinh η` on `(0,k)` and `(k,0)`.
pub fn vector_boost(eta: Rapidity) -> VectorBoost {
    let mut b = VectorBoost::identity();
    let k = eta.axis.index();
    let (ch, sh) = (eta.value.cosh(), eta.value.sinh());
    b.matrix[0][0] = ch;
    b.matrix[k][k] = ch;
    b.matrix[0][k] = -sh;
    b.matrix[k][0] = -sh;
    b.rapidity = Some(eta);
    b
}
