//! Weyl (chiral) representation of the Dirac algebra.
//!
//! `α_i = diag(σ_i, -σ_i)`, `β = offdiag(I, I)`, `γ⁰ = β`, `γ^i = α_i β`,
//! which gives `γ^μ = offdiag(σ^μ, σ̄^μ)` with `σ^μ = (I, σ⃗)` and
//! `σ̄^μ = (I, -σ⃗)`.

use std::sync::LazyLock;

use crate::tensor::{c, FourVector, Mat2, Mat4, METRIC, ONE, ZERO};

/// Pauli matrices `σ_x, σ_y, σ_z`.
pub fn pauli() -> [Mat2; 3] {
    [
        Mat2::new([[ZERO, ONE], [ONE, ZERO]]),
        Mat2::new([[ZERO, c(0.0, -1.0)], [c(0.0, 1.0), ZERO]]),
        Mat2::new([[ONE, ZERO], [ZERO, -ONE]]),
    ]
}

/// The full set of Weyl-representation matrices.
#[derive(Debug, Clone)]
pub struct GammaSet {
    pub gamma: [Mat4; 4],
    pub alpha: [Mat4; 3],
    pub beta: Mat4,
    /// `σ^μ = (I, σ⃗)`
    pub sigma: [Mat2; 4],
    /// `σ̄^μ = (I, -σ⃗)`
    pub sigma_bar: [Mat2; 4],
}

static WEYL: LazyLock<GammaSet> = LazyLock::new(build_weyl);

fn build_weyl() -> GammaSet {
    let s = pauli();
    let id = Mat2::identity();
    let z = Mat2::zeros();
    let alpha = s.map(|si| Mat4::block_diag(&si, &-si));
    let beta = Mat4::from_blocks(&z, &id, &id, &z);
    let sigma = [id, s[0], s[1], s[2]];
    let sigma_bar = [id, -s[0], -s[1], -s[2]];
    let gamma = [beta, alpha[0] * beta, alpha[1] * beta, alpha[2] * beta];
    GammaSet {
        gamma,
        alpha,
        beta,
        sigma,
        sigma_bar,
    }
}

/// The Weyl-representation matrices (built once, shared).
pub fn weyl_gammas() -> &'static GammaSet {
    &WEYL
}

/// `γ⁰`.
pub fn gamma0() -> &'static Mat4 {
    &WEYL.gamma[0]
}

/// `(p·σ, p·σ̄)` with `p·σ = p⁰I - p⃗·σ⃗` and `p·σ̄ = p⁰I + p⃗·σ⃗`.
pub fn sigma_contract(p: &FourVector) -> (Mat2, Mat2) {
    let s = pauli();
    let mut pdots = Mat2::zeros();
    for (k, sk) in s.iter().enumerate() {
        pdots += sk.scale_re(p[k + 1]);
    }
    let e = Mat2::identity().scale_re(p[0]);
    (e - pdots, e + pdots)
}

/// Feynman slash `γ^μ p_μ = p⁰γ⁰ - p¹γ¹ - p²γ² - p³γ³`.
pub fn slash(p: &FourVector) -> Mat4 {
    let g = weyl_gammas();
    let mut out = Mat4::zeros();
    for (mu, gm) in g.gamma.iter().enumerate() {
        out += gm.scale_re(METRIC[mu] * p[mu]);
    }
    out
}

/// Recover `x^μ` from `S = slash(x)` via `x^μ = Tr(γ^μ S) / 4`.
pub fn unslash(s: &Mat4) -> FourVector {
    let g = weyl_gammas();
    FourVector(std::array::from_fn(|mu| (g.gamma[mu] * *s).trace().re / 4.0))
}

/// Largest residual of `{γ^μ, γ^ν} = 2 g^μν I` over all 16 index pairs.
pub fn clifford_residual() -> f64 {
    let g = weyl_gammas();
    let mut worst: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let target = if mu == nu {
                Mat4::identity().scale_re(2.0 * METRIC[mu])
            } else {
                Mat4::zeros()
            };
            worst = worst.max(g.gamma[mu].anticommutator(&g.gamma[nu]).dist(&target));
        }
    }
    worst
}

/// Largest residual of the `α`/`β` relations
/// `{α_i, α_j} = 2δ_ij I`, `{α_i, β} = 0`, `β² = I`, plus `γ^i = α_i β`.
pub fn alpha_beta_residual() -> f64 {
    let g = weyl_gammas();
    let id = Mat4::identity();
    let mut worst = (g.beta * g.beta).dist(&id);
    for i in 0..3 {
        for j in 0..3 {
            let target = if i == j { id.scale_re(2.0) } else { Mat4::zeros() };
            worst = worst.max(g.alpha[i].anticommutator(&g.alpha[j]).dist(&target));
        }
        worst = worst.max(g.alpha[i].anticommutator(&g.beta).norm());
        worst = worst.max(g.gamma[i + 1].dist(&(g.alpha[i] * g.beta)));
    }
    worst.max(g.gamma[0].dist(&g.beta))
}

/// Block form check: `γ^μ = offdiag(σ^μ, σ̄^μ)`.
pub fn block_form_residual() -> f64 {
    let g = weyl_gammas();
    let z = Mat2::zeros();
    (0..4)
        .map(|mu| {
            g.gamma[mu].dist(&Mat4::from_blocks(&z, &g.sigma[mu], &g.sigma_bar[mu], &z))
        })
        .fold(0.0, f64::max)
}
