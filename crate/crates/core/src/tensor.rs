//! Fixed-size complex linear algebra, Minkowski geometry and rapidity
//! kinematics.
//!
//! Matrices are dense, row-major and sized at compile time (`N` is 2 or 4
//! throughout the crate). Natural units, metric signature (+, -, -, -).

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Minkowski metric diag(1, -1, -1, -1).
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Numerical tolerances used by the checked operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative on-shell tolerance: `|p·p - m²| <= on_shell * max(m², E²)`.
    pub on_shell: f64,
    /// Term-norm cutoff for the matrix exponential series.
    pub exp: f64,
    /// Hermiticity and negative-eigenvalue slack for `herm_sqrt2`, relative to `1 + ‖H‖`.
    pub psd: f64,
    /// Slack on normalization constraints (ψ̄ψ = 1, Σ|a|² = 1, Σq = 1).
    pub normalization: f64,
    /// Largest imaginary part tolerated for quantities that must be real.
    pub imaginary: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            on_shell: 1e-9,
            exp: 1e-13,
            psd: 1e-12,
            normalization: 1e-9,
            imaginary: 1e-9,
        }
    }
}

/// Dense `N×N` complex matrix.
#[derive(Clone, Copy, PartialEq)]
pub struct ComplexMatrix<const N: usize>(pub [[Complex64; N]; N]);

pub type Mat2 = ComplexMatrix<2>;
pub type Mat4 = ComplexMatrix<4>;

/// `N`-component complex column vector.
pub type CVec<const N: usize> = [Complex64; N];

impl<const N: usize> ComplexMatrix<N> {
    pub const fn new(rows: [[Complex64; N]; N]) -> Self {
        ComplexMatrix(rows)
    }

    pub fn zeros() -> Self {
        ComplexMatrix([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        Self::diag([ONE; N])
    }

    pub fn diag(d: [Complex64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = re(rows[i][j]);
            }
        }
        m
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut m = *self;
        m.0.iter_mut().flatten().for_each(|x| *x *= s);
        m
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(re(s))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Induced 1-norm (max column sum).
    pub fn norm_1(&self) -> f64 {
        (0..N)
            .map(|j| (0..N).map(|i| self.0[i][j].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// `{A, B} = AB + BA`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        *self * *other + *other * *self
    }

    pub fn apply(&self, v: &CVec<N>) -> CVec<N> {
        let mut out = [ZERO; N];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..N).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    /// Outer product `a bᵀ` (no conjugation; pass a dual row for `b`).
    pub fn outer(a: &CVec<N>, b: &CVec<N>) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = a[i] * b[j];
            }
        }
        m
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(), |acc, _| acc * *self)
    }

    /// `‖self - other‖` in the Frobenius norm.
    pub fn dist(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }
}

impl Mat2 {
    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }
}

impl Mat4 {
    /// Assemble from 2×2 blocks `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Mat2, b: &Mat2, cb: &Mat2, d: &Mat2) -> Self {
        let mut m = Self::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = a.0[i][j];
                m.0[i][j + 2] = b.0[i][j];
                m.0[i + 2][j] = cb.0[i][j];
                m.0[i + 2][j + 2] = d.0[i][j];
            }
        }
        m
    }

    pub fn block_diag(a: &Mat2, d: &Mat2) -> Self {
        Self::from_blocks(a, &Mat2::zeros(), &Mat2::zeros(), d)
    }

    /// Block `(r, c)` with `r, c ∈ {0, 1}`.
    pub fn block(&self, r: usize, cb: usize) -> Mat2 {
        let mut m = Mat2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = self.0[2 * r + i][2 * cb + j];
            }
        }
        m
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let mut a = self.0;
        let mut det = ONE;
        for k in 0..4 {
            let p = (k..4)
                .max_by(|&x, &y| a[x][k].norm().total_cmp(&a[y][k].norm()))
                .unwrap();
            if a[p][k] == ZERO {
                return ZERO;
            }
            if p != k {
                a.swap(p, k);
                det = -det;
            }
            det *= a[k][k];
            for i in k + 1..4 {
                let f = a[i][k] / a[k][k];
                for j in k..4 {
                    let t = a[k][j];
                    a[i][j] -= f * t;
                }
            }
        }
        det
    }
}

impl<const N: usize> Index<(usize, usize)> for ComplexMatrix<N> {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for ComplexMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for ComplexMatrix<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<const N: usize> AddAssign for ComplexMatrix<N> {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
    }
}

impl<const N: usize> Sub for ComplexMatrix<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for ComplexMatrix<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-1.0)
    }
}

impl<const N: usize> Mul for ComplexMatrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl<const N: usize> fmt::Debug for ComplexMatrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for row in &self.0 {
            write!(f, "  ")?;
            for x in row {
                write!(f, "{:>+.6}{:+.6}i  ", x.re, x.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Euclidean norm of a complex vector.
pub fn vec_norm<const N: usize>(v: &CVec<N>) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// `Σ a_i b_i` without conjugation.
pub fn bilinear<const N: usize>(a: &CVec<N>, b: &CVec<N>) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `a† b`.
pub fn inner<const N: usize>(a: &CVec<N>, b: &CVec<N>) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Contravariant four-vector `(x⁰, x¹, x², x³)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector([t, x, y, z])
    }

    /// Rest-frame momentum `(m, 0, 0, 0)`.
    pub const fn at_rest(m: f64) -> Self {
        FourVector([m, 0.0, 0.0, 0.0])
    }

    pub fn t(&self) -> f64 {
        self.0[0]
    }

    pub fn x(&self) -> f64 {
        self.0[1]
    }

    pub fn y(&self) -> f64 {
        self.0[2]
    }

    pub fn z(&self) -> f64 {
        self.0[3]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn spatial_norm(&self) -> f64 {
        self.spatial().iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Minkowski square `x·x`.
    pub fn square(&self) -> f64 {
        minkowski_dot(self, self)
    }

    /// Components with the index lowered, `x_μ = g_μν x^ν`.
    pub fn lowered(&self) -> [f64; 4] {
        let mut out = self.0;
        for (o, g) in out.iter_mut().zip(METRIC) {
            *o *= g;
        }
        out
    }

    /// `self` with the spatial part reversed.
    pub fn parity(&self) -> Self {
        FourVector::new(self.0[0], -self.0[1], -self.0[2], -self.0[3])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }

    /// Check `|p·p - m²| <= tol · max(m², (p⁰)²)` and `p⁰ > 0`.
    pub fn check_on_shell(&self, m: f64, tol: f64) -> Result<()> {
        if !(m > 0.0) || !m.is_finite() {
            return domain(format!("mass must be positive and finite, got {m}"));
        }
        if !self.is_finite() {
            return domain("momentum has non-finite components");
        }
        if self.0[0] <= 0.0 {
            return domain(format!("energy must be positive, got {}", self.0[0]));
        }
        let scale = (m * m).max(self.0[0] * self.0[0]);
        let off = (self.square() - m * m).abs();
        if off > tol * scale {
            return domain(format!(
                "momentum {:?} is off-shell for m = {m}: |p·p - m²| = {off:e}",
                self.0
            ));
        }
        Ok(())
    }
}

impl Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for FourVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        FourVector(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Sub for FourVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        FourVector(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl Mul<f64> for FourVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        FourVector(self.0.map(|v| v * s))
    }
}

/// `a⁰b⁰ - a¹b¹ - a²b² - a³b³`.
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    a.0[0] * b.0[0] - a.0[1] * b.0[1] - a.0[2] * b.0[2] - a.0[3] * b.0[3]
}

/// Spatial coordinate axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Four-vector index of the axis (1, 2 or 3).
    pub fn index(self) -> usize {
        match self {
            Axis::X => 1,
            Axis::Y => 2,
            Axis::Z => 3,
        }
    }
}

/// Rapidity `η` along a coordinate axis; negative values point along the
/// negative axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rapidity {
    pub value: f64,
    pub axis: Axis,
}

impl Rapidity {
    pub fn new(value: f64, axis: Axis) -> Self {
        Rapidity { value, axis }
    }

    /// Velocity `β = tanh η`.
    pub fn beta(&self) -> f64 {
        self.value.tanh()
    }

    pub fn from_beta(beta: f64, axis: Axis) -> Result<Self> {
        if !(beta.abs() < 1.0) {
            return domain(format!("|β| must be < 1, got {beta}"));
        }
        Ok(Rapidity::new(beta.atanh(), axis))
    }
}

/// On-shell momentum of a particle of mass `m` moving with rapidity `η`:
/// `p⁰ = m cosh η`, `p^k = m sinh η` along the rapidity axis.
pub fn momentum_from_rapidity(m: f64, eta: Rapidity) -> Result<FourVector> {
    if !(m > 0.0) || !m.is_finite() {
        return domain(format!("mass must be positive and finite, got {m}"));
    }
    let mut p = FourVector::at_rest(m * eta.value.cosh());
    p.0[eta.axis.index()] = m * eta.value.sinh();
    Ok(p)
}

const EXP_MAX_TERMS: usize = 64;

/// Principal matrix exponential with the default series tolerance.
pub fn mat_exp<const N: usize>(m: &ComplexMatrix<N>) -> Result<ComplexMatrix<N>> {
    mat_exp_with(m, Tolerances::default().exp)
}

/// Scaling and squaring: `exp(M) = exp(M / 2^s)^(2^s)` with `‖M / 2^s‖₁ <= 1/2`,
/// the inner exponential summed as a Taylor series until the next term is
/// below `min(tol, ε)` relative to the partial sum.
pub fn mat_exp_with<const N: usize>(m: &ComplexMatrix<N>, tol: f64) -> Result<ComplexMatrix<N>> {
    if !m.is_finite() {
        return Err(Error::Numerical("matrix exponential of non-finite matrix".into()));
    }
    let norm = m.norm_1();
    let s = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m.scale_re(0.5f64.powi(s));

    let mut sum = ComplexMatrix::<N>::identity();
    let mut term = ComplexMatrix::<N>::identity();
    let mut converged = false;
    for k in 1..=EXP_MAX_TERMS {
        term = (term * scaled).scale_re(1.0 / k as f64);
        sum += term;
        if term.norm() <= tol.min(f64::EPSILON) * sum.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical(format!(
            "exponential series did not reach tolerance {tol:e} in {EXP_MAX_TERMS} terms"
        )));
    }
    for _ in 0..s {
        sum = sum * sum;
    }
    if !sum.is_finite() {
        return Err(Error::Numerical("matrix exponential overflowed".into()));
    }
    Ok(sum)
}

/// Principal square root of a 2×2 Hermitian positive semidefinite matrix.
pub fn herm_sqrt2(h: &Mat2) -> Result<Mat2> {
    herm_sqrt2_with(h, Tolerances::default().psd)
}

/// Uses the closed form `√H = (H + √det H · I) / √(tr H + 2√det H)`, exact
/// for 2×2 PSD input by Cayley-Hamilton.
pub fn herm_sqrt2_with(h: &Mat2, tol: f64) -> Result<Mat2> {
    if !h.is_finite() {
        return domain("herm_sqrt2: non-finite input");
    }
    let scale = 1.0 + h.norm();
    if h.dist(&h.adjoint()) > tol * scale {
        return domain("herm_sqrt2: input is not Hermitian");
    }
    let a = h[(0, 0)].re;
    let d = h[(1, 1)].re;
    let b = h[(0, 1)];
    let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let lambda_min = 0.5 * (a + d) - half_gap;
    if lambda_min < -tol * scale {
        return domain(format!(
            "herm_sqrt2: negative eigenvalue {lambda_min:e}"
        ));
    }
    let tr = a + d;
    if tr <= 0.0 {
        return Ok(Mat2::zeros());
    }
    let s = (a * d - b.norm_sqr()).max(0.0).sqrt();
    let t = (tr + 2.0 * s).sqrt();
    // Rebuild from the Hermitian part so the result is exactly Hermitian.
    let herm = Mat2::new([[re(a), b], [b.conj(), re(d)]]);
    Ok((herm + Mat2::identity().scale_re(s)).scale_re(1.0 / t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    #[test]
    fn minkowski_examples() {
        let t = FourVector::new(1.0, 0.0, 0.0, 0.0);
        assert_eq!(minkowski_dot(&t, &t), 1.0);
        let l = FourVector::new(1.0, 1.0, 0.0, 0.0);
        assert_eq!(minkowski_dot(&l, &l), 0.0);
        let p = FourVector::new(1.25, 0.0, 0.0, -0.75);
        assert!((p.square() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exp_of_zero_and_scalar() {
        assert_eq!(mat_exp(&Mat4::zeros()).unwrap(), Mat4::identity());
        let e = mat_exp(&Mat4::diag([c(0.0, PI); 4])).unwrap();
        assert!(e.dist(&-Mat4::identity()) < 1e-14);
    }

    #[test]
    fn exp_matches_scalar_exponential_on_diagonal() {
        let d = [c(0.3, -1.0), c(-2.0, 0.5), c(4.0, 0.0), c(0.0, 7.0)];
        let e = mat_exp(&Mat4::diag(d)).unwrap();
        let want = Mat4::diag(d.map(|z| z.exp()));
        assert!(e.dist(&want) < 1e-12 * want.norm());
    }

    #[test]
    fn exp_nilpotent_is_truncated_series() {
        // exp([[0, a], [0, 0]]) = [[1, a], [0, 1]]
        let n = Mat2::new([[ZERO, c(3.0, -2.0)], [ZERO, ZERO]]);
        let e = mat_exp(&n).unwrap();
        assert!(e.dist(&Mat2::new([[ONE, c(3.0, -2.0)], [ZERO, ONE]])) < 1e-14);
    }

    #[test]
    fn exp_rejects_non_finite() {
        let m = Mat2::diag([c(f64::NAN, 0.0), ONE]);
        assert!(matches!(mat_exp(&m), Err(Error::Numerical(_))));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(herm_sqrt2(&Mat2::identity()).unwrap(), Mat2::identity());
        let r = herm_sqrt2(&Mat2::diag([re(4.0), re(9.0)])).unwrap();
        assert!(r.dist(&Mat2::diag([re(2.0), re(3.0)])) < 1e-15);
        let r = herm_sqrt2(&Mat2::diag([re(0.5), re(2.0)])).unwrap();
        assert!(r.dist(&Mat2::diag([re(0.5f64.sqrt()), re(2f64.sqrt())])) < 1e-15);
        assert_eq!(herm_sqrt2(&Mat2::zeros()).unwrap(), Mat2::zeros());
    }

    #[test]
    fn sqrt_rejects_negative_and_non_hermitian() {
        let neg = Mat2::diag([re(1.0), re(-0.5)]);
        assert!(matches!(herm_sqrt2(&neg), Err(Error::Domain(_))));
        let nh = Mat2::new([[ONE, c(0.0, 1.0)], [c(0.0, 1.0), ONE]]);
        assert!(matches!(herm_sqrt2(&nh), Err(Error::Domain(_))));
    }

    #[test]
    fn rapidity_momenta() {
        let p = momentum_from_rapidity(1.0, Rapidity::new(0.0, Axis::Z)).unwrap();
        assert_eq!(p, FourVector::new(1.0, 0.0, 0.0, 0.0));
        let p = momentum_from_rapidity(1.0, Rapidity::new(LN_2, Axis::Z)).unwrap();
        assert!(p.max_abs_diff(&FourVector::new(1.25, 0.0, 0.0, 0.75)) < 1e-15);
        let p = momentum_from_rapidity(2.0, Rapidity::new(LN_2, Axis::X)).unwrap();
        assert!(p.max_abs_diff(&FourVector::new(2.5, 1.5, 0.0, 0.0)) < 1e-15);
        assert!(momentum_from_rapidity(0.0, Rapidity::new(1.0, Axis::X)).is_err());
        assert!(momentum_from_rapidity(-1.0, Rapidity::new(1.0, Axis::X)).is_err());
    }

    #[test]
    fn beta_round_trip() {
        let r = Rapidity::from_beta(0.6, Axis::Y).unwrap();
        assert!((r.beta() - 0.6).abs() < 1e-15);
        assert!(Rapidity::from_beta(1.0, Axis::Y).is_err());
    }

    #[test]
    fn det4_of_block_diagonal() {
        let a = Mat2::new([[re(2.0), re(1.0)], [re(1.0), re(3.0)]]);
        let m = Mat4::block_diag(&a, &a);
        assert!((m.det() - re(25.0)).norm() < 1e-13);
    }

    #[test]
    fn on_shell_check() {
        let p = FourVector::new(1.25, 0.0, 0.0, 0.75);
        assert!(p.check_on_shell(1.0, 1e-9).is_ok());
        assert!(p.check_on_shell(1.1, 1e-9).is_err());
        assert!(p.parity().parity() == p);
        assert!(FourVector::new(-1.0, 0.0, 0.0, 0.0).check_on_shell(1.0, 1e-9).is_err());
    }
}
