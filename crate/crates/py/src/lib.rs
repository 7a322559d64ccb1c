//! Python bindings: `import spinor_lab`.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use spinor_lab_core as core;
use spinor_lab_core::measurement::{self, MeasurementAxis, Sign};
use spinor_lab_core::states::{self, Covariant, SpinorKind};
use spinor_lab_core::{Error, FourVector, Mat4};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Domain(_) | Error::Parse(_) => PyValueError::new_err(e.to_string()),
        Error::Numerical(_) | Error::Solver(_) => PyArithmeticError::new_err(e.to_string()),
    }
}

fn kind_from(s: &str) -> PyResult<SpinorKind> {
    match s {
        "particle" | "u" => Ok(SpinorKind::Particle),
        "antiparticle" | "v" => Ok(SpinorKind::Antiparticle),
        _ => Err(PyValueError::new_err(format!("unknown spinor kind {s:?}"))),
    }
}

fn kind_name(k: SpinorKind) -> &'static str {
    match k {
        SpinorKind::Particle => "particle",
        SpinorKind::Antiparticle => "antiparticle",
    }
}

fn sign_from(s: &str) -> PyResult<Sign> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        _ => Err(PyValueError::new_err(format!("sign must be '+' or '-', got {s:?}"))),
    }
}

fn rows(m: &Mat4) -> Vec<Vec<Complex64>> {
    m.0.iter().map(|r| r.to_vec()).collect()
}

/// A four-component Dirac spinor at a definite momentum.
#[pyclass(name = "Spinor", module = "spinor_lab", frozen)]
struct PySpinor(states::Spinor);

#[pymethods]
impl PySpinor {
    #[getter]
    fn components(&self) -> Vec<Complex64> {
        self.0.components.to_vec()
    }

    #[getter]
    fn kind(&self) -> &'static str {
        kind_name(self.0.kind)
    }

    #[getter]
    fn momentum(&self) -> [f64; 4] {
        self.0.momentum.0
    }

    #[getter]
    fn mass(&self) -> f64 {
        self.0.mass
    }

    /// `ψ̄ψ`
    fn bar_norm(&self) -> f64 {
        self.0.bar_norm()
    }

    /// `ψ†ψ`
    fn dagger_norm(&self) -> f64 {
        self.0.dagger_norm()
    }

    fn dual(&self) -> Vec<Complex64> {
        self.0.dual().0.to_vec()
    }

    fn dirac_residual(&self) -> f64 {
        self.0.dirac_residual()
    }

    fn current(&self) -> [f64; 4] {
        states::current(&self.0).0
    }

    fn transformed(&self, d: &PyTransform) -> PySpinor {
        PySpinor(self.0.transformed(&d.0))
    }

    fn density(&self) -> PyDensity {
        PyDensity(states::DensityMatrix::projector(&self.0))
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<PySpinor> {
        states::Spinor::from_json(s).map(PySpinor).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "Spinor(kind={}, m={}, p={:?})",
            kind_name(self.0.kind),
            self.0.mass,
            self.0.momentum.0
        )
    }
}

/// Spinor-representation Lorentz transformation `D`.
#[pyclass(name = "SpinorTransform", module = "spinor_lab", frozen)]
struct PyTransform(core::SpinorTransform);

#[pymethods]
impl PyTransform {
    #[getter]
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        rows(&self.0.matrix)
    }

    fn inverse(&self) -> PyTransform {
        PyTransform(self.0.inverse())
    }

    fn det(&self) -> Complex64 {
        self.0.det()
    }

    /// `‖D†D - I‖`
    fn unitarity_defect(&self) -> f64 {
        self.0.unitarity_defect()
    }

    /// `‖γ⁰D†γ⁰D - I‖`
    fn pseudo_unitarity_residual(&self) -> f64 {
        self.0.pseudo_unitarity_residual()
    }

    /// The matching four-vector transformation as a 4×4 real matrix.
    fn vector_representation(&self) -> [[f64; 4]; 4] {
        self.0.vector_representation().matrix
    }

    fn __matmul__(&self, other: &PyTransform) -> PyTransform {
        PyTransform(self.0 * other.0)
    }
}

/// Spinor density matrix `ρ = Σ q ψψ̄`.
#[pyclass(name = "DensityMatrix", module = "spinor_lab", frozen)]
struct PyDensity(states::DensityMatrix);

#[pymethods]
impl PyDensity {
    /// Mixture of `(weight, Spinor)` pairs sharing one momentum.
    #[new]
    fn new(members: Vec<(f64, Bound<'_, PySpinor>)>) -> PyResult<PyDensity> {
        let members = members.into_iter().map(|(q, s)| (q, s.get().0)).collect();
        let ens = states::Ensemble::new(members).map_err(to_py)?;
        Ok(PyDensity(states::density(&ens)))
    }

    #[getter]
    fn matrix(&self) -> Vec<Vec<Complex64>> {
        rows(&self.0.matrix)
    }

    fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    fn purity(&self) -> f64 {
        self.0.purity()
    }

    fn trace_powers(&self, kmax: u32) -> PyResult<Vec<Complex64>> {
        self.0.trace_powers(kmax).map_err(to_py)
    }

    fn bloch(&self) -> PyResult<[f64; 3]> {
        states::bloch(&self.0).map(|b| b.0).map_err(to_py)
    }

    fn transformed(&self, d: &PyTransform) -> PyDensity {
        PyDensity(self.0.transformed(&d.0))
    }
}

#[pyfunction]
#[pyo3(signature = (kind, m, p, alpha))]
fn spinor(kind: &str, m: f64, p: [f64; 4], alpha: u8) -> PyResult<PySpinor> {
    states::spinor(kind_from(kind)?, m, &FourVector(p), alpha)
        .map(PySpinor)
        .map_err(to_py)
}

#[pyfunction]
fn rest_spinor(kind: &str, m: f64, alpha: u8) -> PyResult<PySpinor> {
    states::rest_spinor(kind_from(kind)?, m, alpha)
        .map(PySpinor)
        .map_err(to_py)
}

/// `a₀ u(p,0) + a₁ u(p,1)` with `|a₀|² + |a₁|² = 1`.
#[pyfunction]
fn superpose(m: f64, p: [f64; 4], a0: Complex64, a1: Complex64) -> PyResult<PySpinor> {
    states::superpose(m, &FourVector(p), a0, a1)
        .map(PySpinor)
        .map_err(to_py)
}

#[pyfunction]
fn bloch_compose(m: f64, p: [f64; 4], r: [f64; 3]) -> PyResult<PyDensity> {
    states::bloch_compose(m, &FourVector(p), &states::BlochVector(r))
        .map(PyDensity)
        .map_err(to_py)
}

/// Weyl-representation `γ^μ` as four 4×4 complex matrices.
#[pyfunction]
fn gammas() -> Vec<Vec<Vec<Complex64>>> {
    core::weyl_gammas().gamma.iter().map(rows).collect()
}

#[pyfunction]
fn slash(p: [f64; 4]) -> Vec<Vec<Complex64>> {
    rows(&core::slash(&FourVector(p)))
}

#[pyfunction]
fn spinor_boost(m: f64, p: [f64; 4]) -> PyResult<PyTransform> {
    core::spinor_boost(m, &FourVector(p))
        .map(PyTransform)
        .map_err(to_py)
}

/// Pure boost `exp(-i η_k S^0k)` for a rapidity vector `η`.
#[pyfunction]
fn boost(eta: [f64; 3]) -> PyResult<PyTransform> {
    core::boost_single_plane(eta).map(PyTransform).map_err(to_py)
}

/// `D(ω) = exp(-(i/2) ω_μν S^μν)`, summed over all index pairs.
#[pyfunction]
fn group_element(omega: [[f64; 4]; 4]) -> PyResult<PyTransform> {
    core::group_element(&omega).map(PyTransform).map_err(to_py)
}

/// `ψ̄ M± ψ` for the detector axis `(θ, φ)`.
#[pyfunction]
#[pyo3(signature = (psi, theta, phi, sign = "+"))]
fn spin_expectation(psi: &PySpinor, theta: f64, phi: f64, sign: &str) -> PyResult<f64> {
    let axis = MeasurementAxis::new(theta, phi).map_err(to_py)?;
    let op = measurement::measurement_operator(&axis, sign_from(sign)?);
    measurement::spin_expectation(&psi.0, &op).map_err(to_py)
}

/// Detector axis `(θ, φ)` aligned with `u(p, 0)`.
#[pyfunction]
fn solve_axis(m: f64, p: [f64; 4]) -> PyResult<(f64, f64)> {
    measurement::solve_axis(m, &FourVector(p))
        .map(|a| (a.theta(), a.phi()))
        .map_err(to_py)
}

#[pyfunction]
fn rest_particle_axis(omega: f64) -> f64 {
    measurement::rest_particle_axis(omega).theta()
}

/// Satellite momentum and detector axis for one `(m, η, ω)`.
#[pyfunction]
fn scenario_axis(m: f64, eta: f64, omega: f64) -> PyResult<([f64; 4], f64, f64)> {
    let cfg = core::ScenarioConfig::new(m, eta, omega).map_err(to_py)?;
    let axis = core::scenario_axis(&cfg).map_err(to_py)?;
    Ok((core::satellite_momentum(&cfg).0, axis.theta(), axis.phi()))
}

/// Rows `(η, ω, θ, φ, cos²(θ/2))`, η-major.
#[pyfunction]
#[pyo3(signature = (eta_grid, omega_grid, m = 1.0))]
fn sweep(eta_grid: Vec<f64>, omega_grid: Vec<f64>, m: f64) -> PyResult<Vec<(f64, f64, f64, f64, f64)>> {
    let rows = core::sweep(&eta_grid, &omega_grid, m).map_err(to_py)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.eta, r.omega, r.theta, r.phi, r.cos2_half_theta))
        .collect())
}

/// Runs the invariance suites; returns `(name, max_residual)` pairs.
#[pyfunction]
#[pyo3(signature = (seed = 0, trials = 1000))]
fn check(py: Python<'_>, seed: u64, trials: usize) -> PyResult<Vec<(String, f64)>> {
    let cfg = core::CheckConfig { seed, trials };
    let reports = py.detach(|| core::run_all(&cfg)).map_err(to_py)?;
    Ok(reports.into_iter().map(|r| (r.name, r.max_residual)).collect())
}

#[pymodule]
fn spinor_lab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpinor>()?;
    m.add_class::<PyTransform>()?;
    m.add_class::<PyDensity>()?;
    m.add_function(wrap_pyfunction!(spinor, m)?)?;
    m.add_function(wrap_pyfunction!(rest_spinor, m)?)?;
    m.add_function(wrap_pyfunction!(superpose, m)?)?;
    m.add_function(wrap_pyfunction!(bloch_compose, m)?)?;
    m.add_function(wrap_pyfunction!(gammas, m)?)?;
    m.add_function(wrap_pyfunction!(slash, m)?)?;
    m.add_function(wrap_pyfunction!(spinor_boost, m)?)?;
    m.add_function(wrap_pyfunction!(boost, m)?)?;
    m.add_function(wrap_pyfunction!(group_element, m)?)?;
    m.add_function(wrap_pyfunction!(spin_expectation, m)?)?;
    m.add_function(wrap_pyfunction!(solve_axis, m)?)?;
    m.add_function(wrap_pyfunction!(rest_particle_axis, m)?)?;
    m.add_function(wrap_pyfunction!(scenario_axis, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    Ok(())
}
