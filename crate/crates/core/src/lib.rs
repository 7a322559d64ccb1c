//! Free Dirac spinors in the Weyl representation, the non-unitary spinor
//! representation of Lorentz boosts, covariant spinor density matrices and
//! the momentum-dependent spin quantization axis seen by a boosted observer.

pub mod check;
pub mod dirac;
pub mod error;
pub mod lorentz;
pub mod measurement;
pub mod scenario;
pub mod states;
pub mod tensor;

pub use check::{run_all, run_suite, CheckConfig, SuiteReport};
pub use dirac::{slash, unslash, weyl_gammas, GammaSet};
pub use error::{Error, Result};
pub use lorentz::{
    boost_single_plane, generator, generators, group_element, inverse, rotation, spinor_boost,
    spinor_boost_rapidity, vector_boost, LorentzGenerator, LorentzParams, SpinorTransform,
    VectorBoost,
};
pub use measurement::{
    axis_ket, expectation_closed_form, measurement_operator, rest_particle_axis, solve_axis,
    solve_axis_oracle, spin_expectation, MeasurementAxis, MeasurementOperator, Sign,
};
pub use scenario::{satellite_momentum, scenario_axis, sweep, ScenarioConfig, SweepRow};
pub use states::{
    bloch, bloch_compose, current, density, dual, expectation, rest_spinor, sigma_ops, spinor,
    superpose, trace_powers, transform, BlochVector, Covariant, DensityMatrix, DualSpinor,
    Ensemble, SigmaBasis, Spinor, SpinorKind,
};
pub use tensor::{
    mat_exp, minkowski_dot, momentum_from_rapidity, Axis, ComplexMatrix, FourVector, Mat2, Mat4,
    Rapidity, Tolerances,
};
