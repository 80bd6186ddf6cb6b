//! Spin-j (SU(2)) nonclassicality toolkit.
//!
//! Measurement statistics of `j·u` are compared against the largest values
//! any mixture of spin coherent states can reach, and squeezing criteria are
//! evaluated on the same states.

pub mod bounds;
pub mod coherent;
pub mod error;
pub mod gallery;
pub mod special;
pub mod spin;
pub mod squeezing;

pub use bounds::{
    bright_limit_bound, classical_measurement_bound, classical_state_bound, classical_state_bounds,
    element_state_bound, qmax, quadrature_bound, scaled_statistics, violation_report, BoundReport, QmaxConfig,
    QmaxResult,
};
pub use coherent::{coherent_state, husimi_q, integrate_husimi, overlap_prob, sphere_quadrature, SphereDirection};
pub use error::{Error, Result};
pub use gallery::{
    cat_state, intelligent_state, jacobi_closed_form, partial_superposition, phase_averaged_equatorial,
    IntelligentStateResult,
};
pub use spin::{
    component_matrix, expectation, measurement_statistics, rotation, spin_matrices, variance, CMatrix, CVector,
    DensityOperator, Direction, HalfInteger, KetState, MeasurementElement, SpinJ, SpinMatrices, C64,
};
pub use squeezing::{
    coherent_identity_check, evaluate_criteria, mean_spin, min_perp_variance, Criteria, Criterion, SqueezingStatus,
    SqueezingVerdict,
};
