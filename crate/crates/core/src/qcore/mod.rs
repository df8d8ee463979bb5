//! Exact dense simulation of small quantum systems.
//!
//! Everything here works on explicit `dim × dim` complex matrices. Composite
//! systems are ordered with the first factor most significant, so a basis
//! index of `A ⊗ B` is `a * dim(B) + b`.

mod measurement;
mod ops;
pub mod random;
mod recover;
mod state;

pub use measurement::{
    apply_measurement, majority_of, Dilation, MeasurementOutcome, Realization,
    TwoOutcomeMeasurement,
};
pub use ops::{partial_trace, pure_trace_distance, purify, reduced_from_columns, trace_distance, trace_norm};
pub use recover::{measure_and_recover, Recovery};
pub use state::{make_state, DensityMatrix, PureState, State, StateSpec};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type ComplexMatrix = DMatrix<C64>;
pub type ComplexVector = DVector<C64>;

/// Largest state dimension handled by the dense engine.
pub const MAX_DIM: usize = 1 << 10;
/// Tolerance for structural invariants (Hermiticity, trace, positivity, unitarity).
pub const INVARIANT_TOL: f64 = 1e-9;
/// Tolerance for derived numerical identities.
pub const DERIVED_TOL: f64 = 1e-8;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Maximum absolute entry of `a - b`.
pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Deviation of `u` from unitarity, measured entrywise on `u† u - I`.
pub fn unitarity_defect(u: &ComplexMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let prod = u.adjoint() * u;
    let id = ComplexMatrix::identity(u.nrows(), u.ncols());
    max_abs_diff(&prod, &id)
}

/// Kronecker product with the first argument as the most significant factor.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.kronecker(b)
}
