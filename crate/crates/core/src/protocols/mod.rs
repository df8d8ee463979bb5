//! One-way problems, concrete protocols and communication-matrix
//! diagnostics.

mod advice;
mod classical;
mod diagnostics;
mod problem;
mod quantum;

pub use advice::{group_membership_advice, pqp_advice, pqp_advice_f64};
pub use classical::{
    equality_fingerprint, is_prime, primes_in, subset_fingerprint, EqualityFingerprint, Fingerprint,
    SubsetFingerprint, TrialSummary,
};
pub use diagnostics::{
    matrix_diagnostics, vc_dimension, BoundKind, BoundReport, CommMatrix, Diagnostics, Measure, MAX_MATRIX_ENTRIES,
};
pub use problem::{bit, coset, equality, membership, parse_problem, promise_example, subset, OneWayProblem};
pub use quantum::{
    basis_protocol, boost, coset_basis_protocol, evaluate_protocol, hadamard_fingerprint_protocol, majority_error,
    random_bit_protocol, random_protocol, ErrorMatrix, QuantumOneWayProtocol, MAX_MESSAGE_QUBITS,
};

/// Records `Q¹₂ ≤ L` when the protocol's worst error is at most 1/3.
pub fn certified_upper_bound(
    prob: &OneWayProblem,
    p: &QuantumOneWayProtocol,
    eval: &ErrorMatrix,
) -> Option<BoundReport> {
    (eval.worst_case_error <= 1.0 / 3.0).then(|| BoundReport {
        problem: prob.id().to_string(),
        measure: Measure::Q12,
        kind: BoundKind::Upper,
        value: p.qubits() as f64,
        provenance: format!("protocol {} with worst error {:.3e}", p.name(), eval.worst_case_error),
    })
}
