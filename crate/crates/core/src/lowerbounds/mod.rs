//! The trace-distance lower-bound method: exact hard distributions,
//! variation distances, and the `√(2^{L−1} δ)` certificate.

mod certificate;
mod dist;
mod instances;
mod randset;

pub use certificate::{required_l, vardist_certificate, TraceDistanceReport, DEFAULT_BIAS, MAX_CERTIFICATE_QUBITS};
pub use dist::{
    build_pair_distributions, variation_distance, Component, FiniteDistribution, PairDistribution, PairSummary,
    MAX_DENSE_PAIRS,
};
pub use instances::{
    coset_delta_exact, coset_family, coset_report, difference_distribution, subgroup_delta, subset_delta,
    subset_family, CosetReport, SubsetDelta,
};
pub use randset::{
    randset_check, randset_closed_form, randset_enumeration, sample_subset, RandsetReport, MAX_ENUMERATED_SUBSETS,
};
