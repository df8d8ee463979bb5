use serde::Serialize;

use super::dist::PairDistribution;
use crate::error::{Error, Result};
use crate::exact::{serialize_q, to_f64, Q};
use crate::protocols::QuantumOneWayProtocol;
use crate::qcore::{c, trace_distance, ComplexMatrix, DensityMatrix};

pub const MAX_CERTIFICATE_QUBITS: usize = 8;
pub const DEFAULT_BIAS: f64 = 1.0 / 3.0;

/// `⌈1 + log₂(β²/δ)⌉`: the smallest `L` with `β ≤ √(2^{L−1} δ)`.
pub fn required_l(beta: f64, delta: f64) -> Result<i64> {
    if !(beta > 0.0) || !(delta > 0.0) {
        return Err(Error::InvalidParameter(format!("required_L needs β, δ > 0 (got {beta}, {delta})")));
    }
    Ok((1.0 + (beta * beta / delta).log2()).ceil() as i64)
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceDistanceReport {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(serialize_with = "serialize_q")]
    pub delta: Q,
    /// `E_{y∼B} ‖ρ − ρ_y‖_tr`.
    pub expected_tdist: f64,
    /// `√(2^{L−1} δ)`.
    pub bound: f64,
    pub beta: f64,
    pub required_l: Option<i64>,
    pub verdict: bool,
}

fn average(p: &QuantumOneWayProtocol, weights: impl Iterator<Item = (usize, f64)>) -> Result<DensityMatrix> {
    let d = p.message_dim();
    let mut acc = ComplexMatrix::zeros(d, d);
    for (x, w) in weights {
        acc += p.message(x)?.matrix() * c(w, 0.0);
    }
    DensityMatrix::new(acc)
}

/// Compares `E_y ‖ρ − ρ_y‖_tr` (with `ρ = E_{D₁} ρ_x`, `ρ_y = E_{A_y} ρ_x`)
/// to `√(2^{L−1} ‖D₂ − D₁²‖)`.
pub fn vardist_certificate(p: &QuantumOneWayProtocol, pairs: &PairDistribution, beta: f64) -> Result<TraceDistanceReport> {
    if p.qubits() > MAX_CERTIFICATE_QUBITS {
        return Err(Error::QubitBudget { needed: p.qubits(), limit: MAX_CERTIFICATE_QUBITS });
    }
    if p.alice_inputs() != pairs.universe() {
        return Err(Error::DimensionMismatch { expected: pairs.universe(), found: p.alice_inputs() });
    }
    let rho = average(p, pairs.d1().iter().map(|(x, w)| (x, to_f64(w))))?;
    let mut expected = 0.0;
    for comp in pairs.components() {
        let rho_y = average(p, comp.distribution.iter().map(|(x, w)| (x, to_f64(w))))?;
        expected += to_f64(&comp.weight) * trace_distance(&rho, &rho_y)?;
    }
    let delta = pairs.distance_to_product();
    let delta_f = to_f64(&delta);
    let bound = (2f64.powi(p.qubits() as i32 - 1) * delta_f).sqrt();
    let required = if delta_f > 0.0 { Some(required_l(beta, delta_f)?) } else { None };
    Ok(TraceDistanceReport {
        l: p.qubits(),
        delta,
        expected_tdist: expected,
        bound,
        beta,
        required_l: required,
        verdict: expected <= bound + 1e-8,
    })
}
