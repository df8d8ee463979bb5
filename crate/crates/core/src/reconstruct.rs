//! Classical simulation of a quantum one-way message: Alice sends the list
//! of inputs on which a guessed maximally mixed message rounds the wrong way,
//! and Bob replays the corresponding postselections.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::protocols::{OneWayProblem, QuantumOneWayProtocol};
use crate::qcore::{trace_distance, DensityMatrix, TwoOutcomeMeasurement};

/// Width of the band around 1/2 that rounds up and is flagged as a tie.
pub const TIE_TOL: f64 = 1e-9;
/// Smallest branch probability accepted by [`postselect_update`].
pub const MIN_BRANCH_PROBABILITY: f64 = 1e-12;
pub const MAX_DOMAIN: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdviceEntry {
    pub y: usize,
    pub bit: u8,
}

/// `(y_1, f(x, y_1)), …, (y_T, f(x, y_T))` for a `K`-qubit boosted message.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawAdvice")]
pub struct AdviceMessage {
    #[serde(rename = "K")]
    k: usize,
    entries: Vec<AdviceEntry>,
}

#[derive(Deserialize)]
struct RawAdvice {
    #[serde(rename = "K")]
    k: usize,
    entries: Vec<AdviceEntry>,
}

impl TryFrom<RawAdvice> for AdviceMessage {
    type Error = Error;
    fn try_from(raw: RawAdvice) -> Result<Self> {
        AdviceMessage::new(raw.k, raw.entries)
    }
}

impl AdviceMessage {
    pub fn new(k: usize, entries: Vec<AdviceEntry>) -> Result<Self> {
        if entries.len() > k {
            return Err(Error::InvalidState(format!("advice has {} entries but K = {k}", entries.len())));
        }
        if entries.windows(2).any(|w| w[0].y >= w[1].y) {
            return Err(Error::InvalidState("advice inputs are not strictly increasing".into()));
        }
        if entries.iter().any(|e| e.bit > 1) {
            return Err(Error::InvalidState("advice bit is not 0 or 1".into()));
        }
        Ok(Self { k, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `T`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[AdviceEntry] {
        &self.entries
    }

    /// Classical length: `T` pairs of `(input, bit)`.
    pub fn bit_length(&self, bob_bits: usize) -> usize {
        self.entries.len() * (bob_bits + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForcedOutcome {
    pub y: Option<usize>,
    pub bit: u8,
    pub probability: f64,
}

/// The guessed message `I_t` after conditioning on forced outcomes.
#[derive(Debug, Clone)]
pub struct PostselectedState {
    state: DensityMatrix,
    history: Vec<ForcedOutcome>,
    cumulative: f64,
}

impl PostselectedState {
    pub fn new(state: DensityMatrix) -> Self {
        Self { state, history: Vec::new(), cumulative: 1.0 }
    }

    /// `I_0 = I / 2^K`.
    pub fn maximally_mixed(k: usize) -> Result<Self> {
        Ok(Self::new(DensityMatrix::maximally_mixed(k)?))
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn history(&self) -> &[ForcedOutcome] {
        &self.history
    }

    pub fn cumulative_probability(&self) -> f64 {
        self.cumulative
    }
}

/// `P(ρ) = Pr[Λ outputs 1]`.
pub fn response_probability(rho: &DensityMatrix, lambda: &TwoOutcomeMeasurement) -> Result<f64> {
    lambda.probability(rho, 1)
}

/// Forces outcome `bit` of `Λ` and renormalizes the uncomputed post-state.
pub fn postselect_update(s: &PostselectedState, lambda: &TwoOutcomeMeasurement, bit: u8) -> Result<PostselectedState> {
    postselect_labeled(s, lambda, bit, None)
}

fn postselect_labeled(
    s: &PostselectedState,
    lambda: &TwoOutcomeMeasurement,
    bit: u8,
    y: Option<usize>,
) -> Result<PostselectedState> {
    let (p, unnormalized) = lambda.branch(&s.state, usize::from(bit))?;
    if p <= MIN_BRANCH_PROBABILITY {
        return Err(Error::ZeroProbability(p));
    }
    let state = DensityMatrix::from_matrix_unchecked(unnormalized / crate::qcore::c(p, 0.0));
    let mut history = s.history.clone();
    history.push(ForcedOutcome { y, bit, probability: p });
    Ok(PostselectedState { state, history, cumulative: s.cumulative * p })
}

/// `round(p) = 1` iff `p ≥ 1/2`, with a tie flag for `|p − 1/2| ≤ TIE_TOL`.
pub fn round_probability(p: f64) -> (u8, bool) {
    let tie = (p - 0.5).abs() <= TIE_TOL;
    (u8::from(tie || p >= 0.5), tie)
}

/// `p1 / (p1 + p0)`.
pub fn postselection_ratio(p1: f64, p0: f64) -> Result<f64> {
    if p1 < 0.0 || p0 < 0.0 {
        return Err(Error::InvalidParameter(format!("negative probability ({p1}, {p0})")));
    }
    if p1 + p0 <= 0.0 {
        return Err(Error::ZeroProbability(0.0));
    }
    Ok(p1 / (p1 + p0))
}

/// `η ≤ 0.01 / (K + 1)²`: the per-pair error a boosted protocol must meet.
pub fn error_budget(k: usize) -> f64 {
    0.01 / ((k + 1) * (k + 1)) as f64
}

/// One visited `y` of the simulation loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationStep {
    pub y: usize,
    pub probability: f64,
    pub rounded: u8,
    pub value: u8,
    pub recorded: bool,
    pub tie: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulationTrace {
    pub advice: AdviceMessage,
    pub steps: Vec<SimulationStep>,
}

fn check_sizes(p: &QuantumOneWayProtocol, prob: &OneWayProblem, x: usize) -> Result<Vec<usize>> {
    p.check_matches(prob)?;
    if x >= prob.alice_inputs() {
        return Err(Error::IndexOutOfRange { index: x, dim: prob.alice_inputs() });
    }
    let domain = prob.domain_of(x);
    if domain.len() > MAX_DOMAIN {
        return Err(Error::SizeOverflow(format!("|D_x| = {}", domain.len())));
    }
    Ok(domain)
}

/// Walks `D_x` in increasing order from `I_0 = I / 2^K`, recording and
/// postselecting on every `y` where `round(P_y(I_t)) ≠ f(x, y)`.
pub fn trace_message(p: &QuantumOneWayProtocol, prob: &OneWayProblem, x: usize) -> Result<SimulationTrace> {
    let domain = check_sizes(p, prob, x)?;
    let k = p.qubits();
    let mut current = PostselectedState::maximally_mixed(k)?;
    let mut entries = Vec::new();
    let mut steps = Vec::with_capacity(domain.len());
    for y in domain {
        let value = u8::from(prob.value(x, y) == Some(true));
        let lambda = p.measurement(y)?;
        let probability = response_probability(current.state(), &lambda)?;
        let (rounded, tie) = round_probability(probability);
        let recorded = rounded != value;
        steps.push(SimulationStep { y, probability, rounded, value, recorded, tie });
        if recorded {
            if entries.len() == k {
                return Err(Error::InvalidState(format!(
                    "advice for x = {x} needs more than K = {k} entries; protocol error exceeds the budget"
                )));
            }
            entries.push(AdviceEntry { y, bit: value });
            current = postselect_labeled(&current, &lambda, value, Some(y))?;
        }
    }
    Ok(SimulationTrace { advice: AdviceMessage::new(k, entries)?, steps })
}

/// The advice Alice sends for input `x`.
pub fn simulate_message(p: &QuantumOneWayProtocol, prob: &OneWayProblem, x: usize) -> Result<AdviceMessage> {
    Ok(trace_message(p, prob, x)?.advice)
}

/// Bob's answer together with the quantities behind it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decision {
    pub bit: u8,
    /// `P_y(I_{t*})`, or `None` when `y` was itself recorded.
    pub probability: Option<f64>,
    /// Number of advice entries replayed.
    pub t_star: usize,
    pub tie: bool,
}

/// Returns the stored bit if `y` is recorded; otherwise replays the entries
/// with `y_t < y` from `I / 2^K` and rounds `P_y(I_{t*})`.
pub fn bob_decode_detailed(advice: &AdviceMessage, p: &QuantumOneWayProtocol, y: usize) -> Result<Decision> {
    if advice.k() != p.qubits() {
        return Err(Error::DimensionMismatch { expected: p.qubits(), found: advice.k() });
    }
    if let Some(e) = advice.entries().iter().find(|e| e.y == y) {
        return Ok(Decision { bit: e.bit, probability: None, t_star: 0, tie: false });
    }
    let mut current = PostselectedState::maximally_mixed(advice.k())?;
    let mut t_star = 0;
    for e in advice.entries().iter().take_while(|e| e.y < y) {
        current = postselect_labeled(&current, &p.measurement(e.y)?, e.bit, Some(e.y))?;
        t_star += 1;
    }
    let probability = response_probability(current.state(), &p.measurement(y)?)?;
    let (bit, tie) = round_probability(probability);
    Ok(Decision { bit, probability: Some(probability), t_star, tie })
}

pub fn bob_decode(advice: &AdviceMessage, p: &QuantumOneWayProtocol, y: usize) -> Result<u8> {
    Ok(bob_decode_detailed(advice, p, y)?.bit)
}

/// Damage to the true message along an unconditioned run over `D_x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DamageStep {
    pub y: usize,
    /// Probability of the wrong answer at this step.
    pub error: f64,
    /// `‖I_t − I_{t−1}‖_tr`.
    pub distance: f64,
    pub bound: f64,
}

/// Applies every `Λ[y]`, `y ∈ D_x`, to `ρ_x` non-selectively (outcome read,
/// ancillas uncomputed and discarded) and records the per-step trace
/// distance against `√(error)`.
pub fn honest_damage_trace(p: &QuantumOneWayProtocol, prob: &OneWayProblem, x: usize) -> Result<Vec<DamageStep>> {
    let domain = check_sizes(p, prob, x)?;
    let mut rho = p.message(x)?;
    let mut out = Vec::with_capacity(domain.len());
    for y in domain {
        let lambda = p.measurement(y)?;
        let wrong = usize::from(prob.value(x, y) != Some(true));
        let (p0, m0) = lambda.branch(&rho, 0)?;
        let (p1, m1) = lambda.branch(&rho, 1)?;
        let error = if wrong == 0 { p0 } else { p1 };
        let next = DensityMatrix::from_matrix_unchecked(m0 + m1);
        let distance = trace_distance(&next, &rho)?;
        out.push(DamageStep { y, error, distance, bound: error.sqrt() });
        rho = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::{basis_protocol, boost, equality, evaluate_protocol, hadamard_fingerprint_protocol};
    use crate::qcore::{max_abs_diff, random, PureState};

    #[test]
    fn response_probability_basics() {
        let accept = TwoOutcomeMeasurement::accept_all(2).unwrap();
        let mixed = DensityMatrix::maximally_mixed(1).unwrap();
        assert!((response_probability(&mixed, &accept).unwrap() - 1.0).abs() < 1e-12);
        let comp = TwoOutcomeMeasurement::computational(2, |i| i == 1).unwrap();
        assert!((response_probability(&mixed, &comp).unwrap() - 0.5).abs() < 1e-12);
        let mut rng = crate::rng::stream(11, 0);
        for _ in 0..100 {
            let rho = random::density_matrix(4, &mut rng);
            let m = random::measurement(4, 2, &mut rng);
            let out = crate::qcore::apply_measurement(&rho, &m).unwrap();
            assert!((response_probability(&rho, &m).unwrap() - out.p1).abs() < 1e-10);
        }
    }

    #[test]
    fn postselect_examples() {
        let comp = TwoOutcomeMeasurement::computational(2, |i| i == 1).unwrap();
        let s = PostselectedState::maximally_mixed(1).unwrap();
        let s1 = postselect_update(&s, &comp, 0).unwrap();
        let zero = PureState::basis(0, 2).unwrap().to_density();
        assert!(max_abs_diff(s1.state().matrix(), zero.matrix()) < 1e-12);
        assert!((s1.cumulative_probability() - 0.5).abs() < 1e-12);
        let s2 = postselect_update(&s1, &comp, 0).unwrap();
        assert!(max_abs_diff(s2.state().matrix(), zero.matrix()) < 1e-12);
        assert!((s2.cumulative_probability() - 0.5).abs() < 1e-12);
        assert!(matches!(postselect_update(&s1, &comp, 1), Err(Error::ZeroProbability(_))));
    }

    #[test]
    fn sequential_updates_compose() {
        let mut rng = crate::rng::stream(12, 0);
        for _ in 0..20 {
            let rho = random::density_matrix(3, &mut rng);
            let a = random::measurement(3, 1, &mut rng);
            let b = random::measurement(3, 2, &mut rng);
            let s = PostselectedState::new(rho.clone());
            let two = postselect_update(&postselect_update(&s, &a, 1).unwrap(), &b, 0).unwrap();
            let mut acc = crate::qcore::ComplexMatrix::zeros(3, 3);
            for ka in a.kraus(1) {
                for kb in b.kraus(0) {
                    let k = kb * ka;
                    acc += &k * rho.matrix() * k.adjoint();
                }
            }
            let p = acc.trace().re;
            assert!((two.cumulative_probability() - p).abs() < 1e-8);
            assert!(max_abs_diff(two.state().matrix(), &(acc / crate::qcore::c(p, 0.0))) < 1e-8);
        }
    }

    #[test]
    fn equality_one_walkthrough() {
        let prob = equality(1).unwrap();
        let p = basis_protocol(&prob).unwrap();
        let tr = trace_message(&p, &prob, 0).unwrap();
        assert!(tr.steps[0].tie && tr.steps[0].rounded == 1 && !tr.steps[0].recorded);
        assert_eq!(tr.advice.entries(), &[AdviceEntry { y: 1, bit: 0 }]);
        assert_eq!((tr.advice.len(), tr.advice.k()), (1, 1));
        let d = bob_decode_detailed(&tr.advice, &p, 0).unwrap();
        assert_eq!((d.bit, d.t_star), (1, 0));
        assert_eq!(bob_decode(&tr.advice, &p, 1).unwrap(), 0);
        let json = serde_json::to_string(&tr.advice).unwrap();
        assert_eq!(json, r#"{"K":1,"entries":[{"y":1,"bit":0}]}"#);
        let back: AdviceMessage = serde_json::from_str(&json).unwrap();
        assert_eq!(back, tr.advice);
        assert!(serde_json::from_str::<AdviceMessage>(r#"{"K":1,"entries":[{"y":1,"bit":0},{"y":0,"bit":1}]}"#).is_err());
    }

    #[test]
    fn singleton_domain_needs_no_advice() {
        let prob = OneWayProblem::new("one", 2, 2, false, |x, y| (y == 0).then_some(x == 0));
        let p = basis_protocol(&prob).unwrap();
        assert!(simulate_message(&p, &prob, 0).unwrap().is_empty());
    }

    #[test]
    fn fingerprint_sweep_and_ratio() {
        let prob = equality(3).unwrap();
        let p = hadamard_fingerprint_protocol(3).unwrap();
        for x in 0..8 {
            let advice = simulate_message(&p, &prob, x).unwrap();
            assert!(advice.len() <= advice.k());
            assert_eq!(advice, simulate_message(&p, &prob, x).unwrap());
            for y in prob.domain_of(x) {
                let d = bob_decode_detailed(&advice, &p, y).unwrap();
                assert_eq!(d.bit == 1, prob.value(x, y).unwrap());
                if let Some(p1) = d.probability {
                    let ratio = postselection_ratio(p1, 1.0 - p1).unwrap();
                    assert_eq!(ratio >= 0.5 - TIE_TOL, d.bit == 1);
                }
            }
        }
        assert_eq!(postselection_ratio(0.2, 0.2).unwrap(), 0.5);
        assert!((postselection_ratio(0.03, 0.01).unwrap() - 0.75).abs() < 1e-15);
        assert!(postselection_ratio(0.0, 0.0).is_err());
    }

    #[test]
    fn boosted_noisy_equality() {
        let prob = equality(1).unwrap();
        let noisy = basis_protocol(&prob).unwrap().with_decoder_noise(0.01).unwrap();
        let b = boost(&noisy, 3).unwrap();
        let eta = evaluate_protocol(&b, &prob).unwrap().worst_case_error;
        assert!(eta <= error_budget(b.qubits()));
        for x in 0..2 {
            let advice = simulate_message(&b, &prob, x).unwrap();
            assert!(advice.len() <= 3);
            for y in 0..2 {
                assert_eq!(bob_decode(&advice, &b, y).unwrap() == 1, x == y);
            }
            for step in honest_damage_trace(&b, &prob, x).unwrap() {
                assert!(step.error <= eta + 1e-12);
                assert!(step.distance <= step.bound + 1e-8);
            }
        }
    }
}
