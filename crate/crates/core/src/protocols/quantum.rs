use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::problem::OneWayProblem;
use crate::error::{Error, Result};
use crate::qcore::{self, c, majority_of, DensityMatrix, PureState, TwoOutcomeMeasurement};

pub const MAX_MESSAGE_QUBITS: usize = 10;

type Encoder = Arc<dyn Fn(usize) -> Result<DensityMatrix> + Send + Sync>;
type Decoder = Arc<dyn Fn(usize) -> Result<TwoOutcomeMeasurement> + Send + Sync>;

/// Alice maps `x` to an `L`-qubit state `ρ_x`; Bob applies `Λ[y]` and outputs
/// its bit.
#[derive(Clone)]
pub struct QuantumOneWayProtocol {
    name: String,
    qubits: usize,
    copies: usize,
    alice_inputs: usize,
    bob_inputs: usize,
    encoder: Encoder,
    decoder: Decoder,
}

impl fmt::Debug for QuantumOneWayProtocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuantumOneWayProtocol")
            .field("name", &self.name)
            .field("qubits", &self.qubits)
            .field("copies", &self.copies)
            .field("alice_inputs", &self.alice_inputs)
            .field("bob_inputs", &self.bob_inputs)
            .finish()
    }
}

impl QuantumOneWayProtocol {
    pub fn new(
        name: impl Into<String>,
        qubits: usize,
        alice_inputs: usize,
        bob_inputs: usize,
        encoder: impl Fn(usize) -> Result<DensityMatrix> + Send + Sync + 'static,
        decoder: impl Fn(usize) -> Result<TwoOutcomeMeasurement> + Send + Sync + 'static,
    ) -> Result<Self> {
        if qubits == 0 || qubits > MAX_MESSAGE_QUBITS {
            return Err(Error::QubitBudget { needed: qubits, limit: MAX_MESSAGE_QUBITS });
        }
        Ok(Self {
            name: name.into(),
            qubits,
            copies: 1,
            alice_inputs,
            bob_inputs,
            encoder: Arc::new(encoder),
            decoder: Arc::new(decoder),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `L`, the total message length in qubits.
    pub fn qubits(&self) -> usize {
        self.qubits
    }

    /// Number of copies `r` combined by [`boost`].
    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn message_dim(&self) -> usize {
        1 << self.qubits
    }

    pub fn alice_inputs(&self) -> usize {
        self.alice_inputs
    }

    pub fn bob_inputs(&self) -> usize {
        self.bob_inputs
    }

    /// `ρ_x`, checked to live on `L` qubits.
    pub fn message(&self, x: usize) -> Result<DensityMatrix> {
        if x >= self.alice_inputs {
            return Err(Error::IndexOutOfRange { index: x, dim: self.alice_inputs });
        }
        let rho = (self.encoder)(x)?;
        if rho.dim() != self.message_dim() {
            return Err(Error::DimensionMismatch { expected: self.message_dim(), found: rho.dim() });
        }
        Ok(rho)
    }

    /// `Λ[y]`.
    pub fn measurement(&self, y: usize) -> Result<TwoOutcomeMeasurement> {
        if y >= self.bob_inputs {
            return Err(Error::IndexOutOfRange { index: y, dim: self.bob_inputs });
        }
        let m = (self.decoder)(y)?;
        if m.system_dim() != self.message_dim() {
            return Err(Error::DimensionMismatch { expected: self.message_dim(), found: m.system_dim() });
        }
        Ok(m)
    }

    pub fn check_matches(&self, prob: &OneWayProblem) -> Result<()> {
        if prob.alice_inputs() != self.alice_inputs {
            return Err(Error::DimensionMismatch { expected: prob.alice_inputs(), found: self.alice_inputs });
        }
        if prob.bob_inputs() != self.bob_inputs {
            return Err(Error::DimensionMismatch { expected: prob.bob_inputs(), found: self.bob_inputs });
        }
        Ok(())
    }

    /// Same messages, decoder followed by an output flip with probability `p`.
    pub fn with_decoder_noise(&self, flip_probability: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&flip_probability) {
            return Err(Error::InvalidParameter(format!("flip probability {flip_probability}")));
        }
        let base = self.decoder.clone();
        let mut out = self.clone();
        out.name = format!("{}+flip({flip_probability})", self.name);
        out.decoder = Arc::new(move |y| base(y)?.with_output_flip(flip_probability));
        Ok(out)
    }
}

/// Error probabilities `Pr[output ≠ f(x, y)]`, `None` off the domain.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorMatrix {
    pub entries: Vec<Vec<Option<f64>>>,
    pub worst_case_error: f64,
}

pub fn evaluate_protocol(p: &QuantumOneWayProtocol, prob: &OneWayProblem) -> Result<ErrorMatrix> {
    p.check_matches(prob)?;
    let messages: Vec<DensityMatrix> = (0..p.alice_inputs).into_par_iter().map(|x| p.message(x)).collect::<Result<_>>()?;
    let columns: Vec<Vec<Option<f64>>> = (0..p.bob_inputs)
        .into_par_iter()
        .map(|y| {
            let lambda = p.measurement(y)?;
            (0..p.alice_inputs)
                .map(|x| match prob.value(x, y) {
                    None => Ok(None),
                    Some(fx) => lambda.probability(&messages[x], usize::from(!fx)).map(Some),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let entries: Vec<Vec<Option<f64>>> =
        (0..p.alice_inputs).map(|x| columns.iter().map(|col| col[x]).collect()).collect();
    let worst_case_error = entries.iter().flatten().flatten().fold(0.0f64, |a, &e| a.max(e));
    Ok(ErrorMatrix { entries, worst_case_error })
}

/// Sends `ρ_x^{⊗r}` and decodes by a coherent majority of the `r` copies.
pub fn boost(p: &QuantumOneWayProtocol, r: usize) -> Result<QuantumOneWayProtocol> {
    if r == 0 || r % 2 == 0 {
        return Err(Error::InvalidParameter(format!("r = {r} must be odd")));
    }
    if r == 1 {
        return Ok(p.clone());
    }
    let needed = p.qubits * r;
    if needed > MAX_MESSAGE_QUBITS {
        return Err(Error::QubitBudget { needed, limit: MAX_MESSAGE_QUBITS });
    }
    let (enc, dec) = (p.encoder.clone(), p.decoder.clone());
    Ok(QuantumOneWayProtocol {
        name: format!("{}^{r}", p.name),
        qubits: needed,
        copies: p.copies * r,
        alice_inputs: p.alice_inputs,
        bob_inputs: p.bob_inputs,
        encoder: Arc::new(move |x| enc(x)?.tensor_power(r)),
        decoder: Arc::new(move |y| majority_of(vec![dec(y)?; r])),
    })
}

/// `Pr[Binomial(r, e) > r/2]`.
pub fn majority_error(e: f64, r: usize) -> f64 {
    let mut total = 0.0;
    let mut binom = 1.0;
    for k in 0..=r {
        if 2 * k > r {
            total += binom * e.powi(k as i32) * (1.0 - e).powi((r - k) as i32);
        }
        binom = binom * (r - k) as f64 / (k + 1) as f64;
    }
    total
}

fn qubits_for(count: usize) -> usize {
    (count.next_power_of_two().trailing_zeros() as usize).max(1)
}

/// Alice sends `|x⟩`; `Λ[y]` projects onto `{x' : f(x', y) = 1}`. Error 0 on
/// the domain of `f`.
pub fn basis_protocol(prob: &OneWayProblem) -> Result<QuantumOneWayProtocol> {
    let qubits = qubits_for(prob.alice_inputs());
    if qubits > MAX_MESSAGE_QUBITS {
        return Err(Error::QubitBudget { needed: qubits, limit: MAX_MESSAGE_QUBITS });
    }
    let dim = 1 << qubits;
    let prob2 = prob.clone();
    QuantumOneWayProtocol::new(
        format!("basis[{}]", prob.id()),
        qubits,
        prob.alice_inputs(),
        prob.bob_inputs(),
        move |x| Ok(PureState::basis(x, dim)?.to_density()),
        move |y| TwoOutcomeMeasurement::computational(dim, |x| prob2.value(x, y) == Some(true)),
    )
}

/// Basis protocol for the coset problem over `F_p²`, `p ∈ {2, 3, 5, 7}`.
pub fn coset_basis_protocol(p: usize) -> Result<QuantumOneWayProtocol> {
    if ![2, 3, 5, 7].contains(&p) {
        return Err(Error::InvalidParameter(format!("coset basis protocol supports p ∈ {{2,3,5,7}}, got {p}")));
    }
    basis_protocol(&super::problem::coset(p)?)
}

/// Equality by Hadamard-code fingerprints `2^{-n/2} Σ_j (−1)^{x·j} |j⟩`;
/// Bob projects onto his own fingerprint.
pub fn hadamard_fingerprint_protocol(n: usize) -> Result<QuantumOneWayProtocol> {
    if n == 0 || n > MAX_MESSAGE_QUBITS {
        return Err(Error::QubitBudget { needed: n, limit: MAX_MESSAGE_QUBITS });
    }
    let dim = 1usize << n;
    let fingerprint = move |x: usize| {
        let amp = 1.0 / (dim as f64).sqrt();
        let v = qcore::ComplexVector::from_fn(dim, |j, _| {
            let sign = if (x & j).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            c(sign * amp, 0.0)
        });
        PureState::normalized(v)
    };
    QuantumOneWayProtocol::new(
        format!("fingerprint[eq:{n}]"),
        n,
        dim,
        dim,
        move |x| Ok(fingerprint(x)?.to_density()),
        move |y| {
            let psi = fingerprint(y)?;
            let proj = psi.amplitudes() * psi.amplitudes().adjoint();
            TwoOutcomeMeasurement::projective(&proj)
        },
    )
}

/// Output a uniformly random bit regardless of the message.
pub fn random_bit_protocol(prob: &OneWayProblem) -> Result<QuantumOneWayProtocol> {
    let qubits = qubits_for(prob.alice_inputs());
    let dim = 1 << qubits;
    QuantumOneWayProtocol::new(
        "random-bit",
        qubits,
        prob.alice_inputs(),
        prob.bob_inputs(),
        move |_| DensityMatrix::maximally_mixed_dim(dim),
        move |_| TwoOutcomeMeasurement::random_bit(dim),
    )
}

/// Random mixed messages and random dilated measurements, fixed at
/// construction.
pub fn random_protocol<R: Rng + ?Sized>(
    alice_inputs: usize,
    bob_inputs: usize,
    qubits: usize,
    ancilla_qubits: usize,
    rng: &mut R,
) -> Result<QuantumOneWayProtocol> {
    let dim = 1 << qubits;
    let states: Vec<DensityMatrix> = (0..alice_inputs).map(|_| qcore::random::density_matrix(dim, rng)).collect();
    let meas: Vec<TwoOutcomeMeasurement> =
        (0..bob_inputs).map(|_| qcore::random::measurement(dim, ancilla_qubits, rng)).collect();
    QuantumOneWayProtocol::new(
        "random",
        qubits,
        alice_inputs,
        bob_inputs,
        move |x| Ok(states[x].clone()),
        move |y| Ok(meas[y].clone()),
    )
}
