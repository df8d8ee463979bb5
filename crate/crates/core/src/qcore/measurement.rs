use super::{c, unitarity_defect, ComplexMatrix, DensityMatrix, C64, INVARIANT_TOL, MAX_DIM};
use crate::error::{Error, Result};

/// A unitary on `system ⊗ ancilla` (ancilla starts in `|0…0⟩`) followed by a
/// computational-basis readout of one ancilla qubit. Ancilla qubit `q` is bit
/// `ancilla_qubits - 1 - q` of the ancilla index (qubit 0 most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct Dilation {
    unitary: ComplexMatrix,
    ancilla_qubits: usize,
    output_qubit: usize,
}

impl Dilation {
    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn ancilla_qubits(&self) -> usize {
        self.ancilla_qubits
    }

    pub fn output_qubit(&self) -> usize {
        self.output_qubit
    }

    pub fn ancilla_dim(&self) -> usize {
        1 << self.ancilla_qubits
    }

    /// Value of the output qubit within ancilla basis index `anc`.
    pub fn output_bit(&self, anc: usize) -> usize {
        (anc >> (self.ancilla_qubits - 1 - self.output_qubit)) & 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Realization {
    Dilation(Dilation),
    /// Coherent majority vote over parts acting on consecutive tensor
    /// factors of the system.
    Majority(Vec<TwoOutcomeMeasurement>),
}

/// Bob's two-outcome measurement `Λ`. Besides the dilation form it caches the
/// uncomputed Kraus operators `⟨j| U† P_b U |0⟩` for each ancilla basis state
/// `j`, index-aligned across the two outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoOutcomeMeasurement {
    system_dim: usize,
    realization: Realization,
    kraus: [Vec<ComplexMatrix>; 2],
    effects: [ComplexMatrix; 2],
}

/// Result of [`apply_measurement`]. Post-states are `None` for outcomes of
/// probability zero.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    pub p0: f64,
    pub p1: f64,
    pub post0: Option<DensityMatrix>,
    pub post1: Option<DensityMatrix>,
}

impl MeasurementOutcome {
    pub fn probability(&self, bit: usize) -> f64 {
        if bit == 0 {
            self.p0
        } else {
            self.p1
        }
    }

    pub fn post(&self, bit: usize) -> Option<&DensityMatrix> {
        if bit == 0 {
            self.post0.as_ref()
        } else {
            self.post1.as_ref()
        }
    }
}

fn effects_from(kraus: &[Vec<ComplexMatrix>; 2], dim: usize) -> [ComplexMatrix; 2] {
    let eff = |ks: &Vec<ComplexMatrix>| {
        ks.iter().fold(ComplexMatrix::zeros(dim, dim), |acc, k| acc + k.adjoint() * k)
    };
    [eff(&kraus[0]), eff(&kraus[1])]
}

fn is_zero(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.norm_sqr() < 1e-30)
}

impl TwoOutcomeMeasurement {
    pub fn from_dilation(
        system_dim: usize,
        unitary: ComplexMatrix,
        ancilla_qubits: usize,
        output_qubit: usize,
    ) -> Result<Self> {
        if ancilla_qubits == 0 || output_qubit >= ancilla_qubits {
            return Err(Error::InvalidParameter(format!(
                "output qubit {output_qubit} is not one of {ancilla_qubits} ancilla qubits"
            )));
        }
        let total = system_dim << ancilla_qubits;
        if unitary.nrows() != total || unitary.ncols() != total {
            return Err(Error::DimensionMismatch { expected: total, found: unitary.nrows() });
        }
        let defect = unitarity_defect(&unitary);
        if defect > INVARIANT_TOL {
            return Err(Error::NotUnitary(defect));
        }
        let dilation = Dilation { unitary, ancilla_qubits, output_qubit };
        let kraus = dilation_kraus(system_dim, &dilation);
        let effects = effects_from(&kraus, system_dim);
        Ok(Self { system_dim, realization: Realization::Dilation(dilation), kraus, effects })
    }

    /// Projective measurement with outcome 1 on the range of `accept`,
    /// dilated as `Π ⊗ X + (I − Π) ⊗ I` on one ancilla qubit.
    pub fn projective(accept: &ComplexMatrix) -> Result<Self> {
        let d = accept.nrows();
        if !accept.is_square() {
            return Err(Error::InvalidParameter("projector must be square".into()));
        }
        let idem = super::max_abs_diff(&(accept * accept), accept);
        let herm = super::max_abs_diff(&accept.adjoint(), accept);
        if idem > INVARIANT_TOL || herm > INVARIANT_TOL {
            return Err(Error::InvalidParameter("accept operator is not a projector".into()));
        }
        let x = ComplexMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let id2 = ComplexMatrix::identity(2, 2);
        let rest = ComplexMatrix::identity(d, d) - accept;
        let u = accept.kronecker(&x) + rest.kronecker(&id2);
        Self::from_dilation(d, u, 1, 0)
    }

    /// Accepts exactly the computational basis states selected by `accept`.
    pub fn computational(dim: usize, accept: impl Fn(usize) -> bool) -> Result<Self> {
        let proj = ComplexMatrix::from_fn(dim, dim, |i, j| {
            if i == j && accept(i) {
                c(1.0, 0.0)
            } else {
                c(0.0, 0.0)
            }
        });
        Self::projective(&proj)
    }

    /// Outcome 1 with certainty.
    pub fn accept_all(dim: usize) -> Result<Self> {
        Self::computational(dim, |_| true)
    }

    /// Outcome 0 with certainty.
    pub fn reject_all(dim: usize) -> Result<Self> {
        Self::computational(dim, |_| false)
    }

    /// Ignores the system and outputs a uniformly random bit (Hadamard on the
    /// output ancilla).
    pub fn random_bit(dim: usize) -> Result<Self> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let had = ComplexMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]);
        Self::from_dilation(dim, ComplexMatrix::identity(dim, dim).kronecker(&had), 1, 0)
    }

    /// Follows the dilation with a rotation of the output qubit that flips it
    /// with probability `flip_probability`.
    pub fn with_output_flip(&self, flip_probability: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&flip_probability) {
            return Err(Error::InvalidParameter(format!("flip probability {flip_probability}")));
        }
        let dil = self.dilation();
        let (s, co) = (flip_probability.sqrt(), (1.0 - flip_probability).sqrt());
        let rot = ComplexMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)]);
        let a = dil.ancilla_qubits;
        let q = dil.output_qubit;
        let before = ComplexMatrix::identity(self.system_dim << q, self.system_dim << q);
        let after_dim = 1usize << (a - 1 - q);
        let op = before.kronecker(&rot).kronecker(&ComplexMatrix::identity(after_dim, after_dim));
        Self::from_dilation(self.system_dim, op * &dil.unitary, a, q)
    }

    pub fn system_dim(&self) -> usize {
        self.system_dim
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    /// Total ancilla qubits of the dilation form.
    pub fn ancilla_qubits(&self) -> usize {
        match &self.realization {
            Realization::Dilation(d) => d.ancilla_qubits,
            Realization::Majority(parts) => parts.iter().map(|p| p.ancilla_qubits()).sum::<usize>() + 1,
        }
    }

    /// Uncomputed Kraus operators for outcome `bit`.
    pub fn kraus(&self, bit: usize) -> &[ComplexMatrix] {
        &self.kraus[bit]
    }

    /// POVM element `E_b = Σ_j K_{b,j}† K_{b,j}`.
    pub fn effect(&self, bit: usize) -> &ComplexMatrix {
        &self.effects[bit]
    }

    /// Dilation form. Majority votes are materialized with layout
    /// `systems ⊗ part ancillas ⊗ vote qubit`; the vote qubit is the output.
    pub fn dilation(&self) -> Dilation {
        match &self.realization {
            Realization::Dilation(d) => d.clone(),
            Realization::Majority(parts) => materialize_majority(parts),
        }
    }

    /// Probability of outcome `bit` and the unnormalized post-state
    /// `Σ_j K ρ K†` of that branch.
    pub fn branch(&self, rho: &DensityMatrix, bit: usize) -> Result<(f64, ComplexMatrix)> {
        self.check_dim(rho)?;
        let m = rho.matrix();
        let mut acc = ComplexMatrix::zeros(self.system_dim, self.system_dim);
        for k in &self.kraus[bit] {
            acc += k * m * k.adjoint();
        }
        let p = acc.trace().re.max(0.0);
        Ok((p, acc))
    }

    /// Outcome-`bit` probability, `Re Tr(E_b ρ)`.
    pub fn probability(&self, rho: &DensityMatrix, bit: usize) -> Result<f64> {
        self.check_dim(rho)?;
        let e = &self.effects[bit];
        let m = rho.matrix();
        let mut p = 0.0;
        for i in 0..self.system_dim {
            for j in 0..self.system_dim {
                p += (e[(i, j)] * m[(j, i)]).re;
            }
        }
        Ok(p.clamp(0.0, 1.0))
    }

    fn check_dim(&self, rho: &DensityMatrix) -> Result<()> {
        if rho.dim() != self.system_dim {
            return Err(Error::DimensionMismatch { expected: self.system_dim, found: rho.dim() });
        }
        Ok(())
    }
}

/// `⟨j| U† P_b U |0⟩` for every ancilla basis state `j`.
fn dilation_kraus(system_dim: usize, dil: &Dilation) -> [Vec<ComplexMatrix>; 2] {
    let a = dil.ancilla_dim();
    let total = system_dim * a;
    let u = &dil.unitary;
    let v = ComplexMatrix::from_fn(total, system_dim, |row, s| u[(row, s * a)]);
    let mut out: [Vec<ComplexMatrix>; 2] = [Vec::with_capacity(a), Vec::with_capacity(a)];
    for (bit, slot) in out.iter_mut().enumerate() {
        let mut w = v.clone();
        for row in 0..total {
            if dil.output_bit(row % a) != bit {
                w.row_mut(row).fill(c(0.0, 0.0));
            }
        }
        let x = u.adjoint() * w;
        for j in 0..a {
            slot.push(ComplexMatrix::from_fn(system_dim, system_dim, |s2, s| x[(s2 * a + j, s)]));
        }
    }
    out
}

fn majority(bits: usize, count: usize) -> usize {
    usize::from(bits.count_ones() as usize * 2 > count)
}

/// Coherent majority vote of an odd number of measurements acting on
/// consecutive tensor factors.
pub fn majority_of(parts: Vec<TwoOutcomeMeasurement>) -> Result<TwoOutcomeMeasurement> {
    let r = parts.len();
    if r == 0 || r % 2 == 0 {
        return Err(Error::InvalidParameter(format!("majority needs an odd number of parts, got {r}")));
    }
    if r == 1 {
        return Ok(parts.into_iter().next().unwrap());
    }
    let system_dim = parts.iter().try_fold(1usize, |acc, p| {
        let d = acc * p.system_dim;
        (d <= MAX_DIM).then_some(d)
    });
    let system_dim = system_dim.ok_or(Error::DimensionTooLarge(MAX_DIM + 1))?;
    let counts: Vec<usize> = parts.iter().map(|p| p.kraus[0].len()).collect();
    let combos: usize = counts.iter().product();

    let mut kraus: [Vec<ComplexMatrix>; 2] = [Vec::with_capacity(combos), Vec::with_capacity(combos)];
    let mut js = vec![0usize; r];
    for _ in 0..combos {
        let mut acc = [
            ComplexMatrix::zeros(system_dim, system_dim),
            ComplexMatrix::zeros(system_dim, system_dim),
        ];
        for s in 0..(1usize << r) {
            // bit i of s (most significant first) is the outcome of part i
            let factors: Vec<&ComplexMatrix> =
                (0..r).map(|i| &parts[i].kraus[(s >> (r - 1 - i)) & 1][js[i]]).collect();
            if factors.iter().any(|f| is_zero(f)) {
                continue;
            }
            let mut term = factors[0].clone();
            for f in &factors[1..] {
                term = term.kronecker(*f);
            }
            acc[majority(s, r)] += term;
        }
        let [k0, k1] = acc;
        kraus[0].push(k0);
        kraus[1].push(k1);
        // advance the mixed-radix counter, last part fastest
        for i in (0..r).rev() {
            js[i] += 1;
            if js[i] < counts[i] {
                break;
            }
            js[i] = 0;
        }
    }
    let effects = effects_from(&kraus, system_dim);
    Ok(TwoOutcomeMeasurement { system_dim, realization: Realization::Majority(parts), kraus, effects })
}

fn materialize_majority(parts: &[TwoOutcomeMeasurement]) -> Dilation {
    let dils: Vec<Dilation> = parts.iter().map(|p| p.dilation()).collect();
    let r = dils.len();
    let sys: Vec<usize> = parts.iter().map(|p| p.system_dim).collect();
    let anc: Vec<usize> = dils.iter().map(|d| d.ancilla_dim()).collect();
    let sys_total: usize = sys.iter().product();
    let anc_total: usize = anc.iter().product();
    let anc_qubits: usize = dils.iter().map(|d| d.ancilla_qubits).sum::<usize>() + 1;

    // interleaved (s_1 a_1 s_2 a_2 …) kronecker product of the part unitaries
    let mut kron = ComplexMatrix::identity(1, 1);
    for d in &dils {
        kron = kron.kronecker(&d.unitary);
    }
    let block: Vec<usize> = (0..r).map(|i| sys[i] * anc[i]).collect();
    // interleaved index -> (system index, ancilla index, vote bit)
    let split = |mut idx: usize| -> (usize, usize, usize) {
        let mut digits = vec![(0usize, 0usize); r];
        for i in (0..r).rev() {
            let local = idx % block[i];
            idx /= block[i];
            digits[i] = (local / anc[i], local % anc[i]);
        }
        let s = digits.iter().zip(&sys).fold(0, |acc, ((x, _), d)| acc * d + x);
        let a = digits.iter().zip(&anc).fold(0, |acc, ((_, y), d)| acc * d + y);
        let votes = digits
            .iter()
            .zip(&dils)
            .fold(0, |acc, ((_, y), d)| (acc << 1) | d.output_bit(*y));
        (s, a, majority(votes, r))
    };
    let n = sys_total * anc_total;
    let total = n * 2;
    let mut u = ComplexMatrix::zeros(total, total);
    let grouped = |s: usize, a: usize| (s * anc_total + a) * 2;
    let cols: Vec<(usize, usize, usize)> = (0..n).map(split).collect();
    for (ci, &(cs, ca, _)) in cols.iter().enumerate() {
        for (ri, &(rs, ra, vote)) in cols.iter().enumerate() {
            let amp: C64 = kron[(ri, ci)];
            if amp.norm_sqr() == 0.0 {
                continue;
            }
            for o in 0..2 {
                u[(grouped(rs, ra) + (o ^ vote), grouped(cs, ca) + o)] = amp;
            }
        }
    }
    Dilation { unitary: u, ancilla_qubits: anc_qubits, output_qubit: anc_qubits - 1 }
}

/// Applies `Λ` to `ρ`. Post-measurement states are taken after the dilation
/// is uncomputed and the ancillas are traced out.
pub fn apply_measurement(rho: &DensityMatrix, m: &TwoOutcomeMeasurement) -> Result<MeasurementOutcome> {
    let (p0, b0) = m.branch(rho, 0)?;
    let (p1, b1) = m.branch(rho, 1)?;
    let post = |p: f64, b: ComplexMatrix| {
        (p > 1e-15).then(|| DensityMatrix::from_matrix_unchecked(b.unscale(p)))
    };
    Ok(MeasurementOutcome { p0, p1, post0: post(p0, b0), post1: post(p1, b1) })
}
