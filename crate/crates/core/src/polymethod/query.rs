use std::f64::consts::PI;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exact::{qi, rationalize, to_f64, Q};
use crate::qcore::{self, c, ComplexMatrix, ComplexVector, C64};

pub const MAX_ORACLE_LENGTH: usize = 16;
pub const MAX_WORKSPACE_QUBITS: usize = 4;
pub const DEGREE_TOL: f64 = 1e-9;
const RATIONAL_DEN: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Oracle {
    /// `|i, w⟩ ↦ (−1)^{X_i} |i, w⟩`
    Phase,
    /// `|i, w⟩ ↦ |i, w ⊕ X_i e_q⟩`
    Bit { qubit: usize },
}

/// Dense unitary given as row-major real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixSpec {
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Vec<Vec<f64>>,
}

impl MatrixSpec {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let rows = |f: fn(&C64) -> f64| (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect()).collect();
        MatrixSpec { re: rows(|z| z.re), im: rows(|z| z.im) }
    }

    fn to_matrix(&self, dim: usize) -> Result<ComplexMatrix> {
        if self.re.len() != dim || self.re.iter().any(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: self.re.len() });
        }
        if !self.im.is_empty() && (self.im.len() != dim || self.im.iter().any(|r| r.len() != dim)) {
            return Err(Error::DimensionMismatch { expected: dim, found: self.im.len() });
        }
        Ok(ComplexMatrix::from_fn(dim, dim, |i, j| {
            c(self.re[i][j], self.im.get(i).map_or(0.0, |r| r[j]))
        }))
    }
}

/// One step of a query algorithm. Workspace qubit 0 is the most significant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Stage {
    /// Fourier transform on the index register.
    Dft,
    InverseDft,
    /// `2|s⟩⟨s| − I` on the index register, `s` uniform.
    Diffusion,
    /// `I − 2|t⟩⟨t|` on the index register.
    Reflect { index: usize },
    Hadamard { qubit: usize },
    X { qubit: usize },
    /// Basis permutation of the whole space, `|k⟩ ↦ |perm[k]⟩`.
    Permutation { perm: Vec<usize> },
    Unitary { matrix: MatrixSpec },
    Query { oracle: Oracle },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Accept {
    All,
    Never,
    WorkspaceBit { qubit: usize },
    WorkspaceParity { qubits: Vec<usize> },
    WorkspaceAny { qubits: Vec<usize> },
    IndexIn { indices: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryAlgorithm {
    pub name: String,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default)]
    pub workspace_qubits: usize,
    pub stages: Vec<Stage>,
    pub accept: Accept,
}

enum Compiled {
    Dft(bool),
    Diffusion,
    Reflect(usize),
    Hadamard(usize),
    X(usize),
    Permutation(Vec<usize>),
    Unitary(ComplexMatrix),
    Phase,
    Bit(usize),
}

impl QueryAlgorithm {
    pub fn new(name: &str, n: usize, workspace_qubits: usize, stages: Vec<Stage>, accept: Accept) -> Result<Self> {
        let alg = QueryAlgorithm { name: name.into(), n, workspace_qubits, stages, accept };
        alg.compile()?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.n << self.workspace_qubits
    }

    pub fn queries(&self) -> usize {
        self.stages.iter().filter(|s| matches!(s, Stage::Query { .. })).count()
    }

    fn qubit(&self, q: usize) -> Result<usize> {
        if q >= self.workspace_qubits {
            return Err(Error::IndexOutOfRange { index: q, dim: self.workspace_qubits });
        }
        Ok(self.workspace_qubits - 1 - q)
    }

    fn compile(&self) -> Result<Vec<Compiled>> {
        if self.n == 0 || self.n > MAX_ORACLE_LENGTH {
            return Err(Error::DimensionTooLarge(self.n));
        }
        if self.workspace_qubits > MAX_WORKSPACE_QUBITS {
            return Err(Error::DimensionTooLarge(self.workspace_qubits));
        }
        let dim = self.dim();
        match &self.accept {
            Accept::WorkspaceBit { qubit } => {
                self.qubit(*qubit)?;
            }
            Accept::WorkspaceParity { qubits } | Accept::WorkspaceAny { qubits } => {
                for q in qubits {
                    self.qubit(*q)?;
                }
            }
            Accept::IndexIn { indices } => {
                if let Some(&i) = indices.iter().find(|&&i| i >= self.n) {
                    return Err(Error::IndexOutOfRange { index: i, dim: self.n });
                }
            }
            Accept::All | Accept::Never => {}
        }
        self.stages
            .iter()
            .map(|s| {
                Ok(match s {
                    Stage::Dft => Compiled::Dft(false),
                    Stage::InverseDft => Compiled::Dft(true),
                    Stage::Diffusion => Compiled::Diffusion,
                    Stage::Reflect { index } => {
                        if *index >= self.n {
                            return Err(Error::IndexOutOfRange { index: *index, dim: self.n });
                        }
                        Compiled::Reflect(*index)
                    }
                    Stage::Hadamard { qubit } => Compiled::Hadamard(self.qubit(*qubit)?),
                    Stage::X { qubit } => Compiled::X(self.qubit(*qubit)?),
                    Stage::Permutation { perm } => {
                        let mut seen = vec![false; dim];
                        if perm.len() != dim {
                            return Err(Error::DimensionMismatch { expected: dim, found: perm.len() });
                        }
                        for &p in perm {
                            if p >= dim || std::mem::replace(&mut seen[p], true) {
                                return Err(Error::InvalidParameter("permutation is not a bijection".into()));
                            }
                        }
                        Compiled::Permutation(perm.clone())
                    }
                    Stage::Unitary { matrix } => {
                        let u = matrix.to_matrix(dim)?;
                        let defect = qcore::unitarity_defect(&u);
                        if defect > qcore::INVARIANT_TOL {
                            return Err(Error::NotUnitary(defect));
                        }
                        Compiled::Unitary(u)
                    }
                    Stage::Query { oracle: Oracle::Phase } => Compiled::Phase,
                    Stage::Query { oracle: Oracle::Bit { qubit } } => Compiled::Bit(self.qubit(*qubit)?),
                })
            })
            .collect()
    }

    fn accepts(&self, k: usize) -> bool {
        let w = self.workspace_qubits;
        let (index, ws) = (k >> w, k & ((1 << w) - 1));
        let bit = |q: usize| (ws >> (w - 1 - q)) & 1 == 1;
        match &self.accept {
            Accept::All => true,
            Accept::Never => false,
            Accept::WorkspaceBit { qubit } => bit(*qubit),
            Accept::WorkspaceParity { qubits } => qubits.iter().filter(|&&q| bit(q)).count() % 2 == 1,
            Accept::WorkspaceAny { qubits } => qubits.iter().any(|&q| bit(q)),
            Accept::IndexIn { indices } => indices.contains(&index),
        }
    }

    /// `A(X)`, the acceptance probability on input `X` (bit `i` of `x` is
    /// `X_i`).
    pub fn acceptance(&self, x: u32) -> Result<f64> {
        let compiled = self.compile()?;
        Ok(self.run(&compiled, x))
    }

    fn run(&self, compiled: &[Compiled], x: u32) -> f64 {
        let w = self.workspace_qubits;
        let (n, ws) = (self.n, 1usize << w);
        let dim = self.dim();
        let mut v = ComplexVector::zeros(dim);
        v[0] = c(1.0, 0.0);
        let xi = |i: usize| (x >> i) & 1 == 1;
        for st in compiled {
            match st {
                Compiled::Dft(inverse) => {
                    let sign = if *inverse { -1.0 } else { 1.0 };
                    let norm = 1.0 / (n as f64).sqrt();
                    let mut out = ComplexVector::zeros(dim);
                    for j in 0..n {
                        for k in 0..n {
                            let ph = C64::from_polar(norm, sign * 2.0 * PI * ((j * k) % n) as f64 / n as f64);
                            for b in 0..ws {
                                out[k * ws + b] += ph * v[j * ws + b];
                            }
                        }
                    }
                    v = out;
                }
                Compiled::Diffusion => {
                    for b in 0..ws {
                        let mean = (0..n).map(|i| v[i * ws + b]).sum::<C64>() / n as f64;
                        for i in 0..n {
                            v[i * ws + b] = mean * 2.0 - v[i * ws + b];
                        }
                    }
                }
                Compiled::Reflect(t) => {
                    for b in 0..ws {
                        v[t * ws + b] = -v[t * ws + b];
                    }
                }
                Compiled::Hadamard(shift) => {
                    let h = std::f64::consts::FRAC_1_SQRT_2;
                    for k in 0..dim {
                        if k >> shift & 1 == 0 {
                            let k1 = k | 1 << shift;
                            let (a, b) = (v[k], v[k1]);
                            v[k] = (a + b) * h;
                            v[k1] = (a - b) * h;
                        }
                    }
                }
                Compiled::X(shift) => {
                    for k in 0..dim {
                        if k >> shift & 1 == 0 {
                            v.swap_rows(k, k | 1 << shift);
                        }
                    }
                }
                Compiled::Permutation(perm) => {
                    let mut out = ComplexVector::zeros(dim);
                    for (k, &p) in perm.iter().enumerate() {
                        out[p] = v[k];
                    }
                    v = out;
                }
                Compiled::Unitary(u) => v = u * &v,
                Compiled::Phase => {
                    for i in (0..n).filter(|&i| xi(i)) {
                        for b in 0..ws {
                            v[i * ws + b] = -v[i * ws + b];
                        }
                    }
                }
                Compiled::Bit(shift) => {
                    for i in (0..n).filter(|&i| xi(i)) {
                        for b in (0..ws).filter(|b| b >> shift & 1 == 0) {
                            v.swap_rows(i * ws + b, i * ws + (b | 1 << shift));
                        }
                    }
                }
            }
        }
        (0..dim).filter(|&k| self.accepts(k)).map(|k| v[k].norm_sqr()).sum()
    }

    /// Average of `A(X)` over all `X` of each Hamming weight `0..=N`.
    pub fn weight_averages(&self) -> Result<Vec<f64>> {
        let compiled = self.compile()?;
        let n = self.n;
        let sums = (0u32..1 << n)
            .into_par_iter()
            .fold(
                || vec![0.0; n + 1],
                |mut acc, x| {
                    acc[x.count_ones() as usize] += self.run(&compiled, x);
                    acc
                },
            )
            .reduce(|| vec![0.0; n + 1], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
        Ok(sums.iter().enumerate().map(|(i, s)| s / binomial(n, i)).collect())
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `p(i) = E_{|X| = i}[A(X)]` interpolated through `i = 0..=N`, with trailing
/// coefficients below `1e−9` dropped. Fails if the result has degree above
/// `2T`.
pub fn acceptance_polynomial(alg: &QueryAlgorithm) -> Result<Poly> {
    let avgs = alg.weight_averages()?;
    let xs: Vec<Q> = (0..=alg.n).map(|i| qi(i as i64)).collect();
    let ys: Vec<Q> = avgs.iter().map(|&a| rationalize(a, RATIONAL_DEN)).collect();
    let p = Poly::interpolate(&xs, &ys).truncate_small(DEGREE_TOL);
    let t = alg.queries();
    if p.degree().unwrap_or(0) > 2 * t {
        return Err(Error::Precondition(format!(
            "{}: acceptance polynomial has degree {:?} > 2T = {}",
            alg.name,
            p.degree(),
            2 * t
        )));
    }
    if let Some(i) = xs.iter().map(|x| to_f64(&p.eval(x))).position(|v| !(-1e-9..=1.0 + 1e-9).contains(&v)) {
        return Err(Error::InvalidState(format!("{}: p({i}) outside [0, 1]", alg.name)));
    }
    Ok(p)
}

pub mod library {
    use super::*;

    pub fn always_accept(n: usize) -> QueryAlgorithm {
        QueryAlgorithm::new("always-accept", n, 0, vec![], Accept::All).expect("valid")
    }

    pub fn never_accept(n: usize) -> QueryAlgorithm {
        QueryAlgorithm::new("never-accept", n, 0, vec![], Accept::Never).expect("valid")
    }

    fn move_index(n: usize, ws: usize, to: usize) -> Stage {
        let perm = (0..n << ws)
            .map(|k| {
                let (i, b) = (k >> ws, k & ((1 << ws) - 1));
                let j = if i == 0 { to } else if i == to { 0 } else { i };
                j << ws | b
            })
            .collect();
        Stage::Permutation { perm }
    }

    /// Reads `X_pos` into a workspace bit and accepts iff it is 1.
    pub fn read_bit(n: usize, pos: usize) -> Result<QueryAlgorithm> {
        QueryAlgorithm::new(
            "read-bit",
            n,
            1,
            vec![move_index(n, 1, pos), Stage::Query { oracle: Oracle::Bit { qubit: 0 } }],
            Accept::WorkspaceBit { qubit: 0 },
        )
    }

    fn read_two(name: &str, n: usize, a: usize, b: usize, accept: Accept) -> Result<QueryAlgorithm> {
        QueryAlgorithm::new(
            name,
            n,
            2,
            vec![
                move_index(n, 2, a),
                Stage::Query { oracle: Oracle::Bit { qubit: 0 } },
                move_index(n, 2, a),
                move_index(n, 2, b),
                Stage::Query { oracle: Oracle::Bit { qubit: 1 } },
            ],
            accept,
        )
    }

    pub fn xor_of_two(n: usize, a: usize, b: usize) -> Result<QueryAlgorithm> {
        read_two("xor-of-two", n, a, b, Accept::WorkspaceParity { qubits: vec![0, 1] })
    }

    pub fn or_of_two(n: usize, a: usize, b: usize) -> Result<QueryAlgorithm> {
        read_two("or-of-two", n, a, b, Accept::WorkspaceAny { qubits: vec![0, 1] })
    }

    /// Uniform superposition, one phase query, Fourier back, accept on 0.
    /// `A(X) = (1 − 2|X|/N)²`.
    pub fn balance_test(n: usize) -> Result<QueryAlgorithm> {
        QueryAlgorithm::new(
            "balance-test",
            n,
            0,
            vec![Stage::Dft, Stage::Query { oracle: Oracle::Phase }, Stage::InverseDft],
            Accept::IndexIn { indices: vec![0] },
        )
    }

    /// `iterations` rounds of phase query + diffusion, then measure the
    /// index and check it with one bit query.
    pub fn grover(n: usize, iterations: usize) -> Result<QueryAlgorithm> {
        let mut stages = vec![Stage::Dft];
        for _ in 0..iterations {
            stages.push(Stage::Query { oracle: Oracle::Phase });
            stages.push(Stage::Diffusion);
        }
        stages.push(Stage::Query { oracle: Oracle::Bit { qubit: 0 } });
        QueryAlgorithm::new("grover", n, 1, stages, Accept::WorkspaceBit { qubit: 0 })
    }

    /// Grover without the final check; accepts if the index lands in the
    /// lower half.
    pub fn grover_lower_half(n: usize, iterations: usize) -> Result<QueryAlgorithm> {
        let mut stages = vec![Stage::Dft];
        for _ in 0..iterations {
            stages.push(Stage::Query { oracle: Oracle::Phase });
            stages.push(Stage::Diffusion);
        }
        QueryAlgorithm::new("grover-lower-half", n, 0, stages, Accept::IndexIn { indices: (0..n / 2).collect() })
    }

    /// Queries a uniform superposition with a bit oracle: accepts with
    /// probability `|X|/N`.
    pub fn sample_bit(n: usize) -> Result<QueryAlgorithm> {
        QueryAlgorithm::new(
            "sample-bit",
            n,
            1,
            vec![Stage::Dft, Stage::Query { oracle: Oracle::Bit { qubit: 0 } }],
            Accept::WorkspaceBit { qubit: 0 },
        )
    }

    /// Random unitaries around `t` phase or bit queries.
    pub fn random<R: Rng + ?Sized>(n: usize, workspace: usize, t: usize, rng: &mut R) -> Result<QueryAlgorithm> {
        let dim = n << workspace;
        let mut stages = Vec::new();
        for k in 0..t {
            stages.push(Stage::Unitary { matrix: MatrixSpec::from_matrix(&qcore::random::unitary(dim, rng)) });
            let oracle = if workspace > 0 && rng.random::<bool>() {
                Oracle::Bit { qubit: k % workspace }
            } else {
                Oracle::Phase
            };
            stages.push(Stage::Query { oracle });
        }
        stages.push(Stage::Unitary { matrix: MatrixSpec::from_matrix(&qcore::random::unitary(dim, rng)) });
        let accept = Accept::IndexIn { indices: (0..n).filter(|_| rng.random::<bool>()).collect() };
        QueryAlgorithm::new("random", n, workspace, stages, accept)
    }

    /// The built-in catalogue, all with oracle length `n ≥ 2`.
    pub fn catalogue(n: usize) -> Result<Vec<QueryAlgorithm>> {
        Ok(vec![
            always_accept(n),
            never_accept(n),
            read_bit(n, 0)?,
            read_bit(n, n - 1)?,
            xor_of_two(n, 0, 1)?,
            or_of_two(n, 0, n - 1)?,
            balance_test(n)?,
            sample_bit(n)?,
            grover(n, 1)?,
            grover(n, 2)?,
            grover_lower_half(n, 2)?,
        ])
    }
}
