use nalgebra::SymmetricEigen;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{c, ComplexMatrix, ComplexVector, C64, INVARIANT_TOL, MAX_DIM};
use crate::error::{Error, Result};

/// A positive semidefinite, unit-trace Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

/// A normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: ComplexVector,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        return Err(Error::InvalidState("dimension must be positive".into()));
    }
    if dim > MAX_DIM {
        return Err(Error::DimensionTooLarge(dim));
    }
    Ok(())
}

impl DensityMatrix {
    /// Validates `matrix` against the density-matrix invariants.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidState(format!(
                "matrix is {}x{}, not square",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        check_dim(matrix.nrows())?;
        let herm = super::max_abs_diff(&matrix, &matrix.adjoint());
        if herm > INVARIANT_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {herm:.3e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > INVARIANT_TOL || tr.im.abs() > INVARIANT_TOL {
            return Err(Error::InvalidState(format!("trace {tr} is not 1")));
        }
        let hermitian = (&matrix + matrix.adjoint()) * c(0.5, 0.0);
        let min_eig = SymmetricEigen::new(hermitian.clone())
            .eigenvalues
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -INVARIANT_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min_eig:.3e}")));
        }
        Ok(Self { matrix: hermitian })
    }

    /// Internal constructor for results of trace-preserving maps; only
    /// re-symmetrizes.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        let matrix = (&matrix + matrix.adjoint()) * c(0.5, 0.0);
        Self { matrix }
    }

    pub fn from_pure(state: &PureState) -> Self {
        let v = state.amplitudes();
        Self { matrix: v * v.adjoint() }
    }

    pub fn maximally_mixed_dim(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        let mut m = ComplexMatrix::identity(dim, dim);
        m.scale_mut(1.0 / dim as f64);
        Ok(Self { matrix: m })
    }

    /// `I / 2^qubits`.
    pub fn maximally_mixed(qubits: usize) -> Result<Self> {
        if qubits > 10 {
            return Err(Error::DimensionTooLarge(1usize << qubits.min(63)));
        }
        Self::maximally_mixed_dim(1 << qubits)
    }

    /// Diagonal state with the given probabilities.
    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let dim = probs.len();
        let m = ComplexMatrix::from_fn(dim, dim, |i, j| if i == j { c(probs[i], 0.0) } else { c(0.0, 0.0) });
        Self::new(m)
    }

    /// Convex combination `Σ w_k ρ_k`; weights must sum to one.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidState("empty mixture".into()))?;
        let dim = first.1.dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        let mut total = 0.0;
        for (w, rho) in parts {
            if rho.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: rho.dim() });
            }
            if *w < 0.0 {
                return Err(Error::InvalidState("negative mixture weight".into()));
            }
            acc += rho.matrix() * c(*w, 0.0);
            total += w;
        }
        if (total - 1.0).abs() > INVARIANT_TOL {
            return Err(Error::InvalidState(format!("mixture weights sum to {total}")));
        }
        Ok(Self::from_matrix_unchecked(acc))
    }

    /// `ρ^{⊗ copies}`.
    pub fn tensor_power(&self, copies: usize) -> Result<Self> {
        let dim = self.dim().checked_pow(copies as u32).unwrap_or(usize::MAX);
        check_dim(dim)?;
        let mut m = ComplexMatrix::identity(1, 1);
        for _ in 0..copies {
            m = m.kronecker(&self.matrix);
        }
        Ok(Self { matrix: m })
    }

    pub fn tensor(&self, other: &DensityMatrix) -> Result<Self> {
        check_dim(self.dim() * other.dim())?;
        Ok(Self { matrix: self.matrix.kronecker(&other.matrix) })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Number of qubits when the dimension is a power of two.
    pub fn qubit_count(&self) -> Option<usize> {
        let d = self.dim();
        d.is_power_of_two().then(|| d.trailing_zeros() as usize)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Eigenvalues in ascending order with values in `[-1e-9, 0)` clipped to zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.matrix.clone())
            .eigenvalues
            .iter()
            .map(|&l| if (-INVARIANT_TOL..0.0).contains(&l) { 0.0 } else { l })
            .collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

impl PureState {
    pub fn new(amplitudes: ComplexVector) -> Result<Self> {
        check_dim(amplitudes.len())?;
        let norm = amplitudes.norm_squared();
        if (norm - 1.0).abs() > INVARIANT_TOL {
            return Err(Error::InvalidState(format!("squared norm {norm} is not 1")));
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes `v` first; fails on the zero vector.
    pub fn normalized(v: ComplexVector) -> Result<Self> {
        let n = v.norm();
        if n < 1e-300 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        Self::new(v.unscale(n))
    }

    pub fn basis(index: usize, dim: usize) -> Result<Self> {
        check_dim(dim)?;
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut v = ComplexVector::zeros(dim);
        v[index] = c(1.0, 0.0);
        Ok(Self { amplitudes: v })
    }

    /// Equal superposition `|S|^{-1/2} Σ_{s∈S} |s⟩`.
    pub fn uniform_superposition(subset: &[usize], dim: usize) -> Result<Self> {
        check_dim(dim)?;
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut v = ComplexVector::zeros(dim);
        for &s in subset {
            if s >= dim {
                return Err(Error::IndexOutOfRange { index: s, dim });
            }
            v[s] = c(1.0, 0.0);
        }
        Self::normalized(v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    pub fn inner(&self, other: &PureState) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn tensor(&self, other: &PureState) -> Result<Self> {
        check_dim(self.dim() * other.dim())?;
        Ok(Self { amplitudes: self.amplitudes.kronecker(&other.amplitudes) })
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(self)
    }
}

/// Declarative description of a standard state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateSpec {
    Basis { index: usize, dim: usize },
    MaximallyMixed { qubits: usize },
    UniformSuperposition { subset: Vec<usize>, dim: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl State {
    pub fn to_density(&self) -> DensityMatrix {
        match self {
            State::Pure(p) => p.to_density(),
            State::Mixed(m) => m.clone(),
        }
    }
}

pub fn make_state(spec: &StateSpec) -> Result<State> {
    match spec {
        StateSpec::Basis { index, dim } => PureState::basis(*index, *dim).map(State::Pure),
        StateSpec::MaximallyMixed { qubits } => DensityMatrix::maximally_mixed(*qubits).map(State::Mixed),
        StateSpec::UniformSuperposition { subset, dim } => {
            PureState::uniform_superposition(subset, *dim).map(State::Pure)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    dim: usize,
    entries: Vec<[f64; 2]>,
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let dim = self.dim();
        // row-major
        let entries = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .map(|(i, j)| {
                let z = self.matrix[(i, j)];
                [z.re, z.im]
            })
            .collect();
        MatrixRepr { dim, entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.dim * repr.dim {
            return Err(serde::de::Error::custom("entry count does not match dim"));
        }
        let m = ComplexMatrix::from_fn(repr.dim, repr.dim, |i, j| {
            let [re, im] = repr.entries[i * repr.dim + j];
            c(re, im)
        });
        DensityMatrix::new(m).map_err(serde::de::Error::custom)
    }
}

impl Serialize for PureState {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self.amplitudes.iter().map(|z| [z.re, z.im]).collect();
        MatrixRepr { dim: self.dim(), entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PureState {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.dim {
            return Err(serde::de::Error::custom("entry count does not match dim"));
        }
        let v = ComplexVector::from_iterator(repr.dim, repr.entries.iter().map(|[re, im]| c(*re, *im)));
        PureState::new(v).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximally_mixed_one_qubit() {
        let rho = DensityMatrix::maximally_mixed(1).unwrap();
        assert_eq!(rho.matrix()[(0, 0)], c(0.5, 0.0));
        assert_eq!(rho.matrix()[(1, 1)], c(0.5, 0.0));
        assert_eq!(rho.matrix()[(0, 1)], c(0.0, 0.0));
        assert_eq!(rho.qubit_count(), Some(1));
    }

    #[test]
    fn uniform_superposition_amplitudes() {
        let psi = PureState::uniform_superposition(&[0, 1], 4).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (k, expect) in [h, h, 0.0, 0.0].iter().enumerate() {
            assert!((psi.amplitudes()[k].re - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn basis_and_errors() {
        let b = PureState::basis(2, 4).unwrap();
        assert_eq!(b.amplitudes()[2], c(1.0, 0.0));
        assert_eq!(PureState::basis(4, 4), Err(Error::IndexOutOfRange { index: 4, dim: 4 }));
        assert_eq!(PureState::uniform_superposition(&[], 4), Err(Error::EmptySubset));
        assert!(matches!(
            make_state(&StateSpec::MaximallyMixed { qubits: 11 }),
            Err(Error::DimensionTooLarge(_))
        ));
    }

    #[test]
    fn rejects_invalid_matrices() {
        let not_psd = ComplexMatrix::from_fn(2, 2, |i, j| if i == j { c(if i == 0 { 1.5 } else { -0.5 }, 0.0) } else { c(0.0, 0.0) });
        assert!(DensityMatrix::new(not_psd).is_err());
        let bad_trace = ComplexMatrix::identity(2, 2);
        assert!(DensityMatrix::new(bad_trace).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let rho = DensityMatrix::from_pure(&PureState::uniform_superposition(&[0, 1], 2).unwrap());
        let s = serde_json::to_string(&rho).unwrap();
        assert!(s.starts_with("{\"dim\":2,\"entries\":[["));
        let back: DensityMatrix = serde_json::from_str(&s).unwrap();
        assert!(super::super::max_abs_diff(back.matrix(), rho.matrix()) < 1e-15);
    }
}
