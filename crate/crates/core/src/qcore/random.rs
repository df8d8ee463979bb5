//! Seeded generators for random states, unitaries and measurements.

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{c, ComplexMatrix, ComplexVector, DensityMatrix, PureState, TwoOutcomeMeasurement, C64};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(re, im)
}

pub fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    DMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// Haar-random unitary (QR of a Ginibre matrix with the phase correction).
pub fn unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let qr = ginibre(dim, dim, rng).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    let v = ComplexVector::from_fn(dim, |_, _| gaussian(rng));
    PureState::normalized(v).expect("gaussian vector is nonzero")
}

/// Random mixed state of uniformly chosen rank in `1..=dim`.
pub fn density_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let rank = rng.random_range(1..=dim);
    density_matrix_with_rank(dim, rank, rng)
}

pub fn density_matrix_with_rank<R: Rng + ?Sized>(dim: usize, rank: usize, rng: &mut R) -> DensityMatrix {
    let g = ginibre(dim, rank, rng);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::from_matrix_unchecked(m.unscale(tr))
}

/// Two-outcome measurement whose dilation is a Haar-random unitary.
pub fn measurement<R: Rng + ?Sized>(system_dim: usize, ancilla_qubits: usize, rng: &mut R) -> TwoOutcomeMeasurement {
    let total = system_dim << ancilla_qubits;
    let output = rng.random_range(0..ancilla_qubits);
    TwoOutcomeMeasurement::from_dilation(system_dim, unitary(total, rng), ancilla_qubits, output)
        .expect("QR factor is unitary")
}
