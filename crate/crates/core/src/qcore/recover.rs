use super::{c, purify, reduced_from_columns, trace_distance, trace_norm, ComplexMatrix, DensityMatrix, TwoOutcomeMeasurement};
use crate::error::Result;

/// Outcome of the measure-then-recover construction.
#[derive(Debug, Clone)]
pub struct Recovery {
    /// Probability of outcome 1.
    pub epsilon: f64,
    /// `‖σ − U|ψ⟩⟨ψ|U†‖_tr` on the purified, dilated register.
    pub intermediate_distance: f64,
    pub recovered: DensityMatrix,
    /// `‖ρ̃ − ρ‖_tr`.
    pub distance: f64,
}

impl Recovery {
    /// `√ε`, the guaranteed ceiling on [`Recovery::distance`].
    pub fn bound(&self) -> f64 {
        self.epsilon.sqrt()
    }
}

/// Measures `ρ` with `Λ` and restores it: purify, apply the dilation `U`, form
/// `σ = (1−ε)|φ₀⟩⟨φ₀| + ε|φ₁⟩⟨φ₁|`, apply `U⁻¹`, and trace out everything
/// but the original system.
pub fn measure_and_recover(rho: &DensityMatrix, m: &TwoOutcomeMeasurement) -> Result<Recovery> {
    if rho.dim() != m.system_dim() {
        return Err(crate::error::Error::DimensionMismatch { expected: m.system_dim(), found: rho.dim() });
    }
    let d = rho.dim();
    let dil = m.dilation();
    let a = dil.ancilla_dim();
    let psi = purify(rho);
    let dp = psi.dim() / d;

    // columns indexed by the purifier; rows by system ⊗ ancilla
    let mut start = ComplexMatrix::zeros(d * a, dp);
    for s in 0..d {
        for p in 0..dp {
            start[(s * a, p)] = psi.amplitudes()[s * dp + p];
        }
    }
    let evolved = dil.unitary() * start;
    let mut branches = [evolved.clone(), evolved];
    for (bit, w) in branches.iter_mut().enumerate() {
        for row in 0..d * a {
            if dil.output_bit(row % a) != bit {
                w.row_mut(row).fill(c(0.0, 0.0));
            }
        }
    }
    let norms = [branches[0].norm(), branches[1].norm()];
    let weights = [norms[0] * norms[0], norms[1] * norms[1]];
    let epsilon = weights[1].clamp(0.0, 1.0);

    // U|ψ⟩ = α|φ₀⟩ + β|φ₁⟩ with α, β ≥ 0: in the {φ₀, φ₁} basis the two
    // operators are [[α², αβ], [αβ, β²]] and diag(α², β²).
    let (alpha, beta) = (norms[0], norms[1]);
    let mut diff = ComplexMatrix::zeros(2, 2);
    diff[(0, 1)] = c(alpha * beta, 0.0);
    diff[(1, 0)] = c(alpha * beta, 0.0);
    let intermediate_distance = 0.5 * trace_norm(&diff);

    let mut acc = ComplexMatrix::zeros(d, d);
    for (bit, w) in branches.iter().enumerate() {
        if weights[bit] <= 0.0 {
            continue;
        }
        // weight · |φ_b⟩⟨φ_b| = W_b W_b†, pulled back through U†
        let back = dil.unitary().adjoint() * w;
        acc += reduced_from_columns(&back, d);
    }
    let recovered = DensityMatrix::from_matrix_unchecked(acc);
    let distance = trace_distance(&recovered, rho)?;
    Ok(Recovery { epsilon, intermediate_distance, recovered, distance })
}
