use nalgebra::SymmetricEigen;

use super::{c, ComplexMatrix, ComplexVector, DensityMatrix, PureState, INVARIANT_TOL};
use crate::error::{Error, Result};

/// `Σ|λ_i|` for a Hermitian matrix.
pub fn trace_norm(hermitian: &ComplexMatrix) -> f64 {
    let sym = (hermitian + hermitian.adjoint()) * c(0.5, 0.0);
    SymmetricEigen::new(sym).eigenvalues.iter().map(|l| l.abs()).sum()
}

/// `½ Σ|λ_i|` over the eigenvalues of `ρ − σ`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), found: sigma.dim() });
    }
    let diff = rho.matrix() - sigma.matrix();
    Ok((0.5 * trace_norm(&diff)).clamp(0.0, 1.0))
}

/// `√(1 − |⟨ψ|φ⟩|²)`, the trace distance between two pure states.
pub fn pure_trace_distance(psi: &PureState, phi: &PureState) -> Result<f64> {
    if psi.dim() != phi.dim() {
        return Err(Error::DimensionMismatch { expected: psi.dim(), found: phi.dim() });
    }
    let overlap = psi.inner(phi).norm_sqr();
    Ok((1.0 - overlap).max(0.0).sqrt())
}

fn digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for (k, &d) in dims.iter().enumerate().rev() {
        out[k] = index % d;
        index /= d;
    }
    out
}

/// Traces out every factor not listed in `keep`. Factors are ordered most
/// significant first; kept factors stay in their original relative order.
pub fn partial_trace(rho: &DensityMatrix, factor_dims: &[usize], keep: &[usize]) -> Result<DensityMatrix> {
    let product: usize = factor_dims.iter().product();
    if product != rho.dim() || factor_dims.iter().any(|&d| d == 0) {
        return Err(Error::InconsistentFactorization { product, dim: rho.dim() });
    }
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.iter().any(|&k| k >= factor_dims.len()) {
        return Err(Error::InconsistentFactorization { product, dim: rho.dim() });
    }
    let traced: Vec<usize> = (0..factor_dims.len()).filter(|k| !keep_sorted.contains(k)).collect();
    let keep_dims: Vec<usize> = keep_sorted.iter().map(|&k| factor_dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| factor_dims[k]).collect();
    let dk: usize = keep_dims.iter().product();
    let dt: usize = traced_dims.iter().product();

    let compose = |kd: &[usize], td: &[usize]| -> usize {
        let mut full = vec![0; factor_dims.len()];
        for (slot, &k) in keep_sorted.iter().enumerate() {
            full[k] = kd[slot];
        }
        for (slot, &t) in traced.iter().enumerate() {
            full[t] = td[slot];
        }
        full.iter().zip(factor_dims).fold(0, |acc, (&x, &d)| acc * d + x)
    };

    // full index for each (kept, traced) pair
    let mut index = vec![0usize; dk * dt];
    for a in 0..dk {
        let ka = digits(a, &keep_dims);
        for t in 0..dt {
            index[a * dt + t] = compose(&ka, &digits(t, &traced_dims));
        }
    }
    let m = rho.matrix();
    let out = ComplexMatrix::from_fn(dk, dk, |a, b| {
        (0..dt).map(|t| m[(index[a * dt + t], index[b * dt + t])]).sum()
    });
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// Reduced state on the leading `system_dim` factor of a set of
/// (sub-normalized) vectors stored column-wise, each column laid out as
/// `system ⊗ rest`: `Σ_cols Tr_rest |v⟩⟨v|`.
pub fn reduced_from_columns(columns: &ComplexMatrix, system_dim: usize) -> ComplexMatrix {
    let rest = columns.nrows() / system_dim;
    let mut out = ComplexMatrix::zeros(system_dim, system_dim);
    for col in columns.column_iter() {
        for r in 0..rest {
            for i in 0..system_dim {
                let vi = col[i * rest + r];
                if vi.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..system_dim {
                    out[(i, j)] += vi * col[j * rest + r].conj();
                }
            }
        }
    }
    out
}

/// Purification `Σ_k √λ_k |v_k⟩ ⊗ |k⟩` on `system ⊗ purifier`, with the
/// purifier of the same dimension as the system.
pub fn purify(rho: &DensityMatrix) -> PureState {
    let d = rho.dim();
    let eig = SymmetricEigen::new(rho.matrix().clone());
    let mut v = ComplexVector::zeros(d * d);
    for k in 0..d {
        let lambda = eig.eigenvalues[k];
        let weight = if lambda < INVARIANT_TOL { lambda.max(0.0) } else { lambda };
        if weight == 0.0 {
            continue;
        }
        let s = weight.sqrt();
        for i in 0..d {
            v[i * d + k] += eig.eigenvectors[(i, k)] * s;
        }
    }
    PureState::normalized(v).expect("a unit-trace state has a nonzero purification")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{random, DERIVED_TOL};
    use crate::rng::stream;

    fn ket(v: &[f64]) -> PureState {
        PureState::normalized(ComplexVector::from_iterator(v.len(), v.iter().map(|&x| c(x, 0.0)))).unwrap()
    }

    #[test]
    fn trace_distance_examples() {
        let zero = ket(&[1.0, 0.0]).to_density();
        let one = ket(&[0.0, 1.0]).to_density();
        let plus = ket(&[1.0, 1.0]).to_density();
        assert!(trace_distance(&zero, &zero).unwrap() < 1e-15);
        assert!((trace_distance(&zero, &one).unwrap() - 1.0).abs() < 1e-12);
        // eigenvalues of |0⟩⟨0| − |+⟩⟨+| are ±1/√2
        let expect = std::f64::consts::FRAC_1_SQRT_2;
        assert!((trace_distance(&zero, &plus).unwrap() - expect).abs() < 1e-12);
        assert!(trace_distance(&zero, &DensityMatrix::maximally_mixed(2).unwrap()).is_err());
    }

    #[test]
    fn bell_pair_marginal_is_maximally_mixed() {
        let bell = ket(&[1.0, 0.0, 0.0, 1.0]).to_density();
        let half = partial_trace(&bell, &[2, 2], &[0]).unwrap();
        let mm = DensityMatrix::maximally_mixed(1).unwrap();
        assert!(super::super::max_abs_diff(half.matrix(), mm.matrix()) < 1e-15);
        let all = partial_trace(&bell, &[2, 2], &[0, 1]).unwrap();
        assert!(super::super::max_abs_diff(all.matrix(), bell.matrix()) < 1e-15);
        assert!(matches!(
            partial_trace(&bell, &[2, 3], &[0]),
            Err(Error::InconsistentFactorization { .. })
        ));
    }

    #[test]
    fn partial_trace_keeps_middle_factor() {
        let mut rng = stream(11, 0);
        let a = random::density_matrix(2, &mut rng);
        let b = random::density_matrix(3, &mut rng);
        let cc = random::density_matrix(2, &mut rng);
        let abc = a.tensor(&b).unwrap().tensor(&cc).unwrap();
        let mid = partial_trace(&abc, &[2, 3, 2], &[1]).unwrap();
        assert!(super::super::max_abs_diff(mid.matrix(), b.matrix()) < 1e-12);
        let outer = partial_trace(&abc, &[2, 3, 2], &[2, 0]).unwrap();
        let ac = a.tensor(&cc).unwrap();
        assert!(super::super::max_abs_diff(outer.matrix(), ac.matrix()) < 1e-12);
    }

    #[test]
    fn contractivity_on_random_pairs() {
        let mut rng = stream(3, 0);
        for _ in 0..100 {
            let rho = random::density_matrix(4, &mut rng);
            let sigma = random::density_matrix(4, &mut rng);
            let full = trace_distance(&rho, &sigma).unwrap();
            for keep in [0usize, 1] {
                let r = partial_trace(&rho, &[2, 2], &[keep]).unwrap();
                let s = partial_trace(&sigma, &[2, 2], &[keep]).unwrap();
                assert!(trace_distance(&r, &s).unwrap() <= full + DERIVED_TOL);
            }
        }
    }

    #[test]
    fn purification_examples() {
        let zero = ket(&[1.0, 0.0]).to_density();
        let p = purify(&zero);
        // product form: amplitude mass entirely on system |0⟩
        let sys0: f64 = (0..2).map(|k| p.amplitudes()[k].norm_sqr()).sum();
        assert!((sys0 - 1.0).abs() < 1e-12);

        let mm = DensityMatrix::maximally_mixed(1).unwrap();
        let p = purify(&mm);
        let reduced = partial_trace(&p.to_density(), &[2, 2], &[1]).unwrap();
        // maximally entangled: the purifier marginal is also maximally mixed
        assert!(super::super::max_abs_diff(reduced.matrix(), mm.matrix()) < 1e-12);
    }

    #[test]
    fn purification_roundtrip_random() {
        let mut rng = stream(5, 0);
        for _ in 0..100 {
            let rho = random::density_matrix(3, &mut rng);
            let psi = purify(&rho);
            let back = partial_trace(&psi.to_density(), &[3, 3], &[0]).unwrap();
            assert!(super::super::max_abs_diff(back.matrix(), rho.matrix()) <= DERIVED_TOL);
        }
    }

    #[test]
    fn reduced_from_columns_matches_partial_trace() {
        let mut rng = stream(8, 0);
        let psi = random::pure_state(6, &mut rng);
        let cols = ComplexMatrix::from_column_slice(6, 1, psi.amplitudes().as_slice());
        let red = reduced_from_columns(&cols, 2);
        let pt = partial_trace(&psi.to_density(), &[2, 3], &[0]).unwrap();
        assert!(super::super::max_abs_diff(&red, pt.matrix()) < 1e-12);
    }
}
