use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, Subgroup};
use crate::qcore::{c, ComplexVector, C64};

/// Hadamard test between `|H⟩` and `|xH⟩`: prepares
/// `(|0⟩|H⟩ + |1⟩|xH⟩)/√2`, applies `H` to the control and returns
/// `Pr[control = 0]`.
pub fn group_membership_advice(g: &FiniteGroup, h: &Subgroup, x: usize) -> Result<f64> {
    if h.parent() != g {
        return Err(Error::NotSubgroup("subgroup belongs to a different group".into()));
    }
    let n = g.order();
    if n > 512 {
        return Err(Error::InvalidParameter(format!("|G| = {n} exceeds 512")));
    }
    if x >= n {
        return Err(Error::IndexOutOfRange { index: x, dim: n });
    }
    let amp = 1.0 / ((2 * h.len()) as f64).sqrt();
    let mut state = ComplexVector::zeros(2 * n);
    for &e in h.elements() {
        state[e] += c(amp, 0.0);
        state[n + g.op(x, e)] += c(amp, 0.0);
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut p0 = 0.0;
    for k in 0..n {
        let a: C64 = (state[k] + state[n + k]) * s;
        p0 += a.norm_sqr();
    }
    Ok(p0)
}

/// Measures the advice `2^{-n/2} Σ_x |x⟩|L(x)⟩` in the computational basis;
/// outputs the recorded bit when the register shows `x`, otherwise a fair
/// coin. Returns `Pr[output = L(x)]` exactly.
pub fn pqp_advice(truth_table: &[bool], x: usize) -> Result<BigRational> {
    let len = truth_table.len();
    if !len.is_power_of_two() || len > 256 {
        return Err(Error::InvalidParameter(format!("truth table length {len} is not 2^n with n ≤ 8")));
    }
    if x >= len {
        return Err(Error::IndexOutOfRange { index: x, dim: len });
    }
    let weight = BigRational::new(BigInt::one(), BigInt::from(len));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut correct = BigRational::zero();
    for x2 in 0..len {
        for b in [false, true] {
            if b != truth_table[x2] {
                continue;
            }
            let p_correct = if x2 == x { BigRational::one() } else { half.clone() };
            correct += &weight * p_correct;
        }
    }
    Ok(correct)
}

/// Floating-point state-vector version of [`pqp_advice`].
pub fn pqp_advice_f64(truth_table: &[bool], x: usize) -> Result<f64> {
    let len = truth_table.len();
    if !len.is_power_of_two() || len > 256 || x >= len {
        return Err(Error::InvalidParameter("bad truth table or input".into()));
    }
    let amp = 1.0 / (len as f64).sqrt();
    let mut psi = ComplexVector::zeros(2 * len);
    for (x2, &l) in truth_table.iter().enumerate() {
        psi[2 * x2 + usize::from(l)] = c(amp, 0.0);
    }
    let mut correct = 0.0;
    for (k, a) in psi.iter().enumerate() {
        let p = a.norm_sqr();
        let (x2, b) = (k / 2, k % 2 == 1);
        correct += if x2 == x { p * f64::from(u8::from(b == truth_table[x])) } else { p * 0.5 };
    }
    Ok(correct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::enumerate_subgroups;

    #[test]
    fn membership_examples() {
        let g = FiniteGroup::parse("z2^2").unwrap();
        let h = Subgroup::new(&g, &[0, 1]).unwrap();
        assert!((group_membership_advice(&g, &h, 0).unwrap() - 1.0).abs() < 1e-12);
        assert!((group_membership_advice(&g, &h, 2).unwrap() - 0.5).abs() < 1e-12);
        assert!((group_membership_advice(&g, &h, 1).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn membership_dichotomy_all_subgroups() {
        for spec in ["z2^3", "z4xz2", "z6"] {
            let g = FiniteGroup::parse(spec).unwrap();
            for h in enumerate_subgroups(&g) {
                for x in g.elements() {
                    let p = group_membership_advice(&g, &h, x).unwrap();
                    let want = if h.contains(x) { 1.0 } else { 0.5 };
                    assert!((p - want).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn pqp_values() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(pqp_advice(&[true, false], 0).unwrap(), q(3, 4));
        assert_eq!(pqp_advice(&[true, false, false, true], 2).unwrap(), q(5, 8));
        for n in 0..=6u32 {
            let table: Vec<bool> = (0..1usize << n).map(|i| i.count_ones() % 2 == 1).collect();
            let want = q(1, 2) + BigRational::new(1.into(), BigInt::from(2u64 << n));
            for x in 0..table.len() {
                assert_eq!(pqp_advice(&table, x).unwrap(), want);
                let f = pqp_advice_f64(&table, x).unwrap();
                assert!((f - (0.5 + 0.5f64.powi(n as i32 + 1))).abs() < 1e-15);
            }
        }
    }
}
