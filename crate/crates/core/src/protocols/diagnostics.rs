use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::problem::OneWayProblem;
use crate::error::{Error, Result};

pub const MAX_MATRIX_ENTRIES: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Measure {
    /// Deterministic one-way complexity.
    D1,
    /// Bounded-error randomized.
    R12,
    /// Bounded-error quantum.
    Q12,
    /// Zero-error randomized.
    R10,
    /// Zero-error quantum.
    Q10,
    /// Exact quantum.
    QE1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
}

/// A bound certified by a concrete protocol or method, not the exact
/// complexity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub problem: String,
    pub measure: Measure,
    pub kind: BoundKind,
    pub value: f64,
    pub provenance: String,
}

impl BoundReport {
    pub fn new(
        problem: impl Into<String>,
        measure: Measure,
        kind: BoundKind,
        value: f64,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if !(value >= 0.0) {
            return Err(Error::InvalidParameter(format!("bound value {value} is negative")));
        }
        Ok(Self { problem: problem.into(), measure, kind, value, provenance: provenance.into() })
    }
}

/// `M_f` with its distinct row/column counts and VC dimension.
#[derive(Debug, Clone, Serialize)]
pub struct CommMatrix {
    pub entries: Vec<Vec<u8>>,
    pub rows: usize,
    pub cols: usize,
    pub vc: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    pub matrix: CommMatrix,
    pub reports: Vec<BoundReport>,
    /// `Σ_{i ≤ VC} C(cols, i)`, saturating.
    pub sauer_sum: u128,
    pub sauer_verdict: bool,
}

fn binomial(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Largest number of columns on which the rows realize every pattern.
pub fn vc_dimension(entries: &[Vec<u8>]) -> usize {
    let rows: Vec<Vec<u8>> = entries.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if rows.len() < 2 {
        return 0;
    }
    let words = rows.len().div_ceil(64);
    let columns: Vec<Vec<u64>> = (0..rows[0].len())
        .map(|j| {
            let mut bits = vec![0u64; words];
            for (i, r) in rows.iter().enumerate() {
                if r[j] != 0 {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            bits
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut all = vec![u64::MAX; words];
    if rows.len() % 64 != 0 {
        all[words - 1] = (1u64 << (rows.len() % 64)) - 1;
    }
    let max_t = ((usize::BITS - 1 - rows.len().leading_zeros()) as usize).min(columns.len());
    let root = Classes { bits: all, sizes: vec![rows.len() as u32], words };
    (1..=max_t)
        .rev()
        .find(|&t| {
            let need = 1u32 << (t - 1);
            let ok: Vec<usize> = (0..columns.len()).filter(|&c| root.splits(&columns[c], need)).collect();
            (0..ok.len().saturating_sub(t - 1))
                .into_par_iter()
                .any(|i| shatters(&columns, &ok[i + 1..], t - 1, &root.cut(&columns[ok[i]])))
        })
        .unwrap_or(0)
}

/// Row sets, one bitset of `words` words each.
struct Classes {
    bits: Vec<u64>,
    sizes: Vec<u32>,
    words: usize,
}

impl Classes {
    fn splits(&self, col: &[u64], need: u32) -> bool {
        self.bits.chunks(self.words).zip(&self.sizes).all(|(cls, &size)| {
            let on: u32 = cls.iter().zip(col).map(|(a, b)| (a & b).count_ones()).sum();
            on >= need && size - on >= need
        })
    }

    fn cut(&self, col: &[u64]) -> Classes {
        let mut bits = Vec::with_capacity(self.bits.len() * 2);
        let mut sizes = Vec::with_capacity(self.sizes.len() * 2);
        for (cls, &size) in self.bits.chunks(self.words).zip(&self.sizes) {
            let on: u32 = cls.iter().zip(col).map(|(a, b)| (a & b).count_ones()).sum();
            bits.extend(cls.iter().zip(col).map(|(a, b)| a & b));
            bits.extend(cls.iter().zip(col).map(|(a, b)| a & !b));
            sizes.extend([on, size - on]);
        }
        Classes { bits, sizes, words: self.words }
    }
}

/// Whether `t` of the candidate columns are shattered on top of the cut
/// that produced `classes`. Every class must keep `2^t` rows, and a column
/// that fails here fails in every extension too.
fn shatters(columns: &[Vec<u64>], cand: &[usize], t: usize, classes: &Classes) -> bool {
    if t == 0 {
        return true;
    }
    let need = 1u32 << (t - 1);
    let ok: Vec<usize> = cand.iter().copied().filter(|&c| classes.splits(&columns[c], need)).collect();
    if t == 1 {
        return !ok.is_empty();
    }
    (0..ok.len().saturating_sub(t - 1)).any(|i| shatters(columns, &ok[i + 1..], t - 1, &classes.cut(&columns[ok[i]])))
}

/// Distinct rows, columns, VC dimension, the deterministic upper bound
/// `⌈log₂ rows⌉` and a Sauer-lemma check.
pub fn matrix_diagnostics(prob: &OneWayProblem) -> Result<Diagnostics> {
    if !prob.is_total() {
        return Err(Error::PartialFunction(prob.id().to_string()));
    }
    let (a, b) = (prob.alice_inputs(), prob.bob_inputs());
    if a.saturating_mul(b) > MAX_MATRIX_ENTRIES {
        return Err(Error::SizeOverflow(format!("{a} × {b} matrix")));
    }
    let entries: Vec<Vec<u8>> = (0..a)
        .map(|x| (0..b).map(|y| u8::from(prob.value(x, y) == Some(true))).collect())
        .collect();
    let rows = entries.iter().collect::<BTreeSet<_>>().len();
    let cols = (0..b).map(|y| entries.iter().map(|r| r[y]).collect::<Vec<_>>()).collect::<BTreeSet<_>>().len();
    let vc = vc_dimension(&entries);
    let sauer_sum: u128 = (0..=vc.min(cols)).map(|i| binomial(cols, i)).fold(0u128, |s, t| s.saturating_add(t));
    let poly_ok = cols < 2 || (rows as f64) <= (cols as f64).powi(vc as i32 + 1);
    let sauer_verdict = (rows as u128) <= sauer_sum && poly_ok;
    let d1 = (rows as f64).log2().ceil();
    let reports = vec![
        BoundReport::new(prob.id(), Measure::D1, BoundKind::Upper, d1, "ceil(log2 rows(f))")?,
        BoundReport::new(prob.id(), Measure::D1, BoundKind::Lower, d1, "ceil(log2 rows(f))")?,
        BoundReport::new(prob.id(), Measure::R12, BoundKind::Lower, vc as f64, "VC dimension (up to a constant)")?,
    ];
    Ok(Diagnostics { matrix: CommMatrix { entries, rows, cols, vc }, reports, sauer_sum, sauer_verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocols::problem::{coset, equality, promise_example};

    fn brute_vc(entries: &[Vec<u8>]) -> usize {
        let ncols = entries[0].len();
        let mut best = 0;
        for mask in 0u32..(1 << ncols) {
            let cols: Vec<usize> = (0..ncols).filter(|j| mask >> j & 1 == 1).collect();
            let pats: BTreeSet<Vec<u8>> = entries.iter().map(|r| cols.iter().map(|&j| r[j]).collect()).collect();
            if pats.len() == 1 << cols.len() {
                best = best.max(cols.len());
            }
        }
        best
    }

    #[test]
    fn equality_two_bits() {
        let d = matrix_diagnostics(&equality(2).unwrap()).unwrap();
        assert_eq!((d.matrix.rows, d.matrix.cols, d.matrix.vc), (4, 4, 1));
        assert_eq!(d.reports[0].value, 2.0);
        assert_eq!(d.sauer_sum, 5);
        assert!(d.sauer_verdict);
    }

    #[test]
    fn vc_matches_brute_force() {
        use rand::Rng;
        let mut rng = crate::rng::stream(5, 0);
        for _ in 0..40 {
            let (r, cc) = (rng.random_range(1..=40), rng.random_range(1..=10));
            let e: Vec<Vec<u8>> = (0..r).map(|_| (0..cc).map(|_| rng.random_range(0..2)).collect()).collect();
            assert_eq!(vc_dimension(&e), brute_vc(&e));
        }
    }

    #[test]
    fn large_random_table() {
        use rand::Rng;
        let mut rng = crate::rng::stream(6, 0);
        let e: Vec<Vec<u8>> = (0..256).map(|_| (0..256).map(|_| rng.random_range(0..2)).collect()).collect();
        let vc = vc_dimension(&e);
        assert!((6..=7).contains(&vc), "{vc}");
    }

    #[test]
    fn coset_and_partial() {
        let d = matrix_diagnostics(&coset(3).unwrap()).unwrap();
        assert!(d.sauer_verdict);
        assert!((d.matrix.vc as f64) <= (d.matrix.rows as f64).log2());
        assert!(matches!(matrix_diagnostics(&promise_example(4).unwrap()), Err(Error::PartialFunction(_))));
    }
}
