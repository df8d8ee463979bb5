use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{serialize_q, to_f64, Q};
use crate::groups::{order_stats, FiniteGroup};
use crate::rng::stream;

fn falling(k: usize, m: usize) -> i64 {
    (0..m).map(|i| k as i64 - i as i64).product::<i64>().max(0)
}

/// `c · K^{(m)} / den`, read as 0 whenever `c` or `K^{(m)}` vanishes.
fn term(count: usize, k: usize, m: usize, den: i64) -> Q {
    let f = falling(k, m);
    if count == 0 || f == 0 {
        return Q::zero();
    }
    Q::new(BigInt::from(count as i64 * f), BigInt::from(den))
}

/// `E_S Σ_x (Pr_M[x] − 1/|G|)²` over uniform `K`-subsets, in closed form:
/// `(1/K⁴)[K² + (2r + r′)K^{(2)}/(n−1) + 2r′K^{(3)}/((n−1)(n−2))
///  + rK^{(4)}/((n−1)(n−3)) + r′K^{(4)}/((n−1)(n−2))] − 1/n`,
/// with `r` involutions, `r′ = n − r − 1`, `K^{(m)}` the falling factorial.
pub fn randset_closed_form(g: &FiniteGroup, k: usize) -> Result<Q> {
    let n = g.order();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("K = {k} must lie in 1..={n}")));
    }
    let st = order_stats(g);
    let (r, rp) = (st.r, st.r_prime);
    let ni = n as i64;
    let k2 = (k * k) as i64;
    let mut bracket = Q::from_integer(BigInt::from(k2));
    bracket += term(2 * r + rp, k, 2, ni - 1);
    bracket += term(2 * rp, k, 3, (ni - 1) * (ni - 2));
    bracket += term(r, k, 4, (ni - 1) * (ni - 3));
    bracket += term(rp, k, 4, (ni - 1) * (ni - 2));
    Ok(bracket / Q::from_integer(BigInt::from(k2 * k2)) - Q::new(BigInt::from(1), BigInt::from(ni)))
}

/// Counts `c_x = #{(s, t) ∈ S² : s t⁻¹ = x}`.
fn difference_counts(g: &FiniteGroup, set: &[usize]) -> Vec<u64> {
    let mut counts = vec![0u64; g.order()];
    let inv: Vec<usize> = set.iter().map(|&t| g.inverse(t)).collect();
    for &s in set {
        for &ti in &inv {
            counts[g.op(s, ti)] += 1;
        }
    }
    counts
}

/// `n² K⁴ Σ_x (c_x/K² − 1/n)² = Σ_x (n c_x − K²)²`.
fn scaled_square_sum(counts: &[u64], k: usize) -> u128 {
    let n = counts.len() as i128;
    let k2 = (k * k) as i128;
    counts.iter().map(|&c| (n * c as i128 - k2).pow(2) as u128).sum()
}

pub const MAX_ENUMERATED_SUBSETS: u128 = 5_000_000;

/// Exact average over every `K`-subset.
pub fn randset_enumeration(g: &FiniteGroup, k: usize) -> Result<Q> {
    let n = g.order();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("K = {k} must lie in 1..={n}")));
    }
    let subsets = (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1));
    if subsets > MAX_ENUMERATED_SUBSETS {
        return Err(Error::SizeOverflow(format!("C({n}, {k}) = {subsets} subsets")));
    }
    let mut total = BigInt::zero();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        total += BigInt::from(scaled_square_sum(&difference_counts(g, &idx), k));
        // next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                let den = BigInt::from(subsets) * BigInt::from((n * n) as u128 * (k as u128).pow(4));
                return Ok(Q::new(total, den));
            }
            i -= 1;
            if idx[i] < n - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Uniform `K`-subset by partial Fisher–Yates.
pub fn sample_subset<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        pool.swap(i, j);
    }
    let mut s = pool[..k].to_vec();
    s.sort_unstable();
    s
}

#[derive(Debug, Clone, Serialize)]
pub struct RandsetReport {
    pub group: String,
    pub order: usize,
    pub k: usize,
    pub r: usize,
    #[serde(serialize_with = "serialize_q")]
    pub exact_expectation: Q,
    pub trials: usize,
    pub empirical_mean: f64,
    pub standard_error: f64,
    pub within_four_se: bool,
    pub median_delta: f64,
    /// `√(2 · exact · |G|) / 2`.
    pub delta_threshold: f64,
    pub median_ok: bool,
    pub verdict: bool,
}

/// Closed form against a seeded Monte Carlo over uniform `K`-subsets; trial
/// `i` uses stream `(seed, i)`.
pub fn randset_check(g: &FiniteGroup, k: usize, trials: usize, seed: u64) -> Result<RandsetReport> {
    let n = g.order();
    if n > 1024 {
        return Err(Error::InvalidParameter(format!("|G| = {n} exceeds 1024")));
    }
    if trials < 2 {
        return Err(Error::InvalidParameter("need at least two trials".into()));
    }
    let exact = randset_closed_form(g, k)?;
    let samples: Vec<(f64, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let set = sample_subset(n, k, &mut stream(seed, i));
            let counts = difference_counts(g, &set);
            let (kk, nn) = ((k * k) as f64, n as f64);
            let sq = scaled_square_sum(&counts, k) as f64 / (nn * nn * kk * kk);
            let delta = 0.5 * counts.iter().map(|&c| (c as f64 / kk - 1.0 / nn).abs()).sum::<f64>();
            (sq, delta)
        })
        .collect();
    let m = trials as f64;
    let mean = samples.iter().map(|s| s.0).sum::<f64>() / m;
    let var = samples.iter().map(|s| (s.0 - mean).powi(2)).sum::<f64>() / (m - 1.0);
    let se = (var / m).sqrt();
    let exact_f = to_f64(&exact);
    let within_four_se = (mean - exact_f).abs() <= 4.0 * se + 1e-12;
    let mut deltas: Vec<f64> = samples.iter().map(|s| s.1).collect();
    deltas.sort_by(|a, b| a.total_cmp(b));
    let median_delta = deltas[(deltas.len() - 1) / 2];
    let delta_threshold = (2.0 * exact_f.max(0.0) * n as f64).sqrt() / 2.0;
    let median_ok = median_delta <= delta_threshold + 1e-12;
    Ok(RandsetReport {
        group: g.spec().to_string(),
        order: n,
        k,
        r: order_stats(g).r,
        exact_expectation: exact,
        trials,
        empirical_mean: mean,
        standard_error: se,
        within_four_se,
        median_delta,
        delta_threshold,
        median_ok,
        verdict: within_four_se && median_ok,
    })
}
