use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bounds::direct_product_bound;
use crate::error::{Error, Result};
use crate::rng::stream;

pub const MAX_ITEMS: usize = 1 << 10;
pub const MAX_MARKED: usize = 8;

#[derive(Debug, Clone, Serialize)]
pub struct GroverReport {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub schedule: Vec<usize>,
    /// Grover iterations summed over stages.
    pub total_queries: usize,
    pub trials: usize,
    pub successes: usize,
    pub empirical: f64,
    pub standard_error: f64,
    /// `Π_s sin²((2t_s + 1) θ_s)` with `sin² θ_s = (K − s)/(N − s)`.
    pub exact: f64,
    pub bound: f64,
    pub verdict: bool,
}

/// Success probability of stage `s` run for `t` iterations.
pub fn stage_probability(n: usize, k: usize, s: usize, t: usize) -> f64 {
    let theta = (((k - s) as f64) / ((n - s) as f64)).sqrt().asin();
    ((2 * t + 1) as f64 * theta).sin().powi(2)
}

/// One stage on the items still in play. Returns the measured position.
fn stage<R: Rng + ?Sized>(marked: &[bool], t: usize, rng: &mut R) -> usize {
    let m = marked.len();
    let mut amp = vec![1.0 / (m as f64).sqrt(); m];
    for _ in 0..t {
        for (a, &mk) in amp.iter_mut().zip(marked) {
            if mk {
                *a = -*a;
            }
        }
        let mean = amp.iter().sum::<f64>() / m as f64;
        for a in amp.iter_mut() {
            *a = 2.0 * mean - *a;
        }
    }
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, a) in amp.iter().enumerate() {
        acc += a * a;
        if u < acc {
            return i;
        }
    }
    m - 1
}

/// Finds `K` marked items among `N` by amplitude amplification, removing
/// each found item. Stage `s` runs `schedule[s]` iterations and measures;
/// an unmarked answer ends the trial.
pub fn grover_find_all(n: usize, k: usize, schedule: &[usize], seed: u64, trials: usize) -> Result<GroverReport> {
    if n == 0 || n > MAX_ITEMS {
        return Err(Error::InvalidParameter(format!("N = {n} outside 1..={MAX_ITEMS}")));
    }
    if k > MAX_MARKED || k > n {
        return Err(Error::InvalidParameter(format!("K = {k} must be ≤ min(N, {MAX_MARKED})")));
    }
    if schedule.len() != k {
        return Err(Error::InvalidParameter(format!("schedule has {} stages, need K = {k}", schedule.len())));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let total_queries = schedule.iter().sum::<usize>();
    if total_queries > n {
        return Err(Error::InvalidParameter(format!("{total_queries} queries exceed the budget N = {n}")));
    }
    if k > 0 && total_queries == 0 {
        return Err(Error::InvalidParameter("schedule makes no queries".into()));
    }
    let successes = (0..trials)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = stream(seed, i as u64);
            let mut marked = vec![false; n];
            for j in sample(&mut rng, n, k) {
                marked[j] = true;
            }
            for &t in schedule {
                let pos = stage(&marked, t, &mut rng);
                if !marked[pos] {
                    return false;
                }
                marked.remove(pos);
            }
            true
        })
        .count();
    let empirical = successes as f64 / trials as f64;
    let standard_error = (empirical * (1.0 - empirical) / trials as f64).sqrt();
    let exact = schedule.iter().enumerate().map(|(s, &t)| stage_probability(n, k, s, t)).product();
    let bound = if k == 0 { 1.0 } else { direct_product_bound(n as u64, k as u64, total_queries as u64) };
    Ok(GroverReport {
        n,
        k,
        schedule: schedule.to_vec(),
        total_queries,
        trials,
        successes,
        empirical,
        standard_error,
        exact,
        bound,
        verdict: empirical <= bound + 4.0 * standard_error,
    })
}

/// `⌊π/(4θ)⌋` iterations per stage, the usual near-optimal count.
pub fn standard_schedule(n: usize, k: usize) -> Vec<usize> {
    (0..k)
        .map(|s| {
            let theta = (((k - s) as f64) / ((n - s) as f64)).sqrt().asin();
            (std::f64::consts::FRAC_PI_4 / theta).floor() as usize
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_target_set() {
        let r = grover_find_all(16, 0, &[], 1, 10).unwrap();
        assert_eq!(r.empirical, 1.0);
        assert!(r.verdict);
    }

    #[test]
    fn four_items_one_iteration() {
        let r = grover_find_all(4, 1, &[1], 2, 500).unwrap();
        assert_eq!(r.empirical, 1.0);
        assert!((r.exact - 1.0).abs() < 1e-12);
        assert_eq!(r.bound, 1.0);
    }

    #[test]
    fn starved_schedule_under_bound() {
        let r = grover_find_all(64, 2, &[1, 1], 7, 4000).unwrap();
        assert!(r.verdict, "{r:?}");
        assert!((r.bound - 2.0 / 3.0).abs() < 1e-12);
        assert!((r.empirical - r.exact).abs() < 5.0 * r.standard_error.max(1e-3));
    }

    #[test]
    fn schedule_errors() {
        assert!(grover_find_all(64, 2, &[1], 0, 10).is_err());
        assert!(grover_find_all(16, 1, &[20], 0, 10).is_err());
        assert!(grover_find_all(2048, 1, &[1], 0, 10).is_err());
        assert!(grover_find_all(64, 2, &[0, 0], 0, 10).is_err());
    }

    #[test]
    fn standard_schedule_finds_all() {
        let s = standard_schedule(256, 3);
        let r = grover_find_all(256, 3, &s, 4, 1000).unwrap();
        assert!(r.exact > 0.9);
        assert!(r.verdict);
    }
}
