use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::SubsetInstance;
use crate::rng::stream;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&p| is_prime(p)).collect()
}

fn bits(v: u64) -> usize {
    (64 - v.leading_zeros()) as usize
}

/// Alice's message `(p, x mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub prime: u64,
    pub residue: u64,
}

/// Empirical acceptance over seeded trials.
#[derive(Debug, Clone, Serialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub accepts: usize,
    pub rate: f64,
}

fn run_trials(trials: usize, seed: u64, once: impl Fn(&mut crate::rng::StreamRng) -> bool + Sync) -> TrialSummary {
    let accepts = (0..trials as u64).into_par_iter().filter(|&i| once(&mut stream(seed, i))).count();
    TrialSummary { trials, accepts, rate: if trials == 0 { 0.0 } else { accepts as f64 / trials as f64 } }
}

/// Classical equality fingerprinting with a uniform prime from
/// `[t·n², 2t·n²]`.
#[derive(Debug, Clone, Serialize)]
pub struct EqualityFingerprint {
    pub n: usize,
    pub t: u64,
    pub lo: u64,
    pub hi: u64,
    pub primes: Vec<u64>,
    /// Worst-case false-accept bound `⌊n / log₂ lo⌋ / #primes`.
    pub error_bound: f64,
    pub message_bits: usize,
    pub seed: u64,
}

pub fn equality_fingerprint(n: usize, target_error: f64, seed: u64) -> Result<EqualityFingerprint> {
    if n == 0 || n > 32 {
        return Err(Error::InvalidParameter(format!("equality fingerprint needs 1 ≤ n ≤ 32, got {n}")));
    }
    if !(target_error > 0.0 && target_error < 1.0) {
        return Err(Error::InvalidParameter(format!("target error {target_error}")));
    }
    let n2 = (n * n) as u64;
    for t in 1u64.. {
        let (lo, hi) = (t * n2, 2 * t * n2);
        let primes = primes_in(lo, hi);
        if primes.is_empty() {
            continue;
        }
        // a nonzero |x − y| < 2^n has fewer than n / log₂(lo) prime factors ≥ lo
        let divisors = (n as f64 / (lo.max(2) as f64).log2()).floor();
        let error_bound = divisors / primes.len() as f64;
        if error_bound <= target_error {
            let message_bits = 2 * bits(hi);
            return Ok(EqualityFingerprint { n, t, lo, hi, primes, error_bound, message_bits, seed });
        }
        if t > 1 << 20 {
            break;
        }
    }
    Err(Error::InvalidParameter("no prime range reaches the target error".into()))
}

impl EqualityFingerprint {
    pub fn message<R: Rng + ?Sized>(&self, x: u64, rng: &mut R) -> Fingerprint {
        let prime = self.primes[rng.random_range(0..self.primes.len())];
        Fingerprint { prime, residue: x % prime }
    }

    pub fn accept(&self, msg: Fingerprint, y: u64) -> bool {
        y % msg.prime == msg.residue
    }

    /// Exact acceptance probability over the prime draw.
    pub fn accept_probability(&self, x: u64, y: u64) -> f64 {
        let hits = self.primes.iter().filter(|&&p| x % p == y % p).count();
        hits as f64 / self.primes.len() as f64
    }

    /// Trial `i` draws its prime from stream `(seed, i)`.
    pub fn simulate(&self, x: u64, y: u64, trials: usize) -> TrialSummary {
        run_trials(trials, self.seed, |rng| self.accept(self.message(x, rng), y))
    }
}

/// Subset fingerprinting: uniform prime from `[|S|² log₂²|G|, 2|S|² log₂²|G|]`;
/// Bob accepts iff some `z` with `zy ∈ S` has `z ≡ x (mod p)`.
#[derive(Debug, Clone, Serialize)]
pub struct SubsetFingerprint {
    #[serde(skip)]
    pub instance: SubsetInstance,
    pub lo: u64,
    pub hi: u64,
    pub primes: Vec<u64>,
    pub message_bits: usize,
    pub seed: u64,
}

pub fn subset_fingerprint(inst: &SubsetInstance, seed: u64) -> Result<SubsetFingerprint> {
    let order = inst.group().order();
    let s = inst.set().len() as f64;
    let log_g = (order.max(2) as f64).log2();
    let lo = (s * s * log_g * log_g).ceil().max(2.0) as u64;
    let hi = 2 * lo;
    let primes = primes_in(lo, hi);
    if primes.is_empty() {
        return Err(Error::InvalidParameter(format!("no prime in [{lo}, {hi}]")));
    }
    Ok(SubsetFingerprint { instance: inst.clone(), lo, hi, message_bits: 2 * bits(hi), primes, seed })
}

impl SubsetFingerprint {
    pub fn message<R: Rng + ?Sized>(&self, x: usize, rng: &mut R) -> Fingerprint {
        let prime = self.primes[rng.random_range(0..self.primes.len())];
        Fingerprint { prime, residue: x as u64 % prime }
    }

    pub fn accept(&self, msg: Fingerprint, y: usize) -> bool {
        let g = self.instance.group();
        g.elements()
            .filter(|&z| self.instance.contains(g.op(z, y)))
            .any(|z| z as u64 % msg.prime == msg.residue)
    }

    pub fn accept_probability(&self, x: usize, y: usize) -> f64 {
        let hits = self
            .primes
            .iter()
            .filter(|&&p| self.accept(Fingerprint { prime: p, residue: x as u64 % p }, y))
            .count();
        hits as f64 / self.primes.len() as f64
    }

    pub fn simulate(&self, x: usize, y: usize, trials: usize) -> TrialSummary {
        run_trials(trials, self.seed, |rng| self.accept(self.message(x, rng), y))
    }
}
