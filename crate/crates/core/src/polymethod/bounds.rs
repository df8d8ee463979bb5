use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::{sup_norm, Poly};
use crate::error::{Error, Result};
use crate::exact::{qi, serialize_q, to_f64, Q};

pub const MAX_CHEBYSHEV_DEGREE: usize = 64;

/// `T_d` from `T_{k+1} = 2x T_k − T_{k−1}`.
pub fn chebyshev(d: usize) -> Poly {
    let (mut a, mut b) = (Poly::from_i64(&[1]), Poly::x());
    if d == 0 {
        return a;
    }
    for _ in 1..d {
        let next = Poly::from_i64(&[0, 2]) * b.clone() - a;
        a = b;
        b = next;
    }
    b
}

/// `T_d^{(m)}(1) = Π_{k<m} (d² − k²) / (2k + 1)`.
pub fn chebyshev_derivative_at_one(d: usize, m: usize) -> Q {
    if m > d {
        return Q::zero();
    }
    (0..m as i64).fold(Q::one(), |acc, k| acc * qi(d as i64 * d as i64 - k * k) / qi(2 * k + 1))
}

#[derive(Debug, Clone, Serialize)]
pub struct ChebyshevTools {
    pub d: usize,
    pub m: usize,
    pub polynomial: Poly,
    /// `T_d^{(m)}(1)` from differentiating the recurrence-built polynomial.
    #[serde(serialize_with = "serialize_q")]
    pub derivative_at_one: Q,
    #[serde(serialize_with = "serialize_q")]
    pub closed_form: Q,
    pub matches: bool,
}

pub fn chebyshev_tools(d: usize, m: usize) -> Result<ChebyshevTools> {
    if d > MAX_CHEBYSHEV_DEGREE {
        return Err(Error::InvalidParameter(format!("d = {d} exceeds {MAX_CHEBYSHEV_DEGREE}")));
    }
    let polynomial = chebyshev(d);
    let derivative_at_one = polynomial.nth_derivative(m).eval(&Q::one());
    let closed_form = chebyshev_derivative_at_one(d, m);
    Ok(ChebyshevTools { d, m, matches: derivative_at_one == closed_form, polynomial, derivative_at_one, closed_form })
}

/// `T_d` moved from `[−1, 1]` to `[0, n]`.
pub fn rescaled_chebyshev(d: usize, n: &Q) -> Poly {
    chebyshev(d).compose_linear(&(qi(2) / n), &qi(-1))
}

/// `1·3·5⋯(2m−1)`.
pub fn double_factorial_odd(m: usize) -> Q {
    (0..m as i64).fold(Q::one(), |acc, k| acc * qi(2 * k + 1))
}

pub fn factorial(m: usize) -> Q {
    (1..=m as i64).fold(Q::one(), |acc, k| acc * qi(k))
}

fn exact_sqrt(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (x.numer().sqrt(), x.denom().sqrt());
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Q::new(n, d))
}

#[derive(Debug, Clone, Serialize)]
pub struct MarkovBounds {
    /// `√((N / 2r₀)·((2m−1)!!·r_m)^{1/m})`; at `m = 1` this is
    /// `√(N r₁ / 2r₀)`.
    pub aa_lower_degree: f64,
    /// `(2r₀/N)^m · T_d^{(m)}(1)`.
    #[serde(serialize_with = "serialize_q")]
    pub va_rhs: Q,
}

pub fn markov_bounds(r0: &Q, rm: &Q, n: &Q, d: usize, m: usize) -> Result<MarkovBounds> {
    if !r0.is_positive() {
        return Err(Error::InvalidParameter(format!("r0 = {r0} must be positive")));
    }
    if !n.is_positive() || m == 0 || rm.is_negative() {
        return Err(Error::InvalidParameter("need N > 0, m ≥ 1 and r_m ≥ 0".into()));
    }
    let ratio = n / (qi(2) * r0);
    let inner = double_factorial_odd(m) * rm;
    let aa_lower_degree = if m == 1 {
        let radicand = &ratio * &inner;
        exact_sqrt(&radicand).map_or_else(|| to_f64(&radicand).sqrt(), |s| to_f64(&s))
    } else {
        (to_f64(&ratio) * to_f64(&inner).powf(1.0 / m as f64)).sqrt()
    };
    let base = qi(2) * r0 / n;
    let va_rhs = (0..m).fold(Q::one(), |acc, _| acc * &base) * chebyshev_derivative_at_one(d, m);
    Ok(MarkovBounds { aa_lower_degree, va_rhs })
}

#[derive(Debug, Clone, Serialize)]
pub struct FloorCheckRow {
    pub m: usize,
    pub sup: f64,
    pub floor: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FloorCheck {
    pub rows: Vec<FloorCheckRow>,
    pub verdict: bool,
}

/// For `p` with `p(0) = ⋯ = p(K−1) = 0` and `p(K) = δ > 0`, checks
/// `max_{[0,N]} |p^{(m)}| ≥ δ/m!` for `m = 0..=K`.
pub fn derivative_floor_check(p: &Poly, k: usize, delta: &Q, n: &Q) -> Result<FloorCheck> {
    if !delta.is_positive() {
        return Err(Error::Precondition(format!("δ = {delta} must be positive")));
    }
    if *n < qi(k as i64) {
        return Err(Error::Precondition(format!("interval [0, {n}] does not contain K = {k}")));
    }
    if let Some(i) = (0..k as i64).find(|&i| !p.eval(&qi(i)).is_zero()) {
        return Err(Error::Precondition(format!("p({i}) ≠ 0")));
    }
    if p.eval(&qi(k as i64)) != *delta {
        return Err(Error::Precondition(format!("p({k}) ≠ δ")));
    }
    let rows: Vec<FloorCheckRow> = (0..=k)
        .map(|m| {
            let sup = to_f64(&sup_norm(p, n, m));
            let floor = to_f64(&(delta / factorial(m)));
            FloorCheckRow { m, sup, floor, holds: sup >= floor - 1e-12 }
        })
        .collect();
    Ok(FloorCheck { verdict: rows.iter().all(|r| r.holds), rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Markov,
    Factorial,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeBound {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "K")]
    pub k: u64,
    pub delta: f64,
    pub r0: f64,
    pub value: f64,
    pub branch: Branch,
}

/// `r₀ ≥ 2`: `√(N(r₀−1)/r₀)`; otherwise
/// `√((N/4)·((2K−1)!!·δ/K!)^{1/K})`.
pub fn degree_lower_bound(n: u64, k: u64, delta: f64, r0: f64) -> Result<DegreeBound> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidParameter(format!("δ = {delta} outside (0, 1]")));
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("K = {k} must lie in 1..=N")));
    }
    let nf = n as f64;
    let (value, branch) = if r0 >= 2.0 {
        ((nf * (r0 - 1.0) / r0).sqrt(), Branch::Markov)
    } else {
        let ratio = to_f64(&(double_factorial_odd(k as usize) / factorial(k as usize))) * delta;
        ((nf / 4.0 * ratio.powf(1.0 / k as f64)).sqrt(), Branch::Factorial)
    };
    Ok(DegreeBound { n, k, delta, r0, value, branch })
}

/// Largest `δ` compatible with degree `≤ 2T`: `(16T²/N)^K · K!/(2K−1)!!`
/// when `2T < √(N/2)`, else 1. Capped at 1.
pub fn direct_product_bound(n: u64, k: u64, t: u64) -> f64 {
    if k == 0 {
        return 1.0;
    }
    let (nf, tf) = (n as f64, t as f64);
    if 2.0 * tf >= (nf / 2.0).sqrt() {
        return 1.0;
    }
    let ratio = to_f64(&(factorial(k as usize) / double_factorial_odd(k as usize)));
    ((16.0 * tf * tf / nf).powi(k as i32) * ratio).min(1.0)
}
