use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::exact::{to_f64, Exact, Q};

/// Polynomial with exact rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Exact> = self.coeffs.iter().cloned().map(Exact).collect();
        v.serialize(s)
    }
}

impl Poly {
    pub fn new(coeffs: Vec<Q>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Q::from_integer(BigInt::from(c))).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `Π (x − r)`.
    pub fn from_roots(roots: &[Q]) -> Self {
        roots.iter().fold(Self::constant(Q::one()), |acc, r| acc * Self::new(vec![-r.clone(), Q::one()]))
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn nth_derivative(&self, m: usize) -> Self {
        (0..m).fold(self.clone(), |p, _| p.derivative())
    }

    /// `p(a·x + b)`.
    pub fn compose_linear(&self, a: &Q, b: &Q) -> Self {
        let lin = Self::new(vec![b.clone(), a.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| acc * lin.clone() + Self::constant(c.clone()))
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap() / &lead;
            for (i, c) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &f * c;
            }
            quot[k] = f;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            let l = a.leading();
            a.scale(&(Q::one() / l))
        }
    }

    /// Exact Lagrange interpolation through `(xs[i], ys[i])`.
    pub fn interpolate(xs: &[Q], ys: &[Q]) -> Self {
        assert_eq!(xs.len(), ys.len());
        let mut out = Self::zero();
        for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Self::constant(Q::one());
            let mut den = Q::one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    basis = basis * Self::new(vec![-xj.clone(), Q::one()]);
                    den *= xi - xj;
                }
            }
            out = out + basis.scale(&(yi / den));
        }
        out
    }

    /// Drops trailing coefficients with `|c| < tol`.
    pub fn truncate_small(&self, tol: f64) -> Self {
        let mut c = self.coeffs.clone();
        while c.last().is_some_and(|x| to_f64(x).abs() < tol) {
            c.pop();
        }
        Self::new(c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, o: Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_else(Q::zero) + o.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
                })
                .collect(),
        )
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, o: Poly) -> Poly {
        self + (-o)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, o: Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

fn sign(q: &Q) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

struct Sturm {
    chain: Vec<Poly>,
}

impl Sturm {
    fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        while !chain.last().unwrap().is_zero() {
            let n = chain.len();
            let r = chain[n - 2].div_rem(&chain[n - 1]).1;
            chain.push(-r);
        }
        chain.pop();
        Self { chain }
    }

    fn variations(&self, x: &Q) -> usize {
        let signs: Vec<i32> = self.chain.iter().map(|p| sign(&p.eval(x))).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Distinct roots in `(a, b]`.
    fn count(&self, a: &Q, b: &Q) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Random polynomial of exact degree `degree` with coefficients `a/b`,
/// `|a| ≤ 10`, `1 ≤ b ≤ 10`.
pub fn random_poly<R: rand::Rng + ?Sized>(degree: usize, rng: &mut R) -> Poly {
    let mut coeffs: Vec<Q> = (0..=degree)
        .map(|_| Q::new(BigInt::from(rng.random_range(-10i64..=10)), BigInt::from(rng.random_range(1i64..=10))))
        .collect();
    if coeffs[degree].is_zero() {
        coeffs[degree] = Q::one();
    }
    Poly::new(coeffs)
}

/// Isolates every real root of `p` in `[lo, hi]` to width at most `width`,
/// returning the interval midpoints in increasing order.
pub fn real_roots(p: &Poly, lo: &Q, hi: &Q, width: &Q) -> Vec<Q> {
    if p.is_zero() || p.degree() == Some(0) {
        return Vec::new();
    }
    let sq = p.div_rem(&p.gcd(&p.derivative())).0;
    let sturm = Sturm::new(&sq);
    let mut roots = Vec::new();
    if sq.eval(lo).is_zero() {
        roots.push(lo.clone());
    }
    let two = Q::from_integer(BigInt::from(2));
    let mut stack = vec![(lo.clone(), hi.clone())];
    let mut isolated = Vec::new();
    while let Some((a, b)) = stack.pop() {
        match sturm.count(&a, &b) {
            0 => {}
            1 => isolated.push((a, b)),
            _ => {
                let m = (&a + &b) / &two;
                stack.push((m.clone(), b));
                stack.push((a, m));
            }
        }
    }
    for (mut a, mut b) in isolated {
        if sq.eval(&b).is_zero() {
            roots.push(b);
            continue;
        }
        let sb = sign(&sq.eval(&b));
        while &b - &a > *width {
            let m = (&a + &b) / &two;
            let sm = sign(&sq.eval(&m));
            if sm == 0 {
                a = m.clone();
                b = m;
                break;
            }
            if sm == sb {
                b = m;
            } else {
                a = m;
            }
        }
        roots.push((a + b) / &two);
    }
    roots.sort();
    roots.dedup();
    roots
}

/// `max_{x ∈ [0, n]} |p^{(m)}(x)|`, with the maximizer taken among the
/// endpoints and the roots of `p^{(m+1)}` isolated to width `2^{-40}·n`.
pub fn sup_norm(p: &Poly, n: &Q, m: usize) -> Q {
    let q = p.nth_derivative(m);
    if q.is_zero() {
        return Q::zero();
    }
    let zero = Q::zero();
    let width = n / Q::from_integer(BigInt::one() << 40usize);
    let mut best = q.eval(&zero).abs().max(q.eval(n).abs());
    for r in real_roots(&q.derivative(), &zero, n, &width) {
        best = best.max(q.eval(&r).abs());
    }
    best
}
