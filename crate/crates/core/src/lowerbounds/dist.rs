use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{serialize_q, Q};
use crate::protocols::OneWayProblem;

/// Largest pair count materialized densely.
pub const MAX_DENSE_PAIRS: usize = 1 << 16;

/// An exact distribution on `0..universe`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteDistribution {
    universe: usize,
    support: Vec<usize>,
    #[serde(skip)]
    probabilities: Vec<Q>,
}

impl FiniteDistribution {
    /// Merges repeated points and drops zero weights. Probabilities must be
    /// nonnegative and sum to exactly 1.
    pub fn new(universe: usize, weights: impl IntoIterator<Item = (usize, Q)>) -> Result<Self> {
        let mut merged: BTreeMap<usize, Q> = BTreeMap::new();
        for (x, p) in weights {
            if x >= universe {
                return Err(Error::IndexOutOfRange { index: x, dim: universe });
            }
            if p.is_negative() {
                return Err(Error::InvalidParameter(format!("negative probability {p} at {x}")));
            }
            *merged.entry(x).or_insert_with(Q::zero) += p;
        }
        merged.retain(|_, p| !p.is_zero());
        let total: Q = merged.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidParameter(format!("probabilities sum to {total}, not 1")));
        }
        let (support, probabilities) = merged.into_iter().unzip();
        Ok(Self { universe, support, probabilities })
    }

    /// Uniform on `set` (duplicates collapse).
    pub fn uniform(universe: usize, set: &[usize]) -> Result<Self> {
        let mut pts = set.to_vec();
        pts.sort_unstable();
        pts.dedup();
        if pts.is_empty() {
            return Err(Error::EmptySubset);
        }
        let w = Q::new(BigInt::one(), BigInt::from(pts.len()));
        Self::new(universe, pts.into_iter().map(|x| (x, w.clone())))
    }

    /// Normalizes nonnegative integer weights.
    pub fn from_counts(universe: usize, counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::ZeroProbability(0.0));
        }
        Self::new(
            universe,
            counts.iter().enumerate().map(|(x, &c)| (x, Q::new(BigInt::from(c), BigInt::from(total)))),
        )
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn probabilities(&self) -> &[Q] {
        &self.probabilities
    }

    pub fn probability(&self, x: usize) -> Q {
        match self.support.binary_search(&x) {
            Ok(i) => self.probabilities[i].clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.support.iter().copied().zip(&self.probabilities)
    }

    fn denominator_lcm(&self) -> BigInt {
        self.probabilities.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom()))
    }
}

/// `½ Σ |D(x) − E(x)|`.
pub fn variation_distance(d: &FiniteDistribution, e: &FiniteDistribution) -> Result<Q> {
    if d.universe != e.universe {
        return Err(Error::SupportMismatch(d.universe, e.universe));
    }
    let mut total = Q::zero();
    let (mut i, mut j) = (0, 0);
    while i < d.support.len() || j < e.support.len() {
        let xi = d.support.get(i).copied().unwrap_or(usize::MAX);
        let xj = e.support.get(j).copied().unwrap_or(usize::MAX);
        if xi == xj {
            total += (&d.probabilities[i] - &e.probabilities[j]).abs();
            i += 1;
            j += 1;
        } else if xi < xj {
            total += &d.probabilities[i];
            i += 1;
        } else {
            total += &e.probabilities[j];
            j += 1;
        }
    }
    Ok(total / Q::from_integer(BigInt::from(2)))
}

/// One mixture component: `B(y)` and `A_y`.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub y: usize,
    pub weight: Q,
    pub distribution: FiniteDistribution,
}

/// `D₂(x, z) = Σ_y B(y) A_y(x) A_y(z)` kept in mixture form, together with
/// its marginal `D₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDistribution {
    universe: usize,
    components: Vec<Component>,
    d1: FiniteDistribution,
}

impl PairDistribution {
    /// Components must share a universe and their weights must sum to 1.
    pub fn from_mixture(universe: usize, components: Vec<Component>) -> Result<Self> {
        if components.iter().any(|c| c.distribution.universe != universe) {
            return Err(Error::SupportMismatch(universe, components[0].distribution.universe));
        }
        let total: Q = components.iter().map(|c| &c.weight).sum();
        if !total.is_one() || components.iter().any(|c| c.weight.is_negative()) {
            return Err(Error::InvalidParameter(format!("mixture weights sum to {total}")));
        }
        let components: Vec<Component> = components.into_iter().filter(|c| !c.weight.is_zero()).collect();
        let mut d1: BTreeMap<usize, Q> = BTreeMap::new();
        for c in &components {
            for (x, p) in c.distribution.iter() {
                *d1.entry(x).or_insert_with(Q::zero) += &c.weight * p;
            }
        }
        let d1 = FiniteDistribution::new(universe, d1)?;
        Ok(Self { universe, components, d1 })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn d1(&self) -> &FiniteDistribution {
        &self.d1
    }

    /// `B` as a distribution over the component labels `y`.
    pub fn b(&self, bob_inputs: usize) -> Result<FiniteDistribution> {
        FiniteDistribution::new(bob_inputs, self.components.iter().map(|c| (c.y, c.weight.clone())))
    }

    pub fn d2(&self, x: usize, z: usize) -> Q {
        self.components
            .iter()
            .map(|c| &c.weight * c.distribution.probability(x) * c.distribution.probability(z))
            .sum()
    }

    /// Row-major `D₂` over `universe²` pairs.
    pub fn dense_d2(&self) -> Result<Vec<Q>> {
        let n = self.universe;
        if n.saturating_mul(n) > MAX_DENSE_PAIRS {
            return Err(Error::SizeOverflow(format!("{n}² pairs")));
        }
        let mut out = vec![Q::zero(); n * n];
        for c in &self.components {
            for (x, px) in c.distribution.iter() {
                let wx = &c.weight * px;
                for (z, pz) in c.distribution.iter() {
                    out[x * n + z] += &wx * pz;
                }
            }
        }
        Ok(out)
    }

    /// Both marginals of `D₂` equal `D₁`.
    pub fn marginals_consistent(&self) -> Result<bool> {
        let n = self.universe;
        let d2 = self.dense_d2()?;
        Ok((0..n).all(|x| {
            let row: Q = (0..n).map(|z| &d2[x * n + z]).sum();
            let col: Q = (0..n).map(|z| &d2[z * n + x]).sum();
            let want = self.d1.probability(x);
            row == want && col == want
        }))
    }

    /// `‖D₂ − D₁²‖`, exactly. Uses scaled integer rows when the common
    /// denominator allows it.
    pub fn distance_to_product(&self) -> Q {
        let l_b = self.components.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.weight.denom()));
        let l_a = self.components.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.distribution.denominator_lcm()));
        let l_1 = self.d1.denominator_lcm();
        let den2 = &l_b * &l_a * &l_a;
        let den1 = &l_1 * &l_1;
        let den = den2.lcm(&den1);
        let fits = den.bits() <= 90 && (self.universe as u128).pow(2) < (1u128 << 36);
        if fits {
            if let Some(v) = self.distance_scaled(&den, &den2, &den1, &l_b, &l_a, &l_1) {
                return v;
            }
        }
        self.distance_rational()
    }

    fn distance_scaled(
        &self,
        den: &BigInt,
        den2: &BigInt,
        den1: &BigInt,
        l_b: &BigInt,
        l_a: &BigInt,
        l_1: &BigInt,
    ) -> Option<Q> {
        let n = self.universe;
        let s2 = (den / den2).to_i128()?;
        let s1 = (den / den1).to_i128()?;
        let int = |p: &Q, l: &BigInt| (p.numer() * (l / p.denom())).to_i128();
        let mut by_point: Vec<Vec<(usize, i128)>> = vec![Vec::new(); n];
        let mut comps: Vec<(i128, Vec<(usize, i128)>)> = Vec::with_capacity(self.components.len());
        for (ci, c) in self.components.iter().enumerate() {
            let w = int(&c.weight, l_b)?;
            let pts: Vec<(usize, i128)> =
                c.distribution.iter().map(|(x, p)| Some((x, int(p, l_a)?))).collect::<Option<_>>()?;
            for &(x, a) in &pts {
                by_point[x].push((ci, a));
            }
            comps.push((w, pts));
        }
        let mut d1 = vec![0i128; n];
        for (x, p) in self.d1.iter() {
            d1[x] = int(p, l_1)?;
        }
        let total: i128 = (0..n)
            .into_par_iter()
            .map_init(
                || vec![0i128; n],
                |row, x| {
                    row.iter_mut().for_each(|v| *v = 0);
                    for &(ci, ax) in &by_point[x] {
                        let (w, pts) = &comps[ci];
                        let wx = w * ax;
                        for &(z, az) in pts {
                            row[z] += wx * az;
                        }
                    }
                    let dx = d1[x];
                    row.iter().zip(&d1).map(|(&v, &dz)| (v * s2 - dx * dz * s1).abs()).sum::<i128>()
                },
            )
            .sum();
        Some(Q::new(BigInt::from(total), den * BigInt::from(2)))
    }

    fn distance_rational(&self) -> Q {
        let n = self.universe;
        let mut total = Q::zero();
        for x in 0..n {
            let dx = self.d1.probability(x);
            for z in 0..n {
                total += (self.d2(x, z) - &dx * self.d1.probability(z)).abs();
            }
        }
        total / Q::from_integer(BigInt::from(2))
    }

    /// `Pr_{x∼D₁, y∼B}[f(x, y) = 0]`.
    pub fn probability_f_zero(&self, prob: &OneWayProblem) -> Q {
        let l_b = self.components.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.weight.denom()));
        let l_1 = self.d1.denominator_lcm();
        if (&l_b * &l_1).bits() <= 100 {
            let int = |p: &Q, l: &BigInt| (p.numer() * (l / p.denom())).to_i128();
            let d1: Option<Vec<(usize, i128)>> = self.d1.iter().map(|(x, p)| Some((x, int(p, &l_1)?))).collect();
            let ws: Option<Vec<(usize, i128)>> = self.components.iter().map(|c| Some((c.y, int(&c.weight, &l_b)?))).collect();
            if let (Some(d1), Some(ws)) = (d1, ws) {
                let total: i128 = ws
                    .par_iter()
                    .map(|&(y, w)| {
                        w * d1.iter().filter(|&&(x, _)| prob.value(x, y) == Some(false)).map(|&(_, p)| p).sum::<i128>()
                    })
                    .sum();
                return Q::new(BigInt::from(total), l_b * l_1);
            }
        }
        let mut total = Q::zero();
        for c in &self.components {
            for (x, p) in self.d1.iter() {
                if prob.value(x, c.y) == Some(false) {
                    total += &c.weight * p;
                }
            }
        }
        total
    }
}

/// Exact pair distributions for a total problem: every `A_y` with `B(y) > 0`
/// must be supported inside `{x : f(x, y) = 1}`.
pub fn build_pair_distributions(
    prob: &OneWayProblem,
    family: &[FiniteDistribution],
    b: &FiniteDistribution,
) -> Result<PairDistribution> {
    if !prob.is_total() {
        return Err(Error::PartialFunction(format!(
            "{}: D₁ is not meaningful when f is partial; restrict to a total subproblem",
            prob.id()
        )));
    }
    if family.len() != prob.bob_inputs() || b.universe() != prob.bob_inputs() {
        return Err(Error::DimensionMismatch { expected: prob.bob_inputs(), found: family.len() });
    }
    let mut components = Vec::with_capacity(b.support().len());
    for (y, w) in b.iter() {
        let a = &family[y];
        if a.universe() != prob.alice_inputs() {
            return Err(Error::SupportMismatch(prob.alice_inputs(), a.universe()));
        }
        if let Some(&x) = a.support().iter().find(|&&x| prob.value(x, y) != Some(true)) {
            return Err(Error::InvalidParameter(format!("A_{y} puts mass on x = {x} where f(x, y) ≠ 1")));
        }
        components.push(Component { y, weight: w.clone(), distribution: a.clone() });
    }
    PairDistribution::from_mixture(prob.alice_inputs(), components)
}

/// Summary of a pair distribution for reports.
#[derive(Debug, Clone, Serialize)]
pub struct PairSummary {
    pub universe: usize,
    pub components: usize,
    #[serde(serialize_with = "serialize_q")]
    pub delta: Q,
}
