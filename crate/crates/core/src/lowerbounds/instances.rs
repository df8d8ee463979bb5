use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use super::dist::{build_pair_distributions, variation_distance, FiniteDistribution, PairDistribution};
use crate::error::{Error, Result};
use crate::exact::{q, serialize_q, Q};
use crate::groups::SubsetInstance;
use crate::protocols::{self, OneWayProblem};

/// Hard distributions for the coset problem: `B` uniform over lines
/// `(a, b)`, `A_y` uniform over the `p` points of line `y`.
pub fn coset_family(p: usize) -> Result<(OneWayProblem, Vec<FiniteDistribution>, FiniteDistribution)> {
    let prob = protocols::coset(p)?;
    let n = p * p;
    let family = (0..n)
        .map(|y| {
            let (a, b) = (y / p, y % p);
            let pts: Vec<usize> = (0..p).map(|x1| x1 * p + (a * x1 + b) % p).collect();
            FiniteDistribution::uniform(n, &pts)
        })
        .collect::<Result<Vec<_>>>()?;
    let b = FiniteDistribution::uniform(n, &(0..n).collect::<Vec<_>>())?;
    Ok((prob, family, b))
}

#[derive(Debug, Clone, Serialize)]
pub struct CosetReport {
    pub p: usize,
    #[serde(serialize_with = "serialize_q")]
    pub delta: Q,
    #[serde(serialize_with = "serialize_q")]
    pub closed_form: Q,
    #[serde(serialize_with = "serialize_q")]
    pub probability_f_zero: Q,
    pub delta_matches: bool,
    pub probability_matches: bool,
}

/// Builds the coset distributions and computes `‖D₂ − D₁²‖` and
/// `Pr[f = 0]`, comparing them with `1/p − 1/p²` and `1 − 1/p`.
pub fn coset_report(p: usize) -> Result<CosetReport> {
    if !protocols::is_prime(p as u64) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if p > 101 {
        return Err(Error::InvalidParameter(format!("p = {p} exceeds 101")));
    }
    let (prob, family, b) = coset_family(p)?;
    let pd = build_pair_distributions(&prob, &family, &b)?;
    let pi = p as i64;
    let closed_form = q(1, pi) - q(1, pi * pi);
    let delta = pd.distance_to_product();
    let probability_f_zero = pd.probability_f_zero(&prob);
    Ok(CosetReport {
        p,
        delta_matches: delta == closed_form,
        probability_matches: probability_f_zero == Q::one() - q(1, pi),
        delta,
        closed_form,
        probability_f_zero,
    })
}

/// `1/p − 1/p²`, confirmed against the exact distribution computation.
pub fn coset_delta_exact(p: usize) -> Result<Q> {
    let r = coset_report(p)?;
    if !r.delta_matches {
        return Err(Error::InvalidState(format!("coset p = {p}: computed {} ≠ {}", r.delta, r.closed_form)));
    }
    Ok(r.delta)
}

/// `B` uniform over `G`, `A_y` uniform over `{x : xy ∈ S}`.
pub fn subset_family(inst: &SubsetInstance) -> Result<(OneWayProblem, Vec<FiniteDistribution>, FiniteDistribution)> {
    let g = inst.group();
    let n = g.order();
    let prob = protocols::subset(inst);
    let family = (0..n)
        .map(|y| {
            let yi = g.inverse(y);
            let pts: Vec<usize> = inst.set().iter().map(|&s| g.op(s, yi)).collect();
            FiniteDistribution::uniform(n, &pts)
        })
        .collect::<Result<Vec<_>>>()?;
    let b = FiniteDistribution::uniform(n, &(0..n).collect::<Vec<_>>())?;
    Ok((prob, family, b))
}

/// `M`: law of `s t⁻¹` for independent uniform `s, t ∈ S`.
pub fn difference_distribution(inst: &SubsetInstance) -> Result<FiniteDistribution> {
    let g = inst.group();
    let mut counts = vec![0u64; g.order()];
    for &s in inst.set() {
        for &t in inst.set() {
            counts[g.op(s, g.inverse(t))] += 1;
        }
    }
    FiniteDistribution::from_counts(g.order(), &counts)
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsetDelta {
    /// `Δ = ‖M − D₁‖`.
    #[serde(serialize_with = "serialize_q")]
    pub delta: Q,
    /// `‖D₂ − D₁²‖` from the pair distributions.
    #[serde(serialize_with = "serialize_q")]
    pub pair_delta: Q,
    pub equality_verdict: bool,
    #[serde(serialize_with = "serialize_q")]
    pub probability_f_zero: Q,
}

pub fn subset_delta(inst: &SubsetInstance) -> Result<SubsetDelta> {
    let g = inst.group();
    if g.order() > 1024 {
        return Err(Error::InvalidParameter(format!("|G| = {} exceeds 1024", g.order())));
    }
    let m = difference_distribution(inst)?;
    let d1 = FiniteDistribution::uniform(g.order(), &g.elements().collect::<Vec<_>>())?;
    let delta = variation_distance(&m, &d1)?;
    let (prob, family, b) = subset_family(inst)?;
    let pd: PairDistribution = build_pair_distributions(&prob, &family, &b)?;
    let pair_delta = pd.distance_to_product();
    let probability_f_zero = pd.probability_f_zero(&prob);
    Ok(SubsetDelta { equality_verdict: delta == pair_delta, delta, pair_delta, probability_f_zero })
}

/// `Δ` for the subgroup case: `1 − |H|/|G|`.
pub fn subgroup_delta(h_len: usize, order: usize) -> Q {
    Q::one() - Q::new(BigInt::from(h_len), BigInt::from(order))
}
