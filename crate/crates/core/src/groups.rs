//! Explicit finite abelian groups built from cyclic factors.
//!
//! Elements are the integers `0..order`. A direct product `Z_{n1} × … × Z_{nk}`
//! encodes `(a1, …, ak)` in mixed radix with the first factor most
//! significant, so `z3xz4` maps `(a, b)` to `4a + b`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Symmetries of the `m`-gon, order `2m`; `a^i x^j` is encoded `2i + j`.
    Dihedral(usize),
    /// `⟨a, x | a^{2m} = 1, x² = a^m, x a x⁻¹ = a⁻¹⟩`, order `4m`; `a^i x^j`
    /// is encoded `2i + j`.
    Dicyclic(usize),
    /// Permutations of `n` points in lexicographic order.
    Symmetric(usize),
    /// Even permutations of `n` points in lexicographic order.
    Alternating(usize),
    DirectProduct(Vec<GroupSpec>),
}

impl GroupSpec {
    fn factors(&self, out: &mut Vec<GroupSpec>) {
        match self {
            GroupSpec::DirectProduct(parts) => parts.iter().for_each(|p| p.factors(out)),
            other => out.push(other.clone()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `z5`, `z3^2`, `z2^4`, `z3xz4`, `z2^2xz3`, and the nonabelian
    /// factors `d4`, `dic3`, `s3`, `a4`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGroupSpec(s.to_string());
        let mut factors = Vec::new();
        for part in s.trim().to_ascii_lowercase().split('x') {
            let (body, power) = match part.split_once('^') {
                Some((b, p)) => (b, p.parse::<usize>().map_err(|_| bad())?),
                None => (part, 1),
            };
            let split = body.find(|ch: char| ch.is_ascii_digit()).ok_or_else(bad)?;
            let (name, num) = body.split_at(split);
            let n = num.parse::<usize>().map_err(|_| bad())?;
            let factor = match name {
                "z" => GroupSpec::Cyclic(n),
                "d" => GroupSpec::Dihedral(n),
                "dic" => GroupSpec::Dicyclic(n),
                "s" => GroupSpec::Symmetric(n),
                "a" => GroupSpec::Alternating(n),
                _ => return Err(bad()),
            };
            if n == 0 || power == 0 {
                return Err(bad());
            }
            factors.extend(std::iter::repeat_n(factor, power));
        }
        Ok(match factors.len() {
            1 => factors.pop().unwrap(),
            _ => GroupSpec::DirectProduct(factors),
        })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "z{n}"),
            GroupSpec::Dihedral(n) => write!(f, "d{n}"),
            GroupSpec::Dicyclic(n) => write!(f, "dic{n}"),
            GroupSpec::Symmetric(n) => write!(f, "s{n}"),
            GroupSpec::Alternating(n) => write!(f, "a{n}"),
            GroupSpec::DirectProduct(parts) => {
                let names: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", names.join("x"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Factor {
    Cyclic(usize),
    Table { order: usize, table: Vec<usize>, inverses: Vec<usize> },
}

impl Factor {
    fn order(&self) -> usize {
        match self {
            Factor::Cyclic(m) => *m,
            Factor::Table { order, .. } => *order,
        }
    }

    fn op(&self, a: usize, b: usize) -> usize {
        match self {
            Factor::Cyclic(m) => (a + b) % m,
            Factor::Table { order, table, .. } => table[a * order + b],
        }
    }

    fn inverse(&self, a: usize) -> usize {
        match self {
            Factor::Cyclic(m) => (m - a) % m,
            Factor::Table { inverses, .. } => inverses[a],
        }
    }

    fn from_op(order: usize, op: impl Fn(usize, usize) -> usize) -> Self {
        let table: Vec<usize> = (0..order * order).map(|k| op(k / order, k % order)).collect();
        let inverses = (0..order).map(|a| (0..order).find(|&b| table[a * order + b] == 0).unwrap_or(0)).collect();
        Factor::Table { order, table, inverses }
    }

    /// Table factors are capped at 120 elements.
    fn build(spec: &GroupSpec) -> Result<Self> {
        let too_big = |o: usize| Error::OrderOverflow(o);
        match *spec {
            GroupSpec::Cyclic(n) => Ok(Factor::Cyclic(n)),
            GroupSpec::Dihedral(m) => {
                if 2 * m > 120 {
                    return Err(too_big(2 * m));
                }
                Ok(Factor::from_op(2 * m, |p, q| {
                    let (i, j, k, l) = (p / 2, p % 2, q / 2, q % 2);
                    let rot = if j == 0 { (i + k) % m } else { (i + m - k) % m };
                    2 * rot + (j ^ l)
                }))
            }
            GroupSpec::Dicyclic(m) => {
                let n2 = 2 * m;
                if 4 * m > 120 {
                    return Err(too_big(4 * m));
                }
                Ok(Factor::from_op(4 * m, |p, q| {
                    let (i, j, k, l) = (p / 2, p % 2, q / 2, q % 2);
                    if j == 0 {
                        2 * ((i + k) % n2) + l
                    } else {
                        // a^i x a^k x^l = a^{i−k} x^{1+l}, with x² = a^m
                        let extra = if l == 1 { m } else { 0 };
                        2 * ((i + n2 - k + extra) % n2) + (1 - l)
                    }
                }))
            }
            GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) => {
                if n > 5 {
                    return Err(too_big((1..=n).product()));
                }
                let even_only = matches!(spec, GroupSpec::Alternating(_));
                let perms: Vec<Vec<usize>> =
                    permutations(n).into_iter().filter(|p| !even_only || parity(p) == 0).collect();
                let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
                Ok(Factor::from_op(perms.len(), |a, b| {
                    // (a·b)(i) = a(b(i))
                    let c: Vec<usize> = perms[b].iter().map(|&i| perms[a][i]).collect();
                    index(&c)
                }))
            }
            GroupSpec::DirectProduct(_) => unreachable!("flattened"),
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

fn parity(p: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            inv += usize::from(p[i] > p[j]);
        }
    }
    inv % 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    spec: GroupSpec,
    factors: Vec<Factor>,
    order: usize,
}

impl FiniteGroup {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        let mut specs = Vec::new();
        spec.factors(&mut specs);
        if specs.is_empty() {
            return Err(Error::InvalidGroupSpec(spec.to_string()));
        }
        let mut factors = Vec::with_capacity(specs.len());
        let mut order = 1usize;
        for s in &specs {
            let bad_size = match *s {
                GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n) | GroupSpec::Dicyclic(n) => n == 0,
                GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) => n == 0,
                GroupSpec::DirectProduct(_) => true,
            };
            if bad_size {
                return Err(Error::InvalidGroupSpec(spec.to_string()));
            }
            let f = Factor::build(s)?;
            order = order.saturating_mul(f.order());
            factors.push(f);
        }
        if order > MAX_ORDER {
            return Err(Error::OrderOverflow(order));
        }
        let g = Self { spec, factors, order };
        g.verify_axioms()?;
        Ok(g)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(GroupSpec::Cyclic(n))
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(s.parse()?)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn is_abelian(&self) -> bool {
        self.factors.iter().all(|f| match f {
            Factor::Cyclic(_) => true,
            Factor::Table { order, table, .. } => {
                (0..*order).all(|a| (0..*order).all(|b| table[a * order + b] == table[b * order + a]))
            }
        })
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Mixed-radix digits, first factor first.
    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        let mut digits = vec![0; self.factors.len()];
        for (k, f) in self.factors.iter().enumerate().rev() {
            digits[k] = x % f.order();
            x /= f.order();
        }
        digits
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.factors).fold(0, |acc, (&d, f)| acc * f.order() + d % f.order())
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut scale = 1;
        for f in self.factors.iter().rev() {
            let m = f.order();
            out += f.op(a % m, b % m) * scale;
            a /= m;
            b /= m;
            scale *= m;
        }
        out
    }

    pub fn inverse(&self, a: usize) -> usize {
        let mut a = a;
        let mut out = 0;
        let mut scale = 1;
        for f in self.factors.iter().rev() {
            let m = f.order();
            out += f.inverse(a % m) * scale;
            a /= m;
            scale *= m;
        }
        out
    }

    /// Smallest `k ≥ 1` with `a^k = e`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    /// Left translate `gS`, sorted.
    pub fn translate(&self, g: usize, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&s| self.op(g, s)).collect();
        out.sort_unstable();
        out
    }

    /// Identity and inverse laws on every element, closure, and full-table
    /// associativity for orders up to 64. Table factors are always checked
    /// in full.
    pub fn verify_axioms(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::InvalidGroupSpec(format!("{}: {what}", self.spec)));
        for f in &self.factors {
            if let Factor::Table { order, .. } = f {
                if !table_is_group(f, *order) {
                    return fail("factor table is not a group");
                }
            }
        }
        let n = self.order;
        for a in 0..n {
            if self.op(a, 0) != a || self.op(0, a) != a {
                return fail("identity law");
            }
            let inv = self.inverse(a);
            if inv >= n || self.op(a, inv) != 0 || self.op(inv, a) != 0 {
                return fail("inverse law");
            }
        }
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.op(a, b);
                    if ab >= n {
                        return fail("closure");
                    }
                    for c in 0..n {
                        if self.op(ab, c) != self.op(a, self.op(b, c)) {
                            return fail("associativity");
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn table_is_group(f: &Factor, n: usize) -> bool {
    (0..n).all(|a| {
        f.op(a, 0) == a
            && f.op(0, a) == a
            && f.op(a, f.inverse(a)) == 0
            && (0..n).all(|b| (0..n).all(|c| f.op(f.op(a, b), c) == f.op(a, f.op(b, c))))
    })
}

impl FromStr for FiniteGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FiniteGroup::parse(s)
    }
}

/// Every group of order at most 12 up to isomorphism.
pub fn small_groups() -> Vec<FiniteGroup> {
    [
        "z1", "z2", "z3", "z4", "z2^2", "z5", "z6", "s3", "z7", "z8", "z4xz2", "z2^3", "d4", "dic2", "z9", "z3^2",
        "z10", "d5", "z11", "z12", "z2xz6", "d6", "a4", "dic3",
    ]
    .iter()
    .map(|s| FiniteGroup::parse(s).expect("built-in spec"))
    .collect()
}

/// Element orders and the count `r` of involutions (`r' = |G| − r − 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderStats {
    pub orders: Vec<usize>,
    pub r: usize,
    pub r_prime: usize,
}

pub fn order_stats(g: &FiniteGroup) -> OrderStats {
    let orders: Vec<usize> = g.elements().map(|a| g.element_order(a)).collect();
    let r = orders.iter().filter(|&&o| o == 2).count();
    OrderStats { r_prime: g.order() - r - 1, r, orders }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<usize>,
}

impl Subgroup {
    /// Validates closure, identity and inverses.
    pub fn new(parent: &FiniteGroup, elements: &[usize]) -> Result<Self> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= parent.order()) {
            return Err(Error::NotSubgroup(format!("{bad} is not an element of {}", parent.spec())));
        }
        if !set.contains(&0) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        for &a in &set {
            if !set.contains(&parent.inverse(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &set {
                if !set.contains(&parent.op(a, b)) {
                    return Err(Error::NotSubgroup(format!("{a}·{b} not in set")));
                }
            }
        }
        Ok(Self { parent: parent.clone(), elements: set.into_iter().collect() })
    }

    /// Closure of a generating set.
    pub fn generated_by(parent: &FiniteGroup, generators: &[usize]) -> Result<Self> {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                if g >= parent.order() {
                    return Err(Error::IndexOutOfRange { index: g, dim: parent.order() });
                }
                let y = parent.op(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(Self { parent: parent.clone(), elements: set.into_iter().collect() })
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// Distinct left cosets `gH` in order of their smallest element.
    pub fn left_cosets(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.parent.order()];
        let mut out = Vec::new();
        for g in self.parent.elements() {
            if seen[g] {
                continue;
            }
            let coset = self.parent.translate(g, &self.elements);
            coset.iter().for_each(|&x| seen[x] = true);
            out.push(coset);
        }
        out
    }
}

/// Every subgroup of `g`, sorted by size then elements.
pub fn enumerate_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue = vec![vec![0usize]];
    found.insert(vec![0]);
    while let Some(h) = queue.pop() {
        for x in g.elements() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let next = Subgroup::generated_by(g, &gens).expect("elements in range").elements;
            if found.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    let mut subs: Vec<Subgroup> =
        found.into_iter().map(|elements| Subgroup { parent: g.clone(), elements }).collect();
    subs.sort_by(|a, b| a.len().cmp(&b.len()).then(a.elements.cmp(&b.elements)));
    subs
}

/// Number of distinct translates `gS`.
pub fn periodicity(g: &FiniteGroup, set: &[usize]) -> Result<usize> {
    if set.is_empty() {
        return Err(Error::EmptySubset);
    }
    let images: BTreeSet<Vec<usize>> = g.elements().map(|x| g.translate(x, set)).collect();
    Ok(images.len())
}

/// A set `S ⊂ G` with `0 < |S| ≤ |G|/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetInstance {
    group: FiniteGroup,
    set: Vec<usize>,
}

impl SubsetInstance {
    pub fn new(group: &FiniteGroup, set: &[usize]) -> Result<Self> {
        let s: BTreeSet<usize> = set.iter().copied().collect();
        if s.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = s.iter().find(|&&x| x >= group.order()) {
            return Err(Error::IndexOutOfRange { index: bad, dim: group.order() });
        }
        if 2 * s.len() > group.order() {
            return Err(Error::InvalidParameter(format!(
                "|S| = {} exceeds |G|/2 = {}",
                s.len(),
                group.order() as f64 / 2.0
            )));
        }
        Ok(Self { group: group.clone(), set: s.into_iter().collect() })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn set(&self) -> &[usize] {
        &self.set
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.binary_search(&x).is_ok()
    }
}

/// Parses a comma-separated element list such as `0,1,5`.
pub fn parse_elements(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidParameter(format!("bad element `{t}`"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        assert_eq!(FiniteGroup::parse("z5").unwrap().order(), 5);
        assert_eq!(FiniteGroup::parse("z3^2").unwrap().order(), 9);
        assert_eq!(FiniteGroup::parse("z2^4").unwrap().order(), 16);
        let g = FiniteGroup::parse("z3xz4").unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.encode(&[2, 3]), 11);
        assert_eq!(g.decode(11), vec![2, 3]);
        assert_eq!(g.spec().to_string(), "z3xz4");
        assert!(FiniteGroup::parse("q5").is_err());
        assert!(FiniteGroup::parse("z0").is_err());
        assert!(matches!(FiniteGroup::parse("z64^2xz2"), Err(Error::OrderOverflow(_))));
        assert_eq!(FiniteGroup::parse("d4xz3").unwrap().spec().to_string(), "d4xz3");
    }

    #[test]
    fn cyclic_and_products() {
        let z5 = FiniteGroup::cyclic(5).unwrap();
        assert_eq!(z5.identity(), 0);
        assert_eq!(z5.op(3, 4), 2);
        let z3sq = FiniteGroup::new(GroupSpec::DirectProduct(vec![GroupSpec::Cyclic(3), GroupSpec::Cyclic(3)])).unwrap();
        assert_eq!(z3sq.order(), 9);
        let z2cube = FiniteGroup::parse("z2^3").unwrap();
        assert!(z2cube.elements().skip(1).all(|x| z2cube.element_order(x) == 2));
    }

    #[test]
    fn nonabelian_factors() {
        let orders: Vec<usize> = small_groups().iter().map(|g| g.order()).collect();
        assert_eq!(orders.len(), 24);
        assert!(orders.iter().all(|&o| o <= 12));
        let s3 = FiniteGroup::parse("s3").unwrap();
        assert!(!s3.is_abelian());
        assert_eq!(order_stats(&s3).r, 3);
        assert_eq!(order_stats(&FiniteGroup::parse("d4").unwrap()).r, 5);
        assert_eq!(order_stats(&FiniteGroup::parse("dic2").unwrap()).r, 1);
        assert_eq!(order_stats(&FiniteGroup::parse("a4").unwrap()).r, 3);
        assert_eq!(order_stats(&FiniteGroup::parse("dic3").unwrap()).r, 1);
        assert_eq!(FiniteGroup::parse("s5").unwrap().order(), 120);
        assert_eq!(enumerate_subgroups(&s3).len(), 6);
        assert!(FiniteGroup::parse("d4xz2").unwrap().verify_axioms().is_ok());
    }

    #[test]
    fn order_stats_examples() {
        assert_eq!(order_stats(&FiniteGroup::cyclic(3).unwrap()).r, 0);
        let z4 = order_stats(&FiniteGroup::cyclic(4).unwrap());
        assert_eq!(z4.r, 1);
        assert_eq!(z4.orders[2], 2);
        assert_eq!(order_stats(&FiniteGroup::parse("z2^2").unwrap()).r, 3);
        for p in [3usize, 5, 7, 11, 101] {
            assert_eq!(order_stats(&FiniteGroup::cyclic(p).unwrap()).r, 0);
        }
        let g = FiniteGroup::parse("z4xz6").unwrap();
        let st = order_stats(&g);
        assert_eq!(st.r + st.r_prime + 1, g.order());
        assert!(st.orders.iter().all(|o| g.order() % o == 0));
    }

    #[test]
    fn periodicity_examples() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(periodicity(&z4, &[0, 2]).unwrap(), 2);
        assert_eq!(periodicity(&z4, &[0, 1, 2, 3]).unwrap(), 1);
        assert_eq!(periodicity(&z4, &[]), Err(Error::EmptySubset));
    }

    #[test]
    fn first_coordinate_subgroup_cosets() {
        let g = FiniteGroup::parse("z2^2").unwrap();
        // elements 0 = 00, 1 = 01, 2 = 10, 3 = 11
        let h = Subgroup::new(&g, &[0, 1]).unwrap();
        assert_eq!(h.left_cosets(), vec![vec![0, 1], vec![2, 3]]);
        assert!(Subgroup::new(&g, &[0, 1, 2]).is_err());
        assert!(Subgroup::new(&g, &[1]).is_err());
    }

    #[test]
    fn subgroup_enumeration_counts() {
        // Z2^3 has 16 subgroups, Z4 x Z2 has 8
        assert_eq!(enumerate_subgroups(&FiniteGroup::parse("z2^3").unwrap()).len(), 16);
        assert_eq!(enumerate_subgroups(&FiniteGroup::parse("z4xz2").unwrap()).len(), 8);
        for h in enumerate_subgroups(&FiniteGroup::parse("z12").unwrap()) {
            let total: usize = h.left_cosets().iter().map(|c| c.len()).sum();
            assert_eq!(total, 12);
        }
    }

    #[test]
    fn subset_instance_validation() {
        let g = FiniteGroup::cyclic(5).unwrap();
        assert!(SubsetInstance::new(&g, &[0, 1]).is_ok());
        assert!(SubsetInstance::new(&g, &[0, 1, 2]).is_err());
        assert_eq!(SubsetInstance::new(&g, &[]), Err(Error::EmptySubset));
        assert_eq!(parse_elements("0, 1,5").unwrap(), vec![0, 1, 5]);
    }
}
