use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{parse_elements, FiniteGroup, Subgroup, SubsetInstance};

type ValueFn = Arc<dyn Fn(usize, usize) -> Option<bool> + Send + Sync>;

/// A one-way problem `f : X × Y → {0, 1, undefined}` over integer-encoded
/// inputs `0..alice_inputs` and `0..bob_inputs`.
#[derive(Clone)]
pub struct OneWayProblem {
    id: String,
    alice_inputs: usize,
    bob_inputs: usize,
    total: bool,
    f: ValueFn,
}

impl fmt::Debug for OneWayProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OneWayProblem")
            .field("id", &self.id)
            .field("alice_inputs", &self.alice_inputs)
            .field("bob_inputs", &self.bob_inputs)
            .field("total", &self.total)
            .finish()
    }
}

/// Bit `i` (1-based, `x_1` most significant) of an `n`-bit string.
pub fn bit(x: usize, n: usize, i: usize) -> usize {
    (x >> (n - i)) & 1
}

fn bits_for(count: usize) -> usize {
    count.next_power_of_two().trailing_zeros() as usize
}

impl OneWayProblem {
    /// `total` declares that `f` is defined everywhere.
    pub fn new(
        id: impl Into<String>,
        alice_inputs: usize,
        bob_inputs: usize,
        total: bool,
        f: impl Fn(usize, usize) -> Option<bool> + Send + Sync + 'static,
    ) -> Self {
        Self { id: id.into(), alice_inputs, bob_inputs, total, f: Arc::new(f) }
    }

    /// Builds a total problem from an explicit `alice × bob` table.
    pub fn from_table(id: impl Into<String>, table: Vec<Vec<bool>>) -> Result<Self> {
        let rows = table.len();
        let cols = table.first().map_or(0, |r| r.len());
        if rows == 0 || cols == 0 || table.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidParameter("ragged or empty table".into()));
        }
        Ok(Self::new(id, rows, cols, true, move |x, y| Some(table[x][y])))
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn alice_inputs(&self) -> usize {
        self.alice_inputs
    }

    pub fn bob_inputs(&self) -> usize {
        self.bob_inputs
    }

    /// `n`: bits needed to write Alice's input.
    pub fn alice_bits(&self) -> usize {
        bits_for(self.alice_inputs)
    }

    /// `m`: bits needed to write Bob's input.
    pub fn bob_bits(&self) -> usize {
        bits_for(self.bob_inputs)
    }

    pub fn is_total(&self) -> bool {
        self.total
    }

    pub fn value(&self, x: usize, y: usize) -> Option<bool> {
        if x >= self.alice_inputs || y >= self.bob_inputs {
            return None;
        }
        (self.f)(x, y)
    }

    /// `D_x`: Bob inputs with `f(x, ·)` defined, in increasing order.
    pub fn domain_of(&self, x: usize) -> Vec<usize> {
        (0..self.bob_inputs).filter(|&y| self.value(x, y).is_some()).collect()
    }
}

/// `EQ_n`: `f(x, y) = [x = y]` on `n`-bit strings.
pub fn equality(n: usize) -> Result<OneWayProblem> {
    if n == 0 || n > 20 {
        return Err(Error::InvalidParameter(format!("equality needs 1 ≤ n ≤ 20, got {n}")));
    }
    Ok(OneWayProblem::new(format!("eq:{n}"), 1 << n, 1 << n, true, |x, y| Some(x == y)))
}

/// Coset problem over `F_p²`: Alice holds `(x1, x2)` encoded `x1·p + x2`,
/// Bob holds the line `(a, b)` encoded `a·p + b`; `f = 1` iff `x2 ≡ a·x1 + b`.
pub fn coset(p: usize) -> Result<OneWayProblem> {
    if !is_small_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    if p > 1024 {
        return Err(Error::InvalidParameter(format!("p = {p} too large")));
    }
    let f = move |x: usize, y: usize| {
        let (x1, x2) = (x / p, x % p);
        let (a, b) = (y / p, y % p);
        Some(x2 == (a * x1 + b) % p)
    };
    Ok(OneWayProblem::new(format!("coset:{p}"), p * p, p * p, true, f))
}

/// `Subset(G, S)`: `f(x, y) = [xy ∈ S]`.
pub fn subset(inst: &SubsetInstance) -> OneWayProblem {
    let g = inst.group().clone();
    let id = format!(
        "subset:{}:{}",
        g.spec(),
        inst.set().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    );
    let inst = inst.clone();
    let order = g.order();
    OneWayProblem::new(id, order, order, true, move |x, y| Some(inst.contains(g.op(x, y))))
}

/// Group membership with a single advice input: Bob holds `x` and learns
/// whether `x ∈ H`.
pub fn membership(h: &Subgroup) -> OneWayProblem {
    let id = format!(
        "membership:{}:{}",
        h.parent().spec(),
        h.elements().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    );
    let h = h.clone();
    let order = h.parent().order();
    OneWayProblem::new(id, 1, order, true, move |_, y| Some(h.contains(y)))
}

/// The promise problem on `n`-bit strings: `f = 1` when the first-half inner
/// product is at least `n/4` and the second-half one is 0, `f = 0` in the
/// mirrored case, undefined otherwise.
pub fn promise_example(n: usize) -> Result<OneWayProblem> {
    if n == 0 || n % 4 != 0 {
        return Err(Error::InvalidParameter(format!("n = {n} is not a positive multiple of 4")));
    }
    if n > 16 {
        return Err(Error::InvalidParameter(format!("n = {n} exceeds 16")));
    }
    let half = n / 2;
    let f = move |x: usize, y: usize| {
        let and = x & y;
        let hi = (and >> half).count_ones() as usize;
        let lo = (and & ((1 << half) - 1)).count_ones() as usize;
        if hi * 4 >= n && lo == 0 {
            Some(true)
        } else if hi == 0 && lo * 4 >= n {
            Some(false)
        } else {
            None
        }
    };
    Ok(OneWayProblem::new(format!("promise:{n}"), 1 << n, 1 << n, false, f))
}

pub(crate) fn is_small_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Parses `eq:n`, `coset:p`, `subset:GROUP:SET`, `promise:n`,
/// `membership:GROUP:SUBGROUP`. Set lists are comma separated.
pub fn parse_problem(id: &str) -> Result<OneWayProblem> {
    let bad = || Error::InvalidProblemId(id.to_string());
    let mut parts = id.splitn(3, ':');
    let kind = parts.next().ok_or_else(bad)?;
    let arg = parts.next().ok_or_else(bad)?;
    let rest = parts.next();
    let num = || arg.parse::<usize>().map_err(|_| bad());
    match (kind, rest) {
        ("eq", None) => equality(num()?),
        ("coset", None) => coset(num()?),
        ("promise", None) => promise_example(num()?),
        ("subset", Some(set)) => {
            let g = FiniteGroup::parse(arg)?;
            Ok(subset(&SubsetInstance::new(&g, &parse_elements(set)?)?))
        }
        ("membership", Some(set)) => {
            let g = FiniteGroup::parse(arg)?;
            Ok(membership(&Subgroup::new(&g, &parse_elements(set)?)?))
        }
        _ => Err(bad()),
    }
}
