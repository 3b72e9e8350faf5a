//! Root data, Weyl groups, dominance and the Weyl dimension formula for the
//! classical compact groups that occur as maximal compact subgroups here.
//!
//! Weights are integer vectors in the standard orthonormal coordinates of the
//! maximal torus. `SU2` uses the doubled coordinate, so its irreducible of
//! dimension `j + 1` has highest weight `(j)`; in these coordinates `SU2` and
//! `Sp(1)` have identical root data.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_RANK_CAP: usize = 8;
pub const DEFAULT_DEGREE_CAP: usize = 24;
pub const DEGREE_CAP_ENV: &str = "BRANCHKIT_DEGREE_CAP";

/// Budgets for Weyl-group enumeration and character expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub rank_cap: usize,
    pub degree_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            rank_cap: DEFAULT_RANK_CAP,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

impl Limits {
    /// Defaults, with the degree cap overridden by `BRANCHKIT_DEGREE_CAP` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(DEGREE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            limits.degree_cap = cap;
        }
        limits
    }

    /// Process-wide limits, read from the environment once.
    pub fn global() -> Limits {
        static LIMITS: OnceLock<Limits> = OnceLock::new();
        *LIMITS.get_or_init(Limits::from_env)
    }
}

/// A single compact classical factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classical {
    U(usize),
    SO(usize),
    /// Handled through `SO(n)` data; highest weights carry a nonnegative last
    /// coordinate and the determinant twist is not tracked.
    O(usize),
    Sp(usize),
    SU2,
}

impl Classical {
    pub fn validate(self) -> Result<Self> {
        let ok = match self {
            Classical::U(n) => n >= 1,
            Classical::SO(n) | Classical::O(n) => n >= 2,
            Classical::Sp(m) => m >= 1,
            Classical::SU2 => true,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::domain(format!("invalid group {self}")))
        }
    }

    pub fn rank(self) -> usize {
        match self {
            Classical::U(n) => n,
            Classical::SO(n) | Classical::O(n) => n / 2,
            Classical::Sp(m) => m,
            Classical::SU2 => 1,
        }
    }

    fn is_even_orthogonal(self) -> bool {
        matches!(self, Classical::SO(n) | Classical::O(n) if n % 2 == 0)
    }

    /// Positive roots in torus coordinates. All of them are lexicographically positive.
    pub fn positive_roots(self) -> Vec<Vec<i64>> {
        let r = self.rank();
        let unit = |i: usize, c: i64| {
            let mut v = vec![0; r];
            v[i] = c;
            v
        };
        let pair = |i: usize, j: usize, s: i64| {
            let mut v = vec![0; r];
            v[i] = 1;
            v[j] = s;
            v
        };
        let mut roots = Vec::new();
        match self {
            Classical::U(_) => {
                for i in 0..r {
                    for j in i + 1..r {
                        roots.push(pair(i, j, -1));
                    }
                }
            }
            Classical::SO(n) | Classical::O(n) => {
                for i in 0..r {
                    for j in i + 1..r {
                        roots.push(pair(i, j, -1));
                        roots.push(pair(i, j, 1));
                    }
                }
                if n % 2 == 1 {
                    for i in 0..r {
                        roots.push(unit(i, 1));
                    }
                }
            }
            Classical::Sp(_) | Classical::SU2 => {
                for i in 0..r {
                    for j in i + 1..r {
                        roots.push(pair(i, j, -1));
                        roots.push(pair(i, j, 1));
                    }
                    roots.push(unit(i, 2));
                }
            }
        }
        roots
    }

    /// Twice the half-sum of positive roots.
    pub fn two_rho(self) -> Vec<i64> {
        let mut acc = vec![0i64; self.rank()];
        for root in self.positive_roots() {
            for (a, x) in acc.iter_mut().zip(root) {
                *a += x;
            }
        }
        acc
    }

    pub fn is_dominant(self, hw: &[i64]) -> bool {
        if hw.len() != self.rank() {
            return false;
        }
        let decreasing = hw.windows(2).all(|w| w[0] >= w[1]);
        match self {
            Classical::U(_) => decreasing,
            Classical::SO(n) if n % 2 == 0 => {
                let r = hw.len();
                if r == 1 {
                    return true;
                }
                hw[..r - 1].windows(2).all(|w| w[0] >= w[1]) && hw[r - 2] >= hw[r - 1].abs()
            }
            _ => decreasing && hw.last().is_none_or(|&x| x >= 0),
        }
    }

    pub fn weyl_group(self, limits: &Limits) -> Result<Vec<WeylElement>> {
        let r = self.rank();
        if r > limits.rank_cap {
            return Err(Error::ResourceLimit {
                what: format!("Weyl group of {self}"),
                limit: limits.rank_cap,
                requested: r,
            });
        }
        let perms = permutations(r);
        let elems = match self {
            Classical::U(_) => perms
                .into_iter()
                .map(|perm| WeylElement {
                    perm,
                    signs: vec![1; r],
                })
                .collect(),
            Classical::SO(n) if n % 2 == 0 => signed_permutations(&perms, r)
                .filter(|w| w.signs.iter().filter(|&&s| s < 0).count() % 2 == 0)
                .collect(),
            _ => signed_permutations(&perms, r).collect(),
        };
        Ok(elems)
    }
}

impl fmt::Display for Classical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classical::U(n) => write!(f, "U({n})"),
            Classical::SO(n) => write!(f, "SO({n})"),
            Classical::O(n) => write!(f, "O({n})"),
            Classical::Sp(m) => write!(f, "Sp({m})"),
            Classical::SU2 => write!(f, "SU2"),
        }
    }
}

impl FromStr for Classical {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("SU2") || s.eq_ignore_ascii_case("SU(2)") {
            return Ok(Classical::SU2);
        }
        let bad = || Error::Parse(format!("unrecognised group factor '{s}'"));
        let (family, rest) = s
            .find(|c: char| c == '(' || c.is_ascii_digit())
            .map(|i| s.split_at(i))
            .ok_or_else(bad)?;
        let digits = rest.trim_start_matches('(').trim_end_matches(')');
        let n: usize = digits.parse().map_err(|_| bad())?;
        let c = match family {
            "U" => Classical::U(n),
            "SO" => Classical::SO(n),
            "O" => Classical::O(n),
            "Sp" => Classical::Sp(n),
            _ => return Err(bad()),
        };
        c.validate()
    }
}

/// A compact group given as an ordered, flat, non-empty product of classical factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupLabel {
    factors: Vec<Classical>,
}

impl GroupLabel {
    pub fn single(c: Classical) -> Self {
        GroupLabel { factors: vec![c] }
    }

    pub fn product(factors: Vec<Classical>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::domain("empty product group"));
        }
        for f in &factors {
            f.validate()?;
        }
        Ok(GroupLabel { factors })
    }

    pub fn u(n: usize) -> Self {
        Self::single(Classical::U(n))
    }
    pub fn so(n: usize) -> Self {
        Self::single(Classical::SO(n))
    }
    pub fn o(n: usize) -> Self {
        Self::single(Classical::O(n))
    }
    pub fn sp(m: usize) -> Self {
        Self::single(Classical::Sp(m))
    }
    pub fn su2() -> Self {
        Self::single(Classical::SU2)
    }

    pub fn factors(&self) -> &[Classical] {
        &self.factors
    }

    pub fn as_single(&self) -> Option<Classical> {
        match self.factors.as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|c| c.rank()).sum()
    }

    /// Splits a concatenated weight into per-factor slices.
    pub fn split<'a>(&self, w: &'a [i64]) -> Result<Vec<&'a [i64]>> {
        if w.len() != self.rank() {
            return Err(Error::domain(format!(
                "weight of length {} for {self} of rank {}",
                w.len(),
                self.rank()
            )));
        }
        let mut out = Vec::with_capacity(self.factors.len());
        let mut at = 0;
        for c in &self.factors {
            out.push(&w[at..at + c.rank()]);
            at += c.rank();
        }
        Ok(out)
    }

    pub fn is_dominant(&self, hw: &[i64]) -> bool {
        self.split(hw).is_ok_and(|parts| {
            self.factors
                .iter()
                .zip(parts)
                .all(|(c, p)| c.is_dominant(p))
        })
    }

    pub fn validate(&self) -> Result<()> {
        for f in &self.factors {
            f.validate()?;
        }
        Ok(())
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split(['x', '*'])
            .map(str::parse)
            .collect::<Result<Vec<Classical>>>()?;
        GroupLabel::product(factors)
    }
}

/// An integer weight in torus coordinates (concatenated over product factors).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        Weight(coords.into())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Total harmonic degree: sum of absolute coordinates.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|x| x.unsigned_abs() as usize).sum()
    }

    pub fn concat(&self, other: &Weight) -> Weight {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        if inner.trim().is_empty() {
            return Ok(Weight(Vec::new()));
        }
        inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad weight coordinate '{x}'")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

/// A signed permutation `v ↦ (signs[i] * v[perm[i]])_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl WeylElement {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.perm
            .iter()
            .zip(&self.signs)
            .map(|(&p, &s)| s as i64 * v[p])
            .collect()
    }

    /// Determinant of the signed permutation matrix.
    pub fn det(&self) -> i64 {
        let mut seen = vec![false; self.perm.len()];
        let mut sign = 1i64;
        for start in 0..self.perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.perm[i];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        self.signs.iter().fold(sign, |acc, &s| acc * s as i64)
    }
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(r), &mut vec![false; r], &mut out);
    out
}

fn signed_permutations(perms: &[Vec<usize>], r: usize) -> impl Iterator<Item = WeylElement> + '_ {
    perms.iter().flat_map(move |perm| {
        (0u32..(1 << r)).map(move |mask| WeylElement {
            perm: perm.clone(),
            signs: (0..r)
                .map(|i| if mask >> i & 1 == 1 { -1 } else { 1 })
                .collect(),
        })
    })
}

/// All Weyl group elements of a single classical factor.
pub fn weyl_group(group: &GroupLabel) -> Result<Vec<WeylElement>> {
    weyl_group_with(group, &Limits::global())
}

pub fn weyl_group_with(group: &GroupLabel, limits: &Limits) -> Result<Vec<WeylElement>> {
    let c = group
        .as_single()
        .ok_or_else(|| Error::domain(format!("weyl_group expects a single factor, got {group}")))?;
    c.validate()?.weyl_group(limits)
}

/// Weyl dimension formula, evaluated exactly.
///
/// For `O(2r)` a highest weight with nonzero last coordinate labels the
/// irreducible that restricts to `SO(2r)` as the sum of the weight and its
/// last-sign flip, so the dimension doubles.
pub fn weyl_dim(group: &GroupLabel, hw: &Weight) -> Result<u128> {
    group.validate()?;
    if !group.is_dominant(hw.coords()) {
        return Err(Error::domain(format!("{hw} is not dominant for {group}")));
    }
    let mut total: u128 = 1;
    for (c, part) in group.factors().iter().zip(group.split(hw.coords())?) {
        total =
            total
                .checked_mul(classical_dim(*c, part)?)
                .ok_or_else(|| Error::ResourceLimit {
                    what: "dimension overflow".into(),
                    limit: 128,
                    requested: 129,
                })?;
    }
    Ok(total)
}

fn classical_dim(c: Classical, hw: &[i64]) -> Result<u128> {
    let two_rho = c.two_rho();
    let shifted: Vec<i64> = hw.iter().zip(&two_rho).map(|(l, r)| 2 * l + r).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for root in c.positive_roots() {
        let dot = |v: &[i64]| -> i64 { v.iter().zip(&root).map(|(a, b)| a * b).sum() };
        num *= dot(&shifted);
        den *= dot(&two_rho);
    }
    if den.is_zero() || !(&num % &den).is_zero() {
        return Err(Error::InexactDivision(format!(
            "Weyl dimension of {c} at {hw:?}"
        )));
    }
    let mut dim = num / den;
    if matches!(c, Classical::O(_)) && c.is_even_orthogonal() && hw.last().is_some_and(|&x| x != 0)
    {
        dim *= 2;
    }
    dim.to_u128().ok_or_else(|| Error::ResourceLimit {
        what: format!("dimension of {c} {hw:?}"),
        limit: 128,
        requested: 129,
    })
}
