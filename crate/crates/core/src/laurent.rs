//! Sparse Laurent polynomials with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A finite formal character: a map from integer exponent vectors to nonzero coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration is in lexicographic exponent
/// order and the last entry is the lexicographic leading term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentChar {
    vars: Vec<String>,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentChar {
    pub fn zero_in(vars: Vec<String>) -> Self {
        LaurentChar {
            vars,
            terms: BTreeMap::new(),
        }
    }

    /// The zero character on `n` variables named `prefix1..prefixn`.
    pub fn zero(n: usize) -> Self {
        Self::zero_in(default_vars("z", n))
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], BigInt::one())
    }

    pub fn monomial(exp: Vec<i64>, coeff: impl Into<BigInt>) -> Self {
        let mut c = Self::zero(exp.len());
        c.add_term(exp, coeff.into());
        c
    }

    pub fn from_terms<I, C>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
        C: Into<BigInt>,
    {
        let mut c = Self::zero(n);
        for (e, k) in terms {
            c.add_term(e, k.into());
        }
        c
    }

    pub fn with_vars(mut self, vars: Vec<String>) -> Result<Self> {
        if vars.len() != self.vars.len() {
            return Err(Error::domain(format!(
                "cannot relabel {} variables with {} names",
                self.vars.len(),
                vars.len()
            )));
        }
        self.vars = vars;
        Ok(self)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Vec<i64>, coeff: BigInt) {
        assert_eq!(exp.len(), self.vars.len(), "exponent length mismatch");
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Lexicographically largest exponent and its coefficient.
    pub fn leading(&self) -> Option<(&Vec<i64>, &BigInt)> {
        self.terms.last_key_value()
    }

    /// Value at the identity of the torus: the dimension of a genuine character.
    pub fn dimension(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Largest sum of absolute exponents over all terms.
    pub fn max_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|x| x.unsigned_abs() as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero_in(self.vars.clone());
        }
        LaurentChar {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiplication by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        assert_eq!(shift.len(), self.nvars());
        LaurentChar {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (add_vec(e, shift), k.clone()))
                .collect(),
        }
    }

    /// Outer product on disjoint variable sets (character of an external tensor product).
    pub fn tensor(&self, other: &LaurentChar) -> Self {
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        let mut out = Self::zero_in(vars);
        for (e1, k1) in &self.terms {
            for (e2, k2) in &other.terms {
                let mut e = e1.clone();
                e.extend_from_slice(e2);
                out.add_term(e, k1 * k2);
            }
        }
        out
    }

    /// Pushes every exponent through `e ↦ Mᵀe`, where `matrix` has one row per
    /// variable of `self` and one column per target variable.
    pub fn push_forward(&self, matrix: &[Vec<i64>], target_vars: Vec<String>) -> Result<Self> {
        if matrix.len() != self.nvars() {
            return Err(Error::domain(format!(
                "matrix has {} rows but character has {} variables",
                matrix.len(),
                self.nvars()
            )));
        }
        let cols = target_vars.len();
        if matrix.iter().any(|row| row.len() != cols) {
            return Err(Error::domain("ragged embedding matrix"));
        }
        let mut out = Self::zero_in(target_vars);
        for (e, k) in &self.terms {
            let mut image = vec![0i64; cols];
            for (x, row) in e.iter().zip(matrix) {
                if *x != 0 {
                    for (acc, m) in image.iter_mut().zip(row) {
                        *acc += x * m;
                    }
                }
            }
            out.add_term(image, k.clone());
        }
        Ok(out)
    }

    /// Exact division; fails unless the remainder is zero.
    ///
    /// Uses the lexicographic leading term. Every quotient exponent is confined
    /// to the coordinate box `[min(self) - min(d), max(self) - max(d)]`, which
    /// makes the loop finite even when the division is not exact.
    pub fn div_exact(&self, divisor: &LaurentChar) -> Result<LaurentChar> {
        if divisor.nvars() != self.nvars() {
            return Err(Error::domain("variable-count mismatch in division"));
        }
        let (lead_exp, lead_coeff) = divisor
            .leading()
            .ok_or_else(|| Error::InexactDivision("division by zero".into()))?;
        let lead_exp = lead_exp.clone();
        let lead_coeff = lead_coeff.clone();
        let mut quotient = Self::zero_in(self.vars.clone());
        if self.is_zero() {
            return Ok(quotient);
        }
        let (lo_p, hi_p) = self.bounding_box();
        let (lo_d, hi_d) = divisor.bounding_box();
        let lo: Vec<i64> = lo_p.iter().zip(&lo_d).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = hi_p.iter().zip(&hi_d).map(|(a, b)| a - b).collect();

        let mut rem = self.clone();
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let q_exp = sub_vec(&e, &lead_exp);
            let in_box = q_exp
                .iter()
                .zip(lo.iter().zip(&hi))
                .all(|(x, (l, h))| l <= x && x <= h);
            if !in_box || !(&c % &lead_coeff).is_zero() {
                return Err(Error::InexactDivision(format!(
                    "nonzero remainder with leading exponent {e:?}"
                )));
            }
            let q_coeff = &c / &lead_coeff;
            for (de, dc) in &divisor.terms {
                rem.add_term(add_vec(&q_exp, de), -(&q_coeff * dc));
            }
            quotient.add_term(q_exp, q_coeff);
        }
        Ok(quotient)
    }

    fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let n = self.nvars();
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for e in self.terms.keys() {
            for i in 0..n {
                lo[i] = lo[i].min(e[i]);
                hi[i] = hi[i].max(e[i]);
            }
        }
        (lo, hi)
    }

    pub fn has_negative_coefficients(&self) -> bool {
        self.terms.values().any(|k| k.is_negative())
    }
}

pub(crate) fn default_vars(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl AddAssign<&LaurentChar> for LaurentChar {
    fn add_assign(&mut self, rhs: &LaurentChar) {
        assert_eq!(self.nvars(), rhs.nvars(), "variable-count mismatch");
        for (e, k) in &rhs.terms {
            self.add_term(e.clone(), k.clone());
        }
    }
}

impl SubAssign<&LaurentChar> for LaurentChar {
    fn sub_assign(&mut self, rhs: &LaurentChar) {
        assert_eq!(self.nvars(), rhs.nvars(), "variable-count mismatch");
        for (e, k) in &rhs.terms {
            self.add_term(e.clone(), -k);
        }
    }
}

impl Add for &LaurentChar {
    type Output = LaurentChar;
    fn add(self, rhs: &LaurentChar) -> LaurentChar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentChar {
    type Output = LaurentChar;
    fn sub(self, rhs: &LaurentChar) -> LaurentChar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &LaurentChar {
    type Output = LaurentChar;
    fn neg(self) -> LaurentChar {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &LaurentChar {
    type Output = LaurentChar;
    fn mul(self, rhs: &LaurentChar) -> LaurentChar {
        assert_eq!(self.nvars(), rhs.nvars(), "variable-count mismatch");
        let mut out = LaurentChar::zero_in(self.vars.clone());
        for (e1, k1) in &self.terms {
            for (e2, k2) in &rhs.terms {
                out.add_term(add_vec(e1, e2), k1 * k2);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentChar[{}]", self)
    }
}

impl fmt::Display for LaurentChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, k)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(x, _)| **x != 0)
                .map(|(x, v)| {
                    if *x == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{x}")
                    }
                })
                .collect();
            let (sign, mag) = if k.is_negative() {
                ("-", -k)
            } else {
                ("+", k.clone())
            };
            if i == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}
