//! Spherical harmonics `H^j(ℝ^N)`, their complex and quaternionic refinements
//! `H^{α,β}(ℂ^n)`, `H^{α,β}(ℍ^m)`, and the `SU(2)` irreducibles `V_j`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::character::{irreducible_character, torus_vars, IrrepDecomposition};
use crate::error::{Error, Result};
use crate::laurent::LaurentChar;
use crate::weights::{weyl_dim, GroupLabel, Limits, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HarmonicLabel {
    /// `H^j(ℝ^N)`, an irreducible of `O(N)`.
    Real { n: usize, j: u32 },
    /// `H^{α,β}(ℂ^n)`: harmonic, bihomogeneous of degree `α` in `z` and `β` in `z̄`.
    Complex { n: usize, alpha: u32, beta: u32 },
    /// `H^{α,β}(ℍ^m)`, the `Sp(m)` irreducible of highest weight `(α,β,0,…)`.
    Quaternionic { m: usize, alpha: u32, beta: u32 },
    /// `V_j`, of dimension `j + 1`.
    SU2Rep { j: u32 },
}

impl HarmonicLabel {
    pub fn validate(self) -> Result<Self> {
        match self {
            HarmonicLabel::Real { n, .. } if n < 2 => {
                Err(Error::domain(format!("H^j(R^N) needs N >= 2, got N={n}")))
            }
            HarmonicLabel::Complex { n: 0, .. } => Err(Error::domain("H^{a,b}(C^n) needs n >= 1")),
            HarmonicLabel::Complex { n: 1, alpha, beta } if alpha > 0 && beta > 0 => Err(
                Error::domain(format!("H^{{{alpha},{beta}}}(C) is the zero space")),
            ),
            HarmonicLabel::Quaternionic { m: 0, .. } => {
                Err(Error::domain("H^{a,b}(H^m) needs m >= 1"))
            }
            HarmonicLabel::Quaternionic { alpha, beta, .. } if alpha < beta => Err(Error::domain(
                format!("H^{{{alpha},{beta}}}(H^m) needs alpha >= beta"),
            )),
            HarmonicLabel::Quaternionic { m: 1, beta, .. } if beta > 0 => {
                Err(Error::domain("H^{a,b}(H^1) with b > 0 needs m >= 2"))
            }
            ok => Ok(ok),
        }
    }

    /// Total harmonic degree: `j`, or `α + β`.
    pub fn degree(self) -> u32 {
        match self {
            HarmonicLabel::Real { j, .. } | HarmonicLabel::SU2Rep { j } => j,
            HarmonicLabel::Complex { alpha, beta, .. }
            | HarmonicLabel::Quaternionic { alpha, beta, .. } => alpha + beta,
        }
    }
}

impl fmt::Display for HarmonicLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            HarmonicLabel::Real { n, j } => write!(f, "R:{n}:{j}"),
            HarmonicLabel::Complex { n, alpha, beta } => write!(f, "C:{n}:{alpha}:{beta}"),
            HarmonicLabel::Quaternionic { m, alpha, beta } => write!(f, "H:{m}:{alpha}:{beta}"),
            HarmonicLabel::SU2Rep { j } => write!(f, "SU2:{j}"),
        }
    }
}

/// Parses `R:N:j`, `C:n:α:β`, `H:m:α:β` and `SU2:j`; the result is validated.
impl FromStr for HarmonicLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed harmonic spec '{s}'"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let nums = parts[1..]
            .iter()
            .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<u32>>>()?;
        let label = match (
            parts[0].trim().to_ascii_uppercase().as_str(),
            nums.as_slice(),
        ) {
            ("R", [n, j]) => HarmonicLabel::Real {
                n: *n as usize,
                j: *j,
            },
            ("C", [n, a, b]) => HarmonicLabel::Complex {
                n: *n as usize,
                alpha: *a,
                beta: *b,
            },
            ("H", [m, a, b]) => HarmonicLabel::Quaternionic {
                m: *m as usize,
                alpha: *a,
                beta: *b,
            },
            ("SU2", [j]) => HarmonicLabel::SU2Rep { j: *j },
            _ => return Err(bad()),
        };
        label.validate()
    }
}

/// Group and highest weight of the irreducible named by `label`.
///
/// `H^j(ℝ^N)` is labelled over `O(N)`; for `N = 2`, `j > 0` this is the
/// two-dimensional pair `{j, -j}` of `SO(2)`.
pub fn harmonic_weight(label: HarmonicLabel) -> Result<(GroupLabel, Weight)> {
    let label = label.validate()?;
    Ok(match label {
        HarmonicLabel::Real { n, j } => {
            let mut w = vec![0; n / 2];
            w[0] = j as i64;
            (GroupLabel::o(n), Weight::new(w))
        }
        HarmonicLabel::Complex { n, alpha, beta } => {
            let mut w = vec![0; n];
            w[0] += alpha as i64;
            w[n - 1] -= beta as i64;
            (GroupLabel::u(n), Weight::new(w))
        }
        HarmonicLabel::Quaternionic { m, alpha, beta } => {
            let mut w = vec![0; m];
            w[0] = alpha as i64;
            if m > 1 {
                w[1] = beta as i64;
            }
            (GroupLabel::sp(m), Weight::new(w))
        }
        HarmonicLabel::SU2Rep { j } => (GroupLabel::su2(), Weight::new(vec![j as i64])),
    })
}

pub fn harmonic_dim(label: HarmonicLabel) -> Result<u128> {
    let (group, hw) = harmonic_weight(label)?;
    weyl_dim(&group, &hw)
}

fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < k {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `C(N+j-1, j) - C(N+j-3, j-2)`.
pub fn real_harmonic_dim_closed_form(n: usize, j: u32) -> BigInt {
    let (n, j) = (n as i64, j as i64);
    binomial(n + j - 1, j) - binomial(n + j - 3, j - 2)
}

/// Character of the irreducible named by `label`.
///
/// `H^j(ℝ^N)` is computed as `h_j - h_{j-2}` of the eigenvalues
/// `y_1^{±1}, …, y_r^{±1}` (and `1` when `N` is odd), where `h_d` is the
/// complete homogeneous symmetric polynomial.
pub fn harmonic_character(label: HarmonicLabel) -> Result<LaurentChar> {
    let (group, hw) = harmonic_weight(label)?;
    match label {
        HarmonicLabel::Real { n, j } => {
            let cap = Limits::global().degree_cap;
            if j as usize > cap {
                return Err(Error::ResourceLimit {
                    what: format!("degree budget for {label}"),
                    limit: cap,
                    requested: j as usize,
                });
            }
            let h = complete_homogeneous(&real_eigenvalues(n), j as usize);
            let mut chi = h[j as usize].clone();
            if j >= 2 {
                chi -= &h[j as usize - 2];
            }
            chi.with_vars(torus_vars(&group))
        }
        _ => irreducible_character(&group, &hw),
    }
}

fn real_eigenvalues(n: usize) -> Vec<Vec<i64>> {
    let r = n / 2;
    let mut out = Vec::with_capacity(n);
    for i in 0..r {
        for s in [1, -1] {
            let mut e = vec![0; r];
            e[i] = s;
            out.push(e);
        }
    }
    if n % 2 == 1 {
        out.push(vec![0; r]);
    }
    out
}

/// `[h_0, …, h_d]` of the given monomials.
fn complete_homogeneous(monomials: &[Vec<i64>], d: usize) -> Vec<LaurentChar> {
    let nvars = monomials.first().map_or(0, Vec::len);
    let mut h: Vec<LaurentChar> = (0..=d)
        .map(|i| {
            if i == 0 {
                LaurentChar::one(nvars)
            } else {
                LaurentChar::zero(nvars)
            }
        })
        .collect();
    for x in monomials {
        for i in 1..=d {
            let shifted = h[i - 1].shift(x);
            h[i] += &shifted;
        }
    }
    h
}

/// `L²(S^{N-1})` as `⊕_{j ≤ dmax} H^j(ℝ^N)` over `O(N)`.
pub fn l2_sphere(n: usize, dmax: u32) -> Result<IrrepDecomposition> {
    let mut out = IrrepDecomposition::new(GroupLabel::o(n));
    for j in 0..=dmax {
        let (_, hw) = harmonic_weight(HarmonicLabel::Real { n, j })?;
        out.insert(hw, 1)?;
    }
    Ok(out)
}

/// The `U(n)`-types of sections of the line bundle of degree `k` on the
/// sphere `S^{2n-1}`: `H^{α,β}(ℂ^n)` with `α - β = -k`, `α + β ≤ dmax`.
pub fn l2_line_bundle_sphere(n: usize, k: i64, dmax: u32) -> Result<IrrepDecomposition> {
    if n < 2 {
        return Err(Error::domain(format!(
            "line bundle sphere needs n >= 2, got {n}"
        )));
    }
    let mut out = IrrepDecomposition::new(GroupLabel::u(n));
    for (alpha, beta) in bidegrees_with_charge(k, dmax) {
        let (_, hw) = harmonic_weight(HarmonicLabel::Complex { n, alpha, beta })?;
        out.insert(hw, 1)?;
    }
    Ok(out)
}

/// `(α, β)` with `α - β = -k` and `α + β ≤ dmax`, in increasing degree.
pub fn bidegrees_with_charge(k: i64, dmax: u32) -> Vec<(u32, u32)> {
    (0..=dmax)
        .filter_map(|beta| {
            let alpha = beta as i64 - k;
            (alpha >= 0 && alpha as u32 + beta <= dmax).then_some((alpha as u32, beta))
        })
        .collect()
}

/// Inverse of [`harmonic_weight`] for `U(n)`: reads `(α, 0, …, 0, -β)`.
pub fn complex_label_of(n: usize, hw: &Weight) -> Option<HarmonicLabel> {
    let c = hw.coords();
    if c.len() != n {
        return None;
    }
    let (alpha, beta) = if n == 1 {
        (c[0].max(0), (-c[0]).max(0))
    } else {
        if c[1..n - 1].iter().any(|&x| x != 0) || c[0] < 0 || c[n - 1] > 0 {
            return None;
        }
        (c[0], -c[n - 1])
    };
    Some(HarmonicLabel::Complex {
        n,
        alpha: alpha.to_u32()?,
        beta: beta.to_u32()?,
    })
}

/// Inverse of [`harmonic_weight`] for `Sp(m)`: reads `(α, β, 0, …, 0)`.
pub fn quaternionic_label_of(m: usize, hw: &Weight) -> Option<HarmonicLabel> {
    let c = hw.coords();
    if c.len() != m || c.iter().skip(2).any(|&x| x != 0) {
        return None;
    }
    let alpha = c[0].to_u32()?;
    let beta = c.get(1).copied().unwrap_or(0).to_u32()?;
    HarmonicLabel::Quaternionic { m, alpha, beta }
        .validate()
        .ok()
}
