//! Weyl characters, greedy decomposition into irreducibles, torus-level
//! restriction along subgroup embeddings, and Frobenius multiplicities.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::laurent::{default_vars, LaurentChar};
use crate::weights::{weyl_dim, Classical, GroupLabel, Limits, Weight};

const FACTOR_PREFIXES: [&str; 6] = ["z", "w", "u", "v", "s", "r"];

/// Torus variable names for a group: `z1..` for the first factor, `w1..` for the second, …
pub fn torus_vars(group: &GroupLabel) -> Vec<String> {
    group
        .factors()
        .iter()
        .enumerate()
        .flat_map(|(i, c)| default_vars(FACTOR_PREFIXES[i % FACTOR_PREFIXES.len()], c.rank()))
        .collect()
}

/// Character of the irreducible representation with highest weight `hw`.
pub fn irreducible_character(group: &GroupLabel, hw: &Weight) -> Result<LaurentChar> {
    irreducible_character_with(group, hw, &Limits::global())
}

pub fn irreducible_character_with(
    group: &GroupLabel,
    hw: &Weight,
    limits: &Limits,
) -> Result<LaurentChar> {
    group.validate()?;
    if !group.is_dominant(hw.coords()) {
        return Err(Error::domain(format!("{hw} is not dominant for {group}")));
    }
    if hw.degree() > limits.degree_cap {
        return Err(Error::ResourceLimit {
            what: format!("degree budget for {group} highest weight {hw}"),
            limit: limits.degree_cap,
            requested: hw.degree(),
        });
    }
    let parts = group.split(hw.coords())?;
    let mut acc: Option<LaurentChar> = None;
    for (c, part) in group.factors().iter().zip(parts) {
        let chi = factor_character(*c, part, limits)?;
        acc = Some(match acc {
            None => (*chi).clone(),
            Some(prev) => prev.tensor(&chi),
        });
    }
    acc.expect("non-empty product").with_vars(torus_vars(group))
}

type CharCache = Mutex<HashMap<(Classical, Vec<i64>), Arc<LaurentChar>>>;

// Memo for per-factor characters; results are pure functions of the key.
fn cache() -> &'static CharCache {
    static CACHE: OnceLock<CharCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn factor_character(c: Classical, hw: &[i64], limits: &Limits) -> Result<Arc<LaurentChar>> {
    let key = (c, hw.to_vec());
    if let Some(hit) = cache().lock().expect("cache poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let chi = match c {
        Classical::O(n) => {
            let so = Classical::SO(n);
            let mut chi = weyl_character(so, hw, limits)?;
            if n % 2 == 0 && hw.last().is_some_and(|&x| x != 0) {
                let mut flipped = hw.to_vec();
                *flipped.last_mut().unwrap() *= -1;
                chi += &weyl_character(so, &flipped, limits)?;
            }
            chi
        }
        _ => weyl_character(c, hw, limits)?,
    };
    let chi = Arc::new(chi);
    cache()
        .lock()
        .expect("cache poisoned")
        .insert(key, chi.clone());
    Ok(chi)
}

/// Alternating numerator divided exactly by the Weyl denominator.
///
/// Both alternants are normalised by `e^{-ρ}`, so every exponent is integral
/// even when `ρ` is not (type B).
fn weyl_character(c: Classical, hw: &[i64], limits: &Limits) -> Result<LaurentChar> {
    let r = c.rank();
    if c.positive_roots().is_empty() {
        return Ok(LaurentChar::monomial(hw.to_vec(), 1));
    }
    let two_rho = c.two_rho();
    let lifted: Vec<i64> = hw.iter().zip(&two_rho).map(|(l, t)| 2 * l + t).collect();
    let mut numerator = LaurentChar::zero(r);
    let mut denominator = LaurentChar::zero(r);
    let halve = |v: Vec<i64>| -> Vec<i64> {
        v.iter()
            .zip(&two_rho)
            .map(|(x, t)| {
                debug_assert_eq!((x - t) % 2, 0);
                (x - t) / 2
            })
            .collect()
    };
    for w in c.weyl_group(limits)? {
        let det = BigInt::from(w.det());
        numerator.add_term(halve(w.apply(&lifted)), det.clone());
        denominator.add_term(halve(w.apply(&two_rho)), det);
    }
    numerator.div_exact(&denominator)
}

/// A multiset of irreducibles of a compact group, keyed by highest weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepDecomposition {
    pub group: GroupLabel,
    pub entries: BTreeMap<Weight, u64>,
}

impl IrrepDecomposition {
    pub fn new(group: GroupLabel) -> Self {
        IrrepDecomposition {
            group,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        group: GroupLabel,
        entries: impl IntoIterator<Item = (Weight, u64)>,
    ) -> Result<Self> {
        let mut d = Self::new(group);
        for (w, m) in entries {
            d.insert(w, m)?;
        }
        Ok(d)
    }

    pub fn insert(&mut self, w: Weight, mult: u64) -> Result<()> {
        if !self.group.is_dominant(w.coords()) {
            return Err(Error::domain(format!(
                "{w} is not dominant for {}",
                self.group
            )));
        }
        if mult > 0 {
            *self.entries.entry(w).or_default() += mult;
        }
        Ok(())
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn total_dimension(&self) -> Result<u128> {
        self.entries
            .iter()
            .map(|(w, m)| Ok(weyl_dim(&self.group, w)? * *m as u128))
            .sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &u64)> {
        self.entries.iter()
    }
}

impl fmt::Display for IrrepDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {{", self.group)?;
        for (i, (w, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}:{m}")?;
        }
        f.write_str("}")
    }
}

/// Greedy highest-weight extraction.
///
/// The lexicographic leading exponent of a genuine character is dominant and
/// is a highest weight of some constituent; its coefficient is that
/// constituent's multiplicity. `O(n)` factors are decomposed as `SO(n)` and the
/// pairs `λ, λ'` (last sign flipped) are folded into one `O(n)` type.
pub fn decompose(chi: &LaurentChar, group: &GroupLabel) -> Result<IrrepDecomposition> {
    decompose_with(chi, group, &Limits::global())
}

pub fn decompose_with(
    chi: &LaurentChar,
    group: &GroupLabel,
    limits: &Limits,
) -> Result<IrrepDecomposition> {
    group.validate()?;
    if chi.nvars() != group.rank() {
        return Err(Error::domain(format!(
            "character on {} variables cannot be decomposed over {group} of rank {}",
            chi.nvars(),
            group.rank()
        )));
    }
    let connected = GroupLabel::product(
        group
            .factors()
            .iter()
            .map(|c| match c {
                Classical::O(n) => Classical::SO(*n),
                other => *other,
            })
            .collect(),
    )?;
    let mut rem = chi.clone();
    let mut raw: BTreeMap<Weight, u64> = BTreeMap::new();
    while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
        let not_char = || Error::NotACharacter {
            exponent: e.clone(),
            coefficient: c.to_string(),
        };
        if c.is_negative() || !connected.is_dominant(&e) {
            return Err(not_char());
        }
        let mult = c.to_u64().ok_or_else(not_char)?;
        let hw = Weight::new(e.clone());
        let irr = irreducible_character_with(&connected, &hw, limits)?;
        rem -= &irr.scale(&c);
        raw.insert(hw, mult);
    }
    if connected == *group {
        return Ok(IrrepDecomposition {
            group: group.clone(),
            entries: raw,
        });
    }
    fold_orthogonal(raw, group)
}

fn fold_orthogonal(raw: BTreeMap<Weight, u64>, group: &GroupLabel) -> Result<IrrepDecomposition> {
    let mut out = IrrepDecomposition::new(group.clone());
    let mut pending = raw.clone();
    for (w, m) in raw {
        if !pending.contains_key(&w) {
            continue;
        }
        pending.remove(&w);
        let mut flipped = w.0.clone();
        let mut offset = 0;
        let mut needs_partner = false;
        for c in group.factors() {
            let r = c.rank();
            if let Classical::O(n) = c {
                if n % 2 == 0 && flipped[offset + r - 1] != 0 {
                    needs_partner = true;
                    flipped[offset + r - 1] = -flipped[offset + r - 1];
                }
            }
            offset += r;
        }
        if needs_partner {
            let partner = Weight::new(flipped.clone());
            let pm = pending.remove(&partner).unwrap_or(0);
            if pm != m {
                return Err(Error::NotACharacter {
                    exponent: w.0.clone(),
                    coefficient: format!("{m} (partner {partner} has {pm})"),
                });
            }
            out.insert(Weight::new(fold_lasts(group, w.0.clone())), m)?;
        } else {
            out.insert(w, m)?;
        }
    }
    Ok(out)
}

fn fold_lasts(group: &GroupLabel, mut w: Vec<i64>) -> Vec<i64> {
    let mut offset = 0;
    for c in group.factors() {
        let r = c.rank();
        if matches!(c, Classical::O(_)) && r > 0 {
            w[offset + r - 1] = w[offset + r - 1].abs();
        }
        offset += r;
    }
    w
}

/// Tests invariance of the exponent support under each factor's Weyl group.
pub fn is_weyl_invariant(chi: &LaurentChar, group: &GroupLabel) -> Result<bool> {
    let limits = Limits::global();
    if chi.nvars() != group.rank() {
        return Err(Error::domain("variable-count mismatch"));
    }
    let mut offset = 0;
    for c in group.factors() {
        let r = c.rank();
        for w in c.weyl_group(&limits)? {
            for (e, k) in chi.terms() {
                let mut image = e.clone();
                image[offset..offset + r].copy_from_slice(&w.apply(&e[offset..offset + r]));
                if chi.coeff(&image) != *k {
                    return Ok(false);
                }
            }
        }
        offset += r;
    }
    Ok(true)
}

/// An embedding of maximal tori `T_sub → T_ambient`.
///
/// `matrix` has one row per ambient coordinate and one column per subgroup
/// coordinate; column `j` lists the exponents with which subgroup coordinate
/// `j` enters each ambient eigenvalue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusEmbedding {
    pub name: String,
    pub ambient: GroupLabel,
    pub sub: GroupLabel,
    pub matrix: Vec<Vec<i64>>,
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

impl TorusEmbedding {
    pub fn new(
        name: impl Into<String>,
        ambient: GroupLabel,
        sub: GroupLabel,
        matrix: Vec<Vec<i64>>,
    ) -> Result<Self> {
        if matrix.len() != ambient.rank() || matrix.iter().any(|r| r.len() != sub.rank()) {
            return Err(Error::domain(format!(
                "embedding matrix must be {}x{}",
                ambient.rank(),
                sub.rank()
            )));
        }
        Ok(TorusEmbedding {
            name: name.into(),
            ambient,
            sub,
            matrix,
        })
    }

    /// A block-diagonal subgroup sharing the ambient torus coordinates.
    pub fn coordinate(ambient: GroupLabel, sub: Vec<Classical>) -> Result<Self> {
        let sub = GroupLabel::product(sub)?;
        let name = format!("{sub}<{ambient}");
        let n = ambient.rank();
        Self::new(name, ambient, sub, identity(n))
    }

    /// `U(p)×U(q) ⊂ U(p+q)`.
    pub fn u_block(p: usize, q: usize) -> Result<Self> {
        Self::coordinate(GroupLabel::u(p + q), vec![Classical::U(p), Classical::U(q)])
    }

    /// `U(1)×U(n-1) ⊂ U(n)`, the compact part of the maximal parabolic.
    pub fn u1_un1(n: usize) -> Result<Self> {
        let mut sub = vec![Classical::U(1)];
        if n > 1 {
            sub.push(Classical::U(n - 1));
        }
        Self::coordinate(GroupLabel::u(n), sub)
    }

    /// `Sp(m) ⊂ U(2m)` with eigenvalues `(x1, x1⁻¹, …, xm, xm⁻¹)`.
    pub fn sp_in_u(m: usize) -> Result<Self> {
        let mut matrix = vec![vec![0; m]; 2 * m];
        for i in 0..m {
            matrix[2 * i][i] = 1;
            matrix[2 * i + 1][i] = -1;
        }
        Self::new(
            format!("Sp({m})<U({})", 2 * m),
            GroupLabel::u(2 * m),
            GroupLabel::sp(m),
            matrix,
        )
    }

    /// `SO(n) ⊂ U(n)` as real orthogonal matrices; rotation planes `(1,2), (3,4), …`.
    pub fn so_in_u(n: usize) -> Result<Self> {
        Self::orthogonal_in_u(n, Classical::SO(n))
    }

    /// `O(n) ⊂ U(n)`, torus data as for `SO(n)`.
    pub fn o_in_u(n: usize) -> Result<Self> {
        Self::orthogonal_in_u(n, Classical::O(n))
    }

    fn orthogonal_in_u(n: usize, sub: Classical) -> Result<Self> {
        let r = n / 2;
        let mut matrix = vec![vec![0; r]; n];
        for i in 0..r {
            matrix[2 * i][i] = 1;
            matrix[2 * i + 1][i] = -1;
        }
        Self::new(
            format!("{sub}<U({n})"),
            GroupLabel::u(n),
            GroupLabel::single(sub.validate()?),
            matrix,
        )
    }

    /// `U(n) ⊂ SO(2n)` via the complex structure.
    pub fn u_in_so(n: usize) -> Result<Self> {
        Self::new(
            format!("U({n})<SO({})", 2 * n),
            GroupLabel::so(2 * n),
            GroupLabel::u(n),
            identity(n),
        )
    }

    /// `U(n) ⊂ O(2n)`.
    pub fn u_in_o(n: usize) -> Result<Self> {
        Self::new(
            format!("U({n})<O({})", 2 * n),
            GroupLabel::o(2 * n),
            GroupLabel::u(n),
            identity(n),
        )
    }

    /// `Sp(m) ⊂ U(2m) ⊂ SO(4m)`.
    pub fn sp_in_so(m: usize) -> Result<Self> {
        Self::sp_in_u(m)?.compose_after(&Self::u_in_so(2 * m)?)
    }

    /// `SO(2)×SO(n-2) ⊂ SO(n)`; the second factor is dropped when `n - 2 < 2`.
    pub fn so2_so(n: usize) -> Result<Self> {
        let mut sub = vec![Classical::SO(2)];
        if n >= 4 {
            sub.push(Classical::SO(n - 2));
        }
        Self::coordinate(GroupLabel::so(n), sub)
    }

    /// `Sp(1)×Sp(m-1) ⊂ Sp(m)`.
    pub fn sp1_sp(m: usize) -> Result<Self> {
        let mut sub = vec![Classical::Sp(1)];
        if m > 1 {
            sub.push(Classical::Sp(m - 1));
        }
        Self::coordinate(GroupLabel::sp(m), sub)
    }

    /// `U(1)×Sp(m-1) ⊂ Sp(m)`.
    pub fn u1_sp(m: usize) -> Result<Self> {
        let mut sub = vec![Classical::U(1)];
        if m > 1 {
            sub.push(Classical::Sp(m - 1));
        }
        Self::coordinate(GroupLabel::sp(m), sub)
    }

    /// `U(1) ⊂ SU2` (diagonal torus).
    pub fn u1_in_su2() -> Result<Self> {
        Self::coordinate(GroupLabel::su2(), vec![Classical::U(1)])
    }

    /// `U(1) ⊂ Sp(1)`, the unit complex numbers inside the unit quaternions.
    pub fn u1_in_sp1() -> Result<Self> {
        Self::coordinate(GroupLabel::sp(1), vec![Classical::U(1)])
    }

    /// `U(1)×U(p-1)×U(q-1) ⊂ U(p)×U(q)` as `diag(μ, g1, g2, μ)`; empty factors are dropped.
    pub fn u1_diag_in_upq(p: usize, q: usize) -> Result<Self> {
        let ambient = GroupLabel::product(vec![Classical::U(p), Classical::U(q)])?;
        let mut sub = vec![Classical::U(1)];
        sub.extend((p > 1).then_some(Classical::U(p - 1)));
        sub.extend((q > 1).then_some(Classical::U(q - 1)));
        let cols = p + q - 1;
        let mut matrix = vec![vec![0; cols]; p + q];
        matrix[0][0] = 1;
        matrix[p + q - 1][0] = 1;
        for (row, col) in (1..p).zip(1..) {
            matrix[row][col] = 1;
        }
        for (row, col) in (p..p + q - 1).zip(p..) {
            matrix[row][col] = 1;
        }
        let sub = GroupLabel::product(sub)?;
        Self::new(format!("{sub}<{ambient}"), ambient, sub, matrix)
    }

    /// `O(2)×O(n-2) ⊂ O(n)` on torus data, i.e. `SO(2)×SO(n-2)`; the second
    /// factor is dropped when `n - 2 < 2`.
    pub fn o2_in_o(n: usize) -> Result<Self> {
        let mut sub = vec![Classical::SO(2)];
        if n >= 4 {
            sub.push(Classical::SO(n - 2));
        }
        Self::coordinate(GroupLabel::o(n), sub)
    }

    /// Composite `self.sub ⊂ self.ambient = outer.sub ⊂ outer.ambient`.
    pub fn compose_after(&self, outer: &TorusEmbedding) -> Result<Self> {
        if outer.sub != self.ambient {
            return Err(Error::domain(format!(
                "cannot compose {} after {}",
                self.name, outer.name
            )));
        }
        let rows = outer.ambient.rank();
        let cols = self.sub.rank();
        let mut matrix = vec![vec![0; cols]; rows];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..self.ambient.rank())
                    .map(|k| outer.matrix[i][k] * self.matrix[k][j])
                    .sum();
            }
        }
        Self::new(
            format!("{}<{}", self.sub, outer.ambient),
            outer.ambient.clone(),
            self.sub.clone(),
            matrix,
        )
    }
}

/// Torus-level restriction along `emb`.
pub fn restrict(chi: &LaurentChar, emb: &TorusEmbedding) -> Result<LaurentChar> {
    if chi.nvars() != emb.ambient.rank() {
        return Err(Error::domain(format!(
            "character on {} variables does not live on the torus of {}",
            chi.nvars(),
            emb.ambient
        )));
    }
    chi.push_forward(&emb.matrix, torus_vars(&emb.sub))
}

/// `[σ|_sub : τ]`, which by Frobenius reciprocity is the multiplicity of `σ`
/// in the representation of the ambient group induced from `τ`.
pub fn frobenius_multiplicity(
    ambient: &GroupLabel,
    sigma: &Weight,
    sub: &GroupLabel,
    emb: &TorusEmbedding,
    tau: &Weight,
) -> Result<u64> {
    check_embedding(ambient, sub, emb)?;
    if !sub.is_dominant(tau.coords()) {
        return Err(Error::domain(format!("{tau} is not dominant for {sub}")));
    }
    Ok(restricted_decomposition(ambient, sigma, emb)?.multiplicity(tau))
}

fn check_embedding(ambient: &GroupLabel, sub: &GroupLabel, emb: &TorusEmbedding) -> Result<()> {
    if emb.ambient != *ambient || emb.sub != *sub {
        return Err(Error::domain(format!(
            "embedding {} does not match {sub} < {ambient}",
            emb.name
        )));
    }
    Ok(())
}

/// `decompose(restrict(χ_σ, emb), emb.sub)`.
pub fn restricted_decomposition(
    ambient: &GroupLabel,
    sigma: &Weight,
    emb: &TorusEmbedding,
) -> Result<IrrepDecomposition> {
    let chi = irreducible_character(ambient, sigma)?;
    decompose(&restrict(&chi, emb)?, &emb.sub)
}

/// All dominant weights of `group` with total degree at most `dmax`.
pub fn dominant_weights_up_to(group: &GroupLabel, dmax: usize) -> Vec<Weight> {
    fn go(
        group: &GroupLabel,
        prefix: &mut Vec<i64>,
        budget: i64,
        rank: usize,
        out: &mut Vec<Weight>,
    ) {
        if prefix.len() == rank {
            if group.is_dominant(prefix) {
                out.push(Weight::new(prefix.clone()));
            }
            return;
        }
        for x in -budget..=budget {
            prefix.push(x);
            go(group, prefix, budget - x.abs(), rank, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(group, &mut Vec::new(), dmax as i64, group.rank(), &mut out);
    out.sort();
    out
}

/// `Σ_w mult·χ_w` for a decomposition; the inverse of [`decompose`].
pub fn character_of(decomp: &IrrepDecomposition) -> Result<LaurentChar> {
    let mut acc = LaurentChar::zero_in(torus_vars(&decomp.group));
    for (w, m) in &decomp.entries {
        acc += &irreducible_character(&decomp.group, w)?.scale(&BigInt::from(*m));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn g(s: &str) -> GroupLabel {
        s.parse().unwrap()
    }

    fn lc(n: usize, terms: &[(&[i64], i64)]) -> LaurentChar {
        LaurentChar::from_terms(n, terms.iter().map(|(e, k)| (e.to_vec(), *k)))
    }

    #[test]
    fn small_characters() {
        let su2 = irreducible_character(&GroupLabel::su2(), &w(&[2])).unwrap();
        assert_eq!(su2.to_string(), "z1^2 + 1 + z1^-2");
        let u2 = irreducible_character(&GroupLabel::u(2), &w(&[1, 0])).unwrap();
        assert_eq!(u2, lc(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
        let sp1 = irreducible_character(&GroupLabel::sp(1), &w(&[1])).unwrap();
        assert_eq!(sp1, lc(1, &[(&[1], 1), (&[-1], 1)]));
        let so3 = irreducible_character(&GroupLabel::so(3), &w(&[1])).unwrap();
        assert_eq!(so3, lc(1, &[(&[1], 1), (&[0], 1), (&[-1], 1)]));
        let o2 = irreducible_character(&GroupLabel::o(2), &w(&[3])).unwrap();
        assert_eq!(o2, lc(1, &[(&[3], 1), (&[-3], 1)]));
    }

    #[test]
    fn budget_is_enforced() {
        let limits = Limits {
            rank_cap: 8,
            degree_cap: 4,
        };
        let err = irreducible_character_with(&GroupLabel::u(2), &w(&[3, -2]), &limits).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { requested: 5, .. }));
        assert!(irreducible_character(&GroupLabel::u(2), &w(&[0, 1])).is_err());
    }

    #[test]
    fn tensor_square_of_standard_u2() {
        let v = irreducible_character(&GroupLabel::u(2), &w(&[1, 0])).unwrap();
        let d = decompose(&(&v * &v), &GroupLabel::u(2)).unwrap();
        let expected =
            IrrepDecomposition::from_entries(GroupLabel::u(2), [(w(&[2, 0]), 1), (w(&[1, 1]), 1)])
                .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn adjoint_su2_on_diagonal_torus() {
        let chi = irreducible_character(&GroupLabel::u(2), &w(&[1, -1])).unwrap();
        let emb = TorusEmbedding::u_block(1, 1).unwrap();
        let d = decompose(&restrict(&chi, &emb).unwrap(), &emb.sub).unwrap();
        let expected = IrrepDecomposition::from_entries(
            g("U(1)xU(1)"),
            [(w(&[1, -1]), 1), (w(&[0, 0]), 1), (w(&[-1, 1]), 1)],
        )
        .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn restriction_examples() {
        // Vector representation of SO(4) seen by U(2).
        let v = irreducible_character(&GroupLabel::so(4), &w(&[1, 0])).unwrap();
        let r = restrict(&v, &TorusEmbedding::u_in_so(2).unwrap()).unwrap();
        assert_eq!(
            r,
            lc(
                2,
                &[(&[1, 0], 1), (&[0, 1], 1), (&[-1, 0], 1), (&[0, -1], 1)]
            )
        );
        // z1 + z2 on the diagonal torus of U(1)xU(1).
        let std2 = irreducible_character(&GroupLabel::u(2), &w(&[1, 0])).unwrap();
        let r = restrict(&std2, &TorusEmbedding::u_block(1, 1).unwrap()).unwrap();
        assert_eq!(r.vars(), ["z1", "w1"]);
        assert_eq!(r.coeff(&[1, 0]), BigInt::from(1));
        assert_eq!(r.coeff(&[0, 1]), BigInt::from(1));
        // C^2 as a quaternionic line.
        let r = restrict(&std2, &TorusEmbedding::sp_in_u(1).unwrap()).unwrap();
        assert_eq!(r, lc(1, &[(&[1], 1), (&[-1], 1)]));
        assert!(restrict(&std2, &TorusEmbedding::u_in_so(3).unwrap()).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let sp1 = GroupLabel::sp(1);
        let u1 = GroupLabel::u(1);
        let emb = TorusEmbedding::u1_in_sp1().unwrap();
        for j in 0..8i64 {
            for k in -8..=8i64 {
                let m = frobenius_multiplicity(&sp1, &w(&[j]), &u1, &emb, &w(&[-k])).unwrap();
                let expected = u64::from(j >= k.abs() && (j - k).rem_euclid(2) == 0);
                assert_eq!(m, expected, "j={j} k={k}");
            }
        }
        let emb = TorusEmbedding::u_block(1, 1).unwrap();
        let m = frobenius_multiplicity(
            &GroupLabel::u(2),
            &w(&[1, 0]),
            &g("U(1)xU(1)"),
            &emb,
            &w(&[1, 0]),
        )
        .unwrap();
        assert_eq!(m, 1);
        // SO(4) vector: weights ±e1, ±e2, one each on SO(2)xSO(2).
        let emb = TorusEmbedding::so2_so(4).unwrap();
        let sub = g("SO(2)xSO(2)");
        for (tau, expected) in [([1, 0], 1), ([0, -1], 1), ([0, 0], 0), ([1, 1], 0)] {
            let m = frobenius_multiplicity(&GroupLabel::so(4), &w(&[1, 0]), &sub, &emb, &w(&tau))
                .unwrap();
            assert_eq!(m, expected);
        }
    }

    #[test]
    fn negative_leading_term_is_not_a_character() {
        let chi = lc(1, &[(&[1], -1), (&[-1], -1)]);
        assert!(matches!(
            decompose(&chi, &GroupLabel::sp(1)),
            Err(Error::NotACharacter { .. })
        ));
        // Not Weyl-symmetric: the leading term is not dominant.
        let chi = lc(2, &[(&[0, 1], 1)]);
        assert!(matches!(
            decompose(&chi, &GroupLabel::u(2)),
            Err(Error::NotACharacter { .. })
        ));
    }

    #[test]
    fn orthogonal_folding() {
        let chi = irreducible_character(&GroupLabel::o(4), &w(&[1, 1])).unwrap();
        assert_eq!(chi.dimension(), BigInt::from(6));
        let d = decompose(&chi, &GroupLabel::o(4)).unwrap();
        assert_eq!(
            d.entries.into_iter().collect::<Vec<_>>(),
            vec![(w(&[1, 1]), 1)]
        );
        // Half of the pair alone is not an O(4) character.
        let half = irreducible_character(&GroupLabel::so(4), &w(&[1, 1])).unwrap();
        assert!(decompose(&half, &GroupLabel::o(4)).is_err());
    }

    #[test]
    fn composite_embedding_matrix() {
        let e = TorusEmbedding::sp_in_so(2).unwrap();
        assert_eq!(e.ambient, GroupLabel::so(8));
        assert_eq!(
            e.matrix,
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]
        );
    }

    fn grid() -> Vec<(GroupLabel, Weight)> {
        let mut out = Vec::new();
        for name in [
            "U(1)",
            "U(2)",
            "U(3)",
            "Sp(1)",
            "Sp(2)",
            "SO(3)",
            "SO(4)",
            "SO(5)",
            "SO(6)",
            "O(4)",
            "SU2",
            "U(2)xSp(1)",
        ] {
            let group = g(name);
            for hw in dominant_weights_up_to(&group, 3) {
                out.push((group.clone(), hw));
            }
        }
        out
    }

    #[test]
    fn round_trip_and_dimension_over_grid() {
        for (group, hw) in grid() {
            let chi = irreducible_character(&group, &hw).unwrap();
            assert_eq!(
                chi.dimension(),
                BigInt::from(weyl_dim(&group, &hw).unwrap()),
                "{group} {hw}"
            );
            assert!(is_weyl_invariant(&chi, &group).unwrap(), "{group} {hw}");
            let d = decompose(&chi, &group).unwrap();
            assert_eq!(d.entries.len(), 1, "{group} {hw}");
            assert_eq!(d.multiplicity(&hw), 1, "{group} {hw}");
        }
    }

    #[test]
    fn restrictions_preserve_dimension_and_symmetry() {
        let cases = [
            (TorusEmbedding::u_in_so(2).unwrap(), 3),
            (TorusEmbedding::u_in_so(3).unwrap(), 2),
            (TorusEmbedding::sp_in_u(2).unwrap(), 3),
            (TorusEmbedding::so_in_u(3).unwrap(), 3),
            (TorusEmbedding::so_in_u(4).unwrap(), 2),
            (TorusEmbedding::so2_so(5).unwrap(), 3),
            (TorusEmbedding::sp1_sp(2).unwrap(), 3),
            (TorusEmbedding::u_block(2, 1).unwrap(), 3),
            (TorusEmbedding::u1_in_su2().unwrap(), 4),
        ];
        for (emb, dmax) in cases {
            for hw in dominant_weights_up_to(&emb.ambient, dmax) {
                let chi = irreducible_character(&emb.ambient, &hw).unwrap();
                let r = restrict(&chi, &emb).unwrap();
                assert_eq!(r.dimension(), chi.dimension());
                assert!(
                    is_weyl_invariant(&r, &emb.sub).unwrap(),
                    "{} {hw}",
                    emb.name
                );
                let d = decompose(&r, &emb.sub).unwrap();
                assert_eq!(BigInt::from(d.total_dimension().unwrap()), chi.dimension());
            }
        }
    }

    proptest! {
        #[test]
        fn decomposition_ignores_insertion_order(seed in any::<u64>(), hw in 0usize..40) {
            let group = GroupLabel::u(3);
            let weights = dominant_weights_up_to(&group, 2);
            let a = irreducible_character(&group, &weights[hw % weights.len()]).unwrap();
            let b = irreducible_character(&group, &weights[(hw / 3) % weights.len()]).unwrap();
            let chi = &a * &b;
            let mut terms: Vec<_> = chi.terms().map(|(e, k)| (e.clone(), k.clone())).collect();
            let n = terms.len();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                terms.swap(i, (s >> 33) as usize % (i + 1));
            }
            let shuffled = LaurentChar::from_terms(3, terms);
            prop_assert_eq!(decompose(&shuffled, &group).unwrap(), decompose(&chi, &group).unwrap());
        }

        #[test]
        fn decompose_inverts_character_of(a in 0usize..15, b in 0usize..15, m in 1u64..4) {
            let group = GroupLabel::sp(2);
            let weights = dominant_weights_up_to(&group, 3);
            let d = IrrepDecomposition::from_entries(
                group.clone(),
                [(weights[a % weights.len()].clone(), m), (weights[b % weights.len()].clone(), 1)],
            ).unwrap();
            let chi = character_of(&d).unwrap();
            prop_assert_eq!(decompose(&chi, &group).unwrap(), d);
        }
    }
}
