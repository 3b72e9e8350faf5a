//! Brute-force checks of the finitely verifiable branching statements and of
//! the K-type consistency of the continuous spectra.
//!
//! Every check is an exact integer or set comparison. Each restriction also
//! checks that dimensions are conserved.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::character::{
    dominant_weights_up_to, frobenius_multiplicity, irreducible_character, restrict,
    IrrepDecomposition, TorusEmbedding,
};
use crate::error::{Error, Result};
use crate::harmonics::{
    bidegrees_with_charge, harmonic_character, harmonic_dim, harmonic_weight,
    l2_line_bundle_sphere, real_harmonic_dim_closed_form, HarmonicLabel,
};
use crate::laurent::LaurentChar;
use crate::spectrum::{
    a_minus_set, a_plus_set, gl2r_discrete_params, rat, ParamSet, Series, SubquotientKind,
};
use crate::theorems::{
    big_outside_uniqueness_range, branch, branch_with, ktype_support, ktype_support_at,
    quat_multiplicities, BranchRequest, Subgroup,
};
use crate::weights::{GroupLabel, Weight};

/// Trailing window of the stabilisation guard in [`verify_h3_split`].
pub const STABILITY_WINDOW: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim: String,
    pub params: Map<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub millis: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == Status::Fail
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(
            f,
            "{status} {} {}",
            self.claim,
            Value::Object(self.params.clone())
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness={w}")?;
        }
        if let Some(r) = &self.reason {
            write!(f, " reason={r}")?;
        }
        Ok(())
    }
}

enum Outcome {
    Pass,
    Skipped(String),
}

/// Early exit from a check body: an engine error or a failure witness.
enum Abort {
    Engine(Error),
    Fail(Value),
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        Abort::Engine(e)
    }
}

type Check = std::result::Result<Outcome, Abort>;

fn ensure(cond: bool, witness: impl FnOnce() -> Value) -> std::result::Result<(), Abort> {
    if cond {
        Ok(())
    } else {
        Err(Abort::Fail(witness()))
    }
}

fn run(claim: &str, params: Value, body: impl FnOnce() -> Check) -> Report {
    let start = Instant::now();
    let outcome = body();
    let millis = start.elapsed().as_millis() as u64;
    let params = match params {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    let (status, witness, reason) = match outcome {
        Ok(Outcome::Pass) => (Status::Pass, None, None),
        Ok(Outcome::Skipped(r)) => (Status::Skipped, None, Some(r)),
        Err(Abort::Fail(w)) => (Status::Fail, Some(w), None),
        Err(Abort::Engine(e @ (Error::NoKTypeOracle(_) | Error::ResourceLimit { .. }))) => {
            (Status::Skipped, None, Some(e.to_string()))
        }
        Err(Abort::Engine(e)) => (Status::Fail, Some(json!({ "error": e.to_string() })), None),
    };
    Report {
        claim: claim.to_string(),
        params,
        status,
        witness,
        reason,
        millis,
    }
}

/// Restricts and decomposes, failing unless dimensions are conserved.
fn restrict_checked(
    chi: &LaurentChar,
    emb: &TorusEmbedding,
) -> std::result::Result<IrrepDecomposition, Abort> {
    let decomp = crate::character::decompose(&restrict(chi, emb)?, &emb.sub)?;
    let before = chi.dimension();
    let after = decomp.total_dimension()?;
    ensure(
        before == after.into(),
        || json!({ "embedding": emb.name, "dimension_before": before.to_string(), "dimension_after": after.to_string() }),
    )?;
    Ok(decomp)
}

fn first_mismatch(
    expected: &BTreeMap<Weight, u64>,
    actual: &BTreeMap<Weight, u64>,
) -> Option<(Weight, u64, u64)> {
    let keys: BTreeSet<&Weight> = expected.keys().chain(actual.keys()).collect();
    keys.into_iter().find_map(|w| {
        let e = expected.get(w).copied().unwrap_or(0);
        let a = actual.get(w).copied().unwrap_or(0);
        (e != a).then(|| (w.clone(), e, a))
    })
}

fn same_multiset(
    what: &str,
    expected: &BTreeMap<Weight, u64>,
    actual: &BTreeMap<Weight, u64>,
) -> std::result::Result<(), Abort> {
    match first_mismatch(expected, actual) {
        None => Ok(()),
        Some((w, e, a)) => Err(Abort::Fail(json!({
            "check": what, "weight": w.to_string(), "expected": e, "actual": a
        }))),
    }
}

fn as_multiset<'a>(types: impl IntoIterator<Item = &'a Weight>) -> BTreeMap<Weight, u64> {
    types.into_iter().map(|w| (w.clone(), 1)).collect()
}

fn same_set(
    what: &str,
    expected: &BTreeSet<Weight>,
    actual: &BTreeSet<Weight>,
) -> std::result::Result<(), Abort> {
    same_multiset(what, &as_multiset(expected), &as_multiset(actual))
}

fn label_weight(label: HarmonicLabel) -> std::result::Result<Weight, Abort> {
    Ok(harmonic_weight(label)?.1)
}

/// `H^j(ℝ^{2n})|_{U(n)}` through the full character pipeline, checked against
/// `⊕_{α+β=j} H^{α,β}(ℂ^n)` and the binomial dimension.
fn harmonic_split_degree(n: usize, j: u32) -> std::result::Result<IrrepDecomposition, Abort> {
    let chi = harmonic_character(HarmonicLabel::Real { n: 2 * n, j })?;
    let closed = real_harmonic_dim_closed_form(2 * n, j);
    ensure(
        chi.dimension() == closed,
        || json!({ "degree": j, "character_dimension": chi.dimension().to_string(), "binomial": closed.to_string() }),
    )?;
    let decomp = restrict_checked(&chi, &TorusEmbedding::u_in_o(n)?)?;
    let mut expected = BTreeMap::new();
    let mut dims = 0u128;
    for alpha in 0..=j {
        let label = HarmonicLabel::Complex {
            n,
            alpha,
            beta: j - alpha,
        };
        if label.validate().is_err() {
            continue;
        }
        dims += harmonic_dim(label)?;
        expected.insert(label_weight(label)?, 1);
    }
    same_multiset(&format!("split of degree {j}"), &expected, &decomp.entries)?;
    ensure(
        closed == dims.into(),
        || json!({ "degree": j, "sum_of_bidegree_dims": dims.to_string(), "binomial": closed.to_string() }),
    )?;
    Ok(decomp)
}

/// `H^j(ℝ^{2n}) = ⊕_{α+β=j} H^{α,β}(ℂ^n)` for `j ≤ jmax`, with dimensions.
pub fn verify_harmonic_split(n: usize, jmax: u32) -> Report {
    run(
        "harmonic-split",
        json!({ "n": n, "max_degree": jmax }),
        || {
            for j in 0..=jmax {
                harmonic_split_degree(n, j)?;
            }
            Ok(Outcome::Pass)
        },
    )
}

/// The `U(n)`-types of `π_{iλ,k}` from the character pipeline, against the
/// line-bundle formula and against the `K` constructor.
pub fn verify_thm_k(n: usize, k: i64, dmax: u32) -> Report {
    run(
        "thmK",
        json!({ "n": n, "k": k, "max_degree": dmax }),
        || {
            let mut from_pipeline = IrrepDecomposition::new(GroupLabel::u(n));
            for j in 0..=dmax {
                for (w, m) in harmonic_split_degree(n, j)?.entries {
                    if w.coords().iter().sum::<i64>() == -k {
                        from_pipeline.insert(w, m)?;
                    }
                }
            }
            let formula = l2_line_bundle_sphere(n, k, dmax)?;
            same_multiset(
                "line-bundle formula",
                &formula.entries,
                &from_pipeline.entries,
            )?;
            let spec = branch(&BranchRequest::new(n, Subgroup::K, k, rat(0)))?;
            let support = ktype_support(&spec.components[0], dmax as usize)?;
            same_multiset(
                "K constructor",
                &as_multiset(&support.types),
                &from_pipeline.entries,
            )?;
            Ok(Outcome::Pass)
        },
    )
}

/// `H^j(ℝ^{4m})|_{Sp(m)} = ⊕_{α+β=j, α≥β} (α-β+1)·H^{α,β}(ℍ^m)` for `j ≤ jmax`.
pub fn verify_sp_multiplicity(m: usize, jmax: u32) -> Report {
    run("spmult", json!({ "m": m, "max_degree": jmax }), || {
        let emb = TorusEmbedding::sp_in_so(m)?;
        for j in 0..=jmax {
            let chi = harmonic_character(HarmonicLabel::Real { n: 4 * m, j })?;
            let actual = restrict_checked(&chi, &emb)?;
            let mut expected = BTreeMap::new();
            let mut dims = 0u128;
            for beta in 0..=j / 2 {
                let alpha = j - beta;
                let label = HarmonicLabel::Quaternionic { m, alpha, beta };
                if label.validate().is_err() {
                    continue;
                }
                let mult = (alpha - beta + 1) as u64;
                dims += harmonic_dim(label)? * mult as u128;
                expected.insert(label_weight(label)?, mult);
            }
            same_multiset(&format!("degree {j}"), &expected, &actual.entries)?;
            let closed = real_harmonic_dim_closed_form(4 * m, j);
            ensure(
                closed == dims.into(),
                || json!({ "degree": j, "weighted_dims": dims.to_string(), "binomial": closed.to_string() }),
            )?;
        }
        Ok(Outcome::Pass)
    })
}

/// `π_{0,0}|_{Sp(m)}` from `⊕_γ H^{γ,γ}(ℂ^{2m})|_{Sp(m)}`, one report per
/// `Sp(m)`-type of degree `≤ dmax`.
///
/// `γ` runs to `⌊dmax/2⌋ + W`. A type is certified once none of the last `W`
/// values of `γ` contributed to it; uncertified types are skipped.
pub fn verify_h3_split(m: usize, dmax: u32) -> Vec<Report> {
    let base = json!({ "m": m, "max_degree": dmax });
    let prepared = (|| -> std::result::Result<_, Abort> {
        let top = dmax / 2 + STABILITY_WINDOW;
        let emb = TorusEmbedding::sp_in_u(m)?;
        let mut contributions = Vec::new();
        for gamma in 0..=top {
            let label = HarmonicLabel::Complex {
                n: 2 * m,
                alpha: gamma,
                beta: gamma,
            };
            let chi = irreducible_character(&GroupLabel::u(2 * m), &label_weight(label)?)?;
            contributions.push(restrict_checked(&chi, &emb)?);
        }
        let spec = branch(&BranchRequest::new(2 * m, Subgroup::H3 { m }, 0, rat(0)))?;
        let plus = ktype_support(&spec.components[0], dmax as usize)?.types;
        let minus = ktype_support(&spec.components[1], dmax as usize)?.types;
        Ok((top, contributions, plus, minus))
    })();
    let (top, contributions, plus, minus) = match prepared {
        Ok(x) => x,
        Err(abort) => return vec![run("h3split", base, || Err(abort))],
    };
    dominant_weights_up_to(&GroupLabel::sp(m), dmax as usize)
        .into_iter()
        .map(|sigma| {
            let family = match (plus.contains(&sigma), minus.contains(&sigma)) {
                (true, false) => "+",
                (false, true) => "-",
                (false, false) => "none",
                (true, true) => "both",
            };
            let params = json!({ "m": m, "max_degree": dmax, "type": sigma.to_string(), "family": family });
            run("h3split", params, || {
                ensure(family != "both", || json!({ "type": sigma.to_string(), "family": family }))?;
                let per_gamma: Vec<u64> =
                    contributions.iter().map(|d| d.multiplicity(&sigma)).collect();
                let window = (top + 1 - STABILITY_WINDOW) as usize..=top as usize;
                if per_gamma[window].iter().any(|&c| c > 0) {
                    return Ok(Outcome::Skipped(format!(
                        "still receiving contributions at gamma = {top}; not certified stable"
                    )));
                }
                let total: u64 = per_gamma.iter().sum();
                let expected = u64::from(family != "none");
                ensure(total == expected, || {
                    json!({ "type": sigma.to_string(), "expected": expected, "actual": total, "per_gamma": per_gamma })
                })?;
                Ok(Outcome::Pass)
            })
        })
        .collect()
}

/// `L²(Sp(1)/U(1), L_k) = ⊕_{j≥|k|, j≡k} V_j` by Frobenius reciprocity, plus the
/// `m = 1` quaternionic constructor.
pub fn verify_sp1_bundle(k: i64, jmax: u32) -> Report {
    run("sp1", json!({ "k": k, "max_degree": jmax }), || {
        let emb = TorusEmbedding::u1_in_sp1()?;
        let sp1 = GroupLabel::sp(1);
        let u1 = GroupLabel::u(1);
        let mut found = Vec::new();
        for j in 0..=jmax as i64 {
            let mult = frobenius_multiplicity(
                &sp1,
                &Weight::new(vec![j]),
                &u1,
                &emb,
                &Weight::new(vec![-k]),
            )?;
            let expected = u64::from(j >= k.abs() && (j - k) % 2 == 0);
            ensure(
                mult == expected,
                || json!({ "j": j, "expected": expected, "actual": mult }),
            )?;
            if mult > 0 {
                found.push(j);
            }
        }
        let spec = branch(&BranchRequest::new(2, Subgroup::H4 { m: 1 }, k, rat(0)))?;
        let listed = spec.components[0]
            .params
            .integers_up_to(jmax as i64)
            .unwrap_or_default();
        ensure(
            listed == found,
            || json!({ "constructor": listed, "frobenius": found }),
        )?;
        Ok(Outcome::Pass)
    })
}

/// `O(2)/(O(1)×O(1))` and `O(2)/({1}×O(1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum O2Space {
    X1,
    X2,
}

impl O2Space {
    fn name(self) -> &'static str {
        match self {
            O2Space::X1 => "X1",
            O2Space::X2 => "X2",
        }
    }

    /// Stabiliser as diagonal sign matrices `diag(e1, e2)`.
    fn stabiliser(self) -> &'static [(i64, i64)] {
        match self {
            O2Space::X1 => &[(1, 1), (1, -1), (-1, 1), (-1, -1)],
            O2Space::X2 => &[(1, 1), (1, -1)],
        }
    }

    /// Fourier modes `e^{imθ}` on the circle that descend to the space.
    fn has_mode(self, m: i64) -> bool {
        match self {
            O2Space::X1 => m % 2 == 0,
            O2Space::X2 => true,
        }
    }

    /// Degrees occurring in `L²`: even `j` for `X1`, all `j` for `X2`.
    fn listed(self, j: u32) -> bool {
        self == O2Space::X2 || j.is_multiple_of(2)
    }
}

/// Trace of `diag(e1, e2)` on `H^j(ℝ²)`, spanned by `(x ± iy)^j`.
fn o2_trace(j: u32, (e1, e2): (i64, i64)) -> i64 {
    if j == 0 {
        1
    } else if e1 == e2 {
        2 * e1.pow(j)
    } else {
        0
    }
}

/// Both spaces by Fourier modes on the circle and by stabiliser-fixed vectors.
pub fn verify_o2_spaces(jmax: u32) -> Vec<Report> {
    [O2Space::X1, O2Space::X2]
        .into_iter()
        .map(|space| {
            run("o2", json!({ "space": space.name(), "max_degree": jmax }), || {
                for j in 0..=jmax {
                    let ji = j as i64;
                    let modes = [-ji, ji].into_iter().collect::<BTreeSet<_>>();
                    let isotypic_dim = modes.iter().filter(|&&m| space.has_mode(m)).count() as u128;
                    let dim = harmonic_dim(HarmonicLabel::Real { n: 2, j })?;
                    ensure(dim == if j == 0 { 1 } else { 2 }, || json!({ "j": j, "dim": dim }))?;
                    let stab = space.stabiliser();
                    let trace_sum: i64 = stab.iter().map(|&g| o2_trace(j, g)).sum();
                    ensure(trace_sum % stab.len() as i64 == 0, || json!({ "j": j, "trace_sum": trace_sum }))?;
                    let fixed = (trace_sum / stab.len() as i64) as u128;
                    let listed = u128::from(space.listed(j));
                    ensure(fixed == listed && isotypic_dim == listed * dim, || {
                        json!({ "j": j, "listed": listed == 1, "fixed_vectors": fixed, "fourier_dim": isotypic_dim, "dim": dim })
                    })?;
                }
                Ok(Outcome::Pass)
            })
        })
        .collect()
}

/// `⊕_{α-β=-k, α+β ≤ bound} H^{α,β}(ℂ^n)` restricted along `emb`, types of degree `≤ dmax`.
fn lhs_types(
    n: usize,
    k: i64,
    emb: &TorusEmbedding,
    bound: u32,
    dmax: usize,
) -> std::result::Result<BTreeMap<Weight, u64>, Abort> {
    let mut out = BTreeMap::new();
    for (alpha, beta) in bidegrees_with_charge(k, bound) {
        let hw = label_weight(HarmonicLabel::Complex { n, alpha, beta })?;
        let chi = irreducible_character(&GroupLabel::u(n), &hw)?;
        for (w, m) in restrict_checked(&chi, emb)?.entries {
            if w.degree() <= dmax {
                *out.entry(w).or_default() += m;
            }
        }
    }
    Ok(out)
}

/// Bidegrees beyond the truncation that are still scanned on the left-hand side.
pub const LHS_MARGIN: u32 = 2;

/// Set-level support consistency of a branching law at degree `≤ dmax`
/// (multiplicity-exact for `H4`; containment and `±`-disjointness for `H2`).
pub fn verify_support(n: usize, subgroup: Subgroup, k: i64, dmax: u32) -> Report {
    let claim = format!("support-{}", subgroup.tag());
    let mut params = json!({ "n": n, "k": k, "max_degree": dmax });
    match subgroup {
        Subgroup::H1 { p, q } | Subgroup::H2 { p, q } => {
            params["p"] = json!(p);
            params["q"] = json!(q);
            let flagged = match subgroup {
                Subgroup::H2 { .. } => big_regime_flags(p, q, k, dmax as usize),
                _ => Vec::new(),
            };
            if !flagged.is_empty() {
                params["big_beyond_uniqueness_range"] = json!(flagged);
            }
        }
        Subgroup::H3 { m } | Subgroup::H4 { m } => params["m"] = json!(m),
        _ => {}
    }
    run(&claim, params, || {
        let req = BranchRequest::new(n, subgroup, k, rat(0));
        req.validate()?;
        let d = dmax as usize;
        let bound = dmax + k.unsigned_abs() as u32 + LHS_MARGIN;
        match subgroup {
            Subgroup::H1 { p, q } => {
                let lhs = lhs_types(n, k, &TorusEmbedding::u_block(p, q)?, bound, d)?;
                let spec = branch_with(&req, dmax as i64)?;
                let rhs = union_support(&spec.components, d)?;
                same_set("H1 support", &lhs.into_keys().collect(), &rhs)?;
            }
            Subgroup::H2 { p, q } => {
                let lhs: BTreeSet<Weight> =
                    lhs_types(n, k, &TorusEmbedding::u_block(p, q)?, bound, d)?
                        .into_keys()
                        .collect();
                let spec = branch(&req)?;
                let mut by_t: BTreeMap<_, Vec<(String, BTreeSet<Weight>)>> = BTreeMap::new();
                for c in spec.discrete() {
                    let t_bound = rat((d + p + q + 1) as i64);
                    for t in c.params.values_up_to(&t_bound).unwrap_or_default() {
                        let types = ktype_support_at(&c.series, Some(t), d)?.types;
                        if let Some(w) = types.difference(&lhs).next() {
                            return Err(Abort::Fail(json!({
                                "check": "containment", "series": c.series.to_string(),
                                "t": t.to_string(), "weight": w.to_string()
                            })));
                        }
                        by_t.entry(t)
                            .or_default()
                            .push((c.series.to_string(), types));
                    }
                }
                for (t, comps) in &by_t {
                    for (i, (a, ta)) in comps.iter().enumerate() {
                        for (b, tb) in &comps[i + 1..] {
                            if let Some(w) = ta.intersection(tb).next() {
                                return Err(Abort::Fail(json!({
                                    "check": "disjointness", "t": t.to_string(),
                                    "series": [a, b], "weight": w.to_string()
                                })));
                            }
                        }
                    }
                }
                for c in spec.continuous() {
                    let types = ktype_support(c, d)?.types;
                    if let Some(w) = types.difference(&lhs).next() {
                        return Err(Abort::Fail(json!({
                            "check": "containment", "series": c.series.to_string(), "weight": w.to_string()
                        })));
                    }
                }
            }
            Subgroup::H4 { m } => {
                let lhs = lhs_types(n, k, &TorusEmbedding::sp_in_u(m)?, bound, d)?;
                let spec = branch(&req)?;
                let mut rhs = BTreeMap::new();
                for j in spec.components[0]
                    .params
                    .integers_up_to(dmax as i64)
                    .unwrap_or_default()
                {
                    for (w, mult) in quat_multiplicities(m, j, d)?.entries {
                        *rhs.entry(w).or_default() += mult;
                    }
                }
                same_multiset("H4 multiplicities", &lhs, &rhs)?;
            }
            Subgroup::H5 => {
                let lhs = lhs_types(n, k, &TorusEmbedding::o_in_u(n)?, bound, d)?;
                let spec = branch_with(&req, dmax as i64)?;
                let rhs = union_support(&spec.components, d)?;
                same_set("H5 support", &lhs.into_keys().collect(), &rhs)?;
            }
            other => {
                return Ok(Outcome::Skipped(format!("no support check for {other}")));
            }
        }
        Ok(Outcome::Pass)
    })
}

/// Parameters `t` of big subquotients of `U(p,1)` or `U(1,q)` checked at degree
/// `≤ dmax` that lie outside the range where the big subquotient is
/// characterised as the constituent containing `H^{0,k}(ℂ^p) ⊗ H^0(ℂ)`.
/// The K-type formula is applied there unchanged; the values are reported
/// rather than resolved.
fn big_regime_flags(p: usize, q: usize, k: i64, dmax: usize) -> Vec<String> {
    let Ok(spec) = branch(&BranchRequest::new(p + q, Subgroup::H2 { p, q }, k, rat(0))) else {
        return Vec::new();
    };
    let big = p.max(q);
    spec.discrete()
        .filter(|c| {
            matches!(
                c.series,
                Series::UpqSubquotient {
                    kind: SubquotientKind::Big,
                    ..
                }
            )
        })
        .flat_map(|c| {
            c.params
                .values_up_to(&rat((dmax + p + q + 1) as i64))
                .unwrap_or_default()
        })
        .filter(|t| big_outside_uniqueness_range(big, k, t.to_integer()))
        .map(|t| t.to_string())
        .collect()
}

fn union_support(
    components: &[crate::spectrum::SpectrumComponent],
    dmax: usize,
) -> std::result::Result<BTreeSet<Weight>, Abort> {
    let mut out = BTreeSet::new();
    for c in components {
        out.extend(ktype_support(c, dmax)?.types);
    }
    Ok(out)
}

/// Largest `|t|` enumerated when comparing parameter sets.
const PARAM_WINDOW: i64 = 40;

fn direct_a_plus(p: usize, q: usize, k: i64) -> Vec<i64> {
    let n = (p + q) as i64;
    (-PARAM_WINDOW..0)
        .filter(|t| (t - (k + n + 1)).rem_euclid(2) == 0)
        .filter(|&t| p > 1 || t > -(k.abs() - q as i64))
        .collect()
}

fn listed(set: &ParamSet) -> Vec<i64> {
    set.integers_up_to(PARAM_WINDOW).unwrap_or_default()
}

/// Parameter sets against direct enumeration on `p, q ≤ 4`, `|k| ≤ 8`, and the
/// `O(2)`-type threshold of the discrete `GL(n,ℝ)` components.
pub fn verify_param_sets() -> Vec<Report> {
    let grid = json!({ "p": "1..4", "q": "1..4", "k": "-8..8" });
    let cells = || {
        (1..=4usize)
            .flat_map(|p| (1..=4usize).flat_map(move |q| (-8..=8i64).map(move |k| (p, q, k))))
    };
    let mut out = vec![
        run("paramsets-a-plus", grid.clone(), || {
            for (p, q, k) in cells() {
                let (got, want) = (listed(&a_plus_set(p, q, k)), direct_a_plus(p, q, k));
                ensure(
                    got == want,
                    || json!({ "p": p, "q": q, "k": k, "set": got, "direct": want }),
                )?;
            }
            Ok(Outcome::Pass)
        }),
        run("paramsets-a-minus", grid.clone(), || {
            for (p, q, k) in cells() {
                let n = (p + q) as i64;
                let want: Vec<i64> = (-PARAM_WINDOW..0)
                    .filter(|t| (t - (k + n + 1)).rem_euclid(2) == 0)
                    .filter(|&t| q > 1 || t > -(k.abs() - p as i64))
                    .collect();
                let got = listed(&a_minus_set(p, q, k));
                ensure(
                    got == want,
                    || json!({ "p": p, "q": q, "k": k, "set": got, "direct": want }),
                )?;
            }
            Ok(Outcome::Pass)
        }),
        run("paramsets-a-plus-empty", grid.clone(), || {
            for (_, q, k) in cells() {
                if k.abs() <= q as i64 {
                    ensure(a_plus_set(1, q, k).is_empty(), || json!({ "q": q, "k": k }))?;
                }
            }
            Ok(Outcome::Pass)
        }),
        run("paramsets-gl2r", json!({ "k": "-8..8" }), || {
            for k in -8..=8i64 {
                let mut want = Vec::new();
                let mut t = k.abs() - 1;
                while t > 0 {
                    want.push(t);
                    t -= 2;
                }
                want.sort();
                let got = listed(&gl2r_discrete_params(k));
                ensure(
                    got == want,
                    || json!({ "k": k, "set": got, "direct": want }),
                )?;
            }
            Ok(Outcome::Pass)
        }),
    ];
    out.push(run("h6-o2-types", json!({ "n": 3, "k": "-8..8", "max_degree": 12 }), || {
        let dmax = 12;
        for k in -8..=8i64 {
            let spec = branch(&BranchRequest::new(3, Subgroup::H6, k, rat(0)))?;
            for c in spec.components.iter() {
                let continuous = c.is_continuous();
                let ts = if continuous {
                    vec![None]
                } else {
                    c.params.values_up_to(&rat(dmax)).unwrap_or_default().into_iter().map(Some).collect()
                };
                for t in ts {
                    let got: Vec<i64> = ktype_support_at(&c.series, t, dmax as usize)?
                        .types
                        .into_iter()
                        .map(|w| w.coords()[0])
                        .collect();
                    // SO(2)-weights ±(t+1), ±(t+3), … of the discrete series, or all j ≡ k.
                    let start = t.map_or(k.rem_euclid(2), |t| t.to_integer() + 1);
                    let want: Vec<i64> = (start..=dmax).step_by(2).collect();
                    ensure(got == want, || {
                        json!({ "k": k, "series": c.series.to_string(), "types": got, "direct": want })
                    })?;
                    ensure(got.iter().all(|j| (j - k).rem_euclid(2) == 0), || {
                        json!({ "k": k, "parity": got })
                    })?;
                }
            }
        }
        Ok(Outcome::Pass)
    }));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    ThmK,
    SpMult,
    H3Split,
    Sp1,
    O2,
    Support,
    ParamSets,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 8] = [
        "thmK",
        "spmult",
        "h3split",
        "sp1",
        "o2",
        "support",
        "paramsets",
        "all",
    ];

    pub fn name(self) -> &'static str {
        Self::NAMES[self as usize]
    }

    fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::ThmK,
                Suite::SpMult,
                Suite::H3Split,
                Suite::Sp1,
                Suite::O2,
                Suite::Support,
                Suite::ParamSets,
            ],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use Suite::*;
        [ThmK, SpMult, H3Split, Sp1, O2, Support, ParamSets, All]
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown suite '{s}' (expected one of {})",
                    Self::NAMES.join(", ")
                ))
            })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Grid overrides; `None` selects the suite default.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Grid {
    pub n: Option<RangeInclusive<i64>>,
    pub m: Option<RangeInclusive<i64>>,
    pub k: Option<RangeInclusive<i64>>,
    pub max_degree: Option<u32>,
}

impl Grid {
    fn n_or(&self, lo: i64, hi: i64) -> Vec<usize> {
        positive(self.n.clone().unwrap_or(lo..=hi))
    }

    fn m_or(&self, lo: i64, hi: i64) -> Vec<usize> {
        positive(self.m.clone().unwrap_or(lo..=hi))
    }

    fn k_or(&self, lo: i64, hi: i64) -> Vec<i64> {
        self.k.clone().unwrap_or(lo..=hi).collect()
    }

    fn degree_or(&self, d: u32) -> u32 {
        self.max_degree.unwrap_or(d)
    }
}

fn positive(r: RangeInclusive<i64>) -> Vec<usize> {
    r.filter(|&x| x >= 1).map(|x| x as usize).collect()
}

type Task = Box<dyn Fn() -> Vec<Report> + Send + Sync>;

fn tasks(suite: Suite, grid: &Grid) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    match suite {
        Suite::ThmK => {
            let d = grid.degree_or(6);
            for n in grid.n_or(2, 4) {
                out.push(Box::new(move || vec![verify_harmonic_split(n, d)]));
                for k in grid.k_or(-3, 3) {
                    out.push(Box::new(move || vec![verify_thm_k(n, k, d)]));
                }
            }
        }
        Suite::SpMult => {
            let d = grid.degree_or(6);
            for m in grid.m_or(1, 3) {
                out.push(Box::new(move || vec![verify_sp_multiplicity(m, d)]));
            }
        }
        Suite::H3Split => {
            let d = grid.degree_or(6);
            for m in grid.m_or(2, 2) {
                out.push(Box::new(move || verify_h3_split(m, d)));
            }
        }
        Suite::Sp1 => {
            let d = grid.degree_or(12);
            for k in grid.k_or(-6, 6) {
                out.push(Box::new(move || vec![verify_sp1_bundle(k, d)]));
            }
        }
        Suite::O2 => {
            let d = grid.degree_or(12);
            out.push(Box::new(move || verify_o2_spaces(d)));
        }
        Suite::Support => {
            let d = grid.degree_or(4);
            let ks = grid.k_or(-2, 2);
            let ns = grid.n_or(2, 4);
            for &k in &ks {
                for &n in &ns {
                    for p in 1..n {
                        let sub = Subgroup::H1 { p, q: n - p };
                        out.push(Box::new(move || vec![verify_support(n, sub, k, d)]));
                    }
                }
                for m in grid.m_or(1, 2) {
                    let sub = Subgroup::H4 { m };
                    out.push(Box::new(move || vec![verify_support(2 * m, sub, k, d)]));
                }
                for &n in &ns {
                    out.push(Box::new(move || {
                        vec![verify_support(n, Subgroup::H5, k, d)]
                    }));
                }
                for &n in ns.iter().filter(|&&n| n >= 3) {
                    for p in 1..n {
                        let sub = Subgroup::H2 { p, q: n - p };
                        out.push(Box::new(move || vec![verify_support(n, sub, k, d)]));
                    }
                }
            }
        }
        Suite::ParamSets => out.push(Box::new(verify_param_sets)),
        Suite::All => {
            for s in suite.members() {
                out.extend(tasks(s, grid));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; `0` lets the pool choose.
    pub jobs: usize,
    /// Keep wall-clock `millis`; otherwise it is zeroed so reports are reproducible.
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            jobs: 1,
            timing: false,
        }
    }
}

/// Runs every grid cell of `suite`; reports come back grouped by claim id in
/// grid order regardless of `jobs`.
pub fn run_suite(suite: Suite, grid: &Grid, opts: &RunOptions) -> Result<Vec<Report>> {
    let cells = tasks(suite, grid);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::domain(format!("cannot start {} worker threads: {e}", opts.jobs)))?;
    let mut reports: Vec<Report> = pool
        .install(|| cells.par_iter().map(|t| t()).collect::<Vec<_>>())
        .into_iter()
        .flatten()
        .collect();
    if !opts.timing {
        for r in &mut reports {
            r.millis = 0;
        }
    }
    reports.sort_by(|a, b| a.claim.cmp(&b.claim));
    Ok(reports)
}

/// Counts of pass, fail and skipped.
pub fn tally(reports: &[Report]) -> (usize, usize, usize) {
    reports
        .iter()
        .fold((0, 0, 0), |(p, f, s), r| match r.status {
            Status::Pass => (p + 1, f, s),
            Status::Fail => (p, f + 1, s),
            Status::Skipped => (p, f, s + 1),
        })
}
