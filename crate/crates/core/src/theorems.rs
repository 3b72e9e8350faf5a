//! Spectra of the restrictions of the unitary principal series `π_{iλ,k}` of
//! `GL(n,ℂ)` to its maximal compact subgroup and to the six symmetric
//! subgroups, together with K-type oracles for every component.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::character::{
    dominant_weights_up_to, restricted_decomposition, IrrepDecomposition, TorusEmbedding,
};
use crate::error::{Error, Result};
use crate::spectrum::{
    a_minus_set, a_plus_set, gl2r_discrete_params, rat, Bound, Interval, ParamSet, Rational,
    Series, Sign, Spectrum, SpectrumComponent, SubquotientKind,
};
use crate::weights::{Classical, GroupLabel, Weight};

/// Number of terms listed for countable sums of continuous families when no
/// truncation is requested.
pub const DEFAULT_INDEX_BOUND: i64 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subgroup {
    K,
    /// `GL(p,ℂ)×GL(q,ℂ)`.
    H1 {
        p: usize,
        q: usize,
    },
    /// `U(p,q)`.
    H2 {
        p: usize,
        q: usize,
    },
    /// `Sp(m,ℂ)`.
    H3 {
        m: usize,
    },
    /// `GL(m,ℍ)`.
    H4 {
        m: usize,
    },
    /// `O(n,ℂ)`.
    H5,
    /// `GL(n,ℝ)`.
    H6,
}

impl Subgroup {
    pub fn tag(&self) -> &'static str {
        match self {
            Subgroup::K => "K",
            Subgroup::H1 { .. } => "H1",
            Subgroup::H2 { .. } => "H2",
            Subgroup::H3 { .. } => "H3",
            Subgroup::H4 { .. } => "H4",
            Subgroup::H5 => "H5",
            Subgroup::H6 => "H6",
        }
    }

    /// Builds a subgroup from a tag and whichever of `p, q, m` it needs.
    pub fn from_parts(
        tag: &str,
        p: Option<usize>,
        q: Option<usize>,
        m: Option<usize>,
    ) -> Result<Self> {
        let need = |v: Option<usize>, what: &str| {
            v.ok_or_else(|| Error::domain(format!("subgroup {tag} needs --{what}")))
        };
        Ok(match tag.to_ascii_uppercase().as_str() {
            "K" => Subgroup::K,
            "H1" => Subgroup::H1 {
                p: need(p, "p")?,
                q: need(q, "q")?,
            },
            "H2" => Subgroup::H2 {
                p: need(p, "p")?,
                q: need(q, "q")?,
            },
            "H3" => Subgroup::H3 { m: need(m, "m")? },
            "H4" => Subgroup::H4 { m: need(m, "m")? },
            "H5" => Subgroup::H5,
            "H6" => Subgroup::H6,
            _ => return Err(Error::domain(format!("unknown subgroup '{tag}'"))),
        })
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subgroup::H1 { p, q } | Subgroup::H2 { p, q } => write!(f, "{}({p},{q})", self.tag()),
            Subgroup::H3 { m } | Subgroup::H4 { m } => write!(f, "{}({m})", self.tag()),
            _ => f.write_str(self.tag()),
        }
    }
}

/// Restriction of `π_{iλ,k}` of `GL(n,ℂ)` to `subgroup`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchRequest {
    pub n: usize,
    pub subgroup: Subgroup,
    pub k: i64,
    pub lambda: Rational,
}

impl BranchRequest {
    pub fn new(n: usize, subgroup: Subgroup, k: i64, lambda: Rational) -> Self {
        BranchRequest {
            n,
            subgroup,
            k,
            lambda,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if n < 2 {
            return Err(Error::domain(format!("n must be >= 2, got {n}")));
        }
        match self.subgroup {
            Subgroup::H1 { p, q } | Subgroup::H2 { p, q } => {
                if p < 1 || q < 1 || p + q != n {
                    return Err(Error::domain(format!(
                        "{} needs p, q >= 1 with p + q = n, got p={p}, q={q}, n={n}",
                        self.subgroup.tag()
                    )));
                }
            }
            Subgroup::H3 { m } | Subgroup::H4 { m } => {
                if m < 1 || 2 * m != n {
                    return Err(Error::domain(format!(
                        "{} needs n = 2m, got n={n}, m={m}",
                        self.subgroup.tag()
                    )));
                }
            }
            Subgroup::H6 if n < 3 => {
                return Err(Error::Routed {
                    reason: "H6 = GL(2,R) needs n >= 3".into(),
                    route: "--subgroup H2 --p 1 --q 1 (GL(2,R) is covered by U(1,1))".into(),
                })
            }
            _ => {}
        }
        Ok(())
    }

    fn provenance(&self) -> String {
        format!(
            "GL({},C) pi(lambda={}, k={}) restricted to {}",
            self.n, self.lambda, self.k, self.subgroup
        )
    }
}

/// Dispatches on the subgroup; countable sums of continuous families list
/// `|index| ≤ DEFAULT_INDEX_BOUND`.
pub fn branch(req: &BranchRequest) -> Result<Spectrum> {
    branch_with(req, DEFAULT_INDEX_BOUND)
}

/// As [`branch`], listing `|index| ≤ index_bound` in countable sums of continuous families.
pub fn branch_with(req: &BranchRequest, index_bound: i64) -> Result<Spectrum> {
    req.validate()?;
    match req.subgroup {
        Subgroup::K => branch_to_k(req),
        Subgroup::H1 { .. } => branch_to_h1(req, index_bound),
        Subgroup::H2 { .. } => branch_to_h2(req),
        Subgroup::H3 { .. } => branch_to_h3(req),
        Subgroup::H4 { .. } => branch_to_h4(req),
        Subgroup::H5 => branch_to_h5(req, index_bound),
        Subgroup::H6 => branch_to_h6(req),
    }
}

fn expect(req: &BranchRequest, tag: &str) -> Result<()> {
    if req.subgroup.tag() != tag {
        return Err(Error::Routed {
            reason: format!("request is for {}", req.subgroup),
            route: format!("branch_to_{}", req.subgroup.tag().to_ascii_lowercase()),
        });
    }
    req.validate()
}

/// `j ≥ |k|`, `j ≡ k (mod 2)`.
fn parity_ray(k: i64) -> ParamSet {
    ParamSet::progression(
        rat(k.abs()),
        rat(2),
        Interval::above(Bound::Closed(rat(k.abs()))),
    )
}

/// `U(n)`-types `H^{α,β}(ℂ^n)`, `α - β = -k`; params are the degrees `α + β`.
pub fn branch_to_k(req: &BranchRequest) -> Result<Spectrum> {
    expect(req, "K")?;
    let c = SpectrumComponent::new(
        format!("U({})", req.n),
        Series::KTypes { n: req.n, k: req.k },
        parity_ray(req.k),
        1,
    );
    Ok(Spectrum::new(req.provenance(), vec![c]))
}

/// `⊕_{k'} ∫_ℝ π_{iλ',k'} ⊗ π_{i(λ-λ'),k-k'} dλ'`, listing `|k'| ≤ index_bound`.
pub fn branch_to_h1(req: &BranchRequest, index_bound: i64) -> Result<Spectrum> {
    expect(req, "H1")?;
    let Subgroup::H1 { p, q } = req.subgroup else {
        unreachable!()
    };
    let components = (-index_bound..=index_bound)
        .map(|k1| {
            SpectrumComponent::new(
                format!("GL({p},C)xGL({q},C)"),
                Series::PrincipalProduct {
                    p,
                    q,
                    k1,
                    k2: req.k - k1,
                    lambda: req.lambda,
                },
                ParamSet::Continuum(Interval::REAL_LINE),
                1,
            )
        })
        .collect();
    Ok(Spectrum::new(req.provenance(), components))
}

/// Discrete subquotients over `A_±^k(p,q)` and `2∫_{iℝ₊} π_{t,k}`.
pub fn branch_to_h2(req: &BranchRequest) -> Result<Spectrum> {
    expect(req, "H2")?;
    let Subgroup::H2 { p, q } = req.subgroup else {
        unreachable!()
    };
    let k = req.k;
    let group = format!("U({p},{q})");
    let mut components = Vec::new();
    let mut push = |sign: Sign, kind: SubquotientKind, params: ParamSet| {
        if !params.is_empty() {
            components.push(SpectrumComponent::new(
                group.clone(),
                Series::UpqSubquotient {
                    p,
                    q,
                    k,
                    sign,
                    kind,
                },
                params,
                1,
            ));
        }
    };
    let plus = a_plus_set(p, q, k);
    let minus = a_minus_set(p, q, k);
    match (p > 1, q > 1) {
        (true, true) => {
            push(Sign::Plus, SubquotientKind::Generic, plus);
            push(Sign::Minus, SubquotientKind::Generic, minus);
        }
        (true, false) => {
            let (comp, big) = split_rank_one(p, q, k);
            push(Sign::Plus, SubquotientKind::Complementary, comp);
            push(Sign::Plus, SubquotientKind::Big, big);
            push(Sign::Minus, SubquotientKind::Small, minus);
        }
        (false, true) => {
            push(Sign::Plus, SubquotientKind::Small, plus);
            let (comp, big) = split_rank_one(q, p, k);
            push(Sign::Minus, SubquotientKind::Complementary, comp);
            push(Sign::Minus, SubquotientKind::Big, big);
        }
        (false, false) => {
            push(Sign::Plus, SubquotientKind::Small, plus);
            push(Sign::Minus, SubquotientKind::Small, minus);
        }
    }
    components.push(SpectrumComponent::new(
        group,
        Series::UpqPrincipal { p, q, k },
        ParamSet::ImaginaryHalfLine,
        2,
    ));
    Ok(Spectrum::new(req.provenance(), components))
}

/// `A_+^k(P,1)` for `P > 1` split into the complementary range `|t| < P - |k|`
/// and the big-subquotient range `t ≤ -(P - |k|)`.
fn split_rank_one(big_p: usize, small_q: usize, k: i64) -> (ParamSet, ParamSet) {
    let n = (big_p + small_q) as i64;
    let base = rat((k + n + 1).rem_euclid(2));
    let edge = big_p as i64 - k.abs();
    if edge <= 0 {
        return (ParamSet::Empty, a_plus_set(big_p, small_q, k));
    }
    let comp = ParamSet::progression(base, rat(2), Interval::open(rat(-edge), rat(0)));
    let big = ParamSet::progression(base, rat(2), Interval::below(Bound::Closed(rat(-edge))));
    (comp, big)
}

/// `π^{Sp(m,ℂ)}_{iλ,k}`, or `π_{0,0,+} ⊕ π_{0,0,-}` at `(λ,k) = (0,0)`.
pub fn branch_to_h3(req: &BranchRequest) -> Result<Spectrum> {
    expect(req, "H3")?;
    let Subgroup::H3 { m } = req.subgroup else {
        unreachable!()
    };
    let group = format!("Sp({m},C)");
    let components = if req.k == 0 && req.lambda.is_zero() {
        [Sign::Plus, Sign::Minus]
            .into_iter()
            .map(|sign| {
                SpectrumComponent::new(
                    group.clone(),
                    Series::SpSplit { m, sign },
                    ParamSet::finite([rat(0)]),
                    1,
                )
            })
            .collect()
    } else {
        vec![SpectrumComponent::new(
            group,
            Series::SpPrincipal {
                m,
                k: req.k,
                lambda: req.lambda,
            },
            ParamSet::finite([req.lambda]),
            1,
        )]
    };
    Ok(Spectrum::new(req.provenance(), components))
}

/// `⊕_{j ≥ |k|, j ≡ k} π^{GL(m,ℍ)}_{iλ,j}`; params are `j`.
pub fn branch_to_h4(req: &BranchRequest) -> Result<Spectrum> {
    expect(req, "H4")?;
    let Subgroup::H4 { m } = req.subgroup else {
        unreachable!()
    };
    let c = SpectrumComponent::new(
        format!("GL({m},H)"),
        Series::QuatPrincipal {
            m,
            lambda: req.lambda,
        },
        parity_ray(req.k),
        1,
    );
    Ok(Spectrum::new(req.provenance(), vec![c]))
}

/// `⊕_{j ≡ k} ∫_{iℝ₊} π^{O(n,ℂ)}_{t,j}`, listing `j ≤ index_bound`; no discrete part.
pub fn branch_to_h5(req: &BranchRequest, index_bound: i64) -> Result<Spectrum> {
    expect(req, "H5")?;
    let n = req.n;
    let components = (0..=index_bound)
        .filter(|j| (j - req.k).rem_euclid(2) == 0)
        .map(|j| {
            SpectrumComponent::new(
                format!("O({n},C)"),
                Series::OrthoPrincipal { n, j },
                ParamSet::ImaginaryHalfLine,
                1,
            )
        })
        .collect();
    Ok(Spectrum::new(req.provenance(), components))
}

/// Discrete part over `t ∈ |k|-1-2ℕ₀, t > 0` and `2∫_{iℝ₊}` of the minimal-parabolic family.
///
/// `π_{t,ε,δ} ≅ π_{t,ε+1,δ+1}` is normalised to `δ = 0`, so labels carry `ε = k mod 2` only.
/// The continuous family may reduce at `t ∈ {0, ±iλ}`; those points are not split off.
pub fn branch_to_h6(req: &BranchRequest) -> Result<Spectrum> {
    expect(req, "H6")?;
    let n = req.n;
    let eps = req.k.rem_euclid(2);
    let group = format!("GL({n},R)");
    let mut components = Vec::new();
    let discrete = gl2r_discrete_params(req.k);
    if !discrete.is_empty() {
        components.push(SpectrumComponent::new(
            group.clone(),
            Series::GlRealDiscrete {
                n,
                eps,
                lambda: req.lambda,
            },
            discrete,
            1,
        ));
    }
    components.push(SpectrumComponent::new(
        group,
        Series::GlRealContinuous {
            n,
            eps,
            lambda: req.lambda,
        },
        ParamSet::ImaginaryHalfLine,
        2,
    ));
    Ok(Spectrum::new(req.provenance(), components))
}

/// A set of highest weights for a compact group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KTypeSet {
    pub group: GroupLabel,
    pub types: BTreeSet<Weight>,
}

impl KTypeSet {
    pub fn new(group: GroupLabel) -> Self {
        KTypeSet {
            group,
            types: BTreeSet::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.types.contains(w)
    }

    fn extend(&mut self, other: KTypeSet) {
        debug_assert_eq!(self.group, other.group);
        self.types.extend(other.types);
    }
}

/// Maximal compact subgroup whose types [`ktype_support`] reports for `series`.
pub fn ktype_group(series: &Series) -> Result<GroupLabel> {
    Ok(match *series {
        Series::KTypes { n, .. } => GroupLabel::u(n),
        Series::PrincipalProduct { p, q, .. }
        | Series::UpqSubquotient { p, q, .. }
        | Series::UpqPrincipal { p, q, .. } => {
            GroupLabel::product(vec![Classical::U(p), Classical::U(q)])?
        }
        Series::SpPrincipal { m, .. }
        | Series::SpSplit { m, .. }
        | Series::QuatPrincipal { m, .. } => GroupLabel::sp(m),
        Series::OrthoPrincipal { n, .. } => GroupLabel::o(n),
        // Types of the S*L(2,ℝ) inducing data, i.e. O(2)-types.
        Series::GlRealDiscrete { .. } | Series::GlRealContinuous { .. } => GroupLabel::o(2),
    })
}

/// K-types of total degree `≤ dmax` over all parameter values of `component`.
pub fn ktype_support(component: &SpectrumComponent, dmax: usize) -> Result<KTypeSet> {
    let series = &component.series;
    let mut out = KTypeSet::new(ktype_group(series)?);
    match series {
        Series::UpqSubquotient { p, q, .. } => {
            // Types of degree ≤ dmax need |t| < dmax + |p - q| in the support inequalities.
            let bound = rat((dmax + p + q + 1) as i64);
            for t in component.params.values_up_to(&bound).unwrap_or_default() {
                out.extend(ktype_support_at(series, Some(t), dmax)?);
            }
        }
        Series::GlRealDiscrete { .. } => {
            for t in component
                .params
                .values_up_to(&rat(dmax as i64 + 1))
                .unwrap_or_default()
            {
                out.extend(ktype_support_at(series, Some(t), dmax)?);
            }
        }
        Series::KTypes { n, k } => {
            for d in component
                .params
                .integers_up_to(dmax as i64)
                .unwrap_or_default()
            {
                out.types.extend(line_bundle_types(*n, *k, d as usize));
            }
        }
        Series::QuatPrincipal { m, .. } => {
            for j in component
                .params
                .integers_up_to(dmax as i64)
                .unwrap_or_default()
            {
                out.extend(quat_types(*m, j, dmax)?);
            }
        }
        _ => out.extend(ktype_support_at(series, None, dmax)?),
    }
    Ok(out)
}

/// K-types of degree `≤ dmax` of the representation `series` at parameter `t`
/// (ignored by families whose K-types do not depend on it).
pub fn ktype_support_at(series: &Series, t: Option<Rational>, dmax: usize) -> Result<KTypeSet> {
    let group = ktype_group(series)?;
    let need_t = || {
        let t = t.ok_or_else(|| Error::domain(format!("{series} needs a parameter value")))?;
        if !t.is_integer() {
            return Err(Error::domain(format!(
                "non-integral parameter {t} for {series}"
            )));
        }
        Ok(t.to_integer())
    };
    let types: BTreeSet<Weight> = match *series {
        Series::KTypes { n, k } => (0..=dmax)
            .flat_map(|d| line_bundle_types(n, k, d))
            .collect(),
        Series::PrincipalProduct { p, q, k1, k2, .. } => {
            let left = induced_from_u1(p, k1, dmax)?;
            let right = induced_from_u1(q, k2, dmax)?;
            let mut out = BTreeSet::new();
            for a in &left {
                for b in &right {
                    if a.degree() + b.degree() <= dmax {
                        out.insert(a.concat(b));
                    }
                }
            }
            out
        }
        Series::UpqSubquotient {
            p,
            q,
            k,
            sign,
            kind,
        } => {
            let t = need_t()?;
            match (kind, p > 1, q > 1) {
                (SubquotientKind::Generic, true, true) => {
                    big_constituent_types(p, q, k, sign, t, dmax)
                }
                (SubquotientKind::Big, true, false) => {
                    big_constituent_types(p, q, k, Sign::Plus, t, dmax)
                }
                (SubquotientKind::Big, false, true) => {
                    swap_factors(big_constituent_types(q, p, k, Sign::Plus, t, dmax), q)
                }
                (SubquotientKind::Small, true, false) => small_constituent_types(p, k, t, dmax),
                (SubquotientKind::Small, false, true) => {
                    swap_factors(small_constituent_types(q, k, t, dmax), q)
                }
                (SubquotientKind::Complementary, _, _) if p > 1 || q > 1 => {
                    upq_principal_types(p, q, k, dmax)?
                }
                _ => {
                    return Err(Error::NoKTypeOracle(format!(
                        "{series}: no K-type formula for this kind at (p,q) = ({p},{q})"
                    )))
                }
            }
        }
        Series::UpqPrincipal { p, q, k } => upq_principal_types(p, q, k, dmax)?,
        Series::SpPrincipal { m, k, .. } => {
            let (emb, tau) = if m == 1 {
                (TorusEmbedding::u1_in_sp1()?, Weight::new(vec![-k]))
            } else {
                let mut tau = vec![0; m];
                tau[0] = -k;
                (TorusEmbedding::u1_sp(m)?, Weight::new(tau))
            };
            frobenius_support(&emb, &tau, dmax)?
        }
        Series::SpSplit { m, sign } => {
            let residue = if sign == Sign::Plus { 0 } else { 2 };
            let mut out = BTreeSet::new();
            for alpha in 0..=dmax as i64 {
                for beta in 0..=alpha.min(dmax as i64 - alpha) {
                    if (m == 1 && beta > 0) || (alpha - beta).rem_euclid(4) != residue {
                        continue;
                    }
                    let mut w = vec![0; m];
                    w[0] = alpha;
                    if m > 1 {
                        w[1] = beta;
                    }
                    out.insert(Weight::new(w));
                }
            }
            out
        }
        Series::QuatPrincipal { m, .. } => {
            let j = need_t()?;
            return quat_types(m, j, dmax);
        }
        Series::OrthoPrincipal { n, j } => {
            let emb = TorusEmbedding::o2_in_o(n)?;
            let mut tau = vec![0; emb.sub.rank()];
            tau[0] = j;
            // For odd `n` the sign of `-1 ∈ O(n)` is invisible to the torus; every
            // label here stands for the type on which it acts by `(-1)^j`.
            frobenius_support(&emb, &Weight::new(tau), dmax)?
        }
        Series::GlRealDiscrete { eps, .. } => {
            let t = need_t()?;
            (t + 1..=dmax as i64)
                .filter(|j| (j - eps).rem_euclid(2) == 0)
                .map(|j| Weight::new(vec![j]))
                .collect()
        }
        Series::GlRealContinuous { eps, .. } => (0..=dmax as i64)
            .filter(|j| (j - eps).rem_euclid(2) == 0)
            .map(|j| Weight::new(vec![j]))
            .collect(),
    };
    Ok(KTypeSet { group, types })
}

/// `H^{α,β}(ℂ^n)` with `α - β = -k`, `α + β = d`, if it exists.
fn line_bundle_types(n: usize, k: i64, d: usize) -> Option<Weight> {
    let d = d as i64;
    if (d + k).rem_euclid(2) != 0 || d < k.abs() {
        return None;
    }
    let alpha = (d - k) / 2;
    let beta = (d + k) / 2;
    complex_weight(n, alpha, beta)
}

/// Weight of `H^{α,β}(ℂ^n)`, or `None` if the space is zero.
fn complex_weight(n: usize, alpha: i64, beta: i64) -> Option<Weight> {
    if alpha < 0 || beta < 0 || (n == 1 && alpha > 0 && beta > 0) {
        return None;
    }
    let mut w = vec![0; n];
    w[0] += alpha;
    w[n - 1] -= beta;
    Some(Weight::new(w))
}

/// `σ` of degree `≤ dmax` with `[σ|_sub : τ] ≥ 1`.
fn frobenius_support(emb: &TorusEmbedding, tau: &Weight, dmax: usize) -> Result<BTreeSet<Weight>> {
    Ok(frobenius_multiplicities(emb, tau, dmax)?
        .entries
        .into_keys()
        .collect())
}

/// `σ ↦ [σ|_sub : τ]` over ambient dominant `σ` of degree `≤ dmax`, zero entries omitted.
pub fn frobenius_multiplicities(
    emb: &TorusEmbedding,
    tau: &Weight,
    dmax: usize,
) -> Result<IrrepDecomposition> {
    let mut out = IrrepDecomposition::new(emb.ambient.clone());
    for sigma in dominant_weights_up_to(&emb.ambient, dmax) {
        let m = restricted_decomposition(&emb.ambient, &sigma, emb)?.multiplicity(tau);
        out.insert(sigma, m)?;
    }
    Ok(out)
}

/// `U(p)`-types of `π_{iλ,k}` of `GL(p,ℂ)`: induced from `(w,g) ↦ w^k` of `U(1)×U(p-1)`.
fn induced_from_u1(p: usize, k: i64, dmax: usize) -> Result<BTreeSet<Weight>> {
    if p == 1 {
        let w = Weight::new(vec![-k]);
        return Ok(if w.degree() <= dmax {
            BTreeSet::from([w])
        } else {
            BTreeSet::new()
        });
    }
    let mut tau = vec![0; p];
    tau[0] = -k;
    frobenius_support(&TorusEmbedding::u1_un1(p)?, &Weight::new(tau), dmax)
}

/// `U(p)×U(q)`-types of `Ind_{P_H}(ω_{t,k})`, from `diag(μ,g,μ) ↦ μ^k`.
fn upq_principal_types(p: usize, q: usize, k: i64, dmax: usize) -> Result<BTreeSet<Weight>> {
    let emb = TorusEmbedding::u1_diag_in_upq(p, q)?;
    let mut tau = vec![0; emb.sub.rank()];
    tau[0] = -k;
    frobenius_support(&emb, &Weight::new(tau), dmax)
}

/// `Sp(m)`-types `σ` of `π^{GL(m,ℍ)}_{iλ,j}`: `[σ|_{Sp(1)×Sp(m-1)} : V_j ⊗ 1] ≥ 1`.
fn quat_types(m: usize, j: i64, dmax: usize) -> Result<KTypeSet> {
    let types = quat_multiplicities(m, j, dmax)?
        .entries
        .into_keys()
        .collect();
    Ok(KTypeSet {
        group: GroupLabel::sp(m),
        types,
    })
}

/// `σ ↦ [σ|_{Sp(1)×Sp(m-1)} : V_j ⊗ 1]` over `Sp(m)`-types of degree `≤ dmax`.
pub fn quat_multiplicities(m: usize, j: i64, dmax: usize) -> Result<IrrepDecomposition> {
    if j < 0 {
        return Err(Error::domain(format!("V_j needs j >= 0, got {j}")));
    }
    if m == 1 {
        let mut d = IrrepDecomposition::new(GroupLabel::sp(1));
        if j as usize <= dmax {
            d.insert(Weight::new(vec![j]), 1)?;
        }
        return Ok(d);
    }
    let mut tau = vec![0; m];
    tau[0] = j;
    frobenius_multiplicities(&TorusEmbedding::sp1_sp(m)?, &Weight::new(tau), dmax)
}

/// K-types of `π_{t,k,±}` of `U(p,q)`:
/// `H^{α,j-α}(ℂ^p) ⊗ H^{β,ℓ-β}(ℂ^q)` with `±(j-ℓ+p-q) > |t|`, `2(α+β) = j+ℓ-k`.
pub fn big_constituent_types(
    p: usize,
    q: usize,
    k: i64,
    sign: Sign,
    t: i64,
    dmax: usize,
) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    let d = dmax as i64;
    for j in 0..=d {
        for l in 0..=d - j {
            if sign.as_i64() * (j - l + p as i64 - q as i64) <= t.abs() {
                continue;
            }
            for alpha in 0..=j {
                let twice_beta = j + l - k - 2 * alpha;
                if twice_beta % 2 != 0 || !(0..=2 * l).contains(&twice_beta) {
                    continue;
                }
                let beta = twice_beta / 2;
                if let (Some(a), Some(b)) = (
                    complex_weight(p, alpha, j - alpha),
                    complex_weight(q, beta, l - beta),
                ) {
                    out.insert(a.concat(&b));
                }
            }
        }
    }
    out
}

/// K-types of the small subquotient `π_{t,k,-}` of `U(p,1)`:
/// `H^{α₁,α₂}(ℂ^p) ⊗ H^β(ℂ)` with `α₁ - α₂ + β = -k` and
/// `α₁ + α₂ ± β ≤ t - p` (sign of `k`).
pub fn small_constituent_types(p: usize, k: i64, t: i64, dmax: usize) -> BTreeSet<Weight> {
    let mut out = BTreeSet::new();
    if k == 0 {
        return out;
    }
    let d = dmax as i64;
    let bound = t - p as i64;
    for a1 in 0..=d {
        for a2 in 0..=d - a1 {
            let beta = -k - a1 + a2;
            let lhs = if k > 0 {
                a1 + a2 + beta
            } else {
                a1 + a2 - beta
            };
            if lhs > bound || a1 + a2 + beta.abs() > d {
                continue;
            }
            if let Some(a) = complex_weight(p, a1, a2) {
                out.insert(a.concat(&Weight::new(vec![beta])));
            }
        }
    }
    out
}

/// Reorders `U(P)×U(1)` weights (with `P = big`) as `U(1)×U(P)`.
fn swap_factors(types: BTreeSet<Weight>, big: usize) -> BTreeSet<Weight> {
    types
        .into_iter()
        .map(|w| {
            let c = w.coords();
            let mut v = vec![c[big]];
            v.extend_from_slice(&c[..big]);
            Weight::new(v)
        })
        .collect()
}

/// The big subquotient of `U(p,1)` is pinned down as the constituent containing
/// `H^{0,k}(ℂ^p) ⊗ H^0(ℂ)` only for `t > -p - |k|`.
pub fn big_outside_uniqueness_range(p: usize, k: i64, t: i64) -> bool {
    t <= -(p as i64) - k.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::merge;
    use proptest::prelude::*;

    fn req(n: usize, subgroup: Subgroup, k: i64) -> BranchRequest {
        BranchRequest::new(n, subgroup, k, rat(0))
    }

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    #[test]
    fn validation() {
        assert!(req(4, Subgroup::H1 { p: 1, q: 2 }, 0).validate().is_err());
        assert!(req(4, Subgroup::H2 { p: 0, q: 4 }, 0).validate().is_err());
        assert!(req(3, Subgroup::H3 { m: 1 }, 0).validate().is_err());
        assert!(req(4, Subgroup::H4 { m: 2 }, 0).validate().is_ok());
        assert!(matches!(
            req(2, Subgroup::H6, 0).validate(),
            Err(Error::Routed { .. })
        ));
        assert!(req(1, Subgroup::K, 0).validate().is_err());
    }

    #[test]
    fn k_family() {
        let s = branch(&req(3, Subgroup::K, -2)).unwrap();
        let types = ktype_support(&s.components[0], 4).unwrap();
        assert_eq!(types.types, BTreeSet::from([w(&[2, 0, 0]), w(&[3, 0, -1])]));
        let s = branch(&req(2, Subgroup::K, 0)).unwrap().truncated(2);
        assert_eq!(s.components[0].params, ParamSet::finite([rat(0), rat(2)]));
        let types = ktype_support(&s.components[0], 2).unwrap();
        assert_eq!(types.types, BTreeSet::from([w(&[0, 0]), w(&[1, -1])]));
    }

    #[test]
    fn h1_components() {
        let s = branch_with(&req(2, Subgroup::H1 { p: 1, q: 1 }, 3), 2).unwrap();
        assert_eq!(s.components.len(), 5);
        assert!(s
            .components
            .iter()
            .any(|c| matches!(c.series, Series::PrincipalProduct { k1: 1, k2: 2, .. })));
        assert!(s.components.iter().all(|c| c.is_continuous()));
    }

    #[test]
    fn h2_cases() {
        let s = branch(&req(4, Subgroup::H2 { p: 2, q: 2 }, 0)).unwrap();
        assert_eq!(s.discrete().count(), 2);
        let cont: Vec<_> = s.continuous().collect();
        assert_eq!(cont.len(), 1);
        assert_eq!(cont[0].multiplicity, 2);

        // (3,1), k = 0: no "-" discrete part.
        let s = branch(&req(4, Subgroup::H2 { p: 3, q: 1 }, 0)).unwrap();
        assert!(s.discrete().all(|c| matches!(
            c.series,
            Series::UpqSubquotient {
                sign: Sign::Plus,
                ..
            }
        )));
        // A_+ is the odd negatives: complementary for |t| < 3, big from t = -3 down.
        let kinds: Vec<_> = s
            .discrete()
            .map(|c| match c.series {
                Series::UpqSubquotient { kind, .. } => (kind, c.params.clone()),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(kinds[0].0, SubquotientKind::Complementary);
        assert_eq!(kinds[0].1, ParamSet::finite([rat(-1)]));
        assert!(kinds[1].1.contains(&rat(-3)));
        assert_eq!(kinds[1].0, SubquotientKind::Big);

        // (3,1), k = 6: A_-^6 = {-1} carries a small subquotient.
        let s = branch(&req(4, Subgroup::H2 { p: 3, q: 1 }, 6)).unwrap();
        assert!(s.discrete().any(|c| matches!(
            c.series,
            Series::UpqSubquotient {
                kind: SubquotientKind::Small,
                sign: Sign::Minus,
                ..
            }
        )));
    }

    #[test]
    fn h3_h4_h5_h6_shapes() {
        let h3 = |k, l| branch(&BranchRequest::new(4, Subgroup::H3 { m: 2 }, k, rat(l))).unwrap();
        assert_eq!(h3(0, 1).components.len(), 1);
        assert_eq!(h3(0, 0).components.len(), 2);
        assert_eq!(h3(3, 0).components.len(), 1);

        let h4 = branch(&req(4, Subgroup::H4 { m: 2 }, -2))
            .unwrap()
            .truncated(6);
        assert_eq!(
            h4.components[0].params,
            ParamSet::finite([2, 4, 6].map(rat))
        );
        let h4 = branch(&req(4, Subgroup::H4 { m: 2 }, 1)).unwrap();
        assert_eq!(
            h4.components[0].params.integers_up_to(5).unwrap(),
            [1, 3, 5]
        );

        for k in [0i64, 1] {
            let h5 = branch(&req(3, Subgroup::H5, k)).unwrap();
            assert_eq!(h5.discrete().count(), 0);
            assert!(h5
                .components
                .iter()
                .all(|c| matches!(c.series, Series::OrthoPrincipal { j, .. } if (j - k) % 2 == 0)));
        }

        let h6 = branch(&req(3, Subgroup::H6, 4)).unwrap();
        assert_eq!(
            h6.discrete().next().unwrap().params,
            ParamSet::finite([rat(1), rat(3)])
        );
        assert_eq!(h6.continuous().next().unwrap().multiplicity, 2);
        assert_eq!(
            branch(&req(3, Subgroup::H6, 0)).unwrap().discrete().count(),
            0
        );
        assert_eq!(
            branch(&req(3, Subgroup::H6, 1)).unwrap().discrete().count(),
            0
        );
    }

    #[test]
    fn big_constituent_example() {
        // π_{-1,0,+} of U(2,2): H^{1,1}(ℂ²) ⊗ H^{0,0}(ℂ²) from j = 2, ℓ = 0.
        let types = big_constituent_types(2, 2, 0, Sign::Plus, -1, 2);
        assert!(types.contains(&w(&[1, -1, 0, 0])));
    }

    #[test]
    fn sp_split_example() {
        let c = SpectrumComponent::new(
            "Sp(2,C)",
            Series::SpSplit {
                m: 2,
                sign: Sign::Minus,
            },
            ParamSet::finite([rat(0)]),
            1,
        );
        assert_eq!(
            ktype_support(&c, 2).unwrap().types,
            BTreeSet::from([w(&[2, 0])])
        );
    }

    #[test]
    fn quat_support_example() {
        let c = branch(&req(2, Subgroup::H4 { m: 1 }, 0))
            .unwrap()
            .components
            .remove(0);
        let types = ktype_support(&c, 4).unwrap();
        assert_eq!(types.types, BTreeSet::from([w(&[0]), w(&[2]), w(&[4])]));
        // m = 2, j = 1: V_1 ⊗ 1 lies in the Sp(2)-types (1,0), (2,1), …
        let m = quat_multiplicities(2, 1, 3).unwrap();
        assert_eq!(m.multiplicity(&w(&[1, 0])), 1);
        assert_eq!(m.multiplicity(&w(&[0, 0])), 0);
    }

    #[test]
    fn missing_oracle_is_explicit() {
        let s = branch(&req(2, Subgroup::H2 { p: 1, q: 1 }, 5)).unwrap();
        let c = s.discrete().next().unwrap();
        assert!(matches!(ktype_support(c, 4), Err(Error::NoKTypeOracle(_))));
    }

    #[test]
    fn h3_split_partitions_even_types() {
        for m in 1..=3 {
            let sup = |sign| {
                let c = SpectrumComponent::new(
                    "Sp",
                    Series::SpSplit { m, sign },
                    ParamSet::finite([rat(0)]),
                    1,
                );
                ktype_support(&c, 8).unwrap().types
            };
            let (plus, minus) = (sup(Sign::Plus), sup(Sign::Minus));
            assert!(plus.is_disjoint(&minus));
            let even: BTreeSet<Weight> = dominant_weights_up_to(&GroupLabel::sp(m), 8)
                .into_iter()
                .filter(|w| w.coords().iter().skip(2).all(|&x| x == 0))
                .filter(|w| (w.0[0] - w.0.get(1).copied().unwrap_or(0)) % 2 == 0)
                .collect();
            assert_eq!(plus.union(&minus).cloned().collect::<BTreeSet<_>>(), even);
        }
    }

    fn central(w: &Weight) -> i64 {
        w.coords().iter().sum()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn u_types_carry_central_character(n in 2usize..5, k in -4i64..5, split in 1usize..4) {
            let p = split.min(n - 1);
            let q = n - p;
            for sub in [Subgroup::K, Subgroup::H1 { p, q }, Subgroup::H2 { p, q }] {
                let spec = branch_with(&req(n, sub, k), 3).unwrap();
                for c in &spec.components {
                    match ktype_support(c, 4) {
                        Ok(types) => for t in &types.types {
                            prop_assert_eq!(central(t), -k, "{} {}", c.series, t);
                        },
                        Err(Error::NoKTypeOracle(_)) => {}
                        Err(e) => return Err(TestCaseError::fail(e.to_string())),
                    }
                }
            }
        }

        #[test]
        fn degree_parity_for_h4_h5(m in 1usize..3, n in 2usize..5, k in -4i64..5) {
            let h4 = branch(&req(2 * m, Subgroup::H4 { m }, k)).unwrap();
            for t in ktype_support(&h4.components[0], 5).unwrap().types {
                prop_assert_eq!((t.degree() as i64 - k).rem_euclid(2), 0);
            }
            // `-1 ∈ SO(n)` for even `n`, so the degree parity is visible there.
            let h5 = branch_with(&req(n, Subgroup::H5, k), 3).unwrap();
            for c in &h5.components {
                let Series::OrthoPrincipal { j, .. } = c.series else { unreachable!() };
                prop_assert_eq!((j - k).rem_euclid(2), 0);
                if n % 2 == 0 {
                    for t in ktype_support(c, 4).unwrap().types {
                        prop_assert_eq!((t.degree() as i64 - k).rem_euclid(2), 0);
                    }
                }
            }
        }

        #[test]
        fn h2_plus_minus_disjoint(p in 2usize..4, q in 2usize..4, k in -3i64..4, t in 1i64..8) {
            let t = -t;
            let plus = big_constituent_types(p, q, k, Sign::Plus, t, 5);
            let minus = big_constituent_types(p, q, k, Sign::Minus, t, 5);
            prop_assert!(plus.is_disjoint(&minus));
        }

        #[test]
        fn constructors_are_merge_stable(n in 2usize..7, k in -5i64..6, pick in 0usize..7) {
            let sub = match pick {
                0 => Subgroup::K,
                1 => Subgroup::H1 { p: 1, q: n - 1 },
                2 => Subgroup::H2 { p: n - 1, q: 1 },
                3 => Subgroup::H3 { m: n / 2 },
                4 => Subgroup::H4 { m: n / 2 },
                5 => Subgroup::H5,
                _ => Subgroup::H6,
            };
            let r = req(n, sub, k);
            if r.validate().is_ok() {
                let s = branch(&r).unwrap();
                let merged = merge(&s);
                prop_assert_eq!(merge(&merged), merged.clone());
                prop_assert_eq!(merged.components.len(), s.components.len());
            }
        }
    }
}
