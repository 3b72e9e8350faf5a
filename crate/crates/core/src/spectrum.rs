//! Symbolic right-hand sides of branching laws: discrete summands indexed by
//! exact parameter sets, and direct-integral families over continuous domains.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Always `p/q`, including `q = 1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("malformed rational '{s}'"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => s.parse::<i64>().map(rat).map_err(|_| bad()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    Infinite,
    Open(Rational),
    Closed(Rational),
}

impl Bound {
    fn value(&self) -> Option<Rational> {
        match self {
            Bound::Infinite => None,
            Bound::Open(v) | Bound::Closed(v) => Some(*v),
        }
    }
}

/// A real interval with rational or infinite endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub const REAL_LINE: Interval = Interval {
        lo: Bound::Infinite,
        hi: Bound::Infinite,
    };

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo: Bound::Open(lo),
            hi: Bound::Open(hi),
        }
    }

    pub fn below(hi: Bound) -> Self {
        Interval {
            lo: Bound::Infinite,
            hi,
        }
    }

    pub fn above(lo: Bound) -> Self {
        Interval {
            lo,
            hi: Bound::Infinite,
        }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let lo_ok = match self.lo {
            Bound::Infinite => true,
            Bound::Open(a) => *x > a,
            Bound::Closed(a) => *x >= a,
        };
        let hi_ok = match self.hi {
            Bound::Infinite => true,
            Bound::Open(b) => *x < b,
            Bound::Closed(b) => *x <= b,
        };
        lo_ok && hi_ok
    }

    pub fn is_empty(&self) -> bool {
        match (self.lo, self.hi) {
            (Bound::Closed(a), Bound::Closed(b)) => a > b,
            (lo, hi) => match (lo.value(), hi.value()) {
                (Some(a), Some(b)) => a >= b,
                _ => false,
            },
        }
    }

    /// Endpoint strings `"(-inf" | "(a" | "[a"` and `"inf)" | "b)" | "b]"`.
    pub fn to_strings(&self) -> [String; 2] {
        let lo = match self.lo {
            Bound::Infinite => "(-inf".to_string(),
            Bound::Open(a) => format!("({}", format_rational(&a)),
            Bound::Closed(a) => format!("[{}", format_rational(&a)),
        };
        let hi = match self.hi {
            Bound::Infinite => "inf)".to_string(),
            Bound::Open(b) => format!("{})", format_rational(&b)),
            Bound::Closed(b) => format!("{}]", format_rational(&b)),
        };
        [lo, hi]
    }

    pub fn from_strings(lo: &str, hi: &str) -> Result<Self> {
        let bad = |s: &str| Error::Parse(format!("malformed interval endpoint '{s}'"));
        let lo = lo.trim();
        let lo = if lo == "(-inf" {
            Bound::Infinite
        } else if let Some(v) = lo.strip_prefix('(') {
            Bound::Open(parse_rational(v)?)
        } else if let Some(v) = lo.strip_prefix('[') {
            Bound::Closed(parse_rational(v)?)
        } else {
            return Err(bad(lo));
        };
        let hi = hi.trim();
        let hi = if hi == "inf)" || hi == "+inf)" {
            Bound::Infinite
        } else if let Some(v) = hi.strip_suffix(')') {
            Bound::Open(parse_rational(v)?)
        } else if let Some(v) = hi.strip_suffix(']') {
            Bound::Closed(parse_rational(v)?)
        } else {
            return Err(bad(hi));
        };
        Ok(Interval { lo, hi })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [lo, hi] = self.to_strings();
        write!(f, "{lo}, {hi}")
    }
}

/// A set of exact parameter values, or a symbolic continuous domain.
///
/// Constructors normalise: progressions meeting their interval in finitely
/// many points become finite lists, and a progression's base is its first
/// element, its step points away from the base into the unbounded direction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamSet {
    Empty,
    Finite(Vec<Rational>),
    /// `(base + step·ℤ) ∩ interval`.
    Progression {
        base: Rational,
        step: Rational,
        interval: Interval,
    },
    /// `t ∈ iℝ₊`.
    ImaginaryHalfLine,
    /// A continuous real interval (Lebesgue measure).
    Continuum(Interval),
}

impl ParamSet {
    pub fn finite(values: impl IntoIterator<Item = Rational>) -> Self {
        let mut v: Vec<Rational> = values.into_iter().collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            ParamSet::Empty
        } else {
            ParamSet::Finite(v)
        }
    }

    pub fn progression(base: Rational, step: Rational, interval: Interval) -> Self {
        if step.is_zero() {
            return ParamSet::finite(interval.contains(&base).then_some(base));
        }
        if interval.is_empty() {
            return ParamSet::Empty;
        }
        let s = step.abs();
        // Smallest index i with base + i·s inside the lower bound, largest inside the upper.
        let i_lo = interval.lo.value().map(|a| {
            let i = ((a - base) / s).ceil().to_integer();
            if matches!(interval.lo, Bound::Open(_)) && base + s * i == a {
                i + 1
            } else {
                i
            }
        });
        let i_hi = interval.hi.value().map(|b| {
            let i = ((b - base) / s).floor().to_integer();
            if matches!(interval.hi, Bound::Open(_)) && base + s * i == b {
                i - 1
            } else {
                i
            }
        });
        let at = |i: i64| base + s * i;
        match (i_lo, i_hi) {
            (Some(lo), Some(hi)) => ParamSet::finite((lo..=hi).map(at)),
            (Some(lo), None) => ParamSet::Progression {
                base: at(lo),
                step: s,
                interval: Interval::above(Bound::Closed(at(lo))),
            },
            (None, Some(hi)) => ParamSet::Progression {
                base: at(hi),
                step: -s,
                interval: Interval::below(Bound::Closed(at(hi))),
            },
            (None, None) => {
                let shift = (base / s).floor();
                ParamSet::Progression {
                    base: base - s * shift,
                    step: s,
                    interval: Interval::REAL_LINE,
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ParamSet::Empty)
    }

    pub fn is_continuous(&self) -> bool {
        matches!(self, ParamSet::ImaginaryHalfLine | ParamSet::Continuum(_))
    }

    pub fn is_discrete(&self) -> bool {
        !self.is_continuous()
    }

    /// Membership for real rational parameters; continuous domains answer by interval.
    pub fn contains(&self, t: &Rational) -> bool {
        match self {
            ParamSet::Empty | ParamSet::ImaginaryHalfLine => false,
            ParamSet::Finite(v) => v.binary_search(t).is_ok(),
            ParamSet::Progression {
                base,
                step,
                interval,
            } => {
                let q = (t - base) / step;
                interval.contains(t) && q.is_integer()
            }
            ParamSet::Continuum(i) => i.contains(t),
        }
    }

    /// The discrete values with `|v| ≤ bound`, sorted ascending; `None` for continuous domains.
    pub fn values_up_to(&self, bound: &Rational) -> Option<Vec<Rational>> {
        match self {
            ParamSet::Empty => Some(Vec::new()),
            ParamSet::Finite(v) => Some(v.iter().filter(|x| x.abs() <= *bound).copied().collect()),
            ParamSet::Progression { base, step, .. } => {
                let s = step.abs();
                let mut out = Vec::new();
                let mut x = base - s * ((base + bound) / s).ceil();
                while x <= *bound {
                    if x.abs() <= *bound && self.contains(&x) {
                        out.push(x);
                    }
                    x += s;
                }
                Some(out)
            }
            ParamSet::ImaginaryHalfLine | ParamSet::Continuum(_) => None,
        }
    }

    /// Integer values with `|v| ≤ bound`.
    pub fn integers_up_to(&self, bound: i64) -> Option<Vec<i64>> {
        self.values_up_to(&rat(bound)).map(|v| {
            v.into_iter()
                .filter(Ratio::is_integer)
                .map(|x| x.to_integer())
                .collect()
        })
    }

    pub fn measure(&self) -> Measure {
        if self.is_continuous() {
            Measure::Lebesgue
        } else {
            Measure::Counting
        }
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamSet::Empty => f.write_str("{}"),
            ParamSet::Finite(v) => {
                let items: Vec<String> = v.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
            ParamSet::Progression {
                base,
                step,
                interval,
            } => write!(f, "{base} + {step}·N0 in {interval}"),
            ParamSet::ImaginaryHalfLine => f.write_str("iR+"),
            ParamSet::Continuum(i) => write!(f, "R ∩ {i}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ParamSetRepr {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    values: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    base: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    step: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    interval: Option<[String; 2]>,
}

impl Serialize for ParamSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut repr = ParamSetRepr {
            kind: String::new(),
            values: None,
            base: None,
            step: None,
            interval: None,
        };
        match self {
            ParamSet::Empty => repr.kind = "empty".into(),
            ParamSet::Finite(v) => {
                repr.kind = "finite".into();
                repr.values = Some(v.iter().map(format_rational).collect());
            }
            ParamSet::Progression {
                base,
                step,
                interval,
            } => {
                repr.kind = "progression".into();
                repr.base = Some(format_rational(base));
                repr.step = Some(format_rational(step));
                repr.interval = Some(interval.to_strings());
            }
            ParamSet::ImaginaryHalfLine => repr.kind = "imaginary-halfline".into(),
            ParamSet::Continuum(i) => {
                repr.kind = "interval".into();
                repr.interval = Some(i.to_strings());
            }
        }
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParamSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ParamSetRepr::deserialize(d)?;
        let need = |o: Option<String>, what: &str| {
            o.ok_or_else(|| D::Error::custom(format!("missing '{what}'")))
                .and_then(|s| parse_rational(&s).map_err(D::Error::custom))
        };
        let interval = |o: Option<[String; 2]>| {
            o.ok_or_else(|| D::Error::custom("missing 'interval'"))
                .and_then(|[a, b]| Interval::from_strings(&a, &b).map_err(D::Error::custom))
        };
        Ok(match repr.kind.as_str() {
            "empty" => ParamSet::Empty,
            "finite" => ParamSet::finite(
                repr.values
                    .unwrap_or_default()
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()
                    .map_err(D::Error::custom)?,
            ),
            "progression" => ParamSet::progression(
                need(repr.base, "base")?,
                need(repr.step, "step")?,
                interval(repr.interval)?,
            ),
            "imaginary-halfline" => ParamSet::ImaginaryHalfLine,
            "interval" => ParamSet::Continuum(interval(repr.interval)?),
            other => return Err(D::Error::custom(format!("unknown params kind '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Counting,
    Lebesgue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("bad sign '{s}'"))),
        }
    }
}

/// Which unitarizable piece of a degenerate principal series of `U(p,q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubquotientKind {
    /// `p, q > 1`: one of the two subquotients.
    Generic,
    /// Rank one, `|t| < p - |k|`: the whole (irreducible) induced representation.
    Complementary,
    /// Rank one, beyond the complementary range.
    Big,
    /// Rank one, holomorphic or antiholomorphic.
    Small,
}

impl fmt::Display for SubquotientKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubquotientKind::Generic => "generic",
            SubquotientKind::Complementary => "complementary",
            SubquotientKind::Big => "big",
            SubquotientKind::Small => "small",
        })
    }
}

impl FromStr for SubquotientKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "generic" => SubquotientKind::Generic,
            "complementary" => SubquotientKind::Complementary,
            "big" => SubquotientKind::Big,
            "small" => SubquotientKind::Small,
            _ => return Err(Error::Parse(format!("bad subquotient kind '{s}'"))),
        })
    }
}

/// Structured name of the representation carried by a spectrum component.
///
/// The component's `params` say which values of the free parameter
/// (`t`, `λ'`, the degree or `j`) occur.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Series {
    /// `H^{α,β}(ℂ^n)` with `α - β = -k`; params are the degrees `α + β`.
    KTypes { n: usize, k: i64 },
    /// `π_{iλ',k1} ⊗ π_{i(λ-λ'),k2}` of `GL(p,ℂ)×GL(q,ℂ)`; params are `λ'`.
    PrincipalProduct {
        p: usize,
        q: usize,
        k1: i64,
        k2: i64,
        lambda: Rational,
    },
    /// `π_{t,k,±}` of `U(p,q)`; params are `t`.
    UpqSubquotient {
        p: usize,
        q: usize,
        k: i64,
        sign: Sign,
        kind: SubquotientKind,
    },
    /// `π_{t,k}` of `U(p,q)`, `t ∈ iℝ₊`.
    UpqPrincipal { p: usize, q: usize, k: i64 },
    /// `π_{iλ,k}` of `Sp(m,ℂ)`, irreducible for `(λ,k) ≠ (0,0)`.
    SpPrincipal { m: usize, k: i64, lambda: Rational },
    /// `π_{0,0,±}` of `Sp(m,ℂ)`.
    SpSplit { m: usize, sign: Sign },
    /// `π_{iλ,j}` of `GL(m,ℍ)`; params are `j`.
    QuatPrincipal { m: usize, lambda: Rational },
    /// `π_{t,j}` of `O(n,ℂ)`, `t ∈ iℝ₊`.
    OrthoPrincipal { n: usize, j: i64 },
    /// Induced from the discrete-series-like `π_{t,ε,ds}` of `S*L(2,ℝ)`; params are `t`.
    GlRealDiscrete {
        n: usize,
        eps: i64,
        lambda: Rational,
    },
    /// Induced from `ξ_ε ⊗ e^{(iλ+t, iλ-t, 0)}`, `t ∈ iℝ₊`.
    GlRealContinuous {
        n: usize,
        eps: i64,
        lambda: Rational,
    },
}

impl Series {
    fn name(&self) -> &'static str {
        match self {
            Series::KTypes { .. } => "KTypes",
            Series::PrincipalProduct { .. } => "PrincipalProduct",
            Series::UpqSubquotient { .. } => "UpqSubquotient",
            Series::UpqPrincipal { .. } => "UpqPrincipal",
            Series::SpPrincipal { .. } => "SpPrincipal",
            Series::SpSplit { .. } => "SpSplit",
            Series::QuatPrincipal { .. } => "QuatPrincipal",
            Series::OrthoPrincipal { .. } => "OrthoPrincipal",
            Series::GlRealDiscrete { .. } => "GlRealDiscrete",
            Series::GlRealContinuous { .. } => "GlRealContinuous",
        }
    }

    fn fields(&self) -> Vec<(&'static str, String)> {
        let r = format_rational;
        match self {
            Series::KTypes { n, k } => vec![("n", n.to_string()), ("k", k.to_string())],
            Series::PrincipalProduct {
                p,
                q,
                k1,
                k2,
                lambda,
            } => vec![
                ("p", p.to_string()),
                ("q", q.to_string()),
                ("k1", k1.to_string()),
                ("k2", k2.to_string()),
                ("lambda", r(lambda)),
            ],
            Series::UpqSubquotient {
                p,
                q,
                k,
                sign,
                kind,
            } => vec![
                ("p", p.to_string()),
                ("q", q.to_string()),
                ("k", k.to_string()),
                ("sign", sign.to_string()),
                ("kind", kind.to_string()),
            ],
            Series::UpqPrincipal { p, q, k } => {
                vec![
                    ("p", p.to_string()),
                    ("q", q.to_string()),
                    ("k", k.to_string()),
                ]
            }
            Series::SpPrincipal { m, k, lambda } => {
                vec![
                    ("m", m.to_string()),
                    ("k", k.to_string()),
                    ("lambda", r(lambda)),
                ]
            }
            Series::SpSplit { m, sign } => vec![("m", m.to_string()), ("sign", sign.to_string())],
            Series::QuatPrincipal { m, lambda } => {
                vec![("m", m.to_string()), ("lambda", r(lambda))]
            }
            Series::OrthoPrincipal { n, j } => vec![("n", n.to_string()), ("j", j.to_string())],
            Series::GlRealDiscrete { n, eps, lambda }
            | Series::GlRealContinuous { n, eps, lambda } => {
                vec![
                    ("n", n.to_string()),
                    ("eps", eps.to_string()),
                    ("lambda", r(lambda)),
                ]
            }
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fields: Vec<String> = self
            .fields()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{}({})", self.name(), fields.join(","))
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("malformed series '{s}': {why}"));
        let (name, rest) = s.trim().split_once('(').ok_or_else(|| bad("missing '('"))?;
        let body = rest.strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
        let mut fields = BTreeMap::new();
        for kv in body.split(',').filter(|x| !x.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| bad("expected key=value"))?;
            fields.insert(k.trim(), v.trim());
        }
        let get = |k: &str| {
            fields
                .get(k)
                .copied()
                .ok_or_else(|| bad(&format!("missing '{k}'")))
        };
        let int = |k: &str| -> Result<i64> { get(k)?.parse().map_err(|_| bad(k)) };
        let size = |k: &str| -> Result<usize> { get(k)?.parse().map_err(|_| bad(k)) };
        let rational = |k: &str| parse_rational(get(k)?);
        let series = match name {
            "KTypes" => Series::KTypes {
                n: size("n")?,
                k: int("k")?,
            },
            "PrincipalProduct" => Series::PrincipalProduct {
                p: size("p")?,
                q: size("q")?,
                k1: int("k1")?,
                k2: int("k2")?,
                lambda: rational("lambda")?,
            },
            "UpqSubquotient" => Series::UpqSubquotient {
                p: size("p")?,
                q: size("q")?,
                k: int("k")?,
                sign: get("sign")?.parse()?,
                kind: get("kind")?.parse()?,
            },
            "UpqPrincipal" => Series::UpqPrincipal {
                p: size("p")?,
                q: size("q")?,
                k: int("k")?,
            },
            "SpPrincipal" => Series::SpPrincipal {
                m: size("m")?,
                k: int("k")?,
                lambda: rational("lambda")?,
            },
            "SpSplit" => Series::SpSplit {
                m: size("m")?,
                sign: get("sign")?.parse()?,
            },
            "QuatPrincipal" => Series::QuatPrincipal {
                m: size("m")?,
                lambda: rational("lambda")?,
            },
            "OrthoPrincipal" => Series::OrthoPrincipal {
                n: size("n")?,
                j: int("j")?,
            },
            "GlRealDiscrete" => Series::GlRealDiscrete {
                n: size("n")?,
                eps: int("eps")?,
                lambda: rational("lambda")?,
            },
            "GlRealContinuous" => Series::GlRealContinuous {
                n: size("n")?,
                eps: int("eps")?,
                lambda: rational("lambda")?,
            },
            _ => return Err(bad("unknown series")),
        };
        if series.fields().len() != fields.len() {
            return Err(bad("unexpected fields"));
        }
        Ok(series)
    }
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpectrumComponent {
    pub group: String,
    pub series: Series,
    pub params: ParamSet,
    pub multiplicity: u32,
    pub measure: Measure,
}

impl SpectrumComponent {
    /// Measure is derived from the parameter domain.
    pub fn new(
        group: impl Into<String>,
        series: Series,
        params: ParamSet,
        multiplicity: u32,
    ) -> Self {
        let measure = params.measure();
        SpectrumComponent {
            group: group.into(),
            series,
            params,
            multiplicity,
            measure,
        }
    }

    pub fn is_continuous(&self) -> bool {
        self.measure == Measure::Lebesgue
    }
}

impl fmt::Display for SpectrumComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mult = if self.multiplicity == 1 {
            String::new()
        } else {
            format!("{}x ", self.multiplicity)
        };
        let how = match self.measure {
            Measure::Counting => "sum over",
            Measure::Lebesgue => "integral over",
        };
        write!(
            f,
            "{mult}{} {} [{how} {}]",
            self.group, self.series, self.params
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    pub provenance: String,
    pub components: Vec<SpectrumComponent>,
}

impl Spectrum {
    pub fn new(provenance: impl Into<String>, components: Vec<SpectrumComponent>) -> Self {
        Spectrum {
            provenance: provenance.into(),
            components,
        }
    }

    pub fn discrete(&self) -> impl Iterator<Item = &SpectrumComponent> {
        self.components.iter().filter(|c| !c.is_continuous())
    }

    pub fn continuous(&self) -> impl Iterator<Item = &SpectrumComponent> {
        self.components.iter().filter(|c| c.is_continuous())
    }

    /// Discrete progressions replaced by their values with `|v| ≤ bound`;
    /// components left without parameters are dropped.
    pub fn truncated(&self, bound: i64) -> Spectrum {
        let components = self
            .components
            .iter()
            .filter_map(|c| {
                let params = match &c.params {
                    p @ ParamSet::Progression { .. } => {
                        ParamSet::finite(p.values_up_to(&rat(bound)).unwrap_or_default())
                    }
                    p => p.clone(),
                };
                (!params.is_empty()).then(|| SpectrumComponent {
                    params,
                    ..c.clone()
                })
            })
            .collect();
        Spectrum {
            provenance: self.provenance.clone(),
            components,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spectrum serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.provenance)?;
        for c in &self.components {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

/// Sums multiplicities of components agreeing in group, series and params,
/// and sorts the result.
pub fn merge(spec: &Spectrum) -> Spectrum {
    let mut acc: BTreeMap<(String, Series, ParamSet), (u32, Measure)> = BTreeMap::new();
    for c in &spec.components {
        let e = acc
            .entry((c.group.clone(), c.series.clone(), c.params.clone()))
            .or_insert((0, c.measure));
        e.0 += c.multiplicity;
    }
    Spectrum {
        provenance: spec.provenance.clone(),
        components: acc
            .into_iter()
            .map(
                |((group, series, params), (multiplicity, measure))| SpectrumComponent {
                    group,
                    series,
                    params,
                    multiplicity,
                    measure,
                },
            )
            .collect(),
    }
}

/// `A_+^k(p,q)`: `(k+n+1+2ℤ) ∩ (-∞,0)` for `p > 1`, `(k+n+1+2ℤ) ∩ (-(|k|-q),0)` for `p = 1`,
/// with `(x,0) = ∅` for `x ≥ 0`.
pub fn a_plus_set(p: usize, q: usize, k: i64) -> ParamSet {
    let n = (p + q) as i64;
    let base = rat((k + n + 1).mod_floor(&2));
    let interval = if p > 1 {
        Interval::below(Bound::Open(rat(0)))
    } else {
        let lo = -(k.abs() - q as i64);
        if lo >= 0 {
            return ParamSet::Empty;
        }
        Interval::open(rat(lo), rat(0))
    };
    ParamSet::progression(base, rat(2), interval)
}

/// `A_-^k(p,q) = A_+^k(q,p)`.
pub fn a_minus_set(p: usize, q: usize, k: i64) -> ParamSet {
    a_plus_set(q, p, k)
}

/// `t > 0` with `t ∈ |k| - 1 - 2ℕ₀`.
pub fn gl2r_discrete_params(k: i64) -> ParamSet {
    let top = k.abs() - 1;
    ParamSet::finite((1..=top).filter(|t| (top - t) % 2 == 0).map(rat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(p: &ParamSet, bound: i64) -> Vec<i64> {
        p.integers_up_to(bound).unwrap()
    }

    #[test]
    fn rationals_format_with_denominator() {
        assert_eq!(format_rational(&rat(-3)), "-3/1");
        assert_eq!(format_rational(&Rational::new(2, 4)), "1/2");
        assert_eq!(parse_rational("4").unwrap(), rat(4));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), Rational::new(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn a_set_examples() {
        let a = a_plus_set(2, 2, 0);
        assert_eq!(
            a,
            ParamSet::Progression {
                base: rat(-1),
                step: rat(-2),
                interval: Interval::below(Bound::Closed(rat(-1)))
            }
        );
        assert_eq!(ints(&a, 5), [-5, -3, -1]);
        assert_eq!(a_plus_set(1, 3, 2), ParamSet::Empty);
        assert_eq!(a_plus_set(1, 3, 6), ParamSet::finite([rat(-1)]));
        assert_eq!(a_minus_set(2, 2, 0), a);
        assert_eq!(a_minus_set(3, 1, 0), ParamSet::Empty);
        assert_eq!(a_minus_set(3, 1, 6), ParamSet::finite([rat(-1)]));
    }

    #[test]
    fn gl2r_examples() {
        assert_eq!(gl2r_discrete_params(4), ParamSet::finite([rat(3), rat(1)]));
        assert_eq!(gl2r_discrete_params(1), ParamSet::Empty);
        assert_eq!(gl2r_discrete_params(-5), ParamSet::finite([rat(4), rat(2)]));
        assert_eq!(gl2r_discrete_params(0), ParamSet::Empty);
    }

    #[test]
    fn a_plus_emptiness_rule() {
        for q in 1..=6 {
            for k in -10i64..=10 {
                let a = a_plus_set(1, q, k);
                if k.abs() <= q as i64 {
                    assert!(a.is_empty(), "q={q} k={k}");
                }
                // Direct enumeration of (k+q+2+2Z) ∩ (-(|k|-q), 0).
                let direct: Vec<i64> = (-(k.abs() - q as i64) + 1..0)
                    .filter(|t| (t - (k + q as i64 + 2)).rem_euclid(2) == 0)
                    .collect();
                assert_eq!(ints(&a, 20), direct, "q={q} k={k}");
            }
        }
        // The converse fails just above the threshold: the open interval is too short.
        assert!(a_plus_set(1, 3, 4).is_empty());
        assert!(a_plus_set(1, 3, 5).is_empty());
        assert!(!a_plus_set(1, 3, 6).is_empty());
    }

    #[test]
    fn progression_normalisation() {
        // Bounded on both sides collapses to a list.
        let p = ParamSet::progression(rat(1), rat(2), Interval::open(rat(-4), rat(4)));
        assert_eq!(p, ParamSet::finite([-3, -1, 1, 3].map(rat)));
        let p = ParamSet::progression(rat(7), rat(-2), Interval::above(Bound::Open(rat(0))));
        assert_eq!(ints(&p, 6), [1, 3, 5]);
        assert_eq!(
            p,
            ParamSet::progression(rat(1), rat(2), Interval::above(Bound::Closed(rat(1))))
        );
        let p = ParamSet::progression(rat(5), rat(3), Interval::REAL_LINE);
        assert_eq!(ints(&p, 5), [-4, -1, 2, 5]);
        assert!(ParamSet::progression(rat(0), rat(2), Interval::open(rat(0), rat(2))).is_empty());
        assert_eq!(
            ParamSet::progression(rat(3), rat(0), Interval::REAL_LINE),
            ParamSet::finite([rat(3)])
        );
    }

    #[test]
    fn interval_strings_round_trip() {
        for (lo, hi) in [("(-inf", "inf)"), ("[1/2", "3/1)"), ("(-2/1", "0/1]")] {
            let i = Interval::from_strings(lo, hi).unwrap();
            assert_eq!(i.to_strings(), [lo, hi]);
        }
        assert!(Interval::from_strings("1", "2)").is_err());
    }

    #[test]
    fn series_strings_round_trip() {
        let all = [
            Series::KTypes { n: 3, k: -2 },
            Series::PrincipalProduct {
                p: 1,
                q: 2,
                k1: 1,
                k2: 2,
                lambda: Rational::new(1, 2),
            },
            Series::UpqSubquotient {
                p: 3,
                q: 1,
                k: 5,
                sign: Sign::Minus,
                kind: SubquotientKind::Small,
            },
            Series::UpqPrincipal { p: 2, q: 2, k: 0 },
            Series::SpPrincipal {
                m: 2,
                k: 0,
                lambda: rat(1),
            },
            Series::SpSplit {
                m: 2,
                sign: Sign::Plus,
            },
            Series::QuatPrincipal {
                m: 2,
                lambda: rat(0),
            },
            Series::OrthoPrincipal { n: 3, j: 4 },
            Series::GlRealDiscrete {
                n: 3,
                eps: 0,
                lambda: rat(0),
            },
            Series::GlRealContinuous {
                n: 4,
                eps: 1,
                lambda: rat(-2),
            },
        ];
        for s in all {
            assert_eq!(s.to_string().parse::<Series>().unwrap(), s);
        }
        assert!("KTypes(n=3)".parse::<Series>().is_err());
        assert!("KTypes(n=3,k=1,x=2)".parse::<Series>().is_err());
        assert!("Nope(n=3)".parse::<Series>().is_err());
    }

    #[test]
    fn json_shape() {
        let spec = Spectrum::new(
            "demo",
            vec![
                SpectrumComponent::new(
                    "U(2,2)",
                    Series::UpqPrincipal { p: 2, q: 2, k: 0 },
                    ParamSet::ImaginaryHalfLine,
                    2,
                ),
                SpectrumComponent::new(
                    "U(2,2)",
                    Series::UpqSubquotient {
                        p: 2,
                        q: 2,
                        k: 0,
                        sign: Sign::Plus,
                        kind: SubquotientKind::Generic,
                    },
                    a_plus_set(2, 2, 0),
                    1,
                ),
            ],
        );
        let v: serde_json::Value = serde_json::from_str(&spec.to_json()).unwrap();
        assert_eq!(v["components"][0]["params"]["kind"], "imaginary-halfline");
        assert_eq!(v["components"][0]["measure"], "lebesgue");
        assert_eq!(v["components"][0]["multiplicity"], 2);
        assert_eq!(v["components"][1]["params"]["base"], "-1/1");
        assert_eq!(v["components"][1]["params"]["step"], "-2/1");
        assert_eq!(v["components"][1]["params"]["interval"][0], "(-inf");
        assert_eq!(v["components"][1]["measure"], "counting");
        assert_eq!(Spectrum::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn merge_examples() {
        let c = SpectrumComponent::new(
            "U(1,1)",
            Series::UpqPrincipal { p: 1, q: 1, k: 0 },
            ParamSet::ImaginaryHalfLine,
            1,
        );
        let merged = merge(&Spectrum::new("x", vec![c.clone(), c.clone()]));
        assert_eq!(merged.components.len(), 1);
        assert_eq!(merged.components[0].multiplicity, 2);
        assert!(merge(&Spectrum::new("x", vec![])).components.is_empty());
    }

    #[test]
    fn truncation_lists_values() {
        let c = SpectrumComponent::new(
            "U(2)",
            Series::KTypes { n: 2, k: 0 },
            ParamSet::progression(rat(0), rat(2), Interval::above(Bound::Closed(rat(0)))),
            1,
        );
        let t = Spectrum::new("x", vec![c]).truncated(2);
        assert_eq!(t.components[0].params, ParamSet::finite([rat(0), rat(2)]));
        let empty = SpectrumComponent::new(
            "U(2)",
            Series::KTypes { n: 2, k: 5 },
            ParamSet::progression(rat(5), rat(2), Interval::above(Bound::Closed(rat(5)))),
            1,
        );
        assert!(Spectrum::new("x", vec![empty])
            .truncated(3)
            .components
            .is_empty());
    }

    fn arb_params() -> impl Strategy<Value = ParamSet> {
        prop_oneof![
            Just(ParamSet::Empty),
            Just(ParamSet::ImaginaryHalfLine),
            Just(ParamSet::Continuum(Interval::REAL_LINE)),
            proptest::collection::vec((-20i64..20, 1i64..4), 0..5)
                .prop_map(|v| ParamSet::finite(v.into_iter().map(|(a, b)| Rational::new(a, b)))),
            (
                -9i64..9,
                prop_oneof![Just(-2i64), Just(2), Just(1), Just(3)],
                -9i64..9,
                any::<bool>()
            )
                .prop_map(|(b, s, e, up)| {
                    let bound = Bound::Open(rat(e));
                    let i = if up {
                        Interval::above(bound)
                    } else {
                        Interval::below(bound)
                    };
                    ParamSet::progression(rat(b), rat(s), i)
                }),
        ]
    }

    fn arb_component() -> impl Strategy<Value = SpectrumComponent> {
        (arb_params(), 1u32..3, 0usize..3, -3i64..3).prop_map(|(params, mult, g, k)| {
            let group = ["U(2,2)", "U(3,1)", "GL(4,R)"][g];
            SpectrumComponent::new(group, Series::UpqPrincipal { p: 2, q: 2, k }, params, mult)
        })
    }

    proptest! {
        #[test]
        fn merge_is_idempotent_and_order_free(
            comps in proptest::collection::vec(arb_component(), 0..8),
            seed in any::<u64>(),
        ) {
            let spec = Spectrum::new("p", comps.clone());
            let once = merge(&spec);
            prop_assert_eq!(merge(&once), once.clone());
            let mut shuffled = comps;
            let len = shuffled.len();
            if len > 1 {
                shuffled.rotate_left((seed as usize) % len);
                shuffled.reverse();
            }
            prop_assert_eq!(merge(&Spectrum::new("p", shuffled)), once);
        }

        #[test]
        fn json_round_trip(comps in proptest::collection::vec(arb_component(), 0..6)) {
            let spec = Spectrum::new("p", comps);
            prop_assert_eq!(Spectrum::from_json(&spec.to_json()).unwrap(), spec);
        }

        #[test]
        fn a_plus_elements_have_the_right_parity(p in 1usize..6, q in 1usize..6, k in -10i64..10) {
            let a = a_plus_set(p, q, k);
            for t in ints(&a, 30) {
                prop_assert!(t < 0);
                prop_assert_eq!((t - (k + (p + q) as i64 + 1)).rem_euclid(2), 0);
            }
        }

        #[test]
        fn progression_membership_matches_enumeration(b in -9i64..9, s in 1i64..4, e in -9i64..9) {
            let p = ParamSet::progression(rat(b), rat(s), Interval::above(Bound::Closed(rat(e))));
            let listed = ints(&p, 15);
            for x in -15i64..=15 {
                let direct = x >= e && (x - b).rem_euclid(s) == 0;
                prop_assert_eq!(listed.contains(&x), direct);
                prop_assert_eq!(p.contains(&rat(x)), direct);
            }
        }
    }
}
