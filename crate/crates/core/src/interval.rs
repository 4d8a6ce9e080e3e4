//! Proportion intervals over `[0, 1]` with open or closed endpoints.
//!
//! Open endpoints stand in for the "strictly more than 0" / "strictly less
//! than 1" readings of `some` and `not all`, so no arbitrary epsilon is ever
//! stored. Arithmetic is plain binary floating point; results may leave
//! `[0, 1]` unless the caller asks for clamping.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::aristotle::Letter;
use crate::fuzzy_number::TrapezoidalQuantifier;

/// Absolute tolerance applied at closed endpoints in entailment checks.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("interval bound is not a finite number")]
    NotFinite,
    #[error("lower bound {lower} exceeds upper bound {upper}")]
    Reversed { lower: f64, upper: f64 },
    #[error("point interval at {0} cannot have an open endpoint")]
    OpenPoint(f64),
    #[error("interval {0} is not a proportion inside [0, 1]")]
    NotProportion(String),
    #[error("division by an interval whose closure contains 0")]
    DivisionByZeroInterval,
    #[error("malformed interval `{0}`")]
    Malformed(String),
}

/// A nonempty real interval with endpoint-openness flags.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct Interval {
    lower: f64,
    upper: f64,
    lower_open: bool,
    upper_open: bool,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    lower: f64,
    upper: f64,
    #[serde(default)]
    lower_open: bool,
    #[serde(default)]
    upper_open: bool,
}

impl TryFrom<RawInterval> for Interval {
    type Error = IntervalError;

    fn try_from(raw: RawInterval) -> Result<Self, Self::Error> {
        Interval::with_openness(raw.lower, raw.upper, raw.lower_open, raw.upper_open)
    }
}

impl From<Interval> for RawInterval {
    fn from(iv: Interval) -> Self {
        RawInterval { lower: iv.lower, upper: iv.upper, lower_open: iv.lower_open, upper_open: iv.upper_open }
    }
}

impl Interval {
    pub const UNIT: Interval = Interval::closed_unchecked(0.0, 1.0);
    pub const ZERO: Interval = Interval::closed_unchecked(0.0, 0.0);
    pub const ONE: Interval = Interval::closed_unchecked(1.0, 1.0);

    const fn closed_unchecked(lower: f64, upper: f64) -> Self {
        Interval { lower, upper, lower_open: false, upper_open: false }
    }

    /// Closed interval `[lower, upper]`.
    pub fn closed(lower: f64, upper: f64) -> Result<Self, IntervalError> {
        Self::with_openness(lower, upper, false, false)
    }

    pub fn point(value: f64) -> Result<Self, IntervalError> {
        Self::closed(value, value)
    }

    pub fn with_openness(lower: f64, upper: f64, lower_open: bool, upper_open: bool) -> Result<Self, IntervalError> {
        if !lower.is_finite() || !upper.is_finite() {
            return Err(IntervalError::NotFinite);
        }
        if lower > upper {
            return Err(IntervalError::Reversed { lower, upper });
        }
        if lower == upper && (lower_open || upper_open) {
            return Err(IntervalError::OpenPoint(lower));
        }
        Ok(Interval { lower, upper, lower_open, upper_open })
    }

    /// Like [`Interval::with_openness`] but additionally requires `[0, 1]`.
    pub fn proportion(lower: f64, upper: f64, lower_open: bool, upper_open: bool) -> Result<Self, IntervalError> {
        let iv = Self::with_openness(lower, upper, lower_open, upper_open)?;
        if iv.is_proportion() {
            Ok(iv)
        } else {
            Err(IntervalError::NotProportion(iv.to_string()))
        }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn lower_open(&self) -> bool {
        self.lower_open
    }

    pub fn upper_open(&self) -> bool {
        self.upper_open
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn is_proportion(&self) -> bool {
        self.lower >= 0.0 && self.upper <= 1.0
    }

    /// Same bounds with both endpoints closed.
    pub fn closure(&self) -> Interval {
        Interval::closed_unchecked(self.lower, self.upper)
    }

    /// Membership honoring openness; closed endpoints get [`TOLERANCE`].
    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lower_open { x > self.lower } else { x >= self.lower - TOLERANCE };
        let below = if self.upper_open { x < self.upper } else { x <= self.upper + TOLERANCE };
        above && below
    }

    /// Assembles a result, closing collapsed points and optionally clamping
    /// into `[0, 1]`. A clamped endpoint is always attained, hence closed.
    fn assemble(mut lower: f64, mut lower_open: bool, mut upper: f64, mut upper_open: bool, clamp: bool) -> Interval {
        if clamp {
            if lower < 0.0 {
                lower = 0.0;
                lower_open = false;
            }
            if lower > 1.0 {
                lower = 1.0;
                lower_open = false;
            }
            if upper > 1.0 {
                upper = 1.0;
                upper_open = false;
            }
            if upper < 0.0 {
                upper = 0.0;
                upper_open = false;
            }
        }
        if lower >= upper {
            // float noise can only produce a collapse, never an inversion
            let v = if clamp { lower.min(upper) } else { lower };
            return Interval::closed_unchecked(v, v);
        }
        Interval { lower, upper, lower_open, upper_open }
    }

    /// Endpoint sum; an endpoint is open iff either contributing endpoint is.
    pub fn add(&self, other: &Interval, clamp: bool) -> Interval {
        Self::assemble(
            self.lower + other.lower,
            self.lower_open || other.lower_open,
            self.upper + other.upper,
            self.upper_open || other.upper_open,
            clamp,
        )
    }

    /// `[a.l - b.u, a.u - b.l]`, clamped at 0 (and 1) when `clamp`.
    pub fn sub(&self, other: &Interval, clamp: bool) -> Interval {
        Self::assemble(
            self.lower - other.upper,
            self.lower_open || other.upper_open,
            self.upper - other.lower,
            self.upper_open || other.lower_open,
            clamp,
        )
    }

    /// Interval product. On non-negative operands this is
    /// `[a.l * b.l, a.u * b.u]`; the general sign cases are handled too so
    /// unclamped intermediates stay correct.
    pub fn mul(&self, other: &Interval) -> Interval {
        let xs = [(self.lower, !self.lower_open), (self.upper, !self.upper_open)];
        let ys = [(other.lower, !other.lower_open), (other.upper, !other.upper_open)];
        let mut candidates = Vec::with_capacity(4);
        for &(x, x_hit) in &xs {
            for &(y, y_hit) in &ys {
                let attained = (x_hit && y_hit) || (x == 0.0 && x_hit) || (y == 0.0 && y_hit);
                candidates.push((x * y, attained));
            }
        }
        Self::from_candidates(&candidates)
    }

    /// Interval quotient; errors when `0` lies in the closure of `other`.
    pub fn div(&self, other: &Interval) -> Result<Interval, IntervalError> {
        if other.lower <= 0.0 && other.upper >= 0.0 {
            return Err(IntervalError::DivisionByZeroInterval);
        }
        let xs = [(self.lower, !self.lower_open), (self.upper, !self.upper_open)];
        let ys = [(other.lower, !other.lower_open), (other.upper, !other.upper_open)];
        let mut candidates = Vec::with_capacity(4);
        for &(x, x_hit) in &xs {
            for &(y, y_hit) in &ys {
                let attained = (x_hit && y_hit) || (x == 0.0 && x_hit);
                candidates.push((x / y, attained));
            }
        }
        Ok(Self::from_candidates(&candidates))
    }

    fn from_candidates(candidates: &[(f64, bool)]) -> Interval {
        let lower = candidates.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
        let upper = candidates.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max);
        let lower_hit = candidates.iter().any(|&(v, hit)| v == lower && hit);
        let upper_hit = candidates.iter().any(|&(v, hit)| v == upper && hit);
        Self::assemble(lower, !lower_hit, upper, !upper_hit, false)
    }

    /// Scale by a non-negative constant.
    pub fn scale(&self, factor: f64) -> Interval {
        self.mul(&Interval::closed_unchecked(factor, factor))
    }

    /// Replaces every endpoint by `max(endpoint, floor)`.
    pub fn clamp_floor(&self, floor: f64) -> Interval {
        let (lower, lower_open) = if self.lower < floor { (floor, false) } else { (self.lower, self.lower_open) };
        let (upper, upper_open) = if self.upper < floor { (floor, false) } else { (self.upper, self.upper_open) };
        Self::assemble(lower, lower_open, upper, upper_open, false)
    }

    /// `[lower, 1]`, keeping the lower endpoint's openness.
    pub fn at_least(&self) -> Interval {
        let upper = self.lower.max(1.0);
        Self::assemble(self.lower, self.lower_open, upper, false, false)
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &Interval) -> Interval {
        let (lower, lower_open) = match self.lower.partial_cmp(&other.lower) {
            Some(std::cmp::Ordering::Less) => (self.lower, self.lower_open),
            Some(std::cmp::Ordering::Greater) => (other.lower, other.lower_open),
            _ => (self.lower, self.lower_open && other.lower_open),
        };
        let (upper, upper_open) = match self.upper.partial_cmp(&other.upper) {
            Some(std::cmp::Ordering::Greater) => (self.upper, self.upper_open),
            Some(std::cmp::Ordering::Less) => (other.upper, other.upper_open),
            _ => (self.upper, self.upper_open && other.upper_open),
        };
        Self::assemble(lower, lower_open, upper, upper_open, false)
    }

    /// True iff every point of `self` lies in `general`.
    ///
    /// Closed endpoints of `general` compare with [`TOLERANCE`]; open ones
    /// compare strictly, so `[0, 1]` does not entail `[0, 1)`.
    pub fn entails(&self, general: &Interval) -> bool {
        let lower_ok = if general.lower_open {
            self.lower > general.lower || (self.lower_open && self.lower >= general.lower)
        } else {
            self.lower >= general.lower - TOLERANCE
        };
        let upper_ok = if general.upper_open {
            self.upper < general.upper || (self.upper_open && self.upper <= general.upper)
        } else {
            self.upper <= general.upper + TOLERANCE
        };
        lower_ok && upper_ok
    }

    /// Do the two intervals share a point?
    pub fn intersects(&self, other: &Interval) -> bool {
        let lo_ok =
            if self.upper_open || other.lower_open { self.upper > other.lower } else { self.upper >= other.lower };
        let hi_ok =
            if other.upper_open || self.lower_open { other.upper > self.lower } else { other.upper >= self.lower };
        lo_ok && hi_ok
    }

    /// Endpoint-wise equality within `tol`, with matching openness.
    pub fn approx_eq(&self, other: &Interval, tol: f64) -> bool {
        (self.lower - other.lower).abs() <= tol
            && (self.upper - other.upper).abs() <= tol
            && self.lower_open == other.lower_open
            && self.upper_open == other.upper_open
    }
}

/// Renders a number with at most nine decimals and no trailing zeros.
pub fn fmt_num(x: f64) -> String {
    let rounded = (x * 1e9).round() / 1e9;
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    format!("{rounded}")
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lower_open { '(' } else { '[' },
            fmt_num(self.lower),
            fmt_num(self.upper),
            if self.upper_open { ')' } else { ']' },
        )
    }
}

impl FromStr for Interval {
    type Err = IntervalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || IntervalError::Malformed(s.to_string());
        let t = s.trim();
        let mut chars = t.chars();
        let lower_open = match chars.next() {
            Some('[') => false,
            Some('(') => true,
            _ => return Err(malformed()),
        };
        let upper_open = match chars.next_back() {
            Some(']') => false,
            Some(')') => true,
            _ => return Err(malformed()),
        };
        let body = chars.as_str();
        let (l, u) = body.split_once(',').ok_or_else(malformed)?;
        let lower: f64 = l.trim().parse().map_err(|_| malformed())?;
        let upper: f64 = u.trim().parse().map_err(|_| malformed())?;
        Interval::with_openness(lower, upper, lower_open, upper_open)
    }
}

/// How a statement's quantifier is interpreted numerically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantifierKind {
    Precise(f64),
    Imprecise(Interval),
    Classical(Letter),
    Fuzzy(TrapezoidalQuantifier),
}

impl QuantifierKind {
    /// The crisp interval this quantifier denotes; `None` for fuzzy ones.
    pub fn interval(&self) -> Option<Interval> {
        match *self {
            QuantifierKind::Precise(v) => Some(Interval::closed_unchecked(v, v)),
            QuantifierKind::Imprecise(iv) => Some(iv),
            QuantifierKind::Classical(letter) => Some(letter.interval()),
            QuantifierKind::Fuzzy(_) => None,
        }
    }

    pub fn support(&self) -> Interval {
        match self {
            QuantifierKind::Fuzzy(t) => t.support(),
            other => other.interval().expect("crisp quantifier"),
        }
    }

    pub fn kernel(&self) -> Interval {
        match self {
            QuantifierKind::Fuzzy(t) => t.kernel(),
            other => other.interval().expect("crisp quantifier"),
        }
    }

    /// Degree to which a proportion (or count) satisfies the quantifier.
    pub fn membership(&self, x: f64) -> f64 {
        match self {
            QuantifierKind::Fuzzy(t) => t.membership(x),
            other => {
                if other.interval().expect("crisp quantifier").contains(x) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn is_proportion(&self) -> bool {
        match self {
            QuantifierKind::Fuzzy(t) => t.is_proportion(),
            other => other.interval().is_some_and(|iv| iv.is_proportion()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(l: f64, u: f64) -> Interval {
        Interval::closed(l, u).unwrap()
    }

    #[test]
    fn add_examples() {
        assert!(iv(0.2, 0.3).add(&iv(0.1, 0.4), true).approx_eq(&iv(0.3, 0.7), 1e-12));
        assert_eq!(iv(0.0, 0.0).add(&iv(0.5, 0.5), false), iv(0.5, 0.5));
        assert_eq!(iv(0.8, 0.9).add(&iv(0.5, 0.6), true), iv(1.0, 1.0));
    }

    #[test]
    fn add_openness_propagates() {
        let some = Letter::I.interval();
        let r = some.add(&iv(0.0, 0.0), false);
        assert!(r.lower_open() && !r.upper_open());
    }

    #[test]
    fn sub_mul_div_examples() {
        assert!(iv(0.5, 0.8).mul(&iv(0.5, 0.8)).approx_eq(&iv(0.25, 0.64), 1e-12));
        assert_eq!(iv(0.3, 0.4).sub(&iv(0.5, 0.6), true), iv(0.0, 0.0));
        assert!(iv(0.2, 0.4).div(&iv(0.5, 1.0)).unwrap().approx_eq(&iv(0.2, 0.8), 1e-12));
    }

    #[test]
    fn div_by_zero_interval() {
        assert_eq!(iv(0.2, 0.4).div(&iv(0.0, 1.0)), Err(IntervalError::DivisionByZeroInterval));
        // open at zero still has zero in its closure
        let some = Letter::I.interval();
        assert_eq!(iv(0.2, 0.4).div(&some), Err(IntervalError::DivisionByZeroInterval));
    }

    #[test]
    fn zero_annihilates_openness_in_products() {
        let some = Letter::I.interval();
        assert_eq!(some.mul(&iv(0.0, 0.0)), iv(0.0, 0.0));
        let r = iv(0.0, 1.0).mul(&some);
        assert!(!r.lower_open());
    }

    #[test]
    fn entailment_examples() {
        assert!(iv(0.0, 0.0).entails(&Letter::O.interval()));
        assert!(!iv(0.0, 1.0).entails(&Letter::O.interval()));
        assert!(iv(1.0, 1.0).entails(&Letter::I.interval()));
        assert!(!iv(0.0, 1.0).entails(&Letter::I.interval()));
        let half_open = Interval::with_openness(0.0, 1.0, true, false).unwrap();
        assert!(half_open.entails(&Letter::I.interval()));
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(matches!(Interval::closed(0.6, 0.5), Err(IntervalError::Reversed { .. })));
        assert_eq!(Interval::with_openness(0.5, 0.5, true, false), Err(IntervalError::OpenPoint(0.5)));
        assert!(Interval::proportion(0.5, 1.2, false, false).is_err());
        assert_eq!(Interval::closed(f64::NAN, 1.0), Err(IntervalError::NotFinite));
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(iv(0.25, 0.35).to_string(), "[0.25, 0.35]");
        assert_eq!(Letter::I.interval().to_string(), "(0, 1]");
        assert_eq!(Letter::O.interval().to_string(), "[0, 1)");
        let parsed: Interval = "(0, 1]".parse().unwrap();
        assert_eq!(parsed, Letter::I.interval());
        assert!("[0.3 0.4]".parse::<Interval>().is_err());
        assert!("0.3, 0.4".parse::<Interval>().is_err());
    }

    #[test]
    fn clamp_floor_and_at_least() {
        let r = iv(-0.3, 0.4).clamp_floor(0.0);
        assert_eq!(r, iv(0.0, 0.4));
        let open = Interval::with_openness(0.0, 1.0, true, false).unwrap();
        assert_eq!(open.clamp_floor(0.0), open);
        let al = iv(0.42, 0.42).at_least();
        assert_eq!(al, iv(0.42, 1.0));
    }

    #[test]
    fn hull_merges_openness() {
        let a = Interval::with_openness(0.0, 0.5, true, false).unwrap();
        let b = iv(0.0, 1.0);
        assert_eq!(a.hull(&b), b);
        let c = Interval::with_openness(0.0, 0.2, true, false).unwrap();
        assert!(a.hull(&c).lower_open());
    }

    #[test]
    fn quantifier_kinds() {
        assert_eq!(QuantifierKind::Precise(0.3).interval(), Some(iv(0.3, 0.3)));
        assert_eq!(QuantifierKind::Classical(Letter::A).interval(), Some(iv(1.0, 1.0)));
        assert_eq!(QuantifierKind::Classical(Letter::I).membership(0.0), 0.0);
        assert_eq!(QuantifierKind::Classical(Letter::I).membership(0.01), 1.0);
    }
}
