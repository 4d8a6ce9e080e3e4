//! Interval syllogistics over proportional quantifiers.
//!
//! Pattern I chains `A -> B -> C` and bounds the proportion of As that are
//! Cs from the four proportions linking the terms in both directions.
//! Patterns II and III conclude about an intersection; their bounds are the
//! attained range of the conclusion proportion over finite models.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsl::{QuantifierTerm, Statement, Syllogism};
use crate::fuzzy_number::TrapezoidalQuantifier;
use crate::interval::{Interval, QuantifierKind, TOLERANCE};
use crate::oracle::{self, AtomSet, OracleError, ProportionConstraint, Target};

/// Floor substituted for a converse proportion whose interval is open at 0.
pub const CONVERSE_FLOOR: f64 = 1e-6;
/// Default grid step of the verification sweep.
pub const SWEEP_STEP: f64 = 0.01;
/// Maximum grid points per axis in the sweep.
const SWEEP_MAX_POINTS: usize = 41;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DuboisError {
    #[error("converse proportion is zero; the bounds divide by it")]
    ZeroConverse,
    #[error("premises are inconsistent: lower bound {lower} exceeds upper bound {upper}")]
    InconsistentPremises { lower: f64, upper: f64 },
    #[error("quantifier {0} is not a proportion in [0, 1]")]
    NotProportion(String),
    #[error("kernel {kernel} is not inside support {support}")]
    KernelNotInSupport { kernel: Interval, support: Interval },
    #[error("no model with at most {0} elements satisfies the premises")]
    UnsatisfiablePremises(u32),
    #[error("the conclusion's reference set is empty in every model of the premises")]
    UndefinedProportion,
    #[error("premises do not fit the scheme: {0}")]
    Scheme(String),
    #[error(transparent)]
    Oracle(OracleError),
}

impl From<OracleError> for DuboisError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Unsatisfiable(n) => DuboisError::UnsatisfiablePremises(n),
            OracleError::UndefinedProportion => DuboisError::UndefinedProportion,
            other => DuboisError::Oracle(other),
        }
    }
}

/// Which premise set of Patterns II/III is available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Version {
    General,
    Particular,
}

impl fmt::Display for Version {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Version::General => "general",
            Version::Particular => "particular",
        })
    }
}

impl FromStr for Version {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_lowercase().as_str() {
            "general" => Ok(Version::General),
            "particular" => Ok(Version::Particular),
            other => Err(format!("unknown version `{other}` (expected general or particular)")),
        }
    }
}

/// Pattern I slots: `q1` As are Bs, `q1_conv` Bs are As, `q2` Bs are Cs,
/// `q2_conv` Cs are Bs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PatternIInput<T> {
    pub q1: T,
    pub q1_conv: T,
    pub q2: T,
    pub q2_conv: T,
}

impl<T: Copy> PatternIInput<T> {
    /// The same premises read along the chain `C -> B -> A`.
    pub fn mirrored(&self) -> Self {
        PatternIInput { q1: self.q2_conv, q1_conv: self.q2, q2: self.q1_conv, q2_conv: self.q1 }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> PatternIInput<U> {
        PatternIInput { q1: f(&self.q1), q1_conv: f(&self.q1_conv), q2: f(&self.q2), q2_conv: f(&self.q2_conv) }
    }

    fn slots(&self) -> [T; 4] {
        [self.q1, self.q1_conv, self.q2, self.q2_conv]
    }
}

fn lower_bound(q1: f64, q1c: f64, q2: f64) -> f64 {
    q1 * (1.0 - (1.0 - q2) / q1c).max(0.0)
}

/// Reading of the fourth term of the upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FourthTerm {
    /// `q1 q2 (1 - q2') / (q1' q2') + q1`: As in B∩C plus As in C outside B.
    #[default]
    Additive,
    /// `q1 q2 / (q1' q2') * (1 - q2' + q1)`. Not a valid bound: with
    /// A = {x, y}, B = C = {x} it gives 1/4 while the true proportion is 1/2.
    Bracketed,
}

fn upper_terms(form: FourthTerm, q1: f64, q1c: f64, q2: f64, q2c: f64) -> [f64; 4] {
    let ratio = q1 * q2 / (q1c * q2c);
    let fourth = match form {
        FourthTerm::Additive => ratio * (1.0 - q2c) + q1,
        FourthTerm::Bracketed => ratio * (1.0 - q2c + q1),
    };
    [1.0, 1.0 - q1 + q1 * q2 / q1c, ratio, fourth]
}

fn upper_bound(form: FourthTerm, q1: f64, q1c: f64, q2: f64, q2c: f64) -> f64 {
    upper_terms(form, q1, q1c, q2, q2c).into_iter().fold(f64::INFINITY, f64::min)
}

fn check_unit(x: f64) -> Result<(), DuboisError> {
    if x.is_finite() && (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(DuboisError::NotProportion(crate::interval::fmt_num(x)))
    }
}

fn finish(lower: f64, upper: f64, lower_open: bool, upper_open: bool) -> Result<Interval, DuboisError> {
    if lower > upper + TOLERANCE {
        return Err(DuboisError::InconsistentPremises { lower, upper });
    }
    let lower = lower.min(upper);
    let open = lower < upper;
    Interval::with_openness(lower, upper, lower_open && open, upper_open && open)
        .map_err(|e| DuboisError::Scheme(e.to_string()))
}

/// Pattern I bounds for precise proportions.
pub fn pattern1_precise(q1: f64, q1c: f64, q2: f64, q2c: f64) -> Result<Interval, DuboisError> {
    pattern1_precise_with(FourthTerm::default(), q1, q1c, q2, q2c)
}

pub fn pattern1_precise_with(form: FourthTerm, q1: f64, q1c: f64, q2: f64, q2c: f64) -> Result<Interval, DuboisError> {
    for x in [q1, q1c, q2, q2c] {
        check_unit(x)?;
    }
    if let Some(iv) = empty_overlap(&Interval::point(q1).expect("unit"), &Interval::point(q2).expect("unit")) {
        return Ok(iv);
    }
    if q1c == 0.0 || q2c == 0.0 {
        return Err(DuboisError::ZeroConverse);
    }
    finish(lower_bound(q1, q1c, q2), upper_bound(form, q1, q1c, q2, q2c), false, false)
}

/// Bounds when a direct proportion is exactly 0. The overlap it measures is
/// then empty, so its converse is 0 as well whatever the premise says, and
/// every term dividing by that converse carries no information: with A∩B
/// empty nothing links A to C; with B∩C empty the As in C lie outside B.
fn empty_overlap(q1: &Interval, q2: &Interval) -> Option<Interval> {
    let zero = |iv: &Interval| iv.lower() == 0.0 && iv.upper() == 0.0;
    if zero(q1) {
        Some(Interval::UNIT)
    } else if zero(q2) {
        let upper = 1.0 - q1.lower();
        Some(Interval::with_openness(0.0, upper, false, q1.lower_open() && upper > 0.0).expect("within unit"))
    } else {
        None
    }
}

/// Pattern I bounds for the mirrored conclusion "Cs are As".
pub fn pattern1_precise_converse(q1: f64, q1c: f64, q2: f64, q2c: f64) -> Result<Interval, DuboisError> {
    pattern1_precise(q2c, q2, q1c, q1)
}

/// Lowest value a converse slot may take.
fn converse_floor(iv: &Interval) -> Result<f64, DuboisError> {
    if iv.lower() > 0.0 {
        Ok(iv.lower())
    } else if iv.lower_open() && iv.upper() > 0.0 {
        Ok(CONVERSE_FLOOR.min(iv.upper()))
    } else {
        Err(DuboisError::ZeroConverse)
    }
}

fn check_input(input: &PatternIInput<Interval>) -> Result<(), DuboisError> {
    for iv in input.slots() {
        if !iv.is_proportion() {
            return Err(DuboisError::NotProportion(iv.to_string()));
        }
    }
    Ok(())
}

/// Pattern I bounds for interval quantifiers: the minimum of the lower bound
/// and the maximum of the upper bound over the premise box.
///
/// The lower bound is increasing in `q1`, `q2` and `q1_conv`, so its minimum
/// sits at the lower corner. Every upper term is increasing in `q2` and
/// decreasing in both converses, so those are fixed at the favourable ends;
/// what remains is a one-dimensional maximum over `q1` of
/// `min(1, t1, t2, t3)` with `t1` linear and `t2`, `t3` increasing, attained
/// at an endpoint or where `t1` crosses `t2` or `t3`.
pub fn pattern1_imprecise(input: &PatternIInput<Interval>) -> Result<Interval, DuboisError> {
    pattern1_imprecise_with(FourthTerm::default(), input)
}

pub fn pattern1_imprecise_with(form: FourthTerm, input: &PatternIInput<Interval>) -> Result<Interval, DuboisError> {
    check_input(input)?;
    if let Some(iv) = empty_overlap(&input.q1, &input.q2) {
        return Ok(iv);
    }
    let q1c_min = converse_floor(&input.q1_conv)?;
    let q2c_min = converse_floor(&input.q2_conv)?;
    let (q1, q2) = (input.q1, input.q2);

    let lower = lower_bound(q1.lower(), q1c_min, q2.lower());
    let lower_open = if lower <= 0.0 {
        let q1_zero = q1.lower() == 0.0 && !q1.lower_open();
        let sum = q1c_min + q2.lower();
        let negative_inner = sum < 1.0 || (sum == 1.0 && !input.q1_conv.lower_open() && !q2.lower_open());
        !(q1_zero || negative_inner)
    } else {
        let q1c_free = !input.q1_conv.lower_open() || (q2.lower() == 1.0 && !q2.lower_open());
        q1.lower_open() || q2.lower_open() || !q1c_free
    };

    let upper = max_upper(form, (q1.lower(), q1.upper()), q2.upper(), q1c_min, q2c_min);
    // attained only if the maximum survives pulling open ends inward
    let inward = |iv: &Interval| (iv.width() / 4.0).min(1e-7);
    let shrink = |iv: &Interval, open: bool| if open { inward(iv) } else { 0.0 };
    let q1_range = (q1.lower() + shrink(&q1, q1.lower_open()), q1.upper() - shrink(&q1, q1.upper_open()));
    let q1c_in = q1c_min
        + if q1c_min == input.q1_conv.lower() { shrink(&input.q1_conv, input.q1_conv.lower_open()) } else { 0.0 };
    let q2c_in = q2c_min
        + if q2c_min == input.q2_conv.lower() { shrink(&input.q2_conv, input.q2_conv.lower_open()) } else { 0.0 };
    let q2_in = q2.upper() - shrink(&q2, q2.upper_open());
    let inner = max_upper(form, q1_range, q2_in, q1c_in, q2c_in);
    finish(lower, upper, lower_open, inner < upper - 1e-12)
}

/// Maximum over `q1` in `[lo, hi]` of the upper bound with the other slots fixed.
fn max_upper(form: FourthTerm, (lo, hi): (f64, f64), b: f64, c: f64, d: f64) -> f64 {
    let k = b / (c * d);
    let s = b / c - 1.0;
    let mut candidates = vec![lo, hi];
    if k - s > 0.0 {
        candidates.push(1.0 / (k - s));
    }
    match form {
        FourthTerm::Additive => {
            let slope = k * (1.0 - d) + 1.0 - s;
            if slope > 0.0 {
                candidates.push(1.0 / slope);
            }
        }
        FourthTerm::Bracketed => {
            let lin = k * (1.0 - d) - s;
            let disc = lin * lin + 4.0 * k;
            if k > 0.0 && disc >= 0.0 {
                candidates.push((-lin + disc.sqrt()) / (2.0 * k));
            }
        }
    }
    candidates
        .into_iter()
        .filter(|x| x.is_finite() && *x >= lo && *x <= hi)
        .map(|x| upper_bound(form, x, c, b, d))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn axis(iv: &Interval, floor: f64, step: f64) -> Vec<f64> {
    let lo = floor.max(iv.lower());
    let hi = iv.upper();
    if hi - lo <= 0.0 {
        return vec![lo];
    }
    let n = (((hi - lo) / step).ceil() as usize + 1).clamp(2, SWEEP_MAX_POINTS);
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Independent check of [`pattern1_imprecise`]: evaluates both bounds on a
/// grid over the premise box and refines the best upper point by a local
/// pattern search. Returns a closed interval.
pub fn sweep_pattern1(input: &PatternIInput<Interval>, step: f64) -> Result<Interval, DuboisError> {
    sweep_pattern1_with(FourthTerm::default(), input, step)
}

pub fn sweep_pattern1_with(
    form: FourthTerm,
    input: &PatternIInput<Interval>,
    step: f64,
) -> Result<Interval, DuboisError> {
    check_input(input)?;
    if let Some(iv) = empty_overlap(&input.q1, &input.q2) {
        return Ok(iv.closure());
    }
    let floors = [input.q1.lower(), converse_floor(&input.q1_conv)?, input.q2.lower(), converse_floor(&input.q2_conv)?];
    let boxes = input.slots();
    let axes: Vec<Vec<f64>> = boxes.iter().zip(floors).map(|(iv, f)| axis(iv, f, step)).collect();
    let mut lower = f64::INFINITY;
    let mut best = (f64::NEG_INFINITY, [0.0; 4]);
    for &a in &axes[0] {
        for &b in &axes[1] {
            for &c in &axes[2] {
                lower = lower.min(lower_bound(a, b, c));
                for &d in &axes[3] {
                    let u = upper_bound(form, a, b, c, d);
                    if u > best.0 {
                        best = (u, [a, b, c, d]);
                    }
                }
            }
        }
    }
    let (mut value, mut point) = best;
    let mut delta = step;
    while delta > 1e-13 {
        let mut improved = false;
        for dim in 0..4 {
            for sign in [-1.0, 1.0] {
                let mut p = point;
                p[dim] = (p[dim] + sign * delta).clamp(floors[dim].max(boxes[dim].lower()), boxes[dim].upper());
                let u = upper_bound(form, p[0], p[1], p[2], p[3]);
                if u > value {
                    value = u;
                    point = p;
                    improved = true;
                }
            }
        }
        if !improved {
            delta /= 2.0;
        }
    }
    finish(lower, value, false, false)
}

/// Support of a trapezoid, open at each end where it differs from the kernel.
fn open_support(t: &TrapezoidalQuantifier) -> Interval {
    let [a, b, c, d] = t.points();
    Interval::with_openness(a, d, a < b, c < d).expect("ordered trapezoid")
}

/// Pattern I on trapezoids: kernel from the input kernels, support from the
/// input supports, each computed as an interval problem.
pub fn pattern1_fuzzy(input: &PatternIInput<TrapezoidalQuantifier>) -> Result<TrapezoidalQuantifier, DuboisError> {
    let kernel = pattern1_imprecise(&input.map(|t| t.kernel()))?;
    let support = pattern1_imprecise(&input.map(open_support))?;
    if kernel.lower() < support.lower() - TOLERANCE || kernel.upper() > support.upper() + TOLERANCE {
        return Err(DuboisError::KernelNotInSupport { kernel, support });
    }
    TrapezoidalQuantifier::new(
        support.lower().min(kernel.lower()),
        kernel.lower(),
        kernel.upper(),
        support.upper().max(kernel.upper()),
    )
    .map_err(|e| DuboisError::Scheme(e.to_string()))
}

/// Pattern I for any mix of quantifier kinds. Fuzzy if any slot is fuzzy.
pub fn pattern1(input: &PatternIInput<QuantifierKind>) -> Result<QuantifierKind, DuboisError> {
    for q in input.slots() {
        if !q.is_proportion() {
            return Err(DuboisError::NotProportion(format!("{q:?}")));
        }
    }
    if input.slots().iter().any(|q| matches!(q, QuantifierKind::Fuzzy(_))) {
        let lifted = input.map(|q| match q {
            QuantifierKind::Fuzzy(t) => *t,
            crisp => TrapezoidalQuantifier::from_interval(&crisp.interval().expect("crisp quantifier")),
        });
        return pattern1_fuzzy(&lifted).map(QuantifierKind::Fuzzy);
    }
    let iv = pattern1_imprecise(&input.map(|q| q.interval().expect("crisp quantifier")))?;
    Ok(if iv.is_point() { QuantifierKind::Precise(iv.lower()) } else { QuantifierKind::Imprecise(iv) })
}

/// Which intersection pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectionPattern {
    /// "Q As and Bs are Cs": `|A∩B∩C| / |A∩B|`.
    II,
    /// "Q Cs are As and Bs": `|A∩B∩C| / |C|`.
    III,
}

impl IntersectionPattern {
    pub fn target(self) -> Target {
        let abc = AtomSet::A.and(AtomSet::B).and(AtomSet::C);
        match self {
            IntersectionPattern::II => Target { numerator: abc, denominator: AtomSet::A.and(AtomSet::B) },
            IntersectionPattern::III => Target { numerator: abc, denominator: AtomSet::C },
        }
    }

    /// Slots as `(subject, predicate)` term sets that must all be given.
    pub fn required_slots(self, version: Version) -> Vec<(AtomSet, AtomSet)> {
        let (a, b, c) = (AtomSet::A, AtomSet::B, AtomSet::C);
        match (self, version) {
            (_, Version::General) => vec![(a, b), (b, a), (b, c), (c, b), (a, c), (c, a)],
            (IntersectionPattern::II, Version::Particular) => vec![(a, b), (b, a), (b, c), (a, c)],
            (IntersectionPattern::III, Version::Particular) => vec![(c, b), (c, a)],
        }
    }
}

/// One premise of Patterns II/III: the proportion of `subject` that is `predicate`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotPremise {
    pub subject: AtomSet,
    pub predicate: AtomSet,
    pub bounds: Interval,
}

/// Tightest bounds on the conclusion proportion over every model with at
/// most `total_max` elements that satisfies the premises.
pub fn pattern23_bounds(
    pattern: IntersectionPattern,
    version: Version,
    premises: &[SlotPremise],
    total_max: u32,
) -> Result<Interval, DuboisError> {
    let given: BTreeSet<(AtomSet, AtomSet)> = premises.iter().map(|p| (p.subject, p.predicate)).collect();
    for (s, p) in pattern.required_slots(version) {
        if !given.contains(&(s, p)) {
            return Err(DuboisError::Scheme(format!("missing premise relating {} to {}", set_name(s), set_name(p))));
        }
    }
    let constraints = premises
        .iter()
        .map(|p| ProportionConstraint::new(p.predicate, p.subject, &p.bounds))
        .collect::<Result<Vec<_>, _>>()?;
    let range = oracle::attained_range(&constraints, &pattern.target(), total_max)?;
    Ok(range.to_interval())
}

fn set_name(s: AtomSet) -> &'static str {
    match s {
        AtomSet::A => "A",
        AtomSet::B => "B",
        AtomSet::C => "C",
        _ => "?",
    }
}

/// A computed conclusion: the statement to print and its numeric value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DuboisConclusion {
    pub statement: Statement,
    pub quantifier: QuantifierKind,
}

fn quantifier_of(s: &Statement) -> Result<QuantifierKind, DuboisError> {
    s.quantifier.kind().ok_or_else(|| DuboisError::Scheme(format!("premise `{s}` has no numeric quantifier")))
}

fn expect_shape(s: &Statement, subject: &str, predicate: &str, slot: &str) -> Result<(), DuboisError> {
    if s.subject == subject && s.predicate == predicate {
        Ok(())
    } else {
        Err(DuboisError::Scheme(format!("{slot} must relate `{subject}` to `{predicate}`, found `{s}`")))
    }
}

/// Pattern I from a four-premise file in slot order `q1`, `q1_conv`, `q2`, `q2_conv`.
pub fn infer_pattern1(syllogism: &Syllogism) -> Result<DuboisConclusion, DuboisError> {
    let p = &syllogism.premises;
    if p.len() != 4 {
        return Err(DuboisError::Scheme(format!("Pattern I takes 4 premises, found {}", p.len())));
    }
    let (a, b) = (p[0].subject.as_str(), p[0].predicate.as_str());
    let c = p[2].predicate.as_str();
    expect_shape(&p[1], b, a, "second premise")?;
    expect_shape(&p[2], b, c, "third premise")?;
    expect_shape(&p[3], c, b, "fourth premise")?;
    if c == a {
        return Err(DuboisError::Scheme("the three terms must be distinct".into()));
    }
    let input = PatternIInput {
        q1: quantifier_of(&p[0])?,
        q1_conv: quantifier_of(&p[1])?,
        q2: quantifier_of(&p[2])?,
        q2_conv: quantifier_of(&p[3])?,
    };
    let quantifier = pattern1(&input)?;
    Ok(DuboisConclusion { statement: Statement::new(QuantifierTerm::Literal(quantifier), a, c), quantifier })
}

/// Patterns II/III from a premise file. Terms are identified from the
/// scheme: Pattern II and general Pattern III start with "As are Bs";
/// particular Pattern III starts with "Cs are Bs" then "Cs are As".
/// Fuzzy premises are solved level-wise on kernels and supports.
pub fn infer_pattern23(
    syllogism: &Syllogism,
    pattern: IntersectionPattern,
    version: Version,
    total_max: u32,
) -> Result<DuboisConclusion, DuboisError> {
    let p = &syllogism.premises;
    if p.is_empty() {
        return Err(DuboisError::Scheme("no premises".into()));
    }
    let (a, b, c) = match (pattern, version) {
        (IntersectionPattern::III, Version::Particular) => {
            if p.len() < 2 {
                return Err(DuboisError::Scheme("particular Pattern III takes 2 premises".into()));
            }
            (p[1].predicate.clone(), p[0].predicate.clone(), p[0].subject.clone())
        }
        _ => {
            let (a, b) = (p[0].subject.clone(), p[0].predicate.clone());
            let c = p
                .iter()
                .flat_map(|s| [&s.subject, &s.predicate])
                .find(|t| **t != a && **t != b)
                .cloned()
                .ok_or_else(|| DuboisError::Scheme("premises mention only two terms".into()))?;
            (a, b, c)
        }
    };
    let set_of = |t: &str| -> Result<AtomSet, DuboisError> {
        if t == a {
            Ok(AtomSet::A)
        } else if t == b {
            Ok(AtomSet::B)
        } else if t == c {
            Ok(AtomSet::C)
        } else {
            Err(DuboisError::Scheme(format!("term `{t}` is not one of `{a}`, `{b}`, `{c}`")))
        }
    };
    let mut slots = Vec::new();
    let mut fuzzy = false;
    for s in p {
        let q = quantifier_of(s)?;
        fuzzy |= matches!(q, QuantifierKind::Fuzzy(_));
        slots.push((set_of(&s.subject)?, set_of(&s.predicate)?, q));
    }
    let solve = |pick: fn(&QuantifierKind) -> Interval| {
        let premises: Vec<SlotPremise> =
            slots.iter().map(|(s, pr, q)| SlotPremise { subject: *s, predicate: *pr, bounds: pick(q) }).collect();
        pattern23_bounds(pattern, version, &premises, total_max)
    };
    let quantifier = if fuzzy {
        let kernel = solve(|q| q.kernel())?;
        let support = solve(|q| q.support())?;
        if kernel.lower() < support.lower() - TOLERANCE || kernel.upper() > support.upper() + TOLERANCE {
            return Err(DuboisError::KernelNotInSupport { kernel, support });
        }
        QuantifierKind::Fuzzy(
            TrapezoidalQuantifier::new(support.lower(), kernel.lower(), kernel.upper(), support.upper())
                .map_err(|e| DuboisError::Scheme(e.to_string()))?,
        )
    } else {
        let iv = solve(|q| q.interval().expect("crisp quantifier"))?;
        if iv.is_point() {
            QuantifierKind::Precise(iv.lower())
        } else {
            QuantifierKind::Imprecise(iv)
        }
    };
    let both = format!("{a} and {b}");
    let statement = match pattern {
        IntersectionPattern::II => Statement::new(QuantifierTerm::Literal(quantifier), both, c),
        IntersectionPattern::III => Statement::new(QuantifierTerm::Literal(quantifier), c, both),
    };
    Ok(DuboisConclusion { statement, quantifier })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(l: f64, u: f64) -> Interval {
        Interval::closed(l, u).unwrap()
    }

    fn close(a: &Interval, l: f64, u: f64, tol: f64) -> bool {
        (a.lower() - l).abs() <= tol && (a.upper() - u).abs() <= tol
    }

    fn students() -> PatternIInput<Interval> {
        PatternIInput { q1: iv(0.85, 0.95), q1_conv: iv(0.25, 0.35), q2: iv(0.9, 1.0), q2_conv: iv(0.6, 0.8) }
    }

    #[test]
    fn precise_examples() {
        assert!(close(&pattern1_precise(1.0, 0.5, 1.0, 0.5).unwrap(), 1.0, 1.0, 1e-12));
        assert!(close(&pattern1_precise(1.0, 0.5, 0.0, 0.5).unwrap(), 0.0, 0.0, 1e-12));
        assert!(close(&pattern1_precise(0.5, 0.5, 0.5, 0.5).unwrap(), 0.0, 1.0, 1e-12));
    }

    #[test]
    fn precise_errors() {
        assert_eq!(pattern1_precise(0.5, 0.0, 0.5, 0.5), Err(DuboisError::ZeroConverse));
        assert_eq!(pattern1_precise(0.5, 0.5, 0.5, 0.0), Err(DuboisError::ZeroConverse));
        assert!(matches!(pattern1_precise(1.2, 0.5, 0.5, 0.5), Err(DuboisError::NotProportion(_))));
    }

    #[test]
    fn bracketed_fourth_term_is_unsound() {
        // A = {x, y}, B = C = {x}: half the As are Cs
        let bracketed = pattern1_precise_with(FourthTerm::Bracketed, 0.5, 1.0, 1.0, 1.0);
        assert!(matches!(bracketed, Err(DuboisError::InconsistentPremises { .. })), "{bracketed:?}");
        let additive = pattern1_precise(0.5, 1.0, 1.0, 1.0).unwrap();
        assert!(additive.contains(0.5));
    }

    #[test]
    fn bracketed_form_agrees_with_its_sweep() {
        let input = PatternIInput { q1: iv(0.1, 0.9), q1_conv: iv(0.5, 0.6), q2: iv(0.3, 0.4), q2_conv: iv(0.7, 0.9) };
        let a = pattern1_imprecise_with(FourthTerm::Bracketed, &input).unwrap();
        let b = sweep_pattern1_with(FourthTerm::Bracketed, &input, SWEEP_STEP).unwrap();
        assert!(close(&a, b.lower(), b.upper(), 1e-6), "{a} vs {b}");
    }

    #[test]
    fn students_single_example() {
        let r = pattern1_imprecise(&students()).unwrap();
        assert!(close(&r, 0.51, 1.0, 1e-9), "{r}");
        assert!(!r.lower_open() && !r.upper_open());
        let s = sweep_pattern1(&students(), SWEEP_STEP).unwrap();
        assert!(close(&s, r.lower(), r.upper(), 1e-6), "{s}");
    }

    #[test]
    fn imprecise_trivial_cases() {
        let one =
            PatternIInput { q1: Interval::ONE, q1_conv: Interval::ONE, q2: Interval::ONE, q2_conv: Interval::ONE };
        assert!(close(&pattern1_imprecise(&one).unwrap(), 1.0, 1.0, 1e-12));
        let pos = Interval::with_openness(0.0, 1.0, true, false).unwrap();
        let vac = PatternIInput { q1: Interval::UNIT, q1_conv: pos, q2: Interval::UNIT, q2_conv: pos };
        let r = pattern1_imprecise(&vac).unwrap();
        assert_eq!(r, Interval::UNIT);
        let closed_zero = PatternIInput { q1_conv: Interval::UNIT, ..vac };
        assert_eq!(pattern1_imprecise(&closed_zero), Err(DuboisError::ZeroConverse));
    }

    #[test]
    fn empty_overlap_ignores_converses() {
        // some As are Bs, no Bs are Cs: the converses carry no information
        let pos = Interval::with_openness(0.0, 1.0, true, false).unwrap();
        let conv = Interval::point(0.3).unwrap();
        let eio = PatternIInput { q1: pos, q1_conv: conv, q2: Interval::ZERO, q2_conv: conv };
        assert_eq!(pattern1_imprecise(&eio).unwrap().to_string(), "[0, 1)");
        let p = PatternIInput { q1: Interval::point(0.4).unwrap(), ..eio };
        assert!(close(&pattern1_imprecise(&p).unwrap(), 0.0, 0.6, 1e-12));
        let none = PatternIInput { q1: Interval::ZERO, q2: iv(0.5, 0.6), ..eio };
        assert_eq!(pattern1_imprecise(&none).unwrap(), Interval::UNIT);
    }

    #[test]
    fn imprecise_agrees_with_sweep_on_interior_maxima() {
        // t1 decreasing in q1 while t2, t3 increase: the maximum is interior
        let input = PatternIInput { q1: iv(0.1, 0.9), q1_conv: iv(0.5, 0.6), q2: iv(0.3, 0.4), q2_conv: iv(0.7, 0.9) };
        let a = pattern1_imprecise(&input).unwrap();
        let b = sweep_pattern1(&input, SWEEP_STEP).unwrap();
        assert!(close(&a, b.lower(), b.upper(), 1e-6), "{a} vs {b}");
        assert!(a.upper() < 1.0);
    }

    #[test]
    fn lower_openness() {
        let open_low = Interval::with_openness(0.85, 0.95, true, false).unwrap();
        let r = pattern1_imprecise(&PatternIInput { q1: open_low, ..students() }).unwrap();
        assert!(r.lower_open());
        // q1' + q2 < 1 makes the lower bound 0 reachable from inside the box
        let input = PatternIInput {
            q1: Interval::with_openness(0.5, 0.6, true, true).unwrap(),
            q1_conv: iv(0.3, 0.4),
            q2: Interval::with_openness(0.5, 0.6, true, false).unwrap(),
            q2_conv: iv(0.5, 0.6),
        };
        let r = pattern1_imprecise(&input).unwrap();
        assert_eq!(r.lower(), 0.0);
        assert!(!r.lower_open());
    }

    #[test]
    fn mirrored_conclusion() {
        let direct = pattern1_precise(0.6, 0.4, 0.7, 0.5).unwrap();
        let input = PatternIInput { q1: 0.6, q1_conv: 0.4, q2: 0.7, q2_conv: 0.5 };
        let m = input.mirrored();
        assert_eq!(
            pattern1_precise_converse(0.6, 0.4, 0.7, 0.5).unwrap(),
            pattern1_precise(m.q1, m.q1_conv, m.q2, m.q2_conv).unwrap()
        );
        assert_eq!(m.mirrored(), input);
        assert!(direct.lower() <= direct.upper());
    }

    #[test]
    fn fuzzy_embeddings() {
        let crisp = |v: f64| TrapezoidalQuantifier::crisp(v).unwrap();
        let input = PatternIInput { q1: crisp(0.6), q1_conv: crisp(0.4), q2: crisp(0.7), q2_conv: crisp(0.5) };
        let r = pattern1_fuzzy(&input).unwrap();
        let p = pattern1_precise(0.6, 0.4, 0.7, 0.5).unwrap();
        assert!(close(&r.kernel(), p.lower(), p.upper(), 1e-12));
        assert!(close(&r.support(), p.lower(), p.upper(), 1e-12));

        let lifted = students().map(TrapezoidalQuantifier::from_interval);
        let r = pattern1_fuzzy(&lifted).unwrap();
        assert_eq!(r.kernel(), r.support());
        assert!(close(&r.kernel(), 0.51, 1.0, 1e-9));
    }

    #[test]
    fn fuzzy_students_example() {
        let widen = |i: &Interval| {
            TrapezoidalQuantifier::new((i.lower() - 0.05).max(0.0), i.lower(), i.upper(), (i.upper() + 0.05).min(1.0))
                .unwrap()
        };
        let r = pattern1_fuzzy(&students().map(widen)).unwrap();
        assert!(close(&r.kernel(), 0.51, 1.0, 1e-9));
        assert!(close(&r.support(), 0.2, 1.0, 1e-9), "{r}");
    }

    #[test]
    fn mixed_kinds() {
        let input = PatternIInput {
            q1: QuantifierKind::Imprecise(iv(0.85, 0.95)),
            q1_conv: QuantifierKind::Imprecise(iv(0.25, 0.35)),
            q2: QuantifierKind::Imprecise(iv(0.9, 1.0)),
            q2_conv: QuantifierKind::Imprecise(iv(0.6, 0.8)),
        };
        assert!(matches!(pattern1(&input).unwrap(), QuantifierKind::Imprecise(i) if close(&i, 0.51, 1.0, 1e-9)));
        let precise = input.map(|_| QuantifierKind::Precise(1.0));
        assert_eq!(pattern1(&precise).unwrap(), QuantifierKind::Precise(1.0));
    }

    #[test]
    fn pattern3_children_example() {
        let premises = [
            SlotPremise { subject: AtomSet::C, predicate: AtomSet::A, bounds: iv(0.05, 0.1) },
            SlotPremise { subject: AtomSet::C, predicate: AtomSet::B, bounds: iv(0.15, 0.2) },
        ];
        let r = pattern23_bounds(IntersectionPattern::III, Version::Particular, &premises, 60).unwrap();
        assert_eq!((r.lower(), r.upper()), (0.0, 0.1));
    }

    #[test]
    fn pattern3_full_inclusion() {
        let premises = [
            SlotPremise { subject: AtomSet::C, predicate: AtomSet::A, bounds: Interval::ONE },
            SlotPremise { subject: AtomSet::C, predicate: AtomSet::B, bounds: Interval::ONE },
        ];
        let r = pattern23_bounds(IntersectionPattern::III, Version::Particular, &premises, 12).unwrap();
        assert_eq!((r.lower(), r.upper()), (1.0, 1.0));
    }

    #[test]
    fn pattern2_inclusion_chain() {
        let premises = [
            SlotPremise { subject: AtomSet::A, predicate: AtomSet::B, bounds: Interval::ONE },
            SlotPremise { subject: AtomSet::B, predicate: AtomSet::A, bounds: iv(0.2, 0.8) },
            SlotPremise { subject: AtomSet::B, predicate: AtomSet::C, bounds: Interval::ONE },
            SlotPremise { subject: AtomSet::A, predicate: AtomSet::C, bounds: Interval::UNIT },
        ];
        let r = pattern23_bounds(IntersectionPattern::II, Version::Particular, &premises, 12).unwrap();
        assert_eq!((r.lower(), r.upper()), (1.0, 1.0));
    }

    #[test]
    fn pattern23_missing_slot() {
        let premises = [SlotPremise { subject: AtomSet::C, predicate: AtomSet::A, bounds: iv(0.05, 0.1) }];
        assert!(matches!(
            pattern23_bounds(IntersectionPattern::III, Version::Particular, &premises, 10),
            Err(DuboisError::Scheme(_))
        ));
    }

    #[test]
    fn version_strings() {
        assert_eq!("General".parse::<Version>().unwrap(), Version::General);
        assert_eq!(Version::Particular.to_string(), "particular");
        assert!("partial".parse::<Version>().is_err());
    }
}
