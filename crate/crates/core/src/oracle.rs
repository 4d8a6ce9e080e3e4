//! Exhaustive finite-model ground truth.
//!
//! A model of three terms `A`, `B`, `C` is the vector of cardinalities of
//! the eight Venn atoms. Mood validity is decided by enumerating every model
//! up to a size bound; attained proportion ranges are computed by a
//! branch-and-bound search over the atoms that matter, with every comparison
//! done in exact integer arithmetic.

use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::aristotle::{Letter, Mood, Role};
use crate::interval::Interval;

pub type Rational = Ratio<i128>;

/// Default model-size bound for mood checking. Any counterexample for the
/// classical letters needs at most one element per atom, so 8 is conclusive.
pub const MOOD_BUDGET: u32 = 8;
/// Default model-size bound for attained ranges.
pub const RANGE_BUDGET: u32 = 60;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("no model with at most {0} elements satisfies the constraints")]
    Unsatisfiable(u32),
    #[error("the target's denominator set is empty in every admissible model")]
    UndefinedProportion,
    #[error("bad set expression `{0}`")]
    BadSetExpr(String),
    #[error("bound {0} cannot be represented as an exact decimal")]
    BoundPrecision(f64),
    #[error("constraint bounds {0} lie outside [0, 1]")]
    BoundsOutsideUnit(String),
    #[error("constraint file: {0}")]
    Format(String),
}

/// A set of Venn atoms. Atom `i` has `A` membership in bit 2, `B` in bit 1
/// and `C` in bit 0 of `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AtomSet(u8);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);
    pub const ALL: AtomSet = AtomSet(0xff);
    pub const A: AtomSet = AtomSet(0b1111_0000);
    pub const B: AtomSet = AtomSet(0b1100_1100);
    pub const C: AtomSet = AtomSet(0b1010_1010);

    /// The set of atoms whose bits are set in `bits`.
    pub fn from_bits(bits: u8) -> AtomSet {
        AtomSet(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn and(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    pub fn or(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn complement(self) -> AtomSet {
        AtomSet(!self.0)
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 & (1 << atom) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// The term set playing `role` when minor = A, middle = B, major = C.
    pub fn for_role(role: Role) -> AtomSet {
        match role {
            Role::Minor => AtomSet::A,
            Role::Middle => AtomSet::B,
            Role::Major => AtomSet::C,
        }
    }

    /// Parses `A`, `B`, `C` combined with `&`, `|`, `!` and parentheses
    /// (`∩`, `∪`, `¬` also accepted).
    pub fn parse(expr: &str) -> Result<AtomSet, OracleError> {
        let chars: Vec<char> = expr.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let set = parse_union(&chars, &mut pos).ok_or_else(|| OracleError::BadSetExpr(expr.to_string()))?;
        if pos != chars.len() {
            return Err(OracleError::BadSetExpr(expr.to_string()));
        }
        Ok(set)
    }
}

fn parse_union(c: &[char], pos: &mut usize) -> Option<AtomSet> {
    let mut acc = parse_inter(c, pos)?;
    while matches!(c.get(*pos), Some('|' | '∪')) {
        *pos += 1;
        acc = acc.or(parse_inter(c, pos)?);
    }
    Some(acc)
}

fn parse_inter(c: &[char], pos: &mut usize) -> Option<AtomSet> {
    let mut acc = parse_factor(c, pos)?;
    while matches!(c.get(*pos), Some('&' | '∩')) {
        *pos += 1;
        acc = acc.and(parse_factor(c, pos)?);
    }
    Some(acc)
}

fn parse_factor(c: &[char], pos: &mut usize) -> Option<AtomSet> {
    let ch = *c.get(*pos)?;
    *pos += 1;
    match ch {
        '!' | '¬' => Some(parse_factor(c, pos)?.complement()),
        '(' => {
            let inner = parse_union(c, pos)?;
            (c.get(*pos) == Some(&')')).then(|| {
                *pos += 1;
                inner
            })
        }
        'A' | 'a' => Some(AtomSet::A),
        'B' | 'b' => Some(AtomSet::B),
        'C' | 'c' => Some(AtomSet::C),
        _ => None,
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..8)
            .filter(|&i| self.contains(i))
            .map(|i| format!("a{}{}{}", (i >> 2) & 1, (i >> 1) & 1, i & 1))
            .collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

/// Cardinalities of the eight Venn atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct VennModel {
    pub atoms: [u32; 8],
}

impl VennModel {
    pub fn count(&self, set: AtomSet) -> u64 {
        (0..8).filter(|&i| set.contains(i)).map(|i| u64::from(self.atoms[i])).sum()
    }

    pub fn total(&self) -> u64 {
        self.count(AtomSet::ALL)
    }

    pub fn terms_nonempty(&self) -> bool {
        self.count(AtomSet::A) > 0 && self.count(AtomSet::B) > 0 && self.count(AtomSet::C) > 0
    }

    /// Exact `|num ∩ den| / |den|`, or `None` when the denominator is empty.
    pub fn proportion(&self, numerator: AtomSet, denominator: AtomSet) -> Option<Rational> {
        let den = self.count(denominator);
        (den > 0).then(|| Rational::new(self.count(numerator.and(denominator)) as i128, den as i128))
    }

    /// Truth of a classical statement with the given subject and predicate sets.
    pub fn holds(&self, letter: Letter, subject: AtomSet, predicate: AtomSet) -> bool {
        match letter {
            Letter::A => self.count(subject.and(predicate.complement())) == 0,
            Letter::E => self.count(subject.and(predicate)) == 0,
            Letter::I => self.count(subject.and(predicate)) > 0,
            Letter::O => self.count(subject.and(predicate.complement())) > 0,
        }
    }
}

impl fmt::Display for VennModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            (0..8).map(|i| format!("a{}{}{}={}", (i >> 2) & 1, (i >> 1) & 1, i & 1, self.atoms[i])).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Iterator over all models with at most `total_max` elements, in
/// lexicographic order of the atom vector.
#[derive(Debug, Clone)]
pub struct ModelIter {
    current: [u32; 8],
    sum: u32,
    total_max: u32,
    require_nonempty: bool,
    done: bool,
}

impl ModelIter {
    fn advance(&mut self) -> bool {
        for i in (0..8).rev() {
            if self.sum < self.total_max {
                self.current[i] += 1;
                self.sum += 1;
                return true;
            }
            self.sum -= self.current[i];
            self.current[i] = 0;
        }
        false
    }
}

impl Iterator for ModelIter {
    type Item = VennModel;

    fn next(&mut self) -> Option<VennModel> {
        while !self.done {
            let model = VennModel { atoms: self.current };
            if !self.advance() {
                self.done = true;
            }
            if !self.require_nonempty || model.terms_nonempty() {
                return Some(model);
            }
        }
        None
    }
}

pub fn enumerate_models(total_max: u32, require_nonempty: bool) -> ModelIter {
    ModelIter { current: [0; 8], sum: 0, total_max, require_nonempty, done: false }
}

/// Outcome of checking one mood against every model up to `bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoodCheck {
    pub mood: Mood,
    /// No counterexample among models with at most `bound` elements.
    pub valid: bool,
    pub bound: u32,
    pub counterexample: Option<VennModel>,
}

fn premise_sets(mood: &Mood) -> [(Letter, AtomSet, AtomSet); 3] {
    let (s1, p1) = mood.figure.major_premise();
    let (s2, p2) = mood.figure.minor_premise();
    [
        (mood.major, AtomSet::for_role(s1), AtomSet::for_role(p1)),
        (mood.minor, AtomSet::for_role(s2), AtomSet::for_role(p2)),
        (mood.conclusion, AtomSet::A, AtomSet::C),
    ]
}

fn is_counterexample(sets: &[(Letter, AtomSet, AtomSet); 3], model: &VennModel) -> bool {
    let [p1, p2, c] = sets;
    model.holds(p1.0, p1.1, p1.2) && model.holds(p2.0, p2.1, p2.2) && !model.holds(c.0, c.1, c.2)
}

/// Decides validity under existential import (all three terms nonempty).
/// The returned counterexample is the first one in enumeration order.
pub fn mood_valid(mood: &Mood, total_max: u32) -> MoodCheck {
    let sets = premise_sets(mood);
    let counterexample = enumerate_models(total_max, true).find(|m| is_counterexample(&sets, m));
    MoodCheck { mood: *mood, valid: counterexample.is_none(), bound: total_max, counterexample }
}

/// [`mood_valid`] for many moods in a single pass over the models.
pub fn check_moods(moods: &[Mood], total_max: u32) -> Vec<MoodCheck> {
    let sets: Vec<_> = moods.iter().map(premise_sets).collect();
    let mut found: Vec<Option<VennModel>> = vec![None; moods.len()];
    let mut open = moods.len();
    for model in enumerate_models(total_max, true) {
        if open == 0 {
            break;
        }
        for (slot, s) in found.iter_mut().zip(&sets) {
            if slot.is_none() && is_counterexample(s, &model) {
                *slot = Some(model);
                open -= 1;
            }
        }
    }
    moods
        .iter()
        .zip(found)
        .map(|(mood, counterexample)| MoodCheck {
            mood: *mood,
            valid: counterexample.is_none(),
            bound: total_max,
            counterexample,
        })
        .collect()
}

/// Converts a float to the exact decimal it prints as (`0.35` -> 35/100).
pub fn decimal_rational(x: f64) -> Result<Rational, OracleError> {
    if !x.is_finite() {
        return Err(OracleError::BoundPrecision(x));
    }
    let text = format!("{}", x.abs());
    let (int, frac) = text.split_once('.').unwrap_or((&text, ""));
    let digits = format!("{int}{frac}");
    if digits.len() > 30 {
        return Err(OracleError::BoundPrecision(x));
    }
    let numer: i128 = digits.parse().map_err(|_| OracleError::BoundPrecision(x))?;
    let denom = 10i128.pow(frac.len() as u32);
    let r = Rational::new(numer, denom);
    Ok(if x < 0.0 { -r } else { r })
}

/// Exact interval bounds on a proportion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalBounds {
    pub lower: Rational,
    pub upper: Rational,
    pub lower_open: bool,
    pub upper_open: bool,
}

impl RationalBounds {
    pub fn from_interval(iv: &Interval) -> Result<Self, OracleError> {
        if !iv.is_proportion() {
            return Err(OracleError::BoundsOutsideUnit(iv.to_string()));
        }
        Ok(RationalBounds {
            lower: decimal_rational(iv.lower())?,
            upper: decimal_rational(iv.upper())?,
            lower_open: iv.lower_open(),
            upper_open: iv.upper_open(),
        })
    }

    pub fn point(value: Rational) -> Self {
        RationalBounds { lower: value, upper: value, lower_open: false, upper_open: false }
    }

    fn admits(&self, lo: Frac, hi: Frac) -> bool {
        let above = match hi.cmp_rational(&self.lower) {
            Ordering::Less => false,
            Ordering::Equal => !self.lower_open,
            Ordering::Greater => true,
        };
        let below = match lo.cmp_rational(&self.upper) {
            Ordering::Greater => false,
            Ordering::Equal => !self.upper_open,
            Ordering::Less => true,
        };
        above && below
    }
}

/// `|numerator ∩ denominator| / |denominator|` constrained to `bounds`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProportionConstraint {
    pub numerator: AtomSet,
    pub denominator: AtomSet,
    pub bounds: RationalBounds,
}

impl ProportionConstraint {
    pub fn new(numerator: AtomSet, denominator: AtomSet, bounds: &Interval) -> Result<Self, OracleError> {
        Ok(ProportionConstraint { numerator, denominator, bounds: RationalBounds::from_interval(bounds)? })
    }

    pub fn satisfied_by(&self, model: &VennModel) -> bool {
        let num = model.count(self.numerator.and(self.denominator));
        let den = model.count(self.denominator);
        den > 0 && {
            let f = Frac { n: num, d: den };
            self.bounds.admits(f, f)
        }
    }
}

/// The proportion whose range is sought.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Target {
    pub numerator: AtomSet,
    pub denominator: AtomSet,
}

/// Small exact fraction with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Frac {
    n: u64,
    d: u64,
}

impl Frac {
    fn cmp_frac(&self, other: &Frac) -> Ordering {
        (u128::from(self.n) * u128::from(other.d)).cmp(&(u128::from(other.n) * u128::from(self.d)))
    }

    fn cmp_rational(&self, r: &Rational) -> Ordering {
        (self.n as i128 * r.denom()).cmp(&(r.numer() * self.d as i128))
    }

    fn to_rational(self) -> Rational {
        Rational::new(self.n as i128, self.d as i128)
    }
}

/// Exact minimum and maximum of the target over admissible models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttainedRange {
    pub min: Rational,
    pub max: Rational,
    pub min_witness: VennModel,
    pub max_witness: VennModel,
    pub bound: u32,
}

impl AttainedRange {
    pub fn to_interval(&self) -> Interval {
        let f = |r: &Rational| *r.numer() as f64 / *r.denom() as f64;
        Interval::closed(f(&self.min), f(&self.max)).expect("min <= max")
    }
}

#[derive(Clone, Copy)]
struct Pair {
    num: u8,
    den: u8,
}

struct Search<'a> {
    order: Vec<usize>,
    constraints: Vec<(Pair, &'a RationalBounds)>,
    target: Pair,
    budget: u32,
    counts: [u32; 8],
    best: Option<(Frac, VennModel, Frac, VennModel)>,
    undefined_seen: bool,
}

impl Search<'_> {
    /// Range of `pair` over all completions of the current partial model.
    fn reachable(&self, pair: Pair, unassigned: u8, remaining: u32) -> Option<(Frac, Frac)> {
        let mut n0 = 0u64;
        let mut d0 = 0u64;
        for i in 0..8 {
            if unassigned & (1 << i) == 0 && pair.den & (1 << i) != 0 {
                d0 += u64::from(self.counts[i]);
                if pair.num & (1 << i) != 0 {
                    n0 += u64::from(self.counts[i]);
                }
            }
        }
        let r = u64::from(remaining);
        let grow_num = r > 0 && pair.num & unassigned != 0;
        let grow_den_only = r > 0 && (pair.den & !pair.num) & unassigned != 0;
        if d0 == 0 && !grow_num && !grow_den_only {
            return None;
        }
        let hi = if grow_num {
            Frac { n: n0 + r, d: d0 + r }
        } else if d0 > 0 {
            Frac { n: n0, d: d0 }
        } else {
            Frac { n: 0, d: 1 }
        };
        let lo = if grow_den_only {
            Frac { n: n0, d: d0 + r }
        } else if d0 > 0 {
            Frac { n: n0, d: d0 }
        } else {
            Frac { n: 1, d: 1 }
        };
        Some((lo, hi))
    }

    fn visit(&mut self, depth: usize, remaining: u32) {
        let unassigned: u8 = self.order[depth..].iter().fold(0, |m, &i| m | (1 << i));
        for k in 0..self.constraints.len() {
            let (pair, bounds) = self.constraints[k];
            match self.reachable(pair, unassigned, remaining) {
                Some((lo, hi)) if bounds.admits(lo, hi) => {}
                _ => return,
            }
        }
        let target = self.reachable(self.target, unassigned, remaining);
        match (target, &self.best) {
            (None, _) if self.undefined_seen => return,
            (Some((lo, hi)), Some((bmin, _, bmax, _)))
                if lo.cmp_frac(bmin) != Ordering::Less && hi.cmp_frac(bmax) != Ordering::Greater =>
            {
                return
            }
            _ => {}
        }
        if depth == self.order.len() {
            let model = VennModel { atoms: self.counts };
            match target {
                None => self.undefined_seen = true,
                Some((value, _)) => match &mut self.best {
                    None => self.best = Some((value, model, value, model)),
                    Some((bmin, wmin, bmax, wmax)) => {
                        if value.cmp_frac(bmin) == Ordering::Less {
                            *bmin = value;
                            *wmin = model;
                        }
                        if value.cmp_frac(bmax) == Ordering::Greater {
                            *bmax = value;
                            *wmax = model;
                        }
                    }
                },
            }
            return;
        }
        let atom = self.order[depth];
        for v in 0..=remaining {
            self.counts[atom] = v;
            self.visit(depth + 1, remaining - v);
        }
        self.counts[atom] = 0;
    }
}

/// Tightest `[min, max]` of the target proportion over every model with at
/// most `total_max` elements whose constrained proportions all lie in their
/// bounds (and whose constraint denominators are nonempty).
///
/// Atoms that occur in no constraint and not in the target are held at zero:
/// they change no proportion, and the size bound only gets looser without
/// them.
pub fn attained_range(
    constraints: &[ProportionConstraint],
    target: &Target,
    total_max: u32,
) -> Result<AttainedRange, OracleError> {
    let pair = |num: AtomSet, den: AtomSet| Pair { num: num.and(den).bits(), den: den.bits() };
    let target_pair = pair(target.numerator, target.denominator);
    let compiled: Vec<(Pair, &RationalBounds)> =
        constraints.iter().map(|c| (pair(c.numerator, c.denominator), &c.bounds)).collect();
    let mut usage = [0usize; 8];
    for p in compiled.iter().map(|c| c.0).chain(std::iter::once(target_pair)) {
        for (i, u) in usage.iter_mut().enumerate() {
            if p.den & (1 << i) != 0 {
                *u += if p.num & (1 << i) != 0 { 2 } else { 1 };
            }
        }
    }
    let mut order: Vec<usize> = (0..8).filter(|&i| usage[i] > 0).collect();
    order.sort_by(|&a, &b| usage[b].cmp(&usage[a]).then(a.cmp(&b)));
    let mut search = Search {
        order,
        constraints: compiled,
        target: target_pair,
        budget: total_max,
        counts: [0; 8],
        best: None,
        undefined_seen: false,
    };
    search.visit(0, search.budget);
    match search.best {
        Some((min, min_witness, max, max_witness)) => Ok(AttainedRange {
            min: min.to_rational(),
            max: max.to_rational(),
            min_witness,
            max_witness,
            bound: total_max,
        }),
        None if search.undefined_seen => Err(OracleError::UndefinedProportion),
        None => Err(OracleError::Unsatisfiable(total_max)),
    }
}

/// Brute-force twin of [`attained_range`]: plain enumeration, no pruning.
/// Only practical for small bounds; used to cross-check the search.
pub fn attained_range_exhaustive(
    constraints: &[ProportionConstraint],
    target: &Target,
    total_max: u32,
) -> Result<(Rational, Rational), OracleError> {
    let mut best: Option<(Rational, Rational)> = None;
    let mut undefined = false;
    for model in enumerate_models(total_max, false) {
        if !constraints.iter().all(|c| c.satisfied_by(&model)) {
            continue;
        }
        match model.proportion(target.numerator, target.denominator) {
            None => undefined = true,
            Some(v) => {
                best = Some(match best {
                    None => (v, v),
                    Some((lo, hi)) => (lo.min(v), hi.max(v)),
                })
            }
        }
    }
    match best {
        Some(b) => Ok(b),
        None if undefined => Err(OracleError::UndefinedProportion),
        None => Err(OracleError::Unsatisfiable(total_max)),
    }
}

/// A constraint problem as read from JSON:
///
/// ```json
/// { "max": 60,
///   "constraints": [ {"numerator": "C&A", "denominator": "C", "bounds": "[0.05, 0.1]"} ],
///   "target": {"numerator": "A&B&C", "denominator": "C"} }
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct RangeProblem {
    pub constraints: Vec<ProportionConstraint>,
    pub target: Target,
    pub total_max: Option<u32>,
}

impl RangeProblem {
    pub fn from_json(text: &str) -> Result<Self, OracleError> {
        let fmt_err = |m: &str| OracleError::Format(m.to_string());
        let v: Value = serde_json::from_str(text).map_err(|e| OracleError::Format(e.to_string()))?;
        let set = |v: &Value, key: &str| -> Result<AtomSet, OracleError> {
            let s = v.get(key).and_then(Value::as_str).ok_or_else(|| fmt_err(&format!("missing string `{key}`")))?;
            AtomSet::parse(s)
        };
        let mut constraints = Vec::new();
        if let Some(list) = v.get("constraints") {
            let list = list.as_array().ok_or_else(|| fmt_err("`constraints` must be an array"))?;
            for c in list {
                let bounds = match c.get("bounds") {
                    Some(Value::String(s)) => s.parse::<Interval>().map_err(|e| OracleError::Format(e.to_string()))?,
                    Some(Value::Array(a)) if a.len() == 2 => {
                        let n = |x: &Value| x.as_f64().ok_or_else(|| fmt_err("bounds must be numbers"));
                        Interval::closed(n(&a[0])?, n(&a[1])?).map_err(|e| OracleError::Format(e.to_string()))?
                    }
                    _ => return Err(fmt_err("`bounds` must be a string like \"[0.1, 0.2]\" or [l, u]")),
                };
                constraints.push(ProportionConstraint::new(set(c, "numerator")?, set(c, "denominator")?, &bounds)?);
            }
        }
        let t = v.get("target").ok_or_else(|| fmt_err("missing `target`"))?;
        let target = Target { numerator: set(t, "numerator")?, denominator: set(t, "denominator")? };
        let total_max = match v.get("max") {
            None => None,
            Some(m) => Some(
                m.as_u64()
                    .and_then(|m| u32::try_from(m).ok())
                    .ok_or_else(|| fmt_err("`max` must be a non-negative integer"))?,
            ),
        };
        Ok(RangeProblem { constraints, target, total_max })
    }
}

/// `value` as a rational, exact for values produced by [`VennModel::proportion`].
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        0.0
    } else {
        *r.numer() as f64 / *r.denom() as f64
    }
}
