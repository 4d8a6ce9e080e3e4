//! Fuzzy syllogistic patterns over alpha-cut quantifiers, and ΣCount
//! evaluation of quantified statements over fuzzy sets.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::dsl::{QuantifierTerm, Scale, Statement, Syllogism};
use crate::fuzzy_number::{AlphaCutNumber, BoundMode, BoundedQuantifier, FuzzyError};
use crate::interval::{Interval, QuantifierKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZadehError {
    #[error("the chaining constraint `all {0}` is neither verified nor assumed")]
    ConstraintViolated(String),
    #[error("a point result for antecedent disjunction needs the mix ratio |A| / (|A| + |B|)")]
    MissingMixRatio,
    #[error("mix ratio {0} is outside [0, 1]")]
    InvalidMix(f64),
    #[error("subject `{0}` has zero scalar cardinality")]
    EmptySubject(String),
    #[error("reversing `{0}` needs a symmetric quantifier")]
    NonSymmetricReversal(String),
    #[error("fuzzy sets are over different universes")]
    UniverseMismatch,
    #[error("fuzzy data: {0}")]
    Data(String),
    #[error("premises do not fit the scheme: {0}")]
    Scheme(String),
    #[error(transparent)]
    Fuzzy(#[from] FuzzyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Connective {
    And,
    Or,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZadehPattern {
    /// Q1 As are Bs (all Bs are As), Q2 Bs are Cs: Q As are Cs.
    Mc,
    /// Q1 Bs are As, Q2 Bs are Cs: Q As are Cs.
    Mpr,
    /// Q1 As are Bs, Q2 As and Bs are Cs: Q As are Bs and Cs.
    IntersectionProduct,
    /// Q1 As are Cs, Q2 Bs are Cs: Q As and/or Bs are Cs.
    AntecedentCd(Connective),
    /// Q1 As are Bs, Q2 As are Cs: Q As are Bs and/or Cs.
    ConsequentCd(Connective),
}

/// Whether a combination should produce a range or a single value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Resolution {
    Range,
    /// A point; antecedent disjunction needs the weight `|A| / (|A| + |B|)`.
    Point {
        mix: Option<f64>,
    },
}

/// A pattern's result and an optional note on how far to trust it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Combined {
    pub value: BoundedQuantifier,
    pub note: Option<String>,
}

/// `Q >= Q1 ⊗ Q2`, valid only when every B is an A.
pub fn mc_conclude(
    q1: &AlphaCutNumber,
    q2: &AlphaCutNumber,
    constraint_ok: bool,
) -> Result<BoundedQuantifier, ZadehError> {
    if !constraint_ok {
        return Err(ZadehError::ConstraintViolated("Bs are As".into()));
    }
    Ok(BoundedQuantifier::at_least(q1.mul(q2)?))
}

/// `Q >= 0 ∨ (Q1 ⊕ Q2 ⊖ 1)`, with `Q1` the quantifier of "Bs are As".
pub fn mpr_conclude(q1: &AlphaCutNumber, q2: &AlphaCutNumber) -> Result<BoundedQuantifier, ZadehError> {
    let one = AlphaCutNumber::crisp(1.0, q1.resolution())?;
    Ok(BoundedQuantifier::at_least(q1.add(q2)?.sub(&one)?.clamp_floor(0.0)?))
}

fn zip_cuts(
    q1: &AlphaCutNumber,
    q2: &AlphaCutNumber,
    f: impl Fn(&Interval, &Interval) -> Interval,
) -> Result<AlphaCutNumber, ZadehError> {
    Ok(q1.zip_with(q2, f)?)
}

/// Closed cut from bounds that are ordered up to rounding.
fn closed(l: f64, u: f64) -> Interval {
    let (l, u) = (l.clamp(0.0, 1.0), u.clamp(0.0, 1.0));
    debug_assert!(l <= u + crate::interval::TOLERANCE, "bounds out of order: {l} > {u}");
    Interval::closed(l.min(u), u).expect("ordered bounds")
}

/// The remaining patterns, with bounds that hold in every crisp model:
///
/// * intersection/product: `|A∩B∩C| / |A| = q1 q2` exactly;
/// * consequent conjunction: `[max(0, q1 + q2 - 1), min(q1, q2)]`;
/// * consequent disjunction: `[max(q1, q2), min(1, q1 + q2)]`;
/// * antecedent disjunction: `w q1 + (1 - w) q2` for disjoint As and Bs with
///   weight `w = |A| / (|A| + |B|)`, hence the hull of `q1`, `q2` when `w`
///   is unknown;
/// * antecedent conjunction: nothing about `A∩B` follows, so `[0, 1]`.
pub fn combine(
    pattern: ZadehPattern,
    q1: &AlphaCutNumber,
    q2: &AlphaCutNumber,
    resolution: Resolution,
) -> Result<Combined, ZadehError> {
    let res = q1.resolution();
    let out = |core: AlphaCutNumber, note: Option<&str>| Combined {
        value: BoundedQuantifier::exact(core),
        note: note.map(str::to_string),
    };
    match pattern {
        ZadehPattern::Mc => Ok(Combined { value: mc_conclude(q1, q2, true)?, note: None }),
        ZadehPattern::Mpr => Ok(Combined { value: mpr_conclude(q1, q2)?, note: None }),
        ZadehPattern::IntersectionProduct => Ok(out(q1.mul(q2)?, None)),
        ZadehPattern::ConsequentCd(Connective::And) => Ok(out(
            zip_cuts(q1, q2, |a, b| closed((a.lower() + b.lower() - 1.0).max(0.0), a.upper().min(b.upper())))?,
            None,
        )),
        ZadehPattern::ConsequentCd(Connective::Or) => {
            Ok(out(zip_cuts(q1, q2, |a, b| closed(a.lower().max(b.lower()), (a.upper() + b.upper()).min(1.0)))?, None))
        }
        ZadehPattern::AntecedentCd(Connective::Or) => {
            let note = "assumes the two subjects are disjoint";
            match resolution {
                Resolution::Range => Ok(out(
                    zip_cuts(q1, q2, |a, b| closed(a.lower().min(b.lower()), a.upper().max(b.upper())))?,
                    Some(note),
                )),
                Resolution::Point { mix: None } => Err(ZadehError::MissingMixRatio),
                Resolution::Point { mix: Some(w) } => {
                    if !(0.0..=1.0).contains(&w) {
                        return Err(ZadehError::InvalidMix(w));
                    }
                    let core = zip_cuts(q1, q2, |a, b| a.scale(w).add(&b.scale(1.0 - w), true))?;
                    Ok(out(core, Some(note)))
                }
            }
        }
        ZadehPattern::AntecedentCd(Connective::And) => {
            if matches!(resolution, Resolution::Point { .. }) {
                return Err(ZadehError::MissingMixRatio);
            }
            Ok(out(
                AlphaCutNumber::from_interval(Interval::UNIT, res)?,
                Some("vacuous: the premises say nothing about the common part of the subjects"),
            ))
        }
    }
}

/// Membership degrees over a shared universe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FuzzySet {
    pub universe: Vec<String>,
    pub membership: Vec<f64>,
}

impl FuzzySet {
    pub fn new(universe: Vec<String>, membership: Vec<f64>) -> Result<Self, ZadehError> {
        if universe.len() != membership.len() {
            return Err(ZadehError::Data(format!(
                "{} elements but {} membership degrees",
                universe.len(),
                membership.len()
            )));
        }
        if let Some(m) = membership.iter().find(|m| !(0.0..=1.0).contains(*m)) {
            return Err(ZadehError::Data(format!("membership degree {m} is outside [0, 1]")));
        }
        let mut seen = std::collections::BTreeSet::new();
        if let Some(dup) = universe.iter().find(|u| !seen.insert(u.as_str())) {
            return Err(ZadehError::Data(format!("duplicate element `{dup}`")));
        }
        Ok(FuzzySet { universe, membership })
    }

    /// Crisp set over unnamed elements `0, 1, ...`.
    pub fn from_degrees(membership: Vec<f64>) -> Result<Self, ZadehError> {
        let universe = (0..membership.len()).map(|i| i.to_string()).collect();
        FuzzySet::new(universe, membership)
    }
}

/// Intersection operator for ΣCount of a conjunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TNorm {
    #[default]
    Min,
    Product,
}

impl TNorm {
    pub fn apply(self, a: f64, b: f64) -> f64 {
        match self {
            TNorm::Min => a.min(b),
            TNorm::Product => a * b,
        }
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TNorm::Min => "min",
            TNorm::Product => "product",
        })
    }
}

impl FromStr for TNorm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "min" => Ok(TNorm::Min),
            "product" => Ok(TNorm::Product),
            other => Err(format!("unknown t-norm `{other}` (expected min or product)")),
        }
    }
}

/// Scalar cardinality: the sum of membership degrees.
pub fn sigma_count(s: &FuzzySet) -> f64 {
    s.membership.iter().sum()
}

/// Truth degree of `Q subject are predicate`.
pub fn statement_truth(
    q: &QuantifierKind,
    scale: Scale,
    subject: &FuzzySet,
    predicate: &FuzzySet,
    tnorm: TNorm,
) -> Result<f64, ZadehError> {
    if subject.universe != predicate.universe {
        return Err(ZadehError::UniverseMismatch);
    }
    let both: f64 = subject.membership.iter().zip(&predicate.membership).map(|(a, b)| tnorm.apply(*a, *b)).sum();
    match scale {
        Scale::Absolute => Ok(q.membership(both)),
        Scale::Proportional => {
            let total = sigma_count(subject);
            if total <= 0.0 {
                return Err(ZadehError::EmptySubject(String::new()));
            }
            Ok(q.membership(both / total))
        }
    }
}

/// Pointwise `μ_B <= μ_A`.
pub fn check_inclusion(b: &FuzzySet, a: &FuzzySet) -> Result<bool, ZadehError> {
    if a.universe != b.universe {
        return Err(ZadehError::UniverseMismatch);
    }
    Ok(b.membership.iter().zip(&a.membership).all(|(x, y)| x <= y))
}

/// Named fuzzy sets over one universe, read from
/// `{"universe": ["u1", ...], "sets": {"students": [1, 0.5, ...], ...}}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FuzzyData {
    pub universe: Vec<String>,
    pub sets: BTreeMap<String, FuzzySet>,
}

impl FuzzyData {
    pub fn from_json(text: &str) -> Result<Self, ZadehError> {
        let v: Value = serde_json::from_str(text).map_err(|e| ZadehError::Data(e.to_string()))?;
        let universe: Vec<String> = v
            .get("universe")
            .and_then(Value::as_array)
            .ok_or_else(|| ZadehError::Data("missing `universe` array".into()))?
            .iter()
            .map(|u| match u {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                other => Err(ZadehError::Data(format!("bad element {other}"))),
            })
            .collect::<Result<_, _>>()?;
        let sets =
            v.get("sets").and_then(Value::as_object).ok_or_else(|| ZadehError::Data("missing `sets` object".into()))?;
        let mut out = FuzzyData { universe: universe.clone(), sets: BTreeMap::new() };
        for (name, degrees) in sets {
            let degrees: Vec<f64> = degrees
                .as_array()
                .ok_or_else(|| ZadehError::Data(format!("set `{name}` must be an array")))?
                .iter()
                .map(|d| d.as_f64().ok_or_else(|| ZadehError::Data(format!("set `{name}`: non-numeric degree"))))
                .collect::<Result<_, _>>()?;
            let set =
                FuzzySet::new(universe.clone(), degrees).map_err(|e| ZadehError::Data(format!("set `{name}`: {e}")))?;
            out.sets.insert(name.clone(), set);
        }
        Ok(out)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ZadehError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ZadehError::Data(format!("{}: {e}", path.display())))?;
        FuzzyData::from_json(&text)
    }

    pub fn get(&self, name: &str) -> Result<&FuzzySet, ZadehError> {
        self.sets.get(name).ok_or_else(|| ZadehError::Data(format!("no fuzzy set named `{name}`")))
    }

    /// Truth degree of a parsed statement; named quantifiers carry their scale.
    pub fn evaluate(&self, statement: &Statement, tnorm: TNorm) -> Result<f64, ZadehError> {
        let (kind, scale) = match &statement.quantifier {
            QuantifierTerm::Literal(k) => (*k, Scale::Proportional),
            QuantifierTerm::Named { entry, .. } => (entry.kind, entry.scale),
            QuantifierTerm::Derived(label) => {
                return Err(ZadehError::Scheme(format!("cannot evaluate derived quantifier `{label}`")))
            }
        };
        let subject = self.get(&statement.subject)?;
        let predicate = self.get(&statement.predicate)?;
        statement_truth(&kind, scale, subject, predicate, tnorm).map_err(|e| match e {
            ZadehError::EmptySubject(_) => ZadehError::EmptySubject(statement.subject.clone()),
            other => other,
        })
    }
}

/// Alpha-cut form of any quantifier.
pub fn alpha_cuts(kind: &QuantifierKind, resolution: usize) -> Result<AlphaCutNumber, ZadehError> {
    Ok(match kind {
        QuantifierKind::Fuzzy(t) => AlphaCutNumber::from_trapezoid(t, resolution)?,
        crisp => AlphaCutNumber::from_interval(crisp.interval().expect("crisp quantifier"), resolution)?,
    })
}

/// Options for [`infer_zadeh`].
#[derive(Debug, Clone, PartialEq)]
pub struct ZadehOptions {
    pub resolution: usize,
    /// Take "all Bs are As" as given for chaining.
    pub assume_inclusion: bool,
    /// Fuzzy sets to verify "all Bs are As" against.
    pub data: Option<FuzzyData>,
    pub mix: Option<f64>,
    pub point: bool,
}

impl Default for ZadehOptions {
    fn default() -> Self {
        ZadehOptions {
            resolution: crate::fuzzy_number::DEFAULT_RESOLUTION,
            assume_inclusion: false,
            data: None,
            mix: None,
            point: false,
        }
    }
}

/// A computed conclusion: the statement to print and its value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZadehConclusion {
    pub statement: Statement,
    pub value: BoundedQuantifier,
    pub note: Option<String>,
}

fn kind_of(s: &Statement) -> Result<QuantifierKind, ZadehError> {
    s.quantifier.kind().ok_or_else(|| ZadehError::Scheme(format!("premise `{s}` has no numeric quantifier")))
}

/// The crisp interval a result denotes when every level carries the same cut.
fn crisp_value(value: &BoundedQuantifier) -> Option<QuantifierKind> {
    let first = value.core.levels()[0].cut;
    if !value.core.levels().iter().all(|l| l.cut.approx_eq(&first, 1e-12)) {
        return None;
    }
    let cut = Interval::closed(first.lower(), first.upper()).ok()?;
    Some(if cut.is_point() { QuantifierKind::Precise(cut.lower()) } else { QuantifierKind::Imprecise(cut) })
}

fn symbolic_label(pattern: ZadehPattern, l1: &str, l2: &str) -> String {
    match pattern {
        ZadehPattern::Mc | ZadehPattern::IntersectionProduct => format!("{l1}⊗{l2}"),
        ZadehPattern::Mpr if l1 == l2 => format!("0 ∨ (2 {l1} ⊖ 1)"),
        ZadehPattern::Mpr => format!("0 ∨ ({l1} ⊕ {l2} ⊖ 1)"),
        ZadehPattern::ConsequentCd(Connective::And) => format!("0 ∨ ({l1} ⊕ {l2} ⊖ 1) .. {l1} ∧ {l2}"),
        ZadehPattern::ConsequentCd(Connective::Or) => format!("{l1} ∨ {l2} .. 1 ∧ ({l1} ⊕ {l2})"),
        ZadehPattern::AntecedentCd(Connective::Or) => format!("{l1} ∧ {l2} .. {l1} ∨ {l2}"),
        ZadehPattern::AntecedentCd(Connective::And) => "[0, 1]".to_string(),
    }
}

/// Runs a pattern on a two-premise file.
pub fn infer_zadeh(
    syllogism: &Syllogism,
    pattern: ZadehPattern,
    options: &ZadehOptions,
) -> Result<ZadehConclusion, ZadehError> {
    let p = &syllogism.premises;
    if p.len() != 2 {
        return Err(ZadehError::Scheme(format!("takes 2 premises, found {}", p.len())));
    }
    let (first, second) = (&p[0], &p[1]);
    let mut note = None;
    let (subject, predicate) = match pattern {
        ZadehPattern::Mc => {
            if first.predicate != second.subject {
                return Err(ZadehError::Scheme("the first premise's predicate must be the second's subject".into()));
            }
            let verified = match &options.data {
                Some(data) => check_inclusion(data.get(&first.predicate)?, data.get(&first.subject)?)?,
                None => false,
            };
            if !(verified || options.assume_inclusion) {
                return Err(ZadehError::ConstraintViolated(format!("{} are {}", first.predicate, first.subject)));
            }
            (first.subject.clone(), second.predicate.clone())
        }
        ZadehPattern::Mpr => {
            if first.subject == second.subject {
                (first.predicate.clone(), second.predicate.clone())
            } else if first.predicate == second.subject {
                if !first.quantifier.is_symmetric() {
                    return Err(ZadehError::NonSymmetricReversal(first.to_string()));
                }
                note = Some(format!("first premise reversed: {} are {}", first.predicate, first.subject));
                (first.subject.clone(), second.predicate.clone())
            } else {
                return Err(ZadehError::Scheme("the premises must share the subject of the second".into()));
            }
        }
        ZadehPattern::IntersectionProduct => {
            (first.subject.clone(), format!("{} and {}", first.predicate, second.predicate))
        }
        ZadehPattern::AntecedentCd(c) => {
            if first.predicate != second.predicate {
                return Err(ZadehError::Scheme("both premises must have the same predicate".into()));
            }
            let word = if c == Connective::And { "and" } else { "or" };
            (format!("{} {word} {}", first.subject, second.subject), first.predicate.clone())
        }
        ZadehPattern::ConsequentCd(c) => {
            if first.subject != second.subject {
                return Err(ZadehError::Scheme("both premises must have the same subject".into()));
            }
            let word = if c == Connective::And { "and" } else { "or" };
            (first.subject.clone(), format!("{} {word} {}", first.predicate, second.predicate))
        }
    };
    if subject == predicate {
        return Err(ZadehError::Scheme("conclusion would relate a term to itself".into()));
    }
    let q1 = alpha_cuts(&kind_of(first)?, options.resolution)?;
    let q2 = alpha_cuts(&kind_of(second)?, options.resolution)?;
    let resolution = if options.point { Resolution::Point { mix: options.mix } } else { Resolution::Range };
    let combined = combine(pattern, &q1, &q2, resolution)?;
    let quantifier = match crisp_value(&combined.value) {
        Some(kind) => QuantifierTerm::Literal(kind),
        None => QuantifierTerm::Derived(symbolic_label(pattern, &first.quantifier.label(), &second.quantifier.label())),
    };
    let mut statement = Statement::new(quantifier, subject, predicate);
    statement.at_least = combined.value.mode == BoundMode::AtLeast;
    let note = match (note, combined.note) {
        (Some(a), Some(b)) => Some(format!("{a}; {b}")),
        (a, b) => a.or(b),
    };
    Ok(ZadehConclusion { statement, value: combined.value, note })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy_number::{TrapezoidalQuantifier, DEFAULT_RESOLUTION};

    fn crisp(v: f64) -> AlphaCutNumber {
        AlphaCutNumber::crisp(v, DEFAULT_RESOLUTION).unwrap()
    }

    fn most() -> AlphaCutNumber {
        AlphaCutNumber::from_trapezoid(&TrapezoidalQuantifier::new(0.7, 0.8, 0.9, 1.0).unwrap(), DEFAULT_RESOLUTION)
            .unwrap()
    }

    fn close(a: Interval, l: f64, u: f64) -> bool {
        (a.lower() - l).abs() < 1e-12 && (a.upper() - u).abs() < 1e-12
    }

    #[test]
    fn chaining_examples() {
        let r = mc_conclude(&most(), &most(), true).unwrap();
        assert_eq!(r.mode, BoundMode::AtLeast);
        assert!(close(r.core.support(), 0.49, 1.0));
        assert!(close(r.core.kernel(), 0.64, 0.81));
        let r = mc_conclude(&crisp(1.0), &crisp(1.0), true).unwrap();
        assert!(close(r.defuzz_bounds().0, 1.0, 1.0));
        assert_eq!(mc_conclude(&most(), &most(), false), Err(ZadehError::ConstraintViolated("Bs are As".into())));
        let r = mc_conclude(&crisp(0.6), &crisp(0.7), true).unwrap();
        assert!((r.core.support().lower() - 0.42).abs() < 1e-12);
    }

    #[test]
    fn mpr_examples() {
        let r = mpr_conclude(&crisp(0.6), &crisp(0.7)).unwrap();
        assert!((r.core.support().lower() - 0.3).abs() < 1e-12);
        assert!(close(r.defuzz_bounds().0, 0.3, 1.0));
        let r = mpr_conclude(&crisp(0.2), &crisp(0.3)).unwrap();
        assert_eq!(r.core.support().lower(), 0.0);
        let r = mpr_conclude(&most(), &most()).unwrap();
        assert!(close(r.core.support(), 0.4, 1.0));
        assert!(close(r.core.kernel(), 0.6, 0.8));
    }

    #[test]
    fn combine_examples() {
        let and =
            combine(ZadehPattern::ConsequentCd(Connective::And), &crisp(0.9), &crisp(0.8), Resolution::Range).unwrap();
        assert!((and.value.core.support().lower() - 0.7).abs() < 1e-12);
        assert!((and.value.core.support().upper() - 0.8).abs() < 1e-12);
        let or =
            combine(ZadehPattern::ConsequentCd(Connective::Or), &crisp(0.0), &crisp(0.0), Resolution::Range).unwrap();
        assert!(close(or.value.core.support(), 0.0, 0.0));
        let vac =
            combine(ZadehPattern::AntecedentCd(Connective::And), &crisp(1.0), &crisp(1.0), Resolution::Range).unwrap();
        assert!(close(vac.value.core.support(), 0.0, 1.0));
        assert!(vac.note.is_some());
        let hull =
            combine(ZadehPattern::AntecedentCd(Connective::Or), &crisp(0.3), &crisp(0.6), Resolution::Range).unwrap();
        assert!(close(hull.value.core.support(), 0.3, 0.6));
        assert_eq!(
            combine(
                ZadehPattern::AntecedentCd(Connective::Or),
                &crisp(0.3),
                &crisp(0.6),
                Resolution::Point { mix: None }
            ),
            Err(ZadehError::MissingMixRatio)
        );
        let point = combine(
            ZadehPattern::AntecedentCd(Connective::Or),
            &crisp(0.3),
            &crisp(0.6),
            Resolution::Point { mix: Some(0.5) },
        )
        .unwrap();
        assert!(close(point.value.core.support(), 0.45, 0.45));
        let and =
            combine(ZadehPattern::ConsequentCd(Connective::And), &crisp(0.1), &crisp(1.0), Resolution::Range).unwrap();
        assert!(close(and.value.defuzz_bounds().0, 0.1, 0.1));
        let prod = combine(ZadehPattern::IntersectionProduct, &crisp(0.5), &crisp(0.4), Resolution::Range).unwrap();
        assert_eq!(prod.value.mode, BoundMode::Exact);
        assert!(close(prod.value.core.support(), 0.2, 0.2));
    }

    #[test]
    fn sigma_count_and_truth() {
        let s = FuzzySet::from_degrees(vec![0.5, 0.5, 1.0]).unwrap();
        assert_eq!(sigma_count(&s), 2.0);
        let all = QuantifierKind::Classical(crate::aristotle::Letter::A);
        let sub = FuzzySet::from_degrees(vec![1.0, 1.0, 0.0]).unwrap();
        let sup = FuzzySet::from_degrees(vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(statement_truth(&all, Scale::Proportional, &sub, &sup, TNorm::Min).unwrap(), 1.0);
        let most = QuantifierKind::Fuzzy(TrapezoidalQuantifier::new(0.7, 0.8, 0.9, 1.0).unwrap());
        let subject = FuzzySet::from_degrees(vec![1.0; 4]).unwrap();
        let predicate = FuzzySet::from_degrees(vec![1.0, 1.0, 0.5, 0.0]).unwrap();
        assert_eq!(statement_truth(&most, Scale::Proportional, &subject, &predicate, TNorm::Min).unwrap(), 0.0);
        let empty = FuzzySet::from_degrees(vec![0.0; 4]).unwrap();
        assert!(matches!(
            statement_truth(&most, Scale::Proportional, &empty, &predicate, TNorm::Min),
            Err(ZadehError::EmptySubject(_))
        ));
        let around_two = QuantifierKind::Fuzzy(TrapezoidalQuantifier::new(1.0, 2.0, 3.0, 4.0).unwrap());
        assert_eq!(statement_truth(&around_two, Scale::Absolute, &subject, &predicate, TNorm::Min).unwrap(), 1.0);
        let half = FuzzySet::from_degrees(vec![0.5; 4]).unwrap();
        let min = statement_truth(&QuantifierKind::Precise(0.5), Scale::Absolute, &half, &half, TNorm::Min).unwrap();
        assert_eq!(min, 0.0);
        let counts = |t: TNorm| half.membership.iter().map(|m| t.apply(*m, *m)).sum::<f64>();
        assert_eq!((counts(TNorm::Min), counts(TNorm::Product)), (2.0, 1.0));
    }

    #[test]
    fn inclusion() {
        let b = FuzzySet::from_degrees(vec![0.2, 0.5]).unwrap();
        let a = FuzzySet::from_degrees(vec![0.3, 0.5]).unwrap();
        assert!(check_inclusion(&b, &a).unwrap());
        let b = FuzzySet::from_degrees(vec![0.6]).unwrap();
        let a = FuzzySet::from_degrees(vec![0.5]).unwrap();
        assert!(!check_inclusion(&b, &a).unwrap());
        assert!(check_inclusion(&a, &a).unwrap());
        let other = FuzzySet::from_degrees(vec![0.5, 0.5]).unwrap();
        assert_eq!(check_inclusion(&a, &other), Err(ZadehError::UniverseMismatch));
    }

    #[test]
    fn fuzzy_set_validation() {
        assert!(FuzzySet::from_degrees(vec![1.5]).is_err());
        assert!(FuzzySet::new(vec!["a".into(), "a".into()], vec![0.1, 0.2]).is_err());
        assert!(FuzzySet::new(vec!["a".into()], vec![0.1, 0.2]).is_err());
    }

    #[test]
    fn data_file() {
        let data = FuzzyData::from_json(
            r#"{"universe": ["u1", "u2", "u3", "u4"],
                "sets": {"students": [1, 1, 1, 1], "young": [1, 1, 0.5, 0]}}"#,
        )
        .unwrap();
        let s = crate::dsl::parse_statement("[0.6, 0.7] students are young", &Default::default()).unwrap();
        assert_eq!(data.evaluate(&s, TNorm::Min).unwrap(), 1.0);
        let s = crate::dsl::parse_statement("some students are teachers", &Default::default()).unwrap();
        assert!(data.evaluate(&s, TNorm::Min).is_err());
        assert!(FuzzyData::from_json(r#"{"universe": ["a"], "sets": {"x": [0.1, 0.2]}}"#).is_err());
    }
}
