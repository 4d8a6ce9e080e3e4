//! Which classical moods each fuzzy pattern can reproduce.
//!
//! A mood is compatible with a pattern when its premises are enough to fill
//! the pattern's slots and the conclusion the pattern computes entails the
//! mood's classical conclusion.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::aristotle::{Figure, Letter, Mood, Position, Role};
use crate::dubois::{self, PatternIInput, Version};
use crate::fuzzy_number::{AlphaCutNumber, BoundedQuantifier};
use crate::interval::Interval;
use crate::oracle::{self, AtomSet, VennModel, MOOD_BUDGET};
use crate::zadeh;

/// Every inference pattern the tool knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternId {
    #[serde(rename = "dubois1")]
    DuboisI,
    #[serde(rename = "dubois2")]
    DuboisII,
    #[serde(rename = "dubois3")]
    DuboisIII,
    #[serde(rename = "mc")]
    Mc,
    #[serde(rename = "mpr")]
    Mpr,
    #[serde(rename = "intersection")]
    IntersectionProduct,
    #[serde(rename = "antecedent-and")]
    AntecedentAnd,
    #[serde(rename = "antecedent-or")]
    AntecedentOr,
    #[serde(rename = "consequent-and")]
    ConsequentAnd,
    #[serde(rename = "consequent-or")]
    ConsequentOr,
}

impl PatternId {
    pub const ALL: [PatternId; 10] = [
        PatternId::DuboisI,
        PatternId::DuboisII,
        PatternId::DuboisIII,
        PatternId::Mc,
        PatternId::Mpr,
        PatternId::IntersectionProduct,
        PatternId::AntecedentAnd,
        PatternId::AntecedentOr,
        PatternId::ConsequentAnd,
        PatternId::ConsequentOr,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PatternId::DuboisI => "dubois1",
            PatternId::DuboisII => "dubois2",
            PatternId::DuboisIII => "dubois3",
            PatternId::Mc => "mc",
            PatternId::Mpr => "mpr",
            PatternId::IntersectionProduct => "intersection",
            PatternId::AntecedentAnd => "antecedent-and",
            PatternId::AntecedentOr => "antecedent-or",
            PatternId::ConsequentAnd => "consequent-and",
            PatternId::ConsequentOr => "consequent-or",
        }
    }

    /// Display name used in the compatibility tables.
    pub fn title(self) -> &'static str {
        match self {
            PatternId::DuboisI => "Pattern I",
            PatternId::DuboisII => "Pattern II",
            PatternId::DuboisIII => "Pattern III",
            PatternId::Mc => "MC",
            PatternId::Mpr => "MPR",
            PatternId::IntersectionProduct => "Intersection/product",
            PatternId::AntecedentAnd => "Antecedent conjunction",
            PatternId::AntecedentOr => "Antecedent disjunction",
            PatternId::ConsequentAnd => "Consequent conjunction",
            PatternId::ConsequentOr => "Consequent disjunction",
        }
    }

    /// Allowed premise counts, given the version if known.
    pub fn premise_counts(self, version: Option<Version>) -> &'static [usize] {
        match (self, version) {
            (PatternId::DuboisI, _) => &[4],
            (PatternId::DuboisII, Some(Version::General)) | (PatternId::DuboisIII, Some(Version::General)) => &[6],
            (PatternId::DuboisII, Some(Version::Particular)) => &[4],
            (PatternId::DuboisII, None) => &[4, 6],
            (PatternId::DuboisIII, Some(Version::Particular)) => &[2],
            (PatternId::DuboisIII, None) => &[2, 6],
            _ => &[2],
        }
    }

    /// The fuzzy-arithmetic pattern, for the fuzzy-arithmetic family.
    pub fn zadeh(self) -> Option<zadeh::ZadehPattern> {
        use zadeh::{Connective, ZadehPattern};
        Some(match self {
            PatternId::Mc => ZadehPattern::Mc,
            PatternId::Mpr => ZadehPattern::Mpr,
            PatternId::IntersectionProduct => ZadehPattern::IntersectionProduct,
            PatternId::AntecedentAnd => ZadehPattern::AntecedentCd(Connective::And),
            PatternId::AntecedentOr => ZadehPattern::AntecedentCd(Connective::Or),
            PatternId::ConsequentAnd => ZadehPattern::ConsequentCd(Connective::And),
            PatternId::ConsequentOr => ZadehPattern::ConsequentCd(Connective::Or),
            _ => return None,
        })
    }

    /// Middle-term positions (major premise, minor premise) for the chaining
    /// patterns; `None` for patterns that do not chain through a middle term.
    pub fn middle_positions(self) -> Option<(Position, Position)> {
        match self {
            PatternId::DuboisI | PatternId::Mc | PatternId::Mpr => Some((Position::Subject, Position::Predicate)),
            _ => None,
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PatternId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let wanted = s.trim().to_lowercase();
        PatternId::ALL.into_iter().find(|p| p.as_str() == wanted).ok_or_else(|| {
            let names: Vec<&str> = PatternId::ALL.iter().map(|p| p.as_str()).collect();
            format!("unknown pattern `{}` (expected one of {})", s.trim(), names.join(", "))
        })
    }
}

/// Why a mood is or is not compatible with a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "code", content = "detail", rename_all = "snake_case")]
pub enum Reason {
    Compatible,
    FigureMismatch,
    /// A constraint the pattern needs does not follow from the premises.
    MissingPremise(String),
    NonSymmetricReversal,
    ConclusionNotEntailed,
    /// The pattern's form is not a two-premise chain at all.
    StructurallyExcluded,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Compatible => f.write_str("Compatible"),
            Reason::FigureMismatch => f.write_str("FigureMismatch"),
            Reason::MissingPremise(c) => write!(f, "MissingPremise({c})"),
            Reason::NonSymmetricReversal => f.write_str("NonSymmetricReversal"),
            Reason::ConclusionNotEntailed => f.write_str("ConclusionNotEntailed"),
            Reason::StructurallyExcluded => f.write_str("StructurallyExcluded"),
        }
    }
}

/// Verdict for one pattern and mood.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatEntry {
    pub pattern: PatternId,
    pub mood: Mood,
    pub compatible: bool,
    pub reason: Reason,
    /// The conclusion the pattern computes, when it gets that far.
    pub computed: Option<Interval>,
    /// The mood's classical conclusion.
    pub expected: Interval,
}

/// Values swept for a converse proportion the mood leaves unknown:
/// `{1e-6, step, 2 step, ..., 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConverseGrid {
    pub step: f64,
}

impl Default for ConverseGrid {
    fn default() -> Self {
        ConverseGrid { step: 0.01 }
    }
}

impl ConverseGrid {
    pub fn values(&self) -> Vec<f64> {
        let n = (1.0 / self.step).round().max(1.0) as usize;
        std::iter::once(dubois::CONVERSE_FLOOR).chain((1..=n).map(|i| i as f64 / n as f64)).collect()
    }

    pub fn refined(&self, factor: u32) -> ConverseGrid {
        ConverseGrid { step: self.step / f64::from(factor) }
    }
}

pub fn figure_compatible(pattern: PatternId, figure: Figure) -> bool {
    pattern.middle_positions() == Some(figure.middle_positions())
}

/// Quantifier letters in the chaining slots: the minor premise fills
/// "As are Bs" and the major premise "Bs are Cs" (minor term A, middle B,
/// major C).
fn slots(mood: &Mood) -> (Letter, Letter) {
    (mood.minor, mood.major)
}

/// Pattern I with unknown converses: the hull of the conclusions over the
/// grid. A converse whose direct proportion is 0 is itself 0.
fn pattern1_over_grid(q1: Interval, q2: Interval, grid: &ConverseGrid) -> Option<Interval> {
    let values = grid.values();
    let mut hull: Option<Interval> = None;
    for &c1 in &values {
        for &c2 in &values {
            let input = PatternIInput {
                q1,
                q1_conv: Interval::point(c1).expect("grid value"),
                q2,
                q2_conv: Interval::point(c2).expect("grid value"),
            };
            if let Ok(iv) = dubois::pattern1_imprecise(&input) {
                hull = Some(hull.map_or(iv, |h| h.hull(&iv)));
            }
        }
    }
    hull
}

fn middle_inside_minor_follows(mood: &Mood) -> bool {
    let (s1, p1) = mood.figure.major_premise();
    let (s2, p2) = mood.figure.minor_premise();
    let set = AtomSet::for_role;
    oracle::enumerate_models(MOOD_BUDGET, true)
        .filter(|m| m.holds(mood.major, set(s1), set(p1)) && m.holds(mood.minor, set(s2), set(p2)))
        .all(|m| m.holds(Letter::A, set(Role::Middle), set(Role::Minor)))
}

fn support_of(value: &BoundedQuantifier) -> Interval {
    value.defuzz_bounds().0
}

fn cuts(iv: Interval) -> AlphaCutNumber {
    AlphaCutNumber::from_interval(iv, crate::fuzzy_number::DEFAULT_RESOLUTION).expect("valid resolution")
}

/// Decides one pattern against one mood.
pub fn check_mood(pattern: PatternId, mood: &Mood, grid: &ConverseGrid) -> CompatEntry {
    let expected = mood.conclusion.interval();
    let entry = |reason: Reason, computed: Option<Interval>| CompatEntry {
        pattern,
        mood: *mood,
        compatible: reason == Reason::Compatible,
        reason,
        computed,
        expected,
    };
    if pattern.middle_positions().is_none() {
        return entry(Reason::StructurallyExcluded, None);
    }
    if !figure_compatible(pattern, mood.figure) {
        return entry(Reason::FigureMismatch, None);
    }
    let (minor, major) = slots(mood);
    let computed = match pattern {
        PatternId::DuboisI => pattern1_over_grid(minor.interval(), major.interval(), grid),
        PatternId::Mc => {
            if !middle_inside_minor_follows(mood) {
                return entry(Reason::MissingPremise("all Bs are As".into()), None);
            }
            zadeh::mc_conclude(&cuts(minor.interval()), &cuts(major.interval()), true).ok().map(|v| support_of(&v))
        }
        PatternId::Mpr => {
            if !minor.is_symmetric() {
                return entry(Reason::NonSymmetricReversal, None);
            }
            zadeh::mpr_conclude(&cuts(minor.interval()), &cuts(major.interval())).ok().map(|v| support_of(&v))
        }
        _ => unreachable!("only chaining patterns have middle-term positions"),
    };
    match computed {
        Some(iv) if iv.entails(&expected) => entry(Reason::Compatible, Some(iv)),
        other => entry(Reason::ConclusionNotEntailed, other),
    }
}

/// Figure I moods in table order.
pub fn figure_one_moods() -> Vec<Mood> {
    ["AAA-1", "EAE-1", "AII-1", "EIO-1", "AAI-1", "EAO-1"].iter().map(|m| m.parse().expect("valid mood")).collect()
}

/// Every crisp model of the mood's premises (up to `total_max` elements)
/// puts the proportion of minor-term elements in the major term inside
/// `interval`. Returns the first model that does not.
pub fn oracle_confirms(mood: &Mood, interval: &Interval, total_max: u32) -> Option<VennModel> {
    let (s1, p1) = mood.figure.major_premise();
    let (s2, p2) = mood.figure.minor_premise();
    let set = AtomSet::for_role;
    oracle::enumerate_models(total_max, true)
        .filter(|m| m.holds(mood.major, set(s1), set(p1)) && m.holds(mood.minor, set(s2), set(p2)))
        .find(|m| {
            let p = m.proportion(AtomSet::C, AtomSet::A).expect("minor term is nonempty");
            !interval.contains(oracle::rational_to_f64(&p))
        })
}

/// Middle-term positions per figure and per chaining pattern.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionRow {
    pub name: String,
    pub major: Position,
    pub minor: Position,
}

/// Everything needed to print the compatibility tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompatTables {
    pub positions: Vec<PositionRow>,
    pub moods: Vec<Mood>,
    pub pattern_one: Vec<CompatEntry>,
    pub mc: Vec<CompatEntry>,
    pub mpr: Vec<CompatEntry>,
    /// Moods of Figures II-IV: one verdict per chaining pattern.
    pub other_figures: Vec<CompatEntry>,
    pub excluded: Vec<PatternId>,
    pub notes: Vec<String>,
}

pub fn reproduce_tables(grid: &ConverseGrid) -> CompatTables {
    let moods = figure_one_moods();
    let row = |p: PatternId| moods.iter().map(|m| check_mood(p, m, grid)).collect::<Vec<_>>();
    let mut positions: Vec<PositionRow> = Figure::ALL
        .iter()
        .map(|f| {
            let (major, minor) = f.middle_positions();
            PositionRow { name: format!("Figure {}", f.roman()), major, minor }
        })
        .collect();
    for p in [PatternId::DuboisI, PatternId::Mc, PatternId::Mpr] {
        let (major, minor) = p.middle_positions().expect("chaining pattern");
        positions.push(PositionRow { name: p.title().to_string(), major, minor });
    }
    let other_figures = crate::aristotle::valid_moods()
        .into_iter()
        .filter(|m| m.figure != Figure::I)
        .flat_map(|m| [PatternId::DuboisI, PatternId::Mc, PatternId::Mpr].map(|p| check_mood(p, &m, grid)))
        .collect();
    let excluded = PatternId::ALL.into_iter().filter(|p| p.middle_positions().is_none()).collect();
    let mpr = row(PatternId::Mpr);
    let mut notes = Vec::new();
    if let Some(eio) = mpr.iter().find(|e| e.mood.letters() == "EIO") {
        if let Some(iv) = eio.computed {
            notes.push(format!(
                "MPR on EIO: the lower bound is 0, so the conclusion is the vacuous {iv}; it does not entail \
                 \"not all\" {}. Counted as incompatible, although the value itself is not wrong.",
                eio.expected
            ));
        }
    }
    notes.push(
        "MC needs every B to be an A; no Figure I mood's premises imply it (checked on all models with up to 8 elements)."
            .into(),
    );
    notes.push(format!(
        "Pattern I leaves both converse proportions unknown; conclusions are the hull over converse values {{{}, {}, ..., 1}}.",
        dubois::CONVERSE_FLOOR,
        grid.step
    ));
    let pattern_one = row(PatternId::DuboisI);
    let mc = row(PatternId::Mc);
    CompatTables { positions, moods, pattern_one, mc, mpr, other_figures, excluded, notes }
}

fn yes_no(e: &CompatEntry) -> &'static str {
    if e.compatible {
        "Yes"
    } else {
        "No"
    }
}

impl fmt::Display for CompatTables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Position of the middle term")?;
        writeln!(f, "{:<12} {:<10} {:<10}", "", "Major", "Minor")?;
        for r in &self.positions {
            writeln!(f, "{:<12} {:<10} {:<10}", r.name, r.major.to_string(), r.minor.to_string())?;
        }
        writeln!(f)?;
        let header: String = self.moods.iter().map(|m| format!(" {:<5}", m.letters())).collect();
        writeln!(f, "Pattern I against Figure I")?;
        writeln!(f, "{:<10}{header}", "")?;
        let cells = |row: &[CompatEntry]| row.iter().map(|e| format!(" {:<5}", yes_no(e))).collect::<String>();
        writeln!(f, "{:<10}{}", "Pattern I", cells(&self.pattern_one))?;
        writeln!(f)?;
        writeln!(f, "Chaining patterns against Figure I")?;
        writeln!(f, "{:<10}{header}", "")?;
        writeln!(f, "{:<10}{}", "MC", cells(&self.mc))?;
        writeln!(f, "{:<10}{}", "MPR", cells(&self.mpr))?;
        writeln!(f)?;
        writeln!(f, "Reasons")?;
        for e in self.pattern_one.iter().chain(&self.mc).chain(&self.mpr) {
            let computed = e.computed.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{:<10} {:<6} {:<4} {:<32} computed {:<10} expected {}",
                e.pattern.title(),
                e.mood.to_string(),
                yes_no(e),
                e.reason.to_string(),
                computed,
                e.expected
            )?;
        }
        let mismatches = self.other_figures.iter().filter(|e| e.reason == Reason::FigureMismatch).count();
        writeln!(f)?;
        writeln!(
            f,
            "Figures II-IV: {mismatches} of {} pattern/mood pairs rejected with FigureMismatch",
            self.other_figures.len()
        )?;
        let excluded: Vec<&str> = self.excluded.iter().map(|p| p.title()).collect();
        writeln!(f, "StructurallyExcluded: {}", excluded.join(", "))?;
        writeln!(f)?;
        writeln!(f, "Notes")?;
        for n in &self.notes {
            writeln!(f, "- {n}")?;
        }
        Ok(())
    }
}
