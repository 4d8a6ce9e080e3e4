//! The classical catalog: the four quantifier letters, the four figures,
//! the 24 valid moods, and crisp set semantics under existential import.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsl::{QuantifierTerm, Statement, Syllogism};
use crate::interval::{Interval, QuantifierKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AristotleError {
    #[error("subject term is empty; existential import requires nonempty terms")]
    EmptyTerm,
    #[error("term labels must be pairwise distinct, `{0}` repeats")]
    DuplicateTerm(String),
    #[error("unknown mood `{0}`; expected e.g. AAA-1")]
    BadMood(String),
    #[error("statement `{0}` does not use a classical quantifier")]
    NotClassical(String),
    #[error("not a two-premise syllogism with a conclusion: {0}")]
    NotASyllogism(String),
}

/// One of the four classical quantifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    A,
    E,
    I,
    O,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::E, Letter::I, Letter::O];

    /// Proportional reading: `all` = [1, 1], `no` = [0, 0], `some` = (0, 1],
    /// `not all` = [0, 1).
    pub fn interval(self) -> Interval {
        match self {
            Letter::A => Interval::ONE,
            Letter::E => Interval::ZERO,
            Letter::I => Interval::with_openness(0.0, 1.0, true, false).expect("valid"),
            Letter::O => Interval::with_openness(0.0, 1.0, false, true).expect("valid"),
        }
    }

    /// Surface word used when rendering statements.
    pub fn word(self) -> &'static str {
        match self {
            Letter::A => "all",
            Letter::E => "no",
            Letter::I => "some",
            Letter::O => "not all",
        }
    }

    /// `no` and `some` keep their meaning when subject and predicate swap.
    pub fn is_symmetric(self) -> bool {
        matches!(self, Letter::E | Letter::I)
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c.to_ascii_uppercase() {
            'A' => Some(Letter::A),
            'E' => Some(Letter::E),
            'I' => Some(Letter::I),
            'O' => Some(Letter::O),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::E => 'E',
            Letter::I => 'I',
            Letter::O => 'O',
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Major,
    Minor,
    Middle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Position {
    Subject,
    Predicate,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Position::Subject => "Subject",
            Position::Predicate => "Predicate",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Figure {
    I,
    II,
    III,
    IV,
}

impl Figure {
    pub const ALL: [Figure; 4] = [Figure::I, Figure::II, Figure::III, Figure::IV];

    pub fn number(self) -> u8 {
        match self {
            Figure::I => 1,
            Figure::II => 2,
            Figure::III => 3,
            Figure::IV => 4,
        }
    }

    pub fn from_number(n: u8) -> Option<Figure> {
        match n {
            1 => Some(Figure::I),
            2 => Some(Figure::II),
            3 => Some(Figure::III),
            4 => Some(Figure::IV),
            _ => None,
        }
    }

    /// (subject, predicate) roles of the major premise.
    pub fn major_premise(self) -> (Role, Role) {
        match self {
            Figure::I | Figure::III => (Role::Middle, Role::Major),
            Figure::II | Figure::IV => (Role::Major, Role::Middle),
        }
    }

    /// (subject, predicate) roles of the minor premise.
    pub fn minor_premise(self) -> (Role, Role) {
        match self {
            Figure::I | Figure::II => (Role::Minor, Role::Middle),
            Figure::III | Figure::IV => (Role::Middle, Role::Minor),
        }
    }

    /// Position of the middle term in (major premise, minor premise).
    pub fn middle_positions(self) -> (Position, Position) {
        let pos = |(s, _): (Role, Role)| {
            if s == Role::Middle {
                Position::Subject
            } else {
                Position::Predicate
            }
        };
        (pos(self.major_premise()), pos(self.minor_premise()))
    }

    pub fn roman(self) -> &'static str {
        match self {
            Figure::I => "I",
            Figure::II => "II",
            Figure::III => "III",
            Figure::IV => "IV",
        }
    }
}

/// A figure plus the letters of (major premise, minor premise, conclusion).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mood {
    pub figure: Figure,
    pub major: Letter,
    pub minor: Letter,
    pub conclusion: Letter,
}

impl Mood {
    pub fn new(figure: Figure, major: Letter, minor: Letter, conclusion: Letter) -> Self {
        Mood { figure, major, minor, conclusion }
    }

    /// Letters only, e.g. `AII`.
    pub fn letters(&self) -> String {
        format!("{}{}{}", self.major, self.minor, self.conclusion)
    }
}

impl fmt::Display for Mood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.letters(), self.figure.number())
    }
}

impl FromStr for Mood {
    type Err = AristotleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AristotleError::BadMood(s.to_string());
        let (letters, fig) = s.trim().split_once('-').ok_or_else(bad)?;
        let letters: Vec<Letter> = letters.chars().map(Letter::from_char).collect::<Option<_>>().ok_or_else(bad)?;
        if letters.len() != 3 {
            return Err(bad());
        }
        let figure = match fig.trim() {
            "1" | "I" => Figure::I,
            "2" | "II" => Figure::II,
            "3" | "III" => Figure::III,
            "4" | "IV" => Figure::IV,
            _ => return Err(bad()),
        };
        Ok(Mood::new(figure, letters[0], letters[1], letters[2]))
    }
}

const VALID_TABLE: [(Figure, [&str; 6]); 4] = [
    (Figure::I, ["AAA", "EAE", "AII", "EIO", "AAI", "EAO"]),
    (Figure::II, ["EAE", "AEE", "EIO", "AOO", "EAO", "AEO"]),
    (Figure::III, ["AAI", "EAO", "IAI", "AII", "OAO", "EIO"]),
    (Figure::IV, ["AAI", "AEE", "IAI", "EAO", "EIO", "AEO"]),
];

/// The 24 classically valid moods, six per figure, in catalog order.
pub fn valid_moods() -> Vec<Mood> {
    VALID_TABLE
        .iter()
        .flat_map(|(figure, names)| {
            names.iter().map(move |n| {
                let l: Vec<Letter> = n.chars().filter_map(Letter::from_char).collect();
                Mood::new(*figure, l[0], l[1], l[2])
            })
        })
        .collect()
}

/// All 256 figure/letter combinations.
pub fn all_moods() -> Vec<Mood> {
    let mut out = Vec::with_capacity(256);
    for figure in Figure::ALL {
        for major in Letter::ALL {
            for minor in Letter::ALL {
                for conclusion in Letter::ALL {
                    out.push(Mood::new(figure, major, minor, conclusion));
                }
            }
        }
    }
    out
}

/// Labels for the major (MT), minor (NT) and middle (DT) terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermAssignment {
    major: String,
    minor: String,
    middle: String,
}

impl TermAssignment {
    pub fn new(
        major: impl Into<String>,
        minor: impl Into<String>,
        middle: impl Into<String>,
    ) -> Result<Self, AristotleError> {
        let (major, minor, middle) = (major.into(), minor.into(), middle.into());
        if major == minor || major == middle {
            return Err(AristotleError::DuplicateTerm(major));
        }
        if minor == middle {
            return Err(AristotleError::DuplicateTerm(minor));
        }
        Ok(TermAssignment { major, minor, middle })
    }

    pub fn major(&self) -> &str {
        &self.major
    }

    pub fn minor(&self) -> &str {
        &self.minor
    }

    pub fn middle(&self) -> &str {
        &self.middle
    }

    pub fn label(&self, role: Role) -> &str {
        match role {
            Role::Major => &self.major,
            Role::Minor => &self.minor,
            Role::Middle => &self.middle,
        }
    }
}

fn classical(letter: Letter, subject: &str, predicate: &str) -> Statement {
    Statement::new(QuantifierTerm::Literal(QuantifierKind::Classical(letter)), subject, predicate)
}

/// Fills the figure's premise templates with concrete terms.
pub fn instantiate(mood: &Mood, terms: &TermAssignment) -> Syllogism {
    let (s1, p1) = mood.figure.major_premise();
    let (s2, p2) = mood.figure.minor_premise();
    Syllogism {
        premises: vec![
            classical(mood.major, terms.label(s1), terms.label(p1)),
            classical(mood.minor, terms.label(s2), terms.label(p2)),
        ],
        conclusion: Some(classical(mood.conclusion, terms.minor(), terms.major())),
        ..Syllogism::default()
    }
}

fn letter_of(s: &Statement) -> Result<Letter, AristotleError> {
    match s.quantifier.kind() {
        Some(QuantifierKind::Classical(l)) => Ok(l),
        _ => Err(AristotleError::NotClassical(s.to_string())),
    }
}

/// Recovers the mood and term roles of a classical two-premise syllogism.
pub fn classify(syllogism: &Syllogism) -> Result<(Mood, TermAssignment), AristotleError> {
    let fail = |why: &str| AristotleError::NotASyllogism(why.to_string());
    if syllogism.premises.len() != 2 {
        return Err(fail("expected exactly two premises"));
    }
    let conclusion = syllogism.conclusion.as_ref().ok_or_else(|| fail("missing conclusion"))?;
    let (major_p, minor_p) = (&syllogism.premises[0], &syllogism.premises[1]);
    let minor = conclusion.subject.clone();
    let major = conclusion.predicate.clone();
    let middle = if major_p.subject == major {
        major_p.predicate.clone()
    } else if major_p.predicate == major {
        major_p.subject.clone()
    } else {
        return Err(fail("major premise does not mention the major term"));
    };
    let terms = TermAssignment::new(major, minor, middle)?;
    let roles = |s: &Statement| -> Option<(Role, Role)> {
        let role = |t: &str| {
            if t == terms.major() {
                Some(Role::Major)
            } else if t == terms.minor() {
                Some(Role::Minor)
            } else if t == terms.middle() {
                Some(Role::Middle)
            } else {
                None
            }
        };
        Some((role(&s.subject)?, role(&s.predicate)?))
    };
    let (r1, r2) = (roles(major_p), roles(minor_p));
    let figure = Figure::ALL
        .into_iter()
        .find(|f| Some(f.major_premise()) == r1 && Some(f.minor_premise()) == r2)
        .ok_or_else(|| fail("premise term positions match no figure"))?;
    let mood = Mood::new(figure, letter_of(major_p)?, letter_of(minor_p)?, letter_of(conclusion)?);
    Ok((mood, terms))
}

/// Truth of a classical statement over finite crisp sets.
///
/// `O` is read as "not all subjects are predicates", which coincides with
/// "some subject is not a predicate" because the subject must be nonempty.
pub fn crisp_holds<T: Ord>(
    letter: Letter,
    subject: &BTreeSet<T>,
    predicate: &BTreeSet<T>,
) -> Result<bool, AristotleError> {
    if subject.is_empty() {
        return Err(AristotleError::EmptyTerm);
    }
    Ok(match letter {
        Letter::A => subject.is_subset(predicate),
        Letter::E => subject.is_disjoint(predicate),
        Letter::I => !subject.is_disjoint(predicate),
        Letter::O => !subject.is_subset(predicate),
    })
}
