//! Quantified statements, syllogism files and quantifier lexicons.
//!
//! Statement grammar, one per line:
//!
//! ```text
//! statement := [">=" | "≥"] quantifier term "are" term
//! quantifier := interval            "[0.25, 0.35]", "(0, 1]"
//!             | number ["%"] ["of"]  precise: "0.3", "30% of"
//!             | "between" p "and" q ["of"] | "at least" p | "at most" p
//!             | "more than" p | "less than" p
//!             | "trapezoid(a, b, c, d)"
//!             | "all" | "no" | "none" | "some" | "not all"
//!             | lexicon name (longest match, may span words)
//! term := word | "quoted phrase"
//! ```
//!
//! Keywords and quantifier names are case-insensitive; term labels are kept
//! verbatim.

mod lexicon;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lexicon::{load_lexicon, Lexicon, LexiconEntry, Scale};
pub use parse::{parse_file, parse_statement, parse_syllogism};

use crate::compat::PatternId;
use crate::dubois::Version;
use crate::interval::{fmt_num, QuantifierKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DslError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown quantifier `{word}` at column {column}")]
    UnknownQuantifier { column: usize, word: String },
    #[error("malformed interval at column {column}: {detail}")]
    MalformedInterval { column: usize, detail: String },
    #[error("subject and predicate are both `{0}`")]
    SameTerms(String),
    #[error("line {line}: {source}")]
    Line {
        line: usize,
        #[source]
        source: Box<DslError>,
    },
    #[error("syllogism file contains no statements")]
    EmptyFile,
    #[error("pattern {pattern} expects {expected} premises, found {found}")]
    Arity { pattern: String, expected: String, found: usize },
    #[error("line {line}: {message}")]
    Directive { line: usize, message: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("lexicon: {0}")]
    Lexicon(String),
}

impl DslError {
    pub(crate) fn at_line(self, line: usize) -> DslError {
        DslError::Line { line, source: Box::new(self) }
    }
}

/// The quantifier slot of a statement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantifierTerm {
    /// Written out directly: an interval, a number, a percentage phrase, a
    /// trapezoid or a classical word.
    Literal(QuantifierKind),
    /// A lexicon entry referenced by name.
    Named { name: String, entry: LexiconEntry },
    /// Symbolic label of a computed conclusion, e.g. `most⊗most`. Output only.
    Derived(String),
}

impl QuantifierTerm {
    pub fn kind(&self) -> Option<QuantifierKind> {
        match self {
            QuantifierTerm::Literal(k) => Some(*k),
            QuantifierTerm::Named { entry, .. } => Some(entry.kind),
            QuantifierTerm::Derived(_) => None,
        }
    }

    /// Whether swapping subject and predicate preserves the meaning.
    pub fn is_symmetric(&self) -> bool {
        match self {
            QuantifierTerm::Literal(QuantifierKind::Classical(l)) => l.is_symmetric(),
            QuantifierTerm::Named { entry, .. } => {
                entry.symmetric || matches!(entry.kind, QuantifierKind::Classical(l) if l.is_symmetric())
            }
            _ => false,
        }
    }

    /// Short label used when composing derived conclusions.
    pub fn label(&self) -> String {
        match self {
            QuantifierTerm::Named { name, .. } => name.clone(),
            QuantifierTerm::Derived(label) => label.clone(),
            QuantifierTerm::Literal(kind) => render_kind(kind),
        }
    }
}

fn render_kind(kind: &QuantifierKind) -> String {
    match kind {
        QuantifierKind::Precise(v) => fmt_num(*v),
        QuantifierKind::Imprecise(iv) => iv.to_string(),
        QuantifierKind::Classical(l) => l.word().to_string(),
        QuantifierKind::Fuzzy(t) => format!("trapezoid{t}"),
    }
}

/// `Q subject are predicate`, optionally a lower bound (`≥ Q ...`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Statement {
    pub quantifier: QuantifierTerm,
    pub subject: String,
    pub predicate: String,
    #[serde(default)]
    pub at_least: bool,
}

impl Statement {
    pub fn new(quantifier: QuantifierTerm, subject: impl Into<String>, predicate: impl Into<String>) -> Self {
        Statement { quantifier, subject: subject.into(), predicate: predicate.into(), at_least: false }
    }

    pub fn at_least(mut self) -> Self {
        self.at_least = true;
        self
    }

    /// Rendering with `>=` instead of `≥`.
    pub fn render_ascii(&self) -> String {
        self.render(">=")
    }

    fn render(&self, geq: &str) -> String {
        let mut out = String::new();
        if self.at_least {
            out.push_str(geq);
            out.push(' ');
        }
        out.push_str(&self.quantifier.label());
        out.push(' ');
        out.push_str(&render_term(&self.subject));
        out.push_str(" are ");
        out.push_str(&render_term(&self.predicate));
        out
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("≥"))
    }
}

pub(crate) fn is_bare_term(term: &str) -> bool {
    let mut chars = term.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    (first.is_alphabetic() || first == '_')
        && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '\''))
        && !term.eq_ignore_ascii_case("are")
}

/// Term label as it must be written to parse back unchanged.
pub fn render_term(term: &str) -> String {
    if is_bare_term(term) {
        term.to_string()
    } else {
        let escaped = term.replace('\\', "\\\\").replace('"', "\\\"");
        format!("\"{escaped}\"")
    }
}

/// An ordered premise list with an optional expected conclusion.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Syllogism {
    pub pattern: Option<PatternId>,
    pub version: Option<Version>,
    pub premises: Vec<Statement>,
    pub conclusion: Option<Statement>,
}

impl fmt::Display for Syllogism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.pattern {
            writeln!(f, "pattern: {p}")?;
        }
        if let Some(v) = self.version {
            writeln!(f, "version: {v}")?;
        }
        for p in &self.premises {
            writeln!(f, "{p}")?;
        }
        if let Some(c) = &self.conclusion {
            writeln!(f, "---")?;
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
