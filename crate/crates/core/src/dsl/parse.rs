use std::path::Path;

use super::lexicon::normalize_name;
use super::{DslError, Lexicon, QuantifierTerm, Statement, Syllogism};
use crate::aristotle::Letter;
use crate::fuzzy_number::TrapezoidalQuantifier;
use crate::interval::{Interval, QuantifierKind};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Number(f64),
    Quoted(String),
    Open(char),
    Close(char),
    Comma,
    Percent,
    Geq,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    column: usize,
}

fn syntax(column: usize, message: impl Into<String>) -> DslError {
    DslError::Syntax { column, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<Token>, DslError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '≥' => {
                i += 1;
                Tok::Geq
            }
            '>' if chars.get(i + 1) == Some(&'=') => {
                i += 2;
                Tok::Geq
            }
            '[' | '(' => {
                i += 1;
                Tok::Open(c)
            }
            ']' | ')' => {
                i += 1;
                Tok::Close(c)
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            '%' => {
                i += 1;
                Tok::Percent
            }
            '"' => {
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(syntax(column, "unterminated quoted term")),
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => match chars.get(i + 1) {
                            Some(&e @ ('"' | '\\')) => {
                                s.push(e);
                                i += 2;
                            }
                            _ => return Err(syntax(i + 1, "bad escape in quoted term")),
                        },
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                Tok::Quoted(s)
            }
            c if c.is_ascii_digit()
                || ((c == '.' || c == '-') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit() || *d == '.')) =>
            {
                let start = i;
                i += 1;
                while i < chars.len() {
                    let d = chars[i];
                    let exp_sign = (d == '-' || d == '+') && matches!(chars[i - 1], 'e' | 'E');
                    if d.is_ascii_digit() || d == '.' || d == 'e' || d == 'E' || exp_sign {
                        i += 1;
                    } else {
                        break;
                    }
                }
                let lit: String = chars[start..i].iter().collect();
                match lit.parse::<f64>() {
                    Ok(v) if v.is_finite() => Tok::Number(v),
                    _ => return Err(syntax(column, format!("bad number `{lit}`"))),
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || matches!(chars[i], '_' | '-' | '\'')) {
                    i += 1;
                }
                Tok::Word(chars[start..i].iter().collect())
            }
            other => return Err(syntax(column, format!("unexpected character `{other}`"))),
        };
        out.push(Token { tok, column });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    end_column: usize,
    lexicon: &'a Lexicon,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |t| t.column)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn peek_word(&self, offset: usize) -> Option<String> {
        match self.toks.get(self.pos + offset).map(|t| &t.tok) {
            Some(Tok::Word(w)) => Some(w.to_lowercase()),
            _ => None,
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        if self.peek_word(0).as_deref() == Some(word) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_word(&mut self, word: &str) -> Result<(), DslError> {
        if self.eat_word(word) {
            Ok(())
        } else {
            Err(syntax(self.column(), format!("expected `{word}`")))
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), DslError> {
        let column = self.column();
        if self.bump() == Some(tok) {
            Ok(())
        } else {
            Err(syntax(column, format!("expected {what}")))
        }
    }

    fn number(&mut self) -> Result<f64, DslError> {
        let column = self.column();
        match self.bump() {
            Some(Tok::Number(v)) => Ok(v),
            _ => Err(syntax(column, "expected a number")),
        }
    }

    /// A number, divided by 100 when followed by `%`; must lie in [0, 1].
    fn proportion(&mut self) -> Result<f64, DslError> {
        let column = self.column();
        let mut v = self.number()?;
        if self.peek() == Some(&Tok::Percent) {
            self.pos += 1;
            v /= 100.0;
        }
        if !(0.0..=1.0).contains(&v) {
            return Err(DslError::MalformedInterval { column, detail: format!("proportion {v} is outside [0, 1]") });
        }
        Ok(v)
    }

    fn interval(&mut self, column: usize, l: f64, u: f64, lo: bool, uo: bool) -> Result<QuantifierKind, DslError> {
        let iv = Interval::proportion(l, u, lo, uo)
            .map_err(|e| DslError::MalformedInterval { column, detail: e.to_string() })?;
        Ok(if iv.is_point() { QuantifierKind::Precise(iv.lower()) } else { QuantifierKind::Imprecise(iv) })
    }

    fn quantifier(&mut self) -> Result<QuantifierTerm, DslError> {
        let column = self.column();
        match self.peek().cloned() {
            Some(Tok::Open(open)) => {
                self.pos += 1;
                let l = self.number()?;
                self.expect(Tok::Comma, "`,`")?;
                let u = self.number()?;
                let close = match self.bump() {
                    Some(Tok::Close(c)) => c,
                    _ => return Err(syntax(self.column(), "expected `]` or `)`")),
                };
                let kind = self.interval(column, l, u, open == '(', close == ')')?;
                Ok(QuantifierTerm::Literal(kind))
            }
            Some(Tok::Number(_)) => {
                let v = self.proportion()?;
                self.eat_word("of");
                Ok(QuantifierTerm::Literal(QuantifierKind::Precise(v)))
            }
            Some(Tok::Word(w)) => {
                let lower = w.to_lowercase();
                let phrase2 = self.peek_word(1);
                let literal = match (lower.as_str(), phrase2.as_deref()) {
                    ("between", _) if matches!(self.toks.get(self.pos + 1).map(|t| &t.tok), Some(Tok::Number(_))) => {
                        self.pos += 1;
                        let l = self.proportion()?;
                        self.expect_word("and")?;
                        let u = self.proportion()?;
                        Some(self.interval(column, l, u, false, false)?)
                    }
                    ("at", Some("least")) => {
                        self.pos += 2;
                        let p = self.proportion()?;
                        Some(self.interval(column, p, 1.0, false, false)?)
                    }
                    ("at", Some("most")) => {
                        self.pos += 2;
                        let p = self.proportion()?;
                        Some(self.interval(column, 0.0, p, false, false)?)
                    }
                    ("more", Some("than")) => {
                        self.pos += 2;
                        let p = self.proportion()?;
                        Some(self.interval(column, p, 1.0, true, false)?)
                    }
                    ("less", Some("than")) => {
                        self.pos += 2;
                        let p = self.proportion()?;
                        Some(self.interval(column, 0.0, p, false, true)?)
                    }
                    ("trapezoid", _) if self.toks.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::Open('(')) => {
                        self.pos += 2;
                        let mut p = [0.0; 4];
                        for (k, slot) in p.iter_mut().enumerate() {
                            if k > 0 {
                                self.expect(Tok::Comma, "`,`")?;
                            }
                            *slot = self.number()?;
                        }
                        self.expect(Tok::Close(')'), "`)`")?;
                        let t = TrapezoidalQuantifier::new(p[0], p[1], p[2], p[3])
                            .ok()
                            .filter(|t| t.is_proportion())
                            .ok_or_else(|| DslError::MalformedInterval {
                            column,
                            detail: format!("trapezoid {p:?} must be ordered inside [0, 1]"),
                        })?;
                        Some(QuantifierKind::Fuzzy(t))
                    }
                    _ => None,
                };
                if let Some(kind) = literal {
                    self.eat_word("of");
                    return Ok(QuantifierTerm::Literal(kind));
                }
                self.phrase(column, &w)
            }
            _ => Err(syntax(column, "expected a quantifier")),
        }
    }

    /// Longest run of words naming a lexicon entry or a classical word.
    fn phrase(&mut self, column: usize, first: &str) -> Result<QuantifierTerm, DslError> {
        let max = self.lexicon.max_words().max(2);
        let mut words = Vec::new();
        while words.len() < max {
            match self.peek_word(words.len()) {
                Some(w) => words.push(w),
                None => break,
            }
        }
        for len in (1..=words.len()).rev() {
            let phrase = normalize_name(&words[..len].join(" "));
            if let Some(entry) = self.lexicon.get(&phrase) {
                self.pos += len;
                return Ok(QuantifierTerm::Named { name: phrase, entry: entry.clone() });
            }
            let letter = match phrase.as_str() {
                "all" => Some(Letter::A),
                "no" | "none" => Some(Letter::E),
                "some" => Some(Letter::I),
                "not all" => Some(Letter::O),
                _ => None,
            };
            if let Some(l) = letter {
                self.pos += len;
                return Ok(QuantifierTerm::Literal(QuantifierKind::Classical(l)));
            }
        }
        Err(DslError::UnknownQuantifier { column, word: first.to_string() })
    }

    fn term(&mut self) -> Result<String, DslError> {
        let column = self.column();
        match self.bump() {
            Some(Tok::Word(w)) if !w.eq_ignore_ascii_case("are") => Ok(w),
            Some(Tok::Quoted(q)) if !q.trim().is_empty() => Ok(q),
            _ => Err(syntax(column, "expected a term")),
        }
    }

    fn statement(&mut self) -> Result<Statement, DslError> {
        let at_least = if self.peek() == Some(&Tok::Geq) {
            self.pos += 1;
            true
        } else {
            false
        };
        let quantifier = self.quantifier()?;
        let subject = self.term()?;
        self.expect_word("are")?;
        let predicate = self.term()?;
        if self.pos < self.toks.len() {
            return Err(syntax(self.column(), "unexpected trailing input"));
        }
        if subject == predicate {
            return Err(DslError::SameTerms(subject));
        }
        Ok(Statement { quantifier, subject, predicate, at_least })
    }
}

/// Parses one statement line against a lexicon.
pub fn parse_statement(text: &str, lexicon: &Lexicon) -> Result<Statement, DslError> {
    let toks = tokenize(text)?;
    let mut parser = Parser { toks, pos: 0, end_column: text.chars().count() + 1, lexicon };
    parser.statement()
}

/// Drops a trailing `#` comment that is not inside a quoted term.
fn strip_comment(line: &str) -> &str {
    let mut in_quote = false;
    let mut escaped = false;
    for (i, c) in line.char_indices() {
        match c {
            _ if escaped => escaped = false,
            '\\' if in_quote => escaped = true,
            '"' => in_quote = !in_quote,
            '#' if !in_quote => return &line[..i],
            _ => {}
        }
    }
    line
}

/// Parses the syllogism file format: optional `pattern:` / `version:`
/// directives, premises one per line, then `---` and an optional expected
/// conclusion. `#` starts a comment.
pub fn parse_syllogism(text: &str, lexicon: &Lexicon) -> Result<Syllogism, DslError> {
    let mut out = Syllogism::default();
    let mut after_separator = false;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        if line == "---" {
            if after_separator {
                return Err(DslError::Directive { line: line_no, message: "second `---` separator".into() });
            }
            after_separator = true;
            continue;
        }
        if let Some((key, value)) = line.split_once(':') {
            let key = key.trim().to_lowercase();
            if key == "pattern" || key == "version" {
                if after_separator {
                    return Err(DslError::Directive {
                        line: line_no,
                        message: format!("`{key}:` must come before `---`"),
                    });
                }
                let directive = |m: String| DslError::Directive { line: line_no, message: m };
                if key == "pattern" {
                    out.pattern = Some(value.trim().parse().map_err(directive)?);
                } else {
                    out.version = Some(value.trim().parse().map_err(directive)?);
                }
                continue;
            }
        }
        let statement = parse_statement(line, lexicon).map_err(|e| e.at_line(line_no))?;
        if after_separator {
            if out.conclusion.is_some() {
                return Err(DslError::Directive {
                    line: line_no,
                    message: "only one expected conclusion may follow `---`".into(),
                });
            }
            out.conclusion = Some(statement);
        } else {
            out.premises.push(statement);
        }
    }
    if out.premises.is_empty() {
        return Err(DslError::EmptyFile);
    }
    if let Some(pattern) = out.pattern {
        let allowed = pattern.premise_counts(out.version);
        if !allowed.contains(&out.premises.len()) {
            let expected = allowed.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" or ");
            return Err(DslError::Arity { pattern: pattern.to_string(), expected, found: out.premises.len() });
        }
    }
    Ok(out)
}

pub fn parse_file(path: impl AsRef<Path>, lexicon: &Lexicon) -> Result<Syllogism, DslError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| DslError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_syllogism(&text, lexicon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compat::PatternId;
    use crate::dsl::LexiconEntry;

    fn lexicon() -> Lexicon {
        let mut lex = Lexicon::new();
        let most = TrapezoidalQuantifier::new(0.7, 0.8, 0.9, 1.0).unwrap();
        lex.insert(
            "most",
            LexiconEntry { kind: QuantifierKind::Fuzzy(most), scale: Default::default(), symmetric: false },
        );
        let aa = TrapezoidalQuantifier::new(0.85, 0.95, 1.0, 1.0).unwrap();
        lex.insert(
            "almost all",
            LexiconEntry { kind: QuantifierKind::Fuzzy(aa), scale: Default::default(), symmetric: false },
        );
        lex
    }

    fn kind(s: &str) -> QuantifierKind {
        parse_statement(s, &lexicon()).unwrap().quantifier.kind().unwrap()
    }

    fn closed(l: f64, u: f64) -> QuantifierKind {
        QuantifierKind::Imprecise(Interval::closed(l, u).unwrap())
    }

    #[test]
    fn interval_statement() {
        let s = parse_statement("[0.85, 0.95] students are young", &lexicon()).unwrap();
        assert_eq!(s.quantifier.kind(), Some(closed(0.85, 0.95)));
        assert_eq!((s.subject.as_str(), s.predicate.as_str()), ("students", "young"));
        assert!(!s.at_least);
    }

    #[test]
    fn classical_and_lexicon_words() {
        assert_eq!(kind("all Greeks are mortal"), QuantifierKind::Classical(Letter::A));
        assert_eq!(kind("No x are y"), QuantifierKind::Classical(Letter::E));
        assert_eq!(kind("none x are y"), QuantifierKind::Classical(Letter::E));
        assert_eq!(kind("NOT ALL x are y"), QuantifierKind::Classical(Letter::O));
        let s = parse_statement("most students are young", &lexicon()).unwrap();
        assert!(matches!(s.quantifier, QuantifierTerm::Named { ref name, .. } if name == "most"));
        let s = parse_statement("Almost  all students are single", &lexicon()).unwrap();
        assert!(matches!(s.quantifier, QuantifierTerm::Named { ref name, .. } if name == "almost all"));
        // "all" still works as a term after a quantifier
        let s = parse_statement("all all are some", &lexicon()).unwrap();
        assert_eq!((s.subject.as_str(), s.predicate.as_str()), ("all", "some"));
    }

    #[test]
    fn percentage_phrases() {
        assert_eq!(kind("between 70% and 80% of students are women"), closed(0.7, 0.8));
        assert_eq!(kind("at least 70% of women are young"), closed(0.7, 1.0));
        assert_eq!(kind("at most 0.2 of women are young"), closed(0.0, 0.2));
        assert_eq!(
            kind("more than 35% of women are students"),
            QuantifierKind::Imprecise(Interval::with_openness(0.35, 1.0, true, false).unwrap())
        );
        assert_eq!(
            kind("less than 5% of parents are young"),
            QuantifierKind::Imprecise(Interval::with_openness(0.0, 0.05, false, true).unwrap())
        );
        assert_eq!(kind("30% of x are y"), QuantifierKind::Precise(0.3));
        assert_eq!(kind("0.3 x are y"), QuantifierKind::Precise(0.3));
        assert_eq!(kind("[0.3, 0.3] x are y"), QuantifierKind::Precise(0.3));
    }

    #[test]
    fn at_least_and_quoted_terms() {
        let s = parse_statement("≥ 0.42 \"American cars\" are expensive", &lexicon()).unwrap();
        assert!(s.at_least);
        assert_eq!(s.subject, "American cars");
        let s = parse_statement(">= trapezoid(0.49, 0.64, 0.81, 1) x are y", &lexicon()).unwrap();
        assert!(s.at_least);
        assert!(matches!(s.quantifier.kind(), Some(QuantifierKind::Fuzzy(_))));
    }

    #[test]
    fn error_cases() {
        let lex = lexicon();
        assert!(matches!(parse_statement("many x are y", &lex), Err(DslError::UnknownQuantifier { column: 1, .. })));
        assert!(matches!(parse_statement("[0.9, 0.2] x are y", &lex), Err(DslError::MalformedInterval { .. })));
        assert!(matches!(parse_statement("[0.5, 1.2] x are y", &lex), Err(DslError::MalformedInterval { .. })));
        assert!(matches!(parse_statement("more than 100% of x are y", &lex), Err(DslError::MalformedInterval { .. })));
        assert!(matches!(parse_statement("all x is y", &lex), Err(DslError::Syntax { column: 7, .. })));
        assert!(matches!(parse_statement("all x are", &lex), Err(DslError::Syntax { column: 10, .. })));
        assert!(matches!(parse_statement("all x are y z", &lex), Err(DslError::Syntax { column: 13, .. })));
        assert!(matches!(parse_statement("all \"x are y", &lex), Err(DslError::Syntax { .. })));
        assert!(matches!(parse_statement("all x are x", &lex), Err(DslError::SameTerms(_))));
        assert!(matches!(parse_statement("", &lex), Err(DslError::Syntax { .. })));
        assert!(matches!(parse_statement("all x ⊗ y", &lex), Err(DslError::Syntax { .. })));
    }

    #[test]
    fn syllogism_file() {
        let text = "# students\npattern: dubois1\n[0.85, 0.95] students are young\n[0.25, 0.35] young are students # converse\n[0.90, 1] young are single\n[0.60, 0.80] single are young\n---\n[0.51, 1] students are single\n";
        let s = parse_syllogism(text, &lexicon()).unwrap();
        assert_eq!(s.pattern, Some(PatternId::DuboisI));
        assert_eq!(s.premises.len(), 4);
        assert_eq!(s.conclusion.unwrap().to_string(), "[0.51, 1] students are single");
    }

    #[test]
    fn syllogism_file_errors() {
        let lex = lexicon();
        assert_eq!(parse_syllogism("", &lex), Err(DslError::EmptyFile));
        assert_eq!(parse_syllogism("# nothing\n\n", &lex), Err(DslError::EmptyFile));
        let err = parse_syllogism("all a are b\nsome b are\n", &lex).unwrap_err();
        assert!(matches!(err, DslError::Line { line: 2, .. }), "{err}");
        let err = parse_syllogism("pattern: dubois1\nall a are b\n", &lex).unwrap_err();
        assert!(matches!(err, DslError::Arity { found: 1, .. }));
        let err = parse_syllogism("pattern: nonsense\nall a are b\n", &lex).unwrap_err();
        assert!(matches!(err, DslError::Directive { line: 1, .. }));
        let err = parse_syllogism("all a are b\n---\nall a are c\nall a are d\n", &lex).unwrap_err();
        assert!(matches!(err, DslError::Directive { line: 4, .. }));
    }

    #[test]
    fn comment_inside_quotes_is_kept() {
        let s = parse_syllogism("all \"#1 fans\" are happy # trailing\n", &lexicon()).unwrap();
        assert_eq!(s.premises[0].subject, "#1 fans");
    }
}
