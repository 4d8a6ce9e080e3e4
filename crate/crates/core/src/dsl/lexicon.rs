use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::DslError;
use crate::aristotle::Letter;
use crate::fuzzy_number::TrapezoidalQuantifier;
use crate::interval::{Interval, QuantifierKind};

/// Whether a quantifier denotes a fraction of its subject or a plain count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Proportional,
    Absolute,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub kind: QuantifierKind,
    #[serde(default)]
    pub scale: Scale,
    /// May subject and predicate be swapped without changing the meaning?
    #[serde(default)]
    pub symmetric: bool,
}

/// Named quantifiers, keyed by lowercase, single-spaced names.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Lexicon {
    entries: BTreeMap<String, LexiconEntry>,
}

pub(crate) fn normalize_name(name: &str) -> String {
    name.split_whitespace().map(str::to_lowercase).collect::<Vec<_>>().join(" ")
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str, entry: LexiconEntry) {
        self.entries.insert(normalize_name(name), entry);
    }

    pub fn get(&self, name: &str) -> Option<&LexiconEntry> {
        self.entries.get(&normalize_name(name))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &LexiconEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Longest entry name, in words.
    pub(crate) fn max_words(&self) -> usize {
        self.entries.keys().map(|k| k.split(' ').count()).max().unwrap_or(0)
    }

    /// Parses the JSON lexicon format:
    ///
    /// ```json
    /// { "most": {"trapezoid": [0.7, 0.8, 0.9, 1]},
    ///   "a few": {"interval": "(0, 0.2]"},
    ///   "around ten": {"trapezoid": [8, 9, 11, 12], "kind": "absolute", "symmetric": true},
    ///   "every": {"classical": "A"} }
    /// ```
    pub fn from_json(text: &str) -> Result<Self, DslError> {
        let value: Value = serde_json::from_str(text).map_err(|e| DslError::Lexicon(e.to_string()))?;
        let Value::Object(map) = value else {
            return Err(DslError::Lexicon("top level must be an object".into()));
        };
        let mut lexicon = Lexicon::new();
        for (name, spec) in map {
            let entry = parse_entry(&spec).map_err(|m| DslError::Lexicon(format!("entry `{name}`: {m}")))?;
            if normalize_name(&name).is_empty() {
                return Err(DslError::Lexicon("empty quantifier name".into()));
            }
            lexicon.insert(&name, entry);
        }
        Ok(lexicon)
    }
}

fn number(v: &Value) -> Result<f64, String> {
    v.as_f64().ok_or_else(|| format!("expected a number, got {v}"))
}

fn parse_entry(spec: &Value) -> Result<LexiconEntry, String> {
    let Value::Object(obj) = spec else {
        return Err("entry must be an object".into());
    };
    for key in obj.keys() {
        if !matches!(key.as_str(), "trapezoid" | "interval" | "classical" | "kind" | "symmetric") {
            return Err(format!("unknown field `{key}`"));
        }
    }
    let scale = match obj.get("kind").map(|v| v.as_str()) {
        None => Scale::Proportional,
        Some(Some("proportional")) => Scale::Proportional,
        Some(Some("absolute")) => Scale::Absolute,
        Some(_) => return Err("`kind` must be \"absolute\" or \"proportional\"".into()),
    };
    let symmetric = match obj.get("symmetric") {
        None => false,
        Some(v) => v.as_bool().ok_or("`symmetric` must be a boolean")?,
    };
    let shapes: Vec<&str> =
        ["trapezoid", "interval", "classical"].into_iter().filter(|k| obj.contains_key(*k)).collect();
    if shapes.len() != 1 {
        return Err("exactly one of `trapezoid`, `interval`, `classical` is required".into());
    }
    let kind = match shapes[0] {
        "trapezoid" => {
            let arr = obj["trapezoid"].as_array().ok_or("`trapezoid` must be an array")?;
            if arr.len() != 4 {
                return Err("`trapezoid` needs four points".into());
            }
            let p: Vec<f64> = arr.iter().map(number).collect::<Result<_, _>>()?;
            let t = TrapezoidalQuantifier::new(p[0], p[1], p[2], p[3]).map_err(|e| e.to_string())?;
            QuantifierKind::Fuzzy(t)
        }
        "interval" => {
            let iv = match &obj["interval"] {
                Value::String(s) => s.parse::<Interval>().map_err(|e| e.to_string())?,
                Value::Array(arr) if arr.len() == 2 => {
                    Interval::closed(number(&arr[0])?, number(&arr[1])?).map_err(|e| e.to_string())?
                }
                _ => return Err("`interval` must be [l, u] or a string like \"(0, 1]\"".into()),
            };
            if iv.is_point() {
                QuantifierKind::Precise(iv.lower())
            } else {
                QuantifierKind::Imprecise(iv)
            }
        }
        _ => {
            let s = obj["classical"].as_str().ok_or("`classical` must be a string")?;
            let mut chars = s.trim().chars();
            match (chars.next().and_then(Letter::from_char), chars.next()) {
                (Some(l), None) => QuantifierKind::Classical(l),
                _ => return Err("`classical` must be one of A, E, I, O".into()),
            }
        }
    };
    if scale == Scale::Proportional && !kind.is_proportion() {
        return Err("proportional quantifiers must lie inside [0, 1]".into());
    }
    Ok(LexiconEntry { kind, scale, symmetric })
}

/// Reads and validates a lexicon file.
pub fn load_lexicon(path: impl AsRef<Path>) -> Result<Lexicon, DslError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| DslError::Io { path: path.display().to_string(), message: e.to_string() })?;
    Lexicon::from_json(&text)
}
