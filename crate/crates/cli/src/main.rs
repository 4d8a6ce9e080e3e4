//! `syllogist`: quantified syllogistic inference from the command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 semantic error
//! (unsatisfiable premises, violated constraint, inconsistent bounds).

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use syllogist::aristotle::Mood;
use syllogist::compat::{self, ConverseGrid, PatternId};
use syllogist::dsl::{self, Lexicon, Statement, Syllogism};
use syllogist::dubois::{self, DuboisError, IntersectionPattern, Version};
use syllogist::interval::{fmt_num, Interval};
use syllogist::oracle::{self, OracleError, RangeProblem, Rational, MOOD_BUDGET, RANGE_BUDGET};
use syllogist::zadeh::{self, FuzzyData, TNorm, ZadehError, ZadehOptions};

#[derive(Parser, Debug)]
#[command(name = "syllogist", version, about = "Crisp, interval and fuzzy quantified syllogisms")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RunConfig {
    /// Quantifier lexicon (JSON).
    #[arg(long, global = true, env = "SYLLOGIST_LEXICON")]
    lexicon: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Oracle model-size bound N (defaults: 8 for moods, 60 for ranges).
    #[arg(long, global = true)]
    max: Option<u32>,
    /// Grid step for converse sweeps.
    #[arg(long, global = true, default_value_t = 0.01)]
    grid_step: f64,
    /// Print `>=` instead of `≥`.
    #[arg(long, global = true)]
    ascii: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derive the conclusion of a syllogism file.
    Infer(InferArgs),
    /// Decide a classical mood by finite-model enumeration.
    CheckMood {
        /// Mood id such as AAA-1.
        mood: String,
    },
    /// Pattern/mood compatibility tables.
    Compat {
        /// Print the tables (the default).
        #[arg(long)]
        tables: bool,
    },
    /// Truth degrees of statements against fuzzy-set data.
    Eval {
        /// Statements, one per line.
        statements: PathBuf,
        /// Fuzzy-set data (JSON).
        #[arg(long)]
        data: PathBuf,
        #[arg(long, default_value = "min")]
        tnorm: String,
    },
    /// Exact attained range of a proportion under proportion constraints.
    OracleRange {
        /// Constraints file (JSON).
        constraints: PathBuf,
    },
    /// Check a lexicon file and list its entries.
    LexiconValidate {
        /// Lexicon file; defaults to --lexicon.
        path: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct InferArgs {
    /// Syllogism file.
    file: PathBuf,
    /// Pattern; overrides the file's `pattern:` line.
    #[arg(long)]
    pattern: Option<String>,
    /// general or particular; overrides the file's `version:` line.
    #[arg(long)]
    version: Option<String>,
    /// Take "all Bs are As" as given for multiplicative chaining.
    #[arg(long)]
    assume_inclusion: bool,
    /// Fuzzy-set data used to verify chaining constraints.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Ask antecedent disjunction for a point value.
    #[arg(long)]
    point: bool,
    /// Mix ratio |A| / (|A| + |B|) for a point antecedent disjunction.
    #[arg(long)]
    mix: Option<f64>,
}

/// A failed command: message plus exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Display) -> Self {
        Failure { code: 1, message: message.to_string() }
    }

    fn semantic(message: impl Display) -> Self {
        Failure { code: 2, message: message.to_string() }
    }
}

impl From<dsl::DslError> for Failure {
    fn from(e: dsl::DslError) -> Self {
        Failure::usage(e)
    }
}

impl From<DuboisError> for Failure {
    fn from(e: DuboisError) -> Self {
        match e {
            DuboisError::Scheme(_) | DuboisError::NotProportion(_) => Failure::usage(e),
            DuboisError::Oracle(OracleError::Format(_)) | DuboisError::Oracle(OracleError::BadSetExpr(_)) => {
                Failure::usage(e)
            }
            _ => Failure::semantic(e),
        }
    }
}

impl From<ZadehError> for Failure {
    fn from(e: ZadehError) -> Self {
        match e {
            ZadehError::Scheme(_) | ZadehError::Data(_) | ZadehError::InvalidMix(_) | ZadehError::MissingMixRatio => {
                Failure::usage(e)
            }
            _ => Failure::semantic(e),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Unsatisfiable(_) | OracleError::UndefinedProportion => Failure::semantic(e),
            _ => Failure::usage(e),
        }
    }
}

/// Command output: the text and JSON renderings of the same result.
struct Output {
    text: String,
    json: Value,
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.config.format {
                Format::Text => emit(&out.text),
                Format::Json => {
                    emit(&format!("{}\n", serde_json::to_string_pretty(&tidy(out.json)).expect("serializable")))
                }
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            match cli.config.format {
                Format::Text => eprintln!("error: {}", f.message),
                Format::Json => emit(&format!("{}\n", json!({ "error": f.message, "exit_code": f.code }))),
            }
            ExitCode::from(f.code)
        }
    }
}

/// Rounds floats to 12 decimals so binary noise does not leak into JSON.
fn tidy(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            json!((x * 1e12).round() / 1e12)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(tidy).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, tidy(v))).collect()),
        other => other,
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let config = &cli.config;
    if !(config.grid_step > 0.0 && config.grid_step <= 0.5) {
        return Err(Failure::usage(format!("--grid-step must be in (0, 0.5], got {}", config.grid_step)));
    }
    match &cli.command {
        Command::Infer(args) => cmd_infer(config, args),
        Command::CheckMood { mood } => cmd_check_mood(config, mood),
        Command::Compat { .. } => Ok(cmd_compat(config)),
        Command::Eval { statements, data, tnorm } => cmd_eval(config, statements, data, tnorm),
        Command::OracleRange { constraints } => cmd_oracle_range(config, constraints),
        Command::LexiconValidate { path } => cmd_lexicon_validate(config, path.as_deref()),
    }
}

fn load_lexicon(config: &RunConfig) -> Result<Lexicon, Failure> {
    match &config.lexicon {
        Some(path) => Ok(dsl::load_lexicon(path)?),
        None => Ok(Lexicon::new()),
    }
}

fn render(config: &RunConfig, s: &Statement) -> String {
    if config.ascii {
        s.render_ascii()
    } else {
        s.to_string()
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

/// Version given on the command line, in the file, or implied by the premise count.
fn resolve_version(pattern: PatternId, given: Option<Version>, premises: usize) -> Result<Version, Failure> {
    if let Some(v) = given {
        return Ok(v);
    }
    [Version::General, Version::Particular]
        .into_iter()
        .find(|v| pattern.premise_counts(Some(*v)).contains(&premises))
        .ok_or_else(|| {
            Failure::usage(format!(
                "pattern {pattern} takes {:?} premises, found {premises}",
                pattern.premise_counts(None)
            ))
        })
}

fn cmd_infer(config: &RunConfig, args: &InferArgs) -> Result<Output, Failure> {
    let lexicon = load_lexicon(config)?;
    let syllogism: Syllogism = dsl::parse_file(&args.file, &lexicon)?;
    let pattern = match &args.pattern {
        Some(p) => p.parse::<PatternId>().map_err(Failure::usage)?,
        None => {
            syllogism.pattern.ok_or_else(|| Failure::usage("no pattern: pass --pattern or add a `pattern:` line"))?
        }
    };
    let version = match &args.version {
        Some(v) => Some(v.parse::<Version>().map_err(Failure::usage)?),
        None => syllogism.version,
    };
    let counts = pattern.premise_counts(version);
    if !counts.contains(&syllogism.premises.len()) {
        return Err(Failure::usage(format!(
            "pattern {pattern} expects {counts:?} premises, found {}",
            syllogism.premises.len()
        )));
    }
    let max = config.max.unwrap_or(RANGE_BUDGET);
    let (statement, mut json) = match pattern {
        PatternId::DuboisI => {
            let c = dubois::infer_pattern1(&syllogism)?;
            (
                c.statement,
                json!({ "quantifier": c.quantifier, "support": c.quantifier.support(), "kernel": c.quantifier.kernel() }),
            )
        }
        PatternId::DuboisII | PatternId::DuboisIII => {
            let which = if pattern == PatternId::DuboisII { IntersectionPattern::II } else { IntersectionPattern::III };
            let version = resolve_version(pattern, version, syllogism.premises.len())?;
            let c = dubois::infer_pattern23(&syllogism, which, version, max)?;
            (
                c.statement,
                json!({
                    "note": format!("range attained over models with at most {max} elements"),
                    "version": version.to_string(),
                    "oracle_max": max,
                    "quantifier": c.quantifier,
                    "support": c.quantifier.support(),
                    "kernel": c.quantifier.kernel(),
                }),
            )
        }
        other => {
            let zp = other.zadeh().expect("remaining patterns are fuzzy-arithmetic ones");
            let data = args.data.as_ref().map(FuzzyData::load).transpose()?;
            let options = ZadehOptions {
                assume_inclusion: args.assume_inclusion,
                data,
                mix: args.mix,
                point: args.point,
                ..ZadehOptions::default()
            };
            let c = zadeh::infer_zadeh(&syllogism, zp, &options)?;
            let (support, kernel) = c.value.defuzz_bounds();
            let levels: Vec<Value> =
                c.value.core.levels().iter().map(|l| json!({ "alpha": l.alpha, "cut": l.cut })).collect();
            (
                c.statement,
                json!({
                    "mode": c.value.mode,
                    "support": support,
                    "kernel": kernel,
                    "levels": levels,
                    "note": c.note,
                }),
            )
        }
    };
    let line = render(config, &statement);
    let mut text = format!("{line}\n");
    if let Some(note) = json.get("note").and_then(Value::as_str) {
        text.push_str(&format!("note: {note}\n"));
    }
    if let Some(expected) = &syllogism.conclusion {
        text.push_str(&format!("expected: {}\n", render(config, expected)));
    }
    let obj = json.as_object_mut().expect("object");
    obj.insert("pattern".into(), json!(pattern.to_string()));
    obj.insert("conclusion".into(), json!(line));
    if let Some(expected) = &syllogism.conclusion {
        obj.insert("expected".into(), json!(render(config, expected)));
    }
    Ok(Output { text, json })
}

fn cmd_check_mood(config: &RunConfig, mood: &str) -> Result<Output, Failure> {
    let mood: Mood = mood.parse().map_err(Failure::usage)?;
    let max = config.max.unwrap_or(MOOD_BUDGET);
    let check = oracle::mood_valid(&mood, max);
    let mut text = if check.valid {
        format!("{mood}: valid (no counterexample with at most {max} elements)\n")
    } else {
        format!("{mood}: invalid\n")
    };
    if let Some(m) = &check.counterexample {
        text.push_str(&format!("counterexample: {m}\n"));
    }
    let json = json!({
        "mood": mood.to_string(),
        "valid": check.valid,
        "max": max,
        "counterexample": check.counterexample.map(|m| m.to_string()),
    });
    Ok(Output { text, json })
}

fn cmd_compat(config: &RunConfig) -> Output {
    let tables = compat::reproduce_tables(&ConverseGrid { step: config.grid_step });
    Output { text: tables.to_string(), json: serde_json::to_value(&tables).expect("serializable") }
}

fn cmd_eval(config: &RunConfig, statements: &Path, data: &Path, tnorm: &str) -> Result<Output, Failure> {
    let lexicon = load_lexicon(config)?;
    let tnorm: TNorm = tnorm.parse().map_err(Failure::usage)?;
    let data = FuzzyData::load(data)?;
    let text_in = read_text(statements)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for (i, raw) in text_in.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let s = dsl::parse_statement(line, &lexicon).map_err(|e| Failure::usage(format!("line {}: {e}", i + 1)))?;
        let truth = data.evaluate(&s, tnorm)?;
        text.push_str(&format!("{:<8} {}\n", fmt_num(truth), render(config, &s)));
        rows.push(json!({ "statement": render(config, &s), "truth": truth }));
    }
    if rows.is_empty() {
        return Err(Failure::usage(format!("{} contains no statements", statements.display())));
    }
    Ok(Output { text, json: json!({ "tnorm": tnorm.to_string(), "results": rows }) })
}

fn rational_text(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn cmd_oracle_range(config: &RunConfig, path: &Path) -> Result<Output, Failure> {
    let problem = RangeProblem::from_json(&read_text(path)?)?;
    let max = config.max.or(problem.total_max).unwrap_or(RANGE_BUDGET);
    let range = oracle::attained_range(&problem.constraints, &problem.target, max)?;
    let interval: Interval = range.to_interval();
    let text = format!(
        "{interval}\nexact: [{}, {}] over models with at most {max} elements\nmin at: {}\nmax at: {}\n",
        rational_text(&range.min),
        rational_text(&range.max),
        range.min_witness,
        range.max_witness
    );
    let json = json!({
        "interval": interval,
        "min": rational_text(&range.min),
        "max": rational_text(&range.max),
        "oracle_max": max,
        "min_witness": range.min_witness.to_string(),
        "max_witness": range.max_witness.to_string(),
    });
    Ok(Output { text, json })
}

fn cmd_lexicon_validate(config: &RunConfig, path: Option<&Path>) -> Result<Output, Failure> {
    let path =
        path.or(config.lexicon.as_deref()).ok_or_else(|| Failure::usage("no lexicon: pass a path or --lexicon"))?;
    let lexicon = dsl::load_lexicon(path)?;
    let mut entries: Vec<_> = lexicon.iter().collect();
    entries.sort_by(|a, b| a.0.cmp(b.0));
    let mut text = format!("{}: {} entries\n", path.display(), entries.len());
    let mut rows = Vec::new();
    for (name, entry) in entries {
        let sym = if entry.symmetric { " (symmetric)" } else { "" };
        text.push_str(&format!("  {name}: {}{sym}\n", dsl::QuantifierTerm::Literal(entry.kind).label()));
        rows.push(json!({ "name": name, "entry": entry }));
    }
    Ok(Output { text, json: json!({ "path": path.display().to_string(), "entries": rows }) })
}
