//! `regulus` — regular languages four ways, from the command line.
//!
//! Every subcommand computes over one of the four sites (expressions and
//! their derivatives, finite automata, finite monoids, profinite clopen
//! recognizers) and prints text, JSON, or DOT. Exit codes are wired for
//! scripting: 0 success, 1 domain error (bad input), 2 verification
//! failure (an equivalence or bridge clause that turned out false).

mod render;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use regulus::automata::minimal_automaton;
use regulus::bridge::{four_witnesses, verify_bridge_seeded, DEFAULT_SAMPLE_SEED};
use regulus::monoid::{syntactic_monoid, transition_monoid_capped, MonoidRecognizer};
use regulus::profinite::{
    clopen_pullback, separate, ClopenRecognizer, OmegaTerm, ProfiniteSystem, Separation,
};
use regulus::sigma::derivative_sigma_set;
use regulus::{Alphabet, Equivalence, Language, OrbitResult, PointedAutomaton, SigmaSet, Word};

#[derive(Parser)]
#[command(
    name = "regulus",
    version,
    about = "Regular languages four ways: derivatives, automata, monoids, and clopen recognizers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Alphabet symbols in order, e.g. `ab` (expression commands)
    #[arg(long, global = true)]
    alphabet: Option<String>,

    /// State budget for orbit and monoid closures
    #[arg(long, global = true, default_value_t = 10_000)]
    bound: usize,

    /// Maximum length of enumerated witness words
    #[arg(long = "sample-len", global = true, default_value_t = 6)]
    sample_len: usize,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the randomized part of membership samples
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Word derivative of an expression, in normal form
    Derive { expr: String, word: String },
    /// Membership of a word in an expression's language
    Member { expr: String, word: String },
    /// Equivalence of two expressions; on failure prints the
    /// shortlex-least separating word and exits 2
    Equiv { left: String, right: String },
    /// Minimal automaton of an expression
    Min { expr: String },
    /// Derivative orbit of an expression: its distinct left quotients
    Orbit { expr: String },
    /// Acceptance outputs along the run of a word, one per prefix
    Moore { expr: String, word: String },
    /// Syntactic monoid of an expression, with its accepting subset
    Synt { expr: String },
    /// Transition monoid of a Σ-set or automaton JSON file
    Tmon { file: PathBuf },
    /// Whether a monoid-recognizer JSON file recognizes an expression
    Recognize { file: PathBuf, expr: String },
    /// Evaluate an ω-term (e.g. `(ab)^wa`) in every node of a profinite
    /// system JSON file
    #[command(name = "profinite-eval")]
    ProfiniteEval { file: PathBuf, term: String },
    /// Pull a clopen-recognizer JSON file back to an expression
    Pullback { file: PathBuf },
    /// Separate two expressions by a clopen recognizer, or report them equal
    Separate { left: String, right: String },
    /// Build all four characterizations of an expression's language and
    /// cross-verify them; exits 2 if any clause fails
    Bridge { expr: String },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

/// Settings shared by every subcommand, validated once.
struct Config {
    alphabet: Option<Alphabet>,
    bound: usize,
    sample_len: usize,
    format: Format,
    seed: u64,
}

impl Config {
    fn from_cli(cli: &Cli) -> Result<Config, String> {
        if cli.bound == 0 {
            return Err("--bound must be positive".into());
        }
        if cli.sample_len == 0 {
            return Err("--sample-len must be positive".into());
        }
        let alphabet = match &cli.alphabet {
            Some(text) => {
                let alphabet: Alphabet =
                    text.parse().map_err(|e| format!("bad alphabet: {e}"))?;
                if alphabet.is_empty() {
                    return Err("--alphabet must be nonempty".into());
                }
                Some(alphabet)
            }
            None => None,
        };
        Ok(Config {
            alphabet,
            bound: cli.bound,
            sample_len: cli.sample_len,
            format: cli.format,
            seed: cli.seed.unwrap_or(DEFAULT_SAMPLE_SEED),
        })
    }

    fn require_alphabet(&self) -> Result<&Alphabet, String> {
        self.alphabet
            .as_ref()
            .ok_or_else(|| "this command needs --alphabet".into())
    }

    /// File-based commands carry their alphabet in the file; an explicit
    /// `--alphabet` must agree with it.
    fn check_file_alphabet(&self, from_file: &Alphabet) -> Result<(), String> {
        match &self.alphabet {
            Some(given) if given != from_file => Err(format!(
                "--alphabet {} differs from the file's alphabet {}",
                given, from_file
            )),
            _ => Ok(()),
        }
    }
}

/// A command's printable result: `Failed` still prints, but exits 2.
enum Outcome {
    Ok(String),
    Failed(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(error) => {
            let code = match error.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = error.print();
            return ExitCode::from(code);
        }
    };
    let out = cli.out.clone();
    let outcome = Config::from_cli(&cli).and_then(|config| run(&cli.command, &config));
    let (output, code) = match outcome {
        Ok(Outcome::Ok(output)) => (output, 0),
        Ok(Outcome::Failed(output)) => (output, 2),
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(1);
        }
    };
    match out {
        Some(path) => {
            if let Err(error) = fs::write(&path, output) {
                eprintln!("error: cannot write {}: {error}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{output}"),
    }
    ExitCode::from(code)
}

fn run(command: &Command, config: &Config) -> Result<Outcome, String> {
    match command {
        Command::Derive { expr, word } => cmd_derive(config, expr, word),
        Command::Member { expr, word } => cmd_member(config, expr, word),
        Command::Equiv { left, right } => cmd_equiv(config, left, right),
        Command::Min { expr } => cmd_min(config, expr),
        Command::Orbit { expr } => cmd_orbit(config, expr),
        Command::Moore { expr, word } => cmd_moore(config, expr, word),
        Command::Synt { expr } => cmd_synt(config, expr),
        Command::Tmon { file } => cmd_tmon(config, file),
        Command::Recognize { file, expr } => cmd_recognize(config, file, expr),
        Command::ProfiniteEval { file, term } => cmd_profinite_eval(config, file, term),
        Command::Pullback { file } => cmd_pullback(config, file),
        Command::Separate { left, right } => cmd_separate(config, left, right),
        Command::Bridge { expr } => cmd_bridge(config, expr),
    }
}

fn cmd_derive(config: &Config, expr: &str, word: &str) -> Result<Outcome, String> {
    let alphabet = config.require_alphabet()?;
    let mut language = parse_language(expr, alphabet)?;
    let word = parse_word(word, alphabet)?;
    for &symbol in word.symbols() {
        language = language.derivative(symbol).map_err(|e| e.to_string())?;
    }
    let output = match config.format {
        Format::Text => format!("{language}\n"),
        Format::Json => to_json(&language)?,
        Format::Dot => return Err(no_dot("derive")),
    };
    Ok(Outcome::Ok(output))
}

fn cmd_member(config: &Config, expr: &str, word: &str) -> Result<Outcome, String> {
    let alphabet = config.require_alphabet()?;
    let language = parse_language(expr, alphabet)?;
    let word = parse_word(word, alphabet)?;
    let member = language.contains(&word).map_err(|e| e.to_string())?;
    let output = match config.format {
        Format::Text => format!("{member}\n"),
        Format::Json => to_json(&json!({ "member": member }))?,
        Format::Dot => return Err(no_dot("member")),
    };
    Ok(Outcome::Ok(output))
}

fn cmd_equiv(config: &Config, left: &str, right: &str) -> Result<Outcome, String> {
    let alphabet = config.require_alphabet()?;
    let left = minimal_automaton(&parse_language(left, alphabet)?);
    let right = minimal_automaton(&parse_language(right, alphabet)?);
    match left.equivalent(&right).map_err(|e| e.to_string())? {
        Equivalence::Equivalent => {
            let output = match config.format {
                Format::Text => "equivalent\n".to_string(),
                Format::Json => to_json(&json!({ "equivalent": true }))?,
                Format::Dot => return Err(no_dot("equiv")),
            };
            Ok(Outcome::Ok(output))
        }
        Equivalence::Inequivalent(word) => {
            let output = match config.format {
                Format::Text => format!("inequivalent\ncounterexample: {word}\n"),
                Format::Json => {
                    to_json(&json!({ "equivalent": false, "counterexample": word }))?
                }
                Format::Dot => return Err(no_dot("equiv")),
            };
            Ok(Outcome::Failed(output))
        }
    }
}

fn cmd_min(config: &Config, expr: &str) -> Result<Outcome, String> {
    let alphabet = config.require_alphabet()?;
    let automaton = minimal_automaton(&parse_language(expr, alphabet)?);
    let output = match config.format {
        Format::Text => render::automaton_text(&automaton),
        Format::Json => to_json(&automaton)?,
        Format::Dot => render::automaton_dot(&automaton),
    };
    Ok(Outcome::Ok(output))
}

fn cmd_orbit(config: &Config, expr: &str) -> Result<Outcome, String> {
    let alphabet = config.require_alphabet()?;
    let language = parse_language(expr, alphabet)?;
    let derivatives = derivative_sigma_set(&language);
    match derivatives.orbit(&language, config.bound) {
        OrbitResult::Finite(classes) => {
            let output = match config.format {
                Format::Text => {
                    let mut out = format!("classes: {}\n", classes.len());
                    for (index, class) in classes.iter().enumerate() {
                        out.push_str(&format!("{index}: {class}\n"));
                    }
                    out
                }
                Format::Json => {
                    let representatives: Vec<String> =
                        classes.iter().map(Language::to_string).collect();
                    to_json(&json!({
                        "classes": classes.len(),
                        "representatives": representatives,
                    }))?
                }
                Format::Dot => return Err(no_dot("orbit")),
            };
            Ok(Outcome::Ok(output))
        }
        OrbitResult::ExceededBound(seen) => {
            let output = match config.format {
                Format::Text => format!(
                    "bound {} exceeded: {seen} distinct derivatives reached\n",
                    config.bound
                ),
                Format::Json => to_json(&json!({
                    "exceeded_bound": config.bound,
                    "distinct_reached": seen,
                }))?,
                Format::Dot => return Err(no_dot("orbit")),
            };
            Ok(Outcome::Failed(output))
        }
    }
}

fn cmd_moore(config: &Config, expr: &str, word: &str) -> Result<Outcome, String> {
    let alphabet = config.require_alphabet()?;
    let mut language = parse_language(expr, alphabet)?;
    let word = parse_word(word, alphabet)?;
    let mut prefix = Word::epsilon();
    let mut trace = vec![(prefix.clone(), language.nullable())];
    for &symbol in word.symbols() {
        prefix = prefix.extended(symbol);
        language = language.derivative(symbol).map_err(|e| e.to_string())?;
        trace.push((prefix.clone(), language.nullable()));
    }
    let output = match config.format {
        Format::Text => trace
            .iter()
            .map(|(prefix, output)| format!("{prefix}: {}\n", u8::from(*output)))
            .collect(),
        Format::Json => {
            let rows: Vec<_> = trace
                .iter()
                .map(|(prefix, output)| json!({ "prefix": prefix, "output": output }))
                .collect();
            to_json(&json!({ "trace": rows }))?
        }
        Format::Dot => return Err(no_dot("moore")),
    };
    Ok(Outcome::Ok(output))
}

fn cmd_synt(config: &Config, expr: &str) -> Result<Outcome, String> {
    let alphabet = config.require_alphabet()?;
    let recognizer = syntactic_monoid(&parse_language(expr, alphabet)?);
    let output = match config.format {
        Format::Text => {
            let names: Vec<&str> = recognizer
                .accepting()
                .iter()
                .map(|&m| recognizer.sigma_monoid().element_name(m))
                .collect();
            format!(
                "{}accepting: {{{}}}\n",
                render::monoid_text(recognizer.sigma_monoid()),
                names.join(", ")
            )
        }
        Format::Json => to_json(&recognizer)?,
        Format::Dot => render::cayley_dot(recognizer.sigma_monoid()),
    };
    Ok(Outcome::Ok(output))
}

fn cmd_tmon(config: &Config, file: &PathBuf) -> Result<Outcome, String> {
    let carrier = read_carrier(file)?;
    config.check_file_alphabet(carrier.alphabet())?;
    match transition_monoid_capped(&carrier, config.bound) {
        Some(monoid) => {
            let output = match config.format {
                Format::Text => render::monoid_text(&monoid),
                Format::Json => to_json(&monoid)?,
                Format::Dot => render::cayley_dot(&monoid),
            };
            Ok(Outcome::Ok(output))
        }
        None => {
            let output = match config.format {
                Format::Text => format!(
                    "bound {} exceeded: the transition monoid has more elements\n",
                    config.bound
                ),
                Format::Json => to_json(&json!({ "exceeded_bound": config.bound }))?,
                Format::Dot => return Err(no_dot("an over-budget tmon")),
            };
            Ok(Outcome::Failed(output))
        }
    }
}

fn cmd_recognize(config: &Config, file: &PathBuf, expr: &str) -> Result<Outcome, String> {
    let recognizer: MonoidRecognizer = read_json(file)?;
    let alphabet = recognizer.sigma_monoid().alphabet().clone();
    config.check_file_alphabet(&alphabet)?;
    let language = parse_language(expr, &alphabet)?;
    match recognizer.recognizes(&language).map_err(|e| e.to_string())? {
        Equivalence::Equivalent => {
            let output = match config.format {
                Format::Text => "recognizes\n".to_string(),
                Format::Json => to_json(&json!({ "recognizes": true }))?,
                Format::Dot => return Err(no_dot("recognize")),
            };
            Ok(Outcome::Ok(output))
        }
        Equivalence::Inequivalent(word) => {
            let output = match config.format {
                Format::Text => format!("does not recognize\ncounterexample: {word}\n"),
                Format::Json => {
                    to_json(&json!({ "recognizes": false, "counterexample": word }))?
                }
                Format::Dot => return Err(no_dot("recognize")),
            };
            Ok(Outcome::Failed(output))
        }
    }
}

fn cmd_profinite_eval(config: &Config, file: &PathBuf, term: &str) -> Result<Outcome, String> {
    let system: ProfiniteSystem = read_json(file)?;
    let nodes = system.nodes();
    let Some(first) = nodes.first() else {
        return Err("the system has no nodes".into());
    };
    config.check_file_alphabet(first.alphabet())?;
    let term = OmegaTerm::parse(term, first.alphabet()).map_err(|e| e.to_string())?;
    let approx = system.eval(&term).map_err(|e| e.to_string())?;
    let output = match config.format {
        Format::Text => nodes
            .iter()
            .enumerate()
            .map(|(i, node)| {
                let element = approx.component(i);
                format!("node {i}: {}  (element {element})\n", node.element_name(element))
            })
            .collect(),
        Format::Json => to_json(&approx)?,
        Format::Dot => return Err(no_dot("profinite-eval")),
    };
    Ok(Outcome::Ok(output))
}

fn cmd_pullback(config: &Config, file: &PathBuf) -> Result<Outcome, String> {
    let clopen: ClopenRecognizer = read_json(file)?;
    config.check_file_alphabet(clopen.node().alphabet())?;
    let language = clopen_pullback(&clopen);
    let output = match config.format {
        Format::Text => format!("{language}\n"),
        Format::Json => to_json(&language)?,
        Format::Dot => return Err(no_dot("pullback")),
    };
    Ok(Outcome::Ok(output))
}

fn cmd_separate(config: &Config, left: &str, right: &str) -> Result<Outcome, String> {
    let alphabet = config.require_alphabet()?;
    let left = parse_language(left, alphabet)?;
    let right = parse_language(right, alphabet)?;
    let separation = separate(&left, &right).map_err(|e| e.to_string())?;
    let output = match (&separation, config.format) {
        (Separation::Equal, Format::Text) => "equal\n".to_string(),
        (Separation::Separated(clopen), Format::Text) => {
            let witnesses: Vec<String> = alphabet
                .words_up_to(config.sample_len)
                .into_iter()
                .filter(|word| {
                    clopen
                        .contains(word)
                        .expect("pullback words are over the clopen's alphabet")
                })
                .take(10)
                .map(|word| word.to_string())
                .collect();
            let names: Vec<&str> = clopen
                .subset()
                .iter()
                .map(|&m| clopen.node().element_name(m))
                .collect();
            format!(
                "separated\nnode elements: {}\nsubset: {{{}}}\nwitnesses (length ≤ {}): {}\n",
                clopen.node().monoid().size(),
                names.join(", "),
                config.sample_len,
                if witnesses.is_empty() {
                    "none".to_string()
                } else {
                    witnesses.join(", ")
                }
            )
        }
        (_, Format::Json) => to_json(&separation)?,
        (_, Format::Dot) => return Err(no_dot("separate")),
    };
    Ok(Outcome::Ok(output))
}

fn cmd_bridge(config: &Config, expr: &str) -> Result<Outcome, String> {
    let alphabet = config.require_alphabet()?;
    let language = parse_language(expr, alphabet)?;
    let witnesses = four_witnesses(&language);
    let report = verify_bridge_seeded(&witnesses, &language, config.seed);
    let output = match config.format {
        Format::Text => report.to_string(),
        Format::Json => to_json(&report)?,
        Format::Dot => return Err(no_dot("bridge")),
    };
    if report.passed() {
        Ok(Outcome::Ok(output))
    } else {
        Ok(Outcome::Failed(output))
    }
}

fn parse_language(text: &str, alphabet: &Alphabet) -> Result<Language, String> {
    Language::parse(text, alphabet).map_err(|e| format!("bad expression {text:?}: {e}"))
}

fn parse_word(text: &str, alphabet: &Alphabet) -> Result<Word, String> {
    Word::parse(text, alphabet).map_err(|e| format!("bad word {text:?}: {e}"))
}

/// A Σ-set, read either directly or as the carrier of a pointed automaton.
fn read_carrier(file: &PathBuf) -> Result<SigmaSet, String> {
    let text =
        fs::read_to_string(file).map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    if let Ok(carrier) = serde_json::from_str::<SigmaSet>(&text) {
        return Ok(carrier);
    }
    serde_json::from_str::<PointedAutomaton>(&text)
        .map(|automaton| automaton.carrier().clone())
        .map_err(|e| {
            format!(
                "{} is neither a Σ-set nor an automaton: {e}",
                file.display()
            )
        })
}

fn read_json<T: serde::de::DeserializeOwned>(file: &PathBuf) -> Result<T, String> {
    let text =
        fs::read_to_string(file).map_err(|e| format!("cannot read {}: {e}", file.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("cannot decode {}: {e}", file.display()))
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string_pretty(value)
        .map(|json| json + "\n")
        .map_err(|e| e.to_string())
}

fn no_dot(command: &str) -> String {
    format!("--format dot does not apply to {command}")
}
