//! Line-oriented text format for parity automata.
//!
//! ```text
//! alphabet: a b
//! states: 3
//! mode: deterministic
//! start: 0
//! color: 0 1
//! trans: 0 {a,b} 1
//! ```
//!
//! `#` starts a comment. Every `(state, letter)` pair needs an explicit
//! `trans` line; letters list propositions in any order.

use std::fmt::{self, Write as _};

use lasso_density_core::{Alphabet, AlphabetError, AutomatonBuilder, AutomatonError, Mode, ParityAutomaton};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatErrorKind {
    #[error("expected `key: value`")]
    MissingColon,
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("`{0}` given twice")]
    Repeated(&'static str),
    #[error("`{0}` must come before any color, start or trans line")]
    OutOfOrder(&'static str),
    #[error("missing `{0}` line")]
    Missing(&'static str),
    #[error("expected a natural number, got `{0}`")]
    BadNumber(String),
    #[error("unknown mode `{0}` (expected deterministic, unambiguous or nondeterministic)")]
    BadMode(String),
    #[error("expected `{0}`")]
    Syntax(&'static str),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct FormatError {
    /// 1-based; absent for whole-file validation errors.
    pub line: Option<usize>,
    pub kind: FormatErrorKind,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Send missing transitions to a fresh rejecting sink instead of failing.
    pub complete_with_sink: bool,
}

struct Header {
    alphabet: Option<Alphabet>,
    states: Option<usize>,
    mode: Option<Mode>,
}

fn number(s: &str) -> Result<usize, FormatErrorKind> {
    s.parse().map_err(|_| FormatErrorKind::BadNumber(s.to_string()))
}

fn parse_mode(s: &str) -> Result<Mode, FormatErrorKind> {
    match s {
        "deterministic" => Ok(Mode::Deterministic),
        "unambiguous" => Ok(Mode::Unambiguous),
        "nondeterministic" => Ok(Mode::Nondeterministic),
        _ => Err(FormatErrorKind::BadMode(s.to_string())),
    }
}

/// Splits `<src> {letter} <dst>`.
fn split_trans(value: &str) -> Result<(&str, &str, &str), FormatErrorKind> {
    let syntax = FormatErrorKind::Syntax("trans: <src> {p,q,...} <dst>");
    let open = value.find('{').ok_or_else(|| syntax.clone())?;
    let close = value[open..].find('}').ok_or_else(|| syntax.clone())? + open;
    let src = value[..open].trim();
    let dst = value[close + 1..].trim();
    if src.is_empty() || dst.is_empty() || src.contains(char::is_whitespace) || dst.contains(char::is_whitespace) {
        return Err(syntax);
    }
    Ok((src, &value[open..=close], dst))
}

pub fn parse_automaton(text: &str, options: ParseOptions) -> Result<ParityAutomaton, FormatError> {
    let mut header = Header {
        alphabet: None,
        states: None,
        mode: None,
    };
    let mut builder: Option<AutomatonBuilder> = None;
    for (i, raw) in text.lines().enumerate() {
        let at = |kind: FormatErrorKind| FormatError { line: Some(i + 1), kind };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once(':').ok_or_else(|| at(FormatErrorKind::MissingColon))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "alphabet" | "states" | "mode" => {
                let name: &'static str = match key {
                    "alphabet" => "alphabet",
                    "states" => "states",
                    _ => "mode",
                };
                if builder.is_some() {
                    return Err(at(FormatErrorKind::OutOfOrder(name)));
                }
                let fresh = match name {
                    "alphabet" => header.alphabet.is_none(),
                    "states" => header.states.is_none(),
                    _ => header.mode.is_none(),
                };
                if !fresh {
                    return Err(at(FormatErrorKind::Repeated(name)));
                }
                match name {
                    "alphabet" => {
                        let names = value.split([',', ' ', '\t']).filter(|s| !s.is_empty());
                        header.alphabet = Some(Alphabet::new(names).map_err(|e| at(e.into()))?);
                    }
                    "states" => header.states = Some(number(value).map_err(at)?),
                    _ => header.mode = Some(parse_mode(value).map_err(at)?),
                }
            }
            "start" | "color" | "trans" => {
                if builder.is_none() {
                    let alphabet = header.alphabet.clone().ok_or_else(|| at(FormatErrorKind::Missing("alphabet")))?;
                    let states = header.states.ok_or_else(|| at(FormatErrorKind::Missing("states")))?;
                    let mode = header.mode.unwrap_or(Mode::Deterministic);
                    builder = Some(AutomatonBuilder::new(alphabet, states, mode));
                }
                let b = builder.as_mut().expect("builder initialised above");
                let automaton = |e: AutomatonError| at(e.into());
                match key {
                    "start" => {
                        for q in value.split_whitespace() {
                            b.initial(number(q).map_err(at)?).map_err(automaton)?;
                        }
                    }
                    "color" => {
                        let parts: Vec<&str> = value.split_whitespace().collect();
                        let [q, c] = parts[..] else {
                            return Err(at(FormatErrorKind::Syntax("color: <state> <natural>")));
                        };
                        let c = u32::try_from(number(c).map_err(at)?)
                            .map_err(|_| at(FormatErrorKind::BadNumber(c.to_string())))?;
                        b.color(number(q).map_err(at)?, c).map_err(automaton)?;
                    }
                    _ => {
                        let (src, letter, dst) = split_trans(value).map_err(at)?;
                        let letter = b.alphabet().parse_letter(letter).map_err(|e| at(e.into()))?;
                        b.transition(number(src).map_err(at)?, letter, number(dst).map_err(at)?)
                            .map_err(automaton)?;
                    }
                }
            }
            other => return Err(at(FormatErrorKind::UnknownKey(other.to_string()))),
        }
    }
    let whole = |kind: FormatErrorKind| FormatError { line: None, kind };
    let builder = match builder {
        Some(b) => b,
        None => {
            header.alphabet.as_ref().ok_or_else(|| whole(FormatErrorKind::Missing("alphabet")))?;
            header.states.ok_or_else(|| whole(FormatErrorKind::Missing("states")))?;
            return Err(whole(FormatErrorKind::Missing("start")));
        }
    };
    let built = if options.complete_with_sink {
        builder.build_completed_with_sink()
    } else {
        builder.build()
    };
    built.map_err(|e| whole(e.into()))
}

/// Renders an automaton so that [`parse_automaton`] reads it back.
pub fn write_automaton(aut: &ParityAutomaton) -> String {
    let ab = aut.alphabet();
    let mut out = String::new();
    let _ = writeln!(out, "alphabet: {}", ab.propositions().join(" "));
    let _ = writeln!(out, "states: {}", aut.num_states());
    let _ = writeln!(out, "mode: {}", aut.mode());
    let starts: Vec<String> = aut.initial_states().iter().map(|q| q.to_string()).collect();
    let _ = writeln!(out, "start: {}", starts.join(" "));
    for q in 0..aut.num_states() {
        let _ = writeln!(out, "color: {q} {}", aut.color(q));
    }
    for (src, letter, dst) in aut.transitions() {
        let _ = writeln!(out, "trans: {src} {} {dst}", ab.display_letter(letter));
    }
    out
}
