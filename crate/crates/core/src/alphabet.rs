//! Atomic propositions and the letters `2^AP` built from them.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Upper bound on `|AP|`; keeps letters in a `u32` and `|Σ|` enumerable.
pub const MAX_PROPOSITIONS: usize = 16;

/// A letter of `2^AP`, stored as a bit set over the alphabet's propositions
/// (bit `i` set iff proposition `i` holds).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Letter(pub u32);

impl Letter {
    pub const EMPTY: Letter = Letter(0);

    #[inline]
    pub fn contains(self, prop: usize) -> bool {
        self.0 >> prop & 1 == 1
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlphabetError {
    #[error("proposition names must be nonempty")]
    EmptyName,
    #[error("invalid proposition name `{0}`: whitespace, braces and commas are not allowed")]
    InvalidName(String),
    #[error("duplicate proposition `{0}`")]
    Duplicate(String),
    #[error("too many propositions ({0}); at most {MAX_PROPOSITIONS} are supported")]
    TooMany(usize),
    #[error("unknown proposition `{0}`")]
    UnknownProposition(String),
    #[error("malformed letter `{0}`: expected `{{p,q,...}}`")]
    MalformedLetter(String),
}

/// An ordered list of distinct atomic propositions. The letters are all
/// subsets of it, so there are `2^|AP|` of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    props: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(props: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let props: Vec<String> = props.into_iter().map(Into::into).collect();
        if props.len() > MAX_PROPOSITIONS {
            return Err(AlphabetError::TooMany(props.len()));
        }
        for (i, name) in props.iter().enumerate() {
            if name.is_empty() {
                return Err(AlphabetError::EmptyName);
            }
            if name
                .chars()
                .any(|c| c.is_whitespace() || matches!(c, '{' | '}' | ','))
            {
                return Err(AlphabetError::InvalidName(name.clone()));
            }
            if props[..i].contains(name) {
                return Err(AlphabetError::Duplicate(name.clone()));
            }
        }
        Ok(Alphabet { props })
    }

    /// Parses a comma-separated proposition list such as `a,b`.
    pub fn parse_list(list: &str) -> Result<Self, AlphabetError> {
        let list = list.trim();
        if list.is_empty() {
            return Alphabet::new(Vec::<String>::new());
        }
        Alphabet::new(list.split(',').map(|s| s.trim().to_string()))
    }

    pub fn propositions(&self) -> &[String] {
        &self.props
    }

    pub fn num_propositions(&self) -> usize {
        self.props.len()
    }

    /// Number of letters, `|Σ| = 2^|AP|`.
    pub fn size(&self) -> usize {
        1usize << self.props.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.props.iter().position(|p| p == name)
    }

    /// All letters in increasing bit order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.size() as u32).map(Letter)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.index() < self.size()
    }

    pub fn letter<'a, I>(&self, props: I) -> Result<Letter, AlphabetError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut bits = 0u32;
        for name in props {
            let i = self
                .index_of(name)
                .ok_or_else(|| AlphabetError::UnknownProposition(name.to_string()))?;
            bits |= 1 << i;
        }
        Ok(Letter(bits))
    }

    /// Parses a letter written as `{p,q}`; `{}` is the empty letter and the
    /// order inside the braces is irrelevant.
    pub fn parse_letter(&self, text: &str) -> Result<Letter, AlphabetError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| AlphabetError::MalformedLetter(t.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(Letter::EMPTY);
        }
        let mut names = Vec::new();
        for part in inner.split(',') {
            let p = part.trim();
            if p.is_empty() {
                return Err(AlphabetError::MalformedLetter(t.to_string()));
            }
            names.push(p);
        }
        self.letter(names)
    }

    pub fn display_letter(&self, letter: Letter) -> LetterDisplay<'_> {
        LetterDisplay {
            alphabet: self,
            letter,
        }
    }
}

/// Renders a letter as `{p,q}` in alphabet order.
pub struct LetterDisplay<'a> {
    alphabet: &'a Alphabet,
    letter: Letter,
}

impl fmt::Display for LetterDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        for (i, name) in self.alphabet.props.iter().enumerate() {
            if self.letter.contains(i) {
                if !first {
                    f.write_str(",")?;
                }
                f.write_str(name)?;
                first = false;
            }
        }
        f.write_str("}")
    }
}
