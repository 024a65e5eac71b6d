//! Lassos `(u, v)` and the ultimately periodic words `u·v^ω` they induce.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::alphabet::{Alphabet, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LassoError {
    #[error("the loop of a lasso must be nonempty")]
    EmptyLoop,
    #[error("letter {0} at position {1} is outside the alphabet")]
    LetterOutOfAlphabet(u32, usize),
}

/// A lasso `(u, v)` with `|v| ≥ 1`.
///
/// Stored as its base `u·v` together with the loop entry `|u|`, so the
/// successor of the last base position is the loop entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    base: Vec<Letter>,
    loop_start: usize,
}

impl Lasso {
    pub fn new(prefix: Vec<Letter>, lp: Vec<Letter>) -> Result<Self, LassoError> {
        if lp.is_empty() {
            return Err(LassoError::EmptyLoop);
        }
        let loop_start = prefix.len();
        let mut base = prefix;
        base.extend(lp);
        Ok(Lasso { base, loop_start })
    }

    /// Builds a lasso from its base and loop entry; requires
    /// `loop_start < base.len()`.
    pub fn from_base(base: Vec<Letter>, loop_start: usize) -> Result<Self, LassoError> {
        if loop_start >= base.len() {
            return Err(LassoError::EmptyLoop);
        }
        Ok(Lasso { base, loop_start })
    }

    /// Parses `u` and `v` written as whitespace separated letters, e.g.
    /// `"{a} {}"` and `"{a,b}"`.
    pub fn parse(alphabet: &Alphabet, prefix: &str, lp: &str) -> Result<Self, crate::AlphabetError> {
        let word = |s: &str| -> Result<Vec<Letter>, crate::AlphabetError> {
            split_letters(s).map(|l| alphabet.parse_letter(l)).collect()
        };
        let u = word(prefix)?;
        let v = word(lp)?;
        Lasso::new(u, v).map_err(|_| crate::AlphabetError::MalformedLetter(lp.into()))
    }

    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<(), LassoError> {
        match self.base.iter().position(|&l| !alphabet.contains(l)) {
            Some(i) => Err(LassoError::LetterOutOfAlphabet(self.base[i].0, i)),
            None => Ok(()),
        }
    }

    /// `n = |u·v|`.
    #[inline]
    pub fn len(&self) -> usize {
        self.base.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// `|u|`, the position the last base position loops back to.
    #[inline]
    pub fn loop_start(&self) -> usize {
        self.loop_start
    }

    #[inline]
    pub fn loop_len(&self) -> usize {
        self.base.len() - self.loop_start
    }

    pub fn base(&self) -> &[Letter] {
        &self.base
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.base[..self.loop_start]
    }

    pub fn loop_part(&self) -> &[Letter] {
        &self.base[self.loop_start..]
    }

    /// Successor of a base position on the lasso graph.
    #[inline]
    pub fn successor(&self, i: usize) -> usize {
        if i + 1 == self.base.len() {
            self.loop_start
        } else {
            i + 1
        }
    }

    /// Letter at an arbitrary position of `u·v^ω`.
    #[inline]
    pub fn letter_at(&self, pos: usize) -> Letter {
        self.base[self.fold_position(pos)]
    }

    /// Maps a position of `u·v^ω` to the base position carrying the same
    /// suffix.
    #[inline]
    pub fn fold_position(&self, pos: usize) -> usize {
        if pos < self.base.len() {
            pos
        } else {
            self.loop_start + (pos - self.loop_start) % self.loop_len()
        }
    }

    /// `(u·v, v)`: same word, loop entered one period later.
    pub fn unroll_prefix(&self) -> Lasso {
        let mut base = self.base.clone();
        base.extend_from_slice(self.loop_part());
        Lasso {
            base,
            loop_start: self.base.len(),
        }
    }

    /// `(u, v·v)`: same word, doubled loop.
    pub fn unroll_loop(&self) -> Lasso {
        let mut base = self.base.clone();
        base.extend_from_slice(self.loop_part());
        Lasso {
            base,
            loop_start: self.loop_start,
        }
    }

    pub(crate) fn base_mut(&mut self) -> &mut Vec<Letter> {
        &mut self.base
    }

    pub(crate) fn set_loop_start(&mut self, s: usize) {
        debug_assert!(s < self.base.len());
        self.loop_start = s;
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> LassoDisplay<'a> {
        LassoDisplay {
            lasso: self,
            alphabet,
        }
    }
}

fn split_letters(s: &str) -> impl Iterator<Item = &str> {
    let mut rest = s.trim();
    core::iter::from_fn(move || {
        if rest.is_empty() {
            return None;
        }
        let end = rest.find('}').map(|i| i + 1).unwrap_or(rest.len());
        let (head, tail) = rest.split_at(end);
        rest = tail.trim_start();
        Some(head)
    })
}

/// Renders a lasso as `(u, v)` with letters in `{p,q}` syntax; `ε` is the
/// empty prefix.
pub struct LassoDisplay<'a> {
    lasso: &'a Lasso,
    alphabet: &'a Alphabet,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = |f: &mut fmt::Formatter<'_>, w: &[Letter]| -> fmt::Result {
            if w.is_empty() {
                return f.write_str("ε");
            }
            for (i, &l) in w.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.alphabet.display_letter(l))?;
            }
            Ok(())
        };
        f.write_str("(")?;
        word(f, self.lasso.prefix())?;
        f.write_str(", ")?;
        word(f, self.lasso.loop_part())?;
        f.write_str(")")
    }
}
