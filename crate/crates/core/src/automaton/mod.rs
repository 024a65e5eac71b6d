//! Complete max-even parity automata over `2^AP` with state colors.
//!
//! A run is accepting iff the largest color seen infinitely often is even;
//! Büchi automata are the special case with colors in `{1, 2}`.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::{Alphabet, Letter};

mod accept;
mod partition;
mod scc;

pub use accept::{accepts_lasso, count_accepting_runs, count_accepting_runs_up_to};
pub use partition::{
    classify_lasso, nonempty_from, partition_counts, universal_from, ClassPartitionCounts, ClassTally,
    LassoClass, LassoClassifier,
};
pub use scc::{scc_decompose, Scc};

/// Determinism/ambiguity as declared by the automaton's author.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Deterministic,
    Unambiguous,
    Nondeterministic,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Deterministic => "deterministic",
            Mode::Unambiguous => "unambiguous",
            Mode::Nondeterministic => "nondeterministic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("automaton has no states")]
    NoStates,
    #[error("automaton has no initial state")]
    NoInitialState,
    #[error("state {0} is out of range")]
    StateOutOfRange(usize),
    #[error("letter {0} is outside the alphabet")]
    LetterOutOfRange(u32),
    #[error("state {0} has no color")]
    MissingColor(usize),
    #[error("incomplete automaton: no transition from state {state} on {letter}")]
    Incomplete { state: usize, letter: String },
    #[error("deterministic automaton has several successors from state {state} on {letter}")]
    DeterminismViolation { state: usize, letter: String },
    #[error("deterministic automaton has {0} initial states")]
    MultipleInitialStates(usize),
    #[error("operation requires a deterministic automaton, got a {0} one")]
    RequiresDeterministic(Mode),
    #[error("lasso alphabet does not match the automaton alphabet")]
    AlphabetMismatch,
    #[error(transparent)]
    Enumeration(#[from] crate::EnumerationError),
}

/// Collects states, colors and transitions; [`build`](Self::build) checks
/// completeness and the declared mode.
#[derive(Debug, Clone)]
pub struct AutomatonBuilder {
    alphabet: Alphabet,
    mode: Mode,
    colors: Vec<Option<u32>>,
    initial: Vec<usize>,
    delta: Vec<Vec<Vec<usize>>>,
    // (state, letter) pairs given more than one transition line
    repeated: Vec<(usize, Letter)>,
}

impl AutomatonBuilder {
    pub fn new(alphabet: Alphabet, states: usize, mode: Mode) -> Self {
        let letters = alphabet.size();
        AutomatonBuilder {
            alphabet,
            mode,
            colors: vec![None; states],
            initial: Vec::new(),
            delta: vec![vec![Vec::new(); letters]; states],
            repeated: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.colors.len()
    }

    fn check_state(&self, q: usize) -> Result<(), AutomatonError> {
        if q < self.colors.len() {
            Ok(())
        } else {
            Err(AutomatonError::StateOutOfRange(q))
        }
    }

    pub fn initial(&mut self, q: usize) -> Result<&mut Self, AutomatonError> {
        self.check_state(q)?;
        if !self.initial.contains(&q) {
            self.initial.push(q);
        }
        Ok(self)
    }

    pub fn color(&mut self, q: usize, color: u32) -> Result<&mut Self, AutomatonError> {
        self.check_state(q)?;
        self.colors[q] = Some(color);
        Ok(self)
    }

    pub fn transition(
        &mut self,
        src: usize,
        letter: Letter,
        dst: usize,
    ) -> Result<&mut Self, AutomatonError> {
        self.check_state(src)?;
        self.check_state(dst)?;
        if !self.alphabet.contains(letter) {
            return Err(AutomatonError::LetterOutOfRange(letter.0));
        }
        let succ = &mut self.delta[src][letter.index()];
        if !succ.is_empty() {
            self.repeated.push((src, letter));
        }
        if !succ.contains(&dst) {
            succ.push(dst);
            succ.sort_unstable();
        }
        Ok(self)
    }

    /// Adds `(src, letter, dst)` for every letter.
    pub fn transition_all(&mut self, src: usize, dst: usize) -> Result<&mut Self, AutomatonError> {
        for l in self.alphabet.letters() {
            self.transition(src, l, dst)?;
        }
        Ok(self)
    }

    pub fn build(&self) -> Result<ParityAutomaton, AutomatonError> {
        if self.colors.is_empty() {
            return Err(AutomatonError::NoStates);
        }
        if self.initial.is_empty() {
            return Err(AutomatonError::NoInitialState);
        }
        let colors = self
            .colors
            .iter()
            .enumerate()
            .map(|(q, c)| c.ok_or(AutomatonError::MissingColor(q)))
            .collect::<Result<Vec<_>, _>>()?;
        for (q, row) in self.delta.iter().enumerate() {
            for (l, succ) in row.iter().enumerate() {
                if succ.is_empty() {
                    return Err(AutomatonError::Incomplete {
                        state: q,
                        letter: self.alphabet.display_letter(Letter(l as u32)).to_string(),
                    });
                }
            }
        }
        if self.mode == Mode::Deterministic {
            if self.initial.len() > 1 {
                return Err(AutomatonError::MultipleInitialStates(self.initial.len()));
            }
            if let Some(&(q, l)) = self.repeated.first() {
                return Err(AutomatonError::DeterminismViolation {
                    state: q,
                    letter: self.alphabet.display_letter(l).to_string(),
                });
            }
        }
        let mut initial = self.initial.clone();
        initial.sort_unstable();
        Ok(ParityAutomaton {
            alphabet: self.alphabet.clone(),
            mode: self.mode,
            colors,
            initial,
            delta: self.delta.clone(),
        })
    }

    /// Like [`build`](Self::build), but routes every missing `(state,
    /// letter)` pair to a fresh rejecting sink (color 1) instead of failing.
    /// The sink is only added when something is missing.
    pub fn build_completed_with_sink(&self) -> Result<ParityAutomaton, AutomatonError> {
        let missing = self.delta.iter().any(|row| row.iter().any(Vec::is_empty));
        if !missing {
            return self.build();
        }
        let mut b = self.clone();
        let sink = b.colors.len();
        b.colors.push(Some(1));
        b.delta.push(vec![vec![sink]; b.alphabet.size()]);
        for row in b.delta.iter_mut() {
            for succ in row.iter_mut() {
                if succ.is_empty() {
                    succ.push(sink);
                }
            }
        }
        b.build()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityAutomaton {
    alphabet: Alphabet,
    mode: Mode,
    colors: Vec<u32>,
    initial: Vec<usize>,
    delta: Vec<Vec<Vec<usize>>>,
}

impl ParityAutomaton {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_deterministic(&self) -> bool {
        self.mode == Mode::Deterministic
    }

    pub fn num_states(&self) -> usize {
        self.colors.len()
    }

    pub fn initial_states(&self) -> &[usize] {
        &self.initial
    }

    pub fn color(&self, q: usize) -> u32 {
        self.colors[q]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Successors of `q` on `letter`, sorted and nonempty.
    pub fn successors(&self, q: usize, letter: Letter) -> &[usize] {
        &self.delta[q][letter.index()]
    }

    /// The unique successor in a deterministic automaton.
    #[inline]
    pub fn step(&self, q: usize, letter: Letter) -> usize {
        self.delta[q][letter.index()][0]
    }

    /// Underlying graph with letters forgotten; edges deduplicated.
    pub fn state_graph(&self) -> Vec<Vec<usize>> {
        self.delta
            .iter()
            .map(|row| {
                let mut succ: Vec<usize> = row.iter().flatten().copied().collect();
                succ.sort_unstable();
                succ.dedup();
                succ
            })
            .collect()
    }

    pub fn require_deterministic(&self) -> Result<(), AutomatonError> {
        if self.is_deterministic() {
            Ok(())
        } else {
            Err(AutomatonError::RequiresDeterministic(self.mode))
        }
    }

    /// Deterministic complement: every color shifted up by one.
    pub fn complement(&self) -> Result<ParityAutomaton, AutomatonError> {
        self.require_deterministic()?;
        Ok(self.with_colors_shifted())
    }

    pub(crate) fn with_colors_shifted(&self) -> ParityAutomaton {
        ParityAutomaton {
            colors: self.colors.iter().map(|c| c + 1).collect(),
            ..self.clone()
        }
    }

    /// Transitions as `(src, letter, dst)` in state then letter order.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, Letter, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(l, succ)| succ.iter().map(move |&d| (q, Letter(l as u32), d)))
        })
    }
}

impl crate::count::LassoProperty for ParityAutomaton {
    fn holds(&self, lasso: &crate::Lasso) -> bool {
        accept::accepts_unchecked(self, lasso)
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completeness_is_checked() {
        let ab = Alphabet::new(["a"]).unwrap();
        let mut b = AutomatonBuilder::new(ab, 1, Mode::Deterministic);
        b.initial(0).unwrap().color(0, 1).unwrap();
        b.transition(0, Letter(1), 0).unwrap();
        assert_eq!(
            b.build(),
            Err(AutomatonError::Incomplete {
                state: 0,
                letter: "{}".into()
            })
        );
        let completed = b.build_completed_with_sink().unwrap();
        assert_eq!(completed.num_states(), 2);
        assert_eq!(completed.step(0, Letter(0)), 1);
        assert_eq!(completed.color(1), 1);
        b.transition(0, Letter(0), 0).unwrap();
        assert_eq!(b.build_completed_with_sink().unwrap().num_states(), 1);
    }

    #[test]
    fn determinism_is_checked() {
        let ab = Alphabet::new(["a"]).unwrap();
        let mut b = AutomatonBuilder::new(ab, 2, Mode::Deterministic);
        b.initial(0).unwrap().color(0, 1).unwrap().color(1, 2).unwrap();
        b.transition_all(0, 0).unwrap().transition_all(1, 1).unwrap();
        b.transition(0, Letter(1), 1).unwrap();
        assert_eq!(
            b.build(),
            Err(AutomatonError::DeterminismViolation {
                state: 0,
                letter: "{a}".into()
            })
        );
        let mut b = AutomatonBuilder::new(Alphabet::new(["a"]).unwrap(), 2, Mode::Deterministic);
        b.initial(0).unwrap().initial(1).unwrap();
        b.color(0, 1).unwrap().color(1, 1).unwrap();
        b.transition_all(0, 0).unwrap().transition_all(1, 1).unwrap();
        assert_eq!(b.build(), Err(AutomatonError::MultipleInitialStates(2)));
    }

    #[test]
    fn structural_errors() {
        let ab = Alphabet::new(["a"]).unwrap();
        let mut b = AutomatonBuilder::new(ab.clone(), 1, Mode::Deterministic);
        assert_eq!(b.initial(3).unwrap_err(), AutomatonError::StateOutOfRange(3));
        assert_eq!(
            b.transition(0, Letter(2), 0).unwrap_err(),
            AutomatonError::LetterOutOfRange(2)
        );
        assert_eq!(b.build(), Err(AutomatonError::NoInitialState));
        b.initial(0).unwrap();
        assert_eq!(b.build(), Err(AutomatonError::MissingColor(0)));
        assert_eq!(
            AutomatonBuilder::new(ab, 0, Mode::Deterministic).build(),
            Err(AutomatonError::NoStates)
        );
    }

    #[test]
    fn complement_shifts_colors() {
        let a = fixtures::a_until_b();
        assert_eq!(a.complement().unwrap().colors(), &[2, 3, 2]);
        assert_eq!(
            fixtures::duplicated_initial().complement(),
            Err(AutomatonError::RequiresDeterministic(Mode::Nondeterministic))
        );
    }
}
