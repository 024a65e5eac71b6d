//! Exact and empirical density of linear-time properties over lasso-shaped
//! (ultimately periodic) words.
//!
//! The density of a property at bound `n` is the fraction of lassos `(u, v)`
//! with `|u·v| = n` whose induced word `u·v^ω` satisfies it. This crate
//! provides:
//!
//! * [`ltl`]: LTL syntax, a parser, lasso semantics and fragment recognition.
//! * [`count`]: brute-force counting over all lassos of a bound, density
//!   curves and growth functions.
//! * [`oscillate`]: a non-ω-regular property whose density curve oscillates.
//! * [`automaton`]: max-even parity automata, SCCs, lasso acceptance, run
//!   counting and the base/loop partition of lassos.
//! * [`density`]: qualitative checks and exact asymptotic densities through
//!   the uniform Markov chain of an automaton.
//! * [`compose`]: convergence classes of fragment formulas and their boolean
//!   combinations.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod alphabet;
pub mod automaton;
pub mod compose;
pub mod count;
pub mod density;
mod graph;
pub mod lasso;
mod linsolve;
pub mod ltl;
pub mod oscillate;
pub mod rational;

pub use alphabet::{Alphabet, AlphabetError, Letter};
pub use automaton::{
    AutomatonBuilder, AutomatonError, ClassPartitionCounts, LassoClass, Mode, ParityAutomaton,
    Scc,
};
pub use compose::{ConvergenceClass, Level, Reduction};
pub use count::{DensityCurve, EnumerationCap, EnumerationError, LassoProperty, LassoSpace};
pub use density::{DensityError, DensityReport};
pub use lasso::{Lasso, LassoError};
pub use ltl::{Evaluator, LtlError, LtlFormula, SyntacticClass};
pub use oscillate::{IntervalSchedule, OscillatingProperty, PeriodReading};
pub use rational::Rational;
