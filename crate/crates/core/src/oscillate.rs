//! A linear-time property over `AP = {a}` with a non-convergent density.
//!
//! A lasso is a model iff from some position `p` carrying `a` on, `a` recurs
//! every `δ` positions, for some `δ` in one of the half-open intervals
//! `[c_i, d_i)` of an [`IntervalSchedule`].

use alloc::vec::Vec;

use thiserror::Error;

use crate::count::LassoProperty;
use crate::{Alphabet, Lasso};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("schedule must contain at least one interval")]
    Empty,
    #[error("interval bounds must be at least 1")]
    ZeroBound,
    #[error("intervals must satisfy c1 <= d1 < c2 <= d2 < ...; violated at interval {0}")]
    NotInterleaved(usize),
    #[error("oscillating property needs an alphabet with exactly one proposition")]
    AlphabetMismatch,
}

/// Pairs `(c_i, d_i)` with `c_1 ≤ d_1 < c_2 ≤ d_2 < …`, all `≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSchedule {
    intervals: Vec<(usize, usize)>,
}

impl IntervalSchedule {
    pub fn new(intervals: Vec<(usize, usize)>) -> Result<Self, ScheduleError> {
        if intervals.is_empty() {
            return Err(ScheduleError::Empty);
        }
        for (i, &(c, d)) in intervals.iter().enumerate() {
            if c == 0 || d == 0 {
                return Err(ScheduleError::ZeroBound);
            }
            if c > d || (i > 0 && intervals[i - 1].1 >= c) {
                return Err(ScheduleError::NotInterleaved(i + 1));
            }
        }
        Ok(IntervalSchedule { intervals })
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.intervals
    }

    /// Admissible periods `δ`, ascending.
    pub fn periods(&self) -> impl Iterator<Item = usize> + '_ {
        self.intervals.iter().flat_map(|&(c, d)| c..d)
    }

    pub fn max_period(&self) -> Option<usize> {
        self.periods().last()
    }
}

/// How "`a` appears every `δ` positions" is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PeriodReading {
    /// `a` holds exactly at `p, p+δ, p+2δ, …` and nowhere else after `p`.
    #[default]
    Exact,
    /// `a` holds at every `p + kδ`; other positions are unconstrained.
    Recurring,
}

/// The oscillating property as a [`LassoProperty`] over a one-proposition
/// alphabet.
#[derive(Debug, Clone)]
pub struct OscillatingProperty {
    schedule: IntervalSchedule,
    reading: PeriodReading,
}

impl OscillatingProperty {
    pub fn new(schedule: IntervalSchedule, reading: PeriodReading) -> Self {
        OscillatingProperty { schedule, reading }
    }

    pub fn alphabet() -> Alphabet {
        Alphabet::new(["a"]).expect("valid alphabet")
    }

    pub fn check_alphabet(alphabet: &Alphabet) -> Result<(), ScheduleError> {
        if alphabet.num_propositions() == 1 {
            Ok(())
        } else {
            Err(ScheduleError::AlphabetMismatch)
        }
    }

    pub fn schedule(&self) -> &IntervalSchedule {
        &self.schedule
    }
}

impl LassoProperty for OscillatingProperty {
    fn holds(&self, lasso: &Lasso) -> bool {
        oscillating_membership(&self.schedule, self.reading, lasso)
    }
}

/// Membership in the oscillating property.
///
/// Past the prefix the word is `|v|`-periodic, so a witness can be taken
/// inside the loop and only the loop needs inspecting. Under the exact
/// reading the `a`-positions form one residue class mod `δ`, which is
/// `|v|`-periodic only if `δ` divides `|v|`. Under the recurring reading
/// `p + kδ` sweeps the residue class of `p` mod `gcd(δ, |v|)` on the loop.
pub fn oscillating_membership(
    schedule: &IntervalSchedule,
    reading: PeriodReading,
    lasso: &Lasso,
) -> bool {
    let lp = lasso.loop_part();
    let len = lp.len();
    let has_a = |i: usize| lp[i].contains(0);
    schedule.periods().any(|delta| match reading {
        PeriodReading::Exact => {
            if !len.is_multiple_of(delta) {
                return false;
            }
            (0..delta).any(|r| (0..len).all(|i| has_a(i) == (i % delta == r)))
        }
        PeriodReading::Recurring => {
            let g = gcd(delta, len);
            (0..g).any(|r| (r..len).step_by(g).all(has_a))
        }
    })
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
