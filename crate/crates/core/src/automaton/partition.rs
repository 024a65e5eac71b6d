//! Good/bad-prefix analysis and the four-way partition of lassos into base
//! models, base non-models, loop models and loop non-models.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Range};

use num_bigint::BigUint;

use super::{accept, AutomatonError, ParityAutomaton};
use crate::count::{total_lassos, EnumerationCap, LassoSpace};
use crate::{graph, Lasso};

/// Does some infinite word have an accepting run from `state`?
pub fn nonempty_from(aut: &ParityAutomaton, state: usize) -> bool {
    graph::even_cycle_reachable(&aut.state_graph(), aut.colors(), [state])
}

/// Is every infinite word accepted from `state`? Deterministic only: the
/// color-shifted complement must be empty from `state`.
pub fn universal_from(aut: &ParityAutomaton, state: usize) -> Result<bool, AutomatonError> {
    aut.require_deterministic()?;
    Ok(!nonempty_from(&aut.with_colors_shifted(), state))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LassoClass {
    /// Non-model whose base is a bad prefix.
    BaseNonModel,
    /// Model whose base is a good prefix.
    BaseModel,
    /// Non-model whose base is not a bad prefix.
    LoopNonModel,
    /// Model whose base is not a good prefix.
    LoopModel,
}

impl fmt::Display for LassoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LassoClass::BaseNonModel => "base-non-model",
            LassoClass::BaseModel => "base-model",
            LassoClass::LoopNonModel => "loop-non-model",
            LassoClass::LoopModel => "loop-model",
        })
    }
}

/// Per-state good/bad verdicts of a deterministic automaton, computed once
/// and reused for every lasso.
#[derive(Debug, Clone)]
pub struct LassoClassifier<'a> {
    aut: &'a ParityAutomaton,
    nonempty: Vec<bool>,
    universal: Vec<bool>,
}

impl<'a> LassoClassifier<'a> {
    pub fn new(aut: &'a ParityAutomaton) -> Result<Self, AutomatonError> {
        aut.require_deterministic()?;
        let adj = aut.state_graph();
        let all = alloc::vec![true; aut.num_states()];
        let live = graph::can_reach(&adj, &graph::even_cycle_nodes(&adj, aut.colors(), &all));
        let shifted = aut.with_colors_shifted();
        let co_live = graph::can_reach(&adj, &graph::even_cycle_nodes(&adj, shifted.colors(), &all));
        Ok(LassoClassifier {
            aut,
            nonempty: live,
            universal: co_live.into_iter().map(|x| !x).collect(),
        })
    }

    pub fn classify(&self, lasso: &Lasso) -> LassoClass {
        let q = lasso
            .base()
            .iter()
            .fold(self.aut.initial_states()[0], |q, &l| self.aut.step(q, l));
        if !self.nonempty[q] {
            LassoClass::BaseNonModel
        } else if self.universal[q] {
            LassoClass::BaseModel
        } else if accept::accepts_unchecked(self.aut, lasso) {
            LassoClass::LoopModel
        } else {
            LassoClass::LoopNonModel
        }
    }

    /// Tallies the lassos with indices in `range`.
    pub fn tally(&self, space: &LassoSpace, range: Range<u64>) -> ClassTally {
        let mut t = ClassTally::default();
        space.for_each_in(range, |l| t.record(self.classify(l)));
        t
    }
}

pub fn classify_lasso(aut: &ParityAutomaton, lasso: &Lasso) -> Result<LassoClass, AutomatonError> {
    lasso
        .check_alphabet(aut.alphabet())
        .map_err(|_| AutomatonError::AlphabetMismatch)?;
    Ok(LassoClassifier::new(aut)?.classify(lasso))
}

/// Machine-word class counts for one enumeration block; blocks add up.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassTally {
    pub base_non_models: u64,
    pub base_models: u64,
    pub loop_non_models: u64,
    pub loop_models: u64,
}

impl ClassTally {
    pub fn record(&mut self, class: LassoClass) {
        match class {
            LassoClass::BaseNonModel => self.base_non_models += 1,
            LassoClass::BaseModel => self.base_models += 1,
            LassoClass::LoopNonModel => self.loop_non_models += 1,
            LassoClass::LoopModel => self.loop_models += 1,
        }
    }
}

impl Add for ClassTally {
    type Output = ClassTally;
    fn add(self, o: ClassTally) -> ClassTally {
        ClassTally {
            base_non_models: self.base_non_models + o.base_non_models,
            base_models: self.base_models + o.base_models,
            loop_non_models: self.loop_non_models + o.loop_non_models,
            loop_models: self.loop_models + o.loop_models,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartitionCounts {
    pub n: usize,
    pub base_non_models: BigUint,
    pub base_models: BigUint,
    pub loop_non_models: BigUint,
    pub loop_models: BigUint,
    pub total: BigUint,
}

impl ClassPartitionCounts {
    pub fn from_tally(alphabet_size: usize, n: usize, t: ClassTally) -> Self {
        let c = ClassPartitionCounts {
            n,
            base_non_models: t.base_non_models.into(),
            base_models: t.base_models.into(),
            loop_non_models: t.loop_non_models.into(),
            loop_models: t.loop_models.into(),
            total: total_lassos(alphabet_size as u64, n as u32),
        };
        debug_assert_eq!(
            &c.base_non_models + &c.base_models + &c.loop_non_models + &c.loop_models,
            c.total
        );
        c
    }

    /// `#φ(n)`
    pub fn models(&self) -> BigUint {
        &self.base_models + &self.loop_models
    }

    pub fn non_models(&self) -> BigUint {
        &self.base_non_models + &self.loop_non_models
    }
}

/// Exact class counts over all lassos of length `n`.
pub fn partition_counts(
    aut: &ParityAutomaton,
    n: usize,
    cap: EnumerationCap,
) -> Result<ClassPartitionCounts, AutomatonError> {
    let classifier = LassoClassifier::new(aut)?;
    let space = LassoSpace::new(aut.alphabet().size(), n, cap)?;
    let tally = classifier.tally(&space, 0..space.len());
    Ok(ClassPartitionCounts::from_tally(aut.alphabet().size(), n, tally))
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::Mode;
    use super::*;
    use crate::count::count_models;

    #[test]
    fn state_languages() {
        let a = a_until_b();
        // 0 pending, 1 accept sink, 2 reject sink
        assert!(nonempty_from(&a, 0) && nonempty_from(&a, 1) && !nonempty_from(&a, 2));
        assert!(universal_from(&a, 1).unwrap());
        assert!(!universal_from(&a, 0).unwrap());
        assert!(!universal_from(&a, 2).unwrap());
        assert_eq!(
            universal_from(&duplicated_initial(), 0),
            Err(AutomatonError::RequiresDeterministic(Mode::Nondeterministic))
        );
        assert!(nonempty_from(&duplicated_initial(), 0));
    }

    #[test]
    fn pending_state_is_nonempty_by_enumeration() {
        // Some lasso is accepted from the pending state of a U b.
        let a = a_until_b();
        let space = LassoSpace::new(4, 2, EnumerationCap::DEFAULT).unwrap();
        let mut found = false;
        space.for_each(|l| found |= accept::accepts_unchecked(&a, l));
        assert!(found);
    }

    #[test]
    fn classify_examples() {
        let a = a_until_b();
        let ab = a.alphabet().clone();
        let l = |u: &str, v: &str| Lasso::parse(&ab, u, v).unwrap();
        assert_eq!(classify_lasso(&a, &l("", "{b} {a}")).unwrap(), LassoClass::BaseModel);
        assert_eq!(classify_lasso(&a, &l("", "{}")).unwrap(), LassoClass::BaseNonModel);
        assert_eq!(classify_lasso(&a, &l("", "{a}")).unwrap(), LassoClass::LoopNonModel);
        assert!(classify_lasso(&duplicated_initial(), &l("", "{}")).is_err());
    }

    #[test]
    fn loop_base_is_neither_good_nor_bad() {
        // {a} extends to a model ({a}{b}...) and a non-model ({a}{}...).
        let a = a_until_b();
        let ab = a.alphabet().clone();
        let l = |u: &str, v: &str| Lasso::parse(&ab, u, v).unwrap();
        assert!(accept::accepts_unchecked(&a, &l("{a}", "{b}")));
        assert!(!accept::accepts_unchecked(&a, &l("{a}", "{}")));
    }

    #[test]
    fn partition_examples() {
        let x = next_p();
        for n in 2..=6 {
            let c = partition_counts(&x, n, EnumerationCap::DEFAULT).unwrap();
            assert_eq!(c.loop_models, 0u32.into());
            assert_eq!(c.loop_non_models, 0u32.into());
            assert_eq!(c.base_models.clone() * 2u32, c.total);
        }
        let a = a_until_b();
        for n in 1..=5 {
            let c = partition_counts(&a, n, EnumerationCap::DEFAULT).unwrap();
            assert_eq!(c.models() + c.non_models(), c.total);
            assert_eq!(c.models(), count_models(&a, a.alphabet(), n, EnumerationCap::DEFAULT).unwrap());
        }
    }
}
