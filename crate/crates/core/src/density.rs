//! Qualitative density checks and exact asymptotic densities.
//!
//! Reading a uniformly random letter at every step turns a complete
//! automaton into a Markov chain. For deterministic automata the asymptotic
//! density is the probability of being absorbed in a terminal accepting SCC;
//! for unambiguous ones it is the expected number of such absorbed runs,
//! which unambiguity makes a probability again.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::automaton::{count_accepting_runs_up_to, scc_decompose, AutomatonError, Mode, Scc};
use crate::count::{EnumerationCap, LassoSpace};
use crate::{graph, linsolve, Lasso, ParityAutomaton, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DensityError {
    #[error("exact density needs a deterministic or unambiguous automaton")]
    Nondeterministic,
    #[error("singular linear system: ambiguity or ill-conditioned structure suspected")]
    Singular,
    #[error("probability {0} of state {1} lies outside [0, 1]: ambiguity suspected")]
    OutOfRange(Rational, usize),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

/// A yes/no answer that some procedures cannot give for every input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    /// Deciding requires determinization, which is not implemented.
    UnknownNondeterministic,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b { Verdict::Yes } else { Verdict::No }
    }
}

impl Verdict {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Yes => Some(true),
            Verdict::No => Some(false),
            Verdict::UnknownNondeterministic => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "true",
            Verdict::No => "false",
            Verdict::UnknownNondeterministic => "unknown (nondeterministic)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub density: Rational,
    /// Absorption probability of each reachable terminal accepting SCC.
    pub per_scc: Vec<(Vec<usize>, Rational)>,
    pub positive: bool,
    pub below_one: bool,
}

fn reachable_terminal<'a>(aut: &ParityAutomaton, sccs: &'a [Scc]) -> impl Iterator<Item = &'a Scc> {
    let seen = graph::reachable(&aut.state_graph(), aut.initial_states().iter().copied());
    sccs.iter().filter(move |s| s.terminal && seen[s.states[0]])
}

/// Some terminal accepting SCC is reachable from an initial state.
pub fn density_positive(aut: &ParityAutomaton) -> bool {
    let sccs = scc_decompose(aut);
    let found = reachable_terminal(aut, &sccs).any(|s| s.accepting);
    found
}

/// Some terminal rejecting SCC is reachable from the initial state.
pub fn density_below_one(aut: &ParityAutomaton) -> Result<bool, AutomatonError> {
    aut.require_deterministic()?;
    let sccs = scc_decompose(aut);
    let found = reachable_terminal(aut, &sccs).any(|s| !s.accepting);
    Ok(found)
}

/// [`density_below_one`] for any mode, answering unknown where it cannot.
pub fn below_one_verdict(aut: &ParityAutomaton) -> Verdict {
    match density_below_one(aut) {
        Ok(b) => b.into(),
        Err(_) => Verdict::UnknownNondeterministic,
    }
}

/// Exact asymptotic density of a deterministic or unambiguous automaton.
pub fn asymptotic_density(aut: &ParityAutomaton) -> Result<DensityReport, DensityError> {
    if aut.mode() == Mode::Nondeterministic {
        return Err(DensityError::Nondeterministic);
    }
    let sccs = scc_decompose(aut);
    let reach = graph::reachable(&aut.state_graph(), aut.initial_states().iter().copied());
    let accepting: Vec<&Scc> = sccs
        .iter()
        .filter(|s| s.terminal && s.accepting && reach[s.states[0]])
        .collect();

    // Known values: target index for accepting terminal states, zero for the
    // rest of the terminal states.
    const UNKNOWN: usize = usize::MAX;
    const ZERO: usize = usize::MAX - 1;
    let mut role = vec![UNKNOWN; aut.num_states()];
    for s in sccs.iter().filter(|s| s.terminal) {
        for &q in &s.states {
            role[q] = ZERO;
        }
    }
    for (k, s) in accepting.iter().enumerate() {
        for &q in &s.states {
            role[q] = k;
        }
    }
    let unknowns: Vec<usize> = (0..aut.num_states()).filter(|&q| reach[q] && role[q] == UNKNOWN).collect();
    let mut var = vec![usize::MAX; aut.num_states()];
    for (i, &q) in unknowns.iter().enumerate() {
        var[q] = i;
    }

    // |Σ|·x_q − Σ_{q→q'} x_q' = #{q→A_k}, one column per target.
    let m = unknowns.len();
    let k = accepting.len();
    let size = Rational::from_integer(aut.alphabet().size().into());
    let mut a = vec![vec![Rational::zero(); m]; m];
    let mut b = vec![vec![Rational::zero(); k]; m];
    for (i, &q) in unknowns.iter().enumerate() {
        a[i][i] += &size;
        for letter in aut.alphabet().letters() {
            for &d in aut.successors(q, letter) {
                match role[d] {
                    UNKNOWN => a[i][var[d]] -= Rational::one(),
                    ZERO => {}
                    t => b[i][t] += Rational::one(),
                }
            }
        }
    }
    let x = linsolve::solve(a, b).ok_or(DensityError::Singular)?;

    let value = |q: usize, t: usize| -> Rational {
        match role[q] {
            UNKNOWN => x[var[q]][t].clone(),
            ZERO => Rational::zero(),
            r if r == t => Rational::one(),
            _ => Rational::zero(),
        }
    };
    for (i, &q) in unknowns.iter().enumerate() {
        let total: Rational = x[i].iter().sum();
        if x[i].iter().any(|v| v < &Rational::zero()) || total > Rational::one() {
            return Err(DensityError::OutOfRange(total, q));
        }
    }
    let per_scc: Vec<(Vec<usize>, Rational)> = accepting
        .iter()
        .enumerate()
        .map(|(t, s)| (s.states.clone(), aut.initial_states().iter().map(|&q| value(q, t)).sum()))
        .collect();
    let density: Rational = per_scc.iter().map(|(_, v)| v).sum();
    if density > Rational::one() {
        return Err(DensityError::OutOfRange(density, aut.initial_states()[0]));
    }
    Ok(DensityReport {
        positive: !density.is_zero(),
        below_one: density < Rational::one(),
        density,
        per_scc,
    })
}

/// Outcome of [`verify_unambiguity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnambiguityCheck {
    Holds,
    /// A lasso with at least `runs` accepting runs.
    Violated { lasso: Lasso, runs: u64 },
}

/// Checks that no lasso of length at most `n_max` has two accepting runs.
pub fn verify_unambiguity(
    aut: &ParityAutomaton,
    n_max: usize,
    cap: EnumerationCap,
) -> Result<UnambiguityCheck, AutomatonError> {
    if n_max == 0 {
        return Err(crate::EnumerationError::ZeroBound.into());
    }
    LassoSpace::new(aut.alphabet().size(), n_max, cap)?;
    if aut.is_deterministic() {
        return Ok(UnambiguityCheck::Holds);
    }
    for n in 1..=n_max {
        let space = LassoSpace::new(aut.alphabet().size(), n, cap)?;
        for i in 0..space.len() {
            let lasso = space.lasso(i);
            let runs = count_accepting_runs_up_to(aut, &lasso, 2)?;
            if runs > 1 {
                return Ok(UnambiguityCheck::Violated { lasso, runs });
            }
        }
    }
    Ok(UnambiguityCheck::Holds)
}
