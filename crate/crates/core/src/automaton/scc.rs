use alloc::vec::Vec;

use super::ParityAutomaton;
use crate::graph;

/// A maximal strongly connected component of the state graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scc {
    /// Member states, ascending.
    pub states: Vec<usize>,
    /// A single state without a self-loop.
    pub trivial: bool,
    /// No transition leaves the component.
    pub terminal: bool,
    pub max_color: u32,
    /// Nontrivial with even maximal color.
    pub accepting: bool,
}

impl Scc {
    pub fn contains(&self, q: usize) -> bool {
        self.states.binary_search(&q).is_ok()
    }
}

/// SCCs in topological order of the condensation: a component comes before
/// every component it can reach, so terminal SCCs come last.
pub fn scc_decompose(aut: &ParityAutomaton) -> Vec<Scc> {
    let adj = aut.state_graph();
    let mut comps = graph::tarjan(&adj, |_| true);
    comps.reverse();
    let mut owner = alloc::vec![0usize; aut.num_states()];
    for (i, c) in comps.iter().enumerate() {
        for &q in c {
            owner[q] = i;
        }
    }
    comps
        .into_iter()
        .enumerate()
        .map(|(i, states)| {
            let trivial = !graph::is_nontrivial(&adj, &states);
            let terminal = !trivial && states.iter().all(|&q| adj[q].iter().all(|&d| owner[d] == i));
            let max_color = states.iter().map(|&q| aut.color(q)).max().unwrap_or(0);
            Scc {
                accepting: !trivial && max_color % 2 == 0,
                states,
                trivial,
                terminal,
                max_color,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{AutomatonBuilder, Mode};
    use super::*;
    use crate::Alphabet;
    use alloc::vec;

    #[test]
    fn a_until_b_has_two_terminal_components() {
        let sccs = scc_decompose(&a_until_b());
        assert_eq!(sccs.len(), 3);
        assert_eq!(sccs[0].states, vec![0]);
        assert!(!sccs[0].terminal && !sccs[0].trivial);
        let terminal: Vec<_> = sccs.iter().filter(|s| s.terminal).collect();
        assert_eq!(terminal.len(), 2);
        assert_eq!(terminal.iter().filter(|s| s.accepting).count(), 1);
        assert!(sccs[1].terminal && sccs[2].terminal);
    }

    #[test]
    fn single_state() {
        let mut b = AutomatonBuilder::new(Alphabet::new(["a"]).unwrap(), 1, Mode::Deterministic);
        b.initial(0).unwrap().color(0, 1).unwrap().transition_all(0, 0).unwrap();
        let sccs = scc_decompose(&b.build().unwrap());
        assert_eq!(sccs.len(), 1);
        assert!(sccs[0].terminal && !sccs[0].accepting && !sccs[0].trivial);
    }

    #[test]
    fn trivial_initial_state() {
        let sccs = scc_decompose(&next_p());
        // 0 and 1 are transient single states without self-loops.
        assert_eq!(sccs[0].states, vec![0]);
        assert!(sccs[0].trivial && !sccs[0].terminal && !sccs[0].accepting);
        assert_eq!(sccs[1].states, vec![1]);
        assert!(sccs[1].trivial);
        let sinks: Vec<_> = sccs.iter().filter(|s| s.terminal).map(|s| s.accepting).collect();
        assert_eq!(sinks.len(), 2);
        assert!(sinks.contains(&true) && sinks.contains(&false));
    }

    #[test]
    fn absorbing_accepting_sink() {
        // FG-like absorption: once p is read, stay in an accepting sink.
        let ab = Alphabet::new(["p"]).unwrap();
        let mut b = AutomatonBuilder::new(ab, 2, Mode::Deterministic);
        b.initial(0).unwrap().color(0, 1).unwrap().color(1, 2).unwrap();
        b.transition(0, crate::Letter(0), 0).unwrap();
        b.transition(0, crate::Letter(1), 1).unwrap();
        b.transition_all(1, 1).unwrap();
        let sccs = scc_decompose(&b.build().unwrap());
        let last = sccs.last().unwrap();
        assert_eq!(last.states, vec![1]);
        assert!(last.terminal && last.accepting);
        assert!(!sccs[0].terminal);
    }

    #[test]
    fn single_terminal_rejecting_component() {
        let sccs = scc_decompose(&eventually_always_p());
        assert_eq!(sccs.len(), 1);
        assert_eq!(sccs[0].max_color, 1);
        assert!(sccs[0].terminal && !sccs[0].accepting);
    }
}
