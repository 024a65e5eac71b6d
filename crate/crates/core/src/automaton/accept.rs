//! Lasso acceptance and accepting-run counting on the product of the
//! automaton with the lasso graph.
//!
//! A configuration `(q, i)` pairs a state with a base position; reading the
//! letter at `i` moves to `(q', succ(i))`. Runs on `u·v^ω` are exactly the
//! paths from `(q0, 0)`.

use alloc::vec;
use alloc::vec::Vec;

use super::{AutomatonError, ParityAutomaton};
use crate::{graph, Lasso};

struct Product<'a> {
    aut: &'a ParityAutomaton,
    lasso: &'a Lasso,
}

impl Product<'_> {
    fn size(&self) -> usize {
        self.aut.num_states() * self.lasso.len()
    }

    fn id(&self, q: usize, i: usize) -> usize {
        q * self.lasso.len() + i
    }

    fn split(&self, c: usize) -> (usize, usize) {
        (c / self.lasso.len(), c % self.lasso.len())
    }

    fn successors(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        let (q, i) = self.split(c);
        let next = self.lasso.successor(i);
        self.aut
            .successors(q, self.lasso.base()[i])
            .iter()
            .map(move |&d| self.id(d, next))
    }

    fn color(&self, c: usize) -> u32 {
        self.aut.color(self.split(c).0)
    }

    fn sources(&self) -> impl Iterator<Item = usize> + '_ {
        self.aut.initial_states().iter().map(|&q| self.id(q, 0))
    }

    fn graph(&self) -> (Vec<Vec<usize>>, Vec<u32>) {
        let n = self.size();
        let adj = (0..n).map(|c| self.successors(c).collect()).collect();
        let colors = (0..n).map(|c| self.color(c)).collect();
        (adj, colors)
    }
}

fn check(aut: &ParityAutomaton, lasso: &Lasso) -> Result<(), AutomatonError> {
    lasso
        .check_alphabet(aut.alphabet())
        .map_err(|_| AutomatonError::AlphabetMismatch)
}

/// Does some run on `u·v^ω` accept?
pub fn accepts_lasso(aut: &ParityAutomaton, lasso: &Lasso) -> Result<bool, AutomatonError> {
    check(aut, lasso)?;
    Ok(accepts_unchecked(aut, lasso))
}

pub(crate) fn accepts_unchecked(aut: &ParityAutomaton, lasso: &Lasso) -> bool {
    if aut.is_deterministic() {
        deterministic_accepts(aut, lasso)
    } else {
        let p = Product { aut, lasso };
        let (adj, colors) = p.graph();
        graph::even_cycle_reachable(&adj, &colors, p.sources())
    }
}

/// Follows the single run until a configuration repeats; the repeated
/// stretch is the run's period.
fn deterministic_accepts(aut: &ParityAutomaton, lasso: &Lasso) -> bool {
    let n = lasso.len();
    let base = lasso.base();
    let mut q = aut.initial_states()[0];
    for &l in &base[..lasso.loop_start()] {
        q = aut.step(q, l);
    }
    // From here on the position is always in the loop.
    let s = lasso.loop_start();
    let mut seen = vec![usize::MAX; aut.num_states()];
    let mut trail: Vec<usize> = Vec::new();
    loop {
        if seen[q] != usize::MAX {
            let start = seen[q];
            let max = trail[start..].iter().map(|&q| aut.color(q)).max().unwrap_or(0);
            return max % 2 == 0;
        }
        seen[q] = trail.len();
        trail.push(q);
        for &l in &base[s..n] {
            q = aut.step(q, l);
            trail.push(q);
        }
        trail.pop();
    }
}

/// Number of distinct accepting runs on `u·v^ω`, counted as ultimately
/// periodic run shapes: a run follows distinct configurations until it
/// first revisits one and then repeats that cycle forever. Two shapes
/// differ at some position iff they are different runs, and cycles have
/// length at most `|Q|·|v|`.
pub fn count_accepting_runs(aut: &ParityAutomaton, lasso: &Lasso) -> Result<u64, AutomatonError> {
    count_accepting_runs_up_to(aut, lasso, u64::MAX)
}

/// [`count_accepting_runs`], stopping as soon as `limit` runs are found.
pub fn count_accepting_runs_up_to(
    aut: &ParityAutomaton,
    lasso: &Lasso,
    limit: u64,
) -> Result<u64, AutomatonError> {
    check(aut, lasso)?;
    let p = Product { aut, lasso };
    let (adj, colors) = p.graph();
    // Only configurations that can still reach an accepting cycle matter.
    let all = vec![true; adj.len()];
    let useful = graph::can_reach(&adj, &graph::even_cycle_nodes(&adj, &colors, &all));
    let mut search = RunSearch {
        adj: &adj,
        colors: &colors,
        useful: &useful,
        on_path: vec![usize::MAX; adj.len()],
        path: Vec::new(),
        count: 0,
        limit,
    };
    for src in p.sources() {
        if useful[src] && search.count < limit {
            search.enter(src);
        }
    }
    Ok(search.count)
}

struct RunSearch<'a> {
    adj: &'a [Vec<usize>],
    colors: &'a [u32],
    useful: &'a [bool],
    on_path: Vec<usize>,
    path: Vec<usize>,
    count: u64,
    limit: u64,
}

impl RunSearch<'_> {
    fn enter(&mut self, c: usize) {
        self.on_path[c] = self.path.len();
        self.path.push(c);
        let adj = self.adj;
        for &d in &adj[c] {
            if self.count >= self.limit {
                break;
            }
            if !self.useful[d] {
                continue;
            }
            let j = self.on_path[d];
            if j != usize::MAX {
                let max = self.path[j..].iter().map(|&x| self.colors[x]).max().unwrap_or(0);
                if max % 2 == 0 {
                    self.count += 1;
                }
            } else {
                self.enter(d);
            }
        }
        self.path.pop();
        self.on_path[c] = usize::MAX;
    }
}
