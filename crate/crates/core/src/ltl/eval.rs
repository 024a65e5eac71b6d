//! LTL semantics on lassos.
//!
//! A lasso of length `n` is a graph on `n` positions where the last one
//! steps back to the loop entry. Every subformula is evaluated on all `n`
//! positions bottom-up; `U` is the least and `R` the greatest fixed point
//! on that graph.

use alloc::vec;
use alloc::vec::Vec;

use super::{LtlError, LtlFormula};
use crate::{Alphabet, Lasso};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    True,
    False,
    Lit { prop: usize, positive: bool },
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    Until(usize, usize),
    Release(usize, usize),
}

/// A formula compiled to negation normal form against one alphabet.
/// Cheap to share across threads; every call allocates its own scratch.
#[derive(Debug, Clone)]
pub struct Evaluator {
    nodes: Vec<Node>,
}

impl Evaluator {
    pub fn new(formula: &LtlFormula, alphabet: &Alphabet) -> Result<Self, LtlError> {
        let mut nodes = Vec::new();
        compile(&formula.to_nnf(), alphabet, &mut nodes)?;
        Ok(Evaluator { nodes })
    }

    /// `u·v^ω ⊨ φ`. The lasso's letters must belong to the alphabet the
    /// evaluator was compiled for.
    pub fn holds(&self, lasso: &Lasso) -> bool {
        let n = lasso.len();
        let vals = self.eval(lasso);
        vals[(self.nodes.len() - 1) * n]
    }

    /// Truth value of the formula at every base position.
    pub fn positions(&self, lasso: &Lasso) -> Vec<bool> {
        let n = lasso.len();
        let vals = self.eval(lasso);
        vals[(self.nodes.len() - 1) * n..].to_vec()
    }

    fn eval(&self, lasso: &Lasso) -> Vec<bool> {
        let n = lasso.len();
        let s = lasso.loop_start();
        let base = lasso.base();
        let mut vals = vec![false; self.nodes.len() * n];
        for (k, node) in self.nodes.iter().enumerate() {
            let (done, rest) = vals.split_at_mut(k * n);
            let out = &mut rest[..n];
            let child = |c: usize| &done[c * n..(c + 1) * n];
            match *node {
                Node::True => out.fill(true),
                Node::False => {}
                Node::Lit { prop, positive } => {
                    for (o, l) in out.iter_mut().zip(base) {
                        *o = l.contains(prop) == positive;
                    }
                }
                Node::And(a, b) => {
                    for ((o, x), y) in out.iter_mut().zip(child(a)).zip(child(b)) {
                        *o = *x && *y;
                    }
                }
                Node::Or(a, b) => {
                    for ((o, x), y) in out.iter_mut().zip(child(a)).zip(child(b)) {
                        *o = *x || *y;
                    }
                }
                Node::Next(a) => {
                    let a = child(a);
                    for i in 0..n {
                        out[i] = a[lasso.successor(i)];
                    }
                }
                Node::Until(a, b) => sweep(out, child(a), child(b), s, false),
                Node::Release(a, b) => sweep(out, child(a), child(b), s, true),
            }
        }
        vals
    }
}

/// Backward sweeps computing `U` (`release = false`, start from ⊥) or `R`
/// (`release = true`, start from ⊤). Two sweeps over the loop reach the
/// fixed point: after the first, the loop entry holds its final value since
/// its witnesses need no wrap-around.
fn sweep(out: &mut [bool], lhs: &[bool], rhs: &[bool], loop_start: usize, release: bool) {
    let n = out.len();
    out.fill(release);
    let step = |out: &[bool], i: usize, next: usize| {
        if release {
            rhs[i] && (lhs[i] || out[next])
        } else {
            rhs[i] || (lhs[i] && out[next])
        }
    };
    for _ in 0..2 {
        for i in (loop_start..n).rev() {
            let next = if i + 1 == n { loop_start } else { i + 1 };
            out[i] = step(out, i, next);
        }
    }
    for i in (0..loop_start).rev() {
        out[i] = step(out, i, i + 1);
    }
}

fn compile(f: &LtlFormula, alphabet: &Alphabet, nodes: &mut Vec<Node>) -> Result<usize, LtlError> {
    use LtlFormula as L;
    let node = match f {
        L::True => Node::True,
        L::False => Node::False,
        L::Atom(name) => Node::Lit {
            prop: lookup(alphabet, name)?,
            positive: true,
        },
        L::Not(inner) => match &**inner {
            L::Atom(name) => Node::Lit {
                prop: lookup(alphabet, name)?,
                positive: false,
            },
            _ => unreachable!("negation normal form"),
        },
        L::And(a, b) => Node::And(compile(a, alphabet, nodes)?, compile(b, alphabet, nodes)?),
        L::Or(a, b) => Node::Or(compile(a, alphabet, nodes)?, compile(b, alphabet, nodes)?),
        L::Next(a) => Node::Next(compile(a, alphabet, nodes)?),
        L::Until(a, b) => Node::Until(compile(a, alphabet, nodes)?, compile(b, alphabet, nodes)?),
        L::Release(a, b) => {
            Node::Release(compile(a, alphabet, nodes)?, compile(b, alphabet, nodes)?)
        }
        L::Implies(..) | L::Eventually(_) | L::Globally(_) => unreachable!("negation normal form"),
    };
    nodes.push(node);
    Ok(nodes.len() - 1)
}

fn lookup(alphabet: &Alphabet, name: &str) -> Result<usize, LtlError> {
    alphabet
        .index_of(name)
        .ok_or_else(|| LtlError::UnknownProposition(name.into()))
}
