//! Linear temporal logic: syntax, concrete syntax, lasso semantics and the
//! syntactic fragments used by the composition calculus.

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use thiserror::Error;

pub(crate) mod eval;
mod parser;

pub use eval::Evaluator;
pub use parser::{parse, ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LtlError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown atomic proposition `{0}`")]
    UnknownProposition(String),
    #[error("formula is not in the bounded-safety fragment (it uses U, R, F or G)")]
    NotBoundedSafety,
    #[error(transparent)]
    Lasso(#[from] crate::LassoError),
}

/// LTL abstract syntax. `Implies`, `Eventually` and `Globally` are kept as
/// written so that fragment recognition sees the user's shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LtlFormula {
    True,
    False,
    Atom(String),
    Not(Box<LtlFormula>),
    And(Box<LtlFormula>, Box<LtlFormula>),
    Or(Box<LtlFormula>, Box<LtlFormula>),
    Implies(Box<LtlFormula>, Box<LtlFormula>),
    Next(Box<LtlFormula>),
    Eventually(Box<LtlFormula>),
    Globally(Box<LtlFormula>),
    Until(Box<LtlFormula>, Box<LtlFormula>),
    Release(Box<LtlFormula>, Box<LtlFormula>),
}

/// The fragments `ψ`, `Gψ`, `Fψ`, `FGψ` and `GFψ` over a Next-only `ψ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SyntacticClass {
    BoundedSafety,
    Invariant,
    Guarantee,
    Persistence,
    Response,
    NotInFragment,
}

impl fmt::Display for SyntacticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SyntacticClass::BoundedSafety => "bounded-safety",
            SyntacticClass::Invariant => "invariant",
            SyntacticClass::Guarantee => "guarantee",
            SyntacticClass::Persistence => "persistence",
            SyntacticClass::Response => "response",
            SyntacticClass::NotInFragment => "not-in-fragment",
        })
    }
}

use LtlFormula::*;

impl LtlFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Not(Box::new(self))
    }

    pub fn and(self, rhs: Self) -> Self {
        And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: Self) -> Self {
        Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: Self) -> Self {
        Implies(Box::new(self), Box::new(rhs))
    }

    pub fn next(self) -> Self {
        Next(Box::new(self))
    }

    pub fn eventually(self) -> Self {
        Eventually(Box::new(self))
    }

    pub fn globally(self) -> Self {
        Globally(Box::new(self))
    }

    pub fn until(self, rhs: Self) -> Self {
        Until(Box::new(self), Box::new(rhs))
    }

    pub fn release(self, rhs: Self) -> Self {
        Release(Box::new(self), Box::new(rhs))
    }

    /// Parses the concrete syntax and checks atoms against `alphabet`.
    pub fn parse(text: &str, alphabet: &crate::Alphabet) -> Result<Self, LtlError> {
        let f = parse(text)?;
        f.check_atoms(alphabet)?;
        Ok(f)
    }

    pub fn check_atoms(&self, alphabet: &crate::Alphabet) -> Result<(), LtlError> {
        let mut missing = None;
        self.visit(&mut |f| {
            if let Atom(name) = f {
                if missing.is_none() && alphabet.index_of(name).is_none() {
                    missing = Some(name.clone());
                }
            }
        });
        match missing {
            Some(name) => Err(LtlError::UnknownProposition(name)),
            None => Ok(()),
        }
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a LtlFormula)) {
        f(self);
        match self {
            True | False | Atom(_) => {}
            Not(a) | Next(a) | Eventually(a) | Globally(a) => a.visit(f),
            And(a, b) | Or(a, b) | Implies(a, b) | Until(a, b) | Release(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// True iff the formula only uses boolean connectives and `X`.
    pub fn is_next_only(&self) -> bool {
        match self {
            True | False | Atom(_) => true,
            Not(a) | Next(a) => a.is_next_only(),
            And(a, b) | Or(a, b) | Implies(a, b) => a.is_next_only() && b.is_next_only(),
            Eventually(_) | Globally(_) | Until(..) | Release(..) => false,
        }
    }

    /// Maximal nesting depth of `X` in a bounded-safety formula; its value
    /// on a word only depends on positions `0..=depth`.
    pub fn next_depth(&self) -> Result<usize, LtlError> {
        if !self.is_next_only() {
            return Err(LtlError::NotBoundedSafety);
        }
        Ok(self.next_depth_unchecked())
    }

    fn next_depth_unchecked(&self) -> usize {
        match self {
            True | False | Atom(_) => 0,
            Not(a) => a.next_depth_unchecked(),
            Next(a) => 1 + a.next_depth_unchecked(),
            And(a, b) | Or(a, b) | Implies(a, b) => {
                a.next_depth_unchecked().max(b.next_depth_unchecked())
            }
            Eventually(_) | Globally(_) | Until(..) | Release(..) => 0,
        }
    }

    /// Purely syntactic fragment recognition; `G true` is an invariant.
    pub fn classify(&self) -> SyntacticClass {
        if self.is_next_only() {
            return SyntacticClass::BoundedSafety;
        }
        match self {
            Globally(inner) => match &**inner {
                Eventually(psi) if psi.is_next_only() => SyntacticClass::Response,
                psi if psi.is_next_only() => SyntacticClass::Invariant,
                _ => SyntacticClass::NotInFragment,
            },
            Eventually(inner) => match &**inner {
                Globally(psi) if psi.is_next_only() => SyntacticClass::Persistence,
                psi if psi.is_next_only() => SyntacticClass::Guarantee,
                _ => SyntacticClass::NotInFragment,
            },
            _ => SyntacticClass::NotInFragment,
        }
    }

    /// Negation normal form over `{¬, ∧, ∨, X, U, R}` with negation only on
    /// atoms. `F a` becomes `true U a` and `G a` becomes `false R a`.
    pub fn to_nnf(&self) -> LtlFormula {
        self.nnf(false)
    }

    fn nnf(&self, neg: bool) -> LtlFormula {
        match (self, neg) {
            (True, false) | (False, true) => True,
            (True, true) | (False, false) => False,
            (Atom(a), false) => Atom(a.clone()),
            (Atom(a), true) => Atom(a.clone()).not(),
            (Not(a), _) => a.nnf(!neg),
            (And(a, b), false) | (Or(a, b), true) => a.nnf(neg).and(b.nnf(neg)),
            (Or(a, b), false) | (And(a, b), true) => a.nnf(neg).or(b.nnf(neg)),
            (Implies(a, b), false) => a.nnf(true).or(b.nnf(false)),
            (Implies(a, b), true) => a.nnf(false).and(b.nnf(true)),
            (Next(a), _) => a.nnf(neg).next(),
            (Eventually(a), false) | (Globally(a), true) => True.until(a.nnf(neg)),
            (Globally(a), false) | (Eventually(a), true) => False.release(a.nnf(neg)),
            (Until(a, b), false) | (Release(a, b), true) => a.nnf(neg).until(b.nnf(neg)),
            (Release(a, b), false) | (Until(a, b), true) => a.nnf(neg).release(b.nnf(neg)),
        }
    }

    /// Evaluates on `u·v^ω`. Convenience wrapper around [`Evaluator`].
    pub fn holds_on(
        &self,
        alphabet: &crate::Alphabet,
        lasso: &crate::Lasso,
    ) -> Result<bool, LtlError> {
        lasso.check_alphabet(alphabet)?;
        Ok(Evaluator::new(self, alphabet)?.holds(lasso))
    }

    fn precedence(&self) -> u8 {
        match self {
            Implies(..) => 1,
            Or(..) => 2,
            And(..) => 3,
            Not(_) | Next(_) | Eventually(_) | Globally(_) => 4,
            Until(..) | Release(..) => 5,
            True | False | Atom(_) => 6,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            True => f.write_str("true")?,
            False => f.write_str("false")?,
            Atom(a) => f.write_str(a)?,
            Not(a) => {
                f.write_str("!")?;
                a.fmt_prec(f, 4)?;
            }
            Next(a) | Eventually(a) | Globally(a) => {
                let op = match self {
                    Next(_) => "X ",
                    Eventually(_) => "F ",
                    _ => "G ",
                };
                f.write_str(op)?;
                a.fmt_prec(f, 4)?;
            }
            Implies(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(" -> ")?;
                b.fmt_prec(f, 1)?;
            }
            Or(a, b) => {
                a.fmt_prec(f, 2)?;
                f.write_str(" | ")?;
                b.fmt_prec(f, 3)?;
            }
            And(a, b) => {
                a.fmt_prec(f, 3)?;
                f.write_str(" & ")?;
                b.fmt_prec(f, 4)?;
            }
            Until(a, b) | Release(a, b) => {
                a.fmt_prec(f, 6)?;
                f.write_str(if matches!(self, Until(..)) { " U " } else { " R " })?;
                b.fmt_prec(f, 4)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Prints the concrete syntax accepted by [`parse`] with minimal
/// parentheses.
impl fmt::Display for LtlFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
