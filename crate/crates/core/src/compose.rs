//! Convergence classes of fragment formulas and their boolean combinations.
//!
//! Every leaf of a boolean combination that falls into one of the five
//! fragments (bounded safety `ψ`, invariant `Gψ`, guarantee `Fψ`,
//! persistence `FGψ`, response `GFψ`, with `ψ` Next-only) has a known limit
//! density class. Leaves converging to 0 or 1 become constants, bounded
//! safety leaves are merged, and whatever is left is folded with the
//! composition table.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::count::{EnumerationCap, EnumerationError};
use crate::ltl::{LtlError, LtlFormula, SyntacticClass};
use crate::{Alphabet, Evaluator, Lasso, Letter, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComposeError {
    #[error(transparent)]
    Ltl(#[from] LtlError),
    #[error("bounded-safety prefix enumeration needs {requested} words, cap is {cap}")]
    CapExceeded { requested: BigUint, cap: u64 },
}

impl From<ComposeError> for Option<EnumerationError> {
    fn from(e: ComposeError) -> Self {
        match e {
            ComposeError::CapExceeded { requested, cap } => Some(EnumerationError::CapExceeded { requested, cap }),
            ComposeError::Ltl(_) => None,
        }
    }
}

/// Symbolic limit levels, ordered `Zero < Eps < One`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Zero,
    Eps,
    One,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Zero => "0",
            Level::Eps => "eps",
            Level::One => "1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConvergenceClass {
    Zero,
    One,
    /// Converges to a value strictly between 0 and 1, exact when known.
    Eps(Option<Rational>),
    /// Somewhere between two levels, `low < high`.
    Range(Level, Level),
    Unknown,
}

impl ConvergenceClass {
    /// The exact limit, when determined.
    pub fn value(&self) -> Option<Rational> {
        match self {
            ConvergenceClass::Zero => Some(Rational::zero()),
            ConvergenceClass::One => Some(Rational::one()),
            ConvergenceClass::Eps(v) => v.clone(),
            _ => None,
        }
    }

    fn levels(&self) -> Option<[bool; 3]> {
        let mut set = [false; 3];
        match self {
            ConvergenceClass::Zero => set[0] = true,
            ConvergenceClass::Eps(_) => set[1] = true,
            ConvergenceClass::One => set[2] = true,
            ConvergenceClass::Range(lo, hi) => {
                for s in &mut set[*lo as usize..=*hi as usize] {
                    *s = true;
                }
            }
            ConvergenceClass::Unknown => return None,
        }
        Some(set)
    }

    fn from_levels(set: [bool; 3]) -> Self {
        const LEVELS: [Level; 3] = [Level::Zero, Level::Eps, Level::One];
        let lo = set.iter().position(|&b| b).expect("nonempty level set");
        let hi = set.iter().rposition(|&b| b).expect("nonempty level set");
        if lo < hi {
            return ConvergenceClass::Range(LEVELS[lo], LEVELS[hi]);
        }
        match LEVELS[lo] {
            Level::Zero => ConvergenceClass::Zero,
            Level::Eps => ConvergenceClass::Eps(None),
            Level::One => ConvergenceClass::One,
        }
    }

    /// Class of the complement property.
    pub fn negate(&self) -> Self {
        let flip = |l: Level| match l {
            Level::Zero => Level::One,
            Level::Eps => Level::Eps,
            Level::One => Level::Zero,
        };
        match self {
            ConvergenceClass::Zero => ConvergenceClass::One,
            ConvergenceClass::One => ConvergenceClass::Zero,
            ConvergenceClass::Eps(v) => ConvergenceClass::Eps(v.as_ref().map(|v| Rational::one() - v)),
            ConvergenceClass::Range(lo, hi) => ConvergenceClass::Range(flip(*hi), flip(*lo)),
            ConvergenceClass::Unknown => ConvergenceClass::Unknown,
        }
    }
}

impl fmt::Display for ConvergenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvergenceClass::Zero => f.write_str("0"),
            ConvergenceClass::One => f.write_str("1"),
            ConvergenceClass::Eps(None) => f.write_str("eps"),
            ConvergenceClass::Eps(Some(v)) => write!(f, "eps({v})"),
            ConvergenceClass::Range(lo, hi) => write!(f, "range({lo}, {hi})"),
            ConvergenceClass::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    And,
    Or,
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connective::And => "and",
            Connective::Or => "or",
        })
    }
}

/// Composition table on classes. Exact values survive only the identity
/// cases `1 ∧ c` and `0 ∨ c`.
pub fn compose_classes(conn: Connective, left: &ConvergenceClass, right: &ConvergenceClass) -> ConvergenceClass {
    use ConvergenceClass::{One, Unknown, Zero};
    let (absorbing, neutral) = match conn {
        Connective::And => (Zero, One),
        Connective::Or => (One, Zero),
    };
    if *left == absorbing || *right == absorbing {
        return absorbing;
    }
    if *left == neutral {
        return right.clone();
    }
    if *right == neutral {
        return left.clone();
    }
    let (Some(l), Some(r)) = (left.levels(), right.levels()) else {
        return Unknown;
    };
    let mut out = [false; 3];
    for i in (0..3).filter(|&i| l[i]) {
        for j in (0..3).filter(|&j| r[j]) {
            match (conn, i.min(j), i.max(j)) {
                // Zero and One are absorbing or neutral.
                (Connective::And, lo, 2) | (Connective::Or, 0, lo) => out[lo] = true,
                (Connective::And, 0, _) => out[0] = true,
                (Connective::Or, _, 2) => out[2] = true,
                (Connective::And, _, _) => {
                    out[0] = true;
                    out[1] = true;
                }
                (Connective::Or, _, _) => {
                    out[1] = true;
                    out[2] = true;
                }
            }
        }
    }
    ConvergenceClass::from_levels(out)
}

/// Fraction of the `|Σ|^(d+1)` words of length `d + 1` satisfying a
/// Next-only formula of depth `d`. This is `r(n)` for every `n ≥ d + 1`.
pub fn bounded_safety_density(
    formula: &LtlFormula,
    alphabet: &Alphabet,
    cap: EnumerationCap,
) -> Result<Rational, ComposeError> {
    formula.check_atoms(alphabet)?;
    let depth = formula.next_depth()?;
    let size = alphabet.size() as u64;
    let words = BigUint::from(size).pow(depth as u32 + 1);
    if words > BigUint::from(cap.0) {
        return Err(ComposeError::CapExceeded {
            requested: words,
            cap: cap.0,
        });
    }
    let eval = Evaluator::new(formula, alphabet)?;
    let mut lasso = Lasso::from_base(vec![Letter(0); depth + 1], depth).expect("nonempty loop");
    let mut count = 0u64;
    loop {
        if eval.holds(&lasso) {
            count += 1;
        }
        // Odometer over the word, last position least significant.
        let word = lasso.base_mut();
        let mut i = word.len();
        loop {
            if i == 0 {
                return Ok(Rational::new(count.into(), words.into()));
            }
            i -= 1;
            if u64::from(word[i].0) + 1 < size {
                word[i].0 += 1;
                break;
            }
            word[i] = Letter(0);
        }
    }
}

/// What a simplification step did.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RuleEffect {
    /// `0 ∧ φ = 0`
    ZeroConjunctAbsorbs,
    /// `1 ∧ φ = φ`
    OneConjunctDropped,
    /// `0 ∨ φ = φ`
    ZeroDisjunctDropped,
    /// `1 ∨ φ = 1`
    OneDisjunctAbsorbs,
    /// Two bounded-safety operands combined into one.
    BoundedSafetyMerged(Connective),
    /// Symbolic composition table.
    Table(Connective),
}

impl fmt::Display for RuleEffect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleEffect::ZeroConjunctAbsorbs => f.write_str("zero conjunct absorbs"),
            RuleEffect::OneConjunctDropped => f.write_str("one conjunct dropped"),
            RuleEffect::ZeroDisjunctDropped => f.write_str("zero disjunct dropped"),
            RuleEffect::OneDisjunctAbsorbs => f.write_str("one disjunct absorbs"),
            RuleEffect::BoundedSafetyMerged(c) => write!(f, "bounded-safety {c} merged"),
            RuleEffect::Table(c) => write!(f, "table {c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceEntry {
    Leaf {
        formula: LtlFormula,
        syntactic: SyntacticClass,
        class: ConvergenceClass,
    },
    Rule {
        effect: RuleEffect,
        subject: LtlFormula,
        result: LtlFormula,
        class: ConvergenceClass,
    },
    Residual {
        formula: LtlFormula,
        class: ConvergenceClass,
    },
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceEntry::Leaf {
                formula,
                syntactic,
                class,
            } => write!(f, "leaf     {formula}  [{syntactic}]  -> {class}"),
            TraceEntry::Rule {
                effect,
                subject,
                result,
                class,
            } => write!(f, "rule     {effect}: {subject}  =>  {result}  -> {class}"),
            TraceEntry::Residual { formula, class } => write!(f, "residual {formula}  -> {class}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// What is left after eliminating constant leaves.
    pub residual: LtlFormula,
    pub class: ConvergenceClass,
    pub trace: Vec<TraceEntry>,
    /// Leaves outside every fragment.
    pub unknown_leaves: Vec<LtlFormula>,
}

enum Part {
    Const(bool),
    /// Bounded-safety formula with its density strictly inside (0, 1).
    Bs(LtlFormula, Rational),
    Class(LtlFormula, ConvergenceClass),
}

impl Part {
    fn formula(&self) -> LtlFormula {
        match self {
            Part::Const(true) => LtlFormula::True,
            Part::Const(false) => LtlFormula::False,
            Part::Bs(f, _) | Part::Class(f, _) => f.clone(),
        }
    }

    fn class(&self) -> ConvergenceClass {
        match self {
            Part::Const(true) => ConvergenceClass::One,
            Part::Const(false) => ConvergenceClass::Zero,
            Part::Bs(_, v) => ConvergenceClass::Eps(Some(v.clone())),
            Part::Class(_, c) => c.clone(),
        }
    }
}

struct Reducer<'a> {
    alphabet: &'a Alphabet,
    cap: EnumerationCap,
    trace: Vec<TraceEntry>,
    unknown: Vec<LtlFormula>,
}

impl Reducer<'_> {
    fn density(&self, f: &LtlFormula) -> Result<Rational, ComposeError> {
        bounded_safety_density(f, self.alphabet, self.cap)
    }

    fn bs_part(&self, f: LtlFormula) -> Result<Part, ComposeError> {
        let v = self.density(&f)?;
        Ok(if v.is_zero() {
            Part::Const(false)
        } else if v.is_one() {
            Part::Const(true)
        } else {
            Part::Bs(f, v)
        })
    }

    fn leaf(&mut self, f: &LtlFormula, syntactic: SyntacticClass) -> Result<Part, ComposeError> {
        use LtlFormula::{Eventually, Globally};
        let inner = |f: &LtlFormula| -> LtlFormula {
            match f {
                Globally(a) | Eventually(a) => match &**a {
                    Globally(b) | Eventually(b) if !a.is_next_only() => (**b).clone(),
                    _ => (**a).clone(),
                },
                _ => f.clone(),
            }
        };
        let part = match syntactic {
            SyntacticClass::BoundedSafety => self.bs_part(f.clone())?,
            // 0 unless the body holds everywhere.
            SyntacticClass::Invariant | SyntacticClass::Persistence => {
                Part::Const(self.density(&inner(f))?.is_one())
            }
            // 1 unless the body holds nowhere.
            SyntacticClass::Guarantee | SyntacticClass::Response => {
                Part::Const(!self.density(&inner(f))?.is_zero())
            }
            SyntacticClass::NotInFragment => {
                self.unknown.push(f.clone());
                Part::Class(f.clone(), ConvergenceClass::Unknown)
            }
        };
        self.trace.push(TraceEntry::Leaf {
            formula: f.clone(),
            syntactic,
            class: part.class(),
        });
        Ok(part)
    }

    fn reduce(&mut self, f: &LtlFormula) -> Result<Part, ComposeError> {
        let syntactic = f.classify();
        let (conn, l, r) = match f {
            LtlFormula::And(l, r) if syntactic == SyntacticClass::NotInFragment => (Connective::And, l, r),
            LtlFormula::Or(l, r) if syntactic == SyntacticClass::NotInFragment => (Connective::Or, l, r),
            _ => return self.leaf(f, syntactic),
        };
        let l = self.reduce(l)?;
        let r = self.reduce(r)?;
        let subject = match conn {
            Connective::And => l.formula().and(r.formula()),
            Connective::Or => l.formula().or(r.formula()),
        };
        let (effect, part) = match (conn, l, r) {
            (Connective::And, Part::Const(false), _) | (Connective::And, _, Part::Const(false)) => {
                (RuleEffect::ZeroConjunctAbsorbs, Part::Const(false))
            }
            (Connective::Or, Part::Const(true), _) | (Connective::Or, _, Part::Const(true)) => {
                (RuleEffect::OneDisjunctAbsorbs, Part::Const(true))
            }
            (Connective::And, Part::Const(true), x) | (Connective::And, x, Part::Const(true)) => {
                (RuleEffect::OneConjunctDropped, x)
            }
            (Connective::Or, Part::Const(false), x) | (Connective::Or, x, Part::Const(false)) => {
                (RuleEffect::ZeroDisjunctDropped, x)
            }
            (conn, Part::Bs(..), Part::Bs(..)) => (RuleEffect::BoundedSafetyMerged(conn), self.bs_part(subject.clone())?),
            (conn, l, r) => {
                let class = compose_classes(conn, &l.class(), &r.class());
                let part = match class {
                    ConvergenceClass::Zero => Part::Const(false),
                    ConvergenceClass::One => Part::Const(true),
                    c => Part::Class(subject.clone(), c),
                };
                (RuleEffect::Table(conn), part)
            }
        };
        self.trace.push(TraceEntry::Rule {
            effect,
            subject,
            result: part.formula(),
            class: part.class(),
        });
        Ok(part)
    }
}

/// Pushes negations inward while keeping `F`/`G` (so that fragment shapes
/// survive): `¬Gψ = F¬ψ`, `¬Fψ = G¬ψ`, `¬Xψ = X¬ψ`.
pub fn push_negations(f: &LtlFormula) -> LtlFormula {
    fn go(f: &LtlFormula, neg: bool) -> LtlFormula {
        use LtlFormula::*;
        match (f, neg) {
            (True, false) | (False, true) => True,
            (True, true) | (False, false) => False,
            (Atom(a), false) => Atom(a.clone()),
            (Atom(a), true) => Atom(a.clone()).not(),
            (Not(a), _) => go(a, !neg),
            (And(a, b), false) | (Or(a, b), true) => go(a, neg).and(go(b, neg)),
            (Or(a, b), false) | (And(a, b), true) => go(a, neg).or(go(b, neg)),
            (Implies(a, b), false) => go(a, true).or(go(b, false)),
            (Implies(a, b), true) => go(a, false).and(go(b, true)),
            (Next(a), _) => go(a, neg).next(),
            (Eventually(a), false) | (Globally(a), true) => go(a, neg).eventually(),
            (Globally(a), false) | (Eventually(a), true) => go(a, neg).globally(),
            (Until(a, b), false) | (Release(a, b), true) => go(a, neg).until(go(b, neg)),
            (Release(a, b), false) | (Until(a, b), true) => go(a, neg).release(go(b, neg)),
        }
    }
    go(f, false)
}

/// Classifies fragment leaves, eliminates 0/1 leaves, merges bounded-safety
/// operands and folds whatever remains with [`compose_classes`].
pub fn reduce_formula(
    formula: &LtlFormula,
    alphabet: &Alphabet,
    cap: EnumerationCap,
) -> Result<Reduction, ComposeError> {
    formula.check_atoms(alphabet)?;
    let mut r = Reducer {
        alphabet,
        cap,
        trace: Vec::new(),
        unknown: Vec::new(),
    };
    let part = r.reduce(&push_negations(formula))?;
    let (residual, class) = (part.formula(), part.class());
    r.trace.push(TraceEntry::Residual {
        formula: residual.clone(),
        class: class.clone(),
    });
    Ok(Reduction {
        residual,
        class,
        trace: r.trace,
        unknown_leaves: r.unknown,
    })
}

pub fn convergence_class(
    formula: &LtlFormula,
    alphabet: &Alphabet,
    cap: EnumerationCap,
) -> Result<ConvergenceClass, ComposeError> {
    Ok(reduce_formula(formula, alphabet, cap)?.class)
}

/// One-line summary used by reports, e.g. `eps(3/4)` or `unknown: a U b`.
pub fn describe(reduction: &Reduction) -> String {
    if reduction.unknown_leaves.is_empty() || reduction.class != ConvergenceClass::Unknown {
        format!("{}", reduction.class)
    } else {
        let leaves: Vec<String> = reduction.unknown_leaves.iter().map(|l| format!("{l}")).collect();
        format!("unknown: {}", leaves.join(", "))
    }
}
