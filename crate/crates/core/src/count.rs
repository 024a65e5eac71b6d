//! Brute-force counting over all lassos of a bound.
//!
//! The lassos of length `n` over `Σ` are indexed `0..n·|Σ|^n`: index `i`
//! has loop entry `i / |Σ|^n` and base word `i mod |Σ|^n` in base `|Σ|`
//! with position 0 most significant. Any partition of the index space into
//! ranges and any order of summing the per-range counts yields the same
//! totals, which is what parallel drivers rely on.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::rational::{self, Rational};
use crate::{Alphabet, Lasso, Letter};

/// A membership test on lassos. Implementations must be pure.
pub trait LassoProperty {
    fn holds(&self, lasso: &Lasso) -> bool;
}

impl<F: Fn(&Lasso) -> bool> LassoProperty for F {
    fn holds(&self, lasso: &Lasso) -> bool {
        self(lasso)
    }
}

impl LassoProperty for crate::Evaluator {
    fn holds(&self, lasso: &Lasso) -> bool {
        crate::Evaluator::holds(self, lasso)
    }
}

/// The complement property.
#[derive(Debug, Clone)]
pub struct Complement<P>(pub P);

impl<P: LassoProperty> LassoProperty for Complement<P> {
    fn holds(&self, lasso: &Lasso) -> bool {
        !self.0.holds(lasso)
    }
}

/// Refuses enumerations with more lassos than this.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap(pub u64);

impl EnumerationCap {
    pub const DEFAULT: EnumerationCap = EnumerationCap(1_000_000_000);
}

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap::DEFAULT
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("enumeration of {requested} items exceeds the cap of {cap}")]
    CapExceeded { requested: BigUint, cap: u64 },
    #[error("bound must be at least 1")]
    ZeroBound,
}

/// `n·|Σ|^n`
pub fn total_lassos(alphabet_size: u64, n: u32) -> BigUint {
    BigUint::from(n) * BigUint::from(alphabet_size).pow(n)
}

/// `|Σ|·(n+1)/n`, the growth factor of the universal property.
pub fn universal_growth(alphabet_size: u64, n: u32) -> Rational {
    rational::ratio(alphabet_size * (n as u64 + 1), n)
}

/// The `n·|Σ|^n` lassos of one bound, within an [`EnumerationCap`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LassoSpace {
    alphabet_size: u64,
    n: usize,
    words: u64,
}

impl LassoSpace {
    pub fn new(alphabet_size: usize, n: usize, cap: EnumerationCap) -> Result<Self, EnumerationError> {
        if n == 0 {
            return Err(EnumerationError::ZeroBound);
        }
        let total = total_lassos(alphabet_size as u64, n as u32);
        if total > BigUint::from(cap.0) {
            return Err(EnumerationError::CapExceeded {
                requested: total,
                cap: cap.0,
            });
        }
        Ok(LassoSpace {
            alphabet_size: alphabet_size as u64,
            n,
            words: (alphabet_size as u64).pow(n as u32),
        })
    }

    pub fn bound(&self) -> usize {
        self.n
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size as usize
    }

    pub fn len(&self) -> u64 {
        self.words * self.n as u64
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The lasso with a given index.
    pub fn lasso(&self, index: u64) -> Lasso {
        let mut base = vec![Letter::EMPTY; self.n];
        let loop_start = (index / self.words) as usize;
        let mut w = index % self.words;
        for slot in base.iter_mut().rev() {
            *slot = Letter((w % self.alphabet_size) as u32);
            w /= self.alphabet_size;
        }
        Lasso::from_base(base, loop_start).expect("loop entry below bound")
    }

    /// Visits the lassos with indices in `range`, in index order.
    pub fn for_each_in(&self, range: Range<u64>, mut f: impl FnMut(&Lasso)) {
        let end = range.end.min(self.len());
        if range.start >= end {
            return;
        }
        let mut lasso = self.lasso(range.start);
        let top = (self.alphabet_size - 1) as u32;
        for _ in range.start..end {
            f(&lasso);
            // Odometer step on the base; a full wrap moves the loop entry.
            let base = lasso.base_mut();
            let mut carry = true;
            for slot in base.iter_mut().rev() {
                if slot.0 < top {
                    slot.0 += 1;
                    carry = false;
                    break;
                }
                slot.0 = 0;
            }
            if carry {
                let next = lasso.loop_start() + 1;
                if next < self.n {
                    lasso.set_loop_start(next);
                }
            }
        }
    }

    pub fn for_each(&self, f: impl FnMut(&Lasso)) {
        self.for_each_in(0..self.len(), f)
    }

    /// Number of lassos in `range` satisfying `prop`.
    pub fn count_in<P: LassoProperty + ?Sized>(&self, prop: &P, range: Range<u64>) -> u64 {
        let mut c = 0u64;
        self.for_each_in(range, |l| c += prop.holds(l) as u64);
        c
    }

    /// Splits the index space into at most `blocks` contiguous ranges.
    pub fn blocks(&self, blocks: u64) -> Vec<Range<u64>> {
        let len = self.len();
        let blocks = blocks.clamp(1, len);
        let step = len.div_ceil(blocks);
        (0..blocks)
            .map(|b| (b * step).min(len)..((b + 1) * step).min(len))
            .filter(|r| !r.is_empty())
            .collect()
    }
}

/// `#φ(n)`, the number of `n`-models.
pub fn count_models<P: LassoProperty + ?Sized>(
    prop: &P,
    alphabet: &Alphabet,
    n: usize,
    cap: EnumerationCap,
) -> Result<BigUint, EnumerationError> {
    let space = LassoSpace::new(alphabet.size(), n, cap)?;
    Ok(BigUint::from(space.count_in(prop, 0..space.len())))
}

/// `n·|Σ|^n − #φ(n)`.
pub fn complement_count<P: LassoProperty + ?Sized>(
    prop: &P,
    alphabet: &Alphabet,
    n: usize,
    cap: EnumerationCap,
) -> Result<BigUint, EnumerationError> {
    let models = count_models(prop, alphabet, n, cap)?;
    Ok(total_lassos(alphabet.size() as u64, n as u32) - models)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityRow {
    pub n: usize,
    pub count: BigUint,
    pub total: BigUint,
    pub rate: Rational,
}

/// `#φ(n)`, `n·|Σ|^n` and `r_φ(n)` for `n = 1..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityCurve {
    alphabet_size: usize,
    rows: Vec<DensityRow>,
}

impl DensityCurve {
    /// Builds a curve from `#φ(1), #φ(2), …`.
    pub fn from_counts(alphabet_size: usize, counts: Vec<BigUint>) -> Self {
        let rows = counts
            .into_iter()
            .enumerate()
            .map(|(i, count)| {
                let n = i + 1;
                let total = total_lassos(alphabet_size as u64, n as u32);
                assert!(count <= total, "count exceeds lasso total at n = {n}");
                let rate = rational::from_counts(&count, &total);
                DensityRow { n, count, total, rate }
            })
            .collect();
        DensityCurve {
            alphabet_size,
            rows,
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn rows(&self) -> &[DensityRow] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> Option<&DensityRow> {
        n.checked_sub(1).and_then(|i| self.rows.get(i))
    }

    pub fn rate(&self, n: usize) -> Option<&Rational> {
        self.row(n).map(|r| &r.rate)
    }

    /// `ς_φ(n) = #φ(n+1)/#φ(n)`; absent when `#φ(n) = 0` or the curve
    /// stops before `n + 1`.
    pub fn growth(&self, n: usize) -> Option<Rational> {
        let cur = self.row(n)?;
        let next = self.row(n + 1)?;
        if cur.count.is_zero() {
            return None;
        }
        Some(rational::from_counts(&next.count, &cur.count))
    }

    /// The curve of the complement property.
    pub fn complement(&self) -> DensityCurve {
        DensityCurve::from_counts(
            self.alphabet_size,
            self.rows.iter().map(|r| &r.total - &r.count).collect(),
        )
    }
}

pub fn density_curve<P: LassoProperty + ?Sized>(
    prop: &P,
    alphabet: &Alphabet,
    n_max: usize,
    cap: EnumerationCap,
) -> Result<DensityCurve, EnumerationError> {
    if n_max == 0 {
        return Err(EnumerationError::ZeroBound);
    }
    // Largest bound first so an oversized request fails before any work.
    LassoSpace::new(alphabet.size(), n_max, cap)?;
    let counts = (1..=n_max)
        .map(|n| count_models(prop, alphabet, n, cap))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DensityCurve::from_counts(alphabet.size(), counts))
}

pub fn growth_function(curve: &DensityCurve, n: usize) -> Option<Rational> {
    curve.growth(n)
}
