//! Block-parallel enumeration. The lasso space is cut into index ranges,
//! each counted on its own, and the partial counts are added up, so the
//! result does not depend on the number of workers.

use lasso_density_core::automaton::{ClassTally, LassoClassifier};
use lasso_density_core::count::{total_lassos, DensityCurve};
use lasso_density_core::{
    AutomatonError, ClassPartitionCounts, EnumerationCap, EnumerationError, Lasso, LassoProperty, LassoSpace,
    ParityAutomaton,
};
use num_bigint::BigUint;
use rayon::prelude::*;

/// Blocks handed out per worker; more blocks even out uneven predicates.
const BLOCKS_PER_WORKER: u64 = 8;

pub struct Workers {
    pool: rayon::ThreadPool,
    jobs: usize,
}

impl Workers {
    /// `jobs = 0` uses one worker per available core.
    pub fn new(jobs: usize) -> Self {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        let jobs = pool.current_num_threads();
        Workers { pool, jobs }
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    fn blocks(&self, space: &LassoSpace) -> Vec<std::ops::Range<u64>> {
        space.blocks(self.jobs as u64 * BLOCKS_PER_WORKER)
    }

    /// Applies `f` to every block of `space`; results come back in block order.
    pub fn map_blocks<T, F>(&self, space: &LassoSpace, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(std::ops::Range<u64>) -> T + Sync,
    {
        let blocks = self.blocks(space);
        self.pool.install(|| blocks.into_par_iter().map(&f).collect())
    }

    pub fn count<P: LassoProperty + Sync + ?Sized>(
        &self,
        prop: &P,
        alphabet_size: usize,
        n: usize,
        cap: EnumerationCap,
    ) -> Result<BigUint, EnumerationError> {
        let space = LassoSpace::new(alphabet_size, n, cap)?;
        let parts = self.map_blocks(&space, |r| space.count_in(prop, r));
        Ok(parts.into_iter().map(BigUint::from).sum())
    }

    pub fn curve<P: LassoProperty + Sync + ?Sized>(
        &self,
        prop: &P,
        alphabet_size: usize,
        n_max: usize,
        cap: EnumerationCap,
    ) -> Result<DensityCurve, EnumerationError> {
        if n_max == 0 {
            return Err(EnumerationError::ZeroBound);
        }
        LassoSpace::new(alphabet_size, n_max, cap)?;
        let counts = (1..=n_max)
            .map(|n| self.count(prop, alphabet_size, n, cap))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(DensityCurve::from_counts(alphabet_size, counts))
    }

    pub fn partition(
        &self,
        aut: &ParityAutomaton,
        n: usize,
        cap: EnumerationCap,
    ) -> Result<ClassPartitionCounts, AutomatonError> {
        let classifier = LassoClassifier::new(aut)?;
        let size = aut.alphabet().size();
        let space = LassoSpace::new(size, n, cap)?;
        let parts = self.map_blocks(&space, |r| classifier.tally(&space, r));
        let tally = parts.into_iter().fold(ClassTally::default(), |a, b| a + b);
        Ok(ClassPartitionCounts::from_tally(size, n, tally))
    }

    /// Compares two properties on every lasso of length `n`.
    pub fn compare<P, Q>(
        &self,
        left: &P,
        right: &Q,
        alphabet_size: usize,
        n: usize,
        cap: EnumerationCap,
    ) -> Result<Comparison, EnumerationError>
    where
        P: LassoProperty + Sync + ?Sized,
        Q: LassoProperty + Sync + ?Sized,
    {
        let space = LassoSpace::new(alphabet_size, n, cap)?;
        let parts = self.map_blocks(&space, |r| {
            let start = r.start;
            let mut part = Comparison {
                n,
                left: BigUint::default(),
                right: BigUint::default(),
                total: BigUint::default(),
                disagreements: 0,
                first_disagreement: None,
            };
            let (mut l, mut rr, mut index) = (0u64, 0u64, start);
            space.for_each_in(r, |lasso| {
                let a = left.holds(lasso);
                let b = right.holds(lasso);
                l += a as u64;
                rr += b as u64;
                if a != b {
                    part.disagreements += 1;
                    if part.first_disagreement.is_none() {
                        part.first_disagreement = Some((index, lasso.clone(), a));
                    }
                }
                index += 1;
            });
            part.left = l.into();
            part.right = rr.into();
            part
        });
        let mut out = Comparison {
            n,
            left: BigUint::default(),
            right: BigUint::default(),
            total: total_lassos(alphabet_size as u64, n as u32),
            disagreements: 0,
            first_disagreement: None,
        };
        // Blocks come back in index order, so the first witness is the
        // smallest disagreeing index.
        for p in parts {
            out.left += p.left;
            out.right += p.right;
            out.disagreements += p.disagreements;
            if out.first_disagreement.is_none() {
                out.first_disagreement = p.first_disagreement;
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub n: usize,
    /// Lassos satisfying the left property.
    pub left: BigUint,
    pub right: BigUint,
    pub total: BigUint,
    pub disagreements: u64,
    /// Enumeration index, lasso and the left verdict.
    pub first_disagreement: Option<(u64, Lasso, bool)>,
}
