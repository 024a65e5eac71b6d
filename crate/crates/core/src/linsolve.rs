//! Exact Gauss-Jordan elimination over the rationals.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::Rational;

/// Solves `A·X = B` for square `A` and a block of right-hand sides `B`
/// (one row per equation). Returns `None` if `A` is singular.
pub(crate) fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Vec<Rational>>) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        if !inv.is_one() {
            for x in a[col][col..].iter_mut().chain(b[col].iter_mut()) {
                *x *= &inv;
            }
        }
        let pivot_row = a[col].clone();
        let pivot_rhs = b[col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for (x, p) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
            for (x, p) in b[r].iter_mut().zip(&pivot_rhs) {
                *x -= &factor * p;
            }
        }
    }
    Some(b)
}
