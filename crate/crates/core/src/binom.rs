//! Binomial coefficients: a shared exact triangle, a machine-word triangle
//! for hot enumeration loops, and the generalized coefficient C(x, j) for
//! arbitrary integer x.
//!
//! Convention throughout the crate: C(n, r) = 0 whenever r < 0 or r > n, and
//! C(0, 0) = 1.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Pascal triangle of exact binomial coefficients up to a fixed `n`.
///
/// Built once and then read-only; rows are indexed by `n`, entries by `r`.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    rows: Vec<Vec<BigInt>>,
}

impl BinomialTable {
    /// Builds the triangle for all `C(n, r)` with `n <= n_max`.
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for r in 1..n {
                row.push(&prev[r - 1] + &prev[r]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        BinomialTable { rows }
    }

    /// Largest `n` the table covers.
    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, r)` with the zero-outside-range convention. Panics if `n`
    /// exceeds the table size (a construction-time bug, not input data).
    pub fn get(&self, n: usize, r: i64) -> BigInt {
        assert!(n < self.rows.len(), "binomial table too small for n={n}");
        if r < 0 || r as usize > n {
            BigInt::zero()
        } else {
            self.rows[n][r as usize].clone()
        }
    }

    /// Borrowing variant for in-range indices.
    pub fn get_ref(&self, n: usize, r: usize) -> &BigInt {
        &self.rows[n][r]
    }
}

/// Pascal triangle in `i64`. Valid for `n <= 60` (middle entries stay below
/// 2^57, leaving headroom for the signed sums taken over them), which covers
/// every enumeration cap in this crate. Entries outside `0..=n` are handled
/// by [`tri_get`].
pub fn triangle_i64(n_max: usize) -> Vec<Vec<i64>> {
    assert!(n_max <= 60, "i64 triangle limited to n <= 60");
    let mut rows: Vec<Vec<i64>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![1]);
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        row.push(1i64);
        for r in 1..n {
            row.push(prev[r - 1] + prev[r]);
        }
        row.push(1);
        rows.push(row);
    }
    rows
}

/// Zero-outside-range lookup into an `i64` triangle.
#[inline]
pub fn tri_get(tri: &[Vec<i64>], n: usize, r: i64) -> i64 {
    if r < 0 || r as usize > n {
        0
    } else {
        tri[n][r as usize]
    }
}

/// Generalized binomial coefficient C(x, j) for any integer `x`:
/// x(x−1)…(x−j+1)/j!. Always an integer; computed by the exact stepwise
/// recurrence C(x, i) = C(x, i−1)·(x−i+1)/i.
pub fn binomial_at(x: i64, j: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 1..=j {
        acc *= BigInt::from(x - (i as i64) + 1);
        let (q, r) = num_integer::Integer::div_rem(&acc, &BigInt::from(i));
        debug_assert!(r.is_zero(), "product of {i} consecutive integers divisible by {i}!");
        acc = q;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_matches_factorial_definition() {
        let t = BinomialTable::new(20);
        assert_eq!(t.get(0, 0), BigInt::from(1));
        assert_eq!(t.get(10, 4), BigInt::from(210));
        assert_eq!(t.get(20, 10), BigInt::from(184_756));
        assert_eq!(t.get(5, -1), BigInt::zero());
        assert_eq!(t.get(5, 6), BigInt::zero());
    }

    #[test]
    fn big_entries_exceed_machine_words() {
        let t = BinomialTable::new(70);
        let c = t.get(70, 35);
        assert!(c > BigInt::from(u64::MAX));
        // Cross-check the Pascal construction against the multiplicative route.
        assert_eq!(c, binomial_at(70, 35));
    }

    #[test]
    fn i64_triangle_agrees_with_exact_table() {
        let exact = BinomialTable::new(60);
        let fast = triangle_i64(60);
        for n in 0..=60usize {
            for r in 0..=n {
                assert_eq!(BigInt::from(tri_get(&fast, n, r as i64)), exact.get(n, r as i64));
            }
        }
    }

    #[test]
    fn generalized_binomial_handles_negative_arguments() {
        assert_eq!(binomial_at(5, 2), BigInt::from(10));
        assert_eq!(binomial_at(0, 0), BigInt::from(1));
        assert_eq!(binomial_at(-2, 1), BigInt::from(-2));
        assert_eq!(binomial_at(-1, 3), BigInt::from(-1));
        assert_eq!(binomial_at(3, 5), BigInt::zero());
        // Agrees with the table on ordinary arguments.
        let t = BinomialTable::new(30);
        for n in 0..=30i64 {
            for j in 0..=30usize {
                assert_eq!(binomial_at(n, j), t.get(n as usize, j as i64));
            }
        }
    }
}
