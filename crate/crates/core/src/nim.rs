//! Positions of k-pile Nim and the nim-sum arithmetic that classifies them.
//!
//! A position is an *ordered* tuple of pile sizes; permutations of the same
//! multiset are distinct positions, which is what all the counting in this
//! crate relies on. A position is a P-position (previous player wins) exactly
//! when the bitwise XOR of its piles is zero.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Exact non-negative integer used for all sequence values and counts.
///
/// Counts like the number of P-positions with max pile below `n` grow like
/// `n^(k-1)`, so fixed-width integers are not enough for large arguments.
pub type Count = BigUint;

/// An ordered tuple of pile sizes. The pile count `k` is `piles().len()`
/// and is fixed for a given game, with empty piles allowed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position {
    piles: Vec<u64>,
}

impl Position {
    /// Builds a position from its pile sizes. Rejects an empty tuple:
    /// a game has at least one pile.
    pub fn new(piles: Vec<u64>) -> Result<Self> {
        if piles.is_empty() {
            return Err(Error::ZeroPileCount);
        }
        Ok(Position { piles })
    }

    pub fn piles(&self) -> &[u64] {
        &self.piles
    }

    pub fn pile_count(&self) -> usize {
        self.piles.len()
    }

    /// Total number of counters on the board.
    pub fn total_counters(&self) -> u128 {
        self.piles.iter().map(|&p| u128::from(p)).sum()
    }

    pub fn max_pile(&self) -> u64 {
        self.piles.iter().copied().max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.piles.iter().all(|&p| p == 0)
    }

    pub fn nim_sum(&self) -> u64 {
        nim_sum(&self.piles)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.piles.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// XOR-fold of a list of values; the empty list yields the identity 0.
pub fn nim_sum(values: &[u64]) -> u64 {
    values.iter().fold(0, |acc, &v| acc ^ v)
}

/// A position is a P-position exactly when its nim-sum is zero.
pub fn is_p_position(p: &Position) -> bool {
    p.nim_sum() == 0
}

/// Completes a (k-1)-pile prefix to the unique P-position extending it:
/// the last pile is the XOR of the prefix. The empty prefix yields the
/// one-pile game's only P-position, `(0)`.
pub fn complete_to_p(prefix: &[u64]) -> Position {
    let mut piles = prefix.to_vec();
    piles.push(nim_sum(prefix));
    Position { piles }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nim_sum_basics() {
        assert_eq!(nim_sum(&[]), 0);
        assert_eq!(nim_sum(&[37, 37]), 0);
        assert_eq!(nim_sum(&[14, 11, 5]), 0);
        assert_eq!(nim_sum(&[1, 2]), 3);
    }

    #[test]
    fn p_position_predicate() {
        assert!(is_p_position(&Position::new(vec![0, 1, 2, 3]).unwrap()));
        assert!(!is_p_position(&Position::new(vec![1, 0, 0]).unwrap()));
        assert!(is_p_position(&Position::new(vec![0; 6]).unwrap()));
    }

    #[test]
    fn completion_forces_p() {
        assert_eq!(complete_to_p(&[14, 11]).piles(), &[14, 11, 5]);
        assert_eq!(complete_to_p(&[9, 9]).piles(), &[9, 9, 0]);
        assert_eq!(complete_to_p(&[]).piles(), &[0]);
    }

    #[test]
    fn totals_and_maxima() {
        let p = Position::new(vec![14, 11, 5]).unwrap();
        assert_eq!(p.total_counters(), 30);
        assert_eq!(p.max_pile(), 14);
        let z = Position::new(vec![0, 0, 0]).unwrap();
        assert_eq!(z.total_counters(), 0);
        assert_eq!(z.max_pile(), 0);
    }

    #[test]
    fn empty_tuple_rejected() {
        assert_eq!(Position::new(vec![]), Err(Error::ZeroPileCount));
    }

    proptest! {
        #[test]
        fn nim_sum_splits(xs in proptest::collection::vec(any::<u64>(), 0..12),
                          ys in proptest::collection::vec(any::<u64>(), 0..12)) {
            let mut all = xs.clone();
            all.extend_from_slice(&ys);
            prop_assert_eq!(nim_sum(&all), nim_sum(&[nim_sum(&xs), nim_sum(&ys)]));
        }

        #[test]
        fn nim_sum_cancels(x in any::<u64>(), y in any::<u64>(), z in any::<u64>()) {
            if nim_sum(&[x, y]) == nim_sum(&[x, z]) {
                prop_assert_eq!(y, z);
            }
            // and the converse direction always holds
            prop_assert_eq!(nim_sum(&[x, y]), nim_sum(&[x, y]));
        }

        #[test]
        fn completion_is_p(prefix in proptest::collection::vec(any::<u64>(), 0..6)) {
            let p = complete_to_p(&prefix);
            prop_assert!(is_p_position(&p));
            prop_assert_eq!(p.pile_count(), prefix.len() + 1);
        }
    }
}
