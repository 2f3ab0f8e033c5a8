//! The four P-position counting families for k-pile Nim, computed exactly.
//!
//! Indexed by maximum pile:
//! - `max_at_most(k, n)`: P-positions with every pile `<= n`.
//! - `max_exact(k, n)`: P-positions whose largest pile is exactly `n`.
//!
//! Indexed by total counters (always even for a P-position):
//! - `total_at_most(k, n)`: P-positions with total `<= 2n`.
//! - `total_exact(k, n)`: P-positions with total exactly `2n`.
//!
//! For the max-indexed families, write `n = 2^b - 1 + c` with
//! `b = floor(log2 n)` and `1 <= c <= 2^b`. Counting positions by how many
//! piles carry a value `>= 2^b` (always an even number of them) gives
//!
//! ```text
//! k odd:   max_at_most(k, n) = ((2^b + c)^k + (2^b - c)^k) / 2^(b+1)
//! k even:  max_at_most(k, n) = ((2^b + c)^k + (2^b - c)^k - 2c^k) / 2^(b+1)
//!                              + max_at_most(k, c - 1)
//! ```
//!
//! (the even case recurses because all `k` piles may sit at `2^b` or above,
//! and stripping the common `2^b` bit preserves the nim-sum). The divisions
//! are exact; this module asserts so.
//!
//! For the total-indexed families, doubling every pile of a P-position with
//! total `2n` gives the all-even-piles P-position with total `4n`, and a
//! P-position with an odd total-parity pattern is reduced by removing one
//! counter from each odd pile. Splitting on the number of odd piles (which
//! is 2, 6, 10, ... at odd half-totals and 0, 4, 8, ... at even ones) yields
//!
//! ```text
//! total_exact(k, 2m+1) = sum_i C(k, 4i+2) * total_exact(k, m-i)
//! total_exact(k, 2m+2) = sum_i C(k, 4i)   * total_exact(k, m+1-i)
//! ```
//!
//! with terms at negative indices read as zero, and the same shape for the
//! partial sums `total_at_most`. For three piles there is a closed form:
//! every bit of `n` is carried by exactly two of the three piles, so
//! `total_exact(3, n) = 3^popcount(n)`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::nim::Count;

/// Which of the four counting families a query addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    MaxAtMost,
    MaxExact,
    TotalAtMost,
    TotalExact,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::MaxAtMost,
        Family::MaxExact,
        Family::TotalAtMost,
        Family::TotalExact,
    ];

    /// Single-letter name used on the command line and in reports:
    /// `a`/`d` for the max-indexed pair, `A`/`D` for the total-indexed pair.
    pub fn letter(self) -> char {
        match self {
            Family::MaxAtMost => 'a',
            Family::MaxExact => 'd',
            Family::TotalAtMost => 'A',
            Family::TotalExact => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c {
            'a' => Some(Family::MaxAtMost),
            'd' => Some(Family::MaxExact),
            'A' => Some(Family::TotalAtMost),
            'D' => Some(Family::TotalExact),
            _ => None,
        }
    }

    /// Stable numeric tag, used by serialized memo caches.
    pub fn tag(self) -> u8 {
        match self {
            Family::MaxAtMost => 0,
            Family::MaxExact => 1,
            Family::TotalAtMost => 2,
            Family::TotalExact => 3,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Family> {
        match tag {
            0 => Some(Family::MaxAtMost),
            1 => Some(Family::MaxExact),
            2 => Some(Family::TotalAtMost),
            3 => Some(Family::TotalExact),
            _ => None,
        }
    }
}

/// The split `n = 2^b - 1 + c` driving the max-indexed formulas:
/// `b = floor(log2 n)` and `c = n + 1 - 2^b`, so `1 <= c <= 2^b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxDecomposition {
    pub b: u32,
    pub c: u64,
}

/// Splits a positive index as `n = 2^b - 1 + c`. Zero has no leading bit
/// and is rejected.
pub fn decompose_max_index(n: u64) -> Result<MaxDecomposition> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let b = n.ilog2();
    let c = n - (1u64 << b) + 1;
    Ok(MaxDecomposition { b, c })
}

/// Number of ones in the binary expansion of `n`.
pub fn binary_weight(n: u64) -> u32 {
    n.count_ones()
}

/// Exact binomial coefficient, with `C(k, i) = 0` for `i > k`.
pub fn binomial(k: u64, i: u64) -> Count {
    if i > k {
        return BigUint::zero();
    }
    let i = i.min(k - i);
    let mut c = BigUint::one();
    for j in 0..i {
        c = c * (k - j) / (j + 1);
    }
    c
}

/// Divides by `2^shift`, panicking if the quotient is not an exact
/// non-negative integer. The counting formulas guarantee exactness, so a
/// failure here means a formula bug, not bad input.
fn exact_shift(num: BigInt, shift: u32) -> Count {
    assert_ne!(num.sign(), Sign::Minus, "count numerator went negative");
    let (q, r) = num.div_rem(&(BigInt::one() << shift));
    assert!(r.is_zero(), "division by 2^{shift} must be exact");
    q.to_biguint().expect("non-negative by the sign check")
}

fn big(v: u64) -> Count {
    BigUint::from(v)
}

/// Memoizing calculator for all four families.
///
/// One engine per logical thread of work: the memo tables make repeated and
/// prefix queries cheap, and recursion depth stays `O(log n)`, so indices up
/// to `2^60` are fine. The `*_parity_form` and `*_recursive` variants
/// recompute through the generic route without touching the per-k shortcut
/// results, so tests can compare genuinely independent paths.
#[derive(Debug, Default)]
pub struct SequenceEngine {
    memo: HashMap<(Family, u64, u64), Count>,
    general_total: HashMap<(bool, u64, u64), Count>,
}

impl SequenceEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Term of the selected family.
    pub fn term(&mut self, family: Family, k: usize, n: u64) -> Result<Count> {
        match family {
            Family::MaxAtMost => self.max_at_most(k, n),
            Family::MaxExact => self.max_exact(k, n),
            Family::TotalAtMost => self.total_at_most(k, n),
            Family::TotalExact => self.total_exact(k, n),
        }
    }

    /// Terms at indices `0..length` of the selected family.
    pub fn prefix(&mut self, family: Family, k: usize, length: usize) -> Result<Vec<Count>> {
        (0..length as u64).map(|n| self.term(family, k, n)).collect()
    }

    /// Count of P-positions with all piles `<= n`.
    pub fn max_at_most(&mut self, k: usize, n: u64) -> Result<Count> {
        check_k(k)?;
        if let Some(v) = self.memo.get(&(Family::MaxAtMost, k as u64, n)) {
            return Ok(v.clone());
        }
        let value = match (k, n) {
            (_, 0) => big(1),
            (1, _) => big(1),
            (2, _) => big(n) + big(1),
            _ => {
                if k % 2 == 1 {
                    max_at_most_odd(k, n)?
                } else {
                    let d = decompose_max_index(n)?;
                    max_at_most_even_step(k, d)? + self.max_at_most(k, d.c - 1)?
                }
            }
        };
        self.memo.insert((Family::MaxAtMost, k as u64, n), value.clone());
        Ok(value)
    }

    /// Count of P-positions whose largest pile is exactly `n`.
    pub fn max_exact(&mut self, k: usize, n: u64) -> Result<Count> {
        check_k(k)?;
        if let Some(v) = self.memo.get(&(Family::MaxExact, k as u64, n)) {
            return Ok(v.clone());
        }
        let value = match (k, n) {
            (_, 0) => big(1),
            (1, _) => big(0),
            (2, _) => big(1),
            (3, _) => {
                // three permutations of (n, n, 0), plus 6(c-1) positions
                // with a single maximal pile
                let d = decompose_max_index(n)?;
                big(6) * big(d.c) - big(3)
            }
            (4, _) => {
                let d = decompose_max_index(n)?;
                (big(12) * big(d.c) - big(6)) * (BigUint::one() << d.b)
                    + self.max_exact(4, d.c - 1)?
            }
            _ => {
                if k % 2 == 1 {
                    max_exact_odd(k, n)?
                } else {
                    let d = decompose_max_index(n)?;
                    max_exact_even_step(k, d)? + self.max_exact(k, d.c - 1)?
                }
            }
        };
        self.memo.insert((Family::MaxExact, k as u64, n), value.clone());
        Ok(value)
    }

    /// Count of P-positions with total counters exactly `2n`.
    pub fn total_exact(&mut self, k: usize, n: u64) -> Result<Count> {
        check_k(k)?;
        if let Some(v) = self.memo.get(&(Family::TotalExact, k as u64, n)) {
            return Ok(v.clone());
        }
        let value = match (k, n) {
            (_, 0) => big(1),
            (1, _) => big(0),
            (2, _) => big(1),
            (3, _) => BigUint::from(3u64).pow(binary_weight(n)),
            _ => self.total_exact_step(k, n, false)?,
        };
        self.memo.insert((Family::TotalExact, k as u64, n), value.clone());
        Ok(value)
    }

    /// Count of P-positions with total counters at most `2n`.
    pub fn total_at_most(&mut self, k: usize, n: u64) -> Result<Count> {
        check_k(k)?;
        if let Some(v) = self.memo.get(&(Family::TotalAtMost, k as u64, n)) {
            return Ok(v.clone());
        }
        let value = match (k, n) {
            (_, 0) => big(1),
            (1, _) => big(1),
            (2, _) => big(n) + big(1),
            _ => self.total_at_most_step(k, n, false)?,
        };
        self.memo.insert((Family::TotalAtMost, k as u64, n), value.clone());
        Ok(value)
    }

    /// `total_exact` computed through the generic recursion for every `k`,
    /// bypassing the one-, two- and three-pile shortcuts. Used to cross-check
    /// the shortcuts (in particular `3^popcount` for three piles).
    pub fn total_exact_recursive(&mut self, k: usize, n: u64) -> Result<Count> {
        check_k(k)?;
        if let Some(v) = self.general_total.get(&(false, k as u64, n)) {
            return Ok(v.clone());
        }
        let value = if n == 0 { big(1) } else { self.total_exact_step(k, n, true)? };
        self.general_total.insert((false, k as u64, n), value.clone());
        Ok(value)
    }

    /// `total_at_most` computed through the generic recursion for every `k`.
    pub fn total_at_most_recursive(&mut self, k: usize, n: u64) -> Result<Count> {
        check_k(k)?;
        if let Some(v) = self.general_total.get(&(true, k as u64, n)) {
            return Ok(v.clone());
        }
        let value = if n == 0 { big(1) } else { self.total_at_most_step(k, n, true)? };
        self.general_total.insert((true, k as u64, n), value.clone());
        Ok(value)
    }

    /// `total_at_most` as an explicit partial sum of `total_exact`; costs
    /// `O(n)` terms, for cross-checking the recursion at small indices.
    pub fn total_at_most_partial_sums(&mut self, k: usize, n: u64) -> Result<Count> {
        check_k(k)?;
        let mut acc = BigUint::zero();
        for m in 0..=n {
            acc += self.total_exact(k, m)?;
        }
        Ok(acc)
    }

    /// One expansion of the total-exact recursion. `n >= 1`.
    fn total_exact_step(&mut self, k: usize, n: u64, general: bool) -> Result<Count> {
        let kb = k as u64;
        let mut acc = BigUint::zero();
        if n % 2 == 1 {
            // total 4m+2: the position has 4i+2 odd piles
            let m = (n - 1) / 2;
            let mut i = 0u64;
            while 4 * i + 2 <= kb && i <= m {
                let coeff = binomial(kb, 4 * i + 2);
                if !coeff.is_zero() {
                    acc += coeff * self.total_exact_route(k, m - i, general)?;
                }
                i += 1;
            }
        } else {
            // total 4m+4: the position has 4i odd piles
            let m = n / 2 - 1;
            let mut i = 0u64;
            while 4 * i <= kb && i <= m + 1 {
                let coeff = binomial(kb, 4 * i);
                if !coeff.is_zero() {
                    acc += coeff * self.total_exact_route(k, m + 1 - i, general)?;
                }
                i += 1;
            }
        }
        Ok(acc)
    }

    fn total_exact_route(&mut self, k: usize, n: u64, general: bool) -> Result<Count> {
        if general {
            self.total_exact_recursive(k, n)
        } else {
            self.total_exact(k, n)
        }
    }

    /// One expansion of the total-at-most recursion (partial sums of the
    /// exact-total one). `n >= 1`.
    fn total_at_most_step(&mut self, k: usize, n: u64, general: bool) -> Result<Count> {
        let kb = k as u64;
        let mut acc = BigUint::zero();
        if n % 2 == 1 {
            let m = (n - 1) / 2;
            let mut i = 0u64;
            while 4 * i <= kb && i <= m {
                let coeff = binomial(kb, 4 * i + 2) + binomial(kb, 4 * i);
                if !coeff.is_zero() {
                    acc += coeff * self.total_at_most_route(k, m - i, general)?;
                }
                i += 1;
            }
        } else {
            let m = n / 2 - 1;
            acc += self.total_at_most_route(k, m + 1, general)?;
            let mut i = 0u64;
            while 4 * i + 2 <= kb && i <= m {
                let coeff = binomial(kb, 4 * i + 2) + binomial(kb, 4 * i + 4);
                if !coeff.is_zero() {
                    acc += coeff * self.total_at_most_route(k, m - i, general)?;
                }
                i += 1;
            }
        }
        Ok(acc)
    }

    fn total_at_most_route(&mut self, k: usize, n: u64, general: bool) -> Result<Count> {
        if general {
            self.total_at_most_recursive(k, n)
        } else {
            self.total_at_most(k, n)
        }
    }

    /// Snapshot of the main memo table, for persistence.
    pub fn memo_entries(&self) -> impl Iterator<Item = (Family, u64, u64, &Count)> {
        self.memo.iter().map(|(&(f, k, n), v)| (f, k, n, v))
    }

    /// Preloads one previously computed term into the memo table.
    pub fn preload(&mut self, family: Family, k: u64, n: u64, value: Count) {
        self.memo.insert((family, k, n), value);
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::ZeroPileCount)
    } else {
        Ok(())
    }
}

/// `max_at_most` through the parity closed forms only, bypassing the one- and
/// two-pile shortcuts. Recomputes every call; the even case recurses on
/// `c - 1`, so depth is `O(log n)`.
pub fn max_at_most_parity_form(k: usize, n: u64) -> Result<Count> {
    check_k(k)?;
    if n == 0 {
        return Ok(big(1));
    }
    if k % 2 == 1 {
        max_at_most_odd(k, n)
    } else {
        let d = decompose_max_index(n)?;
        Ok(max_at_most_even_step(k, d)? + max_at_most_parity_form(k, d.c - 1)?)
    }
}

/// `max_exact` through the parity closed forms only, bypassing every per-k
/// shortcut (including the three- and four-pile ones).
pub fn max_exact_parity_form(k: usize, n: u64) -> Result<Count> {
    check_k(k)?;
    if n == 0 {
        return Ok(big(1));
    }
    if k % 2 == 1 {
        max_exact_odd(k, n)
    } else {
        let d = decompose_max_index(n)?;
        Ok(max_exact_even_step(k, d)? + max_exact_parity_form(k, d.c - 1)?)
    }
}

fn pow_terms(d: MaxDecomposition, k: usize) -> (BigInt, BigInt, BigInt, BigInt) {
    let k = k as u32;
    let p = BigInt::one() << d.b;
    let c = BigInt::from(d.c);
    let s = (&p + &c).pow(k); // (2^b + c)^k
    let t = (&p - &c).pow(k); // (2^b - c)^k, non-negative since c <= 2^b
    let one = BigInt::one();
    let s1 = (&p + &c - &one).pow(k); // (2^b + c - 1)^k
    let t1 = (&p - &c + &one).pow(k); // (2^b - c + 1)^k
    (s, t, s1, t1)
}

fn max_at_most_odd(k: usize, n: u64) -> Result<Count> {
    let d = decompose_max_index(n)?;
    let (s, t, _, _) = pow_terms(d, k);
    Ok(exact_shift(s + t, d.b + 1))
}

fn max_at_most_even_step(k: usize, d: MaxDecomposition) -> Result<Count> {
    let (s, t, _, _) = pow_terms(d, k);
    let ck = BigInt::from(d.c).pow(k as u32);
    Ok(exact_shift(s + t - 2 * ck, d.b + 1))
}

fn max_exact_odd(k: usize, n: u64) -> Result<Count> {
    let d = decompose_max_index(n)?;
    let (s, t, s1, t1) = pow_terms(d, k);
    Ok(exact_shift(s + t - s1 - t1, d.b + 1))
}

fn max_exact_even_step(k: usize, d: MaxDecomposition) -> Result<Count> {
    let (s, t, s1, t1) = pow_terms(d, k);
    let ck = BigInt::from(d.c).pow(k as u32);
    let ck1 = BigInt::from(d.c - 1).pow(k as u32);
    Ok(exact_shift(s + t - s1 - t1 - 2 * ck + 2 * ck1, d.b + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine() -> SequenceEngine {
        SequenceEngine::new()
    }

    #[test]
    fn decomposition() {
        assert_eq!(decompose_max_index(1).unwrap(), MaxDecomposition { b: 0, c: 1 });
        assert_eq!(decompose_max_index(4).unwrap(), MaxDecomposition { b: 2, c: 1 });
        assert_eq!(decompose_max_index(6).unwrap(), MaxDecomposition { b: 2, c: 3 });
        assert_eq!(decompose_max_index(0), Err(Error::ZeroIndex));
        for n in 1..2000u64 {
            let MaxDecomposition { b, c } = decompose_max_index(n).unwrap();
            assert_eq!((1u64 << b) - 1 + c, n);
            assert!((1..=(1u64 << b)).contains(&c));
        }
    }

    #[test]
    fn weights() {
        assert_eq!(binary_weight(0), 0);
        assert_eq!(binary_weight(7), 3);
        for t in 0..64 {
            assert_eq!(binary_weight(1u64 << t), 1);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), big(6));
        assert_eq!(binomial(5, 0), big(1));
        assert_eq!(binomial(5, 6), big(0));
        assert_eq!(binomial(40, 20), "137846528820".parse().unwrap());
    }

    #[test]
    fn max_at_most_examples() {
        let mut e = engine();
        assert_eq!(e.max_at_most(3, 5).unwrap(), big(28));
        assert_eq!(e.max_at_most(4, 4).unwrap(), big(89));
        assert_eq!(e.max_at_most(5, 4).unwrap(), big(421));
        assert_eq!(e.max_at_most(5, 7).unwrap(), big(4096));
        assert_eq!(e.max_at_most(0, 1), Err(Error::ZeroPileCount));
    }

    #[test]
    fn max_exact_examples() {
        let mut e = engine();
        assert_eq!(e.max_exact(3, 6).unwrap(), big(15));
        assert_eq!(e.max_exact(4, 4).unwrap(), big(25));
        assert_eq!(e.max_exact(5, 4).unwrap(), big(165));
    }

    #[test]
    fn total_examples() {
        let mut e = engine();
        assert_eq!(e.total_exact(3, 7).unwrap(), big(27));
        assert_eq!(e.total_exact(4, 4).unwrap(), big(13));
        assert_eq!(e.total_exact(5, 4).unwrap(), big(65));
        for n in 0..40 {
            assert_eq!(e.total_exact(2, n).unwrap(), big(1));
        }
        assert_eq!(e.total_at_most(3, 6).unwrap(), big(37));
        assert_eq!(e.total_at_most(4, 4).unwrap(), big(63));
        assert_eq!(e.total_at_most(5, 8).unwrap(), big(2081));
    }

    #[test]
    fn prefixes() {
        let mut e = engine();
        let want: Vec<Count> = [1u64, 4, 7, 16, 19, 28, 43, 64].iter().map(|&v| big(v)).collect();
        assert_eq!(e.prefix(Family::MaxAtMost, 3, 8).unwrap(), want);

        let want: Vec<Count> = [1u64, 6, 7, 36, 13, 42, 43, 216].iter().map(|&v| big(v)).collect();
        assert_eq!(e.prefix(Family::TotalExact, 4, 8).unwrap(), want);

        let want: Vec<Count> = [1u64, 0, 0, 0].iter().map(|&v| big(v)).collect();
        assert_eq!(e.prefix(Family::MaxExact, 1, 4).unwrap(), want);
    }

    #[test]
    fn first_differences_line_up() {
        let mut e = engine();
        for k in 1..=6 {
            for n in 1..=80u64 {
                let d = e.max_exact(k, n).unwrap();
                assert_eq!(d, e.max_at_most(k, n).unwrap() - e.max_at_most(k, n - 1).unwrap());
                let dd = e.total_exact(k, n).unwrap();
                assert_eq!(dd, e.total_at_most(k, n).unwrap() - e.total_at_most(k, n - 1).unwrap());
            }
        }
    }

    #[test]
    fn parity_forms_match_shortcuts() {
        let mut e = engine();
        for k in 1..=6 {
            for n in 0..=64u64 {
                assert_eq!(max_at_most_parity_form(k, n).unwrap(), e.max_at_most(k, n).unwrap(), "a k={k} n={n}");
                assert_eq!(max_exact_parity_form(k, n).unwrap(), e.max_exact(k, n).unwrap(), "d k={k} n={n}");
            }
        }
    }

    #[test]
    fn generic_total_recursions_match_shortcuts() {
        let mut e = engine();
        for k in 1..=6 {
            for n in 0..=128u64 {
                assert_eq!(e.total_exact_recursive(k, n).unwrap(), e.total_exact(k, n).unwrap(), "D k={k} n={n}");
                assert_eq!(e.total_at_most_recursive(k, n).unwrap(), e.total_at_most(k, n).unwrap(), "A k={k} n={n}");
                assert_eq!(e.total_at_most_partial_sums(k, n).unwrap(), e.total_at_most(k, n).unwrap(), "A-sum k={k} n={n}");
            }
        }
    }

    #[test]
    fn max_exact_triangle_rows() {
        // the row of max_exact(3, _) starting at each power of two reads
        // 3, 9, 15, 21, ...
        let mut e = engine();
        for r in 1..=6u32 {
            for j in 0..(1u64 << r) {
                assert_eq!(e.max_exact(3, (1u64 << r) + j).unwrap(), big(6 * j + 3));
            }
        }
    }

    #[test]
    fn huge_indices_stay_cheap() {
        let mut e = engine();
        // full binary range: every choice of the first k-1 piles completes
        let n = (1u64 << 60) - 1;
        assert_eq!(e.max_at_most(5, n).unwrap(), BigUint::from(2u64).pow(60 * 4));
        // a single high bit carried by two piles out of three
        assert_eq!(e.total_exact(3, 1u64 << 60).unwrap(), big(3));
        assert_eq!(e.total_exact_recursive(3, (1u64 << 60) + 5).unwrap(), big(27));
        // even-k chain recursion at a large index terminates quickly too
        e.max_at_most(4, (1u64 << 59) + 12345).unwrap();
        e.total_at_most(5, (1u64 << 59) + 99).unwrap();
    }
}
