//! Brute-force P-position counting, independent of every closed form and
//! recursion in [`crate::sequences`].
//!
//! The enumeration never consults a counting formula: it drives an odometer
//! over the first `k - 1` piles and completes the last pile by XOR, which is
//! forced for a P-position. For totals it relies only on the trivial fact
//! that no pile can exceed the total, so the results stay valid evidence
//! even if every formula in the crate were wrong.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::nim::{complete_to_p, Count, Position};

/// Whether a query counts positions hitting a bound exactly or anywhere
/// at or below it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMode {
    AtMost,
    Exactly,
}

/// Counts P-positions of `k`-pile Nim whose maximum pile is `<= n`
/// (`AtMost`) or `== n` (`Exactly`).
///
/// Cost is `(n + 1)^(k-1)` completions; callers are expected to keep that
/// within reason.
pub fn count_by_max(k: usize, n: u64, mode: CountMode) -> Result<Count> {
    if k == 0 {
        return Err(Error::ZeroPileCount);
    }
    let mut count = 0u64;
    walk_max(k - 1, n, 0, 0, n, mode, &mut count);
    Ok(BigUint::from(count))
}

fn walk_max(free: usize, bound: u64, xor: u64, prefix_max: u64, n: u64, mode: CountMode, count: &mut u64) {
    if free == 0 {
        let last = xor;
        if last <= bound {
            let hit = match mode {
                CountMode::AtMost => true,
                CountMode::Exactly => prefix_max.max(last) == n,
            };
            if hit {
                *count += 1;
            }
        }
        return;
    }
    if free == 1 {
        // innermost pile kept as a flat loop
        for v in 0..=bound {
            let last = xor ^ v;
            if last <= bound {
                let hit = match mode {
                    CountMode::AtMost => true,
                    CountMode::Exactly => prefix_max.max(v).max(last) == n,
                };
                if hit {
                    *count += 1;
                }
            }
        }
        return;
    }
    for v in 0..=bound {
        walk_max(free - 1, bound, xor ^ v, prefix_max.max(v), n, mode, count);
    }
}

/// Counts P-positions of `k`-pile Nim whose total number of counters is
/// `<= 2n` (`AtMost`) or `== 2n` (`Exactly`).
///
/// Enumerates the first `k - 1` piles over `[0, 2n]` — a pile can never
/// exceed the total — pruning once the running sum passes `2n`.
pub fn count_by_total(k: usize, n: u64, mode: CountMode) -> Result<Count> {
    if k == 0 {
        return Err(Error::ZeroPileCount);
    }
    let target = 2 * u128::from(n);
    let bound = n.checked_mul(2).expect("total bound exceeds u64");
    let mut count = 0u64;
    walk_total(k - 1, bound, 0, 0, target, mode, &mut count);
    Ok(BigUint::from(count))
}

fn walk_total(free: usize, bound: u64, xor: u64, sum: u128, target: u128, mode: CountMode, count: &mut u64) {
    if free == 0 {
        let last = xor;
        let total = sum + u128::from(last);
        let hit = match mode {
            CountMode::AtMost => total <= target,
            CountMode::Exactly => total == target,
        };
        if hit {
            *count += 1;
        }
        return;
    }
    for v in 0..=bound {
        let s = sum + u128::from(v);
        if s > target {
            break;
        }
        walk_total(free - 1, bound, xor ^ v, s, target, mode, count);
    }
}

/// All P-positions of `k`-pile Nim with total exactly `2n`, in lexicographic
/// order. The length of the result equals
/// `count_by_total(k, n, CountMode::Exactly)`.
pub fn enumerate_by_total(k: usize, n: u64) -> Result<Vec<Position>> {
    if k == 0 {
        return Err(Error::ZeroPileCount);
    }
    let target = 2 * u128::from(n);
    let bound = n.checked_mul(2).expect("total bound exceeds u64");
    let mut prefix = Vec::with_capacity(k - 1);
    let mut out = Vec::new();
    collect_total(k - 1, bound, target, &mut prefix, &mut out);
    Ok(out)
}

fn collect_total(free: usize, bound: u64, target: u128, prefix: &mut Vec<u64>, out: &mut Vec<Position>) {
    let sum: u128 = prefix.iter().map(|&p| u128::from(p)).sum();
    if free == 0 {
        let last = crate::nim::nim_sum(prefix);
        if sum + u128::from(last) == target {
            out.push(complete_to_p(prefix));
        }
        return;
    }
    for v in 0..=bound {
        if sum + u128::from(v) > target {
            break;
        }
        prefix.push(v);
        collect_total(free - 1, bound, target, prefix, out);
        prefix.pop();
    }
}
