//! Parent/child structure on P-positions and the growth process it induces.
//!
//! A P-position `q` has parent `p` when `p` is again a P-position obtained by
//! removing one counter from each of two distinct piles of `q`. Removing one
//! counter from pile values `x` and `y` preserves the nim-sum exactly when
//! `x` and `y` have the same number of trailing zero bits (both decrements
//! borrow through the same number of places); dually, adding one counter to
//! two piles preserves it exactly when the values share their trailing-ones
//! count. Growing generation by generation from the zero position — each
//! generation the set of children of the previous one — visits every
//! P-position exactly once, at generation `total_counters / 2`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::nim::{is_p_position, Count, Position};

/// Born/cumulative cell counts for one generation of a growth run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationRecord {
    pub generation: u64,
    pub born: Count,
    pub cumulative: Count,
}

fn ensure_p(p: &Position) -> Result<()> {
    if is_p_position(p) {
        Ok(())
    } else {
        Err(Error::NotAPPosition(p.clone()))
    }
}

/// All parents of a P-position: decrement two non-empty piles whose values
/// have equal trailing-zero counts. The zero position has none.
pub fn parents(p: &Position) -> Result<BTreeSet<Position>> {
    ensure_p(p)?;
    let piles = p.piles();
    let mut out = BTreeSet::new();
    for i in 0..piles.len() {
        if piles[i] == 0 {
            continue;
        }
        for j in i + 1..piles.len() {
            if piles[j] == 0 || piles[i].trailing_zeros() != piles[j].trailing_zeros() {
                continue;
            }
            let mut q = piles.to_vec();
            q[i] -= 1;
            q[j] -= 1;
            out.insert(Position::new(q).expect("same pile count"));
        }
    }
    Ok(out)
}

/// All children of a P-position: increment two piles whose values have equal
/// trailing-ones counts (an empty pile counts zero trailing ones).
pub fn children(p: &Position) -> Result<BTreeSet<Position>> {
    ensure_p(p)?;
    let piles = p.piles();
    let mut out = BTreeSet::new();
    for i in 0..piles.len() {
        for j in i + 1..piles.len() {
            if piles[i].trailing_ones() != piles[j].trailing_ones() {
                continue;
            }
            let mut q = piles.to_vec();
            q[i] += 1;
            q[j] += 1;
            out.insert(Position::new(q).expect("same pile count"));
        }
    }
    Ok(out)
}

/// Generation a P-position is born in: half its total counter count.
/// The total of a P-position is always even; a position failing that is
/// not a P-position and is rejected.
pub fn generation_of(p: &Position) -> Result<u128> {
    ensure_p(p)?;
    Ok(p.total_counters() / 2)
}

/// Result of growing Nim from the zero position.
#[derive(Debug, Clone)]
pub struct NimEvolution {
    /// Born/cumulative counts per generation, index = generation.
    pub records: Vec<GenerationRecord>,
    /// Full position sets per generation when retention was requested.
    pub generations: Option<Vec<Vec<Position>>>,
}

/// Grows `k`-pile Nim for `max_generation` steps: generation 0 is the zero
/// position and each next generation is the deduplicated set of children of
/// the current one.
///
/// By default only the frontier and the counts are kept; with
/// `retain_positions` every generation's position list (sorted) is returned,
/// which is only sensible at small scale since generation sizes grow like
/// `3^popcount(g)` for three piles.
pub fn evolve_nim(k: usize, max_generation: u64, retain_positions: bool) -> Result<NimEvolution> {
    if k == 0 {
        return Err(Error::ZeroPileCount);
    }
    let mut frontier: BTreeSet<Position> = BTreeSet::new();
    frontier.insert(Position::new(vec![0; k])?);

    let mut records = Vec::with_capacity(max_generation as usize + 1);
    let mut retained: Option<Vec<Vec<Position>>> = retain_positions.then(Vec::new);
    let mut cumulative = BigUint::from(0u32);

    for g in 0..=max_generation {
        let born = BigUint::from(frontier.len());
        cumulative += &born;
        records.push(GenerationRecord { generation: g, born, cumulative: cumulative.clone() });
        if let Some(r) = retained.as_mut() {
            r.push(frontier.iter().cloned().collect());
        }
        if g == max_generation {
            break;
        }
        let mut next = BTreeSet::new();
        for p in &frontier {
            next.extend(children(p)?);
        }
        frontier = next;
    }

    Ok(NimEvolution { records, generations: retained })
}

/// A finite impartial game: a move relation over an enumerable universe of
/// positions that is closed under moves.
pub trait GameRules {
    fn universe(&self) -> Vec<Position>;
    fn moves(&self, p: &Position) -> Vec<Position>;
}

/// P-positions grouped by the step of the backward-induction search that
/// found them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedPPositions {
    pub strata: Vec<BTreeSet<Position>>,
}

impl StratifiedPPositions {
    /// Union of all strata.
    pub fn all(&self) -> BTreeSet<Position> {
        self.strata.iter().flatten().cloned().collect()
    }
}

/// Backward-induction search for P-positions, stratified by discovery step.
///
/// Step 0 holds the terminal positions. Having found the P-positions up to
/// step `i`, the positions with a move into them are the known N-positions,
/// and step `i+1` holds every undiscovered position all of whose moves land
/// on known N-positions. Runs until a step adds nothing (or `max_step`).
///
/// Fails if some universe member can move outside the universe.
pub fn stratify_p_positions(
    rules: &dyn GameRules,
    max_step: Option<usize>,
) -> Result<StratifiedPPositions> {
    let universe: Vec<Position> = rules.universe();
    let index: BTreeMap<&Position, usize> =
        universe.iter().enumerate().map(|(i, p)| (p, i)).collect();

    // move targets by index, verifying closure as we go
    let mut succ: Vec<Vec<usize>> = Vec::with_capacity(universe.len());
    for p in &universe {
        let mut row = Vec::new();
        for q in rules.moves(p) {
            match index.get(&q) {
                Some(&qi) => row.push(qi),
                None => {
                    return Err(Error::UniverseNotClosed { from: p.clone(), to: q });
                }
            }
        }
        succ.push(row);
    }

    let mut found_p = vec![false; universe.len()];
    let mut known_n = vec![false; universe.len()];
    let mut strata: Vec<BTreeSet<Position>> = Vec::new();

    // predecessors, to mark N-positions as P-positions surface
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); universe.len()];
    for (pi, row) in succ.iter().enumerate() {
        for &qi in row {
            pred[qi].push(pi);
        }
    }

    let mut step = 0usize;
    loop {
        let stratum: Vec<usize> = if step == 0 {
            (0..universe.len()).filter(|&i| succ[i].is_empty()).collect()
        } else {
            (0..universe.len())
                .filter(|&i| !found_p[i] && !succ[i].is_empty())
                .filter(|&i| succ[i].iter().all(|&qi| known_n[qi]))
                .collect()
        };
        if stratum.is_empty() {
            break;
        }
        let mut set = BTreeSet::new();
        for &i in &stratum {
            found_p[i] = true;
            set.insert(universe[i].clone());
            for &pi in &pred[i] {
                known_n[pi] = true;
            }
        }
        strata.push(set);
        step += 1;
        if let Some(limit) = max_step {
            if step > limit {
                break;
            }
        }
    }

    Ok(StratifiedPPositions { strata })
}

/// How a Nim universe is truncated to a finite set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniverseBound {
    /// All tuples with every pile at most the given value.
    MaxPile(u64),
    /// All tuples with total counters at most the given value.
    MaxTotal(u128),
}

/// Ordinary Nim over a bounded universe. Moves only remove counters, so
/// both bound styles are closed under moves.
#[derive(Debug, Clone)]
pub struct NimRules {
    k: usize,
    bound: UniverseBound,
}

impl NimRules {
    pub fn new(k: usize, bound: UniverseBound) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroPileCount);
        }
        Ok(NimRules { k, bound })
    }
}

impl GameRules for NimRules {
    fn universe(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut piles = vec![0u64; self.k];
        collect_universe(self.bound, &mut piles, 0, &mut out);
        out
    }

    fn moves(&self, p: &Position) -> Vec<Position> {
        let mut out = Vec::new();
        for (i, &v) in p.piles().iter().enumerate() {
            for take in 1..=v {
                let mut q = p.piles().to_vec();
                q[i] = v - take;
                out.push(Position::new(q).expect("same pile count"));
            }
        }
        out
    }
}

fn collect_universe(bound: UniverseBound, piles: &mut Vec<u64>, depth: usize, out: &mut Vec<Position>) {
    if depth == piles.len() {
        out.push(Position::new(piles.clone()).expect("non-empty"));
        return;
    }
    let cap = match bound {
        UniverseBound::MaxPile(m) => m,
        UniverseBound::MaxTotal(t) => {
            let used: u128 = piles[..depth].iter().map(|&p| u128::from(p)).sum();
            u64::try_from(t - used).unwrap_or(u64::MAX)
        }
    };
    for v in 0..=cap {
        piles[depth] = v;
        collect_universe(bound, piles, depth + 1, out);
    }
    piles[depth] = 0;
}
