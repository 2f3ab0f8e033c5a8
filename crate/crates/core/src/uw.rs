//! Three-branch growth automaton on the square grid, and its bijection with
//! three-pile Nim P-positions.
//!
//! Cells live on the integer grid; the south cone `y < 0, y <= -|x|` is kept
//! barren. Growth starts from the origin, and at every step each dead,
//! allowed cell with exactly one alive orthogonal neighbor is born, that
//! neighbor becoming its parent. The number of cells born at step `g` is
//! `3^popcount(g)` — the same as the number of three-pile P-positions with
//! total `2g` — and the correspondence is realized cell by cell:
//!
//! - every nonzero bit `r` of `g` is carried by exactly two of the three
//!   piles, picking one of the three pile pairs;
//! - the pile pairs map to grid headings ((1,1,0) east, (1,0,1) north,
//!   (0,1,1) west at the first step), and each later pair change turns the
//!   heading 90 degrees, clockwise when the pair advances along the cycle
//!   (0,1,1) -> (1,1,0) -> (1,0,1) -> (0,1,1) and counterclockwise when it
//!   advances the other way;
//! - walking `2^r` steps per bit, high bit first, lands on the cell born at
//!   step `g` for that P-position.
//!
//! The turn orientation is pinned down by the round-trip property tests, not
//! by convention alone.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::nim::{is_p_position, Position};

/// A grid point. The origin is the starting cell; `y` grows northward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: i64,
    pub y: i64,
}

impl Cell {
    pub const ORIGIN: Cell = Cell { x: 0, y: 0 };

    pub fn new(x: i64, y: i64) -> Cell {
        Cell { x, y }
    }

    /// The four orthogonal neighbors.
    pub fn neighbors(self) -> [Cell; 4] {
        [
            Cell::new(self.x + 1, self.y),
            Cell::new(self.x - 1, self.y),
            Cell::new(self.x, self.y + 1),
            Cell::new(self.x, self.y - 1),
        ]
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// True for cells in the barren south cone: `y < 0` and `y <= -|x|`.
pub fn is_forbidden(c: Cell) -> bool {
    c.y < 0 && c.y <= -(c.x.abs())
}

/// Birth data for one cell: the step it was born at and the unique alive
/// neighbor it grew from (absent only for the origin).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BirthRecord {
    pub generation: u64,
    pub parent: Option<Cell>,
}

/// Sparse record of an automaton run: every born cell with its generation
/// and parent, plus the per-generation birth lists.
#[derive(Debug, Clone)]
pub struct BirthMap {
    entries: HashMap<Cell, BirthRecord>,
    by_generation: Vec<Vec<Cell>>,
}

impl BirthMap {
    pub fn get(&self, c: Cell) -> Option<&BirthRecord> {
        self.entries.get(&c)
    }

    pub fn contains(&self, c: Cell) -> bool {
        self.entries.contains_key(&c)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Cells born at step `g`, sorted by coordinates.
    pub fn born_at(&self, g: u64) -> &[Cell] {
        self.by_generation.get(g as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Highest generation the run was evolved to.
    pub fn max_generation(&self) -> u64 {
        (self.by_generation.len() as u64).saturating_sub(1)
    }

    /// All entries in deterministic (coordinate) order.
    pub fn iter_sorted(&self) -> impl Iterator<Item = (Cell, &BirthRecord)> {
        self.by_generation.iter().flatten().map(move |&c| (c, &self.entries[&c]))
    }
}

/// Runs the automaton for `max_generation` steps from a single alive origin.
pub fn evolve_uw(max_generation: u64) -> BirthMap {
    let mut entries = HashMap::new();
    entries.insert(Cell::ORIGIN, BirthRecord { generation: 0, parent: None });
    let mut by_generation = vec![vec![Cell::ORIGIN]];
    let mut frontier = vec![Cell::ORIGIN];

    for g in 1..=max_generation {
        let mut candidates: BTreeSet<Cell> = BTreeSet::new();
        for f in &frontier {
            for nb in f.neighbors() {
                if !entries.contains_key(&nb) && !is_forbidden(nb) {
                    candidates.insert(nb);
                }
            }
        }
        let mut born = Vec::new();
        for &c in &candidates {
            let mut alive = c.neighbors().into_iter().filter(|nb| entries.contains_key(nb));
            if let (Some(parent), None) = (alive.next(), alive.next()) {
                born.push((c, parent));
            }
        }
        for &(c, parent) in &born {
            entries.insert(c, BirthRecord { generation: g, parent: Some(parent) });
        }
        frontier = born.iter().map(|&(c, _)| c).collect();
        by_generation.push(frontier.clone());
    }

    BirthMap { entries, by_generation }
}

/// An axis-aligned unit heading on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Heading {
    East,
    North,
    West,
    South,
}

impl Heading {
    pub fn unit(self) -> (i64, i64) {
        match self {
            Heading::East => (1, 0),
            Heading::North => (0, 1),
            Heading::West => (-1, 0),
            Heading::South => (0, -1),
        }
    }

    pub fn clockwise(self) -> Heading {
        match self {
            Heading::East => Heading::South,
            Heading::South => Heading::West,
            Heading::West => Heading::North,
            Heading::North => Heading::East,
        }
    }

    pub fn counterclockwise(self) -> Heading {
        match self {
            Heading::East => Heading::North,
            Heading::North => Heading::West,
            Heading::West => Heading::South,
            Heading::South => Heading::East,
        }
    }

    pub fn opposite(self) -> Heading {
        self.clockwise().clockwise()
    }

    fn from_delta(dx: i64, dy: i64) -> Option<Heading> {
        match (dx, dy) {
            (1, 0) => Some(Heading::East),
            (-1, 0) => Some(Heading::West),
            (0, 1) => Some(Heading::North),
            (0, -1) => Some(Heading::South),
            _ => None,
        }
    }
}

/// Which two of the three piles a growth segment increments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PilePair {
    FirstSecond,
    FirstThird,
    SecondThird,
}

impl PilePair {
    /// 0/1 increment mask over the three piles.
    pub fn indicator(self) -> [u64; 3] {
        match self {
            PilePair::FirstSecond => [1, 1, 0],
            PilePair::FirstThird => [1, 0, 1],
            PilePair::SecondThird => [0, 1, 1],
        }
    }

    /// One step along the pair cycle that maps to a clockwise heading turn.
    pub fn cycle_forward(self) -> PilePair {
        match self {
            PilePair::SecondThird => PilePair::FirstSecond,
            PilePair::FirstSecond => PilePair::FirstThird,
            PilePair::FirstThird => PilePair::SecondThird,
        }
    }

    /// The inverse cycle step (counterclockwise heading turn).
    pub fn cycle_back(self) -> PilePair {
        self.cycle_forward().cycle_forward()
    }

    /// Heading of a path's first segment for this pair.
    pub fn initial_heading(self) -> Heading {
        match self {
            PilePair::FirstSecond => Heading::East,
            PilePair::FirstThird => Heading::North,
            PilePair::SecondThird => Heading::West,
        }
    }

    fn from_initial_heading(h: Heading) -> Option<PilePair> {
        match h {
            Heading::East => Some(PilePair::FirstSecond),
            Heading::North => Some(PilePair::FirstThird),
            Heading::West => Some(PilePair::SecondThird),
            Heading::South => None,
        }
    }
}

/// One straight stretch of a growth path: which pile pair grows, which way
/// the walk heads, and for how many steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub pair: PilePair,
    pub heading: Heading,
    pub length: u64,
}

/// Cells born at step `n`, straight from the path description: decompose
/// `n` into powers of two (descending), walk `2^r` steps per power, first
/// heading in {east, north, west}, each later heading anything but the
/// reverse of the previous one.
///
/// Cost is `3^popcount(n)` walk evaluations.
pub fn cells_from_formula(n: u64) -> Result<BTreeSet<Cell>> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let powers: Vec<u32> = (0..64).rev().filter(|&r| n & (1 << r) != 0).collect();
    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, i64, i64, Heading)> = [Heading::East, Heading::North, Heading::West]
        .into_iter()
        .map(|h| (0usize, 0i64, 0i64, h))
        .collect();
    while let Some((idx, x, y, h)) = stack.pop() {
        let (dx, dy) = h.unit();
        let step = 1i64 << powers[idx];
        let (x, y) = (x + dx * step, y + dy * step);
        if idx + 1 == powers.len() {
            out.insert(Cell::new(x, y));
            continue;
        }
        for next in [h, h.clockwise(), h.counterclockwise()] {
            stack.push((idx + 1, x, y, next));
        }
    }
    Ok(out)
}

fn ensure_three_pile_p(p: &Position) -> Result<()> {
    if p.pile_count() != 3 {
        return Err(Error::WrongPileCount { expected: 3, got: p.pile_count() });
    }
    if !is_p_position(p) {
        return Err(Error::NotAPPosition(p.clone()));
    }
    Ok(())
}

/// The growth path of a three-pile P-position: one segment per binary power
/// of `total/2`, highest first, plus the cell the path ends on. The zero
/// position yields an empty path ending at the origin.
pub fn position_path(p: &Position) -> Result<(Cell, Vec<Segment>)> {
    ensure_three_pile_p(p)?;
    let n = u64::try_from(p.total_counters() / 2).expect("generation exceeds u64");
    let piles = p.piles();

    let mut segments: Vec<Segment> = Vec::new();
    let (mut x, mut y) = (0i128, 0i128);
    for r in (0..64).rev() {
        if n & (1u64 << r) == 0 {
            continue;
        }
        // the bit is carried by exactly two piles of a P-position
        let holders: Vec<usize> = (0..3).filter(|&i| piles[i] & (1u64 << r) != 0).collect();
        debug_assert_eq!(holders.len(), 2, "bit {r} of {p} not carried by exactly two piles");
        let pair = match (holders[0], holders[1]) {
            (0, 1) => PilePair::FirstSecond,
            (0, 2) => PilePair::FirstThird,
            (1, 2) => PilePair::SecondThird,
            _ => unreachable!(),
        };
        let heading = match segments.last() {
            None => pair.initial_heading(),
            Some(prev) if prev.pair == pair => prev.heading,
            Some(prev) if prev.pair.cycle_forward() == pair => prev.heading.clockwise(),
            Some(prev) => {
                debug_assert_eq!(prev.pair.cycle_back(), pair);
                prev.heading.counterclockwise()
            }
        };
        let length = 1u64 << r;
        let (dx, dy) = heading.unit();
        x += i128::from(dx) * i128::from(length);
        y += i128::from(dy) * i128::from(length);
        segments.push(Segment { pair, heading, length });
    }

    let cell = Cell::new(
        i64::try_from(x).expect("cell coordinate exceeds i64"),
        i64::try_from(y).expect("cell coordinate exceeds i64"),
    );
    Ok((cell, segments))
}

/// Grid cell a three-pile P-position is born on. The zero position maps to
/// the origin.
pub fn position_to_cell(p: &Position) -> Result<Cell> {
    position_path(p).map(|(cell, _)| cell)
}

/// Inverts [`position_to_cell`] by walking the recorded parent chain back to
/// the origin and re-reading the pile pairs off the straight stretches.
pub fn cell_to_position(c: Cell, births: &BirthMap) -> Result<Position> {
    if !births.contains(c) {
        return Err(Error::CellNotBorn(c));
    }
    // parent chain, reversed into the outward path
    let mut chain = vec![c];
    let mut cur = c;
    while let Some(parent) = births.get(cur).and_then(|r| r.parent) {
        chain.push(parent);
        cur = parent;
    }
    chain.reverse();
    debug_assert_eq!(chain[0], Cell::ORIGIN);

    let mut piles = [0u64; 3];
    let mut runs: Vec<(Heading, u64)> = Vec::new();
    for pair in chain.windows(2) {
        let h = Heading::from_delta(pair[1].x - pair[0].x, pair[1].y - pair[0].y)
            .expect("parent chain steps are unit moves");
        match runs.last_mut() {
            Some((last, len)) if *last == h => *len += 1,
            _ => runs.push((h, 1)),
        }
    }

    let mut prev_pair: Option<(PilePair, Heading)> = None;
    for &(h, len) in &runs {
        let pair = match prev_pair {
            None => PilePair::from_initial_heading(h)
                .expect("a path cannot leave the origin southward"),
            Some((p, ph)) => {
                if h == ph.clockwise() {
                    p.cycle_forward()
                } else {
                    debug_assert_eq!(h, ph.counterclockwise(), "paths never reverse");
                    p.cycle_back()
                }
            }
        };
        for (i, inc) in pair.indicator().iter().enumerate() {
            piles[i] += inc * len;
        }
        prev_pair = Some((pair, h));
    }

    Ok(Position::new(piles.to_vec()).expect("three piles"))
}
