use crate::nim::Position;
use crate::uw::Cell;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("the pile count k must be at least 1")]
    ZeroPileCount,

    #[error("sequence index must be at least 1 for this operation")]
    ZeroIndex,

    #[error("{0} is not a P-position (nim-sum is nonzero)")]
    NotAPPosition(Position),

    #[error("expected a position with {expected} piles, got {got}")]
    WrongPileCount { expected: usize, got: usize },

    #[error("cell {0} was never born within the evolved generations")]
    CellNotBorn(Cell),

    #[error("universe is not closed under moves: {from} can move to {to}, which is outside the universe")]
    UniverseNotClosed { from: Position, to: Position },
}

pub type Result<T> = std::result::Result<T, Error>;
