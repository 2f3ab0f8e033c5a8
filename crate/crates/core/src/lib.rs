//! Exact enumeration of the P-positions of k-pile Nim.
//!
//! The P-positions of Nim (positions whose piles XOR to zero) are counted
//! here in two coordinate systems — by the maximum pile and by the total
//! number of counters — with exact closed forms and recursions in
//! [`sequences`], validated term by term against the brute-force enumeration
//! in [`oracle`]. The same positions carry a parent/child structure
//! ([`evolution`]) that grows them generation by generation like a cellular
//! automaton; for three piles that automaton is, cell for cell, the
//! three-branch corner-growth automaton on the square grid ([`uw`]), and the
//! explicit bijection between grid cells and P-positions is implemented in
//! both directions.

pub mod error;
pub mod evolution;
pub mod nim;
pub mod oracle;
pub mod sequences;
pub mod svg;
pub mod uw;

pub use error::{Error, Result};
pub use nim::{complete_to_p, is_p_position, nim_sum, Count, Position};
pub use sequences::{binary_weight, decompose_max_index, Family, MaxDecomposition, SequenceEngine};
