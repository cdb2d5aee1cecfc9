//! Doubly regular tournaments built as Cayley digraphs of skew Hadamard
//! difference sets, together with exact checks of their algebraic identities,
//! discrepancy bounds and maximum-consistency rankings.
//!
//! Module map:
//!
//! - [`groups`]: finite abelian groups and small finite fields.
//! - [`diffset`]: candidate difference sets, verification and affine equivalence.
//! - [`tourney`]: bit-matrix tournaments, Cayley construction, double regularity.
//! - [`ranking`]: consistent-edge counting, exact subset DP, heuristics.
//! - [`discrepancy`]: edge discrepancy sweeps and the ranking bound checks.
//! - [`io`]: the text formats for groups, difference sets and tournaments.

pub mod bitset;
pub mod diffset;
pub mod discrepancy;
pub mod error;
pub mod groups;
pub mod io;
pub mod ranking;
pub mod rng;
pub mod tourney;

pub use bitset::VertexSet;
pub use diffset::{CandidateSet, DifferenceProfile, GroupAutomorphism};
pub use error::{Error, Result};
pub use groups::{AbelianGroup, FieldElement, FiniteField, GroupElement};
pub use ranking::{Ranking, RankingResult};
pub use tourney::Tournament;

/// `n choose 2` as an unsigned integer.
pub fn binom2(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}
