//! Balls in rooted graphs: Cayley graphs of group oracles and Schreier
//! graphs of subgroups of free groups and of `ℤⁿ`.

mod ball;
mod export;
mod graph;
mod lattice;
mod stallings;

pub use ball::{build_ball, build_ball_truncated, BallGraph, TruncatedBall, DEFAULT_VERTEX_BUDGET};
pub use export::{to_adjacency, to_dot, BallEdge, BallExport, BallVertex};
pub use graph::{CayleyGraph, RootedGraph};
pub use lattice::{lattice_coset_oracle, LatticeCosetOracle};
pub use stallings::{fold, free_coset_oracle, CosetOracle, FreeCosetOracle, LabeledEdge, StallingsAutomaton};

use crate::group_core::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex budget {budget} exhausted: ball complete only to radius {reached_radius} of {requested}")]
    Overflow {
        budget: usize,
        reached_radius: u32,
        requested: u32,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}
