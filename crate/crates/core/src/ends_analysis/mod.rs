//! Annulus components of balls and the analyses built on them: the ends
//! profile, the refinement tree, the action on ends, almost invariance, the
//! multiplicative-ends test and the virtually-ℤ witness.

mod action;
mod almost_invariance;
mod annulus;
mod central;
mod multiplicative;
mod profile;
mod refinement;
mod union_find;
mod virtually_z;

pub use action::{end_action, end_action_on, end_stabilizer_report, EndActionReport, StabilizerSummary, IMAGE_ORDER_CAP};
pub use almost_invariance::{almost_invariant_check, AlmostInvarianceReport, AlmostInvarianceVerdict};
pub use annulus::{annulus_components, annulus_components_within, ComponentPartition};
pub use central::{central_infinite_order_search, central_search_on_ball};
pub use multiplicative::{multiplicative_ends_test, multiplicative_ends_test_on_ball, MultiplicativeReport, Verdict};
pub use profile::{ends_profile, profile_from_ball, Classification, EndsProfile, ProfileEntry, WitnessRadii};
pub use refinement::{refinement_tree, RefinementTree};
pub use union_find::UnionFind;
pub use virtually_z::{virtually_z_witness, virtually_z_witness_on_ball, VirtuallyZSearch, VirtuallyZWitness, SEARCH_NORM_BOUND};

use crate::graph_build::GraphError;
use crate::group_core::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("inner radius {r} must be below outer radius {outer}")]
    InnerRadius { r: u32, outer: u32 },
    #[error("margin: {0}")]
    Margin(String),
    #[error("element {0} is not inside the ball")]
    OutsideBall(String),
    #[error("internal consistency: {0}")]
    Inconsistent(String),
    #[error("partitions must share R and have consecutive inner radii")]
    NonConsecutive,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl AnalysisError {
    pub fn is_overflow(&self) -> bool {
        matches!(self, AnalysisError::Graph(GraphError::Overflow { .. }))
    }
}
