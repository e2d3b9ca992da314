//! Instance generators and small exact audits for the hardness results:
//! the vertex-cover reduction to three-player games, brute-force balanced
//! covers, Player-3 audits, and the graph-coloring leader.

mod audit;
mod coloring;
mod cover;
mod graph;
mod reduction;

pub use audit::{
    grid_audit_player3, grid_audit_player3_with_budget, player3_audit, player3_threshold, GridAudit,
    DEFAULT_GRID_BUDGET,
};
pub use coloring::{coloring_leader_gpa, ColoringLeaderGpa};
pub use cover::{balanced_vertex_cover, balanced_vertex_cover_with_limit, cover_strategies, DEFAULT_COVER_LIMIT};
pub use graph::Graph;
pub use reduction::{reduce_graph, Player3Action, ThreePlayerGame};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph has {vertices} vertices, at least {minimum} are needed")]
    GraphTooSmall { vertices: usize, minimum: usize },
    #[error("{what} needs {required}, over the budget of {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: String,
        budget: String,
    },
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("strategy has {found} entries, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("grid resolution must be at least 1")]
    InvalidResolution,
}
