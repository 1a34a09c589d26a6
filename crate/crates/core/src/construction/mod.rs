//! The lower-bound family `G_l`, its subdivisions, and the helpers that
//! describe them.

mod bits;
mod family;
pub mod lemmas;
mod subdivision;
mod theorem;
mod walk;

pub use bits::{bit, delta, pi};
pub use family::{build_g, GridIndex, WitnessPair, MAX_LEVEL, MIN_LEVEL};
pub use subdivision::{has_symmetric_edge, path_labels, subdivide, SubdividedEdge, SubdivisionMap};
pub use theorem::{theorem_instance, TheoremInstance, TheoremParameters};
pub use walk::{distinguishing_walk, DistinguishingWalk, WALK_PORT};

use thiserror::Error;

use crate::graph::{GraphError, NodeId, Port};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("level parameter l = {0} outside {MIN_LEVEL}..={MAX_LEVEL}")]
    LevelOutOfRange(u32),
    #[error("subdivision length must be positive")]
    ZeroSubdivision,
    #[error("subdivision length {length} is even but the graph has symmetric edges")]
    EvenSubdivision { length: usize },
    #[error("hypothesis violated: need D' >= 3 and n' >= D' * 2^12 / 3 (got D' = {d_prime}, n' = {n_prime})")]
    Hypothesis { d_prime: u64, n_prime: u64 },
    #[error("port clash at ({node},{port})")]
    PortClash { node: NodeId, port: Port },
    #[error("walk from {side} at step {step}: expected (level, column) {expected:?}, found {found:?}")]
    TrajectoryMismatch { side: char, step: usize, expected: (u32, u64), found: (u32, u64) },
    #[error("final entry ports {found:?}, expected {expected:?}")]
    EntryPortMismatch { found: (Port, Port), expected: (Port, Port) },
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
