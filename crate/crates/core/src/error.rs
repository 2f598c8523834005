use thiserror::Error;

use crate::instance::Violation;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    Invalid(#[from] Violation),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("vertex subset must be nonempty")]
    EmptySubset,
    #[error("instance has no edges")]
    Edgeless,
    #[error("instance is disconnected")]
    Disconnected,
    #[error("operation requires an undirected instance")]
    RequiresUndirected,
    #[error("threshold assignment is not degenerate (stuck set {witness:?})")]
    NotDegenerate { witness: VertexSet },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("instance has {n} vertices, oracle limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("arithmetic overflow while scaling rationals to integers")]
    Overflow,
    #[error("incentive vector has {got} entries, instance has {expected} vertices")]
    IncentiveLength { expected: usize, got: usize },
    #[error("negative incentive at vertex {0}")]
    NegativeIncentive(usize),
    #[error("solver produced a vector that does not activate the instance")]
    Unverified,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
