use thiserror::Error;

/// Everything that can go wrong while building trees, assembling cell
/// complexes, or decoding externally supplied data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The same unordered vertex pair occurs twice in an edge list.
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    /// Adding this edge closes a cycle (includes self-loops).
    #[error("edge {0}-{1} closes a cycle")]
    CycleDetected(String, String),
    /// A vertex is not reachable from the rest of the edge list.
    #[error("vertex {0} is not connected to the rest of the tree")]
    Disconnected(String),
    /// The requested basepoint does not occur in the edge list.
    #[error("basepoint {0} does not occur in the edge list")]
    BasepointMissing(String),
    /// A vertex name does not occur in the tree.
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    /// The basepoint lies outside the trimmed tree, so the subtree lattice
    /// is not anchored; attach pendant edges at the basepoint first.
    #[error("basepoint {0} lies outside the trimmed tree; augment first")]
    BasepointNotInTrimmedTree(String),
    /// The basepoint order is below 3; the cell decomposition is defined
    /// only after augmentation.
    #[error("basepoint has order {order}; augment to order >= 3 first")]
    NeedsAugmentation { order: usize },
    /// The subtree lattice is larger than the configured cell cap.
    #[error("{subtrees} subtrees exceed the cell cap of {cap}")]
    ComplexTooLarge { subtrees: u128, cap: usize },
    /// Two cells share the minimum dimension, which cannot happen for a
    /// complex built from a tree.
    #[error("minimum cell dimension {dim} is shared by cells {first} and {second}")]
    AmbiguousBase {
        dim: usize,
        first: usize,
        second: usize,
    },
    /// The complex violates a structural law of real cell decompositions.
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    /// Input text could not be decoded.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
