//! Partitions, index vectors, robust-vector reports, reachability and
//! odd-intersection copies.
//!
//! Asymptotic thresholds are explicit absolute counts chosen by the caller.

mod facts;
mod oddcopy;
mod partition;
mod reach;
mod robust;

pub use facts::{
    dense_triangle_check, split_triangle_check, tripartite_triangle_check, FactCheck, SimpleGraph,
};
pub use oddcopy::{odd_intersection_copy, OddCopySearch};
pub use partition::{IndexVector, Partition, PartitionError};
pub use reach::{closed_partition, reachable_5sets, ClosedPartition, ReachParams, ReachReport};
pub(crate) use reach::reachable_5sets_avoiding;
pub use robust::{
    find_transferral, good_pairs, robust_vectors, vector_completion, RobustReport, SampleEstimate, Transferral,
    VectorCount,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("arity must be 3 or 6, got {0}")]
    Arity(usize),
    #[error("a transferral needs an arity-6 report")]
    NotCycleReport,
    #[error("vector has {got} coordinates, partition has {want} parts")]
    Dimension { got: usize, want: usize },
    #[error("expected a {want}-vector, coordinates sum to {got}")]
    VectorSum { got: usize, want: usize },
    #[error("part index {0} out of range")]
    PartIndex(usize),
    #[error("x and y must differ")]
    SameVertex,
    #[error("vertex {0} out of range")]
    Vertex(usize),
}
