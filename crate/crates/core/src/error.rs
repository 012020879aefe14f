use alloc::string::String;

use num_bigint::BigInt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the counting kernels. Each message names the violated
/// precondition or invariant.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("{0} is not a perfect square (orientation is not Pfaffian)")]
    NotAPerfectSquare(BigInt),
    #[error("matrix dimension {dim} exceeds the permanent cap {cap}")]
    DimensionTooLarge { dim: usize, cap: usize },
    #[error("variable {0} has no binding")]
    UnboundVariable(String),
    #[error("instance size {size} exceeds the limit {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not Eulerian: {0}")]
    NotEulerian(String),
    #[error("graph has no arcs")]
    EmptyGraph,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid exit order: {0}")]
    InvalidExitOrder(String),
    #[error("not an arborescence: {0}")]
    InvalidArborescence(String),
    #[error("circuit has odd length {0}")]
    OddCircuit(usize),
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid code {code:?}: {reason}")]
    InvalidCode { code: String, reason: String },
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error("not a linear space: points {a} and {b} lie on {count} lines")]
    NotLinearSpace { a: usize, b: usize, count: usize },
    #[error("invalid line set: {0}")]
    InvalidLineSet(String),
    #[error("all points are collinear")]
    AllCollinear,
    #[error("point {0} is repeated")]
    DuplicatePoint(usize),
    #[error("element {0:?} is not in the group")]
    ElementOutOfGroup(alloc::vec::Vec<u64>),
    #[error("group of order {order} exceeds the search limit {limit}")]
    GroupTooLarge { order: usize, limit: usize },
    #[error("search exceeded its budget of {0} steps")]
    SearchBudgetExceeded(u64),
}
