use crate::graph::MatrixClass;
use crate::matrix::Cell;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    InvalidPermutation(&'static str),
    #[error("could not parse {0:?}")]
    Parse(alloc::string::String),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("matrix rows have different lengths")]
    RaggedMatrix,
    #[error("illegal matrix entry {0:?}")]
    IllegalEntry(alloc::string::String),
    #[error("matrix has no rows or no columns")]
    EmptyMatrix,
    #[error("operation unsupported for {0:?} matrices")]
    UnsupportedClass(MatrixClass),
    #[error("matrix has no row and column sequences")]
    MissingPmm,
    #[error("matrix has a negative cycle")]
    NegativeCycle,
    #[error("grid lines are invalid: {0}")]
    BadCuts(&'static str),
    #[error("nonempty cell {0:?} has a zero entry")]
    ZeroCell(Cell),
    #[error("cell {0:?} is not monotone in the direction of its entry")]
    NotMonotone(Cell),
    #[error("cell assignment is not realisable by grid lines")]
    NotStaircase,
    #[error("gridded permutations use different matrices")]
    MatrixMismatch,
    #[error("label alphabets differ")]
    AlphabetMismatch,
    #[error("label not in alphabet")]
    UnknownLabel,
    #[error("invalid cycle")]
    InvalidCycle,
    #[error("start cell {0} is not on the cycle")]
    InvalidStart(usize),
    #[error("coil length {length} must exceed the cycle length {cycle}")]
    CoilTooShort { length: usize, cycle: usize },
    #[error("gridded permutation is not indivisible")]
    NotIndivisible,
    #[error("gridded permutation is empty")]
    Empty,
    #[error("not a gridded coil")]
    NotACoil,
    #[error("invalid coil type")]
    InvalidType,
    #[error("invalid length list")]
    InvalidLengths,
    #[error("seed is not a last point of a cycle cell")]
    InvalidSeed,
    #[error("breadth-first layers do not follow the cycle")]
    LayersOffCycle,
    #[error("boxes interleave inside a grid line")]
    BoxesInterleave,
    #[error("search bound {requested} exceeds the limit {limit}")]
    BudgetExceeded { requested: usize, limit: usize },
    #[error("code is inconsistent with its matrix")]
    InvalidCode,
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}
