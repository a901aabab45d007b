//! Monotone grid classes of permutations.
//!
//! Permutations, gridding matrices and their row-column graphs, gridded
//! permutations, orientation digraphs and the M-sum, coils, coil
//! decompositions and the labelled well quasi-order decision procedure.
//!
//! All indices in this crate are 0-based: positions and values of a
//! permutation run over `0..n`, and a cell `(col, row)` is counted from the
//! lower-left corner of the matrix. Text forms (`Display`/`FromStr`) use the
//! usual 1-based one-line notation.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod contain;
mod error;
mod lines;

pub mod boxes;
pub mod coil;
pub mod decide;
pub mod digraph;
pub mod graph;
pub mod gridding;
pub mod matrix;
pub mod perm;

pub use boxes::{
    coil_decomposition, decode_indivisible, encode_indivisible, good_coil_decomposition, regrid_to_acyclic,
    CoilDecomposition, IndivisibleCode,
};
pub use coil::{
    build_coil, coil_type, end_inflate, is_gridded_coil, longest_coil_contained, Chirality, CoilCertificate, CoilType,
};
pub use contain::{contains, count_embeddings, labelled_contains, Embedding, LabelledPerm};
pub use decide::{
    antichain_family, basis_search, bicyclic_counterexample, check_antichain, check_labelled_coil_antichain,
    decide_lwqo, end_inflated_survey, unique_gridding_probe, Answer, LwqoVerdict,
};
pub use digraph::{
    decompose, is_indivisible, last_points_indivisible, m_sum, minimal_indivisibles, orientation_digraph,
    OrientationDigraph,
};
pub use error::Error;
pub use graph::{classify, cycles, pmm_sequences, row_column_graph, CycleDescriptor, MatrixClass};
pub use gridding::{enumerate_griddings, gridded_contains, make_gridded, member, GriddedPerm};
pub use matrix::{double, normalize_to_pmm, Cell, GriddingMatrix, Line, Pmm};
pub use perm::Perm;
