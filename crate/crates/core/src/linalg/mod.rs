//! Exact graded linear algebra.

pub mod elimination;
pub mod graded;

pub use elimination::{kernel_of_rows, rank_of, solve, transpose, Echelon, SparseVec};
pub use graded::{
    operator_matrix, slice_basis, ComplexMap, GradedOperatorMatrix, LinalgError, RankKernel,
    SliceBasis, SpaceKind, MAX_SLICE_GRADE,
};
