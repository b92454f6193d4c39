//! Exact sparse linear algebra over ℤ, ℤ/p, and ℚ: Smith normal form, ranks,
//! kernels, and homology of three-term sequences with chosen representatives.

pub mod gauss;
pub mod homology;
pub mod scalar;
pub mod snf;
pub mod sparse;

pub use num_bigint::BigInt;

pub use gauss::{field_kernel, field_rank, ColumnReduction};
pub use homology::{coordinates_in_homology, homology_at, HomologySpace, ModuleSummary};
pub use scalar::{CoefficientRing, Scalar};
pub use snf::{smith_normal_form, SmithNormalForm};
pub use sparse::{vec_add, vec_add_scaled, vec_scale, SparseMatrix, SparseVec, VecBuilder};
