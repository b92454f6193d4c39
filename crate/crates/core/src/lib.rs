//! An exact-arithmetic engine for differential homological algebra: graded
//! modules with Koszul signs, augmented DG algebras and coaugmented DG
//! coalgebras, bar and cobar constructions with their twisting cochains,
//! path objects and homotopy calculus, and the bigraded Tor of a span of
//! graded-commutative algebras together with its ring structure.

pub mod barcobar;
pub mod dga;
pub mod error;
pub mod graded;
pub mod guard;
pub mod homotopy;
pub mod linalg;
pub mod tor;

pub use error::{Error, Result};
pub use linalg::{CoefficientRing, ModuleSummary, Scalar, SparseMatrix, SparseVec};
