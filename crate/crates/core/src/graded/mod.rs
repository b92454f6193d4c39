//! Graded modules with named bases, homogeneous maps of arbitrary degree with
//! Koszul signs, the hom-complex differential, and homology of whole complexes.
//!
//! All gradings are cohomological: differentials raise degree by one, and
//! every object is truncated at a total-degree cutoff. Constructions track one
//! degree beyond the degree they are expected to report about, so homology at
//! the reporting cutoff is still exact.

mod basis;
mod complex;
mod map;
mod tensor;

pub use basis::{BasisElement, GradedBasis};
pub use complex::{complex_homology, complex_homology_spaces, ChainComplex};
pub use map::GradedMap;
pub use tensor::{tensor_complex, tensor_map, TensorBasis};
