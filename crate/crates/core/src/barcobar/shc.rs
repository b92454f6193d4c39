use crate::dga::{AlgebraMorphism, CoalgebraMorphism, DgAlgebra};
use crate::error::Result;
use crate::graded::{GradedMap, TensorBasis};
use std::sync::Arc;

use super::bar::{bar_of_morphism, BarCoalgebra};

/// The multiplication of a strictly commutative DGA as an algebra morphism
/// μ: A ⊗ A → A.
pub fn multiplication_morphism(
    a: &Arc<DgAlgebra>,
    square: &TensorBasis,
    square_algebra: &Arc<DgAlgebra>,
) -> Result<AlgebraMorphism> {
    a.check_commutative()?;
    let cols = (0..square.basis.len())
        .map(|k| {
            let (i, j) = square.pair(k);
            a.mult_basis(i, j)
        })
        .collect();
    let map = GradedMap::from_columns(square.basis.clone(), a.basis().clone(), 0, cols);
    Ok(AlgebraMorphism::new(square_algebra.clone(), a.clone(), map))
}

/// The strongly homotopy commutative structure of a genuinely commutative
/// DGA: Φ = B μ: B(A ⊗ A) → B A. For strict inputs this satisfies strict
/// unitality, Φ ∘ Bχ = Φ, and strict associativity.
pub fn shc_structure_cdga(
    a: &Arc<DgAlgebra>,
    square: &TensorBasis,
    square_algebra: &Arc<DgAlgebra>,
    bar_square: &BarCoalgebra,
    bar_a: &BarCoalgebra,
) -> Result<CoalgebraMorphism> {
    let mu = multiplication_morphism(a, square, square_algebra)?;
    Ok(bar_of_morphism(&mu, bar_square, bar_a))
}

/// The inclusion id ⊗ η (or η ⊗ id): A → A ⊗ A.
pub fn unit_inclusion(
    a: &Arc<DgAlgebra>,
    square: &TensorBasis,
    square_algebra: &Arc<DgAlgebra>,
    left_slot: bool,
) -> AlgebraMorphism {
    let ring = a.ring;
    let cols = (0..a.basis().len())
        .map(|i| {
            let this = vec![(i, crate::linalg::Scalar::ONE)];
            if left_slot {
                square.tensor_vec(&ring, &this, &a.unit)
            } else {
                square.tensor_vec(&ring, &a.unit, &this)
            }
        })
        .collect();
    let map = GradedMap::from_columns(a.basis().clone(), square.basis.clone(), 0, cols);
    AlgebraMorphism::new(a.clone(), square_algebra.clone(), map)
}
