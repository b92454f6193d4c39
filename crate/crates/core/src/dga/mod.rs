//! Augmented DG algebras, coaugmented cocomplete DG coalgebras, free
//! graded-commutative presentations, morphisms, and homotopy checkers.

mod algebra;
mod expr;
mod free;
mod homotopy_check;
mod morphism;

pub use algebra::{
    algebra_tensor, coalgebra_tensor, convolution_unit, cup, hom_differential, interchange_map,
    unit_algebra, ComultRule, DgAlgebra, DgCoalgebra, MultRule,
};
pub use expr::evaluate_expression;
pub use free::{build_free_gca, FreeGca, FreeGcaPresentation, GcaGenerator};
pub use homotopy_check::{
    check_dgc_homotopy, check_homotopy, check_tc_homotopy, DgaHomotopy, HomotopyReport,
};
pub use morphism::{evaluate_morphism, AlgebraMorphism, CoalgebraMorphism};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::GradedMap;
    use crate::linalg::{CoefficientRing, Scalar};

    fn kx(ring: CoefficientRing, cutoff: usize) -> FreeGca {
        build_free_gca(&FreeGcaPresentation {
            generators: vec![GcaGenerator::new("x", 2)],
            ring,
            cutoff,
        })
        .unwrap()
    }

    #[test]
    fn tensor_square_is_an_algebra_with_interchange_involution() {
        let z = CoefficientRing::Integers;
        let a = build_free_gca(&FreeGcaPresentation {
            generators: vec![GcaGenerator::new("x", 1), GcaGenerator::new("y", 2)],
            ring: z,
            cutoff: 4,
        })
        .unwrap();
        let (tb, t) = algebra_tensor(&a.algebra, &a.algebra).unwrap();
        t.check_axioms().unwrap();
        let chi = interchange_map(&z, &tb, &tb);
        // χ∘χ = id on all basis pairs
        let chi2 = chi.compose(&z, &chi);
        assert!(chi2.equal_map(&z, &GradedMap::identity(tb.basis.clone())));
        // χ(x⊗y) with |x| = |y| = 1 is −y⊗x
        let x = a.algebra.basis().index_of("x").unwrap();
        let xy = tb.index_of(x, x).unwrap();
        assert_eq!(chi.column(xy), &vec![(xy, Scalar::Int(-1))]);
        // χ is an algebra isomorphism
        let morphism = AlgebraMorphism::new(t.clone(), t.clone(), chi);
        morphism.validate().unwrap();
    }

    #[test]
    fn tensor_with_unit_algebra_relabels() {
        let q = CoefficientRing::Rationals;
        let a = kx(q, 6);
        let k = unit_algebra(q, 6);
        let (_, t) = algebra_tensor(&a.algebra, &k).unwrap();
        assert_eq!(t.basis().dims(), a.algebra.basis().dims());
        t.check_axioms().unwrap();
    }

    #[test]
    fn zero_homotopy_between_equal_maps_is_valid() {
        let q = CoefficientRing::Rationals;
        let a = kx(q, 6);
        let id = AlgebraMorphism::identity(&a.algebra);
        let cand = DgaHomotopy::constant(&id);
        assert!(check_homotopy(&cand).is_valid());
    }

    #[test]
    fn zero_homotopy_between_different_maps_is_invalid() {
        let z = CoefficientRing::Integers;
        let a = kx(z, 6);
        let id = AlgebraMorphism::identity(&a.algebra);
        let double = evaluate_morphism(&[("x".into(), "2*x".into())], &a, &a).unwrap();
        let cand = DgaHomotopy {
            f0: id.clone(),
            f1: double,
            h: GradedMap::zero(a.algebra.basis().clone(), a.algebra.basis().clone(), -1),
        };
        let report = check_homotopy(&cand);
        assert!(!report.is_valid());
        assert!(report
            .failures
            .iter()
            .any(|(cond, _)| cond.contains("d(h)")));
    }

    #[test]
    fn homotopy_with_augmentation_leak_fails_counit_condition() {
        // h sending x to 1 violates ε∘h = 0 (degree bookkeeping aside, the
        // checker reports the first failing axiom)
        let q = CoefficientRing::Rationals;
        let a = build_free_gca(&FreeGcaPresentation {
            generators: vec![GcaGenerator::new("s", 1)],
            ring: q,
            cutoff: 3,
        })
        .unwrap();
        let id = AlgebraMorphism::identity(&a.algebra);
        let s = a.generator_basis_index(0);
        let one = a.algebra.aug_index;
        let mut cols = vec![Vec::new(); a.algebra.basis().len()];
        cols[s] = vec![(one, Scalar::ONE)];
        let h = GradedMap::from_columns(
            a.algebra.basis().clone(),
            a.algebra.basis().clone(),
            -1,
            cols,
        );
        let report = check_homotopy(&DgaHomotopy {
            f0: id.clone(),
            f1: id,
            h,
        });
        assert!(report.failures.iter().any(|(cond, _)| cond.contains("ε∘h")));
    }
}
