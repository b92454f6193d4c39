use crate::dga::{
    build_free_gca, evaluate_morphism, AlgebraMorphism, FreeGca, FreeGcaPresentation,
};
use crate::error::Result;
use crate::guard::CellBudget;
use crate::linalg::CoefficientRing;

use super::koszul::{koszul_complex, KoszulComplex};
use super::two_sided::{two_sided_bar, TwoSidedBar};

/// A span X ← A → Y of free graded-commutative algebras with the maps given
/// by generator images: the input of every Tor computation.
pub struct Span {
    pub ring: CoefficientRing,
    pub base: FreeGca,
    pub left: FreeGca,
    pub right: FreeGca,
    pub phi_x: AlgebraMorphism,
    pub phi_y: AlgebraMorphism,
}

impl Span {
    /// Build the span at a given algebra cutoff. Map images are polynomial
    /// expressions in the module generators.
    pub fn build(
        ring: CoefficientRing,
        algebra_cutoff: usize,
        base: &FreeGcaPresentation,
        left: &FreeGcaPresentation,
        right: &FreeGcaPresentation,
        left_images: &[(String, String)],
        right_images: &[(String, String)],
    ) -> Result<Span> {
        let at = |p: &FreeGcaPresentation| FreeGcaPresentation {
            generators: p.generators.clone(),
            ring,
            cutoff: algebra_cutoff,
        };
        let base = build_free_gca(&at(base))?;
        let left = build_free_gca(&at(left))?;
        let right = build_free_gca(&at(right))?;
        let phi_x = evaluate_morphism(left_images, &base, &left)?;
        let phi_y = evaluate_morphism(right_images, &base, &right)?;
        phi_x.validate()?;
        phi_y.validate()?;
        Ok(Span {
            ring,
            base,
            left,
            right,
            phi_x,
            phi_y,
        })
    }

    /// The two-sided bar complex B(X, A, Y) at the given cutoff; report
    /// degrees run to cutoff − 1.
    pub fn bar_complex(&self, cutoff: usize, budget: &CellBudget) -> Result<TwoSidedBar> {
        two_sided_bar(
            &self.left.algebra,
            &self.base.algebra,
            &self.right.algebra,
            &self.phi_x,
            &self.phi_y,
            cutoff,
            budget,
        )
    }

    /// The Koszul-resolution complex at the given cutoff (even polynomial
    /// base only).
    pub fn koszul(&self, cutoff: usize, budget: &CellBudget) -> Result<KoszulComplex> {
        koszul_complex(
            &self.base,
            &self.left.algebra,
            &self.right.algebra,
            &self.phi_x,
            &self.phi_y,
            cutoff,
            budget,
        )
    }
}
