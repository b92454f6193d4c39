use std::sync::Arc;

use crate::dga::{
    cup, hom_differential, AlgebraMorphism, CoalgebraMorphism, DgAlgebra, DgCoalgebra,
};
use crate::error::{Error, Result};
use crate::graded::{GradedBasis, GradedMap};
use crate::linalg::{Scalar, SparseVec, VecBuilder};

use super::bar::BarCoalgebra;
use super::cobar::CobarAlgebra;

/// A twisting cochain: a degree-+1 map t: C → A with ε t = 0, t η = 0, and
/// the Maurer–Cartan condition d(t) = t ∪ t.
#[derive(Clone)]
pub struct TwistingCochain {
    pub source: Arc<DgCoalgebra>,
    pub target: Arc<DgAlgebra>,
    pub map: GradedMap,
}

impl TwistingCochain {
    pub fn new(source: Arc<DgCoalgebra>, target: Arc<DgAlgebra>, map: GradedMap) -> Self {
        assert_eq!(map.degree, 1);
        assert!(GradedBasis::same(&map.source, source.basis()));
        assert!(GradedBasis::same(&map.target, target.basis()));
        TwistingCochain {
            source,
            target,
            map,
        }
    }

    /// Validate ε t = 0, t η = 0, d(t) = t ∪ t, elementwise on all tracked
    /// basis elements whose image degree is still tracked.
    pub fn validate(&self) -> Result<()> {
        let ring = &self.source.ring;
        for (i, _) in self.source.basis().iter() {
            if !self.target.aug_of(self.map.column(i)).is_zero() {
                return Err(Error::InvalidTwistingCochain {
                    reason: format!("ε∘t ≠ 0 on {}", self.source.basis().name(i)),
                });
            }
        }
        if !self.map.column(self.source.unit_index).is_empty() {
            return Err(Error::InvalidTwistingCochain {
                reason: "t∘η ≠ 0".into(),
            });
        }
        let dt = hom_differential(ring, &self.map, self.source.d(), self.target.d());
        let tt = cup(ring, &self.source, &self.target, &self.map, &self.map);
        let diff = dt.sub(ring, &tt);
        for (i, e) in self.source.basis().iter() {
            // both sides live in degree |c| + 2, and t∘d_C needs d_C(c) to
            // still be tracked in the source window
            if e.degree + 1 <= self.source.basis().cutoff
                && e.degree + 2 <= self.target.basis().cutoff
                && !diff.column(i).is_empty()
            {
                return Err(Error::InvalidTwistingCochain {
                    reason: format!("Maurer–Cartan fails on {}", self.source.basis().name(i)),
                });
            }
        }
        Ok(())
    }

    /// Postcompose an algebra map: f t is again a twisting cochain.
    pub fn postcompose(&self, f: &AlgebraMorphism) -> TwistingCochain {
        TwistingCochain::new(
            self.source.clone(),
            f.target.clone(),
            f.map.compose(&self.source.ring, &self.map),
        )
    }

    /// Precompose a coalgebra map: t g is again a twisting cochain.
    pub fn precompose(&self, g: &CoalgebraMorphism) -> TwistingCochain {
        TwistingCochain::new(
            g.source.clone(),
            self.target.clone(),
            self.map.compose(&self.source.ring, &g.map),
        )
    }
}

impl BarCoalgebra {
    /// The tautological twisting cochain t^A: B A → A.
    pub fn tautological(&self) -> TwistingCochain {
        TwistingCochain::new(self.coalgebra.clone(), self.base.clone(), self.taut.clone())
    }
}

impl CobarAlgebra {
    /// The tautological twisting cochain t_C: C → Ω C.
    pub fn tautological(&self) -> TwistingCochain {
        TwistingCochain::new(self.base.clone(), self.algebra.clone(), self.taut.clone())
    }
}

/// All iterated left reduced splittings of a reduced element: lists of letters
/// with coefficients, one entry per n-fold splitting, n ≥ 1.
fn iterated_splittings(c: &DgCoalgebra, i: usize) -> Vec<(Vec<usize>, Scalar)> {
    let ring = c.ring;
    let mut out = vec![(vec![i], Scalar::ONE)];
    for (l, r, coeff) in c.reduced_comult(i) {
        for (mut letters, lc) in iterated_splittings(c, l) {
            letters.push(r);
            out.push((letters, ring.mul(&lc, &coeff)));
        }
    }
    out
}

/// The unique DGC map g_t: C → B A with t^A ∘ g_t = t: the word components
/// are (s⁻¹ t)^{⊗n} ∘ Δ̄⁽ⁿ⁾, which carry no Koszul signs since s⁻¹t has
/// degree zero.
pub fn lift_to_bar(t: &TwistingCochain, target: &BarCoalgebra) -> Result<CoalgebraMorphism> {
    assert!(Arc::ptr_eq(&t.target, &target.base) || t.target.basis() == target.base.basis());
    let source = &t.source;
    let ring = source.ring;
    for i in source.reduced() {
        if !source.cocompleteness.contains_key(&i) {
            return Err(Error::NotCocomplete {
                witness: source.basis().name(i).to_string(),
            });
        }
    }
    let cols = (0..source.basis().len())
        .map(|i| {
            if i == source.unit_index {
                return vec![(target.empty_word(), Scalar::ONE)];
            }
            let mut acc = VecBuilder::new();
            for (letters, coeff) in iterated_splittings(source, i) {
                // expand t on every letter
                let mut words: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), coeff)];
                for u in letters {
                    let image = t.map.column(u);
                    let mut next = Vec::new();
                    for (w, cw) in &words {
                        for (a, ca) in image {
                            let mut w2 = w.clone();
                            w2.push(*a);
                            next.push((w2, ring.mul(cw, ca)));
                        }
                    }
                    words = next;
                    if words.is_empty() {
                        break;
                    }
                }
                for (w, cw) in words {
                    if let Some(k) = target.word_index(&w) {
                        acc.add(&ring, k, cw);
                    }
                }
            }
            acc.build()
        })
        .collect();
    let map = GradedMap::from_columns(source.basis().clone(), target.basis().clone(), 0, cols);
    Ok(CoalgebraMorphism::new(
        source.clone(),
        target.coalgebra.clone(),
        map,
    ))
}

/// The unique DGA map f^t: Ω C → A with f^t ∘ t_C = t: products of t over the
/// letters, sign-free since t ∘ s⁻¹ has degree zero.
pub fn extend_from_cobar(t: &TwistingCochain, source: &CobarAlgebra) -> Result<AlgebraMorphism> {
    assert!(Arc::ptr_eq(&t.source, &source.base) || t.source.basis() == source.base.basis());
    let a = &t.target;
    let cols = (0..source.basis().len())
        .map(|i| {
            let word = &source.words[i];
            let mut acc: SparseVec = a.unit.clone();
            for &letter in word {
                acc = a.mult_vec(&acc, t.map.column(letter));
                if acc.is_empty() {
                    break;
                }
            }
            acc
        })
        .collect();
    let map = GradedMap::from_columns(source.basis().clone(), a.basis().clone(), 0, cols);
    Ok(AlgebraMorphism::new(source.algebra.clone(), a.clone(), map))
}

/// The adjunction unit η: C → B Ω C, the lift of the tautological twisting
/// cochain t_C.
pub fn adjunction_unit(
    cobar_c: &CobarAlgebra,
    bar_of_cobar: &BarCoalgebra,
) -> Result<CoalgebraMorphism> {
    lift_to_bar(&cobar_c.tautological(), bar_of_cobar)
}

/// The adjunction counit ε: Ω B A → A, the extension of the tautological
/// twisting cochain t^A.
pub fn adjunction_counit(
    bar_a: &BarCoalgebra,
    cobar_of_bar: &CobarAlgebra,
) -> Result<AlgebraMorphism> {
    extend_from_cobar(&bar_a.tautological(), cobar_of_bar)
}

/// Extract the twisting cochain f ∘ t_C of a DGA map f: Ω C → A.
pub fn twisting_of_cobar_map(f: &AlgebraMorphism, source: &CobarAlgebra) -> TwistingCochain {
    let ring = source.base.ring;
    TwistingCochain::new(
        source.base.clone(),
        f.target.clone(),
        f.map.compose(&ring, &source.taut),
    )
}
