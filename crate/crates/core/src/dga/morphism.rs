use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{GradedBasis, GradedMap};
use crate::linalg::{Scalar, SparseVec};

use super::algebra::{DgAlgebra, DgCoalgebra};
use super::expr::evaluate_expression;
use super::free::FreeGca;

/// A degree-0 map of augmented DGAs, stored as its underlying graded map.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    pub source: Arc<DgAlgebra>,
    pub target: Arc<DgAlgebra>,
    pub map: GradedMap,
}

impl AlgebraMorphism {
    pub fn new(source: Arc<DgAlgebra>, target: Arc<DgAlgebra>, map: GradedMap) -> Self {
        assert!(GradedBasis::same(&map.source, source.basis()));
        assert!(GradedBasis::same(&map.target, target.basis()));
        assert_eq!(map.degree, 0);
        AlgebraMorphism {
            source,
            target,
            map,
        }
    }

    pub fn identity(a: &Arc<DgAlgebra>) -> Self {
        AlgebraMorphism {
            source: a.clone(),
            target: a.clone(),
            map: GradedMap::identity(a.basis().clone()),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.map.apply(&self.source.ring, v)
    }

    pub fn compose(&self, other: &AlgebraMorphism) -> AlgebraMorphism {
        AlgebraMorphism::new(
            other.source.clone(),
            self.target.clone(),
            self.map.compose(&self.source.ring, &other.map),
        )
    }

    /// Chain map, multiplicative, unital, augmentation-preserving.
    pub fn validate(&self) -> Result<()> {
        let ring = &self.source.ring;
        let basis = self.source.basis();
        // chain map
        let left = self.target.d().compose(ring, &self.map);
        let right = self.map.compose(ring, self.source.d());
        if let Some(i) = left.difference_witness(ring, &right) {
            return Err(Error::NotAChainMap {
                witness: basis.name(i).to_string(),
            });
        }
        // unital
        if self.apply(&self.source.unit) != self.target.unit {
            return Err(Error::AxiomFailure {
                reason: "morphism does not preserve the unit".into(),
            });
        }
        // augmentation-preserving: ε_B(f(x)) = ε_A(x)
        for (i, _) in basis.iter() {
            let got = self.target.aug_of(self.map.column(i));
            let want = if i == self.source.aug_index {
                Scalar::ONE
            } else {
                Scalar::ZERO
            };
            if got != want {
                return Err(Error::AxiomFailure {
                    reason: format!("augmentation not preserved on {}", basis.name(i)),
                });
            }
        }
        // multiplicative on all tracked pairs
        for (i, ei) in basis.iter() {
            for (j, ej) in basis.iter() {
                if ei.degree + ej.degree > basis.cutoff {
                    continue;
                }
                let lhs = self.apply(&self.source.mult_basis(i, j));
                let rhs = self.target.mult_vec(self.map.column(i), self.map.column(j));
                if lhs != rhs {
                    return Err(Error::AxiomFailure {
                        reason: format!(
                            "not multiplicative on {}·{}",
                            basis.name(i),
                            basis.name(j)
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Whether the induced maps on homology are isomorphisms up to the given
    /// degree.
    pub fn is_quasi_isomorphism(&self, max_degree: usize) -> Result<bool> {
        let ring = &self.source.ring;
        let src = crate::graded::complex_homology_spaces(&self.source.complex, ring, max_degree)?;
        let tgt = crate::graded::complex_homology_spaces(&self.target.complex, ring, max_degree)?;
        for q in 0..=max_degree {
            let (hs, ht) = (&src[q], &tgt[q]);
            if hs.summary.free_rank != ht.summary.free_rank
                || hs.summary.torsion != ht.summary.torsion
            {
                return Ok(false);
            }
            // surjectivity of an endomorphism-shaped map between isomorphic
            // finitely generated modules is enough
            let mut image_coords = Vec::new();
            for g in &hs.summary.generators {
                // generators are stored in degree-block coordinates
                let g_global = GradedMap::globalize(self.source.basis(), q, g);
                let fg = self.apply(&g_global);
                let fg_local = GradedMap::localize(self.target.basis(), q, &fg);
                match ht.coordinates(&fg_local) {
                    Ok(c) => image_coords.push(c),
                    Err(_) => return Ok(false),
                }
            }
            if !spans_all(ring, ht, &image_coords) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Do the coordinate vectors span the whole module summary?
pub(crate) fn spans_all(
    ring: &crate::linalg::CoefficientRing,
    h: &crate::linalg::HomologySpace,
    coords: &[Vec<Scalar>],
) -> bool {
    let n = h.summary.total_generators();
    if n == 0 {
        return true;
    }
    if ring.is_field() {
        let m = crate::linalg::SparseMatrix::from_columns(
            n,
            coords
                .iter()
                .map(|c| {
                    c.iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(i, v)| (i, v.clone()))
                        .collect()
                })
                .collect(),
        );
        crate::linalg::field_rank(ring, &m) == n
    } else {
        // over ℤ: solvable for every generator after adjoining the torsion
        // relations d_i·e_i
        let mut cols: Vec<SparseVec> = coords
            .iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i, v.clone()))
                    .collect()
            })
            .collect();
        for (i, d) in h.summary.torsion.iter().enumerate() {
            cols.push(vec![(i, Scalar::from_bigint(d.clone()))]);
        }
        let m = crate::linalg::SparseMatrix::from_columns(n, cols);
        let snf = crate::linalg::smith_normal_form(&m);
        (0..n).all(|i| snf.solve(&vec![(i, Scalar::ONE)]).is_some())
    }
}

/// A degree-0 map of coaugmented DGCs.
#[derive(Debug, Clone)]
pub struct CoalgebraMorphism {
    pub source: Arc<DgCoalgebra>,
    pub target: Arc<DgCoalgebra>,
    pub map: GradedMap,
}

impl CoalgebraMorphism {
    pub fn new(source: Arc<DgCoalgebra>, target: Arc<DgCoalgebra>, map: GradedMap) -> Self {
        assert!(GradedBasis::same(&map.source, source.basis()));
        assert!(GradedBasis::same(&map.target, target.basis()));
        assert_eq!(map.degree, 0);
        CoalgebraMorphism {
            source,
            target,
            map,
        }
    }

    pub fn identity(c: &Arc<DgCoalgebra>) -> Self {
        CoalgebraMorphism {
            source: c.clone(),
            target: c.clone(),
            map: GradedMap::identity(c.basis().clone()),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        self.map.apply(&self.source.ring, v)
    }

    pub fn compose(&self, other: &CoalgebraMorphism) -> CoalgebraMorphism {
        CoalgebraMorphism::new(
            other.source.clone(),
            self.target.clone(),
            self.map.compose(&self.source.ring, &other.map),
        )
    }

    /// Whether the induced maps on homology are isomorphisms up to the given
    /// degree.
    pub fn is_quasi_isomorphism(&self, max_degree: usize) -> Result<bool> {
        let ring = &self.source.ring;
        let src = crate::graded::complex_homology_spaces(&self.source.complex, ring, max_degree)?;
        let tgt = crate::graded::complex_homology_spaces(&self.target.complex, ring, max_degree)?;
        for q in 0..=max_degree {
            let (hs, ht) = (&src[q], &tgt[q]);
            if hs.summary.free_rank != ht.summary.free_rank
                || hs.summary.torsion != ht.summary.torsion
            {
                return Ok(false);
            }
            let mut image_coords = Vec::new();
            for g in &hs.summary.generators {
                let g_global = GradedMap::globalize(self.source.basis(), q, g);
                let fg = self.apply(&g_global);
                let fg_local = GradedMap::localize(self.target.basis(), q, &fg);
                match ht.coordinates(&fg_local) {
                    Ok(c) => image_coords.push(c),
                    Err(_) => return Ok(false),
                }
            }
            if !spans_all(ring, ht, &image_coords) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn validate(&self) -> Result<()> {
        let ring = &self.source.ring;
        let basis = self.source.basis();
        let left = self.target.d().compose(ring, &self.map);
        let right = self.map.compose(ring, self.source.d());
        if let Some(i) = left.difference_witness(ring, &right) {
            return Err(Error::NotAChainMap {
                witness: basis.name(i).to_string(),
            });
        }
        // coaugmentation and counit
        if self.map.column(self.source.unit_index) != &vec![(self.target.unit_index, Scalar::ONE)] {
            return Err(Error::AxiomFailure {
                reason: "morphism does not preserve the coaugmentation".into(),
            });
        }
        for (i, _) in basis.iter() {
            let got = self.target.counit_of(self.map.column(i));
            let want = if i == self.source.unit_index {
                Scalar::ONE
            } else {
                Scalar::ZERO
            };
            if got != want {
                return Err(Error::AxiomFailure {
                    reason: format!("counit not preserved on {}", basis.name(i)),
                });
            }
        }
        // comultiplicative: Δ(f(c)) = (f⊗f)(Δ(c))
        for (i, _) in basis.iter() {
            let mut lhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (j, c) in self.map.column(i) {
                for (l, r, c2) in self.target.comult_basis(*j) {
                    add_pair(ring, &mut lhs, (l, r), ring.mul(c, &c2));
                }
            }
            let mut rhs: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
            for (l, r, c) in self.source.comult_basis(i) {
                for (l2, cl) in self.map.column(l) {
                    for (r2, cr) in self.map.column(r) {
                        add_pair(ring, &mut rhs, (*l2, *r2), ring.mul(&c, &ring.mul(cl, cr)));
                    }
                }
            }
            if lhs != rhs {
                return Err(Error::AxiomFailure {
                    reason: format!("not comultiplicative on {}", basis.name(i)),
                });
            }
        }
        Ok(())
    }
}

fn add_pair(
    ring: &crate::linalg::CoefficientRing,
    map: &mut BTreeMap<(usize, usize), Scalar>,
    key: (usize, usize),
    v: Scalar,
) {
    if v.is_zero() {
        return;
    }
    match map.remove(&key) {
        None => {
            map.insert(key, v);
        }
        Some(old) => {
            let s = ring.add(&old, &v);
            if !s.is_zero() {
                map.insert(key, s);
            }
        }
    }
}

/// Extend generator images multiplicatively to a morphism of free GCAs.
///
/// Images are given by polynomial expressions in the target's generators and
/// must be homogeneous of the generator's degree.
pub fn evaluate_morphism(
    images: &[(String, String)],
    source: &FreeGca,
    target: &FreeGca,
) -> Result<AlgebraMorphism> {
    let ring = source.algebra.ring;
    if ring != target.algebra.ring {
        return Err(Error::RingMismatch);
    }
    let gens = &source.presentation.generators;
    let mut image_vecs: Vec<Option<SparseVec>> = vec![None; gens.len()];
    for (name, expr) in images {
        let gi = source
            .generator_index(name)
            .ok_or(Error::UnknownGenerator { name: name.clone() })?;
        let v = evaluate_expression(target, expr)?;
        for (k, _) in &v {
            let deg = target.algebra.basis().degree(*k);
            if deg != gens[gi].degree {
                return Err(Error::DegreeMismatch {
                    context: format!(
                        "image of {} must be homogeneous of degree {}, found degree {}",
                        name, gens[gi].degree, deg
                    ),
                });
            }
        }
        image_vecs[gi] = Some(v);
    }
    for (gi, v) in image_vecs.iter().enumerate() {
        if v.is_none() {
            return Err(Error::DegreeMismatch {
                context: format!("no image given for generator {}", gens[gi].name),
            });
        }
    }
    let image_vecs: Vec<SparseVec> = image_vecs.into_iter().map(|v| v.unwrap()).collect();
    // φ(monomial) = Π φ(gᵢ)^{eᵢ}, in generator order
    let cols = (0..source.algebra.basis().len())
        .map(|idx| {
            let exps = &source.monomials[idx];
            let mut acc = target.algebra.unit.clone();
            for (gi, e) in exps.iter().enumerate() {
                for _ in 0..*e {
                    acc = target.algebra.mult_vec(&acc, &image_vecs[gi]);
                }
            }
            acc
        })
        .collect();
    let map = GradedMap::from_columns(
        source.algebra.basis().clone(),
        target.algebra.basis().clone(),
        0,
        cols,
    );
    Ok(AlgebraMorphism::new(
        source.algebra.clone(),
        target.algebra.clone(),
        map,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::free::{build_free_gca, FreeGcaPresentation, GcaGenerator};
    use crate::linalg::CoefficientRing;

    fn gca(ring: CoefficientRing, cutoff: usize, gens: Vec<GcaGenerator>) -> FreeGca {
        build_free_gca(&FreeGcaPresentation {
            generators: gens,
            ring,
            cutoff,
        })
        .unwrap()
    }

    #[test]
    fn su4_restriction_images_are_symmetric_functions_of_the_weights() {
        // the U(1) < SU(4) with weights (−3, 1, 1, 1): the Chern classes
        // restrict to the elementary symmetric polynomials of the weights
        let weights: [i64; 4] = [-3, 1, 1, 1];
        let e = |k: usize| -> i64 {
            // sum over k-subsets
            fn rec(w: &[i64], k: usize, start: usize) -> i64 {
                if k == 0 {
                    return 1;
                }
                (start..w.len()).map(|i| w[i] * rec(w, k - 1, i + 1)).sum()
            }
            rec(&weights, k, 0)
        };
        assert_eq!((e(2), e(3), e(4)), (-6, -8, -3));

        let z = CoefficientRing::Integers;
        let base = gca(
            z,
            10,
            vec![
                GcaGenerator::new("c2", 4),
                GcaGenerator::new("c3", 6),
                GcaGenerator::new("c4", 8),
            ],
        );
        let circle = gca(z, 10, vec![GcaGenerator::new("t", 2)]);
        let phi = evaluate_morphism(
            &[
                ("c2".into(), "-6*t^2".into()),
                ("c3".into(), "-8*t^3".into()),
                ("c4".into(), "-3*t^4".into()),
            ],
            &base,
            &circle,
        )
        .unwrap();
        phi.validate().unwrap();
        // c2·c2 ↦ 36·t⁴ (degree 8 ≤ cutoff)
        let c2sq = base.algebra.basis().index_of("c2^2").unwrap();
        let t4 = circle.algebra.basis().index_of("t^4").unwrap();
        assert_eq!(phi.map.column(c2sq), &vec![(t4, Scalar::Int(36))]);
    }

    #[test]
    fn doubling_map_on_degree_two_generators() {
        let z = CoefficientRing::Integers;
        let src = gca(z, 8, vec![GcaGenerator::new("u", 2)]);
        let tgt = gca(z, 8, vec![GcaGenerator::new("v", 2)]);
        let phi = evaluate_morphism(&[("u".into(), "2*v".into())], &src, &tgt).unwrap();
        phi.validate().unwrap();
        let u2 = src.algebra.basis().index_of("u^2").unwrap();
        let v2 = tgt.algebra.basis().index_of("v^2").unwrap();
        assert_eq!(phi.map.column(u2), &vec![(v2, Scalar::Int(4))]);
    }

    #[test]
    fn identity_images_give_identity() {
        let q = CoefficientRing::Rationals;
        let a = gca(q, 6, vec![GcaGenerator::new("x", 2)]);
        let phi = evaluate_morphism(&[("x".into(), "x".into())], &a, &a).unwrap();
        assert!(phi
            .map
            .equal_map(&q, &GradedMap::identity(a.algebra.basis().clone())));
    }

    #[test]
    fn wrong_degree_image_is_rejected() {
        let q = CoefficientRing::Rationals;
        let src = gca(q, 8, vec![GcaGenerator::new("c", 4)]);
        let tgt = gca(q, 8, vec![GcaGenerator::new("t", 2)]);
        assert!(matches!(
            evaluate_morphism(&[("c".into(), "t^3".into())], &src, &tgt),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn morphisms_agreeing_on_generators_agree() {
        let z = CoefficientRing::Integers;
        let src = gca(
            z,
            8,
            vec![GcaGenerator::new("a", 2), GcaGenerator::new("b", 3)],
        );
        let tgt = gca(
            z,
            8,
            vec![GcaGenerator::new("x", 2), GcaGenerator::new("y", 3)],
        );
        let images = [("a".into(), "3*x".into()), ("b".into(), "-y".into())];
        let f = evaluate_morphism(&images, &src, &tgt).unwrap();
        let g = evaluate_morphism(&images, &src, &tgt).unwrap();
        assert!(f.map.equal_map(&z, &g.map));
    }
}
