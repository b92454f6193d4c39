use std::sync::Arc;

use crate::dga::{DgAlgebra, MultRule};
use crate::graded::{ChainComplex, GradedBasis, GradedMap};
use crate::linalg::{CoefficientRing, Scalar, SparseVec};

/// The interval algebra I = 𝕜{v₀, v₁, e}: normalized cochains on the
/// simplicial interval. |v₀| = |v₁| = 0, |e| = 1, dv₁ = e = −dv₀,
/// η(1) = v₀ + v₁, and the multiplication table
///
/// ```text
///   ∪ | v₀  v₁  e
///  ----+------------
///   v₀ | v₀   0  e
///   v₁ |  0  v₁  0
///   e  |  0   e  0
/// ```
pub struct IntervalAlgebra {
    pub algebra: Arc<DgAlgebra>,
    pub v0: usize,
    pub v1: usize,
    pub e: usize,
}

pub fn interval(ring: CoefficientRing, cutoff: usize) -> IntervalAlgebra {
    assert!(cutoff >= 1);
    let basis = GradedBasis::new(
        cutoff,
        vec![("v0".into(), 0), ("v1".into(), 0), ("e".into(), 1)],
    );
    let v0 = basis.index_of("v0").unwrap();
    let v1 = basis.index_of("v1").unwrap();
    let e = basis.index_of("e").unwrap();
    let d = GradedMap::from_fn(basis.clone(), basis.clone(), 1, |i| {
        if i == v0 {
            vec![(e, Scalar::Int(-1))]
        } else if i == v1 {
            vec![(e, Scalar::ONE)]
        } else {
            Vec::new()
        }
    });
    let complex = ChainComplex::new(basis.clone(), d);
    let mult: MultRule = Arc::new(move |i: usize, j: usize| -> SparseVec {
        let out = match () {
            _ if i == v0 && j == v0 => Some(v0),
            _ if i == v1 && j == v1 => Some(v1),
            _ if i == v0 && j == e => Some(e),
            _ if i == e && j == v1 => Some(e),
            _ => None,
        };
        out.map(|k| vec![(k, Scalar::ONE)]).unwrap_or_default()
    });
    let algebra = Arc::new(DgAlgebra {
        ring,
        complex,
        mult,
        unit: vec![(v0, Scalar::ONE), (v1, Scalar::ONE)],
        aug_index: v0,
        label: "I".into(),
    });
    IntervalAlgebra { algebra, v0, v1, e }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::complex_homology;

    #[test]
    fn interval_is_a_dga_with_trivial_cohomology() {
        let ring = CoefficientRing::Integers;
        let i = interval(ring, 3);
        i.algebra.check_axioms().unwrap();
        let h = complex_homology(&i.algebra.complex, &ring, 1).unwrap();
        assert_eq!(h[0].free_rank, 1);
        assert!(h[0].torsion.is_empty());
        assert!(h[1].is_zero());
        // the degree-0 class is v₀ + v₁
        let gen = &h[0].generators[0];
        let sum = vec![(i.v0, Scalar::ONE), (i.v1, Scalar::ONE)];
        let space = crate::linalg::homology_at(
            &i.algebra.complex.d_into(0),
            &i.algebra.complex.d_block(0),
            &ring,
        )
        .unwrap();
        assert!(space.same_class(gen, &sum).unwrap());
    }

    #[test]
    fn multiplication_table_is_the_papers() {
        let ring = CoefficientRing::Rationals;
        let iv = interval(ring, 2);
        let a = &iv.algebra;
        let table = [
            (iv.v0, iv.v0, Some(iv.v0)),
            (iv.v0, iv.v1, None),
            (iv.v0, iv.e, Some(iv.e)),
            (iv.v1, iv.v0, None),
            (iv.v1, iv.v1, Some(iv.v1)),
            (iv.v1, iv.e, None),
            (iv.e, iv.v0, None),
            (iv.e, iv.v1, Some(iv.e)),
            (iv.e, iv.e, None),
        ];
        for (i, j, expect) in table {
            let got = a.mult_basis(i, j);
            match expect {
                Some(k) => assert_eq!(got, vec![(k, Scalar::ONE)]),
                None => assert!(got.is_empty()),
            }
        }
    }
}
