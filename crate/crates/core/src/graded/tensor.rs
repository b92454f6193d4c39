use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{CoefficientRing, Scalar, SparseVec, VecBuilder};

use super::basis::GradedBasis;
use super::complex::ChainComplex;
use super::map::GradedMap;

/// The tensor product of two graded bases: pairs (x, y) with |x| + |y| within
/// the shared cutoff, ordered compatibly with the global basis order.
#[derive(Debug)]
pub struct TensorBasis {
    pub basis: Arc<GradedBasis>,
    pub left: Arc<GradedBasis>,
    pub right: Arc<GradedBasis>,
    pairs: Vec<(usize, usize)>,
    pair_index: BTreeMap<(usize, usize), usize>,
}

impl TensorBasis {
    pub fn new(left: Arc<GradedBasis>, right: Arc<GradedBasis>) -> Result<Arc<Self>> {
        if left.cutoff != right.cutoff {
            return Err(Error::CutoffMismatch {
                left: left.cutoff,
                right: right.cutoff,
            });
        }
        let cutoff = left.cutoff;
        let mut raw = Vec::new();
        let mut pairs = Vec::new();
        for (i, ei) in left.iter() {
            for (j, ej) in right.iter() {
                if ei.degree + ej.degree <= cutoff {
                    raw.push((format!("{}⊗{}", ei.name, ej.name), ei.degree + ej.degree));
                    pairs.push((i, j));
                }
            }
        }
        let basis = GradedBasis::new(cutoff, raw);
        // GradedBasis sorts by (degree, insertion); recover the permutation
        // to keep `pairs` aligned with the sorted order.
        let mut order: Vec<usize> = (0..pairs.len()).collect();
        order.sort_by_key(|&k| {
            let (i, j) = pairs[k];
            (left.degree(i) + right.degree(j), k)
        });
        let pairs: Vec<(usize, usize)> = order.iter().map(|&k| pairs[k]).collect();
        let pair_index = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        Ok(Arc::new(TensorBasis {
            basis,
            left,
            right,
            pairs,
            pair_index,
        }))
    }

    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    /// Index of x⊗y, or `None` when the pair was truncated away.
    pub fn index_of(&self, i: usize, j: usize) -> Option<usize> {
        self.pair_index.get(&(i, j)).copied()
    }

    /// Tensor of two vectors with the Koszul-free pairing (the sign belongs
    /// to maps, not elements).
    pub fn tensor_vec(&self, ring: &CoefficientRing, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = VecBuilder::new();
        for (i, ci) in a {
            for (j, cj) in b {
                if let Some(k) = self.index_of(*i, *j) {
                    acc.add(ring, k, ring.mul(ci, cj));
                }
            }
        }
        acc.build()
    }
}

/// d ⊗ 1 + 1 ⊗ d with the Koszul sign (−1)^{|x|} on the second term.
pub fn tensor_complex(
    ring: &CoefficientRing,
    a: &ChainComplex,
    b: &ChainComplex,
) -> Result<(Arc<TensorBasis>, ChainComplex)> {
    let tb = TensorBasis::new(a.basis.clone(), b.basis.clone())?;
    let cols = (0..tb.basis.len())
        .map(|k| {
            let (i, j) = tb.pair(k);
            let mut acc = VecBuilder::new();
            for (i2, c) in a.d.column(i) {
                if let Some(t) = tb.index_of(*i2, j) {
                    acc.add(ring, t, c.clone());
                }
            }
            let sign = if a.basis.degree(i) % 2 == 1 {
                Scalar::Int(-1)
            } else {
                Scalar::ONE
            };
            for (j2, c) in b.d.column(j) {
                if let Some(t) = tb.index_of(i, *j2) {
                    acc.add(ring, t, ring.mul(c, &sign));
                }
            }
            acc.build()
        })
        .collect();
    let d = GradedMap::from_columns(tb.basis.clone(), tb.basis.clone(), 1, cols);
    let complex = ChainComplex::new(tb.basis.clone(), d);
    Ok((tb, complex))
}

/// (f ⊗ g)(x ⊗ y) = (−1)^{|g|·|x|} f(x) ⊗ g(y).
pub fn tensor_map(
    ring: &CoefficientRing,
    f: &GradedMap,
    g: &GradedMap,
    source: &TensorBasis,
    target: &TensorBasis,
) -> GradedMap {
    assert!(GradedBasis::same(&source.left, &f.source));
    assert!(GradedBasis::same(&source.right, &g.source));
    assert!(GradedBasis::same(&target.left, &f.target));
    assert!(GradedBasis::same(&target.right, &g.target));
    let cols = (0..source.basis.len())
        .map(|k| {
            let (i, j) = source.pair(k);
            let fx = f.column(i);
            let gy = g.column(j);
            let mut out = target.tensor_vec(ring, fx, gy);
            if (g.degree % 2 != 0) && (source.left.degree(i) % 2 == 1) {
                out = crate::linalg::vec_scale(ring, &out, &Scalar::Int(-1));
            }
            out
        })
        .collect();
    GradedMap::from_columns(
        source.basis.clone(),
        target.basis.clone(),
        f.degree + g.degree,
        cols,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex_with_d(
        cutoff: usize,
        elems: Vec<(&str, usize)>,
        d_cols: Vec<SparseVec>,
    ) -> ChainComplex {
        let basis = GradedBasis::new(
            cutoff,
            elems.into_iter().map(|(n, d)| (n.to_string(), d)).collect(),
        );
        let d = GradedMap::from_columns(basis.clone(), basis.clone(), 1, d_cols);
        ChainComplex::new(basis, d)
    }

    #[test]
    fn koszul_sign_on_tensor_differential() {
        // x of degree 1 with dx = 0; y of degree 1 with dy = z.
        let z_ring = CoefficientRing::Integers;
        let a = complex_with_d(3, vec![("x", 1)], vec![vec![]]);
        let b = complex_with_d(
            3,
            vec![("y", 1), ("z", 2)],
            vec![vec![(1, Scalar::ONE)], vec![]],
        );
        let (tb, t) = tensor_complex(&z_ring, &a, &b).unwrap();
        // d(x⊗y) = dx⊗y − x⊗dy = −x⊗z
        let xy = tb.index_of(0, 0).unwrap();
        let xz = tb.index_of(0, 1).unwrap();
        assert_eq!(t.d.column(xy), &vec![(xz, Scalar::Int(-1))]);
        t.check_d_squared(&z_ring).unwrap();
    }

    #[test]
    fn koszul_sign_on_tensor_of_maps() {
        // |g| = 1, |x| = 1 → sign −1 on (f⊗g)(x⊗y)
        let ring = CoefficientRing::Integers;
        let src = GradedBasis::new(4, vec![("x".into(), 1), ("y".into(), 1)]);
        let tgt = GradedBasis::new(4, vec![("fx".into(), 1), ("gy".into(), 2)]);
        let f = GradedMap::from_columns(
            src.clone(),
            tgt.clone(),
            0,
            vec![vec![(0, Scalar::ONE)], vec![]],
        );
        let g = GradedMap::from_columns(
            src.clone(),
            tgt.clone(),
            1,
            vec![vec![], vec![(1, Scalar::ONE)]],
        );
        let s = TensorBasis::new(src.clone(), src.clone()).unwrap();
        let t = TensorBasis::new(tgt.clone(), tgt.clone()).unwrap();
        let fg = tensor_map(&ring, &f, &g, &s, &t);
        let xy = s.index_of(0, 1).unwrap();
        let fx_gy = t.index_of(0, 1).unwrap();
        assert_eq!(fg.column(xy), &vec![(fx_gy, Scalar::Int(-1))]);
    }

    #[test]
    fn tensor_with_unit_relabels() {
        let ring = CoefficientRing::Rationals;
        let unit = ChainComplex::with_zero_differential(GradedBasis::unit(3));
        let c = complex_with_d(3, vec![("a", 1), ("b", 2)], vec![vec![], vec![]]);
        let (tb, t) = tensor_complex(&ring, &unit, &c).unwrap();
        // k ⊗ C ≅ C: same dimensions, relabeled 1⊗a, 1⊗b
        assert_eq!(t.basis.len(), c.basis.len());
        assert_eq!(tb.basis.dims(), c.basis.dims());
        assert_eq!(t.basis.name(0), "1⊗a");
    }
}
