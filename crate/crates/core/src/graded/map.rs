use std::sync::Arc;

use crate::linalg::{vec_add_scaled, CoefficientRing, Scalar, SparseMatrix, SparseVec, VecBuilder};

use super::basis::GradedBasis;

/// A homogeneous map of graded modules, stored column-wise over the source
/// basis. Entries landing above the target cutoff are simply absent: the
/// truncation contract is that a map is the truncation of its untruncated
/// counterpart.
#[derive(Debug, Clone)]
pub struct GradedMap {
    pub source: Arc<GradedBasis>,
    pub target: Arc<GradedBasis>,
    pub degree: isize,
    cols: Vec<SparseVec>,
}

impl GradedMap {
    pub fn zero(source: Arc<GradedBasis>, target: Arc<GradedBasis>, degree: isize) -> Self {
        let cols = vec![Vec::new(); source.len()];
        GradedMap {
            source,
            target,
            degree,
            cols,
        }
    }

    pub fn identity(basis: Arc<GradedBasis>) -> Self {
        let cols = (0..basis.len()).map(|i| vec![(i, Scalar::ONE)]).collect();
        GradedMap {
            source: basis.clone(),
            target: basis,
            degree: 0,
            cols,
        }
    }

    /// Build from explicit columns; each column must be homogeneous of the
    /// stated degree.
    pub fn from_columns(
        source: Arc<GradedBasis>,
        target: Arc<GradedBasis>,
        degree: isize,
        cols: Vec<SparseVec>,
    ) -> Self {
        assert_eq!(cols.len(), source.len());
        for (i, col) in cols.iter().enumerate() {
            let expect = source.degree(i) as isize + degree;
            for (j, v) in col {
                assert!(!v.is_zero(), "stored zero in column {i}");
                assert_eq!(
                    target.degree(*j) as isize,
                    expect,
                    "inhomogeneous entry in column {i} ({})",
                    source.name(i),
                );
            }
        }
        GradedMap {
            source,
            target,
            degree,
            cols,
        }
    }

    pub fn from_fn(
        source: Arc<GradedBasis>,
        target: Arc<GradedBasis>,
        degree: isize,
        mut f: impl FnMut(usize) -> SparseVec,
    ) -> Self {
        let cols: Vec<SparseVec> = (0..source.len()).map(&mut f).collect();
        Self::from_columns(source, target, degree, cols)
    }

    pub fn column(&self, i: usize) -> &SparseVec {
        &self.cols[i]
    }

    pub fn apply(&self, ring: &CoefficientRing, v: &SparseVec) -> SparseVec {
        let mut acc = VecBuilder::new();
        for (i, c) in v {
            acc.add_vec(ring, &self.cols[*i], c);
        }
        acc.build()
    }

    /// self ∘ other. Composition carries no hidden sign: Koszul signs live in
    /// tensor products and in the hom-complex differential, never here.
    pub fn compose(&self, ring: &CoefficientRing, other: &GradedMap) -> GradedMap {
        assert!(
            GradedBasis::same(&other.target, &self.source),
            "composition mismatch"
        );
        let cols = other.cols.iter().map(|c| self.apply(ring, c)).collect();
        GradedMap {
            source: other.source.clone(),
            target: self.target.clone(),
            degree: self.degree + other.degree,
            cols,
        }
    }

    pub fn add(&self, ring: &CoefficientRing, other: &GradedMap) -> GradedMap {
        self.add_scaled(ring, other, &Scalar::ONE)
    }

    pub fn sub(&self, ring: &CoefficientRing, other: &GradedMap) -> GradedMap {
        self.add_scaled(ring, other, &Scalar::Int(-1))
    }

    pub fn add_scaled(&self, ring: &CoefficientRing, other: &GradedMap, c: &Scalar) -> GradedMap {
        assert!(GradedBasis::same(&self.source, &other.source));
        assert!(GradedBasis::same(&self.target, &other.target));
        assert_eq!(self.degree, other.degree, "degree mismatch in sum");
        let cols = self
            .cols
            .iter()
            .zip(&other.cols)
            .map(|(a, b)| vec_add_scaled(ring, a, b, c))
            .collect();
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            cols,
        }
    }

    pub fn scale(&self, ring: &CoefficientRing, c: &Scalar) -> GradedMap {
        let cols = self
            .cols
            .iter()
            .map(|v| crate::linalg::vec_scale(ring, v, c))
            .collect();
        GradedMap {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            cols,
        }
    }

    pub fn negate(&self, ring: &CoefficientRing) -> GradedMap {
        self.scale(ring, &Scalar::Int(-1))
    }

    pub fn is_zero_map(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Index of the first source basis element on which the maps differ.
    pub fn difference_witness(&self, ring: &CoefficientRing, other: &GradedMap) -> Option<usize> {
        let diff = self.sub(ring, other);
        diff.cols.iter().position(|c| !c.is_empty())
    }

    pub fn equal_map(&self, ring: &CoefficientRing, other: &GradedMap) -> bool {
        self.difference_witness(ring, other).is_none()
    }

    /// The matrix block sending source degree `q` to target degree
    /// `q + degree`, with rows/columns in basis order.
    pub fn block(&self, q: usize) -> SparseMatrix {
        let src = self.source.in_degree(q);
        let tq = q as isize + self.degree;
        let rows = if tq < 0 {
            0
        } else {
            self.target.dim_in_degree(tq as usize)
        };
        let mut m = SparseMatrix::zero(rows, src.len());
        for (c, &i) in src.iter().enumerate() {
            let col: SparseVec = self.cols[i]
                .iter()
                .map(|(j, v)| (self.target.offset(*j), v.clone()))
                .collect();
            m.set_column(c, col);
        }
        m
    }

    /// Reinterpret a degree-q block vector as a global vector.
    pub fn globalize(basis: &GradedBasis, q: usize, v: &SparseVec) -> SparseVec {
        v.iter()
            .map(|(off, c)| (basis.in_degree(q)[*off], c.clone()))
            .collect()
    }

    /// Restrict a global vector to its degree-q block coordinates.
    pub fn localize(basis: &GradedBasis, q: usize, v: &SparseVec) -> SparseVec {
        let mut out: SparseVec = v
            .iter()
            .filter(|(i, _)| basis.degree(*i) == q)
            .map(|(i, c)| (basis.offset(*i), c.clone()))
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_block() {
        let z = CoefficientRing::Integers;
        let b = GradedBasis::new(2, vec![("x".into(), 0), ("y".into(), 1), ("z".into(), 2)]);
        // d: x ↦ 2y, y ↦ 0, z ↦ 0
        let d = GradedMap::from_columns(
            b.clone(),
            b.clone(),
            1,
            vec![vec![(1, Scalar::Int(2))], vec![], vec![]],
        );
        assert!(d.compose(&z, &d).is_zero_map());
        let block0 = d.block(0);
        assert_eq!(block0.rows, 1);
        assert_eq!(block0.cols, 1);
        assert_eq!(block0.entry(0, 0), Scalar::Int(2));
    }
}
