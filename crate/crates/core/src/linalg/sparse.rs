use std::collections::BTreeMap;
use std::fmt;

use super::scalar::{CoefficientRing, Scalar};

/// A sparse column vector: (row index, nonzero coefficient), sorted by row,
/// with no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn vec_scale(ring: &CoefficientRing, v: &SparseVec, c: &Scalar) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter()
        .filter_map(|(i, x)| {
            let y = ring.mul(x, c);
            if y.is_zero() {
                None
            } else {
                Some((*i, y))
            }
        })
        .collect()
}

/// a + c·b, merging sorted supports.
pub fn vec_add_scaled(
    ring: &CoefficientRing,
    a: &SparseVec,
    b: &SparseVec,
    c: &Scalar,
) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ra, va)), Some((rb, vb))) if ra == rb => {
                let v = ring.add(va, &ring.mul(vb, c));
                if !v.is_zero() {
                    out.push((*ra, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ra, va)), Some((rb, _))) if ra < rb => {
                out.push((*ra, va.clone()));
                i += 1;
            }
            (Some(_), Some((rb, vb))) => {
                let v = ring.mul(vb, c);
                if !v.is_zero() {
                    out.push((*rb, v));
                }
                j += 1;
            }
            (Some((ra, va)), None) => {
                out.push((*ra, va.clone()));
                i += 1;
            }
            (None, Some((rb, vb))) => {
                let v = ring.mul(vb, c);
                if !v.is_zero() {
                    out.push((*rb, v));
                }
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn vec_add(ring: &CoefficientRing, a: &SparseVec, b: &SparseVec) -> SparseVec {
    vec_add_scaled(ring, a, b, &Scalar::ONE)
}

/// Accumulator for building sparse vectors out of unsorted contributions.
#[derive(Default)]
pub struct VecBuilder {
    entries: BTreeMap<usize, Scalar>,
}

impl VecBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, ring: &CoefficientRing, row: usize, value: Scalar) {
        if value.is_zero() {
            return;
        }
        match self.entries.remove(&row) {
            None => {
                self.entries.insert(row, value);
            }
            Some(old) => {
                let v = ring.add(&old, &value);
                if !v.is_zero() {
                    self.entries.insert(row, v);
                }
            }
        }
    }

    pub fn add_vec(&mut self, ring: &CoefficientRing, v: &SparseVec, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (row, x) in v {
            self.add(ring, *row, ring.mul(x, c));
        }
    }

    pub fn build(self) -> SparseVec {
        self.entries.into_iter().collect()
    }
}

/// A sparse matrix in column-major order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, Scalar::ONE)]).collect();
        SparseMatrix {
            rows: n,
            cols: n,
            columns,
        }
    }

    /// Build from (row, col, value) triples; duplicate positions are rejected.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut columns: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry out of bounds");
            if v.is_zero() {
                continue;
            }
            let prev = columns[c].insert(r, v);
            assert!(prev.is_none(), "duplicate entry at ({r}, {c})");
        }
        SparseMatrix {
            rows,
            cols,
            columns: columns
                .into_iter()
                .map(|m| m.into_iter().collect())
                .collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> Self {
        SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn set_column(&mut self, c: usize, v: SparseVec) {
        self.columns[c] = v;
    }

    pub fn entry(&self, r: usize, c: usize) -> Scalar {
        self.columns[c]
            .iter()
            .find(|(row, _)| *row == r)
            .map(|(_, v)| v.clone())
            .unwrap_or(Scalar::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    /// Matrix-vector product.
    pub fn apply(&self, ring: &CoefficientRing, v: &SparseVec) -> SparseVec {
        let mut acc = VecBuilder::new();
        for (col, c) in v {
            acc.add_vec(ring, &self.columns[*col], c);
        }
        acc.build()
    }

    /// self · other
    pub fn mul(&self, ring: &CoefficientRing, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let columns = other.columns.iter().map(|c| self.apply(ring, c)).collect();
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                cols[*r].push((c, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            columns: cols,
        }
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }
}

impl fmt::Display for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{:>6} ", self.entry(r, c).to_string())?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_and_mul() {
        let z = CoefficientRing::Integers;
        let m = SparseMatrix::from_entries(
            2,
            2,
            [
                (0, 0, Scalar::Int(2)),
                (0, 1, Scalar::Int(4)),
                (1, 0, Scalar::Int(6)),
                (1, 1, Scalar::Int(8)),
            ],
        );
        let v = vec![(0, Scalar::Int(1)), (1, Scalar::Int(-1))];
        assert_eq!(
            m.apply(&z, &v),
            vec![(0, Scalar::Int(-2)), (1, Scalar::Int(-2))]
        );
        let id = SparseMatrix::identity(2);
        assert_eq!(m.mul(&z, &id), m);
    }

    #[test]
    fn add_scaled_cancels() {
        let z = CoefficientRing::Integers;
        let a = vec![(0, Scalar::Int(1)), (2, Scalar::Int(3))];
        let b = vec![(0, Scalar::Int(1)), (1, Scalar::Int(5))];
        let out = vec_add_scaled(&z, &a, &b, &Scalar::Int(-1));
        assert_eq!(out, vec![(1, Scalar::Int(-5)), (2, Scalar::Int(3))]);
    }
}
