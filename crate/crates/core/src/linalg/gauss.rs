use std::collections::BTreeMap;

use super::scalar::{CoefficientRing, Scalar};
use super::sparse::{vec_add_scaled, SparseMatrix, SparseVec};

/// Incremental column reduction over a field, persistence style: each stored
/// pivot column has a distinct lowest... highest row index ("low"), and a fed
/// column is reduced against pivots sharing its low until it either dies
/// (kernel element) or becomes a new pivot.
///
/// Combination vectors over the fed columns are carried along so kernels and
/// membership solves fall out of the reduction.
pub struct ColumnReduction {
    ring: CoefficientRing,
    track_combos: bool,
    pivots: BTreeMap<usize, usize>,
    cols: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    kernel: Vec<SparseVec>,
    fed: usize,
}

fn low(v: &SparseVec) -> Option<usize> {
    v.last().map(|(r, _)| *r)
}

impl ColumnReduction {
    pub fn new(ring: CoefficientRing, track_combos: bool) -> Self {
        ColumnReduction {
            ring,
            track_combos,
            pivots: BTreeMap::new(),
            cols: Vec::new(),
            combos: Vec::new(),
            kernel: Vec::new(),
            fed: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn fed(&self) -> usize {
        self.fed
    }

    /// Kernel of the fed matrix, as combinations of the fed columns.
    pub fn kernel_combos(&self) -> &[SparseVec] {
        &self.kernel
    }

    fn eliminate(&self, mut col: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        while let Some(l) = low(&col) {
            let Some(&slot) = self.pivots.get(&l) else {
                break;
            };
            let pivot = &self.cols[slot];
            let coeff = self
                .ring
                .div_exact(&col.last().unwrap().1, &pivot.last().unwrap().1)
                .expect("field division");
            let neg = self.ring.neg(&coeff);
            col = vec_add_scaled(&self.ring, &col, pivot, &neg);
            if self.track_combos {
                combo = vec_add_scaled(&self.ring, &combo, &self.combos[slot], &neg);
            }
        }
        (col, combo)
    }

    /// Feed the next column of the matrix.
    pub fn feed(&mut self, col: SparseVec) {
        let index = self.fed;
        self.fed += 1;
        let combo = if self.track_combos {
            vec![(index, Scalar::ONE)]
        } else {
            Vec::new()
        };
        let (col, combo) = self.eliminate(col, combo);
        if col.is_empty() {
            if self.track_combos {
                self.kernel.push(combo);
            }
        } else {
            self.pivots.insert(low(&col).unwrap(), self.cols.len());
            self.cols.push(col);
            self.combos.push(combo);
        }
    }

    pub fn feed_matrix(&mut self, m: &SparseMatrix) {
        for c in m.columns() {
            self.feed(c.clone());
        }
    }

    /// Rows currently used as pivot lows.
    pub fn pivot_rows(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Express `b` in the span of the fed columns: returns coefficients over
    /// the fed column indices, or `None` when `b` is outside the span.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        assert!(self.track_combos, "solving needs combination tracking");
        let (residual, combo) = self.eliminate(b.clone(), Vec::new());
        if residual.is_empty() {
            let minus_one = Scalar::Int(-1);
            Some(
                combo
                    .iter()
                    .map(|(i, v)| (*i, self.ring.mul(v, &minus_one)))
                    .collect(),
            )
        } else {
            None
        }
    }

    /// Normal form of `b` modulo the column span: every entry sitting on a
    /// pivot low is cleared, top to bottom.
    pub fn normal_form(&self, b: &SparseVec) -> SparseVec {
        let mut col = b.clone();
        loop {
            // highest remaining row that is a pivot low
            let hit = col
                .iter()
                .rev()
                .find(|(r, _)| self.pivots.contains_key(r))
                .map(|(r, v)| (*r, v.clone()));
            let Some((row, value)) = hit else {
                return col;
            };
            let slot = self.pivots[&row];
            let pivot = &self.cols[slot];
            let coeff = self
                .ring
                .div_exact(&value, &pivot.last().unwrap().1)
                .expect("field division");
            col = vec_add_scaled(&self.ring, &col, pivot, &self.ring.neg(&coeff));
        }
    }
}

/// Rank of a sparse matrix over a field.
pub fn field_rank(ring: &CoefficientRing, m: &SparseMatrix) -> usize {
    assert!(ring.is_field());
    let mut red = ColumnReduction::new(*ring, false);
    red.feed_matrix(m);
    red.rank()
}

/// Kernel basis of a sparse matrix over a field, as vectors in the source.
pub fn field_kernel(ring: &CoefficientRing, m: &SparseMatrix) -> Vec<SparseVec> {
    assert!(ring.is_field());
    let mut red = ColumnReduction::new(*ring, true);
    red.feed_matrix(m);
    red.kernel_combos().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(ring: CoefficientRing, rows: usize, data: &[&[i64]]) -> SparseMatrix {
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        SparseMatrix::from_entries(
            rows,
            cols,
            data.iter().enumerate().flat_map(|(r, row)| {
                let ring = ring;
                row.iter()
                    .enumerate()
                    .map(move |(c, v)| (r, c, ring.from_i64(*v)))
                    .collect::<Vec<_>>()
            }),
        )
    }

    #[test]
    fn rank_over_f2() {
        let f2 = CoefficientRing::PrimeField(2);
        let m = mat(f2, 2, &[&[1, 1, 0], &[1, 1, 1]]);
        assert_eq!(field_rank(&f2, &m), 2);
        let kernel = field_kernel(&f2, &m);
        assert_eq!(kernel.len(), 1);
        assert!(m.apply(&f2, &kernel[0]).is_empty());
    }

    #[test]
    fn solve_membership_over_q() {
        let q = CoefficientRing::Rationals;
        let m = mat(q, 3, &[&[1, 0], &[2, 1], &[0, 3]]);
        let mut red = ColumnReduction::new(q, true);
        red.feed_matrix(&m);
        let b = vec![
            (0, Scalar::Int(2)),
            (1, Scalar::Int(5)),
            (2, Scalar::Int(3)),
        ];
        let sol = red.solve(&b).unwrap();
        assert_eq!(m.apply(&q, &sol), b);
        let outside = vec![(0, Scalar::Int(1))];
        assert!(red.solve(&outside).is_none());
    }

    #[test]
    fn normal_form_is_stable_under_span() {
        let f5 = CoefficientRing::PrimeField(5);
        let m = mat(f5, 3, &[&[1, 0], &[0, 1], &[1, 1]]);
        let mut red = ColumnReduction::new(f5, true);
        red.feed_matrix(&m);
        let b = vec![(0, Scalar::Int(2)), (1, Scalar::Int(3))];
        let shifted = vec_add_scaled(&f5, &b, m.column(0), &Scalar::Int(4));
        assert_eq!(red.normal_form(&b), red.normal_form(&shifted));
    }
}
