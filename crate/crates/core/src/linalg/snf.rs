use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::scalar::Scalar;
use super::sparse::{SparseMatrix, SparseVec};

/// Smith normal form of an integer matrix: `left · m · right` is diagonal with
/// a divisibility chain d₁ | d₂ | …, and both transforms are unimodular.
///
/// The inverses of the transforms are carried along so that kernels and exact
/// solves come out of the same reduction.
#[derive(Debug, Clone)]
pub struct SmithNormalForm {
    pub rank: usize,
    /// The nonzero invariant factors, positive, in divisibility order.
    pub divisors: Vec<BigInt>,
    pub left: SparseMatrix,
    pub left_inv: SparseMatrix,
    pub right: SparseMatrix,
    pub right_inv: SparseMatrix,
}

struct Workspace {
    rows: usize,
    cols: usize,
    a: Vec<Vec<BigInt>>,
    left: Vec<Vec<BigInt>>,
    left_inv: Vec<Vec<BigInt>>,
    right: Vec<Vec<BigInt>>,
    right_inv: Vec<Vec<BigInt>>,
}

fn dense_identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::from(1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// Rounded division: q with |a - q·b| ≤ |b|/2.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(b);
    if r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

impl Workspace {
    fn new(m: &SparseMatrix) -> Self {
        let mut a = vec![vec![BigInt::zero(); m.cols]; m.rows];
        for (c, col) in m.columns().iter().enumerate() {
            for (r, v) in col {
                a[*r][c] = v.to_bigint().expect("integer matrix expected");
            }
        }
        Workspace {
            rows: m.rows,
            cols: m.cols,
            a,
            left: dense_identity(m.rows),
            left_inv: dense_identity(m.rows),
            right: dense_identity(m.cols),
            right_inv: dense_identity(m.cols),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.left.swap(i, j);
        for row in self.left_inv.iter_mut() {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        for row in self.right.iter_mut() {
            row.swap(i, j);
        }
        self.right_inv.swap(i, j);
    }

    /// row_i -= q · row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let delta = q * &self.a[k][c];
            self.a[i][c] -= delta;
        }
        for c in 0..self.rows {
            let delta = q * &self.left[k][c];
            self.left[i][c] -= delta;
        }
        for r in 0..self.rows {
            let delta = q * &self.left_inv[r][i];
            self.left_inv[r][k] += delta;
        }
    }

    /// col_j -= q · col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let delta = q * &self.a[r][k];
            self.a[r][j] -= delta;
        }
        for r in 0..self.cols {
            let delta = q * &self.right[r][k];
            self.right[r][j] -= delta;
        }
        for c in 0..self.cols {
            let delta = q * &self.right_inv[j][c];
            self.right_inv[k][c] += delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let v = std::mem::take(&mut self.a[i][c]);
            self.a[i][c] = -v;
        }
        for c in 0..self.rows {
            let v = std::mem::take(&mut self.left[i][c]);
            self.left[i][c] = -v;
        }
        for r in 0..self.rows {
            let v = std::mem::take(&mut self.left_inv[r][i]);
            self.left_inv[r][i] = -v;
        }
    }

    /// Nonzero entry of minimal absolute value in the trailing submatrix,
    /// ties broken by lowest row then lowest column.
    fn select_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for r in k..self.rows {
            for c in k..self.cols {
                if self.a[r][c].is_zero() {
                    continue;
                }
                let mag = self.a[r][c].abs();
                match &best {
                    Some((m, _, _)) if *m <= mag => {}
                    _ => best = Some((mag, r, c)),
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    /// Diagonalize the trailing submatrix starting at `k`; returns the rank.
    fn diagonalize_from(&mut self, k0: usize) -> usize {
        let mut k = k0;
        while k < self.rows.min(self.cols) {
            let Some((pr, pc)) = self.select_pivot(k) else {
                break;
            };
            self.swap_rows(k, pr);
            self.swap_cols(k, pc);
            loop {
                let mut clean = true;
                for i in (k + 1)..self.rows {
                    if self.a[i][k].is_zero() {
                        continue;
                    }
                    let q = div_round(&self.a[i][k], &self.a[k][k]);
                    self.row_sub(i, k, &q);
                    if !self.a[i][k].is_zero() {
                        // remainder became the smaller pivot candidate
                        self.swap_rows(i, k);
                        clean = false;
                    }
                }
                for j in (k + 1)..self.cols {
                    if self.a[k][j].is_zero() {
                        continue;
                    }
                    let q = div_round(&self.a[k][j], &self.a[k][k]);
                    self.col_sub(j, k, &q);
                    if !self.a[k][j].is_zero() {
                        self.swap_cols(j, k);
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if self.a[k][k].is_negative() {
                self.negate_row(k);
            }
            k += 1;
        }
        k
    }
}

pub fn smith_normal_form(m: &SparseMatrix) -> SmithNormalForm {
    let mut w = Workspace::new(m);
    let mut rank = w.diagonalize_from(0);
    // enforce the divisibility chain
    loop {
        let mut fixed = true;
        for k in 0..rank.saturating_sub(1) {
            let (d0, d1) = (w.a[k][k].clone(), w.a[k + 1][k + 1].clone());
            if d1.is_multiple_of(&d0) {
                continue;
            }
            // fold column k+1 into column k and rediagonalize the tail
            let minus_one = BigInt::from(-1);
            w.col_sub(k, k + 1, &minus_one);
            rank = w.diagonalize_from(k);
            fixed = false;
            break;
        }
        if fixed {
            break;
        }
    }
    let divisors = (0..rank).map(|k| w.a[k][k].clone()).collect();
    let to_sparse = |d: &Vec<Vec<BigInt>>, rows: usize, cols: usize| {
        SparseMatrix::from_entries(
            rows,
            cols,
            d.iter().enumerate().flat_map(|(r, row)| {
                row.iter().enumerate().filter_map(move |(c, v)| {
                    if v.is_zero() {
                        None
                    } else {
                        Some((r, c, Scalar::from_bigint(v.clone())))
                    }
                })
            }),
        )
    };
    SmithNormalForm {
        rank,
        divisors,
        left: to_sparse(&w.left, m.rows, m.rows),
        left_inv: to_sparse(&w.left_inv, m.rows, m.rows),
        right: to_sparse(&w.right, m.cols, m.cols),
        right_inv: to_sparse(&w.right_inv, m.cols, m.cols),
    }
}

impl SmithNormalForm {
    /// Basis of the integer kernel lattice (a saturated sublattice).
    pub fn kernel_basis(&self, m: &SparseMatrix) -> Vec<SparseVec> {
        (self.rank..m.cols)
            .map(|j| self.right.column(j).clone())
            .collect()
    }

    /// Solve m·x = b exactly over ℤ.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        use super::scalar::CoefficientRing;
        let z = CoefficientRing::Integers;
        let lb = self.left.apply(&z, b);
        let mut y: SparseVec = Vec::new();
        for (r, v) in &lb {
            if *r >= self.rank {
                return None;
            }
            let num = v.to_bigint().unwrap();
            let (q, rem) = num.div_rem(&self.divisors[*r]);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                y.push((*r, Scalar::from_bigint(q)));
            }
        }
        Some(self.right.apply(&z, &y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::CoefficientRing;

    fn mat(rows: usize, cols: usize, data: &[&[i64]]) -> SparseMatrix {
        SparseMatrix::from_entries(
            rows,
            cols,
            data.iter().enumerate().flat_map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(c, v)| (r, c, Scalar::Int(*v)))
            }),
        )
    }

    fn check_decomposition(m: &SparseMatrix, snf: &SmithNormalForm) {
        let z = CoefficientRing::Integers;
        // left · m · right is the diagonal of divisors
        let d = snf.left.mul(&z, m).mul(&z, &snf.right);
        for r in 0..d.rows {
            for c in 0..d.cols {
                let expect = if r == c && r < snf.rank {
                    Scalar::from_bigint(snf.divisors[r].clone())
                } else {
                    Scalar::ZERO
                };
                assert_eq!(d.entry(r, c), expect, "at ({r},{c})");
            }
        }
        // transforms are inverse pairs, hence unimodular
        assert_eq!(
            snf.left.mul(&z, &snf.left_inv),
            SparseMatrix::identity(m.rows)
        );
        assert_eq!(
            snf.right.mul(&z, &snf.right_inv),
            SparseMatrix::identity(m.cols)
        );
        // divisibility chain
        for k in 1..snf.rank {
            assert!(snf.divisors[k].is_multiple_of(&snf.divisors[k - 1]));
        }
    }

    /// Independent oracle: dₖ = gcd of all k×k minors divided by gcd of (k−1)-minors.
    fn determinantal_divisors(m: &SparseMatrix) -> Vec<BigInt> {
        fn minor(m: &SparseMatrix, rows: &[usize], cols: &[usize]) -> BigInt {
            if rows.is_empty() {
                return BigInt::from(1);
            }
            let mut det = BigInt::zero();
            let mut sign = BigInt::from(1);
            for (i, &r) in rows.iter().enumerate() {
                let sub_rows: Vec<usize> = rows
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i)
                    .map(|(_, &v)| v)
                    .collect();
                let e = m.entry(r, cols[0]).to_bigint().unwrap();
                if !e.is_zero() {
                    det += &sign * e * minor(m, &sub_rows, &cols[1..]);
                }
                sign = -sign;
            }
            det
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in subsets(n, k - 1) {
                    if rest.iter().all(|&v| v > first) {
                        let mut s = vec![first];
                        s.append(&mut rest);
                        out.push(s);
                    }
                }
            }
            out
        }
        let maxk = m.rows.min(m.cols);
        let mut gcds = vec![BigInt::from(1)];
        for k in 1..=maxk {
            let mut g = BigInt::zero();
            for rows in subsets(m.rows, k) {
                for cols in subsets(m.cols, k) {
                    g = g.gcd(&minor(m, &rows, &cols));
                }
            }
            if g.is_zero() {
                break;
            }
            gcds.push(g);
        }
        (1..gcds.len()).map(|k| &gcds[k] / &gcds[k - 1]).collect()
    }

    #[test]
    fn identity_has_unit_divisors() {
        let m = SparseMatrix::identity(2);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.divisors, vec![BigInt::from(1), BigInt::from(1)]);
        check_decomposition(&m, &snf);
    }

    #[test]
    fn zero_matrix_has_no_divisors() {
        let m = SparseMatrix::zero(2, 3);
        let snf = smith_normal_form(&m);
        assert!(snf.divisors.is_empty());
        check_decomposition(&m, &snf);
    }

    #[test]
    fn two_by_two_example() {
        let m = mat(2, 2, &[&[2, 4], &[6, 8]]);
        let snf = smith_normal_form(&m);
        // oracle: gcd of 1×1 minors is 2; the determinant is 2·8−4·6 = −8, so d₂ = 8/2 = 4
        assert_eq!(
            determinantal_divisors(&m),
            vec![BigInt::from(2), BigInt::from(4)]
        );
        assert_eq!(snf.divisors, vec![BigInt::from(2), BigInt::from(4)]);
        check_decomposition(&m, &snf);
    }

    #[test]
    fn random_matrices_match_determinantal_oracle() {
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..25 {
            let rows = 1 + (next() % 4) as usize;
            let cols = 1 + (next() % 4) as usize;
            let m = SparseMatrix::from_entries(
                rows,
                cols,
                (0..rows).flat_map(|r| {
                    let v: Vec<(usize, usize, Scalar)> = (0..cols)
                        .map(|c| (r, c, Scalar::Int((next() % 11) as i64 - 5)))
                        .collect();
                    v
                }),
            );
            let snf = smith_normal_form(&m);
            check_decomposition(&m, &snf);
            assert_eq!(snf.divisors, determinantal_divisors(&m), "trial {trial}");
        }
    }

    #[test]
    fn kernel_and_solve() {
        let m = mat(1, 2, &[&[2, 4]]);
        let snf = smith_normal_form(&m);
        let kernel = snf.kernel_basis(&m);
        assert_eq!(kernel.len(), 1);
        let z = CoefficientRing::Integers;
        assert!(m.apply(&z, &kernel[0]).is_empty());
        // 2x + 4y = 6 solvable, = 3 not
        assert!(snf.solve(&vec![(0, Scalar::Int(6))]).is_some());
        assert!(snf.solve(&vec![(0, Scalar::Int(3))]).is_none());
        let x = snf.solve(&vec![(0, Scalar::Int(6))]).unwrap();
        assert_eq!(m.apply(&z, &x), vec![(0, Scalar::Int(6))]);
    }
}
