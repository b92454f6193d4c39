use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dga::{AlgebraMorphism, DgAlgebra};
use crate::error::{Error, Result};
use crate::graded::{ChainComplex, GradedBasis, GradedMap};
use crate::guard::CellBudget;
use crate::linalg::{Scalar, SparseVec, VecBuilder};

use super::bigraded::TorView;

/// One basis cell x ⊗ [a₁|…|a_p] ⊗ y of a two-sided bar construction.
pub type Cell = (usize, Vec<usize>, usize);

/// The two-sided bar construction B(X, A, Y) for a span X ← A → Y of
/// augmented DGAs: cells x ⊗ [a₁|…|a_p] ⊗ y graded by total degree
/// |x| + Σ(|aᵢ|−1) + |y| and bigraded by (word length p, internal degree q).
///
/// The differential is the sum of the internal differentials, the
/// bar-deletion terms, and the two end absorptions through φ_X and φ_Y. When
/// all three inputs have zero differential it strictly lowers p and preserves
/// q, so homology is genuinely bigraded.
pub struct TwoSidedBar {
    pub x: Arc<DgAlgebra>,
    pub a: Arc<DgAlgebra>,
    pub y: Arc<DgAlgebra>,
    pub phi_x: AlgebraMorphism,
    pub phi_y: AlgebraMorphism,
    pub view: TorView,
    pub cells: Vec<Cell>,
    pub cutoff: usize,
    pub dg_inputs: bool,
    cell_index: BTreeMap<Cell, usize>,
}

fn cell_name(x: &DgAlgebra, a: &DgAlgebra, y: &DgAlgebra, cell: &Cell) -> String {
    let word = if cell.1.is_empty() {
        "[]".to_string()
    } else {
        format!(
            "[{}]",
            cell.1
                .iter()
                .map(|&i| a.basis().name(i))
                .collect::<Vec<_>>()
                .join("|")
        )
    };
    format!(
        "{}⊗{}⊗{}",
        x.basis().name(cell.0),
        word,
        y.basis().name(cell.2)
    )
}

pub fn two_sided_bar(
    x: &Arc<DgAlgebra>,
    a: &Arc<DgAlgebra>,
    y: &Arc<DgAlgebra>,
    phi_x: &AlgebraMorphism,
    phi_y: &AlgebraMorphism,
    cutoff: usize,
    budget: &CellBudget,
) -> Result<TwoSidedBar> {
    a.check_one_connected()?;
    for m in [x, y] {
        if !m.is_connected() {
            return Err(Error::NotOneConnected {
                witness: format!("{} is not connected", m.label),
                degree: 0,
            });
        }
    }
    if a.cutoff() < cutoff + 1 {
        return Err(Error::CutoffTooSmall {
            cutoff: a.cutoff(),
            needed: format!(
                "two-sided bar at cutoff {cutoff} needs letters to degree {}",
                cutoff + 1
            ),
        });
    }
    phi_x.validate().map_err(|_| Error::NotAChainMap {
        witness: "left structure map".into(),
    })?;
    phi_y.validate().map_err(|_| Error::NotAChainMap {
        witness: "right structure map".into(),
    })?;
    let ring = a.ring;

    // enumerate words of reduced degree ≤ cutoff, then dress with x and y
    let letters: Vec<(usize, usize)> = a
        .reduced()
        .filter(|&i| a.basis().degree(i) >= 2 && a.basis().degree(i) - 1 <= cutoff)
        .map(|i| (i, a.basis().degree(i) - 1))
        .collect();
    let words = crate::barcobar::bar_words_for(&letters, cutoff, budget)?;
    let mut cells: Vec<(Cell, usize)> = Vec::new();
    for (w, wdeg) in &words {
        for (xi, ex) in x.basis().iter() {
            if ex.degree + wdeg > cutoff {
                continue;
            }
            for (yi, ey) in y.basis().iter() {
                let deg = ex.degree + wdeg + ey.degree;
                if deg <= cutoff {
                    cells.push(((xi, w.clone(), yi), deg));
                    budget.check(cells.len())?;
                }
            }
        }
    }
    cells.sort_by(|u, v| {
        (u.1, u.0 .1.len(), &u.0 .0, &u.0 .1, &u.0 .2).cmp(&(
            v.1,
            v.0 .1.len(),
            &v.0 .0,
            &v.0 .1,
            &v.0 .2,
        ))
    });
    let cells: Vec<Cell> = cells.into_iter().map(|(c, _)| c).collect();
    let raw: Vec<(String, usize)> = cells
        .iter()
        .map(|c| {
            let deg = x.basis().degree(c.0)
                + c.1.iter().map(|&i| a.basis().degree(i) - 1).sum::<usize>()
                + y.basis().degree(c.2);
            (cell_name(x, a, y, c), deg)
        })
        .collect();
    let basis = GradedBasis::new(cutoff, raw);
    let cell_index: BTreeMap<Cell, usize> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let bidegrees: Vec<(usize, usize)> = cells
        .iter()
        .map(|c| {
            let q = x.basis().degree(c.0)
                + c.1.iter().map(|&i| a.basis().degree(i)).sum::<usize>()
                + y.basis().degree(c.2);
            (c.1.len(), q)
        })
        .collect();

    let dg_inputs = !(x.complex.has_zero_differential()
        && a.complex.has_zero_differential()
        && y.complex.has_zero_differential());

    // differential
    let cols: Vec<SparseVec> = cells
        .iter()
        .map(|(xi, w, yi)| {
            let mut acc = VecBuilder::new();
            let dx_sign = Scalar::ONE;
            // dx ⊗ w ⊗ y
            for (x2, c) in x.d().column(*xi) {
                if let Some(&k) = cell_index.get(&(*x2, w.clone(), *yi)) {
                    acc.add(&ring, k, ring.mul(c, &dx_sign));
                }
            }
            let ex = x.basis().degree(*xi);
            let mut prefix = 0usize; // reduced degree of the prefix
            for i in 0..w.len() {
                let deg_i = a.basis().degree(w[i]);
                // internal: −(−1)^{|x|+nᵢ}
                let sign = if (ex + prefix) % 2 == 0 { -1 } else { 1 };
                for (a2, c) in a.d().column(w[i]) {
                    let mut next = w.clone();
                    next[i] = *a2;
                    if let Some(&k) = cell_index.get(&(*xi, next, *yi)) {
                        acc.add(&ring, k, ring.mul(c, &ring.from_i64(sign)));
                    }
                }
                // deletion: (−1)^{|x|+n_{i+1}}
                if i + 1 < w.len() && deg_i + a.basis().degree(w[i + 1]) <= a.cutoff() {
                    let sign = if (ex + prefix + deg_i - 1) % 2 == 0 {
                        1
                    } else {
                        -1
                    };
                    for (m, c) in a.mult_basis(w[i], w[i + 1]) {
                        let mut next: Vec<usize> = Vec::with_capacity(w.len() - 1);
                        next.extend_from_slice(&w[..i]);
                        next.push(m);
                        next.extend_from_slice(&w[i + 2..]);
                        if let Some(&k) = cell_index.get(&(*xi, next, *yi)) {
                            acc.add(&ring, k, ring.mul(&c, &ring.from_i64(sign)));
                        }
                    }
                }
                prefix += deg_i - 1;
            }
            if !w.is_empty() {
                // left absorption: (−1)^{|x|} (x·φ_X(a₁)) ⊗ [a₂…] ⊗ y
                let sign = ring.from_i64(if ex % 2 == 0 { 1 } else { -1 });
                let image = x.mult_vec(&vec![(*xi, Scalar::ONE)], phi_x.map.column(w[0]));
                let rest = w[1..].to_vec();
                for (x2, c) in image {
                    if let Some(&k) = cell_index.get(&(x2, rest.clone(), *yi)) {
                        acc.add(&ring, k, ring.mul(&c, &sign));
                    }
                }
                // right absorption: −(−1)^{|x|+n_p} x ⊗ [a₁…a_{p−1}] ⊗ (φ_Y(a_p)·y)
                let n_p = prefix - (a.basis().degree(w[w.len() - 1]) - 1);
                let sign = ring.from_i64(if (ex + n_p) % 2 == 0 { -1 } else { 1 });
                let image = y.mult_vec(phi_y.map.column(w[w.len() - 1]), &vec![(*yi, Scalar::ONE)]);
                let rest = w[..w.len() - 1].to_vec();
                for (y2, c) in image {
                    if let Some(&k) = cell_index.get(&(*xi, rest.clone(), y2)) {
                        acc.add(&ring, k, ring.mul(&c, &sign));
                    }
                }
            }
            // (−1)^{|x|+n_{p+1}} x ⊗ w ⊗ dy
            let sign = ring.from_i64(if (ex + prefix) % 2 == 0 { 1 } else { -1 });
            for (y2, c) in y.d().column(*yi) {
                if let Some(&k) = cell_index.get(&(*xi, w.clone(), *y2)) {
                    acc.add(&ring, k, ring.mul(c, &sign));
                }
            }
            acc.build()
        })
        .collect();
    let d = GradedMap::from_columns(basis.clone(), basis.clone(), 1, cols);
    let complex = ChainComplex::new(basis, d);
    let view = TorView::new(
        ring,
        complex,
        bidegrees,
        !dg_inputs,
        cutoff.saturating_sub(1),
    );
    Ok(TwoSidedBar {
        x: x.clone(),
        a: a.clone(),
        y: y.clone(),
        phi_x: phi_x.clone(),
        phi_y: phi_y.clone(),
        view,
        cells,
        cutoff,
        dg_inputs,
        cell_index,
    })
}

impl TwoSidedBar {
    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.view.complex.basis
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.view.complex
    }

    pub fn cell_index(&self, cell: &Cell) -> Option<usize> {
        self.cell_index.get(cell).copied()
    }

    pub fn unit_cell(&self) -> usize {
        self.cell_index[&(self.x.aug_index, Vec::new(), self.y.aug_index)]
    }

    /// Chain-level shuffle product for strictly commutative inputs:
    /// (x⊗w⊗y)(x′⊗w′⊗y′) = ±(xx′) ⊗ (w ⧢ w′) ⊗ (yy′).
    pub fn shuffle_mult(&self, i: usize, j: usize) -> SparseVec {
        let ring = self.a.ring;
        let (x1, w1, y1) = &self.cells[i];
        let (x2, w2, y2) = &self.cells[j];
        // Koszul: move x₂ past w₁ ⊗ y₁, and y₁ past w₂
        let w1deg: usize = w1.iter().map(|&l| self.a.basis().degree(l) - 1).sum();
        let w2deg: usize = w2.iter().map(|&l| self.a.basis().degree(l) - 1).sum();
        let mut exp = self.x.basis().degree(*x2) * (w1deg + self.y.basis().degree(*y1));
        exp += self.y.basis().degree(*y1) * w2deg;
        let base_sign = ring.from_i64(if exp % 2 == 0 { 1 } else { -1 });
        let xx = self.x.mult_basis(*x1, *x2);
        let yy = self.y.mult_basis(*y1, *y2);
        if xx.is_empty() || yy.is_empty() {
            return Vec::new();
        }
        let left: Vec<(usize, usize)> = w1
            .iter()
            .map(|&l| (l, self.a.basis().degree(l) - 1))
            .collect();
        let right: Vec<(usize, usize)> = w2
            .iter()
            .map(|&l| (l, self.a.basis().degree(l) - 1))
            .collect();
        let mut acc = VecBuilder::new();
        for (word, sign) in crate::barcobar::shuffle_letter_lists(&ring, &left, &right) {
            let c0 = ring.mul(&base_sign, &sign);
            for (xv, cx) in &xx {
                for (yv, cy) in &yy {
                    if let Some(&k) = self.cell_index.get(&(*xv, word.clone(), *yv)) {
                        acc.add(&ring, k, ring.mul(&c0, &ring.mul(cx, cy)));
                    }
                }
            }
        }
        acc.build()
    }

    pub fn mult_vec(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let ring = self.a.ring;
        let mut acc = VecBuilder::new();
        for (i, ci) in u {
            for (j, cj) in v {
                acc.add_vec(&ring, &self.shuffle_mult(*i, *j), &ring.mul(ci, cj));
            }
        }
        acc.build()
    }
}
