use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dga::{AlgebraMorphism, DgAlgebra, FreeGca};
use crate::error::{Error, Result};
use crate::graded::{ChainComplex, GradedBasis, GradedMap};
use crate::guard::CellBudget;
use crate::linalg::{Scalar, SparseVec, VecBuilder};

use super::bigraded::TorView;

/// The Koszul-complex route to Tor, available when the base is polynomial on
/// even generators: X ⊗ Λ(u_g) ⊗ Y with |u_g| = |g| − 1 and
/// d(u_g) = φ_X(g) ⊗ 1 − 1 ⊗ φ_Y(g).
///
/// This is the independent brute-force oracle the bar route is checked
/// against: same bigrading (exterior word length, internal degree), entirely
/// different differential.
pub struct KoszulComplex {
    pub x: Arc<DgAlgebra>,
    pub y: Arc<DgAlgebra>,
    pub base: Vec<(String, usize)>,
    pub view: TorView,
    /// (x index, sorted generator subset, y index) per basis element.
    pub cells: Vec<(usize, Vec<usize>, usize)>,
    pub cutoff: usize,
    cell_index: BTreeMap<(usize, Vec<usize>, usize), usize>,
}

pub fn koszul_complex(
    base: &FreeGca,
    x: &Arc<DgAlgebra>,
    y: &Arc<DgAlgebra>,
    phi_x: &AlgebraMorphism,
    phi_y: &AlgebraMorphism,
    cutoff: usize,
    budget: &CellBudget,
) -> Result<KoszulComplex> {
    for g in &base.presentation.generators {
        if g.degree % 2 != 0 {
            return Err(Error::OddGeneratorInBase {
                name: g.name.clone(),
                degree: g.degree,
            });
        }
    }
    if !x.complex.has_zero_differential() || !y.complex.has_zero_differential() {
        return Err(Error::NotAChainMap {
            witness: "Koszul oracle needs zero differentials on the modules".into(),
        });
    }
    let ring = x.ring;
    let gens = &base.presentation.generators;
    // images of the generators under the two structure maps
    let images: Vec<(SparseVec, SparseVec)> = (0..gens.len())
        .map(|gi| {
            let b = base.generator_basis_index(gi);
            (phi_x.map.column(b).clone(), phi_y.map.column(b).clone())
        })
        .collect();

    // subsets of generators with total suspended degree ≤ cutoff
    let mut subsets: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    for gi in 0..gens.len() {
        let w = gens[gi].degree - 1;
        let mut extension = Vec::new();
        for (s, sw) in &subsets {
            if s.last().map(|&l| l < gi).unwrap_or(true) && sw + w <= cutoff {
                let mut s2 = s.clone();
                s2.push(gi);
                extension.push((s2, sw + w));
            }
        }
        subsets.extend(extension);
    }
    let mut cells: Vec<((usize, Vec<usize>, usize), usize)> = Vec::new();
    for (s, sw) in &subsets {
        for (xi, ex) in x.basis().iter() {
            if ex.degree + sw > cutoff {
                continue;
            }
            for (yi, ey) in y.basis().iter() {
                let deg = ex.degree + sw + ey.degree;
                if deg <= cutoff {
                    cells.push(((xi, s.clone(), yi), deg));
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
    let cells: Vec<(usize, Vec<usize>, usize)> = cells.into_iter().map(|(c, _)| c).collect();
    let u_name = |s: &[usize]| -> String {
        if s.is_empty() {
            "1".to_string()
        } else {
            s.iter()
                .map(|&gi| format!("u_{}", gens[gi].name))
                .collect::<Vec<_>>()
                .join("∧")
        }
    };
    let raw: Vec<(String, usize)> = cells
        .iter()
        .map(|(xi, s, yi)| {
            let deg = x.basis().degree(*xi)
                + s.iter().map(|&gi| gens[gi].degree - 1).sum::<usize>()
                + y.basis().degree(*yi);
            (
                format!(
                    "{}⊗{}⊗{}",
                    x.basis().name(*xi),
                    u_name(s),
                    y.basis().name(*yi)
                ),
                deg,
            )
        })
        .collect();
    let basis = GradedBasis::new(cutoff, raw);
    let cell_index: BTreeMap<(usize, Vec<usize>, usize), usize> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let bidegrees: Vec<(usize, usize)> = cells
        .iter()
        .map(|(xi, s, yi)| {
            let q = x.basis().degree(*xi)
                + s.iter().map(|&gi| gens[gi].degree).sum::<usize>()
                + y.basis().degree(*yi);
            (s.len(), q)
        })
        .collect();

    // d(x ⊗ u_S ⊗ y) = Σ_m (−1)^{|x|+m−1} [(x·φ_X(g_m)) ⊗ S∖m ⊗ y
    //                                        − x ⊗ S∖m ⊗ (φ_Y(g_m)·y)]
    let cols: Vec<SparseVec> = cells
        .iter()
        .map(|(xi, s, yi)| {
            let ex = x.basis().degree(*xi);
            let mut acc = VecBuilder::new();
            for (m, &gi) in s.iter().enumerate() {
                let sign = ring.from_i64(if (ex + m) % 2 == 0 { 1 } else { -1 });
                let rest: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != m)
                    .map(|(_, &g)| g)
                    .collect();
                let left = x.mult_vec(&vec![(*xi, Scalar::ONE)], &images[gi].0);
                for (x2, c) in left {
                    if let Some(&k) = cell_index.get(&(x2, rest.clone(), *yi)) {
                        acc.add(&ring, k, ring.mul(&c, &sign));
                    }
                }
                let right = y.mult_vec(&images[gi].1, &vec![(*yi, Scalar::ONE)]);
                let neg = ring.neg(&sign);
                for (y2, c) in right {
                    if let Some(&k) = cell_index.get(&(*xi, rest.clone(), y2)) {
                        acc.add(&ring, k, ring.mul(&c, &neg));
                    }
                }
            }
            acc.build()
        })
        .collect();
    let d = GradedMap::from_columns(basis.clone(), basis.clone(), 1, cols);
    let complex = ChainComplex::new(basis, d);
    let view = TorView::new(ring, complex, bidegrees, true, cutoff.saturating_sub(1));
    Ok(KoszulComplex {
        x: x.clone(),
        y: y.clone(),
        base: gens.iter().map(|g| (g.name.clone(), g.degree)).collect(),
        view,
        cells,
        cutoff,
        cell_index,
    })
}

impl KoszulComplex {
    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.view.complex.basis
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.view.complex
    }

    pub fn unit_cell(&self) -> usize {
        self.cell_index[&(self.x.aug_index, Vec::new(), self.y.aug_index)]
    }

    /// The CDGA product on the Koszul complex (inputs commutative).
    pub fn mult(&self, i: usize, j: usize) -> SparseVec {
        let ring = self.x.ring;
        let (x1, s1, y1) = &self.cells[i];
        let (x2, s2, y2) = &self.cells[j];
        // exterior part: zero on overlap, sign by inversions
        let mut inv = 0usize;
        for &a in s1 {
            for &b in s2 {
                if a == b {
                    return Vec::new();
                }
                if a > b {
                    inv += 1;
                }
            }
        }
        let s1_deg: usize = s1.len(); // u's are odd
        let s2_deg: usize = s2.len();
        let y1_deg = self.y.basis().degree(*y1);
        let x2_deg = self.x.basis().degree(*x2);
        // move x₂ past u_{S₁} ⊗ y₁ and y₁ past u_{S₂}
        let mut exp = x2_deg * (s1_deg + y1_deg) + y1_deg * s2_deg + inv;
        exp %= 2;
        let sign = ring.from_i64(if exp == 0 { 1 } else { -1 });
        let mut s: Vec<usize> = s1.iter().chain(s2.iter()).copied().collect();
        s.sort_unstable();
        let xx = self.x.mult_basis(*x1, *x2);
        let yy = self.y.mult_basis(*y1, *y2);
        let mut acc = VecBuilder::new();
        for (xv, cx) in &xx {
            for (yv, cy) in &yy {
                if let Some(&k) = self.cell_index.get(&(*xv, s.clone(), *yv)) {
                    acc.add(&ring, k, ring.mul(&sign, &ring.mul(cx, cy)));
                }
            }
        }
        acc.build()
    }

    pub fn mult_vec(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let ring = self.x.ring;
        let mut acc = VecBuilder::new();
        for (i, ci) in u {
            for (j, cj) in v {
                acc.add_vec(&ring, &self.mult(*i, *j), &ring.mul(ci, cj));
            }
        }
        acc.build()
    }
}
