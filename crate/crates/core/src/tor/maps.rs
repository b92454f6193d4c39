use std::sync::Arc;

use crate::dga::{
    check_homotopy, AlgebraMorphism, CoalgebraMorphism, DgAlgebra, DgCoalgebra, DgaHomotopy,
};
use crate::error::{Error, Result};
use crate::graded::{GradedMap, TensorBasis};
use crate::guard::CellBudget;
use crate::homotopy::{path_object, right_homotopy};
use crate::linalg::{Scalar, SparseVec, VecBuilder};

use super::bigraded::TorWorkspace;
use super::two_sided::{two_sided_bar, TwoSidedBar};

/// Tensor product of algebra morphisms, (f ⊗ g)(x ⊗ y) = f(x) ⊗ g(y).
pub fn algebra_morphism_tensor(
    f: &AlgebraMorphism,
    g: &AlgebraMorphism,
    source_pairs: &TensorBasis,
    source: &Arc<DgAlgebra>,
    target_pairs: &TensorBasis,
    target: &Arc<DgAlgebra>,
) -> AlgebraMorphism {
    let ring = f.source.ring;
    let map = crate::graded::tensor_map(&ring, &f.map, &g.map, source_pairs, target_pairs);
    AlgebraMorphism::new(source.clone(), target.clone(), map)
}

/// Tensor product of coalgebra morphisms.
pub fn coalgebra_morphism_tensor(
    f: &CoalgebraMorphism,
    g: &CoalgebraMorphism,
    source_pairs: &TensorBasis,
    source: &Arc<DgCoalgebra>,
    target_pairs: &TensorBasis,
    target: &Arc<DgCoalgebra>,
) -> CoalgebraMorphism {
    let ring = f.source.ring;
    let map = crate::graded::tensor_map(&ring, &f.map, &g.map, source_pairs, target_pairs);
    CoalgebraMorphism::new(source.clone(), target.clone(), map)
}

/// The chain map B(X′, A′, Y′) → B(X, A, Y) induced by a strictly commuting
/// triple (f, u, v): u(x) ⊗ [f a₁ | … ] ⊗ v(y).
pub fn tor_map(
    f: &AlgebraMorphism,
    u: &AlgebraMorphism,
    v: &AlgebraMorphism,
    source: &TwoSidedBar,
    target: &TwoSidedBar,
) -> Result<GradedMap> {
    let ring = f.source.ring;
    // the two squares must commute strictly
    let left = u.map.compose(&ring, &source.phi_x.map);
    let right = target.phi_x.map.compose(&ring, &f.map);
    if let Some(i) = left.difference_witness(&ring, &right) {
        return Err(Error::SquaresDoNotCommute {
            witness: source.a.basis().name(i).to_string(),
        });
    }
    let left = v.map.compose(&ring, &source.phi_y.map);
    let right = target.phi_y.map.compose(&ring, &f.map);
    if let Some(i) = left.difference_witness(&ring, &right) {
        return Err(Error::SquaresDoNotCommute {
            witness: source.a.basis().name(i).to_string(),
        });
    }
    let cols: Vec<SparseVec> = source
        .cells
        .iter()
        .map(|(xi, w, yi)| {
            let ux = u.map.column(*xi);
            let vy = v.map.column(*yi);
            if ux.is_empty() || vy.is_empty() {
                return Vec::new();
            }
            // expand the letters through f
            let mut words: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::ONE)];
            for &letter in w {
                let image = f.map.column(letter);
                let mut next = Vec::new();
                for (word, c) in &words {
                    for (l2, c2) in image {
                        let mut w2 = word.clone();
                        w2.push(*l2);
                        next.push((w2, ring.mul(c, c2)));
                    }
                }
                words = next;
                if words.is_empty() {
                    return Vec::new();
                }
            }
            let mut acc = VecBuilder::new();
            for (word, cw) in &words {
                for (x2, cx) in ux {
                    for (y2, cy) in vy {
                        if let Some(k) = target.cell_index(&(*x2, word.clone(), *y2)) {
                            acc.add(&ring, k, ring.mul(cw, &ring.mul(cx, cy)));
                        }
                    }
                }
            }
            acc.build()
        })
        .collect();
    Ok(GradedMap::from_columns(
        source.basis().clone(),
        target.basis().clone(),
        0,
        cols,
    ))
}

/// Solve M·s = rhs in a finitely generated module presented by generator
/// orders (None = free, Some(d) = ℤ/d); columns of M are coordinate vectors.
pub fn solve_in_group(
    ring: &crate::linalg::CoefficientRing,
    orders: &[Option<num_bigint::BigInt>],
    cols: &[Vec<Scalar>],
    rhs: &[Scalar],
) -> Option<Vec<Scalar>> {
    let rows = orders.len();
    let to_sparse = |v: &[Scalar]| -> SparseVec {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    };
    if ring.is_field() {
        let mut red = crate::linalg::ColumnReduction::new(*ring, true);
        for c in cols {
            red.feed(to_sparse(c));
        }
        let sol = red.solve(&to_sparse(rhs))?;
        let mut out = vec![Scalar::ZERO; cols.len()];
        for (i, c) in sol {
            out[i] = c;
        }
        Some(out)
    } else {
        // adjoin the torsion relations as extra columns
        let mut all: Vec<SparseVec> = cols.iter().map(|c| to_sparse(c)).collect();
        for (i, d) in orders.iter().enumerate() {
            if let Some(d) = d {
                all.push(vec![(i, Scalar::from_bigint(d.clone()))]);
            }
        }
        let m = crate::linalg::SparseMatrix::from_columns(rows, all);
        let snf = crate::linalg::smith_normal_form(&m);
        let sol = snf.solve(&to_sparse(rhs))?;
        let mut out = vec![Scalar::ZERO; cols.len()];
        for (i, c) in sol {
            if i < cols.len() {
                out[i] = c;
            }
        }
        Some(out)
    }
}

/// A map of Tor groups recorded degreewise on total-degree homology
/// coordinates.
pub struct TorClassMap {
    pub max_degree: usize,
    /// Per degree: one coordinate column per source generator.
    pub columns: Vec<Vec<Vec<Scalar>>>,
}

impl TorClassMap {
    pub fn apply(
        &self,
        ring: &crate::linalg::CoefficientRing,
        degree: usize,
        coords: &[Scalar],
    ) -> Vec<Scalar> {
        let cols = &self.columns[degree];
        let rows = cols.first().map(|c| c.len()).unwrap_or(0);
        let mut out = vec![Scalar::ZERO; rows];
        for (j, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, v) in cols[j].iter().enumerate() {
                out[i] = ring.add(&out[i], &ring.mul(v, c));
            }
        }
        out
    }
}

/// The total-degree homology map induced by a chain map between Tor views.
pub fn induced_total_map(
    map: &GradedMap,
    source_ws: &mut TorWorkspace<'_>,
    target_ws: &mut TorWorkspace<'_>,
    max_degree: usize,
) -> Result<TorClassMap> {
    let ring = source_ws.view.ring;
    let mut columns = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let gens = source_ws.total_generators(n)?;
        let mut cols = Vec::with_capacity(gens.len());
        for rep in gens {
            let image = map.apply(&ring, &rep);
            cols.push(target_ws.total_coordinates(n, &image)?);
        }
        columns.push(cols);
    }
    Ok(TorClassMap {
        max_degree,
        columns,
    })
}

/// The homotopy-coherent map on Tor of Lemma-style data: a triple (f, u, v)
/// whose squares commute only up to DGA homotopies h_X, h_Y, realized by the
/// zigzag through B(P X, A′, P Y):
///
///   Tor(f, u, v; h_X, h_Y) = (π₁)_* ∘ (π₀)_*⁻¹ ∘ (u, v)_*.
pub struct HomotopyTriple<'a> {
    pub f: &'a AlgebraMorphism,
    pub u: &'a AlgebraMorphism,
    pub v: &'a AlgebraMorphism,
    pub h_x: &'a DgaHomotopy,
    pub h_y: &'a DgaHomotopy,
}

pub fn tor_map_with_homotopy(
    input: &HomotopyTriple<'_>,
    source: &TwoSidedBar,
    target: &TwoSidedBar,
    budget: &CellBudget,
) -> Result<TorClassMap> {
    let ring = input.f.source.ring;
    let max_degree = source.view.max_degree.min(target.view.max_degree);
    // endpoint shapes: h_X: u ∘ φ_{X′} ≃ φ_X ∘ f
    let want0 = input.u.map.compose(&ring, &source.phi_x.map);
    let want1 = target.phi_x.map.compose(&ring, &input.f.map);
    if !input.h_x.f0.map.equal_map(&ring, &want0) || !input.h_x.f1.map.equal_map(&ring, &want1) {
        return Err(Error::InvalidHomotopy {
            reason: "h_X endpoints do not match u∘φ and φ∘f".into(),
        });
    }
    let want0 = input.v.map.compose(&ring, &source.phi_y.map);
    let want1 = target.phi_y.map.compose(&ring, &input.f.map);
    if !input.h_y.f0.map.equal_map(&ring, &want0) || !input.h_y.f1.map.equal_map(&ring, &want1) {
        return Err(Error::InvalidHomotopy {
            reason: "h_Y endpoints do not match v∘φ and φ∘f".into(),
        });
    }
    if !check_homotopy(input.h_x).is_valid() || !check_homotopy(input.h_y).is_valid() {
        return Err(Error::InvalidHomotopy {
            reason: "supplied square homotopies fail the homotopy axioms".into(),
        });
    }

    // middle role players
    let px = path_object(&target.x);
    let py = path_object(&target.y);
    let hx_p = right_homotopy(input.h_x, &px)?;
    let hy_p = right_homotopy(input.h_y, &py)?;
    // B(X, A′, Y) with modules through u∘φ_{X′} and v∘φ_{Y′}
    let phi_mid_x = input.u.compose(&source.phi_x);
    let phi_mid_y = input.v.compose(&source.phi_y);
    let middle = two_sided_bar(
        &target.x,
        &source.a,
        &target.y,
        &phi_mid_x,
        &phi_mid_y,
        source.cutoff,
        budget,
    )?;
    // B(P X, A′, P Y) with modules through the right homotopies
    let middle_p = two_sided_bar(
        &px.algebra,
        &source.a,
        &py.algebra,
        &hx_p,
        &hy_p,
        source.cutoff,
        budget,
    )?;
    let id_a = AlgebraMorphism::identity(&source.a);
    let m1 = tor_map(&id_a, input.u, input.v, source, &middle)?;
    let m_pi0 = tor_map(
        &id_a,
        &px.projection(0),
        &py.projection(0),
        &middle_p,
        &middle,
    )?;
    let m_pi1 = tor_map(
        input.f,
        &px.projection(1),
        &py.projection(1),
        &middle_p,
        target,
    )?;

    let mut source_ws = TorWorkspace::new(&source.view);
    let mut middle_ws = TorWorkspace::new(&middle.view);
    let mut middle_p_ws = TorWorkspace::new(&middle_p.view);
    let mut target_ws = TorWorkspace::new(&target.view);

    let mut columns = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        // matrices of (π₀)_* and (π₁)_* on total-degree homology
        let p_gens = middle_p_ws.total_generators(n)?;
        let mut m0_cols = Vec::with_capacity(p_gens.len());
        let mut m3_cols = Vec::with_capacity(p_gens.len());
        for rep in &p_gens {
            m0_cols.push(middle_ws.total_coordinates(n, &m_pi0.apply(&ring, rep))?);
            m3_cols.push(target_ws.total_coordinates(n, &m_pi1.apply(&ring, rep))?);
        }
        let orders = middle_ws.total_orders(n)?;
        let src_gens = source_ws.total_generators(n)?;
        let mut cols = Vec::with_capacity(src_gens.len());
        for rep in src_gens {
            let c1 = middle_ws.total_coordinates(n, &m1.apply(&ring, &rep))?;
            let s =
                solve_in_group(&ring, &orders, &m0_cols, &c1).ok_or(Error::InvalidHomotopy {
                    reason: format!("(π₀)-induced map is not surjective in degree {n}"),
                })?;
            // apply m3 columns
            let t_orders = target_ws.total_orders(n)?;
            let mut out = vec![Scalar::ZERO; t_orders.len()];
            for (j, c) in s.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (i, v) in m3_cols[j].iter().enumerate() {
                    out[i] = ring.add(&out[i], &ring.mul(v, c));
                }
            }
            // reduce torsion coordinates
            for (i, o) in t_orders.iter().enumerate() {
                if let Some(d) = o {
                    let n = out[i].to_bigint().expect("integral coordinate");
                    out[i] = Scalar::from_bigint(n.modpow(&num_bigint::BigInt::from(1), d));
                }
            }
            cols.push(out);
        }
        columns.push(cols);
    }
    Ok(TorClassMap {
        max_degree,
        columns,
    })
}

/// The ∇-interleaving realization of the exterior product on representatives:
/// B(X₁,A₁,Y₁) ⊗ B(X₂,A₂,Y₂) → B(X₁⊗X₂, A₁⊗A₂, Y₁⊗Y₂).
pub struct ExteriorContext<'a> {
    pub left: &'a TwoSidedBar,
    pub right: &'a TwoSidedBar,
    pub target: &'a TwoSidedBar,
    pub x_pairs: &'a TensorBasis,
    pub a_pairs: &'a TensorBasis,
    pub y_pairs: &'a TensorBasis,
}

impl<'a> ExteriorContext<'a> {
    /// Image of cell_i ⊗ cell_j.
    pub fn cell_product(&self, i: usize, j: usize) -> SparseVec {
        let ring = self.left.a.ring;
        let (x1, w1, y1) = &self.left.cells[i];
        let (x2, w2, y2) = &self.right.cells[j];
        let u1 = self.left.a.aug_index;
        let u2 = self.right.a.aug_index;
        let w1deg: usize = w1.iter().map(|&l| self.left.a.basis().degree(l) - 1).sum();
        let w2deg: usize = w2.iter().map(|&l| self.right.a.basis().degree(l) - 1).sum();
        let mut exp = self.right.x.basis().degree(*x2) * (w1deg + self.left.y.basis().degree(*y1));
        exp += self.left.y.basis().degree(*y1) * w2deg;
        let sign = ring.from_i64(if exp % 2 == 0 { 1 } else { -1 });
        let Some(xx) = self.x_pairs.index_of(*x1, *x2) else {
            return Vec::new();
        };
        let Some(yy) = self.y_pairs.index_of(*y1, *y2) else {
            return Vec::new();
        };
        let left: Vec<(usize, usize)> = w1
            .iter()
            .map(|&l| {
                (
                    self.a_pairs.index_of(l, u2).expect("a⊗1 tracked"),
                    self.left.a.basis().degree(l) - 1,
                )
            })
            .collect();
        let right: Vec<(usize, usize)> = w2
            .iter()
            .map(|&l| {
                (
                    self.a_pairs.index_of(u1, l).expect("1⊗b tracked"),
                    self.right.a.basis().degree(l) - 1,
                )
            })
            .collect();
        let mut acc = VecBuilder::new();
        for (word, s) in crate::barcobar::shuffle_letter_lists(&ring, &left, &right) {
            if let Some(k) = self.target.cell_index(&(xx, word, yy)) {
                acc.add(&ring, k, ring.mul(&sign, &s));
            }
        }
        acc.build()
    }

    pub fn vec_product(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let ring = self.left.a.ring;
        let mut acc = VecBuilder::new();
        for (i, ci) in u {
            for (j, cj) in v {
                acc.add_vec(&ring, &self.cell_product(*i, *j), &ring.mul(ci, cj));
            }
        }
        acc.build()
    }
}
