//! A desk-scale instantiation of the full product on Tor, with strict
//! commutative inputs so every mediating homotopy is constant: the exterior
//! product, the inverted γ comparison, the Ω∇ leg, and the Φ = Bμ leg through
//! the path-object zigzag. The outcome is compared against the classical
//! shuffle product after pushing through the counit comparison.

use crate::barcobar::{
    adjunction_counit, bar, bar_of_morphism, cobar, cobar_of_morphism, multiplication_morphism,
    shuffle_gamma, shuffle_nabla,
};
use crate::dga::{algebra_tensor, coalgebra_tensor, DgaHomotopy};
use crate::error::{Error, Result};
use crate::guard::CellBudget;
use crate::linalg::Scalar;

use super::bigraded::TorWorkspace;
use super::maps::{
    algebra_morphism_tensor, coalgebra_morphism_tensor, induced_total_map, solve_in_group, tor_map,
    tor_map_with_homotopy, ExteriorContext, HomotopyTriple,
};
use super::product::TorRing;
use super::span::Span;
use super::two_sided::two_sided_bar;

/// Result of the pipeline smoke test: every tracked product pair computed
/// through the full pipeline, compared classically.
pub struct PipelineOutcome {
    pub pairs_checked: usize,
    pub mismatches: Vec<String>,
}

impl PipelineOutcome {
    pub fn agree(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn pipeline_product_smoke(
    span: &Span,
    cutoff: usize,
    budget: &CellBudget,
) -> Result<PipelineOutcome> {
    let ring = span.ring;
    let c = cutoff;
    let a = &span.base.algebra;
    let x = &span.left.algebra;
    let y = &span.right.algebra;
    if a.cutoff() < c + 2 {
        return Err(Error::CutoffTooSmall {
            cutoff: a.cutoff(),
            needed: format!("pipeline at cutoff {c} needs algebras to degree {}", c + 2),
        });
    }
    span.base.algebra.check_commutative()?;

    // single factors
    let ba = bar(a, c + 1, budget)?;
    let bx = bar(x, c + 1, budget)?;
    let by = bar(y, c + 1, budget)?;
    let om_a = cobar(&ba.coalgebra, c + 2, budget)?;
    let om_x = cobar(&bx.coalgebra, c + 2, budget)?;
    let om_y = cobar(&by.coalgebra, c + 2, budget)?;
    let b_phix = bar_of_morphism(&span.phi_x, &ba, &bx);
    let b_phiy = bar_of_morphism(&span.phi_y, &ba, &by);
    let om_phix = cobar_of_morphism(&b_phix, &om_a, &om_x);
    let om_phiy = cobar_of_morphism(&b_phiy, &om_a, &om_y);
    let t_main = two_sided_bar(
        &om_x.algebra,
        &om_a.algebra,
        &om_y.algebra,
        &om_phix,
        &om_phiy,
        c + 1,
        budget,
    )?;

    // tensor squares of the algebras
    let (a2_pairs, a2) = algebra_tensor(a, a)?;
    let (x2_pairs, x2) = algebra_tensor(x, x)?;
    let (y2_pairs, y2) = algebra_tensor(y, y)?;
    let ba2 = bar(&a2, c + 1, budget)?;
    let bx2 = bar(&x2, c + 1, budget)?;
    let by2 = bar(&y2, c + 1, budget)?;
    let om_a2 = cobar(&ba2.coalgebra, c + 2, budget)?;
    let om_x2 = cobar(&bx2.coalgebra, c + 2, budget)?;
    let om_y2 = cobar(&by2.coalgebra, c + 2, budget)?;
    let phix2 = algebra_morphism_tensor(&span.phi_x, &span.phi_x, &a2_pairs, &a2, &x2_pairs, &x2);
    let phiy2 = algebra_morphism_tensor(&span.phi_y, &span.phi_y, &a2_pairs, &a2, &y2_pairs, &y2);
    let b_phix2 = bar_of_morphism(&phix2, &ba2, &bx2);
    let b_phiy2 = bar_of_morphism(&phiy2, &ba2, &by2);
    let om_bphix2 = cobar_of_morphism(&b_phix2, &om_a2, &om_x2);
    let om_bphiy2 = cobar_of_morphism(&b_phiy2, &om_a2, &om_y2);
    let t_sq = two_sided_bar(
        &om_x2.algebra,
        &om_a2.algebra,
        &om_y2.algebra,
        &om_bphix2,
        &om_bphiy2,
        c + 1,
        budget,
    )?;

    // tensor squares of the cobars: Ω B Z ⊗ Ω B Z
    let (ot_a_pairs, ot_a) = algebra_tensor(&om_a.algebra, &om_a.algebra)?;
    let (ot_x_pairs, ot_x) = algebra_tensor(&om_x.algebra, &om_x.algebra)?;
    let (ot_y_pairs, ot_y) = algebra_tensor(&om_y.algebra, &om_y.algebra)?;
    let ot_phix =
        algebra_morphism_tensor(&om_phix, &om_phix, &ot_a_pairs, &ot_a, &ot_x_pairs, &ot_x);
    let ot_phiy =
        algebra_morphism_tensor(&om_phiy, &om_phiy, &ot_a_pairs, &ot_a, &ot_y_pairs, &ot_y);
    let t_tensor2 = two_sided_bar(&ot_x, &ot_a, &ot_y, &ot_phix, &ot_phiy, c + 1, budget)?;

    // Ω(B Z ⊗ B Z)
    let (bb_a_pairs, bb_a) = coalgebra_tensor(&ba.coalgebra, &ba.coalgebra)?;
    let (bb_x_pairs, bb_x) = coalgebra_tensor(&bx.coalgebra, &bx.coalgebra)?;
    let (bb_y_pairs, bb_y) = coalgebra_tensor(&by.coalgebra, &by.coalgebra)?;
    let om_bb_a = cobar(&bb_a, c + 2, budget)?;
    let om_bb_x = cobar(&bb_x, c + 2, budget)?;
    let om_bb_y = cobar(&bb_y, c + 2, budget)?;
    let bb_phix =
        coalgebra_morphism_tensor(&b_phix, &b_phix, &bb_a_pairs, &bb_a, &bb_x_pairs, &bb_x);
    let bb_phiy =
        coalgebra_morphism_tensor(&b_phiy, &b_phiy, &bb_a_pairs, &bb_a, &bb_y_pairs, &bb_y);
    let om_bb_phix = cobar_of_morphism(&bb_phix, &om_bb_a, &om_bb_x);
    let om_bb_phiy = cobar_of_morphism(&bb_phiy, &om_bb_a, &om_bb_y);
    let t_gamma_src = two_sided_bar(
        &om_bb_x.algebra,
        &om_bb_a.algebra,
        &om_bb_y.algebra,
        &om_bb_phix,
        &om_bb_phiy,
        c + 1,
        budget,
    )?;

    // γ legs and the induced (invertible) comparison
    let gamma_a = shuffle_gamma(&om_bb_a, &bb_a_pairs, &ot_a, &ot_a_pairs, &om_a, &om_a);
    let gamma_x = shuffle_gamma(&om_bb_x, &bb_x_pairs, &ot_x, &ot_x_pairs, &om_x, &om_x);
    let gamma_y = shuffle_gamma(&om_bb_y, &bb_y_pairs, &ot_y, &ot_y_pairs, &om_y, &om_y);
    let m_gamma = tor_map(&gamma_a, &gamma_x, &gamma_y, &t_gamma_src, &t_tensor2)?;

    // Ω∇ legs
    let nabla_a = shuffle_nabla(&ba, &ba, &bb_a_pairs, &bb_a, &a2_pairs, &ba2);
    let nabla_x = shuffle_nabla(&bx, &bx, &bb_x_pairs, &bb_x, &x2_pairs, &bx2);
    let nabla_y = shuffle_nabla(&by, &by, &bb_y_pairs, &bb_y, &y2_pairs, &by2);
    let om_nabla_a = cobar_of_morphism(&nabla_a, &om_bb_a, &om_a2);
    let om_nabla_x = cobar_of_morphism(&nabla_x, &om_bb_x, &om_x2);
    let om_nabla_y = cobar_of_morphism(&nabla_y, &om_bb_y, &om_y2);
    let m_nabla = tor_map(&om_nabla_a, &om_nabla_x, &om_nabla_y, &t_gamma_src, &t_sq)?;

    // Φ = Bμ legs, with constant homotopies (strict commutative inputs)
    let mu_a = multiplication_morphism(a, &a2_pairs, &a2)?;
    let mu_x = multiplication_morphism(x, &x2_pairs, &x2)?;
    let mu_y = multiplication_morphism(y, &y2_pairs, &y2)?;
    let om_phi_a = cobar_of_morphism(&bar_of_morphism(&mu_a, &ba2, &ba), &om_a2, &om_a);
    let om_phi_x = cobar_of_morphism(&bar_of_morphism(&mu_x, &bx2, &bx), &om_x2, &om_x);
    let om_phi_y = cobar_of_morphism(&bar_of_morphism(&mu_y, &by2, &by), &om_y2, &om_y);
    let hx = DgaHomotopy::constant(&om_phi_x.compose(&t_sq.phi_x));
    let hy = DgaHomotopy::constant(&om_phi_y.compose(&t_sq.phi_y));
    let triple = HomotopyTriple {
        f: &om_phi_a,
        u: &om_phi_x,
        v: &om_phi_y,
        h_x: &hx,
        h_y: &hy,
    };
    let m_phi = tor_map_with_homotopy(&triple, &t_sq, &t_main, budget)?;

    // counit comparison to the classical complex
    let t_classical = span.bar_complex(c + 1, budget)?;
    let eps_a = adjunction_counit(&ba, &om_a)?;
    let eps_x = adjunction_counit(&bx, &om_x)?;
    let eps_y = adjunction_counit(&by, &om_y)?;
    let m_eps = tor_map(&eps_a, &eps_x, &eps_y, &t_main, &t_classical)?;

    // workspaces
    let mut ws_main = TorWorkspace::new(&t_main.view);
    let mut ws_t2 = TorWorkspace::new(&t_tensor2.view);
    let mut ws_gsrc = TorWorkspace::new(&t_gamma_src.view);
    let mut ws_sq = TorWorkspace::new(&t_sq.view);
    let mut ws_cls = TorWorkspace::new(&t_classical.view);

    let gamma_induced = induced_total_map(&m_gamma, &mut ws_gsrc, &mut ws_t2, c)?;
    let eps_induced = {
        let mut ws_main2 = TorWorkspace::new(&t_main.view);
        induced_total_map(&m_eps, &mut ws_main2, &mut ws_cls, c)?
    };

    let ext_ctx = ExteriorContext {
        left: &t_main,
        right: &t_main,
        target: &t_tensor2,
        x_pairs: &ot_x_pairs,
        a_pairs: &ot_a_pairs,
        y_pairs: &ot_y_pairs,
    };

    // the classical product on B(X, A, Y)
    let cls_mult = |i: usize, j: usize| t_classical.shuffle_mult(i, j);
    let mut cls_ring = TorRing::new(&t_classical.view, &cls_mult, t_classical.unit_cell())?;

    let mut outcome = PipelineOutcome {
        pairs_checked: 0,
        mismatches: Vec::new(),
    };
    // all pairs of total-degree generators of Tor over ΩBA
    let mut degree_gens: Vec<(usize, Vec<crate::linalg::SparseVec>)> = Vec::new();
    for n in 0..=c {
        degree_gens.push((n, ws_main.total_generators(n)?));
    }
    for (da, gens_a) in &degree_gens {
        for (db, gens_b) in &degree_gens {
            let d = da + db;
            if d > c {
                continue;
            }
            for (ia, rep_a) in gens_a.iter().enumerate() {
                for (ib, rep_b) in gens_b.iter().enumerate() {
                    outcome.pairs_checked += 1;
                    // pipeline route
                    let ext_cycle = ext_ctx.vec_product(rep_a, rep_b);
                    let coords_t2 = ws_t2.total_coordinates(d, &ext_cycle)?;
                    let orders_t2 = ws_t2.total_orders(d)?;
                    let pre =
                        solve_in_group(&ring, &orders_t2, &gamma_induced.columns[d], &coords_t2)
                            .ok_or(Error::InvalidHomotopy {
                                reason: format!("γ comparison not surjective in degree {d}"),
                            })?;
                    // lift back to a cycle in the γ source and push through Ω∇
                    let gsrc_gens = ws_gsrc.total_generators(d)?;
                    let mut lifted = crate::linalg::VecBuilder::new();
                    for (g, ccoef) in gsrc_gens.iter().zip(pre.iter()) {
                        lifted.add_vec(&ring, g, ccoef);
                    }
                    let nabla_cycle = m_nabla.apply(&ring, &lifted.build());
                    let coords_sq = ws_sq.total_coordinates(d, &nabla_cycle)?;
                    let main_coords = m_phi.apply(&ring, d, &coords_sq);
                    let pipeline_cls = eps_induced.apply(&ring, d, &main_coords);

                    // classical route on the images of the inputs
                    let a_cls_coords =
                        eps_induced.apply(&ring, *da, &unit_vector(gens_a.len(), ia));
                    let b_cls_coords =
                        eps_induced.apply(&ring, *db, &unit_vector(gens_b.len(), ib));
                    let a_class = coords_to_class(&cls_ring, *da, &a_cls_coords);
                    let b_class = coords_to_class(&cls_ring, *db, &b_cls_coords);
                    let prod = cls_ring.product(&a_class, &b_class)?;
                    let pipeline_class = coords_to_class(&cls_ring, d, &pipeline_cls);
                    if !cls_ring.classes_equal(&prod, &pipeline_class) {
                        outcome
                            .mismatches
                            .push(format!("degree ({da}, {db}) generators ({ia}, {ib})"));
                    }
                }
            }
        }
    }
    Ok(outcome)
}

fn unit_vector(len: usize, at: usize) -> Vec<Scalar> {
    (0..len)
        .map(|i| if i == at { Scalar::ONE } else { Scalar::ZERO })
        .collect()
}

/// Convert total-degree coordinates into a TorRing class (generator order in
/// a degree matches the workspace's block order).
fn coords_to_class(
    ring: &TorRing<'_>,
    degree: usize,
    coords: &[Scalar],
) -> super::product::ClassVec {
    let gens = ring.generators_in_degree(degree);
    let mut out = std::collections::BTreeMap::new();
    for (g, c) in gens.into_iter().zip(coords.iter()) {
        if !c.is_zero() {
            out.insert(g, c.clone());
        }
    }
    out
}
