//! `dgtor selftest`: compact versions of the structural invariant suites.
//! Each check prints one pass/fail line.

use dgtor_core::barcobar::{
    adjunction_counit, adjunction_unit, bar, bar_of_morphism, cobar, cobar_of_morphism,
};
use dgtor_core::dga::{build_free_gca, DgaHomotopy};
use dgtor_core::graded::GradedMap;
use dgtor_core::guard::CellBudget;
use dgtor_core::homotopy::{
    compose_twisting_homotopies, invert_twisting_homotopy, path_object, right_homotopy, zeta,
    TwistingHomotopy,
};
use dgtor_core::linalg::CoefficientRing;
use dgtor_core::tor::{pipeline_product_smoke, tor_additive, TorRing};

use crate::fixtures;
use crate::runner::build_span;

pub struct CheckResult {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(), String>) -> CheckResult {
    CheckResult { name, outcome: f() }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

pub fn run_all() -> Vec<CheckResult> {
    let budget = CellBudget::default();
    let mut out = Vec::new();

    out.push(check("d² = 0 on bar/cobar/path constructions", || {
        let ring = CoefficientRing::Integers;
        let a = build_free_gca(&dgtor_core::dga::FreeGcaPresentation {
            generators: vec![dgtor_core::dga::GcaGenerator::new("x", 2)],
            ring,
            cutoff: 8,
        })
        .map_err(err)?;
        let ba = bar(&a.algebra, 5, &budget).map_err(err)?;
        ba.coalgebra.complex.check_d_squared(&ring).map_err(err)?;
        let om = cobar(&ba.coalgebra, 5, &budget).map_err(err)?;
        om.algebra.complex.check_d_squared(&ring).map_err(err)?;
        let p = path_object(&a.algebra);
        p.algebra.complex.check_d_squared(&ring).map_err(err)?;
        p.algebra.check_axioms().map_err(err)?;
        Ok(())
    }));

    out.push(check(
        "Maurer–Cartan for tautological twisting cochains",
        || {
            let spec = fixtures::loop_cp_infty();
            let span = build_span(&spec).map_err(err)?;
            let ba = bar(&span.base.algebra, 6, &budget).map_err(err)?;
            ba.tautological().validate().map_err(err)?;
            let om = cobar(&ba.coalgebra, 6, &budget).map_err(err)?;
            om.tautological().validate().map_err(err)?;
            Ok(())
        },
    ));

    out.push(check("adjunction unit/counit triangle identities", || {
        let ring = CoefficientRing::Integers;
        let a = build_free_gca(&dgtor_core::dga::FreeGcaPresentation {
            generators: vec![dgtor_core::dga::GcaGenerator::new("x", 2)],
            ring,
            cutoff: 8,
        })
        .map_err(err)?;
        let ba = bar(&a.algebra, 3, &budget).map_err(err)?;
        let om = cobar(&ba.coalgebra, 4, &budget).map_err(err)?;
        let bo = bar(&om.algebra, 3, &budget).map_err(err)?;
        let eta = adjunction_unit(&om, &bo).map_err(err)?;
        let counit = adjunction_counit(&ba, &om).map_err(err)?;
        let composite = bar_of_morphism(&counit, &bo, &ba)
            .map
            .compose(&ring, &eta.map);
        if !composite.equal_map(&ring, &GradedMap::identity(ba.basis().clone())) {
            return Err("Bε ∘ η is not the identity".into());
        }
        let obo = cobar(&bo.coalgebra, 4, &budget).map_err(err)?;
        let omega_eta = cobar_of_morphism(&eta, &om, &obo);
        let counit_om = adjunction_counit(&bo, &obo).map_err(err)?;
        let composite = counit_om.map.compose(&ring, &omega_eta.map);
        if !composite.equal_map(&ring, &GradedMap::identity(om.basis().clone())) {
            return Err("ε ∘ Ωη is not the identity".into());
        }
        Ok(())
    }));

    out.push(check("twisting-homotopy groupoid laws", || {
        let ring = CoefficientRing::Integers;
        let a = build_free_gca(&dgtor_core::dga::FreeGcaPresentation {
            generators: vec![dgtor_core::dga::GcaGenerator::new("x", 2)],
            ring,
            cutoff: 8,
        })
        .map_err(err)?;
        let ba = bar(&a.algebra, 4, &budget).map_err(err)?;
        let constant = TwistingHomotopy::constant(&ba.coalgebra, &a.algebra, &ba.taut);
        if !constant.check().is_valid() {
            return Err("constant homotopy fails its axioms".into());
        }
        let composed = compose_twisting_homotopies(&constant, &constant).map_err(err)?;
        if !composed.check().is_valid() {
            return Err("composite homotopy fails its axioms".into());
        }
        let inv = invert_twisting_homotopy(&constant).map_err(err)?;
        if !inv.x.equal_map(&ring, &constant.x) {
            return Err("unit homotopy is not its own inverse".into());
        }
        Ok(())
    }));

    out.push(check("right homotopies land in the path object", || {
        let ring = CoefficientRing::Integers;
        let a = build_free_gca(&dgtor_core::dga::FreeGcaPresentation {
            generators: vec![dgtor_core::dga::GcaGenerator::new("x", 2)],
            ring,
            cutoff: 6,
        })
        .map_err(err)?;
        let f = dgtor_core::dga::AlgebraMorphism::identity(&a.algebra);
        let p = path_object(&a.algebra);
        let hp = right_homotopy(&DgaHomotopy::constant(&f), &p).map_err(err)?;
        hp.validate().map_err(err)?;
        let expected = zeta(&p).map.compose(&ring, &f.map);
        if !hp.map.equal_map(&ring, &expected) {
            return Err("constant right homotopy is not ζ∘f".into());
        }
        Ok(())
    }));

    out.push(check(
        "Tor product axioms on the based-loop fixture",
        || {
            let spec = fixtures::loop_cp_infty();
            let mut spec = spec;
            spec.max_degree = 8;
            let span = build_span(&spec).map_err(err)?;
            let tsb = span
                .bar_complex(spec.max_degree + 1, &budget)
                .map_err(err)?;
            let mult = |i: usize, j: usize| tsb.shuffle_mult(i, j);
            let mut ring = TorRing::new(&tsb.view, &mult, tsb.unit_cell()).map_err(err)?;
            ring.check_unital().map_err(err)?;
            ring.check_graded_commutative().map_err(err)?;
            ring.check_associative().map_err(err)?;
            Ok(())
        },
    ));

    out.push(check(
        "bar route matches the Koszul oracle (3 random spans)",
        || {
            for seed in [1u64, 2, 3] {
                let spec = fixtures::random_poly_span(seed);
                let mut spec = spec;
                spec.max_degree = 6;
                let span = build_span(&spec).map_err(err)?;
                let tsb = span
                    .bar_complex(spec.max_degree + 1, &budget)
                    .map_err(err)?;
                let kz = span.koszul(spec.max_degree + 1, &budget).map_err(err)?;
                let a = tor_additive(&tsb.view).map_err(err)?;
                let b = tor_additive(&kz.view).map_err(err)?;
                for n in 0..=spec.max_degree {
                    if a.total_rank(n) != b.total_rank(n) {
                        return Err(format!(
                            "seed {seed}: degree {n}: bar {} vs Koszul {}",
                            a.total_rank(n),
                            b.total_rank(n)
                        ));
                    }
                }
            }
            Ok(())
        },
    ));

    out.push(check(
        "pipeline product equals the classical product",
        || {
            let mut spec = fixtures::loop_cp_infty();
            spec.max_degree = 4;
            let span = build_span(&spec).map_err(err)?;
            let outcome = pipeline_product_smoke(&span, 4, &budget).map_err(err)?;
            if outcome.agree() {
                Ok(())
            } else {
                Err(format!("{} mismatches", outcome.mismatches.len()))
            }
        },
    ));

    out
}
