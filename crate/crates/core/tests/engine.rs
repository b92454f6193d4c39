//! Cross-module integration tests: induced maps on Tor, the homotopy zigzag
//! and its independence of the chosen homotopies, and the full product
//! pipeline at desk scale.

use std::sync::Arc;

use dgtor_core::barcobar::{adjunction_counit, bar, cobar, BarCoalgebra, CobarAlgebra};
use dgtor_core::dga::{
    build_free_gca, check_homotopy, convolution_unit, cup, hom_differential, unit_algebra,
    AlgebraMorphism, DgaHomotopy, FreeGca, FreeGcaPresentation, GcaGenerator,
};
use dgtor_core::graded::GradedMap;
use dgtor_core::guard::CellBudget;
use dgtor_core::homotopy::{twisting_to_dga_homotopy, TwistingHomotopy};
use dgtor_core::linalg::{CoefficientRing, Scalar};
use dgtor_core::tor::{
    induced_total_map, pipeline_product_smoke, tor_map, tor_map_with_homotopy, two_sided_bar,
    HomotopyTriple, Span, TorWorkspace,
};

fn kx(ring: CoefficientRing, cutoff: usize) -> FreeGca {
    build_free_gca(&FreeGcaPresentation {
        generators: vec![GcaGenerator::new("x", 2)],
        ring,
        cutoff,
    })
    .unwrap()
}

struct CounitFixture {
    a: FreeGca,
    ba: BarCoalgebra,
    om: CobarAlgebra,
    eps: AlgebraMorphism,
}

fn counit_fixture(ring: CoefficientRing) -> CounitFixture {
    let a = kx(ring, 8);
    let ba = bar(&a.algebra, 5, &CellBudget::default()).unwrap();
    let om = cobar(&ba.coalgebra, 6, &CellBudget::default()).unwrap();
    let eps = adjunction_counit(&ba, &om).unwrap();
    CounitFixture { a, ba, om, eps }
}

/// A gauge self-homotopy of the tautological twisting cochain:
/// x = ηε + d(σ) − t ∪ σ − σ ∪ t for any degree −1 map σ with εσ = 0, ση = 0.
fn gauge_homotopy(fx: &CounitFixture) -> TwistingHomotopy {
    let ring = fx.a.algebra.ring;
    let c = &fx.ba.coalgebra;
    let alg = &fx.a.algebra;
    let x_idx = fx.a.algebra.basis().index_of("x").unwrap();
    let x2_idx = fx.a.algebra.basis().index_of("x^2").unwrap();
    // σ: [x²] ↦ x, [x|x|x²] ↦ x², zero elsewhere
    let mut cols = vec![Vec::new(); c.basis().len()];
    let w = fx.ba.word_index(&[x2_idx]).expect("[x²] tracked");
    cols[w] = vec![(x_idx, Scalar::ONE)];
    if let Some(w) = fx.ba.word_index(&[x_idx, x_idx, x2_idx]) {
        cols[w] = vec![(x2_idx, Scalar::Int(2))];
    }
    let sigma = GradedMap::from_columns(c.basis().clone(), alg.basis().clone(), -1, cols);
    let t = &fx.ba.taut;
    let x = convolution_unit(&ring, c, alg)
        .add(&ring, &hom_differential(&ring, &sigma, c.d(), alg.d()))
        .sub(&ring, &cup(&ring, c, alg, t, &sigma))
        .sub(&ring, &cup(&ring, c, alg, &sigma, t));
    let th = TwistingHomotopy {
        coalg: c.clone(),
        alg: alg.clone(),
        t0: t.clone(),
        t1: t.clone(),
        x,
    };
    assert!(th.check().is_valid(), "gauge homotopy must validate");
    th
}

#[test]
fn zigzag_with_zero_homotopies_agrees_with_strict_tor_map() {
    let ring = CoefficientRing::Rationals;
    let fx = counit_fixture(ring);
    let budget = CellBudget::default();
    // source: B(A, ΩBA, A) with both modules through the counit
    let source = two_sided_bar(
        &fx.a.algebra,
        &fx.om.algebra,
        &fx.a.algebra,
        &fx.eps,
        &fx.eps,
        5,
        &budget,
    )
    .unwrap();
    // target: B(A, A, A) along identities
    let id_a = AlgebraMorphism::identity(&fx.a.algebra);
    let target = two_sided_bar(
        &fx.a.algebra,
        &fx.a.algebra,
        &fx.a.algebra,
        &id_a,
        &id_a,
        5,
        &budget,
    )
    .unwrap();
    let strict = tor_map(&fx.eps, &id_a, &id_a, &source, &target).unwrap();
    let mut sws = TorWorkspace::new(&source.view);
    let mut tws = TorWorkspace::new(&target.view);
    let strict_induced = induced_total_map(&strict, &mut sws, &mut tws, 4).unwrap();

    let hx = DgaHomotopy::constant(&fx.eps);
    let triple = HomotopyTriple {
        f: &fx.eps,
        u: &id_a,
        v: &id_a,
        h_x: &hx,
        h_y: &hx,
    };
    let zigzag = tor_map_with_homotopy(&triple, &source, &target, &budget).unwrap();
    for n in 0..=4 {
        assert_eq!(strict_induced.columns[n], zigzag.columns[n], "degree {n}");
    }
    // and the comparison is an isomorphism degreewise: Tor over ΩBA matches
    // Tor over A itself (counit is a quasi-isomorphism)
    let src_tor = dgtor_core::tor::tor_additive(&source.view).unwrap();
    let tgt_tor = dgtor_core::tor::tor_additive(&target.view).unwrap();
    for n in 0..=4 {
        assert_eq!(src_tor.total_rank(n), tgt_tor.total_rank(n), "degree {n}");
    }
}

#[test]
fn zigzag_is_independent_of_the_chosen_homotopies() {
    let ring = CoefficientRing::Rationals;
    let fx = counit_fixture(ring);
    let budget = CellBudget::default();
    let source = two_sided_bar(
        &fx.a.algebra,
        &fx.om.algebra,
        &fx.a.algebra,
        &fx.eps,
        &fx.eps,
        5,
        &budget,
    )
    .unwrap();
    let id_om = AlgebraMorphism::identity(&fx.om.algebra);
    let id_a = AlgebraMorphism::identity(&fx.a.algebra);

    // two different homotopies with the same endpoints ε ≃ ε
    let zero = DgaHomotopy::constant(&fx.eps);
    let gauge = twisting_to_dga_homotopy(&gauge_homotopy(&fx), &fx.om).unwrap();
    assert!(check_homotopy(&gauge).is_valid());
    assert!(
        !gauge.h.is_zero_map(),
        "gauge homotopy is genuinely nonzero"
    );
    assert!(gauge.f0.map.equal_map(&ring, &fx.eps.map));
    assert!(gauge.f1.map.equal_map(&ring, &fx.eps.map));

    let run = |h: &DgaHomotopy| {
        let triple = HomotopyTriple {
            f: &id_om,
            u: &id_a,
            v: &id_a,
            h_x: h,
            h_y: h,
        };
        tor_map_with_homotopy(&triple, &source, &source, &budget).unwrap()
    };
    let with_zero = run(&zero);
    let with_gauge = run(&gauge);
    for n in 0..=4 {
        assert_eq!(
            with_zero.columns[n], with_gauge.columns[n],
            "homotopy choice must not matter in degree {n}"
        );
        // and both are the identity, as the strict triple is the identity
        for (j, col) in with_zero.columns[n].iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                let expect = if i == j { Scalar::ONE } else { Scalar::ZERO };
                assert_eq!(*c, expect, "degree {n} entry ({i}, {j})");
            }
        }
    }
}

#[test]
fn tor_maps_compose_functorially() {
    // strict triples: scaling maps on the cyclic span compose on the nose
    let ring = CoefficientRing::Rationals;
    let mk = |scale: &str| -> Span {
        Span::build(
            ring,
            8,
            &FreeGcaPresentation {
                generators: vec![GcaGenerator::new("u", 2)],
                ring,
                cutoff: 0,
            },
            &FreeGcaPresentation {
                generators: vec![],
                ring,
                cutoff: 0,
            },
            &FreeGcaPresentation {
                generators: vec![GcaGenerator::new("v", 2)],
                ring,
                cutoff: 0,
            },
            &[("u".into(), "0".into())],
            &[("u".into(), scale.into())],
        )
        .unwrap()
    };
    let s1 = mk("v");
    let s2 = mk("2*v");
    let s4 = mk("4*v");
    let budget = CellBudget::default();
    let t1 = s1.bar_complex(6, &budget).unwrap();
    let t2 = s2.bar_complex(6, &budget).unwrap();
    let t4 = s4.bar_complex(6, &budget).unwrap();
    // f doubles the base generator, keeping the modules fixed
    let double_base =
        dgtor_core::dga::evaluate_morphism(&[("u".into(), "2*u".into())], &s4.base, &s2.base)
            .unwrap();
    let double_base2 =
        dgtor_core::dga::evaluate_morphism(&[("u".into(), "2*u".into())], &s2.base, &s1.base)
            .unwrap();
    let id_k = AlgebraMorphism::identity(&s1.left.algebra);
    let id_v = AlgebraMorphism::identity(&s1.right.algebra);
    let m12 = tor_map(&double_base2, &id_k, &id_v, &t2, &t1).unwrap();
    let m24 = tor_map(&double_base, &id_k, &id_v, &t4, &t2).unwrap();
    let quad =
        dgtor_core::dga::evaluate_morphism(&[("u".into(), "4*u".into())], &s4.base, &s1.base)
            .unwrap();
    let m14 = tor_map(&quad, &id_k, &id_v, &t4, &t1).unwrap();
    assert!(m14.equal_map(&ring, &m12.compose(&ring, &m24)));
}

#[test]
fn pipeline_product_matches_classical_on_the_loop_span() {
    let ring = CoefficientRing::Rationals;
    let span = Span::build(
        ring,
        6,
        &FreeGcaPresentation {
            generators: vec![GcaGenerator::new("x", 2)],
            ring,
            cutoff: 0,
        },
        &FreeGcaPresentation {
            generators: vec![],
            ring,
            cutoff: 0,
        },
        &FreeGcaPresentation {
            generators: vec![],
            ring,
            cutoff: 0,
        },
        &[("x".into(), "0".into())],
        &[("x".into(), "0".into())],
    )
    .unwrap();
    let outcome = pipeline_product_smoke(&span, 4, &CellBudget::default()).unwrap();
    assert!(outcome.pairs_checked >= 4);
    assert!(
        outcome.agree(),
        "pipeline disagreed with the classical product: {:?}",
        outcome.mismatches
    );
}

#[test]
fn unit_algebra_span_smoke() {
    // B(k, k, k) = k, and the unit class multiplies trivially
    let ring = CoefficientRing::PrimeField(3);
    let k = unit_algebra(ring, 4);
    let id = AlgebraMorphism::identity(&k);
    let t = two_sided_bar(&k, &k, &k, &id, &id, 3, &CellBudget::default()).unwrap();
    let tor = dgtor_core::tor::tor_additive(&t.view).unwrap();
    assert_eq!(tor.total_rank(0), 1);
    let _ = Arc::strong_count(&k);
}
