//! The two-sided bar construction, bigraded differential Tor, the Koszul
//! oracle, Tor functoriality (strict and up-to-homotopy), and the ring
//! structure on Tor for commutative inputs.

mod bigraded;
mod koszul;
mod maps;
mod pipeline;
mod product;
mod span;
mod two_sided;

pub use bigraded::{
    induced_on_homology, merge_invariant_factors, tor_additive, BigradedTor, BlockKey, TorView,
    TorWorkspace,
};
pub use koszul::{koszul_complex, KoszulComplex};
pub use maps::{
    algebra_morphism_tensor, coalgebra_morphism_tensor, induced_total_map, solve_in_group, tor_map,
    tor_map_with_homotopy, ExteriorContext, HomotopyTriple, TorClassMap,
};
pub use pipeline::{pipeline_product_smoke, PipelineOutcome};
pub use product::{ClassVec, GenInfo, RingStructure, TorRing};
pub use span::Span;
pub use two_sided::{two_sided_bar, Cell, TwoSidedBar};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::{FreeGcaPresentation, GcaGenerator};
    use crate::guard::CellBudget;
    use crate::linalg::CoefficientRing;
    use num_bigint::BigInt;

    fn pres(gens: Vec<GcaGenerator>) -> FreeGcaPresentation {
        FreeGcaPresentation {
            generators: gens,
            ring: CoefficientRing::Rationals, // overridden by Span::build
            cutoff: 0,
        }
    }

    fn trivial() -> FreeGcaPresentation {
        pres(vec![])
    }

    /// The based-loop span k ← k[x₂] → k.
    fn loop_span(ring: CoefficientRing, algebra_cutoff: usize) -> Span {
        Span::build(
            ring,
            algebra_cutoff,
            &pres(vec![GcaGenerator::new("x", 2)]),
            &trivial(),
            &trivial(),
            &[("x".into(), "0".into())],
            &[("x".into(), "0".into())],
        )
        .unwrap()
    }

    /// The group-cohomology span k ← Z[u₂] → Z[v₂], u ↦ n·v.
    fn cyclic_span(n: u64, algebra_cutoff: usize) -> Span {
        Span::build(
            CoefficientRing::Integers,
            algebra_cutoff,
            &pres(vec![GcaGenerator::new("u", 2)]),
            &trivial(),
            &pres(vec![GcaGenerator::new("v", 2)]),
            &[("u".into(), "0".into())],
            &[("u".into(), format!("{n}*v"))],
        )
        .unwrap()
    }

    /// The free-loop span k[x] ← k[x]⊗k[x] → k[x] along the diagonal.
    fn diagonal_span(ring: CoefficientRing, algebra_cutoff: usize) -> Span {
        Span::build(
            ring,
            algebra_cutoff,
            &pres(vec![GcaGenerator::new("x1", 2), GcaGenerator::new("x2", 2)]),
            &pres(vec![GcaGenerator::new("x", 2)]),
            &pres(vec![GcaGenerator::new("x", 2)]),
            &[("x1".into(), "x".into()), ("x2".into(), "x".into())],
            &[("x1".into(), "x".into()), ("x2".into(), "x".into())],
        )
        .unwrap()
    }

    #[test]
    fn trivial_two_sided_bar_is_the_base_ring() {
        let span = Span::build(
            CoefficientRing::Rationals,
            4,
            &trivial(),
            &trivial(),
            &trivial(),
            &[],
            &[],
        )
        .unwrap();
        let tsb = span.bar_complex(3, &CellBudget::default()).unwrap();
        assert_eq!(tsb.basis().len(), 1);
        let tor = tor_additive(&tsb.view).unwrap();
        assert_eq!(tor.total_rank(0), 1);
        assert_eq!(tor.total_rank(1), 0);
    }

    #[test]
    fn loop_span_complex_and_homology() {
        let q = CoefficientRing::Rationals;
        let span = loop_span(q, 8);
        let tsb = span.bar_complex(7, &CellBudget::default()).unwrap();
        tsb.complex().check_d_squared(&q).unwrap();
        // complex dimensions: degree 3 holds [x²] and [x|x|x]
        let dims = tsb.basis().dims();
        assert_eq!(&dims[0..4], &[1, 1, 1, 2]);
        // Tor_{k[x₂]}(k, k) = Λ[u₁]: rank 1 in degrees 0 and 1, else 0
        let tor = tor_additive(&tsb.view).unwrap();
        assert!(tor.bigraded);
        for n in 0..=6 {
            let expect = if n <= 1 { 1 } else { 0 };
            assert_eq!(tor.total_rank(n), expect, "degree {n}");
        }
        // the generator sits in bidegree (1, 2)
        assert_eq!(tor.blocks[&(1, 2)].free_rank, 1);
        assert_eq!(tor.blocks.get(&(2, 4)).map(|s| s.free_rank), Some(0));
    }

    #[test]
    fn loop_span_generator_squares_to_zero() {
        for ring in [CoefficientRing::Rationals, CoefficientRing::PrimeField(2)] {
            let span = loop_span(ring, 8);
            let tsb = span.bar_complex(7, &CellBudget::default()).unwrap();
            let mult = |i: usize, j: usize| tsb.shuffle_mult(i, j);
            let mut tor_ring = TorRing::new(&tsb.view, &mult, tsb.unit_cell()).unwrap();
            tor_ring.check_unital().unwrap();
            tor_ring.check_graded_commutative().unwrap();
            tor_ring.check_associative().unwrap();
            let u = tor_ring.generators_in_degree(1)[0];
            let uu = tor_ring
                .product(&tor_ring.generator_class(u), &tor_ring.generator_class(u))
                .unwrap();
            assert!(uu.is_empty(), "u² = 0 over {ring}");
        }
    }

    #[test]
    fn koszul_oracle_matches_bar_route_for_loop_span() {
        let q = CoefficientRing::Rationals;
        let span = loop_span(q, 8);
        let tsb = span.bar_complex(7, &CellBudget::default()).unwrap();
        let kz = span.koszul(7, &CellBudget::default()).unwrap();
        kz.complex().check_d_squared(&q).unwrap();
        let bar_tor = tor_additive(&tsb.view).unwrap();
        let kz_tor = tor_additive(&kz.view).unwrap();
        for (key, s) in &bar_tor.blocks {
            let other = kz_tor.blocks.get(key);
            assert_eq!(
                s.free_rank,
                other.map(|o| o.free_rank).unwrap_or(0),
                "bidegree {key:?}"
            );
        }
        for (key, s) in &kz_tor.blocks {
            if s.free_rank > 0 {
                assert_eq!(bar_tor.blocks[key].free_rank, s.free_rank);
            }
        }
    }

    #[test]
    fn cyclic_group_two_realizes_group_cohomology() {
        // Tor_{Z[u₂]}(Z, Z[v₂]) with u ↦ 2v is Z, 0, Z/2, 0, Z/2, …
        let span = cyclic_span(2, 9);
        let tsb = span.bar_complex(8, &CellBudget::default()).unwrap();
        let kz = span.koszul(8, &CellBudget::default()).unwrap();
        for view in [&tsb.view, &kz.view] {
            let tor = tor_additive(view).unwrap();
            assert_eq!(tor.total_rank(0), 1);
            for n in 1..=7 {
                assert_eq!(tor.total_rank(n), 0, "degree {n}");
                let torsion = tor.total_torsion(n);
                if n % 2 == 0 {
                    assert_eq!(torsion, vec![BigInt::from(2)], "degree {n}");
                } else {
                    assert!(torsion.is_empty(), "degree {n}");
                }
            }
        }
        // bidegree-level agreement including torsion
        let bar_tor = tor_additive(&tsb.view).unwrap();
        let kz_tor = tor_additive(&kz.view).unwrap();
        for (key, s) in &bar_tor.blocks {
            if !s.is_zero() {
                let o = &kz_tor.blocks[key];
                assert_eq!((s.free_rank, &s.torsion), (o.free_rank, &o.torsion));
            }
        }
    }

    #[test]
    fn diagonal_span_gives_free_loop_cohomology() {
        let q = CoefficientRing::Rationals;
        let span = diagonal_span(q, 8);
        let tsb = span.bar_complex(7, &CellBudget::default()).unwrap();
        tsb.complex().check_d_squared(&q).unwrap();
        let tor = tor_additive(&tsb.view).unwrap();
        // H(L CP^∞) = k[x] ⊗ Λ[u₁]: one dimension in every degree
        for n in 0..=6 {
            assert_eq!(tor.total_rank(n), 1, "degree {n}");
        }
        // multiplicative structure: u² = 0, x^k ≠ 0, u·x^k ≠ 0
        let mult = |i: usize, j: usize| tsb.shuffle_mult(i, j);
        let mut ring = TorRing::new(&tsb.view, &mult, tsb.unit_cell()).unwrap();
        let u = ring.generators_in_degree(1)[0];
        let x = ring.generators_in_degree(2)[0];
        let uu = ring
            .product(&ring.generator_class(u), &ring.generator_class(x))
            .unwrap();
        assert!(!uu.is_empty(), "u·x ≠ 0");
        let uu = ring
            .product(&ring.generator_class(u), &ring.generator_class(u))
            .unwrap();
        assert!(uu.is_empty(), "u² = 0");
        let mut power = ring.generator_class(x);
        for k in 2..=3 {
            power = ring.product(&power, &ring.generator_class(x)).unwrap();
            assert!(!power.is_empty(), "x^{k} ≠ 0");
        }
        ring.check_graded_commutative().unwrap();
    }

    #[test]
    fn koszul_oracle_rejects_odd_base_generators() {
        let span = Span::build(
            CoefficientRing::PrimeField(2),
            6,
            &pres(vec![GcaGenerator::new("z", 3)]),
            &trivial(),
            &trivial(),
            &[("z".into(), "0".into())],
            &[("z".into(), "0".into())],
        )
        .unwrap();
        assert!(matches!(
            span.koszul(5, &CellBudget::default()),
            Err(crate::Error::OddGeneratorInBase { .. })
        ));
    }

    #[test]
    fn additive_fast_path_agrees_with_block_homology() {
        // clearing-based ranks versus the plain per-block computation
        let f5 = CoefficientRing::PrimeField(5);
        let span = diagonal_span(f5, 8);
        let tsb = span.bar_complex(7, &CellBudget::default()).unwrap();
        let fast = tor_additive(&tsb.view).unwrap();
        let mut ws = TorWorkspace::new(&tsb.view);
        for key in tsb.view.keys() {
            let space = ws.space(key).unwrap();
            assert_eq!(
                fast.blocks[&key].free_rank, space.summary.free_rank,
                "block {key:?}"
            );
        }
    }

    #[test]
    fn exterior_product_of_loop_generators_lands_in_bidegree_two_four() {
        let q = CoefficientRing::Rationals;
        let span = loop_span(q, 8);
        let budget = CellBudget::default();
        let tsb = span.bar_complex(6, &budget).unwrap();
        // the combined bar over the tensor-square span
        let (a_pairs, a2) =
            crate::dga::algebra_tensor(&span.base.algebra, &span.base.algebra).unwrap();
        let (x_pairs, x2) =
            crate::dga::algebra_tensor(&span.left.algebra, &span.left.algebra).unwrap();
        let (y_pairs, y2) =
            crate::dga::algebra_tensor(&span.right.algebra, &span.right.algebra).unwrap();
        let phix2 = algebra_morphism_tensor(&span.phi_x, &span.phi_x, &a_pairs, &a2, &x_pairs, &x2);
        let phiy2 = algebra_morphism_tensor(&span.phi_y, &span.phi_y, &a_pairs, &a2, &y_pairs, &y2);
        let t2 = two_sided_bar(&x2, &a2, &y2, &phix2, &phiy2, 6, &budget).unwrap();
        let ctx = ExteriorContext {
            left: &tsb,
            right: &tsb,
            target: &t2,
            x_pairs: &x_pairs,
            a_pairs: &a_pairs,
            y_pairs: &y_pairs,
        };
        let mut ws = TorWorkspace::new(&tsb.view);
        let u = ws.generator((1, 2), 0).unwrap();
        let image = ctx.vec_product(&u, &u);
        assert!(!image.is_empty());
        for (i, _) in &image {
            assert_eq!(t2.view.bidegrees_of(*i), (2, 4));
        }
        // and it is nonzero in homology
        let mut ws2 = TorWorkspace::new(&t2.view);
        let coords = ws2.coordinates((2, 4), &image).unwrap();
        assert!(coords.iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn tor_map_identity_and_quasi_isomorphism() {
        let q = CoefficientRing::Rationals;
        let span = loop_span(q, 8);
        let tsb = span.bar_complex(5, &CellBudget::default()).unwrap();
        let id_a = crate::dga::AlgebraMorphism::identity(&span.base.algebra);
        let id_x = crate::dga::AlgebraMorphism::identity(&span.left.algebra);
        let m = tor_map(&id_a, &id_x, &id_x, &tsb, &tsb).unwrap();
        assert!(m.equal_map(&q, &crate::graded::GradedMap::identity(tsb.basis().clone())));
    }

    #[test]
    fn bidegree_accessor() {
        let q = CoefficientRing::Rationals;
        let span = loop_span(q, 8);
        let tsb = span.bar_complex(5, &CellBudget::default()).unwrap();
        let unit = tsb.unit_cell();
        assert_eq!(tsb.view.bidegrees_of(unit), (0, 0));
    }
}
