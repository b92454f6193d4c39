//! The named fixtures: the engine's worked examples, doubling as acceptance
//! harness and documentation.

use dgtor_core::dga::GcaGenerator;
use dgtor_core::linalg::CoefficientRing;

use crate::spec::{default_outputs, Output, SpanSpec};

pub struct FixtureInfo {
    pub name: &'static str,
    pub description: &'static str,
}

pub fn list_fixtures() -> Vec<FixtureInfo> {
    vec![
        FixtureInfo {
            name: "loop_cp_infty",
            description: "based loops on CP^∞: Tor_{k[x2]}(k, k) = Λ[u1]",
        },
        FixtureInfo {
            name: "free_loop_cp_infty",
            description: "free loops on CP^∞: the diagonal span over k[x]⊗k[x]",
        },
        FixtureInfo {
            name: "su4_u1",
            description: "Borel cohomology of SU(4)/U(1) with weights (−3,1,1,1), over Z (use --ring F2 for the mod-2 table)",
        },
        FixtureInfo {
            name: "cyclic_group(n)",
            description: "group cohomology of Z/n from the presentation span Z[u2] → Z[v2], u ↦ n·v",
        },
        FixtureInfo {
            name: "rp_infinity_f2",
            description: "loops on K(Z/2,2) over F2: additively F2[i1], multiplicatively exterior",
        },
        FixtureInfo {
            name: "random_poly_span(seed)",
            description: "randomized polynomial span over F2/F3/F5 for the oracle-equivalence suite",
        },
    ]
}

/// Expand a fixture name (with optional parenthesized argument) into a spec.
pub fn fixture(name: &str) -> Option<SpanSpec> {
    let (head, arg) = match name.find('(') {
        Some(i) => {
            let inner = name[i + 1..].strip_suffix(')')?;
            (&name[..i], Some(inner))
        }
        None => (name, None),
    };
    match (head, arg) {
        ("loop_cp_infty", None) => Some(loop_cp_infty()),
        ("free_loop_cp_infty", None) => Some(free_loop_cp_infty()),
        ("su4_u1", None) => Some(su4_u1()),
        ("cyclic_group", Some(n)) => {
            let n: u64 = n.trim().parse().ok()?;
            if n < 2 {
                return None;
            }
            Some(cyclic_group(n))
        }
        ("rp_infinity_f2", None) => Some(rp_infinity_f2()),
        ("random_poly_span", Some(seed)) => {
            let seed: u64 = seed.trim().parse().ok()?;
            Some(random_poly_span(seed))
        }
        _ => None,
    }
}

pub fn loop_cp_infty() -> SpanSpec {
    SpanSpec {
        name: "loop_cp_infty".into(),
        ring: CoefficientRing::Rationals,
        max_degree: 12,
        outputs: with_products(),
        base: vec![GcaGenerator::new("x", 2)],
        left: vec![],
        right: vec![],
        left_map: vec![("x".into(), "0".into())],
        right_map: vec![("x".into(), "0".into())],
        char2_hypotheses_asserted: false,
    }
}

pub fn free_loop_cp_infty() -> SpanSpec {
    SpanSpec {
        name: "free_loop_cp_infty".into(),
        ring: CoefficientRing::Rationals,
        max_degree: 12,
        outputs: with_products(),
        base: vec![GcaGenerator::new("x1", 2), GcaGenerator::new("x2", 2)],
        left: vec![GcaGenerator::new("x", 2)],
        right: vec![GcaGenerator::new("x", 2)],
        left_map: vec![("x1".into(), "x".into()), ("x2".into(), "x".into())],
        right_map: vec![("x1".into(), "x".into()), ("x2".into(), "x".into())],
        char2_hypotheses_asserted: false,
    }
}

pub fn su4_u1() -> SpanSpec {
    // H(BSU(4)) = Z[c2, c3, c4] restricting to H(BU(1)) = Z[t] through the
    // elementary symmetric polynomials of the weights (−3, 1, 1, 1)
    SpanSpec {
        name: "su4_u1".into(),
        ring: CoefficientRing::Integers,
        max_degree: 16,
        outputs: with_products(),
        base: vec![
            GcaGenerator::new("c2", 4),
            GcaGenerator::new("c3", 6),
            GcaGenerator::new("c4", 8),
        ],
        left: vec![],
        right: vec![GcaGenerator::new("t", 2)],
        left_map: vec![
            ("c2".into(), "0".into()),
            ("c3".into(), "0".into()),
            ("c4".into(), "0".into()),
        ],
        right_map: vec![
            ("c2".into(), "-6*t^2".into()),
            ("c3".into(), "-8*t^3".into()),
            ("c4".into(), "-3*t^4".into()),
        ],
        char2_hypotheses_asserted: false,
    }
}

pub fn cyclic_group(n: u64) -> SpanSpec {
    SpanSpec {
        name: format!("cyclic_group({n})"),
        ring: CoefficientRing::Integers,
        max_degree: 12,
        outputs: with_products(),
        base: vec![GcaGenerator::new("u", 2)],
        left: vec![],
        right: vec![GcaGenerator::new("v", 2)],
        left_map: vec![("u".into(), "0".into())],
        right_map: vec![("u".into(), format!("{n}*v"))],
        char2_hypotheses_asserted: false,
    }
}

pub fn rp_infinity_f2() -> SpanSpec {
    // H(K(Z/2,2); F2) is polynomial on the fundamental class and its
    // iterated Sq-squares; the cup-one hypothesis genuinely fails here,
    // which is the point of the fixture
    SpanSpec {
        name: "rp_infinity_f2".into(),
        ring: CoefficientRing::PrimeField(2),
        max_degree: 15,
        outputs: with_products(),
        base: vec![
            GcaGenerator::new("i2", 2),
            GcaGenerator::polynomial("x3", 3),
            GcaGenerator::polynomial("x5", 5),
            GcaGenerator::polynomial("x9", 9),
        ],
        left: vec![],
        right: vec![],
        left_map: vec![
            ("i2".into(), "0".into()),
            ("x3".into(), "0".into()),
            ("x5".into(), "0".into()),
            ("x9".into(), "0".into()),
        ],
        right_map: vec![
            ("i2".into(), "0".into()),
            ("x3".into(), "0".into()),
            ("x5".into(), "0".into()),
            ("x9".into(), "0".into()),
        ],
        char2_hypotheses_asserted: false,
    }
}

/// Deterministic xorshift generator for the randomized spans.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// A random polynomial span over F2/F3/F5: up to three base generators of
/// degree 2 or 4, small polynomial modules, random homogeneous images.
pub fn random_poly_span(seed: u64) -> SpanSpec {
    let mut rng = SplitMix(seed.wrapping_mul(2654435761).wrapping_add(1));
    let p = [2u64, 3, 5][rng.below(3) as usize];
    let ring = CoefficientRing::PrimeField(p);
    let n_base = 1 + rng.below(3) as usize;
    let base: Vec<GcaGenerator> = (0..n_base)
        .map(|i| GcaGenerator::new(format!("a{i}"), if rng.below(2) == 0 { 2 } else { 4 }))
        .collect();
    let make_module = |rng: &mut SplitMix, prefix: &str| -> Vec<GcaGenerator> {
        let n = rng.below(3) as usize; // 0..=2 generators
        (0..n)
            .map(|i| {
                GcaGenerator::new(
                    format!("{prefix}{i}"),
                    if rng.below(2) == 0 { 2 } else { 4 },
                )
            })
            .collect()
    };
    let left = make_module(&mut rng, "x");
    let right = make_module(&mut rng, "y");
    // random homogeneous image of one degree in the target generators
    let image = |rng: &mut SplitMix, degree: usize, gens: &[GcaGenerator]| -> String {
        // monomials of the requested degree over gens of degree 2/4
        let mut monos: Vec<Vec<usize>> = Vec::new();
        fn rec(
            gens: &[GcaGenerator],
            pos: usize,
            left: usize,
            current: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if pos == gens.len() {
                if left == 0 {
                    out.push(current.clone());
                }
                return;
            }
            let d = gens[pos].degree;
            let max = left / d;
            for e in 0..=max {
                current.push(e);
                rec(gens, pos + 1, left - e * d, current, out);
                current.pop();
            }
        }
        rec(gens, 0, degree, &mut Vec::new(), &mut monos);
        let mut terms = Vec::new();
        for m in &monos {
            let c = rng.below(p);
            if c == 0 {
                continue;
            }
            let mut factors = vec![c.to_string()];
            for (gi, e) in m.iter().enumerate() {
                for _ in 0..*e {
                    factors.push(gens[gi].name.clone());
                }
            }
            terms.push(factors.join("*"));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    };
    let left_map: Vec<(String, String)> = base
        .iter()
        .map(|g| (g.name.clone(), image(&mut rng, g.degree, &left)))
        .collect();
    let right_map: Vec<(String, String)> = base
        .iter()
        .map(|g| (g.name.clone(), image(&mut rng, g.degree, &right)))
        .collect();
    SpanSpec {
        name: format!("random_poly_span({seed})"),
        ring,
        max_degree: 10,
        outputs: {
            let mut o = default_outputs();
            o.insert(Output::OracleCheck);
            o
        },
        base,
        left,
        right,
        left_map,
        right_map,
        char2_hypotheses_asserted: false,
    }
}

fn with_products() -> std::collections::BTreeSet<Output> {
    let mut o = default_outputs();
    o.insert(Output::Products);
    o
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_contains_su4() {
        assert!(list_fixtures().iter().any(|f| f.name == "su4_u1"));
        assert!(fixture("su4_u1").is_some());
    }

    #[test]
    fn cyclic_group_two_expands_to_the_doubling_span() {
        let spec = fixture("cyclic_group(2)").unwrap();
        assert_eq!(spec.base[0].degree, 2);
        assert_eq!(spec.right_map[0].1, "2*v");
        assert_eq!(spec.ring, CoefficientRing::Integers);
    }

    #[test]
    fn rp_infinity_has_polynomial_odd_generators_over_f2() {
        let spec = fixture("rp_infinity_f2").unwrap();
        assert_eq!(spec.ring, CoefficientRing::PrimeField(2));
        assert!(spec
            .base
            .iter()
            .filter(|g| g.degree % 2 == 1)
            .all(|g| g.polynomial_square));
        assert!(spec.left.is_empty() && spec.right.is_empty());
    }

    #[test]
    fn random_spans_are_deterministic_in_the_seed() {
        let a = random_poly_span(7);
        let b = random_poly_span(7);
        assert_eq!(a, b);
        let c = random_poly_span(8);
        assert!(a != c || a.name != c.name);
    }

    #[test]
    fn fixtures_round_trip_through_the_text_format() {
        for name in [
            "loop_cp_infty",
            "su4_u1",
            "rp_infinity_f2",
            "cyclic_group(3)",
        ] {
            let spec = fixture(name).unwrap();
            let text = crate::spec::emit(&spec);
            let again = crate::spec::parse_spec(&text).unwrap();
            assert_eq!(spec, again, "{name}");
        }
    }
}
