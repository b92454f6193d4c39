//! Validity checkers for the three homotopy notions: DGA homotopies, DGC
//! homotopies, and twisting-cochain homotopies. The checkers are diagnostics:
//! they report which axioms fail and on which basis element.

use crate::graded::{GradedBasis, GradedMap};
use crate::linalg::{Scalar, VecBuilder};

use super::algebra::{cup, hom_differential, DgAlgebra, DgCoalgebra};
use super::morphism::{AlgebraMorphism, CoalgebraMorphism};

/// A candidate DGA homotopy h: f₀ ≃ f₁ of degree −1.
#[derive(Clone)]
pub struct DgaHomotopy {
    pub f0: AlgebraMorphism,
    pub f1: AlgebraMorphism,
    pub h: GradedMap,
}

impl DgaHomotopy {
    pub fn constant(f: &AlgebraMorphism) -> Self {
        DgaHomotopy {
            f0: f.clone(),
            f1: f.clone(),
            h: GradedMap::zero(f.source.basis().clone(), f.target.basis().clone(), -1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyReport {
    /// (failed condition, witness basis element)
    pub failures: Vec<(String, String)>,
}

impl HomotopyReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check the four DGA homotopy axioms:
/// ε h = 0, h η = 0, d(h) = f₀ − f₁, h μ = μ(f₀ ⊗ h + h ⊗ f₁).
pub fn check_homotopy(cand: &DgaHomotopy) -> HomotopyReport {
    let src = &cand.f0.source;
    let tgt = &cand.f0.target;
    let ring = &src.ring;
    let basis = src.basis();
    let mut failures = Vec::new();

    // ε_A h = 0
    for (i, _) in basis.iter() {
        if !tgt.aug_of(cand.h.column(i)).is_zero() {
            failures.push(("ε∘h = 0".to_string(), basis.name(i).to_string()));
            break;
        }
    }
    // h η = 0
    if !cand.h.apply(ring, &src.unit).is_empty() {
        failures.push(("h∘η = 0".to_string(), "1".to_string()));
    }
    // d(h) = f0 − f1, away from the truncation boundary (h∘d needs the
    // source differential to be fully tracked)
    let dh = hom_differential(ring, &cand.h, src.d(), tgt.d());
    let want = cand.f0.map.sub(ring, &cand.f1.map);
    let diff = dh.sub(ring, &want);
    for (i, e) in basis.iter() {
        if e.degree + 1 <= basis.cutoff && !diff.column(i).is_empty() {
            failures.push(("d(h) = f₀ − f₁".to_string(), basis.name(i).to_string()));
            break;
        }
    }
    // h(ab) = (−1)^{|a|} f0(a)·h(b) + h(a)·f1(b)
    'outer: for (i, ei) in basis.iter() {
        for (j, ej) in basis.iter() {
            if ei.degree + ej.degree > basis.cutoff {
                continue;
            }
            let lhs = cand.h.apply(ring, &src.mult_basis(i, j));
            let sign = if ei.degree % 2 == 1 {
                ring.from_i64(-1)
            } else {
                Scalar::ONE
            };
            let mut rhs = VecBuilder::new();
            rhs.add_vec(
                ring,
                &tgt.mult_vec(cand.f0.map.column(i), cand.h.column(j)),
                &sign,
            );
            rhs.add_vec(
                ring,
                &tgt.mult_vec(cand.h.column(i), cand.f1.map.column(j)),
                &Scalar::ONE,
            );
            if lhs != rhs.build() {
                failures.push((
                    "h∘μ = μ(f₀⊗h + h⊗f₁)".to_string(),
                    format!("{}·{}", basis.name(i), basis.name(j)),
                ));
                break 'outer;
            }
        }
    }
    HomotopyReport { failures }
}

/// Check the DGC homotopy axioms for j: g₀ ≃ g₁:
/// ε j = 0, j η = 0, d(j) = g₁ − g₀, Δ j = (g₀ ⊗ j + j ⊗ g₁) Δ.
pub fn check_dgc_homotopy(
    j: &GradedMap,
    g0: &CoalgebraMorphism,
    g1: &CoalgebraMorphism,
) -> HomotopyReport {
    let src = &g0.source;
    let tgt = &g0.target;
    let ring = &src.ring;
    let basis = src.basis();
    let mut failures = Vec::new();
    assert_eq!(j.degree, -1);

    for (i, _) in basis.iter() {
        if !tgt.counit_of(j.column(i)).is_zero() {
            failures.push(("ε∘j = 0".to_string(), basis.name(i).to_string()));
            break;
        }
    }
    if !j.column(src.unit_index).is_empty() {
        failures.push(("j∘η = 0".to_string(), "1".to_string()));
    }
    let dj = hom_differential(ring, j, src.d(), tgt.d());
    let want = g1.map.sub(ring, &g0.map);
    let diff = dj.sub(ring, &want);
    for (i, e) in basis.iter() {
        if e.degree + 1 <= basis.cutoff && !diff.column(i).is_empty() {
            failures.push(("d(j) = g₁ − g₀".to_string(), basis.name(i).to_string()));
            break;
        }
    }
    // Δ_{C'} j = (g0 ⊗ j + j ⊗ g1) Δ_C
    'outer: for (i, _) in basis.iter() {
        let mut lhs: std::collections::BTreeMap<(usize, usize), Scalar> = Default::default();
        for (k, c) in j.column(i) {
            for (l, r, c2) in tgt.comult_basis(*k) {
                add_pair(ring, &mut lhs, (l, r), ring.mul(c, &c2));
            }
        }
        let mut rhs: std::collections::BTreeMap<(usize, usize), Scalar> = Default::default();
        for (l, r, c) in src.comult_basis(i) {
            // (g0 ⊗ j)(l⊗r) = (−1)^{|l|} g0(l) ⊗ j(r)
            let sign = if src.basis().degree(l) % 2 == 1 {
                ring.from_i64(-1)
            } else {
                Scalar::ONE
            };
            for (a, ca) in g0.map.column(l) {
                for (b, cb) in j.column(r) {
                    let v = ring.mul(&ring.mul(&c, &sign), &ring.mul(ca, cb));
                    add_pair(ring, &mut rhs, (*a, *b), v);
                }
            }
            for (a, ca) in j.column(l) {
                for (b, cb) in g1.map.column(r) {
                    let v = ring.mul(&c, &ring.mul(ca, cb));
                    add_pair(ring, &mut rhs, (*a, *b), v);
                }
            }
        }
        if lhs != rhs {
            failures.push((
                "Δ∘j = (g₀⊗j + j⊗g₁)∘Δ".to_string(),
                basis.name(i).to_string(),
            ));
            break 'outer;
        }
    }
    HomotopyReport { failures }
}

/// Check the twisting-cochain homotopy axioms for x: t₀ ≃ t₁:
/// ε x = ε, x η = η, d(x) = t₀ ∪ x − x ∪ t₁.
pub fn check_tc_homotopy(
    coalg: &DgCoalgebra,
    alg: &DgAlgebra,
    x: &GradedMap,
    t0: &GradedMap,
    t1: &GradedMap,
) -> HomotopyReport {
    let ring = &coalg.ring;
    let basis = coalg.basis();
    let mut failures = Vec::new();
    assert_eq!(x.degree, 0);
    assert!(GradedBasis::same(&x.source, basis));

    // ε_A x = ε_C
    for (i, _) in basis.iter() {
        let got = alg.aug_of(x.column(i));
        let want = if i == coalg.unit_index {
            Scalar::ONE
        } else {
            Scalar::ZERO
        };
        if got != want {
            failures.push(("ε∘x = ε".to_string(), basis.name(i).to_string()));
            break;
        }
    }
    // x η_C = η_A
    if x.column(coalg.unit_index) != &alg.unit {
        failures.push(("x∘η = η".to_string(), "1".to_string()));
    }
    let dx = hom_differential(ring, x, coalg.d(), alg.d());
    let want = cup(ring, coalg, alg, t0, x).sub(ring, &cup(ring, coalg, alg, x, t1));
    let diff = dx.sub(ring, &want);
    for (i, e) in basis.iter() {
        if e.degree + 1 <= basis.cutoff
            && e.degree + 1 <= alg.basis().cutoff
            && !diff.column(i).is_empty()
        {
            failures.push(("d(x) = t₀∪x − x∪t₁".to_string(), basis.name(i).to_string()));
            break;
        }
    }
    HomotopyReport { failures }
}

fn add_pair(
    ring: &crate::linalg::CoefficientRing,
    map: &mut std::collections::BTreeMap<(usize, usize), Scalar>,
    key: (usize, usize),
    v: Scalar,
) {
    if v.is_zero() {
        return;
    }
    match map.remove(&key) {
        None => {
            map.insert(key, v);
        }
        Some(old) => {
            let s = ring.add(&old, &v);
            if !s.is_zero() {
                map.insert(key, s);
            }
        }
    }
}
