use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dga::{check_homotopy, AlgebraMorphism, DgAlgebra, DgaHomotopy, MultRule};
use crate::error::{Error, Result};
use crate::graded::{ChainComplex, GradedBasis, GradedMap, TensorBasis};
use crate::linalg::{Scalar, SparseVec, VecBuilder};

/// The n-fold fiber power I ×_𝕜 ⋯ ×_𝕜 I of the interval algebra: the naive
/// path object of the base ring. Its basis is q₀, …, q_n in degree 0 and
/// e₀, …, e_{n−1} in degree 1, with q₀ = (v₀,0,…), qₖ = (…,v₁,v₀,…),
/// eₖ = e in slot k.
struct FiberPower {
    n: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Slot {
    Zero,
    V0,
    V1,
    E,
}

impl FiberPower {
    fn len(&self) -> usize {
        2 * self.n + 1
    }

    fn degree(&self, i: usize) -> usize {
        if i <= self.n {
            0
        } else {
            1
        }
    }

    fn name(&self, i: usize) -> String {
        if self.n == 1 {
            // classic path-object names
            match i {
                0 => "v0".into(),
                1 => "v1".into(),
                _ => "e".into(),
            }
        } else if i <= self.n {
            format!("q{i}")
        } else {
            format!("e{}", i - self.n - 1)
        }
    }

    /// Content of one slot of a basis element.
    fn slot(&self, elem: usize, slot: usize) -> Slot {
        if elem <= self.n {
            // qₖ = v₁ in slot k−1, v₀ in slot k
            if elem >= 1 && slot == elem - 1 {
                Slot::V1
            } else if elem < self.n && slot == elem {
                Slot::V0
            } else {
                Slot::Zero
            }
        } else {
            let k = elem - self.n - 1;
            if slot == k {
                Slot::E
            } else {
                Slot::Zero
            }
        }
    }

    /// Decompose a slot-wise description back into basis coefficients;
    /// `None` when the description violates the fiber conditions.
    fn decompose(&self, slots: &[(Scalar, Scalar, Scalar)]) -> Option<Vec<(usize, Scalar)>> {
        // slots[k] = (coeff of v0, coeff of v1, coeff of e) in slot k
        let mut out = Vec::new();
        // qₖ coefficient: v0-part of slot k (k < n) and v1-part of slot k−1
        for k in 0..=self.n {
            let from_v0 = if k < self.n { Some(&slots[k].0) } else { None };
            let from_v1 = if k >= 1 { Some(&slots[k - 1].1) } else { None };
            let c = match (from_v0, from_v1) {
                (Some(a), Some(b)) => {
                    if a != b {
                        return None;
                    }
                    a.clone()
                }
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            if !c.is_zero() {
                out.push((k, c));
            }
        }
        for k in 0..self.n {
            let c = slots[k].2.clone();
            if !c.is_zero() {
                out.push((self.n + 1 + k, c));
            }
        }
        Some(out)
    }

    /// Slot-wise product of two basis elements in the fiber power.
    fn mult(&self, a: usize, b: usize) -> Vec<(usize, Scalar)> {
        let mut slots = vec![(Scalar::ZERO, Scalar::ZERO, Scalar::ZERO); self.n];
        for k in 0..self.n {
            let p = interval_mult(self.slot(a, k), self.slot(b, k));
            match p {
                Slot::Zero => {}
                Slot::V0 => slots[k].0 = Scalar::ONE,
                Slot::V1 => slots[k].1 = Scalar::ONE,
                Slot::E => slots[k].2 = Scalar::ONE,
            }
        }
        self.decompose(&slots)
            .expect("fiber power is closed under multiplication")
    }

    /// d on a basis element, slot-wise (dv₁ = e = −dv₀).
    fn differential(&self, a: usize) -> Vec<(usize, i64)> {
        let mut out = Vec::new();
        if a <= self.n {
            // dqₖ = e_{k−1} − e_k
            if a >= 1 {
                out.push((self.n + 1 + (a - 1), 1i64));
            }
            if a < self.n {
                out.push((self.n + 1 + a, -1i64));
            }
        }
        out
    }
}

fn interval_mult(a: Slot, b: Slot) -> Slot {
    use Slot::*;
    match (a, b) {
        (V0, V0) => V0,
        (V1, V1) => V1,
        (V0, E) => E,
        (E, V1) => E,
        _ => Zero,
    }
}

/// A path-type object 𝕜 ⊕ (I^{×n} ⊗ Ā): the standard path object for n = 1,
/// the double- and triple-path objects for n = 2, 3. Comes with the n + 1
/// projections to the base.
pub struct MultiPath {
    pub base: Arc<DgAlgebra>,
    pub algebra: Arc<DgAlgebra>,
    pub slots: usize,
    pub unit_elem: usize,
    fiber: FiberPower,
    pairs: Vec<Option<(usize, usize)>>,
    pair_index: BTreeMap<(usize, usize), usize>,
}

pub fn multi_path(a: &Arc<DgAlgebra>, slots: usize) -> MultiPath {
    assert!(slots >= 1);
    let ring = a.ring;
    let cutoff = a.cutoff();
    let fiber = FiberPower { n: slots };
    let mut raw = vec![("1".to_string(), 0usize)];
    let mut pair_list: Vec<Option<(usize, usize)>> = vec![None];
    for g in 0..fiber.len() {
        for i in a.reduced() {
            let deg = fiber.degree(g) + a.basis().degree(i);
            if deg <= cutoff {
                raw.push((format!("{}⊗{}", fiber.name(g), a.basis().name(i)), deg));
                pair_list.push(Some((g, i)));
            }
        }
    }
    let basis = GradedBasis::new(cutoff, raw.clone());
    // realign payload with the degree-sorted basis
    let mut pairs: Vec<Option<(usize, usize)>> = vec![None; raw.len()];
    let mut pair_index = BTreeMap::new();
    for (k, (name, _)) in raw.iter().enumerate() {
        let idx = basis.index_of(name).unwrap();
        pairs[idx] = pair_list[k];
        if let Some(p) = pair_list[k] {
            pair_index.insert(p, idx);
        }
    }
    let unit_elem = basis.index_of("1").unwrap();

    // differential: d(g ⊗ x) = dg ⊗ x + (−1)^{|g|} g ⊗ dx
    let d_cols: Vec<SparseVec> = (0..basis.len())
        .map(|idx| {
            let Some((g, x)) = pairs[idx] else {
                return Vec::new();
            };
            let mut acc = VecBuilder::new();
            for (g2, c) in fiber.differential(g) {
                if let Some(&t) = pair_index.get(&(g2, x)) {
                    acc.add(&ring, t, ring.from_i64(c));
                }
            }
            let sign = if fiber.degree(g) % 2 == 1 {
                ring.from_i64(-1)
            } else {
                Scalar::ONE
            };
            for (x2, c) in a.d().column(x) {
                if let Some(&t) = pair_index.get(&(g, *x2)) {
                    acc.add(&ring, t, ring.mul(c, &sign));
                }
            }
            acc.build()
        })
        .collect();
    let d = GradedMap::from_columns(basis.clone(), basis.clone(), 1, d_cols);
    let complex = ChainComplex::new(basis.clone(), d);

    let mult: MultRule = {
        let pairs = pairs.clone();
        let pair_index = pair_index.clone();
        let a = a.clone();
        let n = slots;
        Arc::new(move |i: usize, j: usize| -> SparseVec {
            let fiber = FiberPower { n };
            match (pairs[i], pairs[j]) {
                (None, None) => vec![(
                    // unit index is position of "1": recover via pair_index miss
                    i,
                    Scalar::ONE,
                )],
                (None, Some(_)) => vec![(j, Scalar::ONE)],
                (Some(_), None) => vec![(i, Scalar::ONE)],
                (Some((g, x)), Some((h, y))) => {
                    let sign = if a.basis().degree(x) % 2 == 1 && fiber.degree(h) % 2 == 1 {
                        -1i64
                    } else {
                        1
                    };
                    let gh = fiber.mult(g, h);
                    let xy = a.mult_basis(x, y);
                    let sign = a.ring.from_i64(sign);
                    let mut acc = VecBuilder::new();
                    for (g2, cg) in &gh {
                        for (x2, cx) in &xy {
                            if let Some(&t) = pair_index.get(&(*g2, *x2)) {
                                let c = a.ring.mul(&a.ring.mul(cg, &sign), cx);
                                acc.add(&a.ring, t, c);
                            }
                        }
                    }
                    acc.build()
                }
            }
        })
    };
    let algebra = Arc::new(DgAlgebra {
        ring,
        complex,
        mult,
        unit: vec![(unit_elem, Scalar::ONE)],
        aug_index: unit_elem,
        label: format!(
            "P{}({})",
            if slots > 1 {
                slots.to_string()
            } else {
                String::new()
            },
            a.label
        ),
    });
    MultiPath {
        base: a.clone(),
        algebra,
        slots,
        unit_elem,
        fiber,
        pairs,
        pair_index,
    }
}

impl MultiPath {
    pub fn basis(&self) -> &Arc<GradedBasis> {
        self.algebra.basis()
    }

    /// Basis index of (fiber element g) ⊗ (base element x).
    pub fn index_of(&self, g: usize, x: usize) -> Option<usize> {
        self.pair_index.get(&(g, x)).copied()
    }

    pub fn payload(&self, idx: usize) -> Option<(usize, usize)> {
        self.pairs[idx]
    }

    /// The k-th endpoint projection to the base, 0 ≤ k ≤ slots: kills all
    /// fiber elements except q_k.
    pub fn projection(&self, k: usize) -> AlgebraMorphism {
        assert!(k <= self.slots);
        let cols = (0..self.basis().len())
            .map(|idx| match self.pairs[idx] {
                None => self.base.unit.clone(),
                Some((g, x)) => {
                    if g == k {
                        vec![(x, Scalar::ONE)]
                    } else {
                        Vec::new()
                    }
                }
            })
            .collect();
        let map = GradedMap::from_columns(self.basis().clone(), self.base.basis().clone(), 0, cols);
        AlgebraMorphism::new(self.algebra.clone(), self.base.clone(), map)
    }

    /// Restriction to one slot, landing in a single path object over the same
    /// base: q_k ↦ v₀ or v₁ according to the slot content, e_k ↦ e.
    pub fn slot_restriction(&self, slot: usize, target: &MultiPath) -> AlgebraMorphism {
        assert!(slot < self.slots);
        assert_eq!(target.slots, 1);
        let cols = (0..self.basis().len())
            .map(|idx| match self.pairs[idx] {
                None => vec![(target.unit_elem, Scalar::ONE)],
                Some((g, x)) => {
                    let t = match self.fiber.slot(g, slot) {
                        Slot::Zero => None,
                        Slot::V0 => target.index_of(0, x),
                        Slot::V1 => target.index_of(1, x),
                        Slot::E => target.index_of(2, x),
                    };
                    t.map(|t| vec![(t, Scalar::ONE)]).unwrap_or_default()
                }
            })
            .collect();
        let map = GradedMap::from_columns(self.basis().clone(), target.basis().clone(), 0, cols);
        AlgebraMorphism::new(self.algebra.clone(), target.algebra.clone(), map)
    }
}

/// The standard path object P A = 𝕜 ⊕ (I ⊗ Ā) with projections π₀, π₁.
///
/// The unit line is spanned by (v₀ + v₁) ⊗ 1 alone. Folding e ⊗ 1 into the
/// carrier instead would create a spurious degree-1 cohomology class once v₀
/// and v₁ are merged, so it is deliberately absent: H(P A) ≅ H(A).
pub fn path_object(a: &Arc<DgAlgebra>) -> MultiPath {
    multi_path(a, 1)
}

/// The double-path object D A = P A ×_A P A.
pub fn double_path(a: &Arc<DgAlgebra>) -> MultiPath {
    multi_path(a, 2)
}

/// The triple-path object T A.
pub fn triple_path(a: &Arc<DgAlgebra>) -> MultiPath {
    multi_path(a, 3)
}

/// The section ζ: A → P A, a ↦ (v₀ + v₁) ⊗ a, with π_j ∘ ζ = id.
pub fn zeta(p: &MultiPath) -> AlgebraMorphism {
    assert_eq!(p.slots, 1);
    let a = &p.base;
    let cols = (0..a.basis().len())
        .map(|i| {
            if i == a.aug_index {
                vec![(p.unit_elem, Scalar::ONE)]
            } else {
                let mut out = Vec::new();
                if let Some(t) = p.index_of(0, i) {
                    out.push((t, Scalar::ONE));
                }
                if let Some(t) = p.index_of(1, i) {
                    out.push((t, Scalar::ONE));
                }
                out.sort_by_key(|(t, _)| *t);
                out
            }
        })
        .collect();
    let map = GradedMap::from_columns(a.basis().clone(), p.basis().clone(), 0, cols);
    AlgebraMorphism::new(a.clone(), p.algebra.clone(), map)
}

/// Realize a DGA homotopy as a DGA map into the path object:
/// a ↦ v₀ ⊗ f₀(a) − e ⊗ h(a) + v₁ ⊗ f₁(a).
pub fn right_homotopy(h: &DgaHomotopy, p: &MultiPath) -> Result<AlgebraMorphism> {
    assert_eq!(p.slots, 1);
    let report = check_homotopy(h);
    if !report.is_valid() {
        return Err(Error::InvalidHomotopy {
            reason: format!("{:?}", report.failures),
        });
    }
    let src = &h.f0.source;
    let ring = src.ring;
    let cols = (0..src.basis().len())
        .map(|i| {
            if i == src.aug_index {
                return vec![(p.unit_elem, Scalar::ONE)];
            }
            let mut acc = VecBuilder::new();
            for (x, c) in h.f0.map.column(i) {
                if let Some(t) = p.index_of(0, *x) {
                    acc.add(&ring, t, c.clone());
                }
            }
            for (x, c) in h.h.column(i) {
                if let Some(t) = p.index_of(2, *x) {
                    acc.add(&ring, t, ring.neg(c));
                }
            }
            for (x, c) in h.f1.map.column(i) {
                if let Some(t) = p.index_of(1, *x) {
                    acc.add(&ring, t, c.clone());
                }
            }
            acc.build()
        })
        .collect();
    let map = GradedMap::from_columns(src.basis().clone(), p.basis().clone(), 0, cols);
    Ok(AlgebraMorphism::new(src.clone(), p.algebra.clone(), map))
}

/// Combine right homotopies with matching middle endpoints into a map to the
/// multi-path object (the universal property of the fiber product).
pub fn combine_into_multi_path(
    legs: &[&AlgebraMorphism],
    paths: &[&MultiPath],
    target: &MultiPath,
) -> Result<AlgebraMorphism> {
    assert_eq!(legs.len(), target.slots);
    assert!(paths.iter().all(|p| p.slots == 1));
    let src = &legs[0].source;
    let ring = src.ring;
    let n = target.slots;
    let cols: Result<Vec<SparseVec>> = (0..src.basis().len())
        .map(|i| {
            if i == src.aug_index {
                return Ok(vec![(target.unit_elem, Scalar::ONE)]);
            }
            // slot-wise content per base element of A
            let mut slot_data: BTreeMap<usize, Vec<(Scalar, Scalar, Scalar)>> = BTreeMap::new();
            let mut unit_parts: Vec<Scalar> = vec![Scalar::ZERO; n];
            for (k, leg) in legs.iter().enumerate() {
                for (idx, c) in leg.map.column(i) {
                    match paths[k].payload(*idx) {
                        None => {
                            unit_parts[k] = ring.add(&unit_parts[k], c);
                        }
                        Some((g, x)) => {
                            let entry = slot_data.entry(x).or_insert_with(|| {
                                vec![(Scalar::ZERO, Scalar::ZERO, Scalar::ZERO); n]
                            });
                            let cell = match g {
                                0 => &mut entry[k].0,
                                1 => &mut entry[k].1,
                                _ => &mut entry[k].2,
                            };
                            *cell = ring.add(cell, c);
                        }
                    }
                }
            }
            if unit_parts.iter().any(|c| !c.is_zero()) {
                return Err(Error::EndpointMismatch);
            }
            let mut acc = VecBuilder::new();
            for (x, slots) in slot_data {
                let Some(decomp) = target.fiber.decompose(&slots) else {
                    return Err(Error::EndpointMismatch);
                };
                for (g, c) in decomp {
                    if let Some(t) = target.index_of(g, x) {
                        acc.add(&ring, t, c);
                    }
                }
            }
            Ok(acc.build())
        })
        .collect();
    let map = GradedMap::from_columns(src.basis().clone(), target.basis().clone(), 0, cols?);
    Ok(AlgebraMorphism::new(
        src.clone(),
        target.algebra.clone(),
        map,
    ))
}

/// The natural map r: P A ⊗ P A → D(A ⊗ A) with p₀ r = π₀ ⊗ π₀ and
/// p₁ r = π₁ ⊗ π₁, realized by the quotient assignment
/// v₀⊗v₀ ↦ (v₀,0), e⊗v₀ ↦ (e,0), v₁⊗v₀ ↦ (v₁,v₀), v₁⊗e ↦ (0,e),
/// v₁⊗v₁ ↦ (0,v₁), annihilating v₀⊗e, v₀⊗v₁, e⊗e, e⊗v₁.
pub fn square_to_double(
    pa: &MultiPath,
    pa_square: &TensorBasis,
    pa_square_algebra: &Arc<DgAlgebra>,
    a_square: &TensorBasis,
    target: &MultiPath,
) -> AlgebraMorphism {
    assert_eq!(pa.slots, 1);
    assert_eq!(target.slots, 2);
    let ring = pa.base.ring;
    // r^I in fiber coordinates: (i₁, i₂) ↦ fiber-2 element
    // PA fiber elements: 0 = v0, 1 = v1, 2 = e; D fiber: q0,q1,q2,e0,e1
    let r_i = |i1: usize, i2: usize| -> Option<usize> {
        match (i1, i2) {
            (0, 0) => Some(0), // v0⊗v0 ↦ q0
            (2, 0) => Some(3), // e⊗v0 ↦ e0
            (1, 0) => Some(1), // v1⊗v0 ↦ q1
            (1, 2) => Some(4), // v1⊗e ↦ e1
            (1, 1) => Some(2), // v1⊗v1 ↦ q2
            _ => None,
        }
    };
    // atoms of a PA basis element: (fiber elem, base elem, coeff)
    let atoms = |idx: usize| -> Vec<(usize, usize, Scalar)> {
        match pa.payload(idx) {
            Some((g, x)) => vec![(g, x, Scalar::ONE)],
            None => {
                let mut out = Vec::new();
                for (u, c) in &pa.base.unit {
                    out.push((0, *u, c.clone()));
                    out.push((1, *u, c.clone()));
                }
                out
            }
        }
    };
    let aug_pair = a_square
        .index_of(pa.base.aug_index, pa.base.aug_index)
        .expect("augmentation pair");
    let cols = (0..pa_square.basis.len())
        .map(|k| {
            let (p, q) = pa_square.pair(k);
            let mut acc = VecBuilder::new();
            let mut unit_line: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (i1, a, c1) in atoms(p) {
                for (i2, b, c2) in atoms(q) {
                    let Some(g2) = r_i(i1, i2) else { continue };
                    let Some(ab) = a_square.index_of(a, b) else {
                        continue;
                    };
                    let mut c = ring.mul(&c1, &c2);
                    // Koszul: move i₂ past a
                    let deg_i2 = if i2 == 2 { 1 } else { 0 };
                    if deg_i2 == 1 && pa.base.basis().degree(a) % 2 == 1 {
                        c = ring.neg(&c);
                    }
                    if ab == aug_pair {
                        let old = unit_line.remove(&g2).unwrap_or(Scalar::ZERO);
                        let s = ring.add(&old, &c);
                        if !s.is_zero() {
                            unit_line.insert(g2, s);
                        }
                    } else if let Some(t) = target.index_of(g2, ab) {
                        acc.add(&ring, t, c);
                    }
                }
            }
            // whatever lands on the 1⊗1 line must be a multiple of the unit
            if !unit_line.is_empty() {
                let c0 = unit_line.get(&0).cloned().unwrap_or(Scalar::ZERO);
                for g in [0usize, 1, 2] {
                    assert_eq!(
                        unit_line.get(&g).cloned().unwrap_or(Scalar::ZERO),
                        c0,
                        "unit line is not a multiple of the double-path unit"
                    );
                }
                for g in [3usize, 4] {
                    assert!(unit_line.get(&g).is_none());
                }
                acc.add(&ring, target.unit_elem, c0);
            }
            acc.build()
        })
        .collect();
    let map = GradedMap::from_columns(pa_square.basis.clone(), target.basis().clone(), 0, cols);
    AlgebraMorphism::new(pa_square_algebra.clone(), target.algebra.clone(), map)
}
