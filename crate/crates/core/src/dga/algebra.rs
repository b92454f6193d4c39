use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{ChainComplex, GradedBasis, GradedMap, TensorBasis};
use crate::linalg::{CoefficientRing, Scalar, SparseVec, VecBuilder};

/// Multiplication on basis elements; bilinear extension is derived.
pub type MultRule = Arc<dyn Fn(usize, usize) -> SparseVec + Send + Sync>;
/// Comultiplication of a basis element as (left, right, coefficient) triples.
pub type ComultRule = Arc<dyn Fn(usize) -> Vec<(usize, usize, Scalar)> + Send + Sync>;

/// An augmented differential graded algebra.
///
/// The augmentation is required to be supported on a single basis element, so
/// the augmentation ideal is spanned by the remaining basis elements. The unit
/// may be any vector with ε(η(1)) = 1 (the interval algebra has η(1) = v₀+v₁).
pub struct DgAlgebra {
    pub ring: CoefficientRing,
    pub complex: ChainComplex,
    pub mult: MultRule,
    pub unit: SparseVec,
    pub aug_index: usize,
    pub label: String,
}

impl std::fmt::Debug for DgAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DgAlgebra({}, dim {})", self.label, self.basis().len())
    }
}

impl DgAlgebra {
    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.complex.basis
    }

    pub fn cutoff(&self) -> usize {
        self.basis().cutoff
    }

    pub fn d(&self) -> &GradedMap {
        &self.complex.d
    }

    pub fn mult_basis(&self, i: usize, j: usize) -> SparseVec {
        (self.mult)(i, j)
    }

    pub fn mult_vec(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc = VecBuilder::new();
        for (i, ci) in a {
            for (j, cj) in b {
                acc.add_vec(&self.ring, &self.mult_basis(*i, *j), &self.ring.mul(ci, cj));
            }
        }
        acc.build()
    }

    pub fn aug_of(&self, v: &SparseVec) -> Scalar {
        v.iter()
            .find(|(i, _)| *i == self.aug_index)
            .map(|(_, c)| c.clone())
            .unwrap_or(Scalar::ZERO)
    }

    /// Indices spanning the augmentation ideal.
    pub fn reduced(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.basis().len()).filter(move |i| *i != self.aug_index)
    }

    pub fn is_connected(&self) -> bool {
        self.basis().dim_in_degree(0) == 1 && self.basis().degree(self.aug_index) == 0
    }

    /// 1-connected: the augmentation ideal sits in degrees ≥ 2.
    pub fn check_one_connected(&self) -> Result<()> {
        if !self.is_connected() {
            return Err(Error::NotOneConnected {
                witness: "degree-0 part is not the base ring".into(),
                degree: 0,
            });
        }
        for i in self.reduced() {
            let d = self.basis().degree(i);
            if d < 2 {
                return Err(Error::NotOneConnected {
                    witness: self.basis().name(i).to_string(),
                    degree: d,
                });
            }
        }
        Ok(())
    }

    /// Full DGA axiom check: d² = 0, Leibniz, associativity, unitality,
    /// ε a map of algebras and complexes, ε∘η = id. Everything is checked on
    /// all tracked tuples (targets within the cutoff).
    pub fn check_axioms(&self) -> Result<()> {
        let ring = &self.ring;
        let basis = self.basis();
        let cutoff = basis.cutoff;
        self.complex.check_d_squared(ring)?;
        // ε is a chain map: ε(dx) = 0
        for (i, _) in basis.iter() {
            if !self.aug_of(self.d().column(i)).is_zero() {
                return Err(Error::NotAChainMap {
                    witness: format!("ε∘d ≠ 0 on {}", basis.name(i)),
                });
            }
        }
        // ε(η(1)) = 1
        if !self.aug_of(&self.unit).is_one() {
            return Err(Error::AxiomFailure {
                reason: "ε∘η ≠ id".into(),
            });
        }
        for (i, ei) in basis.iter() {
            // unitality
            let left = self.mult_vec(&self.unit, &vec![(i, Scalar::ONE)]);
            let right = self.mult_vec(&vec![(i, Scalar::ONE)], &self.unit);
            let this = vec![(i, Scalar::ONE)];
            if left != this || right != this {
                return Err(Error::AxiomFailure {
                    reason: format!("unit fails on {}", basis.name(i)),
                });
            }
            for (j, ej) in basis.iter() {
                if ei.degree + ej.degree > cutoff {
                    continue;
                }
                let ij = self.mult_basis(i, j);
                // ε multiplicative
                let eps = ring.mul(
                    &self.aug_of(&vec![(i, Scalar::ONE)]),
                    &self.aug_of(&vec![(j, Scalar::ONE)]),
                );
                if self.aug_of(&ij) != eps {
                    return Err(Error::AxiomFailure {
                        reason: format!(
                            "ε not multiplicative on {}·{}",
                            basis.name(i),
                            basis.name(j)
                        ),
                    });
                }
                // Leibniz, where the target is still tracked
                if ei.degree + ej.degree + 1 <= cutoff {
                    let mut lhs = self.d().apply(ring, &ij);
                    let da_b = self.mult_vec(&self.d().column(i).clone(), &vec![(j, Scalar::ONE)]);
                    let sign = if ei.degree % 2 == 1 {
                        Scalar::Int(-1)
                    } else {
                        Scalar::ONE
                    };
                    let a_db = self.mult_vec(&vec![(i, Scalar::ONE)], &self.d().column(j).clone());
                    let mut rhs = VecBuilder::new();
                    rhs.add_vec(ring, &da_b, &Scalar::ONE);
                    rhs.add_vec(ring, &a_db, &sign);
                    let rhs = rhs.build();
                    lhs = crate::linalg::vec_add_scaled(ring, &lhs, &rhs, &Scalar::Int(-1));
                    if !lhs.is_empty() {
                        return Err(Error::NotAChainMap {
                            witness: format!(
                                "Leibniz fails on {}·{}",
                                basis.name(i),
                                basis.name(j)
                            ),
                        });
                    }
                }
                // associativity on tracked triples
                for (k, ek) in basis.iter() {
                    if ei.degree + ej.degree + ek.degree > cutoff {
                        continue;
                    }
                    let kv = vec![(k, Scalar::ONE)];
                    let left = self.mult_vec(&ij, &kv);
                    let right = self.mult_vec(&vec![(i, Scalar::ONE)], &self.mult_basis(j, k));
                    if left != right {
                        return Err(Error::AxiomFailure {
                            reason: format!(
                                "associativity fails on ({},{},{})",
                                basis.name(i),
                                basis.name(j),
                                basis.name(k)
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Strict graded commutativity: ab = (−1)^{|a||b|} ba on all tracked pairs.
    pub fn check_commutative(&self) -> Result<()> {
        let basis = self.basis();
        for (i, ei) in basis.iter() {
            for (j, ej) in basis.iter() {
                if ei.degree + ej.degree > basis.cutoff {
                    continue;
                }
                let ij = self.mult_basis(i, j);
                let mut ji = self.mult_basis(j, i);
                if ei.degree % 2 == 1 && ej.degree % 2 == 1 {
                    ji = crate::linalg::vec_scale(&self.ring, &ji, &Scalar::Int(-1));
                }
                if ij != ji {
                    return Err(Error::NotCommutative {
                        left: basis.name(i).to_string(),
                        right: basis.name(j).to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// A coaugmented cocomplete differential graded coalgebra.
///
/// Both the counit and the coaugmentation are supported on the same single
/// basis element (`unit_index`), which holds for every coalgebra this engine
/// builds: reduced comultiplication is then plain component dropping.
pub struct DgCoalgebra {
    pub ring: CoefficientRing,
    pub complex: ChainComplex,
    pub comult: ComultRule,
    pub unit_index: usize,
    /// Least n with Δ̄⁽ⁿ⁾ = 0, per reduced basis index (an upper bound
    /// certified by the recursive splitting structure).
    pub cocompleteness: BTreeMap<usize, usize>,
    pub label: String,
}

impl std::fmt::Debug for DgCoalgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DgCoalgebra({}, dim {})", self.label, self.basis().len())
    }
}

impl DgCoalgebra {
    pub fn basis(&self) -> &Arc<GradedBasis> {
        &self.complex.basis
    }

    pub fn cutoff(&self) -> usize {
        self.basis().cutoff
    }

    pub fn d(&self) -> &GradedMap {
        &self.complex.d
    }

    pub fn comult_basis(&self, i: usize) -> Vec<(usize, usize, Scalar)> {
        (self.comult)(i)
    }

    /// Δ̄ on a reduced basis element: components touching the coaugmentation
    /// are dropped.
    pub fn reduced_comult(&self, i: usize) -> Vec<(usize, usize, Scalar)> {
        self.comult_basis(i)
            .into_iter()
            .filter(|(l, r, _)| *l != self.unit_index && *r != self.unit_index)
            .collect()
    }

    pub fn counit_of(&self, v: &SparseVec) -> Scalar {
        v.iter()
            .find(|(i, _)| *i == self.unit_index)
            .map(|(_, c)| c.clone())
            .unwrap_or(Scalar::ZERO)
    }

    pub fn reduced(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.basis().len()).filter(move |i| *i != self.unit_index)
    }

    /// Compute the cocompleteness witness by following reduced splittings;
    /// fails when an element keeps reappearing under Δ̄.
    pub fn compute_cocompleteness(&mut self) -> Result<()> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Fresh,
            Active,
            Done,
        }
        let n = self.basis().len();
        let mut marks = vec![Mark::Fresh; n];
        let mut witness: Vec<usize> = vec![0; n];
        // iterative DFS
        fn visit(
            c: &DgCoalgebra,
            i: usize,
            marks: &mut Vec<Mark>,
            witness: &mut Vec<usize>,
        ) -> Result<usize> {
            match marks[i] {
                Mark::Done => return Ok(witness[i]),
                Mark::Active => {
                    return Err(Error::NotCocomplete {
                        witness: c.basis().name(i).to_string(),
                    })
                }
                Mark::Fresh => {}
            }
            marks[i] = Mark::Active;
            // primitives die at Δ̄⁽²⁾ = Δ̄; otherwise split the left slot:
            // Δ̄⁽ⁿ⁾ = (Δ̄⁽ⁿ⁻¹⁾ ⊗ id) ∘ Δ̄
            let mut w = 2;
            for (l, _, _) in c.reduced_comult(i) {
                let wl = visit(c, l, marks, witness)?;
                w = w.max(wl + 1);
            }
            marks[i] = Mark::Done;
            witness[i] = w;
            Ok(w)
        }
        let reduced: Vec<usize> = self.reduced().collect();
        for i in reduced {
            let w = visit(self, i, &mut marks, &mut witness)?;
            self.cocompleteness.insert(i, w);
        }
        Ok(())
    }

    /// DGC axioms: d² = 0, Δ a chain map, coassociativity, counit laws,
    /// Δ(unit) = unit⊗unit.
    pub fn check_axioms(&self) -> Result<()> {
        let ring = &self.ring;
        let basis = self.basis();
        self.complex.check_d_squared(ring)?;
        let u = self.unit_index;
        let du = self.d().column(u);
        if !du.is_empty() {
            return Err(Error::NotAChainMap {
                witness: "d(coaugmentation) ≠ 0".into(),
            });
        }
        let unit_comult = self.comult_basis(u);
        if unit_comult != vec![(u, u, Scalar::ONE)] {
            return Err(Error::AxiomFailure {
                reason: "Δ(1) ≠ 1⊗1".into(),
            });
        }
        for (i, ei) in basis.iter() {
            let delta = self.comult_basis(i);
            // counit axioms: (ε⊗id)Δ = id = (id⊗ε)Δ
            let mut left = VecBuilder::new();
            let mut right = VecBuilder::new();
            for (l, r, c) in &delta {
                if *l == u {
                    left.add(ring, *r, c.clone());
                }
                if *r == u {
                    right.add(ring, *l, c.clone());
                }
            }
            let this = vec![(i, Scalar::ONE)];
            if left.build() != this || right.build() != this {
                return Err(Error::AxiomFailure {
                    reason: format!("counit fails on {}", basis.name(i)),
                });
            }
            // coassociativity
            let mut lhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            let mut rhs: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
            for (l, r, c) in &delta {
                for (a, b, c2) in self.comult_basis(*l) {
                    add3(ring, &mut lhs, (a, b, *r), ring.mul(c, &c2));
                }
                for (a, b, c2) in self.comult_basis(*r) {
                    add3(ring, &mut rhs, (*l, a, b), ring.mul(c, &c2));
                }
            }
            if lhs != rhs {
                return Err(Error::AxiomFailure {
                    reason: format!("coassociativity fails on {}", basis.name(i)),
                });
            }
            // Δ chain map (compare where the target degree is tracked)
            if ei.degree + 1 <= basis.cutoff {
                let mut want: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for (j, c) in self.d().column(i) {
                    for (l, r, c2) in self.comult_basis(*j) {
                        add2(ring, &mut want, (l, r), ring.mul(c, &c2));
                    }
                }
                let mut got: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
                for (l, r, c) in &delta {
                    for (l2, cl) in self.d().column(*l) {
                        add2(ring, &mut got, (*l2, *r), ring.mul(c, cl));
                    }
                    let sign = if basis.degree(*l) % 2 == 1 {
                        Scalar::Int(-1)
                    } else {
                        Scalar::ONE
                    };
                    for (r2, cr) in self.d().column(*r) {
                        add2(ring, &mut got, (*l, *r2), ring.mul(&ring.mul(c, cr), &sign));
                    }
                }
                if want != got {
                    return Err(Error::NotAChainMap {
                        witness: format!("Δ∘d ≠ d∘Δ on {}", basis.name(i)),
                    });
                }
            }
        }
        Ok(())
    }

    /// Materialize Δ as a graded map into an explicit tensor-square basis.
    pub fn comult_map(&self, square: &TensorBasis) -> GradedMap {
        let cols = (0..self.basis().len())
            .map(|i| {
                let mut acc = VecBuilder::new();
                for (l, r, c) in self.comult_basis(i) {
                    if let Some(k) = square.index_of(l, r) {
                        acc.add(&self.ring, k, c);
                    }
                }
                acc.build()
            })
            .collect();
        GradedMap::from_columns(self.basis().clone(), square.basis.clone(), 0, cols)
    }
}

fn add2(
    ring: &CoefficientRing,
    map: &mut BTreeMap<(usize, usize), Scalar>,
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

fn add3(
    ring: &CoefficientRing,
    map: &mut BTreeMap<(usize, usize, usize), Scalar>,
    key: (usize, usize, usize),
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

/// The base ring as a one-dimensional algebra.
pub fn unit_algebra(ring: CoefficientRing, cutoff: usize) -> Arc<DgAlgebra> {
    let basis = GradedBasis::unit(cutoff);
    let complex = ChainComplex::with_zero_differential(basis);
    Arc::new(DgAlgebra {
        ring,
        complex,
        mult: Arc::new(|_, _| vec![(0, Scalar::ONE)]),
        unit: vec![(0, Scalar::ONE)],
        aug_index: 0,
        label: "k".into(),
    })
}

/// Tensor product of algebras, with the Koszul interchange built into the
/// multiplication: (x₁⊗y₁)(x₂⊗y₂) = (−1)^{|y₁||x₂|} x₁x₂ ⊗ y₁y₂.
pub fn algebra_tensor(
    a: &Arc<DgAlgebra>,
    b: &Arc<DgAlgebra>,
) -> Result<(Arc<TensorBasis>, Arc<DgAlgebra>)> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    let ring = a.ring;
    let (tb, complex) = crate::graded::tensor_complex(&ring, &a.complex, &b.complex)?;
    let unit = tb.tensor_vec(&ring, &a.unit, &b.unit);
    let aug_index = tb
        .index_of(a.aug_index, b.aug_index)
        .expect("augmentation pair exists");
    let mult: MultRule = {
        let tb = tb.clone();
        let a = a.clone();
        let b = b.clone();
        Arc::new(move |p: usize, q: usize| {
            let (x1, y1) = tb.pair(p);
            let (x2, y2) = tb.pair(q);
            let sign = if b.basis().degree(y1) % 2 == 1 && a.basis().degree(x2) % 2 == 1 {
                Scalar::Int(-1)
            } else {
                Scalar::ONE
            };
            let xx = a.mult_basis(x1, x2);
            let yy = b.mult_basis(y1, y2);
            let mut out = tb.tensor_vec(&ring, &xx, &yy);
            if sign == Scalar::Int(-1) {
                out = crate::linalg::vec_scale(&ring, &out, &sign);
            }
            out
        })
    };
    let alg = Arc::new(DgAlgebra {
        ring,
        complex,
        mult,
        unit,
        aug_index,
        label: format!("{}⊗{}", a.label, b.label),
    });
    Ok((tb, alg))
}

/// The factor-transposition isomorphism χ(x⊗y) = (−1)^{|x||y|} y⊗x on a
/// tensor-square algebra.
pub fn interchange_map(
    ring: &CoefficientRing,
    source: &TensorBasis,
    target: &TensorBasis,
) -> GradedMap {
    let cols = (0..source.basis.len())
        .map(|k| {
            let (i, j) = source.pair(k);
            let Some(t) = target.index_of(j, i) else {
                return Vec::new();
            };
            let sign = if source.left.degree(i) % 2 == 1 && source.right.degree(j) % 2 == 1 {
                Scalar::Int(-1)
            } else {
                Scalar::ONE
            };
            vec![(t, ring.normalize(sign))]
        })
        .collect();
    GradedMap::from_columns(source.basis.clone(), target.basis.clone(), 0, cols)
}

/// Tensor product of coalgebras.
pub fn coalgebra_tensor(
    c: &Arc<DgCoalgebra>,
    d: &Arc<DgCoalgebra>,
) -> Result<(Arc<TensorBasis>, Arc<DgCoalgebra>)> {
    if c.ring != d.ring {
        return Err(Error::RingMismatch);
    }
    let ring = c.ring;
    let (tb, complex) = crate::graded::tensor_complex(&ring, &c.complex, &d.complex)?;
    let unit_index = tb
        .index_of(c.unit_index, d.unit_index)
        .expect("coaugmentation pair exists");
    let comult: ComultRule = {
        let tb = tb.clone();
        let c = c.clone();
        let d = d.clone();
        Arc::new(move |k: usize| {
            let (x, y) = tb.pair(k);
            let mut out = Vec::new();
            for (x1, x2, cx) in c.comult_basis(x) {
                for (y1, y2, cy) in d.comult_basis(y) {
                    let (Some(l), Some(r)) = (tb.index_of(x1, y1), tb.index_of(x2, y2)) else {
                        continue;
                    };
                    // Koszul: move y₁ past x₂
                    let mut v = ring.mul(&cx, &cy);
                    if c.basis().degree(x2) % 2 == 1 && d.basis().degree(y1) % 2 == 1 {
                        v = ring.neg(&v);
                    }
                    if !v.is_zero() {
                        out.push((l, r, v));
                    }
                }
            }
            out
        })
    };
    let mut co = DgCoalgebra {
        ring,
        complex,
        comult,
        unit_index,
        cocompleteness: BTreeMap::new(),
        label: format!("{}⊗{}", c.label, d.label),
    };
    co.compute_cocompleteness()?;
    Ok((tb, Arc::new(co)))
}

/// Cup product (convolution) of maps C → A:
/// (f ∪ g)(c) = Σ ±μ(f(c′) ⊗ g(c″)) over Δ(c) = Σ c′⊗c″.
pub fn cup(
    ring: &CoefficientRing,
    coalg: &DgCoalgebra,
    alg: &DgAlgebra,
    f: &GradedMap,
    g: &GradedMap,
) -> GradedMap {
    assert!(GradedBasis::same(&f.source, coalg.basis()));
    assert!(GradedBasis::same(&g.source, coalg.basis()));
    let cols = (0..coalg.basis().len())
        .map(|i| {
            let mut acc = VecBuilder::new();
            for (l, r, c) in coalg.comult_basis(i) {
                // (f⊗g)(c′⊗c″) = (−1)^{|g||c′|} f(c′) ⊗ g(c″)
                let mut coeff = c;
                if (g.degree % 2 != 0) && (coalg.basis().degree(l) % 2 == 1) {
                    coeff = ring.neg(&coeff);
                }
                let prod = alg.mult_vec(f.column(l), g.column(r));
                acc.add_vec(ring, &prod, &coeff);
            }
            acc.build()
        })
        .collect();
    GradedMap::from_columns(
        coalg.basis().clone(),
        alg.basis().clone(),
        f.degree + g.degree,
        cols,
    )
}

/// The convolution unit η_A ∘ ε_C.
pub fn convolution_unit(ring: &CoefficientRing, coalg: &DgCoalgebra, alg: &DgAlgebra) -> GradedMap {
    let cols = (0..coalg.basis().len())
        .map(|i| {
            if i == coalg.unit_index {
                alg.unit.clone()
            } else {
                Vec::new()
            }
        })
        .collect();
    let _ = ring;
    GradedMap::from_columns(coalg.basis().clone(), alg.basis().clone(), 0, cols)
}

/// Hom-complex differential d(f) = d_A ∘ f − (−1)^{|f|} f ∘ d_C.
pub fn hom_differential(
    ring: &CoefficientRing,
    f: &GradedMap,
    d_source: &GradedMap,
    d_target: &GradedMap,
) -> GradedMap {
    let left = d_target.compose(ring, f);
    let right = f.compose(ring, d_source);
    let sign = if f.degree % 2 == 0 {
        Scalar::Int(-1)
    } else {
        Scalar::ONE
    };
    left.add_scaled(ring, &right, &sign)
}
