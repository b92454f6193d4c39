use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseVec, VecBuilder};

use super::bigraded::{BlockKey, TorView, TorWorkspace};

/// One chosen homology generator of a Tor group.
#[derive(Debug, Clone)]
pub struct GenInfo {
    pub key: BlockKey,
    pub index_in_block: usize,
    pub total_degree: usize,
    /// Additive order for torsion generators, `None` for free ones.
    pub order: Option<BigInt>,
}

/// A homology class as coordinates over the global generator list.
pub type ClassVec = BTreeMap<usize, Scalar>;

/// The ring structure on Tor for commutative inputs: chosen generators, the
/// unit class, and structure constants on all tracked pairs.
pub struct RingStructure {
    pub generators: Vec<GenInfo>,
    pub unit: ClassVec,
    pub products: BTreeMap<(usize, usize), ClassVec>,
}

/// Homology-with-product workspace over a Tor view and a chain-level product.
pub struct TorRing<'a> {
    pub ws: TorWorkspace<'a>,
    mult: &'a dyn Fn(usize, usize) -> SparseVec,
    pub generators: Vec<GenInfo>,
    gen_of: BTreeMap<(BlockKey, usize), usize>,
    unit_cell: usize,
}

impl<'a> TorRing<'a> {
    /// Enumerate the generators from additive data; block solvers are built
    /// lazily, only where products touch.
    pub fn new(
        view: &'a TorView,
        mult: &'a dyn Fn(usize, usize) -> SparseVec,
        unit_cell: usize,
    ) -> Result<Self> {
        let additive = super::bigraded::tor_additive(view)?;
        Self::with_additive(view, mult, unit_cell, &additive)
    }

    pub fn with_additive(
        view: &'a TorView,
        mult: &'a dyn Fn(usize, usize) -> SparseVec,
        unit_cell: usize,
        additive: &super::bigraded::BigradedTor,
    ) -> Result<Self> {
        let ws = TorWorkspace::new(view);
        let mut generators = Vec::new();
        let mut gen_of = BTreeMap::new();
        for key in view.keys() {
            let Some(summary) = additive.blocks.get(&key) else {
                continue;
            };
            let torsion_count = summary.torsion.len();
            for i in 0..summary.total_generators() {
                let order = if i < torsion_count {
                    Some(summary.torsion[i].clone())
                } else {
                    None
                };
                gen_of.insert((key, i), generators.len());
                generators.push(GenInfo {
                    key,
                    index_in_block: i,
                    total_degree: view.total_degree(key),
                    order,
                });
            }
        }
        Ok(TorRing {
            ws,
            mult,
            generators,
            gen_of,
            unit_cell,
        })
    }

    pub fn ring(&self) -> crate::linalg::CoefficientRing {
        self.ws.view.ring
    }

    /// Class of a global cycle.
    pub fn class_of(&mut self, cycle: &SparseVec) -> Result<ClassVec> {
        let Some(key) = self.ws.view.key_of(cycle) else {
            return Ok(BTreeMap::new());
        };
        if self.ws.view.total_degree(key) > self.ws.view.max_degree {
            return Err(Error::CutoffTooSmall {
                cutoff: self.ws.view.max_degree,
                needed: "product lands above the reporting window".into(),
            });
        }
        let coords = self.ws.coordinates(key, cycle)?;
        let mut out = BTreeMap::new();
        for (i, c) in coords.into_iter().enumerate() {
            if !c.is_zero() {
                out.insert(self.gen_of[&(key, i)], c);
            }
        }
        Ok(out)
    }

    pub fn unit_class(&mut self) -> Result<ClassVec> {
        let cell = self.unit_cell;
        self.class_of(&vec![(cell, Scalar::ONE)])
    }

    /// A representative cycle of a class (global coordinates).
    pub fn representative(&mut self, class: &ClassVec) -> Result<SparseVec> {
        let ring = self.ring();
        let mut acc = VecBuilder::new();
        for (&g, c) in class {
            let info = self.generators[g].clone();
            let rep = self.ws.generator(info.key, info.index_in_block)?;
            acc.add_vec(&ring, &rep, c);
        }
        Ok(acc.build())
    }

    fn chain_product(&self, u: &SparseVec, v: &SparseVec) -> SparseVec {
        let ring = self.ring();
        let mut acc = VecBuilder::new();
        for (i, ci) in u {
            for (j, cj) in v {
                acc.add_vec(&ring, &(self.mult)(*i, *j), &ring.mul(ci, cj));
            }
        }
        acc.build()
    }

    /// Product of homology classes, re-expressed in homology coordinates.
    /// Classes must be homogeneous (single block each).
    pub fn product(&mut self, a: &ClassVec, b: &ClassVec) -> Result<ClassVec> {
        let ring = self.ring();
        // bilinear over blocks
        let mut by_block_a: BTreeMap<BlockKey, ClassVec> = BTreeMap::new();
        for (&g, c) in a {
            by_block_a
                .entry(self.generators[g].key)
                .or_default()
                .insert(g, c.clone());
        }
        let mut by_block_b: BTreeMap<BlockKey, ClassVec> = BTreeMap::new();
        for (&g, c) in b {
            by_block_b
                .entry(self.generators[g].key)
                .or_default()
                .insert(g, c.clone());
        }
        let mut out: ClassVec = BTreeMap::new();
        for part_a in by_block_a.values() {
            let rep_a = self.representative(part_a)?;
            for part_b in by_block_b.values() {
                let rep_b = self.representative(part_b)?;
                let prod = self.chain_product(&rep_a, &rep_b);
                if prod.is_empty() {
                    continue;
                }
                let cls = self.class_of(&prod)?;
                for (g, c) in cls {
                    merge_coord(&ring, &mut out, g, c);
                }
            }
        }
        self.normalize_class(&mut out);
        Ok(out)
    }

    /// Scale a class by an integer.
    pub fn scale_class(&self, class: &ClassVec, c: &Scalar) -> ClassVec {
        let ring = self.ring();
        let mut out: ClassVec = BTreeMap::new();
        for (&g, v) in class {
            merge_coord(&ring, &mut out, g, ring.mul(v, c));
        }
        let mut out2 = out;
        self.normalize_class(&mut out2);
        out2
    }

    pub fn add_class(&self, a: &ClassVec, b: &ClassVec) -> ClassVec {
        let ring = self.ring();
        let mut out = a.clone();
        for (&g, v) in b {
            merge_coord(&ring, &mut out, g, v.clone());
        }
        let mut out2 = out;
        self.normalize_class(&mut out2);
        out2
    }

    /// Reduce torsion coordinates modulo their invariant factor.
    fn normalize_class(&self, class: &mut ClassVec) {
        let mut dead = Vec::new();
        for (&g, v) in class.iter_mut() {
            if let Some(order) = &self.generators[g].order {
                let n = v.to_bigint().expect("integral torsion coordinate");
                let reduced = n.modpow(&BigInt::one(), order);
                *v = Scalar::from_bigint(reduced);
            }
            if v.is_zero() {
                dead.push(g);
            }
        }
        for g in dead {
            class.remove(&g);
        }
    }

    pub fn classes_equal(&self, a: &ClassVec, b: &ClassVec) -> bool {
        let mut a = a.clone();
        let mut b = b.clone();
        self.normalize_class(&mut a);
        self.normalize_class(&mut b);
        a == b
    }

    /// Generator ids in a total degree.
    pub fn generators_in_degree(&self, n: usize) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&g| self.generators[g].total_degree == n)
            .collect()
    }

    pub fn generator_class(&self, g: usize) -> ClassVec {
        let mut m = BTreeMap::new();
        m.insert(g, Scalar::ONE);
        m
    }

    /// The full structure-constant table on all pairs within the reporting
    /// degree.
    pub fn structure_constants(&mut self) -> Result<RingStructure> {
        let max = self.ws.view.max_degree;
        let unit = self.unit_class()?;
        let mut products = BTreeMap::new();
        let n = self.generators.len();
        for i in 0..n {
            for j in 0..n {
                if self.generators[i].total_degree + self.generators[j].total_degree > max {
                    continue;
                }
                let p = self.product(&self.generator_class(i), &self.generator_class(j))?;
                products.insert((i, j), p);
            }
        }
        Ok(RingStructure {
            generators: self.generators.clone(),
            unit,
            products,
        })
    }

    /// Unitality of the product against the class of the unit cell.
    pub fn check_unital(&mut self) -> Result<()> {
        let unit = self.unit_class()?;
        for g in 0..self.generators.len() {
            let cls = self.generator_class(g);
            let left = self.product(&unit, &cls)?;
            let right = self.product(&cls, &unit)?;
            if !self.classes_equal(&left, &cls) || !self.classes_equal(&right, &cls) {
                return Err(Error::AxiomFailure {
                    reason: format!("Tor product not unital on generator {g}"),
                });
            }
        }
        Ok(())
    }

    /// Graded commutativity on all tracked generator pairs.
    pub fn check_graded_commutative(&mut self) -> Result<()> {
        let ring = self.ring();
        let max = self.ws.view.max_degree;
        let n = self.generators.len();
        for i in 0..n {
            for j in i..n {
                let (di, dj) = (
                    self.generators[i].total_degree,
                    self.generators[j].total_degree,
                );
                if di + dj > max {
                    continue;
                }
                let ij = self.product(&self.generator_class(i), &self.generator_class(j))?;
                let ji = self.product(&self.generator_class(j), &self.generator_class(i))?;
                let sign = if di % 2 == 1 && dj % 2 == 1 {
                    ring.from_i64(-1)
                } else {
                    Scalar::ONE
                };
                let flipped = self.scale_class(&ji, &sign);
                if !self.classes_equal(&ij, &flipped) {
                    return Err(Error::AxiomFailure {
                        reason: format!("Tor product not graded-commutative on ({i}, {j})"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Associativity on all tracked generator triples.
    pub fn check_associative(&mut self) -> Result<()> {
        let max = self.ws.view.max_degree;
        let n = self.generators.len();
        for i in 0..n {
            for j in 0..n {
                if self.generators[i].total_degree + self.generators[j].total_degree > max {
                    continue;
                }
                for k in 0..n {
                    let total = self.generators[i].total_degree
                        + self.generators[j].total_degree
                        + self.generators[k].total_degree;
                    if total > max {
                        continue;
                    }
                    let ij = self.product(&self.generator_class(i), &self.generator_class(j))?;
                    let left = self.product(&ij, &self.generator_class(k))?;
                    let jk = self.product(&self.generator_class(j), &self.generator_class(k))?;
                    let right = self.product(&self.generator_class(i), &jk)?;
                    if !self.classes_equal(&left, &right) {
                        return Err(Error::AxiomFailure {
                            reason: format!("Tor product not associative on ({i}, {j}, {k})"),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn merge_coord(ring: &crate::linalg::CoefficientRing, class: &mut ClassVec, g: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match class.remove(&g) {
        None => {
            class.insert(g, c);
        }
        Some(old) => {
            let s = ring.add(&old, &c);
            if !s.is_zero() {
                class.insert(g, s);
            }
        }
    }
}
