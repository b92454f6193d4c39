use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{ChainComplex, GradedBasis};
use crate::linalg::{CoefficientRing, Scalar, SparseVec};

use super::algebra::{DgAlgebra, MultRule};

/// One generator of a free graded-commutative algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcaGenerator {
    pub name: String,
    pub degree: usize,
    /// Odd-degree generators square to zero by default. In characteristic 2
    /// a generator may be flagged polynomial instead (nonzero squares), as
    /// for the cohomology of K(ℤ/2, 2).
    pub polynomial_square: bool,
}

impl GcaGenerator {
    pub fn new(name: impl Into<String>, degree: usize) -> Self {
        GcaGenerator {
            name: name.into(),
            degree,
            polynomial_square: false,
        }
    }

    pub fn polynomial(name: impl Into<String>, degree: usize) -> Self {
        GcaGenerator {
            name: name.into(),
            degree,
            polynomial_square: true,
        }
    }

    fn is_square_free(&self) -> bool {
        self.degree % 2 == 1 && !self.polynomial_square
    }
}

/// Presentation of a free graded-commutative algebra: even generators are
/// polynomial, odd generators exterior (unless flagged), monomial basis
/// within the cutoff, zero differential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGcaPresentation {
    pub generators: Vec<GcaGenerator>,
    pub ring: CoefficientRing,
    pub cutoff: usize,
}

/// A built free GCA: the algebra plus its monomial bookkeeping.
pub struct FreeGca {
    pub presentation: FreeGcaPresentation,
    pub algebra: Arc<DgAlgebra>,
    /// Exponent vectors aligned with basis indices.
    pub monomials: Vec<Vec<u32>>,
    mono_index: BTreeMap<Vec<u32>, usize>,
}

impl FreeGca {
    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.presentation
            .generators
            .iter()
            .position(|g| g.name == name)
    }

    /// Basis index of a single generator.
    pub fn generator_basis_index(&self, gen: usize) -> usize {
        let mut exps = vec![0u32; self.presentation.generators.len()];
        exps[gen] = 1;
        self.mono_index[&exps]
    }

    pub fn monomial_basis_index(&self, exps: &[u32]) -> Option<usize> {
        self.mono_index.get(exps).copied()
    }
}

fn monomial_name(gens: &[GcaGenerator], exps: &[u32]) -> String {
    let parts: Vec<String> = gens
        .iter()
        .zip(exps)
        .filter(|(_, e)| **e > 0)
        .map(|(g, e)| {
            if *e == 1 {
                g.name.clone()
            } else {
                format!("{}^{}", g.name, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn monomial_degree(gens: &[GcaGenerator], exps: &[u32]) -> usize {
    gens.iter()
        .zip(exps)
        .map(|(g, e)| g.degree * *e as usize)
        .sum()
}

/// Sign and exponents of a monomial product, or `None` when an exterior
/// square kills it. The sign counts odd-generator transpositions.
fn monomial_mult(gens: &[GcaGenerator], a: &[u32], b: &[u32]) -> Option<(i64, Vec<u32>)> {
    let mut sign = 0u32;
    let mut odd_tail = 0u32; // odd-generator count in a with index > current
                             // precompute suffix odd-counts of a
    let n = gens.len();
    let mut suffix = vec![0u32; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + if gens[i].degree % 2 == 1 { a[i] } else { 0 };
    }
    let mut out = vec![0u32; n];
    for i in 0..n {
        out[i] = a[i] + b[i];
        if gens[i].is_square_free() && out[i] > 1 {
            return None;
        }
        if gens[i].degree % 2 == 1 && b[i] > 0 {
            // move b's copies of gᵢ past a's odd generators of larger index
            sign += b[i] * suffix[i + 1];
        }
    }
    let _ = &mut odd_tail;
    Some((if sign % 2 == 0 { 1 } else { -1 }, out))
}

/// Enumerate monomials of total degree ≤ cutoff, in lexicographic exponent
/// order. Creation order plus the basis's degree sort gives the documented
/// (degree, creation order) ordering.
fn enumerate_monomials(gens: &[GcaGenerator], cutoff: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; gens.len()];
    fn rec(
        gens: &[GcaGenerator],
        cutoff: usize,
        pos: usize,
        degree: usize,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if pos == gens.len() {
            out.push(current.clone());
            return;
        }
        let g = &gens[pos];
        let max_e = if g.is_square_free() {
            1
        } else if g.degree == 0 {
            0
        } else {
            ((cutoff - degree) / g.degree) as u32
        };
        for e in 0..=max_e {
            let add = g.degree * e as usize;
            if degree + add > cutoff {
                break;
            }
            current[pos] = e;
            rec(gens, cutoff, pos + 1, degree + add, current, out);
        }
        current[pos] = 0;
    }
    rec(gens, cutoff, 0, 0, &mut current, &mut out);
    out
}

/// Build the free graded-commutative algebra of a presentation.
pub fn build_free_gca(p: &FreeGcaPresentation) -> Result<FreeGca> {
    for g in &p.generators {
        if g.degree < 1 {
            return Err(Error::DegreeMismatch {
                context: format!("generator {} must have degree ≥ 1", g.name),
            });
        }
        if g.degree > p.cutoff {
            return Err(Error::CutoffTooSmall {
                cutoff: p.cutoff,
                needed: format!("generator {} has degree {}", g.name, g.degree),
            });
        }
        if g.polynomial_square && g.degree % 2 == 1 && p.ring.characteristic() != 2 {
            return Err(Error::DegreeMismatch {
                context: format!(
                    "odd generator {} may only be polynomial in characteristic 2",
                    g.name
                ),
            });
        }
    }
    let monomials = enumerate_monomials(&p.generators, p.cutoff);
    let raw: Vec<(String, usize)> = monomials
        .iter()
        .map(|m| {
            (
                monomial_name(&p.generators, m),
                monomial_degree(&p.generators, m),
            )
        })
        .collect();
    let basis = GradedBasis::new(p.cutoff, raw);
    // align monomials with the sorted basis
    let mut sorted = vec![Vec::new(); monomials.len()];
    let mut mono_index = BTreeMap::new();
    for m in &monomials {
        let idx = basis
            .index_of(&monomial_name(&p.generators, m))
            .expect("monomial name present");
        sorted[idx] = m.clone();
        mono_index.insert(m.clone(), idx);
    }
    let complex = ChainComplex::with_zero_differential(basis.clone());
    let aug_index = basis.index_of("1").expect("unit monomial");
    let mult: MultRule = {
        let gens = p.generators.clone();
        let sorted = sorted.clone();
        let mono_index = mono_index.clone();
        let ring = p.ring;
        Arc::new(move |i: usize, j: usize| -> SparseVec {
            let Some((sign, exps)) = monomial_mult(&gens, &sorted[i], &sorted[j]) else {
                return Vec::new();
            };
            let Some(&k) = mono_index.get(&exps) else {
                return Vec::new(); // truncated above the cutoff
            };
            let c = ring.from_i64(sign);
            if c.is_zero() {
                Vec::new()
            } else {
                vec![(k, c)]
            }
        })
    };
    let algebra = Arc::new(DgAlgebra {
        ring: p.ring,
        complex,
        mult,
        unit: vec![(aug_index, Scalar::ONE)],
        aug_index,
        label: p
            .generators
            .iter()
            .map(|g| g.name.clone())
            .collect::<Vec<_>>()
            .join(","),
    });
    Ok(FreeGca {
        presentation: p.clone(),
        algebra,
        monomials: sorted,
        mono_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(ring: CoefficientRing, cutoff: usize, gens: Vec<GcaGenerator>) -> FreeGcaPresentation {
        FreeGcaPresentation {
            generators: gens,
            ring,
            cutoff,
        }
    }

    #[test]
    fn polynomial_on_one_even_generator() {
        let q = CoefficientRing::Rationals;
        let f = build_free_gca(&pres(q, 6, vec![GcaGenerator::new("x", 2)])).unwrap();
        assert_eq!(f.algebra.basis().dims(), vec![1, 0, 1, 0, 1, 0, 1]);
        f.algebra.check_axioms().unwrap();
        f.algebra.check_commutative().unwrap();
    }

    #[test]
    fn exterior_on_one_odd_generator() {
        let q = CoefficientRing::Rationals;
        let f = build_free_gca(&pres(q, 9, vec![GcaGenerator::new("y", 3)])).unwrap();
        let names: Vec<&str> = (0..f.algebra.basis().len())
            .map(|i| f.algebra.basis().name(i))
            .collect();
        assert_eq!(names, vec!["1", "y"]);
        let y = f.generator_basis_index(0);
        assert!(f.algebra.mult_basis(y, y).is_empty());
    }

    #[test]
    fn mixed_polynomial_and_exterior_dims() {
        // Z[t] ⊗ Λ[y₃] at cutoff 5: 1, t, y, t², ty
        let z = CoefficientRing::Integers;
        let f = build_free_gca(&pres(
            z,
            5,
            vec![GcaGenerator::new("t", 2), GcaGenerator::new("y", 3)],
        ))
        .unwrap();
        assert_eq!(f.algebra.basis().dims(), vec![1, 0, 1, 1, 1, 1]);
        f.algebra.check_axioms().unwrap();
        f.algebra.check_commutative().unwrap();
    }

    #[test]
    fn odd_generators_anticommute() {
        let z = CoefficientRing::Integers;
        let f = build_free_gca(&pres(
            z,
            8,
            vec![GcaGenerator::new("a", 3), GcaGenerator::new("b", 5)],
        ))
        .unwrap();
        let a = f.generator_basis_index(0);
        let b = f.generator_basis_index(1);
        let ab = f.algebra.mult_basis(a, b);
        let ba = f.algebra.mult_basis(b, a);
        assert_eq!(ab.len(), 1);
        assert_eq!(ba.len(), 1);
        assert_eq!(ab[0].0, ba[0].0);
        assert_eq!(f.algebra.ring.add(&ab[0].1, &ba[0].1), Scalar::ZERO);
        f.algebra.check_commutative().unwrap();
    }

    #[test]
    fn char_two_polynomial_odd_generator() {
        let f2 = CoefficientRing::PrimeField(2);
        let f = build_free_gca(&pres(f2, 9, vec![GcaGenerator::polynomial("x", 3)])).unwrap();
        assert_eq!(f.algebra.basis().dims(), vec![1, 0, 0, 1, 0, 0, 1, 0, 0, 1]);
        let x = f.generator_basis_index(0);
        assert_eq!(f.algebra.mult_basis(x, x).len(), 1);
        f.algebra.check_axioms().unwrap();
        f.algebra.check_commutative().unwrap();
        // but not outside characteristic 2
        let q = CoefficientRing::Rationals;
        assert!(build_free_gca(&pres(q, 9, vec![GcaGenerator::polynomial("x", 3)])).is_err());
    }

    #[test]
    fn cutoff_must_reach_generators() {
        let q = CoefficientRing::Rationals;
        assert!(matches!(
            build_free_gca(&pres(q, 1, vec![GcaGenerator::new("x", 2)])),
            Err(Error::CutoffTooSmall { .. })
        ));
    }
}
