use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dga::{AlgebraMorphism, CoalgebraMorphism, DgAlgebra, DgCoalgebra, MultRule};
use crate::error::{Error, Result};
use crate::graded::{ChainComplex, GradedBasis, GradedMap};
use crate::guard::CellBudget;
use crate::linalg::{Scalar, SparseVec, VecBuilder};

use super::bar::enumerate_words;

/// The cobar construction Ω C: the tensor algebra on the suspension of the
/// coaugmentation coideal, with concatenation product and the differential
/// generated by −⟨dc⟩ + Σ (−1)^{|c′|}⟨c′; c″⟩ over the reduced
/// comultiplication.
pub struct CobarAlgebra {
    pub base: Arc<DgCoalgebra>,
    pub algebra: Arc<DgAlgebra>,
    pub words: Vec<Vec<usize>>,
    word_index: Arc<BTreeMap<Vec<usize>, usize>>,
    pub taut: GradedMap,
}

fn cobar_word_name(base: &GradedBasis, word: &[usize]) -> String {
    if word.is_empty() {
        "⟨⟩".to_string()
    } else {
        format!(
            "⟨{}⟩",
            word.iter()
                .map(|&i| base.name(i))
                .collect::<Vec<_>>()
                .join(";")
        )
    }
}

/// Build Ω C truncated at `cutoff`. Requires the coaugmentation coideal to
/// sit in degrees ≥ 1 and a cocompleteness witness on C.
pub fn cobar(c: &Arc<DgCoalgebra>, cutoff: usize, budget: &CellBudget) -> Result<CobarAlgebra> {
    for i in c.reduced() {
        if c.basis().degree(i) < 1 {
            return Err(Error::NotCocomplete {
                witness: format!("reduced element {} in degree 0", c.basis().name(i)),
            });
        }
        if !c.cocompleteness.contains_key(&i) {
            return Err(Error::NotCocomplete {
                witness: c.basis().name(i).to_string(),
            });
        }
    }
    let ring = c.ring;
    // letters: reduced elements, suspended degree |c| + 1
    let letters: Vec<(usize, usize)> = c
        .reduced()
        .filter(|&i| c.basis().degree(i) + 1 <= cutoff)
        .map(|i| (i, c.basis().degree(i) + 1))
        .collect();
    let words = enumerate_words(&letters, cutoff, budget)?;
    let degree_of = |w: &[usize]| -> usize { w.iter().map(|&i| c.basis().degree(i) + 1).sum() };
    let raw: Vec<(String, usize)> = words
        .iter()
        .map(|w| (cobar_word_name(c.basis(), w), degree_of(w)))
        .collect();
    let basis = GradedBasis::new(cutoff, raw);
    let word_index: Arc<BTreeMap<Vec<usize>, usize>> = Arc::new(
        words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect(),
    );
    debug_assert!(words
        .iter()
        .enumerate()
        .all(|(i, w)| basis.index_of(&cobar_word_name(c.basis(), w)) == Some(i)));

    // differential: derivation extending
    //   d⟨c⟩ = −⟨dc⟩ + Σ (−1)^{|c′|} ⟨c′; c″⟩
    let cols: Vec<SparseVec> = words
        .iter()
        .map(|w| {
            let mut acc = VecBuilder::new();
            let mut prefix = 0usize; // suspended degree of the prefix
            for i in 0..w.len() {
                let letter = w[i];
                let outer = if prefix % 2 == 0 { 1 } else { -1 };
                // internal: −⟨dcᵢ⟩
                for (img, coeff) in c.d().column(letter) {
                    let mut next = w.to_vec();
                    next[i] = *img;
                    if let Some(&k) = word_index.get(&next) {
                        acc.add(&ring, k, ring.mul(coeff, &ring.from_i64(-outer)));
                    }
                }
                // splitting: (−1)^{|c′|} ⟨c′; c″⟩
                for (l, r, coeff) in c.reduced_comult(letter) {
                    let split_sign = if c.basis().degree(l) % 2 == 0 { 1 } else { -1 };
                    let mut next: Vec<usize> = Vec::with_capacity(w.len() + 1);
                    next.extend_from_slice(&w[..i]);
                    next.push(l);
                    next.push(r);
                    next.extend_from_slice(&w[i + 1..]);
                    if let Some(&k) = word_index.get(&next) {
                        acc.add(
                            &ring,
                            k,
                            ring.mul(&coeff, &ring.from_i64(outer * split_sign)),
                        );
                    }
                }
                prefix += c.basis().degree(letter) + 1;
            }
            acc.build()
        })
        .collect();
    let d = GradedMap::from_columns(basis.clone(), basis.clone(), 1, cols);
    let complex = ChainComplex::new(basis.clone(), d);
    let unit_index = word_index[&Vec::new()];

    let mult: MultRule = {
        let words = words.clone();
        let word_index = word_index.clone();
        Arc::new(move |i: usize, j: usize| {
            let mut concat = words[i].clone();
            concat.extend_from_slice(&words[j]);
            match word_index.get(&concat) {
                Some(&k) => vec![(k, Scalar::ONE)],
                None => Vec::new(), // truncated
            }
        })
    };
    let algebra = Arc::new(DgAlgebra {
        ring,
        complex,
        mult,
        unit: vec![(unit_index, Scalar::ONE)],
        aug_index: unit_index,
        label: format!("Ω({})", c.label),
    });
    let taut = GradedMap::from_fn(c.basis().clone(), basis.clone(), 1, |i| {
        if i == c.unit_index {
            Vec::new()
        } else {
            match word_index.get(&vec![i]) {
                Some(&k) => vec![(k, Scalar::ONE)],
                None => Vec::new(),
            }
        }
    });
    Ok(CobarAlgebra {
        base: c.clone(),
        algebra,
        words,
        word_index,
        taut,
    })
}

impl CobarAlgebra {
    pub fn basis(&self) -> &Arc<GradedBasis> {
        self.algebra.basis()
    }

    pub fn word_index(&self, word: &[usize]) -> Option<usize> {
        self.word_index.get(word).copied()
    }

    pub fn empty_word(&self) -> usize {
        self.algebra.aug_index
    }

    /// Letter-wise image of a word under a map of the underlying coalgebras.
    pub fn map_word_through(
        &self,
        target: &CobarAlgebra,
        g: &GradedMap,
        word: &[usize],
    ) -> SparseVec {
        let ring = self.algebra.ring;
        let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::ONE)];
        for &letter in word {
            let image = g.column(letter);
            let mut next = Vec::new();
            for (w, c) in &acc {
                for (img, ci) in image {
                    if *img == target.base.unit_index {
                        continue; // reduced projection
                    }
                    let mut w2 = w.clone();
                    w2.push(*img);
                    next.push((w2, ring.mul(c, ci)));
                }
            }
            acc = next;
            if acc.is_empty() {
                return Vec::new();
            }
        }
        let mut out = VecBuilder::new();
        for (w, c) in acc {
            if let Some(k) = target.word_index(&w) {
                out.add(&ring, k, c);
            }
        }
        out.build()
    }
}

/// Ω g for a coalgebra morphism g.
pub fn cobar_of_morphism(
    g: &CoalgebraMorphism,
    source: &CobarAlgebra,
    target: &CobarAlgebra,
) -> AlgebraMorphism {
    let cols = (0..source.basis().len())
        .map(|i| source.map_word_through(target, &g.map, &source.words[i]))
        .collect();
    let map = GradedMap::from_columns(source.basis().clone(), target.basis().clone(), 0, cols);
    AlgebraMorphism::new(source.algebra.clone(), target.algebra.clone(), map)
}
