use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dga::{AlgebraMorphism, CoalgebraMorphism, ComultRule, DgAlgebra, DgCoalgebra};
use crate::error::{Error, Result};
use crate::graded::{ChainComplex, GradedBasis, GradedMap};
use crate::guard::CellBudget;
use crate::linalg::{Scalar, SparseVec, VecBuilder};

/// The bar construction B A: the tensor coalgebra on the desuspension of the
/// augmentation ideal, with the tensor differential plus the bar-deletion
/// coderivation, deconcatenation comultiplication, and the tautological
/// twisting cochain t^A reading off length-one words.
pub struct BarCoalgebra {
    pub base: Arc<DgAlgebra>,
    pub coalgebra: Arc<DgCoalgebra>,
    /// Letter lists (indices into the base's basis), aligned with the
    /// coalgebra basis.
    pub words: Vec<Vec<usize>>,
    word_index: Arc<BTreeMap<Vec<usize>, usize>>,
    pub taut: GradedMap,
}

pub(crate) fn word_name(base: &GradedBasis, word: &[usize]) -> String {
    if word.is_empty() {
        "[]".to_string()
    } else {
        format!(
            "[{}]",
            word.iter()
                .map(|&i| base.name(i))
                .collect::<Vec<_>>()
                .join("|")
        )
    }
}

/// Enumerate all words over `letters` (index, weight) with total weight ≤
/// cutoff, sorted by (weight, length, lexicographic content).
pub(crate) fn bar_words_for(
    letters: &[(usize, usize)],
    cutoff: usize,
    budget: &CellBudget,
) -> Result<Vec<(Vec<usize>, usize)>> {
    let mut out: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    let mut frontier: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((word, weight)) = frontier.pop() {
        for &(idx, w) in letters {
            if weight + w > cutoff {
                continue;
            }
            let mut next = word.clone();
            next.push(idx);
            out.push((next.clone(), weight + w));
            budget.check(out.len())?;
            frontier.push((next, weight + w));
        }
    }
    out.sort_by(|a, b| {
        (a.1, a.0.len())
            .cmp(&(b.1, b.0.len()))
            .then_with(|| a.0.cmp(&b.0))
    });
    Ok(out)
}

pub(crate) fn enumerate_words(
    letters: &[(usize, usize)],
    cutoff: usize,
    budget: &CellBudget,
) -> Result<Vec<Vec<usize>>> {
    Ok(bar_words_for(letters, cutoff, budget)?
        .into_iter()
        .map(|(w, _)| w)
        .collect())
}

/// Build B A truncated at `cutoff`. Requires A to be 1-connected and tracked
/// to degree cutoff + 1 (single letters of a degree-cutoff word).
pub fn bar(a: &Arc<DgAlgebra>, cutoff: usize, budget: &CellBudget) -> Result<BarCoalgebra> {
    a.check_one_connected()?;
    if a.cutoff() < cutoff + 1 {
        return Err(Error::CutoffTooSmall {
            cutoff: a.cutoff(),
            needed: format!(
                "bar construction at cutoff {cutoff} needs letters to degree {}",
                cutoff + 1
            ),
        });
    }
    let ring = a.ring;
    // letters: reduced elements, reduced degree |a| − 1
    let letters: Vec<(usize, usize)> = a
        .reduced()
        .filter(|&i| a.basis().degree(i) >= 2 && a.basis().degree(i) - 1 <= cutoff)
        .map(|i| (i, a.basis().degree(i) - 1))
        .collect();
    let words = enumerate_words(&letters, cutoff, budget)?;
    let degree_of = |w: &[usize]| -> usize { w.iter().map(|&i| a.basis().degree(i) - 1).sum() };
    let raw: Vec<(String, usize)> = words
        .iter()
        .map(|w| (word_name(a.basis(), w), degree_of(w)))
        .collect();
    let basis = GradedBasis::new(cutoff, raw);
    // GradedBasis sorts stably by degree; our enumeration is already sorted
    // by (degree, length, content), so alignment is the identity.
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
        .all(|(i, w)| basis.index_of(&word_name(a.basis(), w)) == Some(i)));

    // differential: internal + deletion
    let cols: Vec<SparseVec> = words
        .iter()
        .map(|w| {
            let mut acc = VecBuilder::new();
            bar_differential(&ring, a, w, &word_index, &mut acc);
            acc.build()
        })
        .collect();
    let d = GradedMap::from_columns(basis.clone(), basis.clone(), 1, cols);
    let complex = ChainComplex::new(basis.clone(), d);

    let comult: ComultRule = {
        let words = words.clone();
        let word_index = word_index.clone();
        Arc::new(move |i: usize| {
            let w = &words[i];
            (0..=w.len())
                .map(|k| {
                    (
                        word_index[&w[..k].to_vec()],
                        word_index[&w[k..].to_vec()],
                        Scalar::ONE,
                    )
                })
                .collect()
        })
    };
    let unit_index = word_index[&Vec::new()];
    let mut cocompleteness = BTreeMap::new();
    for (i, w) in words.iter().enumerate() {
        if !w.is_empty() {
            cocompleteness.insert(i, w.len() + 1);
        }
    }
    let coalgebra = Arc::new(DgCoalgebra {
        ring,
        complex,
        comult,
        unit_index,
        cocompleteness,
        label: format!("B({})", a.label),
    });
    // tautological twisting cochain
    let taut = GradedMap::from_fn(basis.clone(), a.basis().clone(), 1, |i| {
        let w = &words[i];
        if w.len() == 1 {
            vec![(w[0], Scalar::ONE)]
        } else {
            Vec::new()
        }
    });
    Ok(BarCoalgebra {
        base: a.clone(),
        coalgebra,
        words,
        word_index,
        taut,
    })
}

/// The bar differential of one word, written as a sum over the word's
/// positions: internal terms −(−1)^{nᵢ} […|daᵢ|…] and deletion terms
/// (−1)^{n_{i+1}} […|aᵢaᵢ₊₁|…], with nᵢ the reduced degree of the prefix.
fn bar_differential(
    ring: &crate::linalg::CoefficientRing,
    a: &DgAlgebra,
    w: &[usize],
    word_index: &BTreeMap<Vec<usize>, usize>,
    acc: &mut VecBuilder,
) {
    let mut prefix_reduced = 0usize;
    for i in 0..w.len() {
        let deg_i = a.basis().degree(w[i]);
        // internal: −(−1)^{nᵢ} [..|daᵢ|..]
        let sign = if prefix_reduced % 2 == 0 { -1 } else { 1 };
        for (img, c) in a.d().column(w[i]) {
            let mut next = w.to_vec();
            next[i] = *img;
            if let Some(&k) = word_index.get(&next) {
                acc.add(ring, k, ring.mul(c, &ring.from_i64(sign)));
            }
        }
        // deletion: (−1)^{n_{i+1}} [..|aᵢaᵢ₊₁|..]
        if i + 1 < w.len() {
            let n_next = prefix_reduced + deg_i - 1;
            let sign = if n_next % 2 == 0 { 1 } else { -1 };
            if deg_i + a.basis().degree(w[i + 1]) <= a.cutoff() {
                for (img, c) in a.mult_basis(w[i], w[i + 1]) {
                    let mut next: Vec<usize> = Vec::with_capacity(w.len() - 1);
                    next.extend_from_slice(&w[..i]);
                    next.push(img);
                    next.extend_from_slice(&w[i + 2..]);
                    if let Some(&k) = word_index.get(&next) {
                        acc.add(ring, k, ring.mul(&c, &ring.from_i64(sign)));
                    }
                }
            }
        }
        prefix_reduced += deg_i - 1;
    }
}

impl BarCoalgebra {
    pub fn basis(&self) -> &Arc<GradedBasis> {
        self.coalgebra.basis()
    }

    pub fn word_index(&self, word: &[usize]) -> Option<usize> {
        self.word_index.get(word).copied()
    }

    pub fn empty_word(&self) -> usize {
        self.coalgebra.unit_index
    }

    /// Functorial image B f: B A → B A' of an algebra morphism, letter-wise.
    pub fn map_word_through(
        &self,
        target: &BarCoalgebra,
        f: &GradedMap,
        word: &[usize],
    ) -> SparseVec {
        let ring = self.base.ring;
        let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::ONE)];
        for &letter in word {
            let image = f.column(letter);
            let mut next = Vec::new();
            for (w, c) in &acc {
                for (img, ci) in image {
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

/// B f for an algebra morphism f.
pub fn bar_of_morphism(
    f: &AlgebraMorphism,
    source: &BarCoalgebra,
    target: &BarCoalgebra,
) -> CoalgebraMorphism {
    let cols = (0..source.basis().len())
        .map(|i| source.map_word_through(target, &f.map, &source.words[i]))
        .collect();
    let map = GradedMap::from_columns(source.basis().clone(), target.basis().clone(), 0, cols);
    CoalgebraMorphism::new(source.coalgebra.clone(), target.coalgebra.clone(), map)
}
