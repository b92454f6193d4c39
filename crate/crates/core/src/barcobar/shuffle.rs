use std::sync::Arc;

use crate::dga::{AlgebraMorphism, CoalgebraMorphism, DgAlgebra, DgCoalgebra};
use crate::graded::{GradedMap, TensorBasis};
use crate::linalg::{CoefficientRing, Scalar, SparseVec, VecBuilder};

use super::bar::BarCoalgebra;
use super::cobar::CobarAlgebra;

/// All (p,q)-shuffles of two letter lists with the Koszul sign
/// (−1)^{Σ (|aᵢ|−1)(|bⱼ|−1)} over pairs moved past one another. Letters carry
/// their reduced degree.
fn shuffles(left: &[(usize, usize)], right: &[(usize, usize)]) -> Vec<(Vec<usize>, i64)> {
    fn rec(
        left: &[(usize, usize)],
        right: &[(usize, usize)],
        left_remaining_weight: usize,
        acc: &mut Vec<usize>,
        sign: i64,
        out: &mut Vec<(Vec<usize>, i64)>,
    ) {
        if left.is_empty() && right.is_empty() {
            out.push((acc.clone(), sign));
            return;
        }
        if let Some((first, rest)) = left.split_first() {
            acc.push(first.0);
            rec(rest, right, left_remaining_weight - first.1, acc, sign, out);
            acc.pop();
        }
        if let Some((first, rest)) = right.split_first() {
            // the right letter moves past everything left in `left`
            let flip = (first.1 * left_remaining_weight) % 2 == 1;
            acc.push(first.0);
            rec(
                left,
                rest,
                left_remaining_weight,
                acc,
                if flip { -sign } else { sign },
                out,
            );
            acc.pop();
        }
    }
    let total: usize = left.iter().map(|(_, w)| w).sum();
    let mut out = Vec::new();
    let mut acc = Vec::new();
    rec(left, right, total, &mut acc, 1, &mut out);
    out
}

/// The bar shuffle ∇: B A₁ ⊗ B A₂ → B(A₁ ⊗ A₂), summing the interleavings of
/// [a₁⊗1|…] and [1⊗b₁|…] with Koszul signs. `pairing` is the tensor-square
/// basis of the two bar coalgebras, `alg_pairing` the basis of A₁⊗A₂.
pub fn shuffle_nabla(
    bar1: &BarCoalgebra,
    bar2: &BarCoalgebra,
    pairing: &TensorBasis,
    source: &Arc<DgCoalgebra>,
    alg_pairing: &TensorBasis,
    target: &BarCoalgebra,
) -> CoalgebraMorphism {
    let ring = bar1.base.ring;
    let u1 = bar1.base.aug_index;
    let u2 = bar2.base.aug_index;
    let cols = (0..pairing.basis.len())
        .map(|k| {
            let (i, j) = pairing.pair(k);
            let w1 = &bar1.words[i];
            let w2 = &bar2.words[j];
            let left: Vec<(usize, usize)> = w1
                .iter()
                .map(|&a| {
                    (
                        alg_pairing.index_of(a, u2).expect("a⊗1 tracked"),
                        bar1.base.basis().degree(a) - 1,
                    )
                })
                .collect();
            let right: Vec<(usize, usize)> = w2
                .iter()
                .map(|&b| {
                    (
                        alg_pairing.index_of(u1, b).expect("1⊗b tracked"),
                        bar2.base.basis().degree(b) - 1,
                    )
                })
                .collect();
            let mut acc = VecBuilder::new();
            for (word, sign) in shuffles(&left, &right) {
                if let Some(t) = target.word_index(&word) {
                    acc.add(&ring, t, ring.from_i64(sign));
                }
            }
            acc.build()
        })
        .collect();
    let map = GradedMap::from_columns(pairing.basis.clone(), target.basis().clone(), 0, cols);
    CoalgebraMorphism::new(source.clone(), target.coalgebra.clone(), map)
}

/// The cobar shuffle γ: Ω(C₁ ⊗ C₂) → Ω C₁ ⊗ Ω C₂, the product over letters of
/// ⟨c⟩⊗ε(d) + ε(c)⊗⟨d⟩ in the tensor-square algebra of the cobars.
pub fn shuffle_gamma(
    source: &CobarAlgebra,
    source_pairing: &TensorBasis,
    target_algebra: &Arc<DgAlgebra>,
    target_pairing: &TensorBasis,
    cobar1: &CobarAlgebra,
    cobar2: &CobarAlgebra,
) -> AlgebraMorphism {
    let u1 = cobar1.base.unit_index;
    let u2 = cobar2.base.unit_index;
    let e1 = cobar1.empty_word();
    let e2 = cobar2.empty_word();
    let gamma_letter = |z: usize| -> SparseVec {
        let (x, y) = source_pairing.pair(z);
        if y == u2 && x != u1 {
            // ⟨x⟩ ⊗ 1
            match cobar1.word_index(&[x]) {
                Some(w) => target_pairing
                    .index_of(w, e2)
                    .map(|k| vec![(k, Scalar::ONE)])
                    .unwrap_or_default(),
                None => Vec::new(),
            }
        } else if x == u1 && y != u2 {
            match cobar2.word_index(&[y]) {
                Some(w) => target_pairing
                    .index_of(e1, w)
                    .map(|k| vec![(k, Scalar::ONE)])
                    .unwrap_or_default(),
                None => Vec::new(),
            }
        } else {
            Vec::new()
        }
    };
    let cols = (0..source.basis().len())
        .map(|i| {
            let word = &source.words[i];
            let mut acc: SparseVec = target_algebra.unit.clone();
            for &z in word {
                let gz = gamma_letter(z);
                acc = target_algebra.mult_vec(&acc, &gz);
                if acc.is_empty() {
                    break;
                }
            }
            acc
        })
        .collect();
    let map = GradedMap::from_columns(
        source.basis().clone(),
        target_algebra.basis().clone(),
        0,
        cols,
    );
    AlgebraMorphism::new(source.algebra.clone(), target_algebra.clone(), map)
}

/// The exterior-product interleaving on two-sided bar words: shuffle two
/// letter lists that already live in the combined algebra.
pub(crate) fn shuffle_letter_lists(
    ring: &CoefficientRing,
    left: &[(usize, usize)],
    right: &[(usize, usize)],
) -> Vec<(Vec<usize>, Scalar)> {
    shuffles(left, right)
        .into_iter()
        .map(|(w, s)| (w, ring.from_i64(s)))
        .collect()
}
