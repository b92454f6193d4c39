use std::sync::Arc;

use crate::barcobar::{extend_from_cobar, twisting_of_cobar_map, CobarAlgebra, TwistingCochain};
use crate::dga::{
    check_homotopy, check_tc_homotopy, convolution_unit, cup, DgAlgebra, DgCoalgebra, DgaHomotopy,
    HomotopyReport,
};
use crate::error::{Error, Result};
use crate::graded::GradedMap;
use crate::linalg::{Scalar, SparseVec, VecBuilder};

/// A homotopy of twisting cochains: a degree-0 map x with ε x = ε, x η = η,
/// and d(x) = t₀ ∪ x − x ∪ t₁.
#[derive(Clone)]
pub struct TwistingHomotopy {
    pub coalg: Arc<DgCoalgebra>,
    pub alg: Arc<DgAlgebra>,
    pub t0: GradedMap,
    pub t1: GradedMap,
    pub x: GradedMap,
}

impl TwistingHomotopy {
    /// The constant homotopy η ε at a twisting cochain.
    pub fn constant(coalg: &Arc<DgCoalgebra>, alg: &Arc<DgAlgebra>, t: &GradedMap) -> Self {
        TwistingHomotopy {
            coalg: coalg.clone(),
            alg: alg.clone(),
            t0: t.clone(),
            t1: t.clone(),
            x: convolution_unit(&coalg.ring, coalg, alg),
        }
    }

    pub fn check(&self) -> HomotopyReport {
        check_tc_homotopy(&self.coalg, &self.alg, &self.x, &self.t0, &self.t1)
    }
}

/// The two-sided cup inverse h^{∪−1} = Σ_ℓ (η ε − h)^{∪ℓ} of a degree-0 map
/// with x η = η; the series terminates by cocompleteness.
pub fn cup_inverse(coalg: &DgCoalgebra, alg: &DgAlgebra, x: &GradedMap) -> Result<GradedMap> {
    let ring = coalg.ring;
    let max_index = coalg.cocompleteness.values().copied().max().unwrap_or(1);
    for i in coalg.reduced() {
        if !coalg.cocompleteness.contains_key(&i) {
            return Err(Error::NotCocomplete {
                witness: coalg.basis().name(i).to_string(),
            });
        }
    }
    let unit = convolution_unit(&ring, coalg, alg);
    let u = unit.sub(&ring, x);
    let mut sum = unit.clone();
    let mut power = unit.clone();
    for _ in 0..=max_index {
        power = cup(&ring, coalg, alg, &power, &u);
        if power.is_zero_map() {
            return Ok(sum);
        }
        sum = sum.add(&ring, &power);
    }
    Err(Error::NotCocomplete {
        witness: "cup-inverse series did not terminate".into(),
    })
}

/// Composition of twisting-cochain homotopies: the cup product
/// x₀₁ ∪ x₁₂ is a homotopy t₀ ≃ t₂ when the middle cochains agree.
pub fn compose_twisting_homotopies(
    x01: &TwistingHomotopy,
    x12: &TwistingHomotopy,
) -> Result<TwistingHomotopy> {
    let ring = x01.coalg.ring;
    if !x01.t1.equal_map(&ring, &x12.t0) {
        return Err(Error::EndpointMismatch);
    }
    let x = cup(&ring, &x01.coalg, &x01.alg, &x01.x, &x12.x);
    Ok(TwistingHomotopy {
        coalg: x01.coalg.clone(),
        alg: x01.alg.clone(),
        t0: x01.t0.clone(),
        t1: x12.t1.clone(),
        x,
    })
}

/// The inverse homotopy t₁ ≃ t₀.
pub fn invert_twisting_homotopy(h: &TwistingHomotopy) -> Result<TwistingHomotopy> {
    let x = cup_inverse(&h.coalg, &h.alg, &h.x)?;
    Ok(TwistingHomotopy {
        coalg: h.coalg.clone(),
        alg: h.alg.clone(),
        t0: h.t1.clone(),
        t1: h.t0.clone(),
        x,
    })
}

/// Convert a DGA homotopy h: f₀ ≃ f₁: Ω C → A into a twisting-cochain
/// homotopy: x = η ε + h ∘ t_C.
pub fn dga_homotopy_to_twisting(
    h: &DgaHomotopy,
    source: &CobarAlgebra,
) -> Result<TwistingHomotopy> {
    let report = check_homotopy(h);
    if !report.is_valid() {
        return Err(Error::InvalidHomotopy {
            reason: format!("{:?}", report.failures),
        });
    }
    let ring = source.base.ring;
    let coalg = source.base.clone();
    let alg = h.f0.target.clone();
    let t0 = twisting_of_cobar_map(&h.f0, source);
    let t1 = twisting_of_cobar_map(&h.f1, source);
    let x = convolution_unit(&ring, &coalg, &alg).add(&ring, &h.h.compose(&ring, &source.taut));
    Ok(TwistingHomotopy {
        coalg,
        alg,
        t0: t0.map,
        t1: t1.map,
        x,
    })
}

/// Convert a twisting-cochain homotopy x: t₀ ≃ t₁ into a DGA homotopy
/// between the extended maps f^{t₀} ≃ f^{t₁}: Ω C → A, by the recursion
/// h(⟨c⟩·w) = (−1)^{|⟨c⟩|} f₀(⟨c⟩)·h(w) + x̄(c)·f₁(w).
pub fn twisting_to_dga_homotopy(
    th: &TwistingHomotopy,
    source: &CobarAlgebra,
) -> Result<DgaHomotopy> {
    let ring = th.coalg.ring;
    let alg = &th.alg;
    let t0 = TwistingCochain::new(th.coalg.clone(), alg.clone(), th.t0.clone());
    let t1 = TwistingCochain::new(th.coalg.clone(), alg.clone(), th.t1.clone());
    let f0 = extend_from_cobar(&t0, source)?;
    let f1 = extend_from_cobar(&t1, source)?;
    let x_bar = th.x.sub(&ring, &convolution_unit(&ring, &th.coalg, alg));
    // columns by increasing word length so suffixes are already done
    let n = source.basis().len();
    let mut cols: Vec<Option<SparseVec>> = vec![None; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| source.words[i].len());
    for i in order {
        let word = &source.words[i];
        if word.is_empty() {
            cols[i] = Some(Vec::new());
            continue;
        }
        let head = word[0];
        let tail = &word[1..];
        let tail_idx = source.word_index(tail).expect("suffix word tracked");
        let h_tail = cols[tail_idx].as_ref().expect("suffix computed").clone();
        let f1_tail = f1.map.column(tail_idx);
        let mut acc = VecBuilder::new();
        // (−1)^{|⟨c⟩|} t₀(c) · h(tail)
        let sign = if (th.coalg.basis().degree(head) + 1) % 2 == 1 {
            ring.from_i64(-1)
        } else {
            Scalar::ONE
        };
        let part = alg.mult_vec(th.t0.column(head), &h_tail);
        acc.add_vec(&ring, &part, &sign);
        // x̄(c) · f₁(tail)
        let part = alg.mult_vec(x_bar.column(head), f1_tail);
        acc.add_vec(&ring, &part, &Scalar::ONE);
        cols[i] = Some(acc.build());
    }
    let h = GradedMap::from_columns(
        source.basis().clone(),
        alg.basis().clone(),
        -1,
        cols.into_iter().map(|c| c.unwrap()).collect(),
    );
    Ok(DgaHomotopy { f0, f1, h })
}
