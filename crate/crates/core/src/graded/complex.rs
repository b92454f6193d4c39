use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{homology_at, CoefficientRing, HomologySpace, ModuleSummary, SparseMatrix};

use super::basis::GradedBasis;
use super::map::GradedMap;

/// A cochain complex: a graded basis with a degree-+1 differential.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    pub basis: Arc<GradedBasis>,
    pub d: GradedMap,
}

impl ChainComplex {
    pub fn new(basis: Arc<GradedBasis>, d: GradedMap) -> Self {
        assert!(GradedBasis::same(&basis, &d.source));
        assert!(GradedBasis::same(&basis, &d.target));
        assert_eq!(d.degree, 1);
        ChainComplex { basis, d }
    }

    pub fn with_zero_differential(basis: Arc<GradedBasis>) -> Self {
        let d = GradedMap::zero(basis.clone(), basis.clone(), 1);
        ChainComplex { basis, d }
    }

    pub fn has_zero_differential(&self) -> bool {
        self.d.is_zero_map()
    }

    /// d ∘ d = 0, checked on every basis element whose image's image is still
    /// tracked (source degree ≤ cutoff − 2).
    pub fn check_d_squared(&self, ring: &CoefficientRing) -> Result<()> {
        let dd = self.d.compose(ring, &self.d);
        for (i, e) in self.basis.iter() {
            if e.degree + 2 <= self.basis.cutoff && !dd.column(i).is_empty() {
                return Err(Error::CompositionNotZero { col: i });
            }
        }
        Ok(())
    }

    pub fn d_block(&self, q: usize) -> SparseMatrix {
        self.d.block(q)
    }

    /// d into degree `q`: the block leaving degree q−1 (zero for q = 0).
    pub fn d_into(&self, q: usize) -> SparseMatrix {
        if q == 0 {
            SparseMatrix::zero(self.basis.dim_in_degree(0), 0)
        } else {
            self.d.block(q - 1)
        }
    }
}

/// Homology in degrees 0..=max_degree, with full solving workspaces.
///
/// Exactness at `max_degree` needs the complex to be tracked one degree
/// further, which is why constructions carry an internal buffer degree.
pub fn complex_homology_spaces(
    c: &ChainComplex,
    ring: &CoefficientRing,
    max_degree: usize,
) -> Result<Vec<HomologySpace>> {
    if max_degree + 1 > c.basis.cutoff {
        return Err(Error::CutoffTooSmall {
            cutoff: c.basis.cutoff,
            needed: format!(
                "homology through degree {max_degree} needs degree {}",
                max_degree + 1
            ),
        });
    }
    (0..=max_degree)
        .map(|q| homology_at(&c.d_into(q), &c.d_block(q), ring))
        .collect()
}

/// Homology in degrees 0..=max_degree as bare module summaries.
pub fn complex_homology(
    c: &ChainComplex,
    ring: &CoefficientRing,
    max_degree: usize,
) -> Result<Vec<ModuleSummary>> {
    Ok(complex_homology_spaces(c, ring, max_degree)?
        .into_iter()
        .map(|h| h.summary)
        .collect())
}
