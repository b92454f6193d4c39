use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

use super::gauss::ColumnReduction;
use super::scalar::{CoefficientRing, Scalar};
use super::snf::{smith_normal_form, SmithNormalForm};
use super::sparse::{SparseMatrix, SparseVec};

/// The homology of a three-term sequence at its middle spot, as a finitely
/// generated module over the coefficient ring: free rank, invariant factors,
/// and chosen representative cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSummary {
    pub free_rank: usize,
    /// Invariant factors d₁ | d₂ | …, each > 1; empty over a field.
    pub torsion: Vec<BigInt>,
    /// Representative cycles, torsion generators first (aligned with
    /// `torsion`), then free generators.
    pub generators: Vec<SparseVec>,
}

impl ModuleSummary {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn total_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of the i-th generator: `Some(d)` for torsion, `None` for free.
    pub fn order(&self, i: usize) -> Option<&BigInt> {
        self.torsion.get(i)
    }
}

enum Solver {
    Field {
        kernel_red: ColumnReduction,
        kernel: Vec<SparseVec>,
        image_red: ColumnReduction,
        gen_rows: Vec<usize>,
    },
    Integer {
        kernel: Vec<SparseVec>,
        kernel_snf: SmithNormalForm,
        relation_left: SparseMatrix,
        row_kind: Vec<RowKind>,
    },
}

#[derive(Clone, Copy, PartialEq)]
enum RowKind {
    Killed,
    Torsion(usize),
    Free(usize),
}

/// Homology at one spot together with the solving data needed to express
/// further cycles in the chosen homology coordinates.
pub struct HomologySpace {
    pub ring: CoefficientRing,
    pub dim: usize,
    pub summary: ModuleSummary,
    d_out: SparseMatrix,
    solver: Solver,
}

/// ker(d_out) / im(d_in), with representatives.
///
/// `d_in` and `d_out` are consecutive differentials: d_in lands in the spot
/// whose homology is wanted and d_out leaves it.
pub fn homology_at(
    d_in: &SparseMatrix,
    d_out: &SparseMatrix,
    ring: &CoefficientRing,
) -> Result<HomologySpace> {
    assert_eq!(d_in.rows, d_out.cols, "dimension mismatch");
    // d_out · d_in = 0
    for (c, col) in d_in.columns().iter().enumerate() {
        if !d_out.apply(ring, col).is_empty() {
            return Err(Error::CompositionNotZero { col: c });
        }
    }
    if ring.is_field() {
        homology_field(d_in, d_out, ring)
    } else {
        homology_integer(d_in, d_out)
    }
}

fn homology_field(
    d_in: &SparseMatrix,
    d_out: &SparseMatrix,
    ring: &CoefficientRing,
) -> Result<HomologySpace> {
    let dim = d_out.cols;
    let mut out_red = ColumnReduction::new(*ring, true);
    out_red.feed_matrix(d_out);
    let kernel: Vec<SparseVec> = out_red.kernel_combos().to_vec();

    // kernel in its own reduction, for expressing cycles in kernel coordinates
    let mut kernel_red = ColumnReduction::new(*ring, true);
    for k in &kernel {
        kernel_red.feed(k.clone());
    }
    debug_assert_eq!(kernel_red.rank(), kernel.len());

    // image of d_in in kernel coordinates
    let mut image_red = ColumnReduction::new(*ring, false);
    for col in d_in.columns() {
        if col.is_empty() {
            continue;
        }
        let coords = kernel_red
            .solve(col)
            .expect("image of d_in lies in the kernel of d_out");
        image_red.feed(coords);
    }

    let pivot_rows: std::collections::BTreeSet<usize> = image_red.pivot_rows().collect();
    let gen_rows: Vec<usize> = (0..kernel.len())
        .filter(|r| !pivot_rows.contains(r))
        .collect();
    let generators = gen_rows.iter().map(|&r| kernel[r].clone()).collect();
    Ok(HomologySpace {
        ring: *ring,
        dim,
        summary: ModuleSummary {
            free_rank: gen_rows.len(),
            torsion: Vec::new(),
            generators,
        },
        d_out: d_out.clone(),
        solver: Solver::Field {
            kernel_red,
            kernel,
            image_red,
            gen_rows,
        },
    })
}

fn homology_integer(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<HomologySpace> {
    let z = CoefficientRing::Integers;
    let dim = d_out.cols;
    let out_snf = smith_normal_form(d_out);
    let kernel = out_snf.kernel_basis(d_out);
    let kernel_mat = SparseMatrix::from_columns(dim, kernel.clone());
    let kernel_snf = smith_normal_form(&kernel_mat);
    // the kernel lattice is saturated, so its basis matrix has unit divisors
    debug_assert!(kernel_snf.divisors.iter().all(|d| d.is_one()));

    // relations: d_in columns in kernel coordinates
    let relations = SparseMatrix::from_columns(
        kernel.len(),
        d_in.columns()
            .iter()
            .map(|col| {
                if col.is_empty() {
                    Vec::new()
                } else {
                    kernel_snf
                        .solve(col)
                        .expect("image of d_in lies in the kernel of d_out")
                }
            })
            .collect(),
    );
    let rel_snf = smith_normal_form(&relations);

    let mut row_kind = vec![RowKind::Killed; kernel.len()];
    let mut torsion = Vec::new();
    let mut torsion_rows = Vec::new();
    let mut free_rows = Vec::new();
    for (i, kind) in row_kind.iter_mut().enumerate() {
        if i < rel_snf.rank {
            if rel_snf.divisors[i].is_one() {
                continue;
            }
            *kind = RowKind::Torsion(torsion.len());
            torsion.push(rel_snf.divisors[i].clone());
            torsion_rows.push(i);
        } else {
            *kind = RowKind::Free(free_rows.len());
            free_rows.push(i);
        }
    }
    // generator i of the quotient corresponds to column i of left⁻¹ in kernel
    // coordinates
    let mut generators = Vec::new();
    for &i in torsion_rows.iter().chain(free_rows.iter()) {
        let col = rel_snf.left_inv.column(i);
        generators.push(kernel_mat.apply(&z, col));
    }
    Ok(HomologySpace {
        ring: z,
        dim,
        summary: ModuleSummary {
            free_rank: free_rows.len(),
            torsion,
            generators,
        },
        d_out: d_out.clone(),
        solver: Solver::Integer {
            kernel,
            kernel_snf,
            relation_left: rel_snf.left,
            row_kind,
        },
    })
}

impl HomologySpace {
    /// Coordinates of a cycle over the chosen generators, in generator order
    /// (torsion generators first, reduced modulo their invariant factor).
    pub fn coordinates(&self, cycle: &SparseVec) -> Result<Vec<Scalar>> {
        if let Some((row, _)) = self.d_out.apply(&self.ring, cycle).first() {
            return Err(Error::NotACycle { row: *row });
        }
        match &self.solver {
            Solver::Field {
                kernel_red,
                image_red,
                gen_rows,
                ..
            } => {
                let coords = kernel_red.solve(cycle).ok_or(Error::NotACycle { row: 0 })?;
                let nf = image_red.normal_form(&coords);
                let lookup: std::collections::BTreeMap<usize, Scalar> = nf.into_iter().collect();
                Ok(gen_rows
                    .iter()
                    .map(|r| lookup.get(r).cloned().unwrap_or(Scalar::ZERO))
                    .collect())
            }
            Solver::Integer {
                kernel_snf,
                relation_left,
                row_kind,
                ..
            } => {
                let coords = kernel_snf.solve(cycle).ok_or(Error::NotACycle { row: 0 })?;
                let y = relation_left.apply(&self.ring, &coords);
                let lookup: std::collections::BTreeMap<usize, Scalar> = y.into_iter().collect();
                let mut torsion_part = Vec::new();
                let mut free_part = Vec::new();
                for (i, kind) in row_kind.iter().enumerate() {
                    match kind {
                        RowKind::Killed => {}
                        RowKind::Torsion(t) => {
                            let v = lookup.get(&i).cloned().unwrap_or(Scalar::ZERO);
                            let d = &self.summary.torsion[*t];
                            let reduced = v.to_bigint().unwrap().modpow(&BigInt::one(), d);
                            torsion_part.push(Scalar::from_bigint(reduced));
                        }
                        RowKind::Free(_) => {
                            free_part.push(lookup.get(&i).cloned().unwrap_or(Scalar::ZERO));
                        }
                    }
                }
                torsion_part.extend(free_part);
                Ok(torsion_part)
            }
        }
    }

    /// Whether two cycles are homologous.
    pub fn same_class(&self, a: &SparseVec, b: &SparseVec) -> Result<bool> {
        Ok(self.coordinates(a)? == self.coordinates(b)?)
    }

    pub fn kernel_dim(&self) -> usize {
        match &self.solver {
            Solver::Field { kernel, .. } => kernel.len(),
            Solver::Integer { kernel, .. } => kernel.len(),
        }
    }
}

/// Convenience wrapper matching the spec-level operation: coordinates of a
/// single cycle without keeping the workspace around.
pub fn coordinates_in_homology(
    cycle: &SparseVec,
    d_in: &SparseMatrix,
    d_out: &SparseMatrix,
    ring: &CoefficientRing,
) -> Result<Vec<Scalar>> {
    homology_at(d_in, d_out, ring)?.coordinates(cycle)
}
