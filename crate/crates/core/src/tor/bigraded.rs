use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::graded::{ChainComplex, GradedMap};
use crate::linalg::{
    homology_at, CoefficientRing, ColumnReduction, HomologySpace, ModuleSummary, Scalar,
    SparseMatrix, SparseVec,
};

/// A block of a bigraded (or totally graded) complex: key (p, q) when the
/// bigrading is genuine, (0, n) in total-degree mode.
pub type BlockKey = (usize, usize);

/// A complex carrying Tor data: the underlying chain complex, a bidegree per
/// basis element, and whether the differential preserves the internal degree
/// (zero-differential inputs) so homology is honestly bigraded.
pub struct TorView {
    pub ring: CoefficientRing,
    pub complex: ChainComplex,
    pub bidegrees: Vec<(usize, usize)>,
    pub bigraded: bool,
    /// Reporting bound: homology is exact for total degrees ≤ this.
    pub max_degree: usize,
    block_cells: BTreeMap<BlockKey, Vec<usize>>,
}

impl TorView {
    pub fn new(
        ring: CoefficientRing,
        complex: ChainComplex,
        bidegrees: Vec<(usize, usize)>,
        bigraded: bool,
        max_degree: usize,
    ) -> Self {
        let mut block_cells: BTreeMap<BlockKey, Vec<usize>> = BTreeMap::new();
        for (i, &(p, q)) in bidegrees.iter().enumerate() {
            let key = if bigraded {
                (p, q)
            } else {
                (0, complex.basis.degree(i))
            };
            block_cells.entry(key).or_default().push(i);
        }
        // deterministic order within blocks: basis order
        for v in block_cells.values_mut() {
            v.sort_unstable();
        }
        TorView {
            ring,
            complex,
            bidegrees,
            bigraded,
            max_degree,
            block_cells,
        }
    }

    pub fn total_degree(&self, key: BlockKey) -> usize {
        if self.bigraded {
            key.1 - key.0
        } else {
            key.1
        }
    }

    /// Block keys with total degree within the reporting bound, ordered by
    /// (total degree, word length).
    pub fn keys(&self) -> Vec<BlockKey> {
        let mut keys: Vec<BlockKey> = self
            .block_cells
            .keys()
            .copied()
            .filter(|&k| self.total_degree(k) <= self.max_degree)
            .collect();
        keys.sort_by_key(|&k| (self.total_degree(k), k.0));
        keys
    }

    pub fn bidegrees_of(&self, i: usize) -> (usize, usize) {
        self.bidegrees[i]
    }

    pub fn cells_in(&self, key: BlockKey) -> &[usize] {
        self.block_cells
            .get(&key)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// The key the differential sends this block to.
    fn d_target(&self, key: BlockKey) -> BlockKey {
        if self.bigraded {
            (key.0 - 1, key.1)
        } else {
            (0, key.1 + 1)
        }
    }

    /// The key mapping into this block.
    fn d_source(&self, key: BlockKey) -> Option<BlockKey> {
        if self.bigraded {
            Some((key.0 + 1, key.1))
        } else if key.1 == 0 {
            None
        } else {
            Some((0, key.1 - 1))
        }
    }

    /// The differential block leaving `key`, with rows indexed by the target
    /// block's cells.
    pub fn d_block(&self, key: BlockKey) -> SparseMatrix {
        let cols_idx = self.cells_in(key);
        let target = if self.bigraded && key.0 == 0 {
            Vec::new()
        } else {
            self.cells_in(self.d_target(key)).to_vec()
        };
        let row_of: BTreeMap<usize, usize> =
            target.iter().enumerate().map(|(r, &i)| (i, r)).collect();
        let mut m = SparseMatrix::zero(target.len(), cols_idx.len());
        for (c, &i) in cols_idx.iter().enumerate() {
            let col: SparseVec = self
                .complex
                .d
                .column(i)
                .iter()
                .filter_map(|(j, v)| row_of.get(j).map(|&r| (r, v.clone())))
                .collect();
            m.set_column(c, col);
        }
        m
    }

    /// Localize a global chain vector to a block.
    pub fn localize(&self, key: BlockKey, v: &SparseVec) -> SparseVec {
        let cells = self.cells_in(key);
        let pos: BTreeMap<usize, usize> = cells.iter().enumerate().map(|(r, &i)| (i, r)).collect();
        let mut out: SparseVec = v
            .iter()
            .filter_map(|(i, c)| pos.get(i).map(|&r| (r, c.clone())))
            .collect();
        out.sort_by_key(|(r, _)| *r);
        out
    }

    pub fn globalize(&self, key: BlockKey, v: &SparseVec) -> SparseVec {
        let cells = self.cells_in(key);
        let mut out: SparseVec = v.iter().map(|(r, c)| (cells[*r], c.clone())).collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    /// The block key of a homogeneous global vector.
    pub fn key_of(&self, v: &SparseVec) -> Option<BlockKey> {
        let (i, _) = v.first()?;
        let key = if self.bigraded {
            self.bidegrees[*i]
        } else {
            (0, self.complex.basis.degree(*i))
        };
        Some(key)
    }
}

/// Additive Tor data: one module summary per block, plus the merged view per
/// total degree.
pub struct BigradedTor {
    pub ring: CoefficientRing,
    pub bigraded: bool,
    pub max_degree: usize,
    pub blocks: BTreeMap<BlockKey, ModuleSummary>,
    pub totals: Vec<ModuleSummary>,
}

impl BigradedTor {
    pub fn total_rank(&self, n: usize) -> usize {
        self.totals.get(n).map(|s| s.free_rank).unwrap_or(0)
    }

    pub fn total_torsion(&self, n: usize) -> Vec<BigInt> {
        self.totals
            .get(n)
            .map(|s| s.torsion.clone())
            .unwrap_or_default()
    }
}

/// Merge invariant-factor lists of a direct sum back into a divisibility
/// chain (prime-power bookkeeping; torsion orders here are small).
pub fn merge_invariant_factors(lists: &[&[BigInt]]) -> Vec<BigInt> {
    let mut by_prime: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
    for list in lists {
        for d in *list {
            let mut n = d.clone();
            let mut p = BigInt::from(2);
            while &p * &p <= n {
                if (&n % &p) == BigInt::from(0) {
                    let mut e = 0u32;
                    while (&n % &p) == BigInt::from(0) {
                        n /= &p;
                        e += 1;
                    }
                    by_prime.entry(p.clone()).or_default().push(e);
                }
                p += 1;
            }
            if n > BigInt::one() {
                by_prime.entry(n).or_default().push(1);
            }
        }
    }
    let mut slots: Vec<BigInt> = Vec::new();
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (k, e) in exps.iter().enumerate() {
            if slots.len() <= k {
                slots.push(BigInt::one());
            }
            slots[k] *= p.pow(*e);
        }
    }
    // slots[0] is the largest invariant factor; reverse into d₁ | d₂ | …
    slots.reverse();
    slots
}

/// Compute ranks along a chain of blocks with the clearing optimization:
/// matrices are fed so that `mats[k+1] ∘ mats[k] = 0`, and pivot rows of one
/// reduction zero out the corresponding columns of the next.
fn chain_ranks(ring: &CoefficientRing, mats: &[SparseMatrix]) -> Vec<usize> {
    let mut cleared: BTreeSet<usize> = BTreeSet::new();
    let mut ranks = Vec::with_capacity(mats.len());
    for m in mats {
        let mut red = ColumnReduction::new(*ring, false);
        for (c, col) in m.columns().iter().enumerate() {
            if cleared.contains(&c) {
                continue;
            }
            red.feed(col.clone());
        }
        ranks.push(red.rank());
        cleared = red.pivot_rows().collect();
    }
    ranks
}

/// Additive homology of a Tor view: free rank and torsion per block.
pub fn tor_additive(view: &TorView) -> Result<BigradedTor> {
    let ring = view.ring;
    let mut blocks: BTreeMap<BlockKey, ModuleSummary> = BTreeMap::new();
    if ring.is_field() {
        // rank bookkeeping with clearing, chained within each q (bigraded)
        // or along the total degree (dg inputs)
        let keys = view.keys();
        let mut chains: BTreeMap<usize, Vec<BlockKey>> = BTreeMap::new();
        for k in keys {
            let chain_id = if view.bigraded { k.1 } else { 0 };
            chains.entry(chain_id).or_default().push(k);
        }
        for (_, mut chain) in chains {
            if view.bigraded {
                // feed from the top word length downward (d lowers p);
                // include one block beyond the reporting range when present
                chain.sort_by_key(|k| std::cmp::Reverse(k.0));
                let mut full = chain.clone();
                if let Some(&top) = chain.first() {
                    let above = (top.0 + 1, top.1);
                    if !view.cells_in(above).is_empty() {
                        full.insert(0, above);
                    }
                }
                let mats: Vec<SparseMatrix> = full.iter().map(|&k| view.d_block(k)).collect();
                let ranks = chain_ranks(&ring, &mats);
                for (i, &key) in full.iter().enumerate() {
                    if view.total_degree(key) > view.max_degree {
                        continue;
                    }
                    let dim = view.cells_in(key).len();
                    let rank_out = ranks[i];
                    let rank_in = if i == 0 { 0 } else { ranks[i - 1] };
                    blocks.insert(
                        key,
                        ModuleSummary {
                            free_rank: dim - rank_out - rank_in,
                            torsion: Vec::new(),
                            generators: Vec::new(),
                        },
                    );
                }
            } else {
                // total mode: d raises the degree
                chain.sort_by_key(|k| k.1);
                let mats: Vec<SparseMatrix> = chain.iter().map(|&k| view.d_block(k)).collect();
                let ranks = chain_ranks(&ring, &mats);
                for (i, &key) in chain.iter().enumerate() {
                    let dim = view.cells_in(key).len();
                    let rank_out = ranks[i];
                    let rank_in = if i == 0 { 0 } else { ranks[i - 1] };
                    blocks.insert(
                        key,
                        ModuleSummary {
                            free_rank: dim - rank_out - rank_in,
                            torsion: Vec::new(),
                            generators: Vec::new(),
                        },
                    );
                }
            }
        }
    } else {
        for key in view.keys() {
            let d_out = view.d_block(key);
            let d_in = match view.d_source(key) {
                Some(src) => view.d_block(src),
                None => SparseMatrix::zero(view.cells_in(key).len(), 0),
            };
            let h = homology_at(&d_in, &d_out, &ring)?;
            blocks.insert(key, h.summary);
        }
    }
    let mut totals: Vec<ModuleSummary> = (0..=view.max_degree)
        .map(|_| ModuleSummary {
            free_rank: 0,
            torsion: Vec::new(),
            generators: Vec::new(),
        })
        .collect();
    let mut torsion_per_degree: Vec<Vec<&[BigInt]>> = vec![Vec::new(); view.max_degree + 1];
    for (&key, s) in &blocks {
        let n = view.total_degree(key);
        totals[n].free_rank += s.free_rank;
        torsion_per_degree[n].push(&s.torsion);
    }
    for (n, lists) in torsion_per_degree.iter().enumerate() {
        totals[n].torsion = merge_invariant_factors(lists);
    }
    Ok(BigradedTor {
        ring,
        bigraded: view.bigraded,
        max_degree: view.max_degree,
        blocks,
        totals,
    })
}

/// Full homology workspace: block-level solving data, built on demand.
pub struct TorWorkspace<'a> {
    pub view: &'a TorView,
    spaces: BTreeMap<BlockKey, Arc<HomologySpace>>,
}

impl<'a> TorWorkspace<'a> {
    pub fn new(view: &'a TorView) -> Self {
        TorWorkspace {
            view,
            spaces: BTreeMap::new(),
        }
    }

    pub fn space(&mut self, key: BlockKey) -> Result<Arc<HomologySpace>> {
        if let Some(s) = self.spaces.get(&key) {
            return Ok(s.clone());
        }
        let d_out = self.view.d_block(key);
        let d_in = match self.view.d_source(key) {
            Some(src) => self.view.d_block(src),
            None => SparseMatrix::zero(self.view.cells_in(key).len(), 0),
        };
        let h = Arc::new(homology_at(&d_in, &d_out, &self.view.ring)?);
        self.spaces.insert(key, h.clone());
        Ok(h)
    }

    /// Coordinates of a global cycle in the homology of its block.
    pub fn coordinates(&mut self, key: BlockKey, global: &SparseVec) -> Result<Vec<Scalar>> {
        let local = self.view.localize(key, global);
        let space = self.space(key)?;
        space.coordinates(&local)
    }

    /// Representative cycle (global coordinates) of one block generator.
    pub fn generator(&mut self, key: BlockKey, idx: usize) -> Result<SparseVec> {
        let space = self.space(key)?;
        Ok(self.view.globalize(key, &space.summary.generators[idx]))
    }

    fn keys_at(&self, n: usize) -> Vec<BlockKey> {
        self.view
            .keys()
            .into_iter()
            .filter(|&k| self.view.total_degree(k) == n)
            .collect()
    }

    /// Representatives of all homology generators in one total degree, in
    /// block order.
    pub fn total_generators(&mut self, n: usize) -> Result<Vec<SparseVec>> {
        let mut out = Vec::new();
        for key in self.keys_at(n) {
            let count = self.space(key)?.summary.total_generators();
            for i in 0..count {
                out.push(self.generator(key, i)?);
            }
        }
        Ok(out)
    }

    /// Coordinates of a total-degree-n cycle over all generators of that
    /// degree (block order). In the bigraded case the differential preserves
    /// the internal degree, so block components of a cycle are cycles.
    pub fn total_coordinates(&mut self, n: usize, cycle: &SparseVec) -> Result<Vec<Scalar>> {
        let mut out = Vec::new();
        for key in self.keys_at(n) {
            let coords = self.coordinates(key, cycle)?;
            out.extend(coords);
        }
        Ok(out)
    }

    /// Additive orders of the total-degree-n generators, aligned with
    /// `total_generators`.
    pub fn total_orders(&mut self, n: usize) -> Result<Vec<Option<BigInt>>> {
        let mut out = Vec::new();
        for key in self.keys_at(n) {
            let space = self.space(key)?;
            let t = space.summary.torsion.len();
            for i in 0..space.summary.total_generators() {
                out.push(if i < t {
                    Some(space.summary.torsion[i].clone())
                } else {
                    None
                });
            }
        }
        Ok(out)
    }
}

/// The induced map on block homology of a chain map between Tor views.
pub fn induced_on_homology(
    map: &GradedMap,
    source_ws: &mut TorWorkspace<'_>,
    target_ws: &mut TorWorkspace<'_>,
    source_key: BlockKey,
    target_key: BlockKey,
) -> Result<Vec<Vec<Scalar>>> {
    let ring = source_ws.view.ring;
    let n = source_ws.space(source_key)?.summary.total_generators();
    let mut cols = Vec::with_capacity(n);
    for i in 0..n {
        let rep = source_ws.generator(source_key, i)?;
        let image = map.apply(&ring, &rep);
        cols.push(target_ws.coordinates(target_key, &image)?);
    }
    Ok(cols)
}
