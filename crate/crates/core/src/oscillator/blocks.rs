//! Conserved-charge block machinery: basis layout, Hermitian block matrices,
//! per-block eigen-propagators and block-stored states.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::fock::{Amplitudes, FockState, Occupation, Operator};
use crate::{Error, Result, C64};

/// One invariant subspace of the Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    /// Values of the conserved charges shared by every basis vector.
    pub charge: Vec<i64>,
    pub basis: Vec<Occupation>,
}

/// Partition of the reachable basis into invariant blocks.
#[derive(Clone, Debug)]
pub struct BlockLayout {
    modes: usize,
    blocks: Vec<Block>,
    index: BTreeMap<Occupation, (usize, usize)>,
}

impl BlockLayout {
    /// Smallest set of blocks closed under `op` that contains every seed.
    ///
    /// Each block is a connected component of the graph in which `op` links
    /// basis vectors; `charges` are the conserved weights used to label (and
    /// check) the blocks.
    pub fn closure(op: &Operator, seeds: &[Occupation], charges: &[Vec<i64>]) -> Result<Self> {
        let modes = seeds.first().map_or(0, |s| s.modes());
        let adjoint = op.adjoint();
        let mut blocks: Vec<Block> = Vec::new();
        let mut index = BTreeMap::new();
        for seed in seeds {
            if index.contains_key(seed) {
                continue;
            }
            let charge: Vec<i64> = charges.iter().map(|w| seed.charge(w)).collect();
            let b = blocks.len();
            let mut basis = vec![*seed];
            index.insert(*seed, (b, 0));
            let mut cursor = 0;
            while cursor < basis.len() {
                let occ = basis[cursor];
                cursor += 1;
                for term in op.terms().iter().chain(adjoint.terms()) {
                    if let Some((img, _)) = term.apply(&occ) {
                        if index.contains_key(&img) {
                            continue;
                        }
                        if charges
                            .iter()
                            .zip(&charge)
                            .any(|(w, &q)| img.charge(w) != q)
                        {
                            return Err(Error::invalid(
                                "charges",
                                "operator does not conserve the given charges",
                            ));
                        }
                        index.insert(img, (b, basis.len()));
                        basis.push(img);
                    }
                }
            }
            // canonical order inside the block
            basis.sort();
            for (i, occ) in basis.iter().enumerate() {
                index.insert(*occ, (b, i));
            }
            blocks.push(Block { charge, basis });
        }
        Ok(BlockLayout {
            modes,
            blocks,
            index,
        })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn locate(&self, occ: &Occupation) -> Option<(usize, usize)> {
        self.index.get(occ).copied()
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// Per-mode dimensions of the smallest dense box holding every block.
    pub fn dense_dims(&self) -> Vec<usize> {
        let mut dims = vec![1; self.modes];
        for occ in self.index.keys() {
            for (k, d) in dims.iter_mut().enumerate() {
                *d = (*d).max(occ.get(k) as usize + 1);
            }
        }
        dims
    }
}

/// Hermitian matrices of an operator restricted to each block.
#[derive(Clone, Debug)]
pub struct BlockHamiltonian {
    pub layout: Arc<BlockLayout>,
    pub matrices: Vec<DMatrix<C64>>,
}

impl BlockHamiltonian {
    pub fn new(layout: Arc<BlockLayout>, op: &Operator) -> Result<Self> {
        let mut matrices = Vec::with_capacity(layout.blocks().len());
        for (b, block) in layout.blocks().iter().enumerate() {
            let n = block.basis.len();
            let mut m = DMatrix::<C64>::zeros(n, n);
            for (j, occ) in block.basis.iter().enumerate() {
                for term in op.terms() {
                    if let Some((img, c)) = term.apply(occ) {
                        match layout.locate(&img) {
                            Some((bi, i)) if bi == b => m[(i, j)] += c,
                            _ => return Err(Error::invalid("layout", "operator leaves its block")),
                        }
                    }
                }
            }
            matrices.push(m);
        }
        Ok(BlockHamiltonian { layout, matrices })
    }

    /// Largest `|H_ij − conj(H_ji)|` over all blocks.
    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for m in &self.matrices {
            for i in 0..m.nrows() {
                for j in 0..=i {
                    dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
                }
            }
        }
        dev
    }
}

/// Per-block eigendecomposition `H_b = V_b diag(E_b) V_b†`.
#[derive(Clone, Debug)]
pub struct BlockPropagator {
    pub layout: Arc<BlockLayout>,
    eigen: Vec<(DVector<f64>, DMatrix<C64>)>,
}

impl BlockPropagator {
    pub fn new(h: &BlockHamiltonian) -> Result<Self> {
        let eigen = h
            .matrices
            .iter()
            .map(|m| {
                let e = SymmetricEigen::try_new(m.clone(), 1e-15, 10_000)
                    .ok_or_else(|| Error::invalid("hamiltonian", "eigendecomposition failed"))?;
                Ok((e.eigenvalues, e.eigenvectors))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockPropagator {
            layout: h.layout.clone(),
            eigen,
        })
    }

    pub fn eigenvalues(&self, block: usize) -> &DVector<f64> {
        &self.eigen[block].0
    }

    /// Coefficients of `state` in each block's eigenbasis.
    pub fn project(&self, state: &BlockState) -> Vec<DVector<C64>> {
        self.eigen
            .iter()
            .zip(&state.amps)
            .map(|((_, v), amps)| v.ad_mul(&DVector::from_column_slice(amps)))
            .collect()
    }

    /// Rebuild the state at time `t` from eigenbasis coefficients.
    pub fn from_coefficients(&self, coeffs: &[DVector<C64>], t: f64) -> BlockState {
        let amps = self
            .eigen
            .iter()
            .zip(coeffs)
            .map(|((e, v), c)| {
                let phased = DVector::from_iterator(
                    c.len(),
                    e.iter()
                        .zip(c.iter())
                        .map(|(&ek, &ck)| ck * C64::from_polar(1.0, -ek * t)),
                );
                (v * phased).as_slice().to_vec()
            })
            .collect();
        BlockState {
            layout: self.layout.clone(),
            amps,
        }
    }

    /// `e^{−iHt}|state>`.
    pub fn propagate(&self, state: &BlockState, t: f64) -> BlockState {
        self.from_coefficients(&self.project(state), t)
    }
}

/// State stored block by block over a [`BlockLayout`].
#[derive(Clone, Debug)]
pub struct BlockState {
    pub layout: Arc<BlockLayout>,
    pub amps: Vec<Vec<C64>>,
}

impl BlockState {
    pub fn zeros(layout: Arc<BlockLayout>) -> Self {
        let amps = layout
            .blocks()
            .iter()
            .map(|b| vec![C64::new(0.0, 0.0); b.basis.len()])
            .collect();
        BlockState { layout, amps }
    }

    pub fn set(&mut self, occ: &Occupation, value: C64) -> Result<()> {
        let (b, i) = self
            .layout
            .locate(occ)
            .ok_or_else(|| Error::invalid("occupation", "basis vector is not in the layout"))?;
        self.amps[b][i] = value;
        Ok(())
    }

    /// Copy into a dense box of the given per-mode dimensions.
    pub fn to_dense(&self, dims: &[usize]) -> Result<FockState> {
        let mut dense = FockState::vacuum(dims)?;
        let mut amps = vec![C64::new(0.0, 0.0); dense.amplitudes().len()];
        for (block, values) in self.layout.blocks().iter().zip(&self.amps) {
            for (occ, &a) in block.basis.iter().zip(values) {
                let idx = dense.index_of(occ).ok_or_else(|| {
                    Error::invalid("dims", "dense box is too small for the layout")
                })?;
                amps[idx] = a;
            }
        }
        dense = FockState::from_amplitudes(dims, amps)?;
        Ok(dense)
    }
}

impl Amplitudes for BlockState {
    fn n_modes(&self) -> usize {
        self.layout.modes()
    }

    fn amplitude(&self, occ: &Occupation) -> C64 {
        self.layout
            .locate(occ)
            .map_or(C64::new(0.0, 0.0), |(b, i)| self.amps[b][i])
    }

    fn for_each_nonzero(&self, f: &mut dyn FnMut(&Occupation, C64)) {
        for (block, values) in self.layout.blocks().iter().zip(&self.amps) {
            for (occ, &a) in block.basis.iter().zip(values) {
                if a.re != 0.0 || a.im != 0.0 {
                    f(occ, a);
                }
            }
        }
    }
}

/// An operator as explicit matrix elements between basis vectors of a
/// layout, addressed by flat index (blocks concatenated in order).
///
/// Elements whose image falls outside the layout are dropped; a state
/// supported on the layout has zero amplitude there anyway.
#[derive(Clone, Debug)]
pub struct SparseOperator {
    entries: Vec<(usize, usize, C64)>,
}

impl SparseOperator {
    pub fn new(layout: &BlockLayout, op: &Operator) -> Self {
        let offsets = layout.offsets();
        let mut entries = Vec::new();
        for (b, block) in layout.blocks().iter().enumerate() {
            for (j, occ) in block.basis.iter().enumerate() {
                for term in op.terms() {
                    if let Some((img, c)) = term.apply(occ) {
                        if let Some((bi, i)) = layout.locate(&img) {
                            entries.push((offsets[bi] + i, offsets[b] + j, c));
                        }
                    }
                }
            }
        }
        SparseOperator { entries }
    }

    /// `<ψ|O|ψ>` for a flat amplitude vector.
    pub fn expectation(&self, flat: &[C64]) -> C64 {
        self.entries
            .iter()
            .map(|&(i, j, c)| flat[i].conj() * c * flat[j])
            .sum()
    }
}

impl BlockLayout {
    /// Start of each block in the flat ordering.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|b| {
                let o = acc;
                acc += b.basis.len();
                o
            })
            .collect()
    }
}

impl BlockState {
    pub fn flat(&self) -> Vec<C64> {
        self.amps.iter().flatten().copied().collect()
    }
}
