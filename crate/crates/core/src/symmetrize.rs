//! Divided differences and the rewriting of an S_λ-equivariant row into
//! S_λ-invariant generators.
//!
//! With `h_{τ_k+s} = Σ_{i=τ_k+1}^{τ_k+s} q_{{i, τ_k+s+1, …, ℓ}}`, the output is
//! `p = h·M` where `M` is block diagonal and, inside block `k+1`,
//! `M[s][j] = η_{j-s}(z_{τ_k+s+2}, …, z_{τ_{k+1}})` for `j < ℓ_{k+1}`, with
//! last column the unit vector. `U = M⁻¹·∏ B C D` satisfies `p·U = q`.
//!
//! Divided differences follow `q_{{i,j}} = (q_i - q_j)/(z_j - z_i)`, which is
//! `(-1)^{|I|-1}` times the textbook convention; the η-weights above are
//! unsigned only under this convention.

use crate::error::{Error, Result};
use crate::mpoly::{MPoly, PolyMatrix};
use crate::symring::{elementary_symmetric, BlockRing};
use std::collections::HashMap;

/// A row `(q_1, …, q_ℓ)` in the z-ring with `σ(q_i) = q_{σ(i)}` for σ ∈ S_λ
/// and `z_i - z_j | q_i - q_j`.
#[derive(Clone, Debug)]
pub struct EquivariantRow {
    pub block: BlockRing,
    pub entries: Vec<MPoly>,
}

impl EquivariantRow {
    pub fn new(block: &BlockRing, entries: Vec<MPoly>) -> Result<Self> {
        let l = block.partition.length();
        if entries.len() != l {
            return Err(Error::Dimension(format!("row of length {} for ℓ = {l}", entries.len())));
        }
        for sigma in block.generators() {
            for (i, q) in entries.iter().enumerate() {
                if q.apply_permutation(&sigma) != entries[sigma[i]] {
                    return Err(Error::NotEquivariant(format!(
                        "entry {} is not mapped to entry {}",
                        i + 1,
                        sigma[i] + 1
                    )));
                }
            }
        }
        for i in 0..l {
            for j in i + 1..l {
                entries[i].sub(&entries[j]).exact_divide_linear(i, j).map_err(|_| {
                    Error::NotEquivariant(format!("z{} - z{} does not divide q{} - q{}", i + 1, j + 1, i + 1, j + 1))
                })?;
            }
        }
        Ok(EquivariantRow { block: block.clone(), entries })
    }
}

/// Memoized divided differences of one row, keyed by the sorted index set.
pub struct DividedDifferences<'a> {
    row: &'a EquivariantRow,
    memo: HashMap<Vec<usize>, MPoly>,
}

impl<'a> DividedDifferences<'a> {
    pub fn new(row: &'a EquivariantRow) -> Self {
        DividedDifferences { row, memo: HashMap::new() }
    }

    /// `q_I` with pivots `i_r = max(I)`, `i_q = min(I)`. Indices are 0-based.
    pub fn get(&mut self, set: &[usize]) -> Result<MPoly> {
        let mut key = set.to_vec();
        key.sort_unstable();
        key.dedup();
        assert!(!key.is_empty(), "divided difference over an empty set");
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = if key.len() == 1 {
            self.row.entries[key[0]].clone()
        } else {
            let (iq, ir) = (key[0], *key.last().unwrap());
            self.with_pivots(&key, ir, iq)?
        };
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    /// `q_I = (q_{I∖{i_r}} - q_{I∖{i_q}}) / (z_{i_r} - z_{i_q})` for any
    /// distinct `i_r, i_q ∈ I`.
    pub fn with_pivots(&mut self, set: &[usize], ir: usize, iq: usize) -> Result<MPoly> {
        assert!(ir != iq && set.contains(&ir) && set.contains(&iq));
        let without = |x: usize| -> Vec<usize> { set.iter().copied().filter(|&i| i != x).collect() };
        let a = self.get(&without(ir))?;
        let b = self.get(&without(iq))?;
        a.sub(&b).exact_divide_linear(ir, iq)
    }
}

/// `h_{τ_k+s}` for every flat index, 0-based: entry `t` holds
/// `Σ_{i=τ_k}^{t} q_{{i, t+1, …, ℓ-1}}` where `τ_k` starts the block of `t`.
fn h_vector(dd: &mut DividedDifferences, block: &BlockRing) -> Result<Vec<MPoly>> {
    let l = block.partition.length();
    let mut h = Vec::with_capacity(l);
    for range in block.block_ranges() {
        for t in range.clone() {
            let tail: Vec<usize> = (t + 1..l).collect();
            let mut acc = MPoly::zero(&block.z);
            for i in range.start..=t {
                let mut set = vec![i];
                set.extend(&tail);
                acc = acc.add(&dd.get(&set)?);
            }
            h.push(acc);
        }
    }
    Ok(h)
}

/// The block-diagonal unit upper-triangular matrix M with `p = h·M`.
pub fn m_matrix(block: &BlockRing) -> PolyMatrix {
    let l = block.partition.length();
    let z = &block.z;
    let mut s = PolyMatrix::identity(z, l);
    for range in block.block_ranges() {
        let (start, end) = (range.start, range.end);
        for j in start..end - 1 {
            for r in start..j {
                // Variables z_{τ_k+s+2..τ_{k+1}} with s = r - start + 1, 0-based r+2..end.
                let vars: Vec<usize> = (r + 2..end).collect();
                let deg = j - r;
                if deg <= vars.len() {
                    s.set(r, j, elementary_symmetric(z, &vars, deg));
                }
            }
        }
    }
    s
}

/// Invariant generators `p_1 … p_ℓ` of an equivariant row.
pub fn symmetrize(row: &EquivariantRow) -> Result<Vec<MPoly>> {
    let block = &row.block;
    let mut dd = DividedDifferences::new(row);
    let h = h_vector(&mut dd, block)?;
    let s = m_matrix(block);
    let l = h.len();
    let p: Vec<MPoly> = (0..l)
        .map(|j| (0..=j).fold(MPoly::zero(&block.z), |acc, r| acc.add(&h[r].mul(s.get(r, j)))))
        .collect();
    for (i, pi) in p.iter().enumerate() {
        if !block.is_block_invariant(pi) {
            return Err(Error::Internal(format!("symmetrized entry p{} is not S_λ-invariant", i + 1)));
        }
    }
    Ok(p)
}

/// Inverse of a unit upper-triangular matrix, by back-substitution.
fn unit_upper_inverse(s: &PolyMatrix) -> PolyMatrix {
    let n = s.rows();
    let ring = s.get(0, 0).ring().clone();
    let mut x = PolyMatrix::identity(&ring, n);
    for j in 0..n {
        for i in (0..j).rev() {
            let mut acc = MPoly::zero(&ring);
            for k in i + 1..=j {
                acc = acc.add(&s.get(i, k).mul(x.get(k, j)));
            }
            x.set(i, j, acc.neg());
        }
    }
    x
}

/// The product `∏_k ∏_j B_{τ_k+j} C_{τ_k+j} D_{τ_k+j}`.
pub fn bcd_product(block: &BlockRing) -> Result<PolyMatrix> {
    let f = block.field();
    let l = block.partition.length();
    if (f.p() as usize) <= l {
        return Err(Error::ModulusTooSmall { p: f.p(), degree: l });
    }
    let z = &block.z;
    let zv = |i: usize| MPoly::var(z, i);
    let mut acc = PolyMatrix::identity(z, l);
    for (k, range) in block.block_ranges().into_iter().enumerate() {
        let tk = range.start;
        for j in 1..=range.len() {
            let col = tk + j - 1;
            // B: inside the block, rows t < j get z_{τ_k+j} - z_{τ_k+t} in column j; (j, j) is -1.
            let mut b = PolyMatrix::identity(z, l);
            let mut c = PolyMatrix::identity(z, l);
            if !(k == 0 && j == 1) {
                for t in tk..col {
                    b.set(t, col, zv(col).sub(&zv(t)));
                }
                b.set(col, col, MPoly::constant(z, f.neg(1)));
                // C: diagonal z_{τ_k+j} - z_{τ_k+t} for t < j; row j is -1/j on columns 1..j.
                let mj = f.neg(f.inv(j as u32));
                for t in tk..col {
                    c.set(t, t, zv(col).sub(&zv(t)));
                }
                for t in tk..=col {
                    c.set(col, t, MPoly::constant(z, mj));
                }
            }
            // D: diagonal z_{τ_k+j} - z_t for t ≤ τ_k; row j of the block has ones on columns 1..τ_k.
            let mut d = PolyMatrix::identity(z, l);
            if k > 0 {
                for t in 0..tk {
                    d.set(t, t, zv(col).sub(&zv(t)));
                    d.set(col, t, MPoly::one(z));
                }
            }
            acc = acc.mul(&b)?.mul(&c)?.mul(&d)?;
        }
    }
    Ok(acc)
}

/// U with `p·U = q` for the output of [`symmetrize`].
pub fn build_u_matrix(block: &BlockRing) -> Result<PolyMatrix> {
    let j = bcd_product(block)?;
    unit_upper_inverse(&m_matrix(block)).mul(&j)
}

/// Row vector times matrix.
pub fn row_times(p: &[MPoly], u: &PolyMatrix) -> Vec<MPoly> {
    (0..u.cols())
        .map(|c| p.iter().enumerate().fold(MPoly::zero(p[0].ring()), |acc, (r, pr)| acc.add(&pr.mul(u.get(r, c)))))
        .collect()
}
