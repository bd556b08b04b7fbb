//! Block rings, the specialization T_λ and elementary symmetric coordinates.
//!
//! For λ with blocks `Z_1, …, Z_r` the z-ring has flat variables `z1 … zℓ`.
//! The e-ring has one variable `e{i}_{k}` per block `i` and `1 ≤ k ≤ ℓ_i`,
//! of weight `k`, standing for the k-th elementary symmetric polynomial of
//! block `i`.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::mpoly::{MPoly, Monomial, Ring};
use crate::partitions::Partition;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct BlockRing {
    pub partition: Partition,
    pub z: Arc<Ring>,
    pub e: Arc<Ring>,
}

impl BlockRing {
    pub fn new(field: Fp, partition: &Partition) -> Self {
        let l = partition.length();
        let z = Ring::numbered(field, "z", l);
        let mut names = Vec::with_capacity(l);
        let mut weights = Vec::with_capacity(l);
        for (i, &(_, m)) in partition.blocks().iter().enumerate() {
            for k in 1..=m {
                names.push(format!("e{}_{}", i + 1, k));
                weights.push(k);
            }
        }
        let e = Ring::with_weights(field, names, weights);
        BlockRing { partition: partition.clone(), z, e }
    }

    pub fn field(&self) -> Fp {
        self.z.field()
    }

    /// Flat z-index ranges of the blocks.
    pub fn block_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let t = self.partition.offsets();
        t.windows(2).map(|w| w[0]..w[1]).collect()
    }

    /// η_{i,k}: the degree-k elementary symmetric polynomial of block i, as
    /// a z-polynomial. Index by flat e-variable.
    pub fn etas(&self) -> Vec<MPoly> {
        let mut out = Vec::with_capacity(self.partition.length());
        for range in self.block_ranges() {
            let vars: Vec<usize> = range.collect();
            for k in 1..=vars.len() {
                out.push(elementary_symmetric(&self.z, &vars, k));
            }
        }
        out
    }

    /// Generators of S_λ: per block of length ≥ 2, the swap of its first two
    /// variables and its full cycle. Each is a permutation of z-indices.
    pub fn generators(&self) -> Vec<Vec<usize>> {
        let l = self.partition.length();
        let mut gens = Vec::new();
        for range in self.block_ranges() {
            if range.len() < 2 {
                continue;
            }
            let mut swap: Vec<usize> = (0..l).collect();
            swap.swap(range.start, range.start + 1);
            gens.push(swap);
            let mut cycle: Vec<usize> = (0..l).collect();
            for k in range.clone() {
                cycle[k] = if k + 1 == range.end { range.start } else { k + 1 };
            }
            gens.push(cycle);
        }
        gens
    }

    pub fn is_block_invariant(&self, f: &MPoly) -> bool {
        self.generators().iter().all(|s| &f.apply_permutation(s) == f)
    }

    /// E_λ on z-values: the elementary symmetric values of each block.
    pub fn compress(&self, zeta: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = Vec::with_capacity(zeta.len());
        for range in self.block_ranges() {
            out.extend(elementary_values(f, &zeta[range]));
        }
        out
    }
}

/// e_1 … e_m of the given values.
pub fn elementary_values(f: Fp, vals: &[u32]) -> Vec<u32> {
    // Coefficients of ∏ (1 + v T).
    let mut e = vec![1u32];
    for &v in vals {
        e.push(0);
        for k in (1..e.len()).rev() {
            e[k] = f.mul_add(e[k], e[k - 1], v);
        }
    }
    e.remove(0);
    e
}

/// Degree-k elementary symmetric polynomial in the given variables.
pub fn elementary_symmetric(ring: &Arc<Ring>, vars: &[usize], k: usize) -> MPoly {
    let terms = crate::mpoly::combinations(vars.len(), k)
        .into_iter()
        .map(|set| {
            let mut e = vec![0u32; ring.nvars()];
            for i in set {
                e[vars[i]] = 1;
            }
            (Monomial::from_exponents(&e), 1)
        })
        .collect();
    MPoly::from_terms(ring, terms)
}

/// T_λ: replaces each x by its block representative z.
pub fn t_lambda(block: &BlockRing, f: &MPoly) -> Result<MPoly> {
    let map = block.partition.x_to_z();
    if f.ring().nvars() != map.len() {
        return Err(Error::Dimension(format!(
            "polynomial has {} variables, partition has n = {}",
            f.ring().nvars(),
            map.len()
        )));
    }
    Ok(f.rename(&block.z, &map))
}

/// True iff `f` is fixed by the transposition (1 2) and the cycle (1 2 … n).
pub fn is_sn_invariant(f: &MPoly, n: usize) -> bool {
    assert_eq!(f.ring().nvars(), n);
    if n < 2 {
        return true;
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    f.apply_permutation(&swap) == *f && f.apply_permutation(&cycle) == *f
}

fn lex_greater(a: Monomial, b: Monomial, n: usize) -> bool {
    for i in 0..n {
        let (x, y) = (a.exponent(i), b.exponent(i));
        if x != y {
            return x > y;
        }
    }
    false
}

/// Rewrites an S_λ-invariant z-polynomial as f̄(η) with f̄ in the e-ring.
pub fn symmetric_coordinates(block: &BlockRing, f: &MPoly) -> Result<MPoly> {
    if !block.is_block_invariant(f) {
        return Err(Error::NotInvariant(format!("not fixed by S_λ for λ = {}", block.partition)));
    }
    let l = block.partition.length();
    let etas = block.etas();
    let ranges = block.block_ranges();
    // Powers η_v^k, built on demand.
    let mut pow_cache: HashMap<(usize, u32), MPoly> = HashMap::new();
    let mut residue = f.clone();
    let mut out: Vec<(Monomial, u32)> = Vec::new();
    while let Some(&(lead, c)) =
        residue.terms().iter().reduce(|a, b| if lex_greater(b.0, a.0, l) { b } else { a })
    {
        // The lex-leading monomial of an invariant has non-increasing
        // exponents inside every block; it is the leading monomial of
        // ∏ η_{i,k}^{a_k - a_{k+1}}.
        let mut e_exps = vec![0u32; l];
        let mut product = MPoly::constant(&block.z, c);
        for range in &ranges {
            for (k, z) in range.clone().enumerate() {
                let next = if z + 1 < range.end { lead.exponent(z + 1) } else { 0 };
                let cur = lead.exponent(z);
                if cur < next {
                    return Err(Error::Internal("leading monomial not block-sorted".into()));
                }
                let power = cur - next;
                let v = range.start + k;
                e_exps[v] = power;
                if power > 0 {
                    let pw = pow_cache.entry((v, power)).or_insert_with(|| etas[v].pow(power));
                    product = product.mul(pw);
                }
            }
        }
        out.push((Monomial::from_exponents(&e_exps), c));
        residue = residue.sub(&product);
        if residue.terms().iter().any(|t| t.0 == lead) {
            return Err(Error::Internal("elimination step did not cancel".into()));
        }
    }
    let fbar = MPoly::from_terms(&block.e, out);
    if fbar.substitute(&etas) != *f {
        return Err(Error::Internal("back-substitution of elementary coordinates failed".into()));
    }
    Ok(fbar)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blk(s: &str) -> BlockRing {
        BlockRing::new(Fp::default(), &s.parse().unwrap())
    }

    #[test]
    fn newton_identity_two_vars() {
        let b = blk("1^2");
        let f = MPoly::parse(&b.z, "z1^2 + z2^2").unwrap();
        let fbar = symmetric_coordinates(&b, &f).unwrap();
        assert_eq!(fbar, MPoly::parse(&b.e, "e1_1^2 - 2*e1_2").unwrap());
        let g = MPoly::parse(&b.z, "z1*z2").unwrap();
        assert_eq!(symmetric_coordinates(&b, &g).unwrap(), MPoly::parse(&b.e, "e1_2").unwrap());
        let h = MPoly::parse(&b.z, "z1 + z2").unwrap();
        assert_eq!(symmetric_coordinates(&b, &h).unwrap(), MPoly::parse(&b.e, "e1_1").unwrap());
        assert_eq!(fbar.weighted_degree(), Some(2));
    }

    #[test]
    fn rejects_non_invariant() {
        let b = blk("1^2");
        let f = MPoly::parse(&b.z, "z1").unwrap();
        assert!(matches!(symmetric_coordinates(&b, &f), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn t_lambda_examples() {
        let fp = Fp::default();
        let x = Ring::numbered(fp, "x", 3);
        let f = MPoly::parse(&x, "x1^2 + x2^2 + x3^2 - 6").unwrap();
        let b = blk("1^1 2^1");
        assert_eq!(t_lambda(&b, &f).unwrap(), MPoly::parse(&b.z, "z1^2 + 2*z2^2 - 6").unwrap());
        let b5 = blk("1^1 2^2");
        let x5 = Ring::numbered(fp, "x", 5);
        let g = MPoly::parse(&x5, "x1 + 2*x2 + 3*x3 + 4*x4 + 5*x5").unwrap();
        assert_eq!(t_lambda(&b5, &g).unwrap(), MPoly::parse(&b5.z, "z1 + 5*z2 + 9*z3").unwrap());
    }

    #[test]
    fn invariance_checks() {
        let x = Ring::numbered(Fp::default(), "x", 3);
        assert!(is_sn_invariant(&MPoly::parse(&x, "x1^2 + x2^2 + x3^2 - 6").unwrap(), 3));
        assert!(!is_sn_invariant(&MPoly::parse(&x, "x1 - x2").unwrap(), 3));
        let g = MPoly::parse(&x, "x1^2*x3 - x2^2*x3 - 3*x1 + 3*x2").unwrap();
        assert!(!is_sn_invariant(&g, 3));
    }

    #[test]
    fn elementary_values_match_polys() {
        let fp = Fp::default();
        let b = blk("1^1 2^2");
        let zeta = [3, 5, 7];
        let vals = b.compress(&zeta);
        let direct: Vec<u32> = b.etas().iter().map(|e| e.evaluate(&zeta)).collect();
        assert_eq!(vals, direct);
        assert_eq!(elementary_values(fp, &[2, 3]), vec![5, 6]);
    }
}
