//! Exhaustive ground truth over small prime fields.
//!
//! Walks the sorted tuples of GF(p)^n, keeps zeros of `f` where the numeric
//! Jacobian of `(f, φ)` has rank ≤ s, and groups the hits by type.

use crate::driver::ProblemInstance;
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::linalg::rank;
use crate::mpoly::MPoly;
use crate::orbit::{expand_orbit, SymmetricRepresentation};
use crate::partitions::Partition;
use crate::symring::elementary_values;
use std::collections::{BTreeMap, BTreeSet};

/// Largest number of sorted tuples the oracle will visit.
pub const MAX_TUPLES: u64 = 100_000_000;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleResult {
    /// W ∩ GF(p)^n.
    pub points: BTreeSet<Vec<u32>>,
    /// Compressed orbit representatives by type.
    pub by_type: BTreeMap<Partition, BTreeSet<Vec<u32>>>,
}

/// `E_λ` of a point: per block of λ (its type), the elementary symmetric
/// values of the distinct coordinates of that multiplicity.
pub fn compress_point(f: Fp, xi: &[u32]) -> (Partition, Vec<u32>) {
    let lambda = Partition::type_of_point(xi);
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &x in xi {
        *counts.entry(x).or_default() += 1;
    }
    let mut out = Vec::with_capacity(lambda.length());
    for &(part, _) in lambda.blocks() {
        let vals: Vec<u32> = counts.iter().filter(|e| *e.1 == part).map(|e| *e.0).collect();
        out.extend(elementary_values(f, &vals));
    }
    (lambda, out)
}

fn next_sorted(t: &mut [u32], p: u32) -> bool {
    // Nondecreasing tuples in lexicographic order.
    let Some(k) = (0..t.len()).rev().find(|&k| t[k] + 1 < p) else { return false };
    let v = t[k] + 1;
    t[k..].iter_mut().for_each(|x| *x = v);
    true
}

pub fn brute_force_oracle(inst: &ProblemInstance) -> Result<OracleResult> {
    let f = inst.field();
    let (n, s) = (inst.n(), inst.s());
    let p = f.p();
    // C(p+n-1, n) sorted tuples.
    let tuples = crate::bounds::binomial((p as usize + n - 1) as u64, n as u64);
    if tuples > MAX_TUPLES.into() {
        return Err(Error::InvalidInstance(format!("{tuples} tuples exceed the oracle budget")));
    }
    let mut polys: Vec<MPoly> = inst.f().to_vec();
    polys.push(inst.phi().clone());
    let partials: Vec<Vec<MPoly>> = polys.iter().map(|g| (0..n).map(|i| g.partial_derivative(i)).collect()).collect();
    let mut out = OracleResult::default();
    let mut t = vec![0u32; n];
    loop {
        if inst.f().iter().all(|g| g.evaluate(&t) == 0) {
            let jac: Vec<Vec<u32>> = partials.iter().map(|row| row.iter().map(|g| g.evaluate(&t)).collect()).collect();
            if rank(f, &jac) <= s {
                let (lambda, eps) = compress_point(f, &t);
                out.points.extend(expand_orbit(f, &lambda, &eps)?);
                out.by_type.entry(lambda).or_default().insert(eps);
            }
        }
        if !next_sorted(&mut t, p) {
            return Ok(out);
        }
    }
}

/// All points of GF(p)^n described by a representation: its rational
/// compressed points whose block polynomials split over GF(p).
pub fn rational_orbit_points(f: Fp, rep: &SymmetricRepresentation) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    for (lambda, r) in &rep.entries {
        for eps in r.rational_points(f) {
            if let Ok(orbit) = expand_orbit(f, lambda, &eps) {
                out.extend(orbit);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::Ring;

    fn sphere_mod_11() -> ProblemInstance {
        let x = Ring::numbered(Fp::new(11).unwrap(), "x", 3);
        let f = MPoly::parse(&x, "x1^2 + x2^2 + x3^2 - 6").unwrap();
        let phi = MPoly::parse(&x, "x1*x2*x3 - 3*x1 - 3*x2 - 3*x3").unwrap();
        ProblemInstance::new(vec![f], phi).unwrap()
    }

    #[test]
    fn sphere_residues_mod_11() {
        let o = brute_force_oracle(&sphere_mod_11()).unwrap();
        let mixed: BTreeSet<Vec<u32>> = [vec![0, 5], vec![0, 6], vec![2, 1], vec![9, 10]].into_iter().collect();
        assert_eq!(o.by_type[&"1^1 2^1".parse().unwrap()], mixed);
        assert!(!o.by_type.contains_key(&"3^1".parse().unwrap()));
        assert_eq!(o.points.len(), 12);
        for pt in &o.points {
            assert_eq!(sphere_mod_11().f()[0].evaluate(pt), 0);
        }
    }

    #[test]
    fn compression_by_type() {
        let f = Fp::new(101).unwrap();
        let (l, e) = compress_point(f, &[4, 7, 4, 9]);
        assert_eq!(l, "1^2 2^1".parse().unwrap());
        // Singles {7, 9}: e1 = 16, e2 = 63; the pair value 4.
        assert_eq!(e, vec![16, 63, 4]);
    }

    #[test]
    fn sorted_tuple_walk() {
        let mut t = vec![0, 0];
        let mut n = 1;
        while next_sorted(&mut t, 4) {
            n += 1;
        }
        assert_eq!(n, 10);
    }
}
