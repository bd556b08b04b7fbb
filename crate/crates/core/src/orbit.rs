//! Orbits, types and symmetric representations.
//!
//! A compressed point ε of type λ carries, per block i, the elementary
//! symmetric values of ℓ_i distinct numbers. Its block polynomials
//! `P_i(T) = T^{ℓ_i} - ε_{i,1}T^{ℓ_i-1} + … + (-1)^{ℓ_i}ε_{i,ℓ_i}` give
//! `P = ∏ P_i^{n_i}`, whose roots are the coordinates of the orbit with
//! multiplicities. The squarefree factorization of `P` reveals the true type.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::jacprep::{prepare_f, prepare_f_h};
use crate::mpoly::MPoly;
use crate::partitions::Partition;
use crate::quotient::{Dyn, DynPoly, DynRing};
use crate::unipoly::UniPoly;
use crate::zdsolve::{parametrize_images, Source, ZeroDimParam};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Pairs `(λ_i, R_i)` with pairwise distinct partitions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymmetricRepresentation {
    pub entries: Vec<(Partition, ZeroDimParam)>,
}

impl SymmetricRepresentation {
    /// Number of orbits.
    pub fn orbit_count(&self) -> usize {
        self.entries.iter().map(|e| e.1.degree()).sum()
    }

    /// Number of points counted with orbit sizes.
    pub fn point_count(&self) -> num_bigint::BigUint {
        self.entries.iter().map(|(l, r)| l.orbit_size() * r.degree()).sum()
    }

    pub fn get(&self, lambda: &Partition) -> Option<&ZeroDimParam> {
        self.entries.iter().find(|e| &e.0 == lambda).map(|e| &e.1)
    }
}

/// The type of a fiber and its compressed coordinates for that type.
/// Coordinates are polynomials modulo the branch modulus; in the rational
/// case they are constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedFiber {
    pub partition: Partition,
    pub coords: Vec<UniPoly>,
}

/// `P_i` from the block values, as a polynomial over the quotient ring.
fn block_polynomial(ring: &DynRing, values: &[UniPoly]) -> DynPoly {
    let f = ring.f;
    let l = values.len();
    let mut out = vec![UniPoly::zero(); l + 1];
    out[l] = UniPoly::one();
    for (k, v) in values.iter().enumerate() {
        let c = ring.reduce(v);
        out[l - k - 1] = if k % 2 == 0 { c.neg(f) } else { c };
    }
    DynRing::trim(out)
}

/// Dynamic-evaluation version over `GF(p)[y]/modulus`.
pub fn type_of_fiber_dyn(ring: &DynRing, lambda: &Partition, coords: &[UniPoly]) -> Result<Dyn<TypedFiber>> {
    if coords.len() != lambda.length() {
        return Err(Error::Dimension(format!("{} coordinates for λ = {lambda}", coords.len())));
    }
    let n = lambda.n();
    if ring.f.p() as usize <= n {
        return Err(Error::ModulusTooSmall { p: ring.f.p(), degree: n });
    }
    let mut big: DynPoly = vec![UniPoly::one()];
    let ranges = lambda.offsets();
    for (k, &(part, _)) in lambda.blocks().iter().enumerate() {
        let pk = block_polynomial(ring, &coords[ranges[k]..ranges[k + 1]]);
        for _ in 0..part {
            big = ring.mul(&big, &pk);
        }
    }
    let factors = match ring.squarefree_factorization(&big) {
        Ok(fs) => fs,
        Err(split) => return Ok(Err(split)),
    };
    let f = ring.f;
    let mut blocks = Vec::with_capacity(factors.len());
    let mut out = Vec::new();
    for (q, mult) in &factors {
        let deg = q.len() - 1;
        blocks.push((*mult as u32, deg as u32));
        for k in 1..=deg {
            let c = q[deg - k].clone();
            out.push(if k % 2 == 0 { c } else { c.neg(f) });
        }
    }
    let partition = Partition::new(blocks)?;
    Ok(Ok(TypedFiber { partition, coords: out }))
}

/// Type and compressed coordinates of the orbit behind a rational point ε.
pub fn type_of_fiber(f: Fp, lambda: &Partition, eps: &[u32]) -> Result<TypedFiber> {
    // Modulo y every element is a constant, and the ring is a field.
    let ring = DynRing::new(f, UniPoly::x());
    let coords: Vec<UniPoly> = eps.iter().map(|&e| UniPoly::constant(e)).collect();
    match type_of_fiber_dyn(&ring, lambda, &coords)? {
        Ok(t) => Ok(t),
        Err(_) => Err(Error::Internal("split modulo an irreducible modulus".into())),
    }
}

/// Output of [`decompose`]: entries by type and the number of points merged
/// because distinct inputs described the same orbit.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub entries: Vec<(Partition, ZeroDimParam)>,
    pub collapsed: usize,
    /// Branches created by splitting the modulus.
    pub branches: usize,
}

/// Splits the points of `r` (compressed for λ) by their true type.
pub fn decompose(f: Fp, lambda: &Partition, r: &ZeroDimParam, seed: u64) -> Result<Decomposition> {
    let mut worklist = vec![r.q.clone()];
    let mut done: Vec<(UniPoly, TypedFiber)> = Vec::new();
    let mut branches = 0;
    while let Some(q) = worklist.pop() {
        if q.deg0() == 0 {
            continue;
        }
        branches += 1;
        let ring = DynRing::new(f, q.clone());
        let coords: Vec<UniPoly> = r.v.iter().map(|v| v.rem(f, &q)).collect();
        match type_of_fiber_dyn(&ring, lambda, &coords)? {
            Ok(t) => done.push((q, t)),
            Err(split) => {
                // Each factor is strictly smaller, so this terminates.
                worklist.push(split.factors.1);
                worklist.push(split.factors.0);
            }
        }
    }
    let mut groups: BTreeMap<Partition, Vec<(UniPoly, Vec<UniPoly>)>> = BTreeMap::new();
    for (q, t) in done {
        groups.entry(t.partition).or_default().push((q, t.coords));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(groups.len());
    let mut collapsed = 0;
    for (part, members) in groups {
        if &part == lambda {
            // Unchanged coordinates: the branches recombine by CRT into the
            // restriction of r to the product of their moduli.
            let q = UniPoly::product(f, members.iter().map(|m| &m.0));
            let v = r.v.iter().map(|v| v.rem(f, &q)).collect();
            let param = ZeroDimParam { q, v, mu: r.mu.clone() };
            param.check_invariants(f)?;
            entries.push((part, param));
            continue;
        }
        let sources: Vec<Source> = members.into_iter().map(|(q, coords)| Source { q, coords }).collect();
        let merged = parametrize_images(f, part.length(), &sources, &mut rng)?;
        collapsed += merged.collapsed;
        entries.push((part, merged.param));
    }
    Ok(Decomposition { entries, collapsed, branches })
}

/// All points of the S_n-orbit behind a rational compressed point.
pub fn expand_orbit(f: Fp, lambda: &Partition, eps: &[u32]) -> Result<BTreeSet<Vec<u32>>> {
    if eps.len() != lambda.length() {
        return Err(Error::Dimension(format!("{} coordinates for λ = {lambda}", eps.len())));
    }
    let offsets = lambda.offsets();
    let mut xi = Vec::with_capacity(lambda.n());
    for (k, &(part, mult)) in lambda.blocks().iter().enumerate() {
        let vals = &eps[offsets[k]..offsets[k + 1]];
        let mut coeffs = vec![0u32; mult as usize + 1];
        coeffs[mult as usize] = 1;
        for (j, &v) in vals.iter().enumerate() {
            coeffs[mult as usize - j - 1] = if j % 2 == 0 { f.neg(v) } else { v };
        }
        let roots = roots_with_multiplicity(f, &UniPoly::from_coeffs(coeffs))
            .ok_or_else(|| Error::IrrationalRoot(format!("block {} of λ = {lambda}", k + 1)))?;
        for r in roots {
            xi.extend(std::iter::repeat_n(r, part as usize));
        }
    }
    xi.sort_unstable();
    Ok(permutations_of_sorted(&xi))
}

/// Roots in GF(p) repeated by multiplicity, or `None` if `g` does not split.
fn roots_with_multiplicity(f: Fp, g: &UniPoly) -> Option<Vec<u32>> {
    let mut rest = g.clone();
    let mut roots = Vec::new();
    for r in g.roots_by_scan(f) {
        let lin = UniPoly::linear_root(f, r);
        while let Some(q) = rest.div_exact(f, &lin) {
            roots.push(r);
            rest = q;
        }
    }
    (rest.deg0() == 0).then_some(roots)
}

/// Distinct permutations of a sorted vector, by next-permutation.
fn permutations_of_sorted(v: &[u32]) -> BTreeSet<Vec<u32>> {
    let mut cur = v.to_vec();
    let mut out = BTreeSet::new();
    loop {
        out.insert(cur.clone());
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else { return out };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// One line of a membership audit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryCheck {
    pub partition: Partition,
    pub invariants: bool,
    pub equations: bool,
    pub minors: bool,
    pub exact_type: bool,
}

impl EntryCheck {
    pub fn passed(&self) -> bool {
        self.invariants && self.equations && self.minors && self.exact_type
    }
}

/// Exact audit of a representation modulo each `q`: the parametrization
/// invariants, the compressed equations, the (s+1)-minors of `H̄` when the
/// partition is longer than s, and that every point has exactly type λ.
pub fn verify_membership(rep: &SymmetricRepresentation, f: &[MPoly], phi: &MPoly) -> Result<Vec<EntryCheck>> {
    let s = f.len();
    let field = phi.field();
    let mut out = Vec::with_capacity(rep.entries.len());
    for (lambda, r) in &rep.entries {
        let invariants = r.nvars() == lambda.length() && r.check_invariants(field).is_ok();
        if !invariants {
            out.push(EntryCheck { partition: lambda.clone(), invariants, equations: false, minors: false, exact_type: false });
            continue;
        }
        let (equations, minors) = if lambda.length() > s {
            let prep = prepare_f_h(f, phi, lambda)?;
            let h = prep.hbar.as_ref().expect("prepared with φ");
            (r.satisfies(field, &prep.fbar), r.satisfies(field, &h.minors(s + 1)?))
        } else {
            (r.satisfies(field, &prepare_f(f, lambda)?.fbar), true)
        };
        let exact_type = r.is_empty() || {
            let d = decompose(field, lambda, r, 0)?;
            d.entries.len() == 1 && &d.entries[0].0 == lambda
        };
        out.push(EntryCheck { partition: lambda.clone(), invariants, equations, minors, exact_type });
    }
    Ok(out)
}
