//! Problem instances and the two solvers: the per-orbit algorithm and the
//! naive baseline on `⟨f⟩ + ⟨(s+1)-minors of Jac(f, φ)⟩`.

use crate::bounds::{prune_reason, PruneReason};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::jacprep::{prepare_f, prepare_f_h};
use crate::mpoly::{jacobian, MPoly, Monomial, Ring};
use crate::orbit::{decompose, SymmetricRepresentation};
use crate::partitions::{enumerate_partitions, LengthFilter, Partition};
use crate::symring::{elementary_symmetric, is_sn_invariant};
use crate::zdsolve::{isolated_points, rational_zeros, system_with_minors, ZeroDimParam};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// `s` invariant equations and an invariant objective in `n` variables.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    f: Vec<MPoly>,
    phi: MPoly,
    d: u32,
}

impl ProblemInstance {
    /// Checks shapes, rings and S_n-invariance; `p > n` is needed to read
    /// types off squarefree factorizations.
    pub fn new(f: Vec<MPoly>, phi: MPoly) -> Result<Self> {
        let ring = phi.ring().clone();
        let n = ring.nvars();
        let s = f.len();
        if s == 0 || s >= n {
            return Err(Error::InvalidInstance(format!("need 1 ≤ s < n, got s = {s}, n = {n}")));
        }
        if ring.field().p() as usize <= n {
            return Err(Error::ModulusTooSmall { p: ring.field().p(), degree: n });
        }
        for (i, g) in f.iter().chain(std::iter::once(&phi)).enumerate() {
            if g.ring() != &ring {
                return Err(Error::RingMismatch("all polynomials must share one ring".into()));
            }
            if !is_sn_invariant(g, n) {
                let what = if i < s { format!("f{}", i + 1) } else { "phi".into() };
                return Err(Error::NotInvariant(format!("{what} is not S_{n}-invariant")));
            }
        }
        let d = f.iter().chain(std::iter::once(&phi)).filter_map(MPoly::total_degree).max().unwrap_or(0);
        Ok(ProblemInstance { f, phi, d })
    }

    /// `s` random invariant equations and a random invariant objective, all
    /// of degree ≤ d, drawn as dense polynomials in the elementary symmetric
    /// polynomials (weights 1…n) and expanded.
    pub fn random(field: Fp, n: usize, s: usize, d: u32, seed: u64) -> Result<Self> {
        let ring = Ring::numbered(field, "x", n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = (0..s).map(|_| random_invariant(&ring, d, &mut rng)).collect();
        let phi = random_invariant(&ring, d, &mut rng);
        Self::new(f, phi)
    }

    /// `Σ (x_i - u)²`, the squared distance to `(u, …, u)`.
    pub fn distance_objective(ring: &Arc<Ring>, u: u32) -> MPoly {
        let c = MPoly::constant(ring, u);
        (0..ring.nvars()).fold(MPoly::zero(ring), |acc, i| {
            let t = MPoly::var(ring, i).sub(&c);
            acc.add(&t.mul(&t))
        })
    }

    pub fn n(&self) -> usize {
        self.phi.ring().nvars()
    }

    pub fn s(&self) -> usize {
        self.f.len()
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn field(&self) -> Fp {
        self.phi.field()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.phi.ring()
    }

    pub fn f(&self) -> &[MPoly] {
        &self.f
    }

    pub fn phi(&self) -> &MPoly {
        &self.phi
    }
}

/// Exponent vectors with `Σ w_i a_i ≤ d`.
fn weighted_exponents(weights: &[u32], d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; weights.len()];
    fn rec(k: usize, left: u32, weights: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == weights.len() {
            out.push(cur.clone());
            return;
        }
        for a in 0..=left / weights[k] {
            cur[k] = a;
            rec(k + 1, left - a * weights[k], weights, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, d, weights, &mut cur, &mut out);
    out
}

fn random_invariant(ring: &Arc<Ring>, d: u32, rng: &mut impl Rng) -> MPoly {
    let field = ring.field();
    let n = ring.nvars();
    let vars: Vec<usize> = (0..n).collect();
    let weights: Vec<u32> = (1..=n as u32).collect();
    let etas: Vec<MPoly> = (1..=n).map(|k| elementary_symmetric(ring, &vars, k)).collect();
    let names = (1..=n).map(|k| format!("e{k}")).collect();
    let e_ring = Ring::with_weights(field, names, weights.clone());
    let terms = weighted_exponents(&weights, d)
        .into_iter()
        .map(|a| (Monomial::from_exponents(&a), field.random(rng)))
        .filter(|t| t.1 != 0)
        .collect();
    MPoly::from_terms(&e_ring, terms).substitute(&etas)
}

/// Options for [`critical_points_per_orbit`].
#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Skip partitions known to carry no isolated point.
    pub prune: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { prune: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionStatus {
    Pruned(PruneReason),
    /// `raw`: degree of the per-partition parametrization; `kept`: degree of
    /// what entered the output.
    Solved { raw: usize, kept: usize, branches: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionRecord {
    pub partition: Partition,
    pub status: PartitionStatus,
}

#[derive(Clone, Debug)]
pub struct OrbitSolution {
    pub representation: SymmetricRepresentation,
    pub records: Vec<PartitionRecord>,
    /// Points merged during type decomposition.
    pub collapsed: usize,
}

impl OrbitSolution {
    pub fn pruned(&self) -> impl Iterator<Item = (&Partition, PruneReason)> {
        self.records.iter().filter_map(|r| match r.status {
            PartitionStatus::Pruned(why) => Some((&r.partition, why)),
            PartitionStatus::Solved { .. } => None,
        })
    }
}

fn with_partition(lambda: &Partition, e: Error) -> Error {
    match e {
        Error::PositiveDimensional { context } => Error::PositiveDimensional { context: format!("λ = {lambda}: {context}") },
        other => other,
    }
}

/// The per-orbit critical point algorithm. Partitions of length s keep every
/// type found by decomposition; longer partitions keep only their own type.
/// Each processed λ ends with an entry for λ, empty if nothing was found, and
/// the first entry per partition wins.
pub fn critical_points_per_orbit(inst: &ProblemInstance, seed: u64, opts: SolveOptions) -> Result<OrbitSolution> {
    let (n, s, d) = (inst.n(), inst.s(), inst.d());
    let field = inst.field();
    let mut seeds = ChaCha8Rng::seed_from_u64(seed);
    let mut entries: Vec<(Partition, ZeroDimParam)> = Vec::new();
    let mut records = Vec::new();
    let mut collapsed = 0;
    let order = enumerate_partitions(n, LengthFilter::Exact(s))
        .into_iter()
        .chain(enumerate_partitions(n, LengthFilter::AtLeast(s + 1)));
    for lambda in order {
        // Drawn for every partition so seeds do not depend on pruning.
        let (solve_seed, split_seed) = (seeds.next_u64(), seeds.next_u64());
        let ell = lambda.length();
        if opts.prune {
            if let Some(why) = prune_reason(&lambda, d, s) {
                entries.push((lambda.clone(), ZeroDimParam::empty(ell)));
                records.push(PartitionRecord { partition: lambda, status: PartitionStatus::Pruned(why) });
                continue;
            }
        }
        let raw = if ell == s {
            let prep = prepare_f(inst.f(), &lambda)?;
            isolated_points(&prep.fbar, None, solve_seed)
        } else {
            let prep = prepare_f_h(inst.f(), inst.phi(), &lambda)?;
            let h = prep.hbar.as_ref().expect("prepared with φ");
            isolated_points(&prep.fbar, Some((h, s + 1)), solve_seed)
        }
        .map_err(|e| with_partition(&lambda, e))?;
        let dec = decompose(field, &lambda, &raw, split_seed)?;
        let mut kept = 0;
        for (mu, r) in dec.entries {
            if ell == s || mu == lambda {
                if mu == lambda {
                    kept = r.degree();
                }
                entries.push((mu, r));
            }
        }
        if kept == 0 {
            entries.push((lambda.clone(), ZeroDimParam::empty(ell)));
        }
        collapsed += dec.collapsed;
        let status = PartitionStatus::Solved { raw: raw.degree(), kept, branches: dec.branches };
        records.push(PartitionRecord { partition: lambda, status });
    }
    let mut representation = SymmetricRepresentation::default();
    for (mu, r) in entries {
        if representation.get(&mu).is_none() {
            representation.entries.push((mu, r));
        }
    }
    Ok(OrbitSolution { representation, records, collapsed })
}

/// The naive system `f` plus all (s+1)-minors of `Jac(f, φ)`.
pub fn naive_system(inst: &ProblemInstance) -> Result<Vec<MPoly>> {
    let mut polys = inst.f().to_vec();
    polys.push(inst.phi().clone());
    system_with_minors(inst.f(), Some((&jacobian(&polys), inst.s() + 1)))
}

/// One parametrization of the whole critical set, in the original variables.
pub fn naive_critical_points(inst: &ProblemInstance, seed: u64) -> Result<ZeroDimParam> {
    isolated_points(&naive_system(inst)?, None, seed)
}

/// The critical points with coordinates in GF(p), from the naive system.
pub fn naive_rational_points(inst: &ProblemInstance) -> Result<Vec<Vec<u32>>> {
    rational_zeros(&naive_system(inst)?)
}
