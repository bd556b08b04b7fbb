//! Generators shared by the integration suites. Everything is driven by a
//! seed so failures replay exactly.
#![allow(dead_code)]

use orbitcrit::mpoly::{Monomial, Ring};
use orbitcrit::partitions::{enumerate_partitions, LengthFilter};
use orbitcrit::symmetrize::EquivariantRow;
use orbitcrit::symring::{elementary_symmetric, t_lambda, BlockRing};
use orbitcrit::{Fp, MPoly, Partition, UniPoly, ZeroDimParam};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly chosen partition of some n in `ns`.
pub fn random_partition(rng: &mut impl Rng, ns: std::ops::RangeInclusive<usize>) -> Partition {
    let n = rng.gen_range(ns);
    enumerate_partitions(n, LengthFilter::AtLeast(1)).choose(rng).unwrap().clone()
}

/// A random S_n-invariant polynomial in n variables: a few products of
/// elementary symmetric polynomials.
pub fn random_sn_invariant(x: &std::sync::Arc<Ring>, rng: &mut impl Rng) -> MPoly {
    let n = x.nvars();
    let all: Vec<usize> = (0..n).collect();
    let etas: Vec<MPoly> = (1..=n).map(|k| elementary_symmetric(x, &all, k)).collect();
    let mut g = MPoly::zero(x);
    for _ in 0..4 {
        let mut t = MPoly::constant(x, rng.gen_range(1..1000));
        for _ in 0..rng.gen_range(1..4) {
            t = t.mul(&etas[rng.gen_range(0..n)]);
        }
        g = g.add(&t);
    }
    g
}

/// `(T_λ ∂g/∂x_{rep(i)})_i` for a random invariant g: an equivariant row.
pub fn gradient_row(b: &BlockRing, rng: &mut impl Rng) -> EquivariantRow {
    let n = b.partition.n();
    let x = Ring::numbered(b.field(), "x", n);
    let g = random_sn_invariant(&x, rng);
    let row = b.partition.representative_x().iter().map(|&i| t_lambda(b, &g.partial_derivative(i)).unwrap()).collect();
    EquivariantRow::new(b, row).unwrap()
}

/// A random e-ring polynomial of weighted degree ≤ d.
pub fn random_e_poly(b: &BlockRing, d: u32, rng: &mut impl Rng) -> MPoly {
    let f = b.field();
    let weights = b.e.weights().to_vec();
    let mut terms = Vec::new();
    for _ in 0..6 {
        let mut exps = vec![0u32; weights.len()];
        let mut left = rng.gen_range(0..=d);
        for _ in 0..4 {
            let i = rng.gen_range(0..weights.len());
            if weights[i] <= left {
                exps[i] += 1;
                left -= weights[i];
            }
        }
        terms.push((Monomial::from_exponents(&exps), f.random(rng)));
    }
    MPoly::from_terms(&b.e, terms)
}

/// Lagrange interpolation through points with distinct abscissae.
pub fn interpolate(f: Fp, pts: &[(u32, u32)]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (i, &(xi, yi)) in pts.iter().enumerate() {
        let mut basis = UniPoly::constant(yi);
        for (j, &(xj, _)) in pts.iter().enumerate() {
            if i != j {
                let scale = f.inv(f.sub(xi, xj));
                basis = basis.mul(f, &UniPoly::linear_root(f, xj)).scale(f, scale);
            }
        }
        acc = acc.add(f, &basis);
    }
    acc
}

/// A parametrization of the given distinct points, built with a random
/// separating form. `None` if the drawn form does not separate.
pub fn param_through(f: Fp, points: &[Vec<u32>], rng: &mut impl Rng) -> Option<ZeroDimParam> {
    let m = points[0].len();
    let mu: Vec<u32> = (0..m).map(|_| f.random(rng)).collect();
    let ys: Vec<u32> = points.iter().map(|p| p.iter().zip(&mu).fold(0, |acc, (&x, &c)| f.mul_add(acc, x, c))).collect();
    if ys.iter().collect::<BTreeSet<_>>().len() != ys.len() {
        return None;
    }
    let q = UniPoly::product(f, &ys.iter().map(|&y| UniPoly::linear_root(f, y)).collect::<Vec<_>>());
    let v = (0..m).map(|i| interpolate(f, &ys.iter().zip(points).map(|(&y, p)| (y, p[i])).collect::<Vec<_>>())).collect();
    Some(ZeroDimParam { q, v, mu })
}

/// Random distinct compressed points for λ whose z-values come from
/// `1..=pool`, so coincidences between blocks (type changes) are frequent.
/// With λ = (1^1 2^1 3^1) and a pool of 2, `(a|a|c)` and `(c|c|a)` describe
/// the same orbit and exercise collapsing.
pub fn colliding_points(f: Fp, lambda: &Partition, count: usize, pool: u32, rng: &mut impl Rng) -> Vec<Vec<u32>> {
    let b = BlockRing::new(f, lambda);
    let mut out = BTreeSet::new();
    for _ in 0..count {
        let zeta: Vec<u32> = (0..lambda.length()).map(|_| rng.gen_range(1..=pool)).collect();
        out.insert(b.compress(&zeta));
    }
    out.into_iter().collect()
}
