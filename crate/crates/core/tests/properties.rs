mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use orbitcrit::bounds::{bounds_report, elementary};
use orbitcrit::orbit::type_of_fiber;
use orbitcrit::partitions::{enumerate_partitions, LengthFilter};
use orbitcrit::symmetrize::{build_u_matrix, row_times, symmetrize, DividedDifferences};
use orbitcrit::symring::{symmetric_coordinates, BlockRing};
use orbitcrit::{critical_points_per_orbit, decompose, Fp, Partition, ProblemInstance, SolveOptions, UniPoly};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::BTreeSet;

fn fp() -> Fp {
    Fp::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn symmetric_coordinates_round_trip(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let lambda = random_partition(&mut rng, 1..=5);
        let b = BlockRing::new(fp(), &lambda);
        let fbar = random_e_poly(&b, 5, &mut rng);
        let expanded = fbar.substitute(&b.etas());
        prop_assert_eq!(symmetric_coordinates(&b, &expanded).unwrap(), fbar);
    }

    #[test]
    fn divided_differences_ignore_pivots(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let lambda = random_partition(&mut rng, 2..=5);
        prop_assume!(lambda.length() >= 2);
        let b = BlockRing::new(fp(), &lambda);
        let row = gradient_row(&b, &mut rng);
        let mut dd = DividedDifferences::new(&row);
        let mut idx: Vec<usize> = (0..lambda.length()).collect();
        idx.shuffle(&mut rng);
        let set = &idx[..rng.gen_range(2..=idx.len())];
        let (ir, iq) = (set[0], set[1]);
        prop_assert_eq!(dd.with_pivots(set, ir, iq).unwrap(), dd.get(set).unwrap());
    }

    #[test]
    fn symmetrized_rows_are_invariant_and_recover_q(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let lambda = random_partition(&mut rng, 2..=5);
        let b = BlockRing::new(fp(), &lambda);
        let row = gradient_row(&b, &mut rng);
        let p = symmetrize(&row).unwrap();
        for pi in &p {
            prop_assert!(b.is_block_invariant(pi));
        }
        prop_assert_eq!(row_times(&p, &build_u_matrix(&b).unwrap()), row.entries);
    }

    #[test]
    fn decompose_conserves_points(seed in any::<u64>(), pool in 2u32..5) {
        let f = fp();
        let mut rng = rng(seed);
        let lambda = random_partition(&mut rng, 2..=6);
        let points = colliding_points(f, &lambda, 6, pool, &mut rng);
        let Some(r) = param_through(f, &points, &mut rng) else { return Ok(()) };
        let d = decompose(f, &lambda, &r, seed).unwrap();
        let expected: BTreeSet<(Partition, Vec<u32>)> = points
            .iter()
            .map(|e| {
                let t = type_of_fiber(f, &lambda, e).unwrap();
                (t.partition, t.coords.iter().map(|c| c.coeff(0)).collect())
            })
            .collect();
        let mut got = BTreeSet::new();
        let mut total = 0;
        for (mu, out) in &d.entries {
            out.check_invariants(f).unwrap();
            total += out.degree();
            for pt in out.rational_points(f) {
                got.insert((mu.clone(), pt));
            }
        }
        prop_assert_eq!(&got, &expected);
        prop_assert_eq!(total, expected.len());
        prop_assert_eq!(total + d.collapsed, points.len());
    }

    #[test]
    fn partitions_round_trip(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let lambda = random_partition(&mut rng, 1..=9);
        prop_assert_eq!(Partition::from_parts(&lambda.parts()).unwrap(), lambda.clone());
        prop_assert_eq!(lambda.conjugate().conjugate(), lambda.clone());
        prop_assert_eq!(lambda.to_string().parse::<Partition>().unwrap(), lambda.clone());
        let json = serde_json::to_string(&lambda).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&json).unwrap(), lambda);
    }

    #[test]
    fn squarefree_factorization_multiplies_back(roots in prop::collection::vec((0u32..50, 1usize..4), 1..5)) {
        let f = fp();
        let mut g = UniPoly::one();
        for &(r, m) in &roots {
            g = g.mul(f, &UniPoly::linear_root(f, r).pow(f, m));
        }
        let factors = g.squarefree_factorization(f).unwrap();
        let mut back = UniPoly::one();
        for (q, m) in &factors {
            prop_assert!(q.is_squarefree(f));
            back = back.mul(f, &q.pow(f, *m));
        }
        prop_assert_eq!(back, g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn solver_outputs_satisfy_invariants(seed in any::<u64>(), s in 1usize..3) {
        let inst = ProblemInstance::random(fp(), 3, s, 3, seed).unwrap();
        let sol = critical_points_per_orbit(&inst, seed, SolveOptions::default()).unwrap();
        for (lambda, r) in &sol.representation.entries {
            r.check_invariants(fp()).unwrap();
            prop_assert_eq!(r.nvars(), lambda.length());
        }
        let checks = orbitcrit::verify_membership(&sol.representation, inst.f(), inst.phi()).unwrap();
        prop_assert!(checks.iter().all(|c| c.passed()));
    }
}

#[test]
fn isolated_bound_grid() {
    for n in 2..=10 {
        for s in 1..n {
            for d in 2..=10u32 {
                let r = bounds_report(n, d, s);
                assert!(r.sum_c() <= BigRational::from(r.c_global.clone()), "n={n} s={s} d={d}");
                assert!(r.sum_e() <= BigRational::from(r.e_global.clone()), "n={n} s={s} d={d}");
            }
        }
    }
}

#[test]
fn falling_factorial_identity() {
    for d in 0..=12i64 {
        for l in 0..=12usize {
            let falling: BigInt = (0..l as i64).map(|i| BigInt::from(d - i)).product();
            let vals: Vec<BigInt> = (1..=l as i64).map(|i| BigInt::from(d - i)).collect();
            let sum: BigInt = (0..=l).map(|k| elementary(&vals, k)).sum();
            assert_eq!(falling, sum, "d={d} l={l}");
        }
    }
}

#[test]
fn pruned_partitions_carry_no_isolated_points() {
    // Solving pruned partitions anyway adds nothing.
    for seed in 0..4 {
        let inst = ProblemInstance::random(fp(), 4, 1, 3, seed).unwrap();
        let pruned = critical_points_per_orbit(&inst, seed, SolveOptions { prune: true }).unwrap();
        assert!(pruned.pruned().count() > 0);
        match critical_points_per_orbit(&inst, seed, SolveOptions { prune: false }) {
            Ok(full) => {
                for (lambda, _) in pruned.pruned() {
                    assert!(full.representation.get(lambda).unwrap().is_empty(), "seed {seed} λ = {lambda}");
                }
            }
            Err(orbitcrit::Error::PositiveDimensional { .. }) => {}
            Err(e) => panic!("seed {seed}: {e}"),
        }
    }
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (1..=10).map(|n| enumerate_partitions(n, LengthFilter::AtLeast(1)).len()).collect();
    assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
}
