//! Degree bounds, exact over the rationals.
//!
//! For λ ⊢ n of length ℓ ≥ s with `w_λ = ℓ_1!⋯ℓ_r!`:
//! `c_λ = d^s η_{ℓ-s}(d-1, …, d-ℓ) / w_λ` when ℓ > s and `d^s / w_λ` when
//! ℓ = s, where η_k is the k-th elementary symmetric function. Pruned
//! partitions have no isolated solutions and contribute 0 to every sum.

use crate::partitions::{enumerate_partitions, factorial, LengthFilter, Partition};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PruneReason {
    /// Length s and some multiplicity ℓ_i exceeds d.
    MultiplicityAboveDegree,
    /// Length above s and ℓ exceeds d.
    LengthAboveDegree,
}

impl PruneReason {
    pub fn as_str(self) -> &'static str {
        match self {
            PruneReason::MultiplicityAboveDegree => "length s with a multiplicity above d",
            PruneReason::LengthAboveDegree => "length above s and above d",
        }
    }
}

/// Whether Algorithm-level pruning skips λ, for `s` equations of degree `d`.
pub fn prune_reason(lambda: &Partition, d: u32, s: usize) -> Option<PruneReason> {
    let ell = lambda.length();
    if ell == s {
        lambda.blocks().iter().any(|&(_, m)| m > d).then_some(PruneReason::MultiplicityAboveDegree)
    } else if ell > s && ell > d as usize {
        Some(PruneReason::LengthAboveDegree)
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub partition: Partition,
    pub length: usize,
    pub w: BigUint,
    /// Formula value; zero when pruned.
    pub c: BigRational,
    pub c_ceil: BigInt,
    pub e: BigRational,
    pub kappa: BigInt,
    pub pruned: Option<PruneReason>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport {
    pub n: usize,
    pub d: u32,
    pub s: usize,
    pub rows: Vec<BoundRow>,
    /// `d^s C(n+d-1, n)`.
    pub c_global: BigInt,
    /// `n (d+1)^s C(n+d, n)`.
    pub e_global: BigInt,
    /// `d^s (d-1)^{n-s} C(n, s)`.
    pub c_naive: BigInt,
    /// `⌈Σ c_λ⌉`.
    pub ceil_of_sum: BigInt,
    /// `Σ ⌈c_λ⌉`.
    pub sum_of_ceils: BigInt,
}

impl BoundsReport {
    pub fn sum_c(&self) -> BigRational {
        self.rows.iter().map(|r| &r.c).sum()
    }

    pub fn sum_e(&self) -> BigRational {
        self.rows.iter().map(|r| &r.e).sum()
    }

    pub fn row(&self, lambda: &Partition) -> Option<&BoundRow> {
        self.rows.iter().find(|r| &r.partition == lambda)
    }
}

/// `η_k(values)` by the usual product recurrence.
pub fn elementary(values: &[BigInt], k: usize) -> BigInt {
    let mut e = vec![BigInt::zero(); k + 1];
    e[0] = BigInt::one();
    for v in values {
        for j in (1..=k).rev() {
            let t = &e[j - 1] * v;
            e[j] += t;
        }
    }
    e.swap_remove(k)
}

/// `(a, a-1, …, a-len+1)`.
fn descending(a: i64, len: usize) -> Vec<BigInt> {
    (0..len as i64).map(|i| BigInt::from(a - i)).collect()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn ceil(q: &BigRational) -> BigInt {
    let (quo, rem) = q.numer().div_mod_floor(q.denom());
    if rem.is_zero() {
        quo
    } else {
        quo + 1
    }
}

/// Per-partition and global bounds for λ ⊢ n of length ≥ s.
pub fn bounds_report(n: usize, d: u32, s: usize) -> BoundsReport {
    assert!(d >= 2 && 1 <= s && s < n, "bounds need d ≥ 2 and 1 ≤ s < n");
    let di = BigInt::from(d);
    let ds = di.pow(s as u32);
    let ns = BigInt::from(n) * BigInt::from(d + 1).pow(s as u32);
    let mut rows = Vec::new();
    for lambda in enumerate_partitions(n, LengthFilter::AtLeast(s)) {
        let ell = lambda.length();
        let w: BigUint = lambda.blocks().iter().map(|&(_, m)| factorial(m as usize)).product();
        let wi = BigInt::from(w.clone());
        let (kappa, e_num) = if ell > s {
            (
                &ds * elementary(&descending(d as i64 - 1, ell), ell - s),
                &ns * elementary(&descending(d as i64, ell), ell - s),
            )
        } else {
            (ds.clone(), ns.clone())
        };
        let pruned = prune_reason(&lambda, d, s);
        let (c, e, kappa) = match pruned {
            Some(_) => (BigRational::zero(), BigRational::zero(), BigInt::zero()),
            None => (BigRational::new(kappa.clone(), wi.clone()), BigRational::new(e_num, wi), kappa),
        };
        rows.push(BoundRow { c_ceil: ceil(&c), partition: lambda, length: ell, w, c, e, kappa, pruned });
    }
    let sum: BigRational = rows.iter().map(|r| &r.c).sum();
    let sum_of_ceils = rows.iter().map(|r| &r.c_ceil).sum();
    BoundsReport {
        n,
        d,
        s,
        c_global: &ds * binomial((n + d as usize - 1) as u64, n as u64),
        e_global: ns * binomial((n + d as usize) as u64, n as u64),
        c_naive: ds * BigInt::from(d - 1).pow((n - s) as u32) * binomial(n as u64, s as u64),
        ceil_of_sum: ceil(&sum),
        sum_of_ceils,
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn table_rows() {
        // (n, s) with d = n: (𝔠, 𝔠̃, ⌈Σ c_λ⌉).
        let table = [
            (4, 2, 560, 864, 80),
            (4, 3, 2240, 768, 48),
            (5, 2, 3150, 16000, 432),
            (5, 3, 15750, 20000, 370),
            (5, 4, 78750, 12500, 157),
            (6, 2, 16632, 337500, 2227),
            (6, 3, 99792, 540000, 2453),
            (6, 4, 598752, 486000, 1503),
            (6, 5, 3592512, 233280, 486),
        ];
        for (n, s, c, cn, ceil) in table {
            let r = bounds_report(n, n as u32, s);
            assert_eq!((r.c_global.clone(), r.c_naive.clone(), r.ceil_of_sum.clone()), (big(c), big(cn), big(ceil)), "n={n} s={s}");
        }
    }

    #[test]
    fn rows_for_four_four_two() {
        let r = bounds_report(4, 4, 2);
        for (lam, c) in [("1^4", 8), ("1^2 2^1", 48), ("2^2", 8), ("1^1 3^1", 16)] {
            assert_eq!(r.row(&lam.parse().unwrap()).unwrap().c_ceil, big(c), "{lam}");
        }
        assert_eq!(r.sum_of_ceils, big(80));
        assert_eq!(r.row(&"1^4".parse().unwrap()).unwrap().c, BigRational::new(big(22), big(3)));
    }

    #[test]
    fn quadratic_global_bound() {
        for n in 2..9 {
            for s in 1..n {
                assert_eq!(bounds_report(n, 2, s).c_global, big(1 << s) * big(n as i64 + 1));
            }
        }
    }

    #[test]
    fn sphere_pruning() {
        let r = bounds_report(3, 2, 1);
        let row = r.row(&"1^3".parse().unwrap()).unwrap();
        assert_eq!(row.pruned, Some(PruneReason::LengthAboveDegree));
        assert!(row.c.is_zero());
        assert_eq!(prune_reason(&"1^2".parse().unwrap(), 1, 2), Some(PruneReason::MultiplicityAboveDegree));
    }

    #[test]
    fn elementary_values() {
        let v = descending(3, 4);
        assert_eq!(elementary(&v, 0), big(1));
        assert_eq!(elementary(&v, 1), big(6));
        assert_eq!(elementary(&v, 2), big(11));
        assert_eq!(elementary(&v, 4), big(0));
        assert_eq!(binomial(7, 3), big(35));
    }
}
