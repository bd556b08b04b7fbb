//! Dense univariate polynomials over GF(p), lowest degree first.

use crate::error::{Error, Result};
use crate::field::Fp;
use serde::{Deserialize, Serialize};

/// Dense coefficient vector; no trailing zeros. The zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UniPoly {
    coeffs: Vec<u32>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![1] }
    }

    pub fn constant(c: u32) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monic linear polynomial `y - a`.
    pub fn linear_root(f: Fp, a: u32) -> Self {
        UniPoly { coeffs: vec![f.neg(a), 1] }
    }

    /// `y`.
    pub fn x() -> Self {
        UniPoly { coeffs: vec![0, 1] }
    }

    pub fn from_coeffs(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Builds from signed integers reduced into the field.
    pub fn from_i64(f: Fp, cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| f.from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Degree, with `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention deg(0) = 0; handy for counting points.
    pub fn deg0(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    pub fn monic(&self, f: Fp) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let c = f.inv(self.lead());
        self.scale(f, c)
    }

    pub fn scale(&self, f: Fp, c: u32) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, f: Fp, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, f: Fp, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::from_coeffs((0..n).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self, f: Fp) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn mul(&self, f: Fp, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len() + o.coeffs.len() - 1;
        let p = f.p() as u64;
        // Accumulate in u64 and fold before overflow: each product < 2^62.
        let mut acc = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                let t = acc[i + j] + a as u64 * b as u64;
                acc[i + j] = if t >= 1 << 62 { t % p } else { t };
            }
        }
        Self::from_coeffs(acc.into_iter().map(|c| (c % p) as u32).collect())
    }

    pub fn eval(&self, f: Fp, x: u32) -> u32 {
        self.coeffs.iter().rev().fold(0, |acc, &c| f.mul_add(c, acc, x))
    }

    pub fn derivative(&self, f: Fp) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, (i as u64 % f.p() as u64) as u32))
                .collect(),
        )
    }

    /// Quotient and remainder. Panics if `d` is zero.
    pub fn divrem(&self, f: Fp, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        let mut q = vec![0u32; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv);
            q[i - dd] = c;
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = f.mul_add(r[i - dd + j], nc, b);
            }
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn rem(&self, f: Fp, d: &Self) -> Self {
        if self.coeffs.len() < d.coeffs.len() {
            return self.clone();
        }
        self.divrem(f, d).1
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, f: Fp, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(f, d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, f: Fp, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic (or zero).
    pub fn xgcd(&self, f: Fp, o: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(f, &r1);
            let s = s0.sub(f, &q.mul(f, &s1));
            let t = t0.sub(f, &q.mul(f, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let c = f.inv(r0.lead());
        (r0.scale(f, c), s0.scale(f, c), t0.scale(f, c))
    }

    pub fn mulmod(&self, f: Fp, o: &Self, m: &Self) -> Self {
        self.mul(f, o).rem(f, m)
    }

    /// Inverse modulo `m` when `gcd(self, m) = 1`.
    pub fn invmod(&self, f: Fp, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(f, m).xgcd(f, m);
        g.is_one().then(|| s.rem(f, m))
    }

    /// `self(g) mod m` by Horner's rule.
    pub fn compose_mod(&self, f: Fp, g: &Self, m: &Self) -> Self {
        let g = g.rem(f, m);
        let mut acc = Self::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc.mulmod(f, &g, m).add(f, &Self::constant(c));
        }
        acc
    }

    /// Squarefree test via gcd with the derivative (valid for p > degree).
    pub fn is_squarefree(&self, f: Fp) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(f, &self.derivative(f)).degree() == Some(0),
        }
    }

    /// Squarefree part `P / gcd(P, P')`, monic.
    pub fn squarefree_part(&self, f: Fp) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic(f);
        }
        let g = self.gcd(f, &self.derivative(f));
        self.monic(f).div_exact(f, &g).expect("gcd divides its argument")
    }

    /// Yun's algorithm. Returns `(Q_i, m_i)` with multiplicities strictly
    /// increasing, every `Q_i` monic squarefree of positive degree, pairwise
    /// coprime, and `P = ∏ Q_i^{m_i}`.
    pub fn squarefree_factorization(&self, f: Fp) -> Result<Vec<(Self, usize)>> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if f.p() as usize <= deg {
            return Err(Error::ModulusTooSmall { p: f.p(), degree: deg });
        }
        let a = self.monic(f);
        let mut out = Vec::new();
        if deg == 0 {
            return Ok(out);
        }
        let da = a.derivative(f);
        let c = a.gcd(f, &da);
        let mut w = a.div_exact(f, &c).unwrap();
        let mut y = da.div_exact(f, &c).unwrap();
        let mut z = y.sub(f, &w.derivative(f));
        let mut i = 1;
        while w.degree() != Some(0) {
            let g = w.gcd(f, &z);
            w = w.div_exact(f, &g).unwrap();
            y = z.div_exact(f, &g).unwrap();
            z = y.sub(f, &w.derivative(f));
            if g.degree() != Some(0) {
                out.push((g, i));
            }
            i += 1;
        }
        Ok(out)
    }

    /// All roots in GF(p) by exhaustive scan; intended for small p only.
    pub fn roots_by_scan(&self, f: Fp) -> Vec<u32> {
        if self.is_zero() {
            return Vec::new();
        }
        (0..f.p()).filter(|&a| self.eval(f, a) == 0).collect()
    }

    pub fn product<'a>(f: Fp, it: impl IntoIterator<Item = &'a UniPoly>) -> Self {
        it.into_iter().fold(Self::one(), |acc, g| acc.mul(f, g))
    }

    pub fn pow(&self, f: Fp, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(f, self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> Fp {
        Fp::default()
    }

    #[test]
    fn cube_of_linear() {
        let p = UniPoly::from_i64(f(), &[-1, 3, -3, 1]);
        let sq = p.squarefree_factorization(f()).unwrap();
        assert_eq!(sq, vec![(UniPoly::from_i64(f(), &[-1, 1]), 3)]);
    }

    #[test]
    fn linear_is_squarefree() {
        let p = UniPoly::from_i64(f(), &[-5, 1]);
        assert_eq!(p.squarefree_factorization(f()).unwrap(), vec![(p.clone(), 1)]);
    }

    #[test]
    fn mixed_multiplicities_gf7() {
        // (T^2 + 1)^2 (T - 2) expanded by hand:
        // (T^4 + 2T^2 + 1)(T - 2) = T^5 - 2T^4 + 2T^3 - 4T^2 + T - 2.
        let g = Fp::new(7).unwrap();
        let p = UniPoly::from_i64(g, &[-2, 1, -4, 2, -2, 1]);
        let sq = p.squarefree_factorization(g).unwrap();
        assert_eq!(
            sq,
            vec![(UniPoly::from_i64(g, &[-2, 1]), 1), (UniPoly::from_i64(g, &[1, 0, 1]), 2)]
        );
    }

    #[test]
    fn modulus_too_small() {
        let g = Fp::new(3).unwrap();
        let p = UniPoly::from_i64(g, &[0, 0, 0, 1]);
        assert!(matches!(
            p.squarefree_factorization(g),
            Err(Error::ModulusTooSmall { .. })
        ));
        assert_eq!(UniPoly::zero().squarefree_factorization(g), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn xgcd_identity() {
        let a = UniPoly::from_i64(f(), &[1, 2, 3, 4]);
        let b = UniPoly::from_i64(f(), &[5, 0, 1]);
        let (g, s, t) = a.xgcd(f(), &b);
        assert_eq!(s.mul(f(), &a).add(f(), &t.mul(f(), &b)), g);
    }
}
