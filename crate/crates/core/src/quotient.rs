//! Dynamic evaluation over GF(p)[y]/q for squarefree q.
//!
//! The ring is treated as a field. Whenever a zero-divisor must be inverted,
//! the computation stops with a [`SplitEvent`] and the caller restarts it
//! modulo each factor.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::unipoly::UniPoly;

/// An element of GF(p)[y]/modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientElement {
    pub modulus: UniPoly,
    pub value: UniPoly,
}

/// `modulus = factors.0 * factors.1`, both monic, coprime, of positive degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitEvent {
    pub factors: (UniPoly, UniPoly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inversion {
    Inverse(QuotientElement),
    Split(SplitEvent),
}

impl QuotientElement {
    pub fn new(f: Fp, modulus: UniPoly, value: UniPoly) -> Self {
        assert!(modulus.is_monic(), "quotient modulus must be monic");
        let value = value.rem(f, &modulus);
        QuotientElement { modulus, value }
    }
}

/// Inverts `a`, or splits the modulus into `gcd(value, modulus)` and its cofactor.
pub fn quotient_invert(f: Fp, a: &QuotientElement) -> Result<Inversion> {
    if a.value.is_zero() {
        return Err(Error::ZeroInverse);
    }
    let (g, s, _) = a.value.xgcd(f, &a.modulus);
    if g.is_one() {
        let inv = QuotientElement { modulus: a.modulus.clone(), value: s.rem(f, &a.modulus) };
        return Ok(Inversion::Inverse(inv));
    }
    let cof = a.modulus.div_exact(f, &g).expect("gcd divides modulus");
    Ok(Inversion::Split(SplitEvent { factors: (g, cof) }))
}

pub type Dyn<T> = std::result::Result<T, SplitEvent>;

/// Working context for polynomials in T with coefficients in GF(p)[y]/q.
/// Coefficients are reduced `UniPoly` values; polynomials are trimmed.
#[derive(Clone, Debug)]
pub struct DynRing {
    pub f: Fp,
    pub modulus: UniPoly,
}

pub type DynPoly = Vec<UniPoly>;

impl DynRing {
    pub fn new(f: Fp, modulus: UniPoly) -> Self {
        DynRing { f, modulus }
    }

    pub fn reduce(&self, a: &UniPoly) -> UniPoly {
        a.rem(self.f, &self.modulus)
    }

    pub fn inv(&self, a: &UniPoly) -> Dyn<UniPoly> {
        let el = QuotientElement { modulus: self.modulus.clone(), value: a.clone() };
        match quotient_invert(self.f, &el) {
            Ok(Inversion::Inverse(b)) => Ok(b.value),
            Ok(Inversion::Split(s)) => Err(s),
            Err(_) => unreachable!("callers never invert an exact zero"),
        }
    }

    fn mulc(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a.mulmod(self.f, b, &self.modulus)
    }

    pub fn trim(mut p: DynPoly) -> DynPoly {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn add(&self, a: &DynPoly, b: &DynPoly) -> DynPoly {
        let n = a.len().max(b.len());
        let z = UniPoly::zero();
        Self::trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&z).add(self.f, b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn sub(&self, a: &DynPoly, b: &DynPoly) -> DynPoly {
        let n = a.len().max(b.len());
        let z = UniPoly::zero();
        Self::trim(
            (0..n)
                .map(|i| a.get(i).unwrap_or(&z).sub(self.f, b.get(i).unwrap_or(&z)))
                .collect(),
        )
    }

    pub fn mul(&self, a: &DynPoly, b: &DynPoly) -> DynPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![UniPoly::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].add(self.f, &x.mul(self.f, y));
            }
        }
        Self::trim(out.iter().map(|c| self.reduce(c)).collect())
    }

    pub fn derivative(&self, a: &DynPoly) -> DynPoly {
        Self::trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(self.f, (i % self.f.p() as usize) as u32))
                .collect(),
        )
    }

    pub fn monic(&self, a: &DynPoly) -> Dyn<DynPoly> {
        let Some(lc) = a.last() else { return Ok(Vec::new()) };
        if lc.is_one() {
            return Ok(a.clone());
        }
        let inv = self.inv(lc)?;
        Ok(a.iter().map(|c| self.mulc(c, &inv)).collect())
    }

    /// Division by a monic divisor; never splits.
    pub fn divrem_monic(&self, a: &DynPoly, d: &DynPoly) -> (DynPoly, DynPoly) {
        debug_assert!(d.last().is_some_and(|c| c.is_one()));
        let dd = d.len() - 1;
        if a.len() <= dd {
            return (Vec::new(), a.clone());
        }
        let mut r = a.clone();
        let mut q = vec![UniPoly::zero(); a.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.iter().enumerate() {
                r[i - dd + j] = r[i - dd + j].sub(self.f, &self.mulc(&c, dj));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Self::trim(q), Self::trim(r))
    }

    /// Monic gcd by Euclid, inverting every leading coefficient used.
    pub fn gcd(&self, a: &DynPoly, b: &DynPoly) -> Dyn<DynPoly> {
        let mut a = self.monic(a)?;
        let mut b = self.monic(b)?;
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = self.divrem_monic(&a, &b).1;
            a = b;
            b = self.monic(&r)?;
        }
        Ok(a)
    }

    pub fn div_exact_monic(&self, a: &DynPoly, d: &DynPoly) -> DynPoly {
        let (q, r) = self.divrem_monic(a, d);
        debug_assert!(r.is_empty(), "inexact division in dynamic evaluation");
        q
    }

    /// Yun's algorithm over the quotient ring; input must be monic.
    pub fn squarefree_factorization(&self, a: &DynPoly) -> Dyn<Vec<(DynPoly, usize)>> {
        let mut out = Vec::new();
        if a.len() <= 1 {
            return Ok(out);
        }
        let da = self.derivative(a);
        let c = self.gcd(a, &da)?;
        let mut w = self.div_exact_monic(a, &c);
        let y = self.div_exact_monic_any(&da, &c);
        let mut z = self.sub(&y, &self.derivative(&w));
        let mut i = 1;
        while w.len() > 1 {
            let g = self.gcd(&w, &z)?;
            w = self.div_exact_monic(&w, &g);
            let y = self.div_exact_monic_any(&z, &g);
            z = self.sub(&y, &self.derivative(&w));
            if g.len() > 1 {
                out.push((g, i));
            }
            i += 1;
        }
        Ok(out)
    }

    fn div_exact_monic_any(&self, a: &DynPoly, d: &DynPoly) -> DynPoly {
        if a.is_empty() {
            return Vec::new();
        }
        self.div_exact_monic(a, d)
    }
}
