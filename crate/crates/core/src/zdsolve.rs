//! Zero-dimensional parametrizations and the solvers that produce them.
//!
//! A parametrization `((q, v_1..v_m), μ)` describes the finite set
//! `{(v_1(τ), …, v_m(τ)) : q(τ) = 0}`; `q` is squarefree, `deg v_i < deg q`
//! and `Σ μ_i v_i ≡ y mod q`. The degree-0 parametrization (`q = 1`) is the
//! empty set.
//!
//! Solving goes through a reduced Gröbner basis, the multiplication matrices
//! of the quotient algebra, and a Krylov sequence of a random linear form.
//! Non-radical ideals are first reduced modulo their nilradical, obtained by
//! adding the squarefree parts of the univariate minimal polynomials.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::groebner::{groebner, GroebnerBasis};
use crate::linalg::{ColMatrix, Echelon, Krylov};
use crate::mpoly::{MPoly, Monomial, PolyMatrix};
use crate::unipoly::UniPoly;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Retry budget for random separating forms.
pub const MAX_ATTEMPTS: usize = 16;

/// Largest quotient dimension the solver will materialize.
pub const MAX_QUOTIENT_DIMENSION: usize = 40_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDimParam {
    pub q: UniPoly,
    pub v: Vec<UniPoly>,
    pub mu: Vec<u32>,
}

impl ZeroDimParam {
    /// The empty set in `m` coordinates.
    pub fn empty(m: usize) -> Self {
        ZeroDimParam { q: UniPoly::one(), v: vec![UniPoly::zero(); m], mu: vec![0; m] }
    }

    pub fn degree(&self) -> usize {
        self.q.deg0()
    }

    pub fn nvars(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degree() == 0
    }

    /// Squarefree monic q, reduced v, and the linear form identity.
    pub fn check_invariants(&self, f: Fp) -> Result<()> {
        let fail = |m: &str| Err(Error::Internal(format!("parametrization invariant: {m}")));
        if !self.q.is_monic() {
            return fail("q is not monic");
        }
        if self.v.len() != self.mu.len() {
            return fail("v and μ lengths differ");
        }
        if self.is_empty() {
            return Ok(());
        }
        if !self.q.is_squarefree(f) {
            return fail("q is not squarefree");
        }
        let d = self.degree();
        if self.v.iter().any(|v| v.degree().is_some_and(|e| e >= d)) {
            return fail("some deg v_i ≥ deg q");
        }
        let mut form = UniPoly::zero();
        for (v, &m) in self.v.iter().zip(&self.mu) {
            form = form.add(f, &v.scale(f, m));
        }
        if form.sub(f, &UniPoly::x()).rem(f, &self.q).is_zero() {
            Ok(())
        } else {
            fail("Σ μ_i v_i ≢ y mod q")
        }
    }

    /// The points whose parameter is a root of q in GF(p); scans the field.
    pub fn rational_points(&self, f: Fp) -> Vec<Vec<u32>> {
        if self.is_empty() {
            return Vec::new();
        }
        self.q.roots_by_scan(f).into_iter().map(|t| self.v.iter().map(|v| v.eval(f, t)).collect()).collect()
    }

    /// Evaluates `g(v_1(y), …, v_m(y)) mod q` for every `g`.
    pub fn evaluate_all(&self, f: Fp, gens: &[MPoly]) -> Vec<UniPoly> {
        let mut memo: HashMap<Monomial, UniPoly> = HashMap::new();
        memo.insert(Monomial::ONE, UniPoly::one().rem(f, &self.q));
        gens.iter()
            .map(|g| {
                let mut acc = UniPoly::zero();
                for &(m, c) in g.terms() {
                    let val = monomial_value(f, m, &self.v, &self.q, &mut memo);
                    acc = acc.add(f, &val.scale(f, c));
                }
                acc
            })
            .collect()
    }

    /// True iff every `g` vanishes on the described set.
    pub fn satisfies(&self, f: Fp, gens: &[MPoly]) -> bool {
        self.is_empty() || self.evaluate_all(f, gens).iter().all(UniPoly::is_zero)
    }
}

/// `m(v) mod q`, built from the memoized value of `m / x_k` for the first
/// variable `x_k` dividing `m`.
fn monomial_value(
    f: Fp,
    m: Monomial,
    v: &[UniPoly],
    q: &UniPoly,
    memo: &mut HashMap<Monomial, UniPoly>,
) -> UniPoly {
    if let Some(r) = memo.get(&m) {
        return r.clone();
    }
    let k = (0..v.len()).find(|&k| m.exponent(k) > 0).expect("non-constant monomial");
    let prev = monomial_value(f, m.div(Monomial::var(k, 1)), v, q, memo);
    let r = prev.mulmod(f, &v[k], q);
    memo.insert(m, r.clone());
    r
}

/// The quotient algebra of a zero-dimensional ideal on its standard
/// monomial basis.
pub struct QuotientAlgebra {
    f: Fp,
    nvars: usize,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `mult[k]` is multiplication by `x_k`.
    mult: Vec<ColMatrix>,
    /// Normal forms of the coordinate functions.
    coordinates: Vec<Vec<u32>>,
}

impl QuotientAlgebra {
    pub fn new(gb: &GroebnerBasis) -> Result<Self> {
        let ring = gb.ring();
        let f = ring.field();
        let nvars = ring.nvars();
        if !gb.is_zero_dimensional() {
            return Err(Error::PositiveDimensional {
                context: "some variable has no pure power among the leading monomials".into(),
            });
        }
        let basis = gb.staircase(MAX_QUOTIENT_DIMENSION).ok_or_else(|| {
            Error::PositiveDimensional { context: format!("quotient dimension exceeds {MAX_QUOTIENT_DIMENSION}") }
        })?;
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let d = basis.len();
        // Reduced basis: every tail lies on the staircase.
        let leads: HashMap<Monomial, Vec<u32>> = gb
            .polys()
            .iter()
            .map(|g| {
                let mut v = vec![0u32; d];
                for &(m, c) in &g.terms()[1..] {
                    v[index[&m]] = f.neg(c);
                }
                (g.lead().unwrap().0, v)
            })
            .collect();
        let mut nf = NormalForms { f, nvars, basis: &basis, index: &index, leads: &leads, memo: HashMap::new() };
        let mut mult = Vec::with_capacity(nvars);
        for k in 0..nvars {
            let x = Monomial::var(k, 1);
            let cols = basis.iter().map(|&m| nf.get(m.mul(x))).collect();
            mult.push(ColMatrix { n: d, cols });
        }
        let coordinates = (0..nvars).map(|k| nf.get(Monomial::var(k, 1))).collect();
        Ok(QuotientAlgebra { f, nvars, basis, index, mult, coordinates })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn multiplication(&self, k: usize) -> &ColMatrix {
        &self.mult[k]
    }

    fn unit(&self) -> Vec<u32> {
        let mut e = vec![0; self.dimension()];
        e[self.index[&Monomial::ONE]] = 1;
        e
    }

    fn linear_form(&self, mu: &[u32]) -> ColMatrix {
        let mut t = ColMatrix::zero(self.dimension());
        for (k, &c) in mu.iter().enumerate() {
            t.add_scaled(self.f, c, &self.mult[k]);
        }
        t
    }

    /// Minimal polynomial of `x_k` in the algebra.
    pub fn minpoly_of_variable(&self, k: usize) -> UniPoly {
        Krylov::new(self.f, self.unit(), |v| self.mult[k].apply(self.f, v)).minpoly().clone()
    }

    /// The nilradical as a subspace, or `None` if the algebra is reduced.
    fn nilradical(&self) -> Option<Echelon> {
        let f = self.f;
        let mut radical_gens = Vec::new();
        for k in 0..self.nvars {
            let m = self.minpoly_of_variable(k);
            let g = m.squarefree_part(f);
            if g.deg0() < m.deg0() {
                radical_gens.push((k, g));
            }
        }
        if radical_gens.is_empty() {
            return None;
        }
        let mut ech = Echelon::new();
        for (k, g) in radical_gens {
            // a = g(x_k)·1 by Horner, then the ideal a·A spanned by b·a.
            let mut a = vec![0u32; self.dimension()];
            for &c in g.coeffs().iter().rev() {
                a = self.mult[k].apply(f, &a);
                a[self.index[&Monomial::ONE]] = f.add(a[self.index[&Monomial::ONE]], c);
            }
            let mut images: Vec<Vec<u32>> = Vec::with_capacity(self.dimension());
            for (i, &b) in self.basis.iter().enumerate() {
                let img = if i == 0 {
                    a.clone()
                } else {
                    let j = (0..self.nvars).find(|&j| b.exponent(j) > 0).unwrap();
                    let parent = self.index[&b.div(Monomial::var(j, 1))];
                    self.mult[j].apply(f, &images[parent])
                };
                ech.insert(f, img.clone());
                images.push(img);
            }
        }
        Some(ech)
    }
}

struct NormalForms<'a> {
    f: Fp,
    nvars: usize,
    basis: &'a [Monomial],
    index: &'a HashMap<Monomial, usize>,
    leads: &'a HashMap<Monomial, Vec<u32>>,
    memo: HashMap<Monomial, Vec<u32>>,
}

impl NormalForms<'_> {
    /// Normal form of a monomial as staircase coordinates. For `u` outside
    /// the staircase and not a leading monomial, `u = x_k·w` with `w` outside
    /// the staircase; then `NF(u) = Σ c·NF(x_k·m)` over the support of
    /// `NF(w)`, and each `x_k·m` is smaller than `u`.
    fn get(&mut self, u: Monomial) -> Vec<u32> {
        let d = self.index.len();
        if let Some(&i) = self.index.get(&u) {
            let mut e = vec![0; d];
            e[i] = 1;
            return e;
        }
        if let Some(v) = self.leads.get(&u).or_else(|| self.memo.get(&u)) {
            return v.clone();
        }
        let k = (0..self.nvars)
            .find(|&k| u.exponent(k) > 0 && !self.index.contains_key(&u.div(Monomial::var(k, 1))))
            .expect("a monomial outside the staircase has a non-standard divisor");
        let x = Monomial::var(k, 1);
        let w = self.get(u.div(x));
        let mut acc = vec![0u32; d];
        for (i, &c) in w.iter().enumerate() {
            if c != 0 {
                let col = self.get(self.basis[i].mul(x));
                crate::linalg::axpy(self.f, &mut acc, c, &col);
            }
        }
        self.memo.insert(u, acc.clone());
        acc
    }
}

/// A parametrization of the zero set of the ideal behind `gb`, multiplicities
/// erased. Separating forms are drawn from `rng`.
pub fn rur_extract(gb: &GroebnerBasis, rng: &mut impl Rng) -> Result<ZeroDimParam> {
    let m = gb.ring().nvars();
    if gb.is_unit() {
        return Ok(ZeroDimParam::empty(m));
    }
    let algebra = QuotientAlgebra::new(gb)?;
    rur_from_algebra(&algebra, rng)
}

fn rur_from_algebra(a: &QuotientAlgebra, rng: &mut impl Rng) -> Result<ZeroDimParam> {
    let f = a.f;
    let m = a.nvars;
    // Computed on the first failure only.
    let mut radical: Option<Option<Echelon>> = None;
    for _ in 0..MAX_ATTEMPTS {
        let mu: Vec<u32> = (0..m).map(|_| f.random(rng)).collect();
        let t = a.linear_form(&mu);
        let nil = radical.as_ref().and_then(|r| r.as_ref());
        let reduce = |mut v: Vec<u32>| {
            if let Some(e) = nil {
                e.reduce(f, &mut v);
            }
            v
        };
        let target = a.dimension() - nil.map_or(0, Echelon::rank);
        let kry = Krylov::new(f, reduce(a.unit()), |v| reduce(t.apply(f, v)));
        if kry.dimension() == target && kry.minpoly().is_squarefree(f) {
            let v = a
                .coordinates
                .iter()
                .map(|c| kry.express(f, &reduce(c.clone())))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Internal("coordinate outside the cyclic space".into()))?;
            let param = ZeroDimParam { q: kry.minpoly().clone(), v, mu };
            param.check_invariants(f)?;
            return Ok(param);
        }
        if radical.is_none() {
            radical = Some(a.nilradical());
        }
    }
    Err(Error::SeparationFailure { attempts: MAX_ATTEMPTS })
}

/// `gens` together with all `k`-minors of `h`.
pub fn system_with_minors(gens: &[MPoly], h: Option<(&PolyMatrix, usize)>) -> Result<Vec<MPoly>> {
    let mut all = gens.to_vec();
    if let Some((h, k)) = h {
        all.extend(h.minors(k)?.into_iter().filter(|g| !g.is_zero()));
    }
    Ok(all)
}

/// Parametrizes the zero set of `gens` plus the `k`-minors of `h`, which
/// must be finite. The result is checked against every generator.
pub fn isolated_points(gens: &[MPoly], h: Option<(&PolyMatrix, usize)>, seed: u64) -> Result<ZeroDimParam> {
    let all = system_with_minors(gens, h)?;
    let ring = all.first().map(|g| g.ring().clone()).ok_or_else(|| Error::InvalidInstance("empty system".into()))?;
    let f = ring.field();
    let gb = groebner(&all);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let param = rur_extract(&gb, &mut rng)?;
    if !param.satisfies(f, &all) {
        return Err(Error::Internal("parametrization does not satisfy the input system".into()));
    }
    Ok(param)
}

/// The zeros of `gens` with every coordinate in GF(p), found one variable
/// at a time from the roots of its minimal polynomial. Needs no separating
/// form, so it also works when p is too small to separate all zeros.
pub fn rational_zeros(gens: &[MPoly]) -> Result<Vec<Vec<u32>>> {
    let ring = gens.first().map(|g| g.ring().clone()).ok_or_else(|| Error::InvalidInstance("empty system".into()))?;
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(ring.nvars());
    rational_zeros_from(&groebner(gens), &mut prefix, &mut out)?;
    out.sort();
    Ok(out)
}

fn rational_zeros_from(gb: &GroebnerBasis, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) -> Result<()> {
    if gb.is_unit() {
        return Ok(());
    }
    let ring = gb.ring();
    let k = prefix.len();
    if k == ring.nvars() {
        out.push(prefix.clone());
        return Ok(());
    }
    let f = ring.field();
    let algebra = QuotientAlgebra::new(gb)?;
    for r in algebra.minpoly_of_variable(k).roots_by_scan(f) {
        let mut gens = gb.polys().to_vec();
        gens.push(MPoly::var(ring, k).sub(&MPoly::constant(ring, r)));
        prefix.push(r);
        rational_zeros_from(&groebner(&gens), prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Points given as images of coordinate functions over a squarefree modulus.
#[derive(Clone, Debug)]
pub struct Source {
    pub q: UniPoly,
    pub coords: Vec<UniPoly>,
}

/// A merged parametrization and the number of repeated points it absorbed.
#[derive(Clone, Debug)]
pub struct Merged {
    pub param: ZeroDimParam,
    pub collapsed: usize,
}

/// `Tr(y^i)` for `i < deg q`, the power sums of the roots of monic `q`.
fn root_power_sums(f: Fp, q: &UniPoly) -> Vec<u32> {
    let d = q.deg0();
    let a = |i: usize| q.coeff(i);
    let mut s = vec![0u32; d];
    if d == 0 {
        return s;
    }
    s[0] = (d as u32) % f.p();
    for k in 1..d {
        // Newton: s_k = -(k a_{d-k} + Σ_{i=1}^{k-1} a_{d-i} s_{k-i}).
        let mut acc = f.mul((k as u32) % f.p(), a(d - k));
        for i in 1..k {
            acc = f.mul_add(acc, a(d - i), s[k - i]);
        }
        s[k] = f.neg(acc);
    }
    s
}

fn trace(f: Fp, x: &UniPoly, sums: &[u32]) -> u32 {
    x.coeffs().iter().zip(sums).fold(0, |acc, (&c, &s)| f.mul_add(acc, c, s))
}

/// One parametrization of the union of the images of all sources, with
/// repeated points merged. Uses trace formulas, so it also counts repeats.
pub fn parametrize_images(f: Fp, m: usize, sources: &[Source], rng: &mut impl Rng) -> Result<Merged> {
    let sources: Vec<&Source> = sources.iter().filter(|s| s.q.deg0() > 0).collect();
    let total: usize = sources.iter().map(|s| s.q.deg0()).sum();
    if total == 0 {
        return Ok(Merged { param: ZeroDimParam::empty(m), collapsed: 0 });
    }
    if total >= f.p() as usize {
        return Err(Error::ModulusTooSmall { p: f.p(), degree: total });
    }
    let sums: Vec<Vec<u32>> = sources.iter().map(|s| root_power_sums(f, &s.q)).collect();
    'attempt: for _ in 0..MAX_ATTEMPTS {
        let mu: Vec<u32> = (0..m).map(|_| f.random(rng)).collect();
        // Power sums S_k of w and S^{(j)}_k of x_j·w^k over all points.
        let mut s = vec![0u32; total + 1];
        let mut sj = vec![vec![0u32; total]; m];
        let mut ws = Vec::with_capacity(sources.len());
        for (src, tr) in sources.iter().zip(&sums) {
            let mut w = UniPoly::zero();
            for (c, &mj) in src.coords.iter().zip(&mu) {
                w = w.add(f, &c.scale(f, mj));
            }
            let w = w.rem(f, &src.q);
            // Trace forms b ↦ Tr(x_j·b) as vectors on the monomial basis.
            let d = src.q.deg0();
            let forms: Vec<Vec<u32>> = src
                .coords
                .iter()
                .map(|c| {
                    let mut out = Vec::with_capacity(d);
                    let mut cur = c.rem(f, &src.q);
                    for _ in 0..d {
                        out.push(trace(f, &cur, tr));
                        cur = cur.mulmod(f, &UniPoly::x(), &src.q);
                    }
                    out
                })
                .collect();
            let mut power = UniPoly::one().rem(f, &src.q);
            for k in 0..=total {
                s[k] = f.add(s[k], trace(f, &power, tr));
                if k < total {
                    for j in 0..m {
                        sj[j][k] = f.add(sj[j][k], trace(f, &power, &forms[j]));
                    }
                    power = power.mulmod(f, &w, &src.q);
                }
            }
            ws.push(w);
        }
        // Characteristic polynomial of w by Newton's identities.
        let mut e = vec![1u32];
        for k in 1..=total {
            let mut acc = 0;
            for i in 1..=k {
                let term = f.mul(e[k - i], s[i]);
                acc = if i % 2 == 1 { f.add(acc, term) } else { f.sub(acc, term) };
            }
            e.push(f.div(acc, (k as u32) % f.p()));
        }
        let chi = UniPoly::from_coeffs(
            (0..=total).map(|i| {
                let k = total - i;
                if k.is_multiple_of(2) { e[k] } else { f.neg(e[k]) }
            }).collect(),
        );
        let q = chi.squarefree_part(f);
        let dq = q.deg0();
        // N_a(T) = polynomial part of q(T)·Σ_k S^{(a)}_k T^{-k-1}.
        let numerator = |sa: &[u32]| {
            UniPoly::from_coeffs(
                (0..dq)
                    .map(|j| (j + 1..=dq).fold(0, |acc, i| f.mul_add(acc, q.coeff(i), sa[i - j - 1])))
                    .collect(),
            )
        };
        let Some(den_inv) = numerator(&s).invmod(f, &q) else { continue 'attempt };
        let v: Vec<UniPoly> = sj.iter().map(|sa| numerator(sa).mulmod(f, &den_inv, &q)).collect();
        // Every source point must be reproduced; otherwise w did not separate.
        for (src, w) in sources.iter().zip(&ws) {
            for (vj, cj) in v.iter().zip(&src.coords) {
                if !vj.compose_mod(f, w, &src.q).sub(f, cj).rem(f, &src.q).is_zero() {
                    continue 'attempt;
                }
            }
        }
        let param = ZeroDimParam { q, v, mu };
        param.check_invariants(f)?;
        return Ok(Merged { param, collapsed: total - dq });
    }
    Err(Error::SeparationFailure { attempts: MAX_ATTEMPTS })
}

/// Union of two parametrizations of points in the same coordinates.
pub fn union_params(f: Fp, a: &ZeroDimParam, b: &ZeroDimParam, seed: u64) -> Result<ZeroDimParam> {
    if a.nvars() != b.nvars() {
        return Err(Error::Dimension(format!("{} vs {} coordinates", a.nvars(), b.nvars())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sources = [a, b].map(|p| Source { q: p.q.clone(), coords: p.v.clone() });
    Ok(parametrize_images(f, a.nvars(), &sources, &mut rng)?.param)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::Ring;

    fn fp() -> Fp {
        Fp::default()
    }

    fn point_set(p: &ZeroDimParam) -> std::collections::BTreeSet<Vec<u32>> {
        p.rational_points(fp()).into_iter().collect()
    }

    #[test]
    fn single_rational_point() {
        let r = Ring::numbered(fp(), "e", 2);
        let gens = [MPoly::parse(&r, "e1 - 3").unwrap(), MPoly::parse(&r, "e2 - 5").unwrap()];
        let p = isolated_points(&gens, None, 1).unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(point_set(&p), [vec![3, 5]].into_iter().collect());
    }

    #[test]
    fn square_root_of_two() {
        let f = fp();
        let r = Ring::numbered(f, "e", 2);
        let gens = [MPoly::parse(&r, "e1^2 - 2").unwrap(), MPoly::parse(&r, "e2 - 1").unwrap()];
        let p = isolated_points(&gens, None, 7).unwrap();
        assert_eq!(p.degree(), 2);
        // e2 is the constant 1 and e1 squares to 2 modulo q.
        assert_eq!(p.v[1], UniPoly::one());
        assert!(p.v[0].mulmod(f, &p.v[0], &p.q).sub(f, &UniPoly::constant(2)).rem(f, &p.q).is_zero());
    }

    #[test]
    fn unit_ideal_gives_empty() {
        let r = Ring::numbered(fp(), "x", 1);
        let p = isolated_points(&[MPoly::one(&r)], None, 0).unwrap();
        assert!(p.is_empty());
        p.check_invariants(fp()).unwrap();
    }

    #[test]
    fn multiplicities_are_erased() {
        let r = Ring::numbered(fp(), "x", 2);
        let gens = [MPoly::parse(&r, "x1^3 - 3*x1^2 + 3*x1 - 1").unwrap(), MPoly::parse(&r, "x2^2").unwrap()];
        let p = isolated_points(&gens, None, 3).unwrap();
        assert_eq!(p.degree(), 1);
        assert_eq!(point_set(&p), [vec![1, 0]].into_iter().collect());
    }

    #[test]
    fn positive_dimensional_rejected() {
        let r = Ring::numbered(fp(), "x", 2);
        let err = isolated_points(&[MPoly::parse(&r, "x1*x2").unwrap()], None, 0).unwrap_err();
        assert!(matches!(err, Error::PositiveDimensional { .. }));
    }

    #[test]
    fn sphere_bar_system_degree_six() {
        let f = fp();
        let r = Ring::numbered(f, "x", 2);
        // x1^2 + 2 x2^2 - 6 and the 2-minor of the compressed Jacobian.
        let g = MPoly::parse(&r, "x1^2 + 2*x2^2 - 6").unwrap();
        let phi = MPoly::parse(&r, "x1*x2^2 - 3*x1 - 6*x2").unwrap();
        let jac = crate::mpoly::jacobian(&[g.clone(), phi]);
        let h = PolyMatrix::from_fn(2, 2, |i, j| {
            // Column 2 stands for two equal columns; halve it.
            let e = jac.get(i, j).clone();
            if j == 1 { e.scale(f.inv(2)) } else { e }
        });
        // (z2²-1)(z2²-2)(z2²-3) = 0 with z1 = 3z2 - z2³; the z2² = 2 pair has
        // z1 = z2 and so lies on the coarser stratum.
        let p = isolated_points(&[g], Some((&h, 2)), 5).unwrap();
        assert_eq!(p.degree(), 6);
        let pts = point_set(&p);
        assert!(pts.contains(&vec![2, 1]));
        assert!(pts.contains(&vec![f.neg(2), f.neg(1)]));
    }

    #[test]
    fn separation_retries_on_collisions() {
        let f = fp();
        // Two points with equal first coordinate; μ = (1, 0) cannot separate.
        let src = Source {
            q: UniPoly::from_i64(f, &[2, -3, 1]),
            coords: vec![UniPoly::constant(1), UniPoly::from_i64(f, &[-1, 3])],
        };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = parametrize_images(f, 2, &[src], &mut rng).unwrap();
        assert_eq!(m.param.degree(), 2);
        let pts = point_set(&m.param);
        assert_eq!(pts, [vec![1, 2], vec![1, 5]].into_iter().collect());
    }

    #[test]
    fn disjoint_union_and_idempotence() {
        let f = fp();
        let a = ZeroDimParam { q: UniPoly::from_i64(f, &[-1, 1]), v: vec![UniPoly::constant(1)], mu: vec![1] };
        let b = ZeroDimParam { q: UniPoly::from_i64(f, &[-2, 1]), v: vec![UniPoly::constant(2)], mu: vec![1] };
        let u = union_params(f, &a, &b, 3).unwrap();
        assert_eq!(u.degree(), 2);
        assert_eq!(point_set(&u), [vec![1], vec![2]].into_iter().collect());
        assert_eq!(point_set(&union_params(f, &u, &u, 4).unwrap()), point_set(&u));
        assert_eq!(union_params(f, &u, &u, 4).unwrap().degree(), 2);
    }

    #[test]
    fn union_removes_shared_point() {
        let f = fp();
        let a = ZeroDimParam { q: UniPoly::linear_root(f, 9), v: vec![UniPoly::constant(2), UniPoly::constant(3)], mu: vec![0, 3] };
        // {(2,3), (7,1)} parametrized by y = x1 + x2: roots 5 and 8.
        let q = UniPoly::linear_root(f, 5).mul(f, &UniPoly::linear_root(f, 8));
        // x1 = (5y - 25)/3 ... interpolate: x1(5) = 2, x1(8) = 7.
        let x1 = interpolate(f, &[(5, 2), (8, 7)]);
        let x2 = interpolate(f, &[(5, 3), (8, 1)]);
        let b = ZeroDimParam { q, v: vec![x1, x2], mu: vec![1, 1] };
        b.check_invariants(f).unwrap();
        let u = union_params(f, &a, &b, 9).unwrap();
        assert_eq!(u.degree(), 2);
        assert_eq!(point_set(&u), [vec![2, 3], vec![7, 1]].into_iter().collect());
    }

    fn interpolate(f: Fp, pts: &[(u32, u32)]) -> UniPoly {
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
}
