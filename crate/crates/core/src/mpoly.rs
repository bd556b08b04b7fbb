//! Sparse multivariate polynomials over GF(p).
//!
//! Monomials pack up to [`MAX_VARS`] exponents into one `u64`, one byte per
//! variable with `x_1` in the lowest byte. Total degree is capped at
//! [`MAX_DEGREE`], which keeps every byte below 128; that makes
//! multiplication a plain add and divisibility a single borrow test.
//!
//! Terms are sorted by decreasing graded reverse lexicographic order on the
//! unweighted exponents. Weights only affect [`MPoly::weighted_degree`].

use crate::error::{Error, Result};
use crate::field::Fp;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub const MAX_VARS: usize = 8;
pub const MAX_DEGREE: u32 = 127;

const HIGH_BITS: u64 = 0x8080_8080_8080_8080;
const BYTE_ONES: u64 = 0x0101_0101_0101_0101;

/// Exponent vector packed one byte per variable.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables supported");
        let total: u32 = exps.iter().sum();
        assert!(total <= MAX_DEGREE, "monomial degree {total} exceeds {MAX_DEGREE}");
        Monomial(exps.iter().enumerate().fold(0, |acc, (i, &e)| acc | (e as u64) << (8 * i)))
    }

    pub fn var(i: usize, e: u32) -> Self {
        let mut v = [0u32; MAX_VARS];
        v[i] = e;
        Self::from_exponents(&v)
    }

    #[inline]
    pub fn exponent(self, i: usize) -> u32 {
        ((self.0 >> (8 * i)) & 0xff) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|i| self.exponent(i)).collect()
    }

    #[inline]
    pub fn degree(self) -> u32 {
        (self.0.wrapping_mul(BYTE_ONES) >> 56) as u32
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: Self) -> Self {
        assert!(
            self.degree() + o.degree() <= MAX_DEGREE,
            "monomial degree exceeds {MAX_DEGREE}"
        );
        Monomial(self.0 + o.0)
    }

    /// True when `self` divides `o`.
    #[inline]
    pub fn divides(self, o: Self) -> bool {
        ((o.0 | HIGH_BITS) - self.0) & HIGH_BITS == HIGH_BITS
    }

    /// `self / o`; requires `o | self`.
    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, o: Self) -> Self {
        debug_assert!(o.divides(self));
        Monomial(self.0 - o.0)
    }

    pub fn lcm(self, o: Self) -> Self {
        let mut r = 0u64;
        for i in 0..MAX_VARS {
            r |= (self.exponent(i).max(o.exponent(i)) as u64) << (8 * i);
        }
        let m = Monomial(r);
        assert!(m.degree_exact() <= MAX_DEGREE, "lcm degree exceeds {MAX_DEGREE}");
        m
    }

    pub fn gcd(self, o: Self) -> Self {
        let mut r = 0u64;
        for i in 0..MAX_VARS {
            r |= (self.exponent(i).min(o.exponent(i)) as u64) << (8 * i);
        }
        Monomial(r)
    }

    pub fn is_coprime(self, o: Self) -> bool {
        (0..MAX_VARS).all(|i| self.exponent(i) == 0 || o.exponent(i) == 0)
    }

    fn degree_exact(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exponent(i)).sum()
    }

    /// Index of the only variable present, if the monomial is a pure power.
    pub fn pure_power_var(self) -> Option<usize> {
        let mut found = None;
        for i in 0..MAX_VARS {
            if self.exponent(i) > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn weighted_degree(self, weights: &[u32]) -> u32 {
        weights.iter().enumerate().map(|(i, &w)| w * self.exponent(i)).sum()
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic: higher degree first; ties broken by the
    /// smaller exponent in the last differing variable.
    #[inline]
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| o.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Variable names, weights and coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    field: Fp,
    names: Vec<String>,
    weights: Vec<u32>,
}

impl Ring {
    pub fn new(field: Fp, names: Vec<String>) -> Arc<Self> {
        let weights = vec![1; names.len()];
        Self::with_weights(field, names, weights)
    }

    pub fn with_weights(field: Fp, names: Vec<String>, weights: Vec<u32>) -> Arc<Self> {
        assert!(names.len() <= MAX_VARS, "at most {MAX_VARS} variables supported");
        assert_eq!(names.len(), weights.len());
        Arc::new(Ring { field, names, weights })
    }

    /// Variables `prefix1 … prefixN`.
    pub fn numbered(field: Fp, prefix: &str, n: usize) -> Arc<Self> {
        Self::new(field, (1..=n).map(|i| format!("{prefix}{i}")).collect())
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
}

pub type Term = (Monomial, u32);

#[derive(Clone, Debug)]
pub struct MPoly {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl PartialEq for MPoly {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms && (Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring)
    }
}

impl Eq for MPoly {}

/// Sorts descending and merges equal monomials, dropping zeros.
pub(crate) fn normalize_terms(f: Fp, mut terms: Vec<Term>) -> Vec<Term> {
    terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some(last) if last.0 == m => last.1 = f.add(last.1, c),
            _ => out.push((m, c)),
        }
        if out.last().is_some_and(|t| t.1 == 0) {
            out.pop();
        }
    }
    out
}

/// `a + c * m * b` for sorted term lists.
pub(crate) fn add_scaled_shifted(f: Fp, a: &[Term], c: u32, m: Monomial, b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let mb = b[j].0.mul(m);
        match a[i].0.cmp(&mb) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push((mb, f.mul(c, b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = f.mul_add(a[i].1, c, b[j].1);
                if v != 0 {
                    out.push((mb, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(mm, cc)| (mm.mul(m), f.mul(c, cc))));
    out
}

impl MPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MPoly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<Ring>, c: u32) -> Self {
        let c = c % ring.field.p();
        let terms = if c == 0 { Vec::new() } else { vec![(Monomial::ONE, c)] };
        MPoly { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.nvars());
        MPoly { ring: ring.clone(), terms: vec![(Monomial::var(i, 1), 1)] }
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: u32) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        let terms = normalize_terms(ring.field, terms);
        MPoly { ring: ring.clone(), terms }
    }

    /// Builds from `(coefficient, exponent vector)` pairs with signed coefficients.
    pub fn from_exponents(ring: &Arc<Ring>, terms: &[(i64, Vec<u32>)]) -> Self {
        let f = ring.field;
        Self::from_terms(
            ring,
            terms
                .iter()
                .map(|(c, e)| {
                    assert_eq!(e.len(), ring.nvars(), "exponent vector length");
                    (Monomial::from_exponents(e), f.from_i64(*c))
                })
                .collect(),
        )
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn field(&self) -> Fp {
        self.ring.field
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.0 == Monomial::ONE)
    }

    pub fn constant_term(&self) -> u32 {
        match self.terms.last() {
            Some(&(m, c)) if m == Monomial::ONE => c,
            _ => 0,
        }
    }

    pub fn lead(&self) -> Option<Term> {
        self.terms.first().copied()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.degree()).max()
    }

    pub fn weighted_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.0.weighted_degree(&self.ring.weights)).max()
    }

    /// Largest exponent of variable `i`.
    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.iter().map(|t| t.0.exponent(i)).max().unwrap_or(0)
    }

    fn check_ring(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring,
            "polynomials live in different rings"
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_ring(o);
        let terms = add_scaled_shifted(self.field(), &self.terms, 1, Monomial::ONE, &o.terms);
        MPoly { ring: self.ring.clone(), terms }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check_ring(o);
        let f = self.field();
        let terms = add_scaled_shifted(f, &self.terms, f.neg(1), Monomial::ONE, &o.terms);
        MPoly { ring: self.ring.clone(), terms }
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field().neg(1))
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.field();
        if c.is_multiple_of(f.p()) {
            return Self::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, a)| (m, f.mul(a, c))).collect(),
        }
    }

    pub fn mul_term(&self, m: Monomial, c: u32) -> Self {
        let f = self.field();
        if c.is_multiple_of(f.p()) {
            return Self::zero(&self.ring);
        }
        MPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(mm, a)| (mm.mul(m), f.mul(a, c))).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_ring(o);
        if self.is_zero() || o.is_zero() {
            return Self::zero(&self.ring);
        }
        let f = self.field();
        let p = f.p() as u64;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(self.len() * o.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &o.terms {
                let e = acc.entry(ma.mul(mb)).or_insert(0);
                *e = (*e + ca as u64 * cb as u64) % p;
            }
        }
        let terms = acc.into_iter().filter(|t| t.1 != 0).map(|(m, c)| (m, c as u32)).collect();
        Self::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(&self.ring);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Makes the leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.lead() {
            Some((_, c)) if c != 1 => self.scale(self.field().inv(c)),
            _ => self.clone(),
        }
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        let f = self.field();
        let one = Monomial::var(i, 1);
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0.exponent(i) > 0)
            .map(|&(m, c)| (m.div(one), f.mul(c, m.exponent(i) % f.p())))
            .filter(|t| t.1 != 0)
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    pub fn evaluate(&self, point: &[u32]) -> u32 {
        assert_eq!(point.len(), self.ring.nvars());
        let f = self.field();
        let n = point.len();
        let maxdeg: Vec<u32> = (0..n).map(|i| self.degree_in(i)).collect();
        let powers: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut v = vec![1u32];
                for _ in 0..maxdeg[i] {
                    let last = *v.last().unwrap();
                    v.push(f.mul(last, point[i]));
                }
                v
            })
            .collect();
        self.terms.iter().fold(0, |acc, &(m, c)| {
            let mv = (0..n).fold(c, |a, i| f.mul(a, powers[i][m.exponent(i) as usize]));
            f.add(acc, mv)
        })
    }

    /// Replaces variable `i` by `images[i]`, all living in one target ring.
    pub fn substitute(&self, images: &[MPoly]) -> MPoly {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|g| g.ring.clone())
            .expect("substitution needs at least one image");
        let n = images.len();
        let mut powers: Vec<Vec<MPoly>> = vec![vec![MPoly::one(&target)]; n];
        let mut acc: Vec<Term> = Vec::new();
        for &(m, c) in &self.terms {
            let mut t = MPoly::constant(&target, c);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exponent(i) as usize;
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&images[i]);
                    pw.push(next);
                }
                if e > 0 {
                    t = t.mul(&pw[e]);
                }
            }
            acc.extend(t.terms);
        }
        MPoly::from_terms(&target, acc)
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    pub fn rename(&self, target: &Arc<Ring>, map: &[usize]) -> MPoly {
        assert_eq!(map.len(), self.ring.nvars());
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| {
                let mut e = vec![0u32; target.nvars()];
                for (i, &j) in map.iter().enumerate() {
                    e[j] += m.exponent(i);
                }
                (Monomial::from_exponents(&e), c)
            })
            .collect();
        MPoly::from_terms(target, terms)
    }

    /// Applies σ to variable indices: `x_i ↦ x_{σ(i)}`.
    pub fn apply_permutation(&self, sigma: &[usize]) -> MPoly {
        self.rename(&self.ring.clone(), sigma)
    }

    /// Same terms in a ring with identical variables but another descriptor
    /// (for example different weights).
    pub fn with_ring(&self, ring: &Arc<Ring>) -> MPoly {
        assert_eq!(ring.nvars(), self.ring.nvars());
        assert_eq!(ring.field, self.ring.field);
        MPoly { ring: ring.clone(), terms: self.terms.clone() }
    }

    /// Divides by `(x_i - x_j)` exactly, by synthetic division in `x_i`.
    pub fn exact_divide_linear(&self, i: usize, j: usize) -> Result<MPoly> {
        assert_ne!(i, j, "linear form x_i - x_j needs i != j");
        let ring = &self.ring;
        let deg = self.degree_in(i) as usize;
        // Coefficients of x_i^k, free of x_i.
        let mut coeffs: Vec<Vec<Term>> = vec![Vec::new(); deg + 1];
        for &(m, c) in &self.terms {
            let k = m.exponent(i);
            coeffs[k as usize].push((m.div(Monomial::var(i, k)), c));
        }
        let coeffs: Vec<MPoly> = coeffs.into_iter().map(|t| MPoly::from_terms(ring, t)).collect();
        let xj = MPoly::var(ring, j);
        // b_{k-1} = c_k + x_j * b_k, from the top; remainder c_0 + x_j * b_0.
        let mut carry = MPoly::zero(ring);
        let mut quotient: Vec<Term> = Vec::new();
        for k in (1..=deg).rev() {
            carry = coeffs[k].add(&carry.mul(&xj));
            quotient.extend(carry.mul_term(Monomial::var(i, (k - 1) as u32), 1).terms);
        }
        let remainder = if deg == 0 { coeffs[0].clone() } else { coeffs[0].add(&carry.mul(&xj)) };
        if !remainder.is_zero() {
            return Err(Error::NotDivisible { remainder: remainder.to_string() });
        }
        Ok(MPoly::from_terms(ring, quotient))
    }

    /// Parses the text form, e.g. `2*x1^2*x3 + 65519*x2 - 7`.
    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<MPoly> {
        Parser { text, pos: 0, ring }.poly()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, &(m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if c != 1 || m == Monomial::ONE {
                factors.push(c.to_string());
            }
            for (i, name) in self.ring.names.iter().enumerate() {
                match m.exponent(i) {
                    0 => {}
                    1 => factors.push(name.clone()),
                    e => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        let before = &self.text[..self.pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(before.len(), |k| before.len() - k - 1) + 1;
        Error::parse(msg, line, column)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos].parse().map_err(|_| self.err("expected integer"))
    }

    fn poly(&mut self) -> Result<MPoly> {
        let f = self.ring.field;
        let mut terms = Vec::new();
        self.skip_ws();
        let mut sign = 1u32;
        if self.peek() == Some('-') {
            sign = f.neg(1);
            self.pos += 1;
        } else if self.peek() == Some('+') {
            self.pos += 1;
        }
        loop {
            let (m, c) = self.term()?;
            terms.push((m, f.mul(c, sign)));
            self.skip_ws();
            match self.peek() {
                None => break,
                Some('+') => sign = 1,
                Some('-') => sign = f.neg(1),
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
            self.pos += 1;
        }
        Ok(MPoly::from_terms(self.ring, terms))
    }

    fn term(&mut self) -> Result<Term> {
        let f = self.ring.field;
        let mut c = 1u32;
        let mut exps = vec![0u32; self.ring.nvars()];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(ch) if ch.is_ascii_digit() => {
                    let v = self.number()?;
                    c = f.mul(c, (v % f.p() as u64) as u32);
                }
                Some(ch) if ch.is_alphabetic() || ch == '_' => {
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                        self.pos += 1;
                    }
                    let name = &self.text[start..self.pos];
                    let Some(i) = self.ring.names.iter().position(|n| n == name) else {
                        self.pos = start;
                        return Err(self.err(&format!("unknown variable '{name}'")));
                    };
                    self.skip_ws();
                    let mut e = 1;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self.number()? as u32;
                    }
                    exps[i] += e;
                }
                _ => return Err(self.err("expected coefficient or variable")),
            }
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        if exps.iter().sum::<u32>() > MAX_DEGREE {
            return Err(self.err("monomial degree too large"));
        }
        Ok((Monomial::from_exponents(&exps), c))
    }
}

/// Rectangular matrix of polynomials over one ring, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MPoly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MPoly>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        PolyMatrix { rows, cols, entries }
    }

    pub fn from_fn(rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> MPoly) -> Self {
        let entries = (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).map(|(r, c)| g(r, c));
        PolyMatrix { rows, cols, entries: entries.collect() }
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { MPoly::one(ring) } else { MPoly::zero(ring) })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &MPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: MPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[MPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[MPoly] {
        &self.entries
    }

    pub fn map(&self, g: impl FnMut(&MPoly) -> MPoly) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(g).collect() }
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let ring = self.entries.first().or(o.entries.first()).map(|p| p.ring().clone());
        let Some(ring) = ring else { return Ok(PolyMatrix::new(self.rows, o.cols, Vec::new())) };
        Ok(Self::from_fn(self.rows, o.cols, |r, c| {
            (0..self.cols).fold(MPoly::zero(&ring), |acc, k| acc.add(&self.get(r, k).mul(o.get(k, c))))
        }))
    }

    /// Determinant of the submatrix on the given rows and columns, by
    /// cofactor expansion along the first selected row.
    pub fn sub_determinant(&self, rows: &[usize], cols: &[usize]) -> MPoly {
        debug_assert_eq!(rows.len(), cols.len());
        let ring = self.entries[0].ring().clone();
        match rows.len() {
            0 => MPoly::one(&ring),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = MPoly::zero(&ring);
                let rest_rows = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a.is_zero() {
                        continue;
                    }
                    let rest_cols: Vec<usize> =
                        cols.iter().enumerate().filter(|&(t, _)| t != k).map(|(_, &x)| x).collect();
                    let minor = self.sub_determinant(rest_rows, &rest_cols);
                    let term = a.mul(&minor);
                    acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }

    pub fn determinant(&self) -> Result<MPoly> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!("determinant of {}x{}", self.rows, self.cols)));
        }
        if self.rows == 0 {
            return Err(Error::Dimension("determinant of empty matrix".into()));
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.sub_determinant(&idx, &idx))
    }

    /// All k-minors, ordered lexicographically by (row set, column set).
    pub fn minors(&self, k: usize) -> Result<Vec<MPoly>> {
        if k == 0 || k > self.rows || k > self.cols {
            return Err(Error::Dimension(format!(
                "{k}-minors of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let row_sets = combinations(self.rows, k);
        let col_sets = combinations(self.cols, k);
        let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
        for rs in &row_sets {
            for cs in &col_sets {
                out.push(self.sub_determinant(rs, cs));
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }
}

/// k-subsets of {0..n} in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// The Jacobian matrix of `polys` with respect to all ring variables.
pub fn jacobian(polys: &[MPoly]) -> PolyMatrix {
    let n = polys[0].ring().nvars();
    PolyMatrix::from_fn(polys.len(), n, |r, c| polys[r].partial_derivative(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> Arc<Ring> {
        Ring::numbered(Fp::default(), "x", 3)
    }

    #[test]
    fn grevlex_order() {
        let a = Monomial::from_exponents(&[1, 0, 1]);
        let b = Monomial::from_exponents(&[0, 2, 0]);
        // Same degree; x3 exponent decides: smaller wins.
        assert!(b > a);
        assert!(Monomial::from_exponents(&[0, 0, 3]) > Monomial::from_exponents(&[2, 0, 0]));
        assert!(Monomial::from_exponents(&[2, 0, 0]) > Monomial::from_exponents(&[1, 1, 0]));
    }

    #[test]
    fn divisibility() {
        let a = Monomial::from_exponents(&[1, 2, 0]);
        let b = Monomial::from_exponents(&[2, 2, 1]);
        assert!(a.divides(b));
        assert!(!b.divides(a));
        assert!(Monomial::ONE.divides(a));
        assert_eq!(b.div(a), Monomial::from_exponents(&[1, 0, 1]));
    }

    #[test]
    fn parse_and_print() {
        let r = ring3();
        let p = MPoly::parse(&r, "2*x1^2*x3 - 2*x2 + 7").unwrap();
        assert_eq!(p.to_string(), "2*x1^2*x3 + 65519*x2 + 7");
        assert_eq!(MPoly::parse(&r, &p.to_string()).unwrap(), p);
        let e = MPoly::parse(&r, "x1 +\n x4").unwrap_err();
        assert_eq!(e, Error::parse("unknown variable 'x4'", 2, 2));
    }

    #[test]
    fn sphere_minor() {
        let r = ring3();
        let f = MPoly::parse(&r, "x1^2 + x2^2 + x3^2 - 6").unwrap();
        let phi = MPoly::parse(&r, "x1*x2*x3 - 3*x1 - 3*x2 - 3*x3").unwrap();
        let minors = jacobian(&[f, phi]).minors(2).unwrap();
        assert_eq!(minors.len(), 3);
        // Column sets in order {1,2}, {1,3}, {2,3}.
        let expected = MPoly::parse(&r, "2*x1^2*x2 - 2*x2*x3^2 - 6*x1 + 6*x3").unwrap();
        assert_eq!(minors[1], expected);
    }

    #[test]
    fn trivial_minors() {
        let r = ring3();
        let id = PolyMatrix::identity(&r, 2);
        assert_eq!(id.minors(2).unwrap(), vec![MPoly::one(&r)]);
        let c = |v| MPoly::constant(&r, v);
        let m = PolyMatrix::new(2, 3, vec![c(1), c(2), c(3), c(1), c(2), c(3)]);
        assert!(m.minors(2).unwrap().iter().all(|p| p.is_zero()));
        assert!(m.minors(3).is_err());
    }

    #[test]
    fn divide_linear() {
        let r = ring3();
        let f = MPoly::parse(&r, "x1^2 - x2^2").unwrap();
        assert_eq!(f.exact_divide_linear(0, 1).unwrap(), MPoly::parse(&r, "x1 + x2").unwrap());
        assert_eq!(MPoly::zero(&r).exact_divide_linear(0, 1).unwrap(), MPoly::zero(&r));
        let g = MPoly::parse(&r, "x1^2 + x2").unwrap();
        assert!(matches!(g.exact_divide_linear(0, 1), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn divided_difference_of_example_row() {
        // (q1 - q2)/(z2 - z1) where q1 - q2 = (z2 - z1) z3^2 (z1 + z2 + 2 z3).
        let r = Ring::numbered(Fp::default(), "z", 3);
        let a = MPoly::parse(&r, "z1 + z2 + 2*z3").unwrap();
        let z3sq = MPoly::parse(&r, "z3^2").unwrap();
        let z1z2z3sq = MPoly::parse(&r, "z1*z2*z3^2").unwrap();
        let q1 = MPoly::parse(&r, "z2*z3^2").unwrap().mul(&a).add(&z1z2z3sq);
        let q2 = MPoly::parse(&r, "z1*z3^2").unwrap().mul(&a).add(&z1z2z3sq);
        let dd = q1.sub(&q2).exact_divide_linear(1, 0).unwrap();
        assert_eq!(dd, z3sq.mul(&a));
    }
}
