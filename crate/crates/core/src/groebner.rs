//! Reduced Gröbner bases for graded reverse lexicographic order.
//!
//! Buchberger's algorithm with the normal selection strategy (smallest lcm
//! first) and the Gebauer–Möller installation of both Buchberger criteria.
//! Reduction keeps the running polynomial in a hash map with a max-heap of
//! its monomials, so each reduction step costs the length of the reducer.

use crate::field::Fp;
use crate::mpoly::{MPoly, Monomial, Ring, Term};
use std::collections::{BinaryHeap, HashMap};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    /// Monic generators sorted by increasing leading monomial.
    polys: Vec<MPoly>,
    pub reduced: bool,
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// The running sum of a reduction: coefficients by monomial plus a heap of
/// candidate leading monomials (possibly stale).
struct Accumulator {
    f: Fp,
    coeffs: HashMap<Monomial, u32>,
    heap: BinaryHeap<Monomial>,
}

impl Accumulator {
    fn new(f: Fp, terms: &[Term]) -> Self {
        let mut coeffs = HashMap::with_capacity(terms.len() * 2);
        let mut heap = BinaryHeap::with_capacity(terms.len() * 2);
        for &(m, c) in terms {
            coeffs.insert(m, c);
            heap.push(m);
        }
        Accumulator { f, coeffs, heap }
    }

    /// Removes and returns the largest live term.
    fn pop(&mut self) -> Option<Term> {
        while let Some(m) = self.heap.pop() {
            while self.heap.peek() == Some(&m) {
                self.heap.pop();
            }
            if let Some(c) = self.coeffs.remove(&m) {
                if c != 0 {
                    return Some((m, c));
                }
            }
        }
        None
    }

    /// Adds `c * shift * tail`.
    fn add_shifted(&mut self, c: u32, shift: Monomial, tail: &[Term]) {
        let f = self.f;
        for &(m, a) in tail {
            let key = m.mul(shift);
            match self.coeffs.get_mut(&key) {
                Some(v) => *v = f.mul_add(*v, c, a),
                None => {
                    self.coeffs.insert(key, f.mul(c, a));
                    self.heap.push(key);
                }
            }
        }
    }
}

/// Full reduction of `terms` by monic reducers `basis` (leading term first).
fn reduce_terms(f: Fp, terms: &[Term], basis: &[&[Term]]) -> Vec<Term> {
    let mut acc = Accumulator::new(f, terms);
    let mut out = Vec::new();
    while let Some((m, c)) = acc.pop() {
        match basis.iter().find(|g| g[0].0.divides(m)) {
            Some(g) => acc.add_shifted(f.neg(c), m.div(g[0].0), &g[1..]),
            None => out.push((m, c)),
        }
    }
    out
}

fn monic_terms(f: Fp, mut t: Vec<Term>) -> Vec<Term> {
    if let Some(&(_, c)) = t.first() {
        if c != 1 {
            let inv = f.inv(c);
            t.iter_mut().for_each(|x| x.1 = f.mul(x.1, inv));
        }
    }
    t
}

/// `lcm/LM(a) * a - lcm/LM(b) * b` for monic `a`, `b`.
fn s_polynomial(f: Fp, a: &[Term], b: &[Term], lcm: Monomial) -> Vec<Term> {
    let ma = lcm.div(a[0].0);
    let mb = lcm.div(b[0].0);
    let left: Vec<Term> = a[1..].iter().map(|&(m, c)| (m.mul(ma), c)).collect();
    crate::mpoly::add_scaled_shifted(f, &left, f.neg(1), mb, &b[1..])
}

/// Gebauer–Möller update with the new generator `h` at index `k`.
fn update(pairs: &mut Vec<Pair>, lms: &[Monomial], live: &mut [bool], k: usize) {
    let h = lms[k];
    // New candidate pairs (i, k).
    let mut cand: Vec<(Pair, bool)> = (0..k)
        .filter(|&i| live[i])
        .map(|i| (Pair { i, j: k, lcm: lms[i].lcm(h) }, lms[i].is_coprime(h)))
        .collect();
    // Criterion M: drop (i,k) if some other candidate's lcm strictly divides it.
    let mut keep = vec![true; cand.len()];
    for a in 0..cand.len() {
        for b in 0..cand.len() {
            if a != b && keep[b] && cand[b].0.lcm.divides(cand[a].0.lcm) && cand[b].0.lcm != cand[a].0.lcm {
                keep[a] = false;
                break;
            }
        }
    }
    // Criterion F: among equal lcms keep one, preferring a coprime pair.
    let mut chosen: Vec<(Pair, bool)> = Vec::new();
    for (idx, c) in cand.drain(..).enumerate() {
        if !keep[idx] {
            continue;
        }
        match chosen.iter_mut().find(|x| x.0.lcm == c.0.lcm) {
            Some(x) => x.1 |= c.1,
            None => chosen.push(c),
        }
    }
    // Product criterion: a coprime pair reduces to zero.
    let new_pairs: Vec<Pair> = chosen.into_iter().filter(|c| !c.1).map(|c| c.0).collect();
    // Criterion B on old pairs.
    pairs.retain(|p| {
        let l = p.lcm;
        !(h.divides(l) && lms[p.i].lcm(h) != l && lms[p.j].lcm(h) != l)
    });
    pairs.extend(new_pairs);
    // Generators whose leading monomial is divisible by h are redundant.
    for i in 0..k {
        if live[i] && h.divides(lms[i]) {
            live[i] = false;
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner(gens: &[MPoly]) -> GroebnerBasis {
    assert!(!gens.is_empty(), "groebner needs at least one generator");
    let ring = gens[0].ring().clone();
    let f = ring.field();
    let mut polys: Vec<Vec<Term>> = Vec::new();
    let mut lms: Vec<Monomial> = Vec::new();
    let mut live: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut input: Vec<Vec<Term>> =
        gens.iter().filter(|g| !g.is_zero()).map(|g| g.terms().to_vec()).collect();
    input.sort_by(|a, b| a[0].0.cmp(&b[0].0));
    for g in input {
        let reducers: Vec<&[Term]> =
            (0..polys.len()).filter(|&i| live[i]).map(|i| polys[i].as_slice()).collect();
        let r = reduce_terms(f, &g, &reducers);
        if r.is_empty() {
            continue;
        }
        insert(f, r, &mut polys, &mut lms, &mut live, &mut pairs);
    }

    while !pairs.is_empty() {
        // Normal strategy: the smallest lcm, ties broken by index for determinism.
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a].lcm.cmp(&pairs[b].lcm).then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        if lms.iter().any(|m| m.degree() == 0) {
            break;
        }
        let s = s_polynomial(f, &polys[pair.i], &polys[pair.j], pair.lcm);
        let reducers: Vec<&[Term]> =
            (0..polys.len()).filter(|&i| live[i]).map(|i| polys[i].as_slice()).collect();
        let r = reduce_terms(f, &s, &reducers);
        if !r.is_empty() {
            insert(f, r, &mut polys, &mut lms, &mut live, &mut pairs);
        }
    }

    // Minimal basis, then interreduce every tail.
    let mut minimal: Vec<Vec<Term>> =
        (0..polys.len()).filter(|&i| live[i]).map(|i| polys[i].clone()).collect();
    if let Some(unit) = minimal.iter().find(|g| g[0].0 == Monomial::ONE) {
        let unit = vec![(unit[0].0, 1)];
        return GroebnerBasis { polys: vec![MPoly::from_terms(&ring, unit)], ring, reduced: true };
    }
    minimal.sort_by(|a, b| a[0].0.cmp(&b[0].0));
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&[Term]> =
            (0..minimal.len()).filter(|&i| i != k).map(|i| minimal[i].as_slice()).collect();
        let mut tail = reduce_terms(f, &minimal[k][1..], &others);
        let mut t = vec![minimal[k][0]];
        t.append(&mut tail);
        out.push(MPoly::from_terms(&ring, t));
    }
    GroebnerBasis { ring, polys: out, reduced: true }
}

fn insert(
    f: Fp,
    r: Vec<Term>,
    polys: &mut Vec<Vec<Term>>,
    lms: &mut Vec<Monomial>,
    live: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
) {
    let r = monic_terms(f, r);
    lms.push(r[0].0);
    polys.push(r);
    live.push(true);
    let k = polys.len() - 1;
    // Pairs already queued keep redundant generators; only reduction and new
    // pairs skip them.
    update(pairs, lms, live, k);
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant() && !self.polys[0].is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|g| g.lead().unwrap().0).collect()
    }

    /// True iff every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        let lms = self.leading_monomials();
        (0..self.ring.nvars()).all(|v| lms.iter().any(|m| m.pure_power_var() == Some(v)))
    }

    /// Normal form of `g`.
    pub fn reduce(&self, g: &MPoly) -> MPoly {
        let reducers: Vec<&[Term]> = self.polys.iter().map(|p| p.terms()).collect();
        MPoly::from_terms(&self.ring, reduce_terms(self.ring.field(), g.terms(), &reducers))
    }

    pub fn contains(&self, g: &MPoly) -> bool {
        self.reduce(g).is_zero()
    }

    /// Monomials outside the leading-term ideal, increasing; `None` if there
    /// are more than `limit` (in particular for positive-dimensional ideals).
    pub fn staircase(&self, limit: usize) -> Option<Vec<Monomial>> {
        if self.is_unit() {
            return Some(Vec::new());
        }
        if !self.is_zero_dimensional() {
            return None;
        }
        let lms = self.leading_monomials();
        let n = self.ring.nvars();
        let mut out = vec![Monomial::ONE];
        let mut seen: std::collections::HashSet<Monomial> = out.iter().copied().collect();
        let mut frontier = vec![Monomial::ONE];
        while let Some(m) = frontier.pop() {
            for v in 0..n {
                let u = m.mul(Monomial::var(v, 1));
                if seen.contains(&u) || lms.iter().any(|l| l.divides(u)) {
                    continue;
                }
                seen.insert(u);
                out.push(u);
                frontier.push(u);
                if out.len() > limit {
                    return None;
                }
            }
        }
        out.sort();
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str]) -> Arc<Ring> {
        Ring::new(Fp::default(), names.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn already_reduced_basis() {
        let r = ring(&["e1", "e2"]);
        let g = [MPoly::parse(&r, "e2 - 1").unwrap(), MPoly::parse(&r, "e1 - 2").unwrap()];
        let gb = groebner(&g);
        let mut expect = vec![g[1].clone(), g[0].clone()];
        expect.sort_by_key(|a| a.lead().unwrap().0);
        assert_eq!(gb.polys(), expect.as_slice());
        assert_eq!(gb.staircase(10).unwrap(), vec![Monomial::ONE]);
    }

    #[test]
    fn circle_meets_diagonal() {
        let r = ring(&["x", "y"]);
        let gb = groebner(&[
            MPoly::parse(&r, "x^2 + y^2 - 1").unwrap(),
            MPoly::parse(&r, "x - y").unwrap(),
        ]);
        let target = MPoly::parse(&r, "2*y^2 - 1").unwrap();
        assert!(gb.contains(&target));
        assert!(gb.polys().contains(&target.monic()));
        assert_eq!(gb.staircase(10).unwrap().len(), 2);
    }

    #[test]
    fn inconsistent_system_is_unit() {
        let r = ring(&["x"]);
        let gb = groebner(&[MPoly::parse(&r, "x").unwrap(), MPoly::parse(&r, "x - 1").unwrap()]);
        assert!(gb.is_unit());
        assert_eq!(gb.staircase(10).unwrap(), Vec::<Monomial>::new());
    }

    #[test]
    fn positive_dimensional_detected() {
        let r = ring(&["x", "y"]);
        let gb = groebner(&[MPoly::parse(&r, "x*y - 1").unwrap()]);
        assert!(!gb.is_zero_dimensional());
        assert!(gb.staircase(100).is_none());
    }

    #[test]
    fn cyclic_three_has_expected_degree() {
        let r = ring(&["a", "b", "c"]);
        let gb = groebner(&[
            MPoly::parse(&r, "a + b + c").unwrap(),
            MPoly::parse(&r, "a*b + b*c + c*a").unwrap(),
            MPoly::parse(&r, "a*b*c - 1").unwrap(),
        ]);
        // The quotient has dimension 3! = 6.
        assert_eq!(gb.staircase(100).unwrap().len(), 6);
    }
}
