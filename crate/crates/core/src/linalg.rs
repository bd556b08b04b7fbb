//! Dense linear algebra over GF(p): echelon forms, rank, and Krylov
//! sequences that yield minimal polynomials together with coordinates in
//! the cyclic basis.

use crate::field::Fp;
use crate::unipoly::UniPoly;

/// `acc += c * v`, all entries reduced.
pub fn axpy(f: Fp, acc: &mut [u32], c: u32, v: &[u32]) {
    if c == 0 {
        return;
    }
    let p = f.p() as u64;
    for (a, &b) in acc.iter_mut().zip(v) {
        if b != 0 {
            *a = ((*a as u64 + c as u64 * b as u64) % p) as u32;
        }
    }
}

/// Square matrix stored by columns; `apply` is a matrix-vector product.
#[derive(Clone, Debug)]
pub struct ColMatrix {
    pub n: usize,
    pub cols: Vec<Vec<u32>>,
}

impl ColMatrix {
    pub fn zero(n: usize) -> Self {
        ColMatrix { n, cols: vec![vec![0; n]; n] }
    }

    pub fn apply(&self, f: Fp, v: &[u32]) -> Vec<u32> {
        let p = f.p() as u64;
        // Column products are < 2^62; fold every 4 columns to stay in u64.
        let mut acc = vec![0u64; self.n];
        let mut pending = 0;
        for (c, &x) in self.cols.iter().zip(v) {
            if x == 0 {
                continue;
            }
            for (a, &m) in acc.iter_mut().zip(c) {
                *a += x as u64 * m as u64;
            }
            pending += 1;
            if pending == 4 {
                acc.iter_mut().for_each(|a| *a %= p);
                pending = 0;
            }
        }
        acc.into_iter().map(|a| (a % p) as u32).collect()
    }

    /// `self + c * other`.
    pub fn add_scaled(&mut self, f: Fp, c: u32, other: &ColMatrix) {
        for (a, b) in self.cols.iter_mut().zip(&other.cols) {
            axpy(f, a, c, b);
        }
    }
}

/// Incremental row echelon basis of a subspace of GF(p)^n.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// Rows normalized to 1 at their pivot, with pivots distinct.
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` in place; returns the combination used, `v_in = v_out + Σ c_k row_k`.
    pub fn reduce(&self, f: Fp, v: &mut [u32]) -> Vec<u32> {
        let mut coeffs = vec![0; self.rows.len()];
        for (k, (row, &piv)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = v[piv];
            if c != 0 {
                axpy(f, v, f.neg(c), row);
                coeffs[k] = c;
            }
        }
        coeffs
    }

    /// Inserts `v` if independent; returns whether the rank grew.
    pub fn insert(&mut self, f: Fp, mut v: Vec<u32>) -> bool {
        self.reduce(f, &mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else { return false };
        let inv = f.inv(v[piv]);
        v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
        // Keep earlier rows reduced at the new pivot so `reduce` is one pass.
        for row in &mut self.rows {
            let c = row[piv];
            if c != 0 {
                axpy(f, row, f.neg(c), &v);
            }
        }
        self.rows.push(v);
        self.pivots.push(piv);
        true
    }
}

/// Rank of a row-major matrix.
pub fn rank(f: Fp, rows: &[Vec<u32>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(f, r.clone());
    }
    e.rank()
}

/// The Krylov sequence `v, Av, A²v, …` of a start vector, kept in echelon
/// form with every basis row tagged by the polynomial `g` with `row = g(A)v`.
#[derive(Clone, Debug)]
pub struct Krylov {
    /// Reduced rows; row `k` has its pivot normalized to 1.
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    /// `tags[k](A) v = rows[k]`.
    tags: Vec<UniPoly>,
    /// The minimal polynomial of `v` under `A`.
    minpoly: UniPoly,
}

impl Krylov {
    /// Runs until the first dependency. `apply` computes `A·x`.
    pub fn new(f: Fp, start: Vec<u32>, mut apply: impl FnMut(&[u32]) -> Vec<u32>) -> Self {
        let mut rows: Vec<Vec<u32>> = Vec::new();
        let mut pivots = Vec::new();
        let mut tags: Vec<UniPoly> = Vec::new();
        let mut cur = start;
        let mut power = UniPoly::one();
        loop {
            let next = apply(&cur);
            let mut v = cur;
            let mut tag = power.clone();
            for k in 0..rows.len() {
                let c = v[pivots[k]];
                if c != 0 {
                    axpy(f, &mut v, f.neg(c), &rows[k]);
                    tag = tag.sub(f, &tags[k].scale(f, c));
                }
            }
            match v.iter().position(|&x| x != 0) {
                None => {
                    return Krylov { rows, pivots, tags, minpoly: tag.monic(f) };
                }
                Some(piv) => {
                    let inv = f.inv(v[piv]);
                    v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                    rows.push(v);
                    pivots.push(piv);
                    tags.push(tag.scale(f, inv));
                }
            }
            cur = next;
            power = power.mul(f, &UniPoly::x());
        }
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    /// Writes `w` as `g(A)v`; `None` if `w` is outside the Krylov space.
    pub fn express(&self, f: Fp, w: &[u32]) -> Option<UniPoly> {
        let mut w = w.to_vec();
        let mut g = UniPoly::zero();
        for k in 0..self.rows.len() {
            let c = w[self.pivots[k]];
            if c != 0 {
                axpy(f, &mut w, f.neg(c), &self.rows[k]);
                g = g.add(f, &self.tags[k].scale(f, c));
            }
        }
        w.iter().all(|&x| x == 0).then_some(g)
    }
}
