//! Integer partitions in block normal form `(n_1^{ℓ_1} … n_r^{ℓ_r})`.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Blocks `(part, multiplicity)` with strictly increasing parts and positive
/// multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u32, u32)>", into = "Vec<(u32, u32)>")]
pub struct Partition {
    blocks: Vec<(u32, u32)>,
}

impl TryFrom<Vec<(u32, u32)>> for Partition {
    type Error = Error;
    fn try_from(blocks: Vec<(u32, u32)>) -> Result<Self> {
        Partition::new(blocks)
    }
}

impl From<Partition> for Vec<(u32, u32)> {
    fn from(p: Partition) -> Self {
        p.blocks
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LengthFilter {
    Exact(usize),
    AtLeast(usize),
}

impl Partition {
    pub fn new(blocks: Vec<(u32, u32)>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        for (k, &(part, mult)) in blocks.iter().enumerate() {
            if part == 0 || mult == 0 {
                return Err(Error::InvalidPartition(format!("block {part}^{mult}")));
            }
            if k > 0 && blocks[k - 1].0 >= part {
                return Err(Error::InvalidPartition("parts must strictly increase".into()));
            }
        }
        Ok(Partition { blocks })
    }

    /// Normal form of an unordered list of positive parts.
    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        let mut sorted = parts.to_vec();
        sorted.sort_unstable();
        let mut blocks: Vec<(u32, u32)> = Vec::new();
        for p in sorted {
            match blocks.last_mut() {
                Some(b) if b.0 == p => b.1 += 1,
                _ => blocks.push((p, 1)),
            }
        }
        Self::new(blocks)
    }

    /// The type of a point: multiplicities of its distinct coordinates.
    pub fn type_of_point(xi: &[u32]) -> Self {
        let mut v = xi.to_vec();
        v.sort_unstable();
        let mut counts = Vec::new();
        let mut k = 0;
        while k < v.len() {
            let j = v[k..].iter().take_while(|&&x| x == v[k]).count();
            counts.push(j as u32);
            k += j;
        }
        Self::from_parts(&counts).expect("nonempty point")
    }

    pub fn blocks(&self) -> &[(u32, u32)] {
        &self.blocks
    }

    /// Number of distinct part sizes r.
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|&(p, m)| (p * m) as usize).sum()
    }

    /// ℓ = Σ ℓ_i.
    pub fn length(&self) -> usize {
        self.blocks.iter().map(|&(_, m)| m as usize).sum()
    }

    /// τ_0 = 0, τ_k = ℓ_1 + … + ℓ_k; length r + 1.
    pub fn offsets(&self) -> Vec<usize> {
        let mut t = vec![0];
        for &(_, m) in &self.blocks {
            t.push(t.last().unwrap() + m as usize);
        }
        t
    }

    /// Flat parts in increasing order.
    pub fn parts(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|&(p, m)| std::iter::repeat_n(p, m as usize)).collect()
    }

    /// For each x-index, the flat z-index it maps to: the first n_1 x's go to
    /// z_{1,1}, the next n_1 to z_{1,2}, and so on through the blocks.
    pub fn x_to_z(&self) -> Vec<usize> {
        self.parts()
            .iter()
            .enumerate()
            .flat_map(|(z, &p)| std::iter::repeat_n(z, p as usize))
            .collect()
    }

    /// Smallest x-index mapping to each z-variable.
    pub fn representative_x(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length());
        let mut x = 0;
        for p in self.parts() {
            out.push(x);
            x += p as usize;
        }
        out
    }

    /// Block index of each flat z-variable.
    pub fn z_block(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .enumerate()
            .flat_map(|(k, &(_, m))| std::iter::repeat_n(k, m as usize))
            .collect()
    }

    /// γ_λ = n! / ∏ n_i!^{ℓ_i}.
    pub fn orbit_size(&self) -> BigUint {
        let mut den = BigUint::one();
        for &(p, m) in &self.blocks {
            for _ in 0..m {
                den *= factorial(p as usize);
            }
        }
        factorial(self.n()) / den
    }

    /// w_λ = ∏ ℓ_i!.
    pub fn block_weight(&self) -> BigUint {
        self.blocks.iter().map(|&(_, m)| factorial(m as usize)).product()
    }

    pub fn conjugate(&self) -> Partition {
        let parts = self.parts();
        let max = *parts.last().unwrap();
        let conj: Vec<u32> =
            (1..=max).map(|k| parts.iter().filter(|&&p| p >= k).count() as u32).collect();
        Self::from_parts(&conj).unwrap()
    }

    /// True when `self` refines `other`: the parts of `self` can be grouped so
    /// the group sums are exactly the parts of `other`.
    pub fn refines(&self, other: &Partition) -> Result<bool> {
        if self.n() != other.n() {
            return Err(Error::InvalidPartition(format!(
                "comparing partitions of {} and {}",
                self.n(),
                other.n()
            )));
        }
        let mut items = self.parts();
        items.reverse();
        let mut bins: Vec<u32> = other.parts();
        Ok(cover(&items, &mut bins))
    }
}

fn cover(items: &[u32], bins: &mut [u32]) -> bool {
    let Some((&first, rest)) = items.split_first() else {
        return bins.iter().all(|&b| b == 0);
    };
    for k in 0..bins.len() {
        // Bins with equal remaining capacity are interchangeable.
        if bins[k] < first || bins[..k].contains(&bins[k]) {
            continue;
        }
        bins[k] -= first;
        let ok = cover(rest, bins);
        bins[k] += first;
        if ok {
            return true;
        }
    }
    false
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// All partitions of `n` passing `filter`, ordered lexicographically on the
/// increasing part list.
pub fn enumerate_partitions(n: usize, filter: LengthFilter) -> Vec<Partition> {
    fn rec(rem: usize, min: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for p in min..=rem {
            // The remainder must be expressible with parts >= p.
            if rem - p != 0 && rem - p < p {
                continue;
            }
            cur.push(p as u32);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    rec(n, 1, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|parts| match filter {
            LengthFilter::Exact(k) => parts.len() == k,
            LengthFilter::AtLeast(k) => parts.len() >= k,
        })
        .map(|parts| Partition::from_parts(&parts).unwrap())
        .collect()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.blocks.iter().map(|&(p, m)| format!("{p}^{m}")).collect();
        write!(f, "{}", s.join(" "))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split_whitespace()
            .map(|tok| {
                let (p, m) = tok.split_once('^').unwrap_or((tok, "1"));
                let p = p.parse().map_err(|_| Error::InvalidPartition(tok.into()))?;
                let m = m.parse().map_err(|_| Error::InvalidPartition(tok.into()))?;
                Ok((p, m))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(blocks)
    }
}
