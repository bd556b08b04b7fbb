//! JSON problem and output files.
//!
//! A polynomial is a list of terms `[coeff, [e_1, …, e_n]]` with
//! coefficients in `[0, p-1]`. Univariate polynomials are coefficient lists,
//! lowest degree first.

use crate::driver::{OrbitSolution, ProblemInstance};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::mpoly::{MPoly, Monomial, Ring, MAX_DEGREE, MAX_VARS};
use crate::orbit::SymmetricRepresentation;
use crate::partitions::Partition;
use crate::unipoly::UniPoly;
use crate::zdsolve::ZeroDimParam;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub type PolyTerms = Vec<(u32, Vec<u32>)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub n: usize,
    pub s: usize,
    pub prime: u32,
    pub f: Vec<PolyTerms>,
    pub phi: PolyTerms,
}

fn poly_from_terms(ring: &Arc<Ring>, terms: &PolyTerms, what: &str) -> Result<MPoly> {
    let p = ring.field().p();
    let n = ring.nvars();
    let mut out = Vec::with_capacity(terms.len());
    for (c, e) in terms {
        if *c >= p {
            return Err(Error::InvalidInstance(format!("{what}: coefficient {c} outside [0, {}]", p - 1)));
        }
        if e.len() != n {
            return Err(Error::InvalidInstance(format!("{what}: exponent vector of length {} for n = {n}", e.len())));
        }
        if e.iter().sum::<u32>() > MAX_DEGREE {
            return Err(Error::InvalidInstance(format!("{what}: monomial degree above {MAX_DEGREE}")));
        }
        out.push((Monomial::from_exponents(e), *c));
    }
    Ok(MPoly::from_terms(ring, out))
}

fn poly_to_terms(g: &MPoly) -> PolyTerms {
    let n = g.ring().nvars();
    g.terms().iter().map(|&(m, c)| (c, m.exponents(n))).collect()
}

impl ProblemFile {
    pub fn to_instance(&self) -> Result<ProblemInstance> {
        let field = Fp::new(self.prime)?;
        if self.f.len() != self.s {
            return Err(Error::InvalidInstance(format!("s = {} but {} equations given", self.s, self.f.len())));
        }
        if !(2..=MAX_VARS).contains(&self.n) {
            return Err(Error::InvalidInstance(format!("n = {} outside 2..={MAX_VARS}", self.n)));
        }
        let ring = Ring::numbered(field, "x", self.n);
        let f = self
            .f
            .iter()
            .enumerate()
            .map(|(i, t)| poly_from_terms(&ring, t, &format!("f{}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        let phi = poly_from_terms(&ring, &self.phi, "phi")?;
        ProblemInstance::new(f, phi)
    }

    pub fn from_instance(inst: &ProblemInstance) -> Self {
        ProblemFile {
            n: inst.n(),
            s: inst.s(),
            prime: inst.field().p(),
            f: inst.f().iter().map(poly_to_terms).collect(),
            phi: poly_to_terms(inst.phi()),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.to_string(), e.line(), e.column())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamJson {
    pub q: Vec<u32>,
    pub v: Vec<Vec<u32>>,
    pub mu: Vec<u32>,
    pub degree: usize,
}

impl ParamJson {
    pub fn from_param(r: &ZeroDimParam) -> Self {
        ParamJson {
            q: r.q.coeffs().to_vec(),
            v: r.v.iter().map(|v| v.coeffs().to_vec()).collect(),
            mu: r.mu.clone(),
            degree: r.degree(),
        }
    }

    /// Rebuilds the parametrization and checks its invariants.
    pub fn to_param(&self, f: Fp) -> Result<ZeroDimParam> {
        let in_field = |c: &u32| *c < f.p();
        if !(self.q.iter().all(in_field) && self.mu.iter().all(in_field) && self.v.iter().flatten().all(in_field)) {
            return Err(Error::InvalidInstance("coefficient outside the field".into()));
        }
        let r = ZeroDimParam {
            q: UniPoly::from_coeffs(self.q.clone()),
            v: self.v.iter().map(|c| UniPoly::from_coeffs(c.clone())).collect(),
            mu: self.mu.clone(),
        };
        if r.degree() != self.degree {
            return Err(Error::InvalidInstance(format!("degree field {} but deg q = {}", self.degree, r.degree())));
        }
        r.check_invariants(f)?;
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub partition: Partition,
    #[serde(flatten)]
    pub param: ParamJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrunedJson {
    pub partition: Partition,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaJson {
    pub seed: u64,
    pub prime: u32,
    #[serde(default)]
    pub pruned: Vec<PrunedJson>,
}

/// Solver output. Orbit runs fill `entries`; naive runs fill `naive`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputFile {
    #[serde(default)]
    pub entries: Vec<EntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub naive: Option<ParamJson>,
    pub meta: MetaJson,
}

impl OutputFile {
    pub fn from_solution(sol: &OrbitSolution, seed: u64, prime: u32) -> Self {
        let entries = sol
            .representation
            .entries
            .iter()
            .map(|(l, r)| EntryJson { partition: l.clone(), param: ParamJson::from_param(r) })
            .collect();
        let pruned = sol.pruned().map(|(l, why)| PrunedJson { partition: l.clone(), reason: why.as_str().into() }).collect();
        OutputFile { entries, naive: None, meta: MetaJson { seed, prime, pruned } }
    }

    pub fn from_naive(r: &ZeroDimParam, seed: u64, prime: u32) -> Self {
        OutputFile { entries: Vec::new(), naive: Some(ParamJson::from_param(r)), meta: MetaJson { seed, prime, pruned: Vec::new() } }
    }

    pub fn field(&self) -> Result<Fp> {
        Fp::new(self.meta.prime)
    }

    pub fn representation(&self) -> Result<SymmetricRepresentation> {
        let f = self.field()?;
        let mut rep = SymmetricRepresentation::default();
        for e in &self.entries {
            if rep.get(&e.partition).is_some() {
                return Err(Error::InvalidInstance(format!("partition {} listed twice", e.partition)));
            }
            let r = e.param.to_param(f)?;
            if r.nvars() != e.partition.length() {
                return Err(Error::Dimension(format!("{} coordinates for λ = {}", r.nvars(), e.partition)));
            }
            rep.entries.push((e.partition.clone(), r));
        }
        Ok(rep)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::{critical_points_per_orbit, SolveOptions};

    const SPHERE: &str = r#"{"n": 3, "s": 1, "prime": 65521,
        "f": [[[1, [2, 0, 0]], [1, [0, 2, 0]], [1, [0, 0, 2]], [65515, [0, 0, 0]]]],
        "phi": [[1, [1, 1, 1]], [65518, [1, 0, 0]], [65518, [0, 1, 0]], [65518, [0, 0, 1]]]}"#;

    #[test]
    fn problem_round_trip() {
        let pf = ProblemFile::from_json(SPHERE).unwrap();
        let inst = pf.to_instance().unwrap();
        let back = ProblemFile::from_instance(&inst);
        assert_eq!(back.to_instance().unwrap().f(), inst.f());
        let text = serde_json::to_string(&back).unwrap();
        assert_eq!(ProblemFile::from_json(&text).unwrap(), back);
    }

    #[test]
    fn output_round_trip() {
        let inst = ProblemFile::from_json(SPHERE).unwrap().to_instance().unwrap();
        let sol = critical_points_per_orbit(&inst, 5, SolveOptions::default()).unwrap();
        let out = OutputFile::from_solution(&sol, 5, 65521);
        let text = serde_json::to_string(&out).unwrap();
        let back = OutputFile::from_json(&text).unwrap();
        assert_eq!(back, out);
        assert_eq!(back.representation().unwrap(), sol.representation);
        assert!(text.contains(r#""partition":[[1,1],[2,1]]"#));
    }

    #[test]
    fn errors_carry_positions() {
        let err = ProblemFile::from_json("{\"n\": 3,\n \"s\": }").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        let bad = SPHERE.replace("65515", "70000");
        assert!(ProblemFile::from_json(&bad).unwrap().to_instance().is_err());
    }
}
