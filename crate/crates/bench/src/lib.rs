//! Fixed inputs shared by the benchmarks.

use orbitcrit::{Fp, MPoly, ProblemInstance, Ring};

/// The sphere x1² + x2² + x3² = 6 with the cubic x1·x2·x3 − 3(x1 + x2 + x3).
pub fn sphere() -> ProblemInstance {
    let x = Ring::numbered(Fp::default(), "x", 3);
    let eq = MPoly::parse(&x, "x1^2 + x2^2 + x3^2 - 6").expect("valid polynomial");
    let phi = MPoly::parse(&x, "x1*x2*x3 - 3*x1 - 3*x2 - 3*x3").expect("valid polynomial");
    ProblemInstance::new(vec![eq], phi).expect("invariant instance")
}

/// A seeded random instance with d = n over GF(65521).
pub fn random(n: usize, s: usize, seed: u64) -> ProblemInstance {
    ProblemInstance::random(Fp::default(), n, s, n as u32, seed).expect("valid shape")
}
