//! Critical points of symmetric polynomial maps on symmetric varieties, one
//! S_n-orbit type at a time, over a prime field.
//!
//! The main entry point is [`critical_points_per_orbit`]: for every integer
//! partition λ of n it builds a small system in elementary symmetric
//! coordinates, solves it, and sorts the solutions by their exact orbit type.
//! The result is a [`SymmetricRepresentation`], a list of zero-dimensional
//! parametrizations indexed by partitions. [`naive_critical_points`] solves
//! the unreduced system for comparison, [`bounds_report`] evaluates the
//! degree bounds, and [`oracle`] enumerates small fields exhaustively.
//!
//! ```
//! use orbitcrit::{critical_points_per_orbit, Fp, MPoly, ProblemInstance, Ring, SolveOptions};
//!
//! let x = Ring::numbered(Fp::default(), "x", 3);
//! let f = MPoly::parse(&x, "x1^2 + x2^2 + x3^2 - 6").unwrap();
//! let phi = MPoly::parse(&x, "x1*x2*x3 - 3*x1 - 3*x2 - 3*x3").unwrap();
//! let inst = ProblemInstance::new(vec![f], phi).unwrap();
//! let sol = critical_points_per_orbit(&inst, 0, SolveOptions::default()).unwrap();
//! assert_eq!(sol.representation.orbit_count(), 6);
//! ```

pub mod bounds;
pub mod driver;
pub mod error;
pub mod field;
pub mod groebner;
pub mod io;
pub mod jacprep;
pub mod linalg;
pub mod mpoly;
pub mod oracle;
pub mod orbit;
pub mod partitions;
pub mod quotient;
pub mod symmetrize;
pub mod symring;
pub mod unipoly;
pub mod zdsolve;

pub use bounds::{bounds_report, BoundsReport, PruneReason};
pub use driver::{critical_points_per_orbit, naive_critical_points, OrbitSolution, ProblemInstance, SolveOptions};
pub use error::{Error, Result};
pub use field::Fp;
pub use mpoly::{MPoly, Monomial, PolyMatrix, Ring};
pub use orbit::{decompose, expand_orbit, verify_membership, SymmetricRepresentation};
pub use partitions::Partition;
pub use unipoly::UniPoly;
pub use zdsolve::ZeroDimParam;
