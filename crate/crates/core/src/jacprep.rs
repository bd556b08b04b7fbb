//! Per-partition compressed systems.
//!
//! For λ ⊢ n, `f̄^{[λ]}` rewrites `T_λ(f)` in elementary symmetric
//! coordinates. The Jacobian of `(f, φ)` specialized by `T_λ` has equal
//! columns within each group of x-indices sharing a z-variable; keeping the
//! first column of each group gives `G^{[λ]}`, whose rows are S_λ-equivariant.
//! Symmetrizing every row gives invariant rows `H^{[λ]}`, rewritten as `H̄^{[λ]}`.

use crate::error::{Error, Result};
use crate::mpoly::{jacobian, MPoly, PolyMatrix};
use crate::partitions::Partition;
use crate::symmetrize::{symmetrize, EquivariantRow};
use crate::symring::{symmetric_coordinates, t_lambda, BlockRing};
use crate::field::Fp;

#[derive(Clone, Debug)]
pub struct PreparedSystem {
    pub partition: Partition,
    pub block: BlockRing,
    /// `f̄^{[λ]}`, one entry per input equation.
    pub fbar: Vec<MPoly>,
    /// `H̄^{[λ]}`, `(s+1) × ℓ`, present only when prepared with `φ`.
    pub hbar: Option<PolyMatrix>,
}

fn check_arity(f: &[MPoly], lambda: &Partition) -> Result<Fp> {
    let first = f.first().ok_or_else(|| Error::InvalidInstance("no equations".into()))?;
    let n = first.ring().nvars();
    if lambda.n() != n {
        return Err(Error::Dimension(format!("partition of {} for {} variables", lambda.n(), n)));
    }
    Ok(first.field())
}

pub fn prepare_f(f: &[MPoly], lambda: &Partition) -> Result<PreparedSystem> {
    let field = check_arity(f, lambda)?;
    let block = BlockRing::new(field, lambda);
    let fbar = f
        .iter()
        .map(|fi| symmetric_coordinates(&block, &t_lambda(&block, fi)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(PreparedSystem { partition: lambda.clone(), block, fbar, hbar: None })
}

/// `G^{[λ]}`: the specialized Jacobian restricted to representative columns.
/// Fails if a dropped column differs from its representative.
pub fn compressed_jacobian(block: &BlockRing, polys: &[MPoly]) -> Result<PolyMatrix> {
    let lambda = &block.partition;
    let jac = jacobian(polys);
    let reps = lambda.representative_x();
    let x_to_z = lambda.x_to_z();
    let rows = polys.len();
    let mut entries = Vec::with_capacity(rows * reps.len());
    for r in 0..rows {
        let specialized =
            (0..jac.cols()).map(|c| t_lambda(block, jac.get(r, c))).collect::<Result<Vec<_>>>()?;
        for (x, z) in x_to_z.iter().enumerate() {
            if specialized[x] != specialized[reps[*z]] {
                return Err(Error::NotInvariant(format!(
                    "columns {} and {} of the specialized Jacobian differ",
                    reps[*z] + 1,
                    x + 1
                )));
            }
        }
        entries.extend(reps.iter().map(|&x| specialized[x].clone()));
    }
    Ok(PolyMatrix::new(rows, reps.len(), entries))
}

pub fn prepare_f_h(f: &[MPoly], phi: &MPoly, lambda: &Partition) -> Result<PreparedSystem> {
    let mut prepared = prepare_f(f, lambda)?;
    let block = &prepared.block;
    let ell = lambda.length();
    if ell < f.len() + 1 {
        return Err(Error::InvalidPartition(format!(
            "length {ell} of {lambda} is below s + 1 = {}",
            f.len() + 1
        )));
    }
    let mut polys = f.to_vec();
    polys.push(phi.clone());
    let g = compressed_jacobian(block, &polys)?;
    let mut entries = Vec::with_capacity(g.rows() * ell);
    for r in 0..g.rows() {
        let row = EquivariantRow::new(block, g.row(r).to_vec())?;
        for p in symmetrize(&row)? {
            entries.push(symmetric_coordinates(block, &p)?);
        }
    }
    prepared.hbar = Some(PolyMatrix::new(g.rows(), ell, entries));
    Ok(prepared)
}
