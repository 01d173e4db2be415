//! Exact integer linear algebra and its Λ-linear counterpart.
//!
//! Everything reduces to dense [`IntMatrix`] computations over [`BigInt`]:
//! Smith normal form, echelon solving, lattices and their subquotients.
//! Λ-linear algebra goes through the regular representation.

mod lambda;
mod lattice;
mod matrix;
mod presented;
mod smith;

use num_bigint::BigInt;
use thiserror::Error;

pub use lambda::{generates_ideal, solve_lambda, vector_coords, vector_from_coords, LambdaMatrix};
pub use lattice::{AbelianGroup, ColumnEchelon, Lattice, Subquotient};
pub use matrix::IntMatrix;
pub use presented::{coinvariants, free_approximation, ActionModule, FreeApproximation, PresentedComplex, PresentedModule};
pub use smith::{smith_normal_form, Smith};

pub(crate) use lattice::unit;
pub(crate) use presented::lambda_span;

use crate::groupring::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("composite of differentials is nonzero")]
    NonzeroComposite,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `ker(d_out) / im(d_in)` for `d_in: ℤ^a → ℤ^n`, `d_out: ℤ^n → ℤ^b`.
pub fn homology_at(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<AbelianGroup, LinalgError> {
    Ok(homology_subquotient(d_in, d_out)?.group().clone())
}

/// As [`homology_at`], keeping the adapted basis for class computations.
pub fn homology_subquotient(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<Subquotient, LinalgError> {
    if d_in.rows() != d_out.cols() {
        return Err(LinalgError::Shape(format!("d_in has {} rows but d_out has {} columns", d_in.rows(), d_out.cols())));
    }
    if !d_out.try_mul(d_in)?.is_zero() {
        return Err(LinalgError::NonzeroComposite);
    }
    let n = d_out.cols();
    let z = Lattice::from_vectors(n, ColumnEchelon::new(d_out).kernel_basis().iter().cloned());
    let b = Lattice::column_span(d_in);
    Subquotient::new(&z, &b)
}

/// Some integer `x` with `a x = b`.
pub fn solve_int(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::Shape(format!("matrix has {} rows, vector has {}", a.rows(), b.len())));
    }
    Ok(ColumnEchelon::new(a).solve(b))
}
