//! Thomas algorithm for tridiagonal systems.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Solves `A x = rhs` in place, with `A` given by its sub-diagonal `lower`
/// (`lower[0]` unused), main diagonal `diag` and super-diagonal `upper`
/// (`upper[n-1]` unused).
///
/// No pivoting: intended for diagonally dominant matrices such as implicit
/// diffusion operators. `scratch` must have the same length as `rhs`.
pub fn solve_in_place<T: Scalar>(
    lower: &[T],
    diag: &[T],
    upper: &[T],
    rhs: &mut [T],
    scratch: &mut [T],
) -> Result<()> {
    let n = rhs.len();
    assert!(
        lower.len() == n && diag.len() == n && upper.len() == n && scratch.len() == n,
        "tridiagonal bands must match the system size"
    );
    if n == 0 {
        return Ok(());
    }
    let mut pivot = diag[0];
    if pivot == T::zero() {
        return Err(Error::SingularSystem { row: 0 });
    }
    scratch[0] = upper[0] / pivot;
    rhs[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - lower[i] * scratch[i - 1];
        if pivot == T::zero() || !pivot.is_finite() {
            return Err(Error::SingularSystem { row: i });
        }
        scratch[i] = upper[i] / pivot;
        rhs[i] = (rhs[i] - lower[i] * rhs[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        rhs[i] = rhs[i] - scratch[i] * rhs[i + 1];
    }
    Ok(())
}
