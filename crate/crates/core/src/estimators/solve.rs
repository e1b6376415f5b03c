use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest Gram-matrix condition number accepted by the weight solvers.
pub const MAX_CONDITION: f64 = 1e12;

/// Solves `G x = rhs` for Hermitian positive-definite `G`, refusing
/// ill-conditioned systems.
pub(crate) fn solve_gram(gram: DMatrix<Complex64>, rhs: &DVector<Complex64>) -> Result<DVector<Complex64>> {
    let eig = gram.clone().symmetric_eigenvalues();
    let max = eig.max();
    let min = eig.min();
    if !(max > 0.0) || !(min > 0.0) || max / min > MAX_CONDITION {
        let condition = if min > 0.0 { max / min } else { f64::INFINITY };
        return Err(Error::Degenerate { condition });
    }
    let chol = gram.cholesky().ok_or(Error::Degenerate { condition: max / min })?;
    Ok(chol.solve(rhs))
}
