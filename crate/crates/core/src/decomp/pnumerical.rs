//! Rank, kernel and preimage at a working precision `O(p^N)`.

use super::smith::{smith_svd, SmithDecomposition};
use crate::error::{PadicError, Result};
use crate::matrix::PadicMatrix;

fn require_precision(m: &PadicMatrix, n: i64) -> Result<()> {
    let flat = m.flat_precision();
    if flat < n {
        return Err(PadicError::InsufficientPrecision(format!(
            "matrix known to O(p^{flat}), asked for O(p^{n})"
        )));
    }
    Ok(())
}

/// Number of singular values of norm strictly bigger than `p^-n`.
pub fn pnumerical_rank(m: &PadicMatrix, n: i64) -> Result<usize> {
    require_precision(m, n)?;
    Ok(smith_svd(m)?.rank_at(n))
}

/// Orthonormal row basis of `{x : x M = O(p^n)}`.
pub fn pnumerical_left_kernel(m: &PadicMatrix, n: i64) -> Result<PadicMatrix> {
    require_precision(m, n)?;
    let svd = smith_svd(m)?;
    Ok(left_kernel_from_svd(&svd, n))
}

pub(crate) fn left_kernel_from_svd(svd: &SmithDecomposition, n: i64) -> PadicMatrix {
    let r = svd.rank_at(n);
    let rows = svd.u_inv.rows();
    svd.u_inv.submatrix(r..rows, 0..rows)
}

/// SVD of a row basis, checking that it is orthonormally generated (all
/// singular values are units).
fn orthonormal_svd(basis: &PadicMatrix) -> Result<SmithDecomposition> {
    if basis.rows() > basis.cols() {
        return Err(PadicError::NotOrthonormal);
    }
    let svd = smith_svd(basis)?;
    if svd.singular_values.iter().any(|s| !s.is_p_unit()) {
        return Err(PadicError::NotOrthonormal);
    }
    Ok(svd)
}

/// Columns spanning the annihilator of the row span of `basis`.
fn annihilator(basis: &PadicMatrix) -> Result<PadicMatrix> {
    let svd = orthonormal_svd(basis)?;
    let (b, n) = (basis.rows(), basis.cols());
    Ok(svd.v_inv.submatrix(0..n, b..n))
}

/// Orthonormal row basis of the largest free submodule of
/// `{x : x M in span(basis) + O(p^n)}`.
pub fn pnumerical_preimage(m: &PadicMatrix, basis: &PadicMatrix, n: i64) -> Result<PadicMatrix> {
    if basis.cols() != m.cols() {
        return Err(PadicError::ShapeMismatch(format!(
            "basis of width {} for a matrix with {} columns",
            basis.cols(),
            m.cols()
        )));
    }
    let a = annihilator(basis)?;
    pnumerical_left_kernel(&m.mul(&a)?, n)
}

/// Every row of `vectors` lies in the row span of the orthonormal `basis`
/// modulo `p^n`.
pub fn row_span_contains(basis: &PadicMatrix, vectors: &PadicMatrix, n: i64) -> Result<bool> {
    if vectors.rows() == 0 {
        return Ok(true);
    }
    let a = annihilator(basis)?;
    let prod = vectors.mul(&a)?;
    let zero = PadicMatrix::zeros(prod.ctx().with_prec(n), prod.rows(), prod.cols());
    prod.eq_mod(&zero, n)
}

/// Two orthonormal row bases span the same module modulo `p^n`.
pub fn same_row_span(a: &PadicMatrix, b: &PadicMatrix, n: i64) -> Result<bool> {
    Ok(a.rows() == b.rows() && row_span_contains(a, b, n)? && row_span_contains(b, a, n)?)
}
