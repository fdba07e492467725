//! QR, Smith and Hessenberg decompositions, and pnumerical rank, kernel and
//! preimage.

pub mod hessenberg;
pub mod pnumerical;
pub mod qr;
pub mod similarity;
pub mod smith;

pub use hessenberg::{charpoly, hessenberg, HessenbergForm};
pub use pnumerical::{
    pnumerical_left_kernel, pnumerical_preimage, pnumerical_rank, row_span_contains, same_row_span,
};
pub use qr::{qr_factor, qr_round_hessenberg, qr_round_hessenberg_traced, QRFactorization, RoundInfo};
pub use similarity::Similarity;
pub use smith::{smith_svd, SmithDecomposition};

use crate::error::{PadicError, Result};
use crate::matrix::PadicMatrix;
use crate::padic::PadicScalar;

/// Shift exponent that makes `m` integral with norm 1, or 0 when `m` has no
/// known nonzero entry.
pub(crate) fn normalizing_shift(m: &PadicMatrix) -> i64 {
    let (v, all_balls) = m.norm_exponent();
    if all_balls {
        0
    } else {
        v
    }
}

/// `a / b` re-expressed at precision `cap`, used as an exact elimination
/// multiplier.
pub(crate) fn multiplier(a: &PadicScalar, b: &PadicScalar, cap: i64) -> PadicScalar {
    a.div(b).expect("pivot is a known nonzero value").lift_to(cap)
}

/// Inverse of a matrix in `GL_n(Z_p)` by Gauss-Jordan elimination with unit
/// pivots, entries re-expressed at precision `cap`.
pub fn gl_inverse(u: &PadicMatrix, cap: i64) -> Result<PadicMatrix> {
    if !u.is_in_gl_zp() {
        return Err(PadicError::InvalidArgument("matrix is not in GL_n(Z_p)".into()));
    }
    let n = u.rows();
    let mut a = u.clone();
    let mut inv = PadicMatrix::identity(u.ctx(), n);
    for k in 0..n {
        let piv = (k..n)
            .find(|&i| a[(i, k)].is_p_unit())
            .expect("unit pivot exists for a matrix in GL_n(Z_p)");
        a.swap_rows(piv, k);
        inv.swap_rows(piv, k);
        let d = a[(k, k)].clone();
        let dinv = PadicScalar::exact_int(u.p(), 1).lift_to(cap).div(&d)?.lift_to(cap);
        for j in 0..n {
            a[(k, j)] = (&a[(k, j)] * &dinv).lift_to(cap);
            inv[(k, j)] = (&inv[(k, j)] * &dinv).lift_to(cap);
        }
        for i in 0..n {
            if i == k || a[(i, k)].is_zero_ball() {
                continue;
            }
            let c = -&a[(i, k)].lift_to(cap);
            a.add_row_multiple(i, k, &c, 0..n);
            inv.add_row_multiple(i, k, &c, 0..n);
        }
    }
    Ok(inv)
}
