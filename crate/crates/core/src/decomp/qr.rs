//! Norm-pivoted QR (PLU) factorization and QR rounds on Hessenberg matrices.

use super::{multiplier, normalizing_shift};
use crate::error::{PadicError, Result};
use crate::matrix::PadicMatrix;
use crate::padic::PadicScalar;

#[derive(Clone, Debug)]
pub struct QRFactorization {
    pub q: PadicMatrix,
    pub q_inv: PadicMatrix,
    pub r: PadicMatrix,
    pub strict: bool,
    /// Columns holding the pivots of `r`, one per nonzero row.
    pub pivot_columns: Vec<usize>,
    /// `r` was computed for `p^-scale M` and multiplied back by `p^scale`.
    pub scale: i64,
}

impl QRFactorization {
    pub fn reconstruct(&self) -> Result<PadicMatrix> {
        self.q.mul(&self.r)
    }
}

/// `M = Q R` with `Q` in `GL_n(Z_p)`: at each column the remaining row of
/// largest norm (smallest index among ties) becomes the pivot. Entries whose
/// valuation reaches the flat precision count as zero. In strict mode columns
/// without a pivot are skipped, so `R` is in echelon form.
pub fn qr_factor(m: &PadicMatrix, strict: bool) -> Result<QRFactorization> {
    let scale = normalizing_shift(m);
    let mut w = m.shift(-scale);
    let (n, cols) = (w.rows(), w.cols());
    let cap = w.working_precision();
    let ctx = w.ctx();
    let mut q = PadicMatrix::identity(ctx, n);
    let mut q_inv = PadicMatrix::identity(ctx, n);
    let mut pivot_columns = Vec::new();
    let mut r = 0;
    for j in 0..cols {
        if r == n {
            break;
        }
        let mut best = r;
        for i in r + 1..n {
            if w[(i, j)].norm_cmp(&w[(best, j)]).is_gt() {
                best = i;
            }
        }
        let pivot_is_zero = w[(best, j)].val_lower_bound() >= cap;
        if pivot_is_zero {
            if !strict {
                r += 1;
            }
            continue;
        }
        if best != r {
            w.swap_rows(best, r);
            q_inv.swap_rows(best, r);
            q.swap_cols(best, r);
        }
        let piv = w[(r, j)].clone();
        for i in r + 1..n {
            if w[(i, j)].is_zero_ball() {
                continue;
            }
            let c = multiplier(&w[(i, j)], &piv, cap);
            let neg = -&c;
            w.add_row_multiple(i, r, &neg, j..cols);
            q_inv.add_row_multiple(i, r, &neg, 0..n);
            q.add_col_multiple(r, i, &c, 0..n);
        }
        pivot_columns.push(j);
        r += 1;
    }
    Ok(QRFactorization {
        q,
        q_inv,
        r: w.shift(scale),
        strict,
        pivot_columns,
        scale,
    })
}

/// Data recorded during one QR round.
#[derive(Clone, Debug)]
pub struct RoundInfo {
    /// Diagonal of `R` in `H - mu I = Q R`, over the active window.
    pub r_diag: Vec<PadicScalar>,
}

/// One shifted QR round on the leading `w x w` block of a Hessenberg matrix
/// whose trailing part is already block upper triangular. Row operations act
/// on the full rows, column operations stay inside the window. `left`
/// accumulates `Q^-1 X`, `right` accumulates `X Q`.
pub(crate) fn qr_round_window(
    t: &mut PadicMatrix,
    w: usize,
    mu: &PadicScalar,
    cap: i64,
    mut left: Option<&mut PadicMatrix>,
    mut right: Option<&mut PadicMatrix>,
) -> RoundInfo {
    let n = t.cols();
    let mu = mu.lift_to(cap);
    for i in 0..w {
        t[(i, i)] = &t[(i, i)] - &mu;
    }
    let mut ops: Vec<(bool, Option<PadicScalar>)> = Vec::with_capacity(w.saturating_sub(1));
    for k in 0..w.saturating_sub(1) {
        let (d, s) = (&t[(k, k)], &t[(k + 1, k)]);
        let swap = if d.is_zero_ball() {
            !s.is_zero_ball()
        } else {
            s.norm_cmp(d).is_gt()
        };
        if swap {
            t.swap_rows_in(k, k + 1, k..n);
            if let Some(l) = left.as_deref_mut() {
                l.swap_rows(k, k + 1);
            }
        }
        let c = if t[(k + 1, k)].is_zero_ball() || t[(k, k)].is_zero_ball() {
            None
        } else {
            let c = multiplier(&t[(k + 1, k)], &t[(k, k)], cap);
            let neg = -&c;
            t.add_row_multiple(k + 1, k, &neg, k..n);
            if let Some(l) = left.as_deref_mut() {
                let cols = l.cols();
                l.add_row_multiple(k + 1, k, &neg, 0..cols);
            }
            Some(c)
        };
        ops.push((swap, c));
    }
    let r_diag = (0..w).map(|i| t[(i, i)].clone()).collect();
    for (k, (swap, c)) in ops.into_iter().enumerate() {
        if swap {
            t.swap_cols_in(k, k + 1, 0..k + 2);
            if let Some(r) = right.as_deref_mut() {
                let rows = r.rows();
                r.swap_cols_in(k, k + 1, 0..rows);
            }
        }
        if let Some(c) = c {
            t.add_col_multiple(k, k + 1, &c, 0..k + 2);
            if let Some(r) = right.as_deref_mut() {
                let rows = r.rows();
                r.add_col_multiple(k, k + 1, &c, 0..rows);
            }
        }
    }
    for i in 0..w {
        t[(i, i)] = &t[(i, i)] + &mu;
    }
    RoundInfo { r_diag }
}

fn check_round_input(h: &PadicMatrix, v: &PadicMatrix) -> Result<()> {
    if !h.is_square() || v.rows() != h.rows() {
        return Err(PadicError::ShapeMismatch(format!(
            "QR round on {}x{} with accumulator {}x{}",
            h.rows(),
            h.cols(),
            v.rows(),
            v.cols()
        )));
    }
    if !h.is_upper_hessenberg() {
        return Err(PadicError::InvalidArgument("QR round needs a Hessenberg matrix".into()));
    }
    Ok(())
}

/// `H - mu I = Q R`, returns `(R Q + mu I, Q^-1 V)`.
pub fn qr_round_hessenberg(
    h: &PadicMatrix,
    mu: &PadicScalar,
    v: &PadicMatrix,
) -> Result<(PadicMatrix, PadicMatrix)> {
    let (h, v, _) = qr_round_hessenberg_traced(h, mu, v)?;
    Ok((h, v))
}

pub fn qr_round_hessenberg_traced(
    h: &PadicMatrix,
    mu: &PadicScalar,
    v: &PadicMatrix,
) -> Result<(PadicMatrix, PadicMatrix, RoundInfo)> {
    check_round_input(h, v)?;
    let mut t = h.clone();
    let mut v = v.clone();
    let cap = h.working_precision();
    let info = qr_round_window(&mut t, h.rows(), mu, cap, Some(&mut v), None);
    Ok((t, v, info))
}
