//! Generalized zero eigenspace from a Smith decomposition.

use crate::decomp::pnumerical::left_kernel_from_svd;
use crate::decomp::{smith_svd, SmithDecomposition};
use crate::error::{PadicError, Result};
use crate::matrix::PadicMatrix;
use crate::padic::PadicScalar;

/// Orthonormal rows spanning `{x : x M^k = O(p^N)}` for large `k`.
#[derive(Clone, Debug)]
pub struct GzeBasis {
    pub rows: PadicMatrix,
    /// Number of Smith decompositions computed, including the one passed in.
    pub svd_count: usize,
    /// Precision the rows are claimed at. Equal to the input precision unless
    /// the basis came from [`gze_tracked`].
    pub precision: i64,
    /// Largest valuation of a nonzero singular value met while deflating.
    pub max_gap: i64,
}

impl GzeBasis {
    pub fn dim(&self) -> usize {
        self.rows.rows()
    }
}

/// `svd` must be a Smith decomposition of `m`. Every level of the recursion
/// works at the flat precision of `m`.
pub fn gze(m: &PadicMatrix, svd: &SmithDecomposition) -> Result<GzeBasis> {
    gze_impl(m, svd, false)
}

/// Like [`gze`], but each deflation lowers the working precision by the
/// valuation of the smallest nonzero singular value, since the kernel rows
/// are only determined to that precision.
pub fn gze_tracked(m: &PadicMatrix, svd: &SmithDecomposition) -> Result<GzeBasis> {
    gze_impl(m, svd, true)
}

fn gze_impl(m: &PadicMatrix, svd: &SmithDecomposition, track: bool) -> Result<GzeBasis> {
    if !m.is_square() {
        return Err(PadicError::ShapeMismatch("generalized eigenspace of a non-square matrix".into()));
    }
    if svd.u_inv.rows() != m.rows() || svd.v.cols() != m.cols() {
        return Err(PadicError::ShapeMismatch("decomposition does not match the matrix".into()));
    }
    let prec = m.working_precision();
    let mut st = State {
        count: 1,
        track,
        precision: prec,
        max_gap: 0,
    };
    let rows = gze_rec(m, svd, prec, &mut st)?;
    Ok(GzeBasis {
        rows,
        svd_count: st.count,
        precision: st.precision,
        max_gap: st.max_gap,
    })
}

struct State {
    count: usize,
    track: bool,
    precision: i64,
    max_gap: i64,
}

fn gze_rec(m: &PadicMatrix, svd: &SmithDecomposition, prec: i64, st: &mut State) -> Result<PadicMatrix> {
    let n = m.rows();
    let v = left_kernel_from_svd(svd, prec);
    let d = v.rows();
    if d == 0 || d == n {
        return Ok(v);
    }
    let (w, j) = reduce_to_identity(&v, prec)?;

    // M - M[:, J] W vanishes on the columns J; drop those rows and columns
    let mut mj = m.select_cols(&j).mul(&w)?;
    mj = m.sub(&mj)?;
    let keep: Vec<usize> = (0..n).filter(|i| !j.contains(i)).collect();
    let reduced = mj.select_rows(&keep).select_cols(&keep);
    st.count += 1;
    let gap = svd.singular_values[..n - d]
        .last()
        .and_then(PadicScalar::valuation)
        .unwrap_or(0)
        .max(0);
    st.max_gap = st.max_gap.max(gap);
    let inner_prec = if st.track { prec - gap } else { prec };
    st.precision = st.precision.min(inner_prec);
    let inner = gze_rec(&reduced, &smith_svd(&reduced)?, inner_prec, st)?;

    let ctx = m.ctx().with_prec(prec);
    let mut out = PadicMatrix::zeros(ctx, inner.rows() + d, n);
    for r in 0..inner.rows() {
        for (k, &c) in keep.iter().enumerate() {
            out[(r, c)] = inner[(r, k)].clone();
        }
    }
    out.set_block(inner.rows(), 0, &v);
    Ok(out)
}

/// Row reduction of an orthonormal basis to a matrix `W` with `W[:, J] = I`.
fn reduce_to_identity(v: &PadicMatrix, cap: i64) -> Result<(PadicMatrix, Vec<usize>)> {
    let (d, n) = (v.rows(), v.cols());
    let mut w = v.clone();
    let mut cols = Vec::with_capacity(d);
    for r in 0..d {
        let mut best: Option<usize> = None;
        for c in (0..n).filter(|c| !cols.contains(c)) {
            if best.is_none_or(|b| w[(r, c)].norm_cmp(&w[(r, b)]).is_gt()) {
                best = Some(c);
            }
        }
        let c = best.ok_or(PadicError::NotOrthonormal)?;
        if !w[(r, c)].is_p_unit() {
            return Err(PadicError::NotOrthonormal);
        }
        let inv = PadicScalar::exact_int(w.p(), 1).div(&w[(r, c)])?.lift_to(cap);
        let scaled: Vec<PadicScalar> = w.row(r).iter().map(|x| x * &inv).collect();
        for (k, x) in scaled.into_iter().enumerate() {
            w[(r, k)] = x;
        }
        for i in (0..d).filter(|&i| i != r) {
            if w[(i, c)].is_zero_ball() {
                continue;
            }
            let f = -&w[(i, c)].lift_to(cap);
            w.add_row_multiple(i, r, &f, 0..n);
        }
        cols.push(c);
    }
    Ok((w, cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{pnumerical_left_kernel, same_row_span};
    use crate::padic::PadicContext;

    fn ctx() -> PadicContext {
        PadicContext::new(7, 8).unwrap()
    }

    #[test]
    fn jordan_block_needs_two_steps() {
        let m = PadicMatrix::from_ints(ctx(), &[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 3]]);
        let g = gze(&m, &smith_svd(&m).unwrap()).unwrap();
        assert_eq!(g.dim(), 2);
        assert_eq!(g.svd_count, 3);
        let m2 = m.pow(2).unwrap();
        assert!(g.rows.mul(&m2).unwrap().eq_mod(&PadicMatrix::zeros(ctx(), 2, 3), 8).unwrap());
        let k = pnumerical_left_kernel(&m2, 8).unwrap();
        assert!(same_row_span(&g.rows, &k, 8).unwrap());
    }

    #[test]
    fn tracked_variant_reports_lost_precision() {
        let c = PadicContext::new(7, 4).unwrap();
        let m = PadicMatrix::from_ints(c, &[vec![49, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]);
        let svd = smith_svd(&m).unwrap();
        let plain = gze(&m, &svd).unwrap();
        assert_eq!((plain.dim(), plain.precision, plain.max_gap), (2, 4, 2));
        let tracked = gze_tracked(&m, &svd).unwrap();
        assert_eq!((tracked.dim(), tracked.precision), (3, 2));
    }

    #[test]
    fn invertible_matrix_has_no_zero_eigenspace() {
        let m = PadicMatrix::from_ints(ctx(), &[vec![1, 2], vec![3, 5]]);
        let g = gze(&m, &smith_svd(&m).unwrap()).unwrap();
        assert_eq!(g.dim(), 0);
        assert_eq!(g.svd_count, 1);
    }

    #[test]
    fn reduction_hits_identity_columns() {
        let v = PadicMatrix::from_ints(ctx(), &[vec![7, 3, 1], vec![1, 0, 2]]);
        let (w, j) = reduce_to_identity(&v, 8).unwrap();
        for (r, &c) in j.iter().enumerate() {
            for i in 0..2 {
                let want = PadicScalar::exact_int(7, i64::from(i == r));
                assert!((&w[(i, c)] - &want).val_lower_bound() >= 8, "{w}");
            }
        }
    }
}
