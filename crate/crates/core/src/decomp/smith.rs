//! Smith normal form as a p-adic singular value decomposition.

use super::{multiplier, normalizing_shift};
use crate::error::Result;
use crate::matrix::PadicMatrix;
use crate::padic::PadicScalar;

/// `M = U Sigma V` with `U`, `V` in `GL(Z_p)` and `Sigma` diagonal up to zero
/// balls. `u_inv M v_inv = Sigma`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: PadicMatrix,
    pub u_inv: PadicMatrix,
    pub sigma: PadicMatrix,
    pub v: PadicMatrix,
    pub v_inv: PadicMatrix,
    /// Diagonal of `sigma`, nonincreasing in norm.
    pub singular_values: Vec<PadicScalar>,
    /// Elimination ran on `p^-scale M`; `sigma` is multiplied back.
    pub scale: i64,
}

impl SmithDecomposition {
    /// Number of singular values with norm strictly above `p^-n`.
    pub fn rank_at(&self, n: i64) -> usize {
        self.singular_values
            .iter()
            .filter(|s| s.valuation().is_some_and(|v| v < n))
            .count()
    }

    pub fn reconstruct(&self) -> Result<PadicMatrix> {
        self.u.mul(&self.sigma)?.mul(&self.v)
    }

    /// Last singular value, `sigma_*`.
    pub fn smallest(&self) -> Option<&PadicScalar> {
        self.singular_values.last()
    }
}

/// Full-pivot elimination: at each step the remaining entry of largest norm
/// (smallest `(row, col)` among ties) is moved to the diagonal and its row and
/// column are cleared.
pub fn smith_svd(m: &PadicMatrix) -> Result<SmithDecomposition> {
    let scale = normalizing_shift(m);
    let mut w = m.shift(-scale);
    let (n, cols) = (w.rows(), w.cols());
    let cap = w.working_precision();
    let ctx = w.ctx();
    let mut u = PadicMatrix::identity(ctx, n);
    let mut u_inv = PadicMatrix::identity(ctx, n);
    let mut v = PadicMatrix::identity(ctx, cols);
    let mut v_inv = PadicMatrix::identity(ctx, cols);
    for k in 0..n.min(cols) {
        let mut best = (k, k);
        for i in k..n {
            for j in k..cols {
                if w[(i, j)].norm_cmp(&w[best]).is_gt() {
                    best = (i, j);
                }
            }
        }
        if w[best].is_zero_ball() {
            break;
        }
        let (bi, bj) = best;
        if bi != k {
            w.swap_rows(bi, k);
            u_inv.swap_rows(bi, k);
            u.swap_cols(bi, k);
        }
        if bj != k {
            w.swap_cols(bj, k);
            v_inv.swap_cols(bj, k);
            v.swap_rows(bj, k);
        }
        let piv = w[(k, k)].clone();
        for i in k + 1..n {
            if w[(i, k)].is_zero_ball() {
                continue;
            }
            let c = multiplier(&w[(i, k)], &piv, cap);
            let neg = -&c;
            w.add_row_multiple(i, k, &neg, k..cols);
            u_inv.add_row_multiple(i, k, &neg, 0..n);
            u.add_col_multiple(k, i, &c, 0..n);
        }
        for j in k + 1..cols {
            if w[(k, j)].is_zero_ball() {
                continue;
            }
            let c = multiplier(&w[(k, j)], &piv, cap);
            let neg = -&c;
            w.add_col_multiple(j, k, &neg, k..n);
            v_inv.add_col_multiple(j, k, &neg, 0..cols);
            v.add_row_multiple(k, j, &c, 0..cols);
        }
    }
    let sigma = w.shift(scale);
    let singular_values = sigma.diagonal();
    Ok(SmithDecomposition {
        u,
        u_inv,
        sigma,
        v,
        v_inv,
        singular_values,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::PadicContext;

    fn ctx(p: u32, n: i64) -> PadicContext {
        PadicContext::new(p, n).unwrap()
    }

    #[test]
    fn nilpotent_plus_p_has_singular_values_one_and_zero() {
        let c = ctx(7, 10);
        let m = PadicMatrix::from_ints(c, &[vec![7, 1], vec![0, 0]]);
        let s = smith_svd(&m).unwrap();
        assert_eq!(s.singular_values[0].valuation(), Some(0));
        assert!(s.singular_values[1].is_zero_ball());
        assert!(s.reconstruct().unwrap().eq_mod(&m, 10).unwrap());
    }

    #[test]
    fn rank_one_diagonal() {
        let c = ctx(5, 8);
        let m = PadicMatrix::from_ints(c, &[vec![125, 0], vec![0, 0]]);
        let s = smith_svd(&m).unwrap();
        assert_eq!(s.singular_values[0].valuation(), Some(3));
        assert!(s.singular_values[1].is_zero_ball());
        assert_eq!(s.rank_at(8), 1);
        assert_eq!(s.rank_at(3), 0);
    }

    #[test]
    fn identity_decomposes_to_itself() {
        let c = ctx(3, 4);
        let s = smith_svd(&PadicMatrix::identity(c, 3)).unwrap();
        assert_eq!(s.sigma, PadicMatrix::identity(c, 3));
    }

    #[test]
    fn random_rectangular_reconstruction() {
        let c = ctx(3, 6);
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(5);
        for (r, k) in [(3, 5), (5, 3), (4, 4)] {
            let m = crate::matrix::random_matrix_with(c, r, k, &mut rng);
            let s = smith_svd(&m).unwrap();
            assert!(s.reconstruct().unwrap().eq_mod(&m, 6).unwrap());
            assert!(s.u.is_in_gl_zp() && s.v.is_in_gl_zp());
            assert!(s.u_inv.mul(&m).unwrap().mul(&s.v_inv).unwrap().eq_mod(&s.sigma, 6).unwrap());
            let vals: Vec<i64> = s.singular_values.iter().map(PadicScalar::val_lower_bound).collect();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]), "{vals:?}");
        }
    }
}
