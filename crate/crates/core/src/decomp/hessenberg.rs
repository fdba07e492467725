//! Hessenberg reduction and characteristic polynomials over Z_p.

use super::{multiplier, normalizing_shift, Similarity};
use crate::error::{PadicError, Result};
use crate::matrix::PadicMatrix;
use crate::padic::{PadicPoly, PadicScalar};

/// `H U = U M` with `H` upper Hessenberg and `U` in `GL_n(Z_p)`.
#[derive(Clone, Debug)]
pub struct HessenbergForm {
    pub h: PadicMatrix,
    pub u: PadicMatrix,
    pub u_inv: PadicMatrix,
    /// Reduction ran on `p^-scale M`; `h` is multiplied back.
    pub scale: i64,
}

/// Column by column, the entry of largest norm below the diagonal (smallest
/// row among ties) is moved to the subdiagonal and used to clear the rest.
pub fn hessenberg(m: &PadicMatrix) -> Result<HessenbergForm> {
    if !m.is_square() {
        return Err(PadicError::ShapeMismatch("Hessenberg form of a non-square matrix".into()));
    }
    let scale = normalizing_shift(m);
    let n = m.rows();
    let cap = m.shift(-scale).working_precision();
    let mut s = Similarity::new(m.shift(-scale), true, true);
    for j in 0..n.saturating_sub(2) {
        let mut best = j + 1;
        for i in j + 2..n {
            if s.t[(i, j)].norm_cmp(&s.t[(best, j)]).is_gt() {
                best = i;
            }
        }
        if s.t[(best, j)].is_zero_ball() {
            continue;
        }
        s.swap(best, j + 1);
        let piv = s.t[(j + 1, j)].clone();
        for i in j + 2..n {
            if s.t[(i, j)].is_zero_ball() {
                continue;
            }
            let c = -&multiplier(&s.t[(i, j)], &piv, cap);
            s.add_row(i, j + 1, &c);
        }
    }
    Ok(HessenbergForm {
        h: s.t.shift(scale),
        u: s.fwd.unwrap(),
        u_inv: s.inv.unwrap(),
        scale,
    })
}

/// `det(tI - H)` for an upper Hessenberg `H` by the subdiagonal recurrence.
pub fn hessenberg_charpoly(h: &PadicMatrix) -> PadicPoly {
    let p = h.p();
    let n = h.rows();
    let mut polys = vec![PadicPoly::monic_from_lower(p, vec![])];
    for k in 1..=n {
        let lin = PadicPoly::monic_from_lower(p, vec![-&h[(k - 1, k - 1)]]);
        let mut next = lin.mul(&polys[k - 1]);
        let mut prod = PadicScalar::exact_int(p, 1);
        for i in (0..k - 1).rev() {
            prod = &prod * &h[(i + 1, i)];
            let c = &h[(i, k - 1)] * &prod;
            let term = polys[i].mul(&PadicPoly::new(p, vec![c]));
            next = next.sub(&term);
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Characteristic polynomial with zealous per-coefficient precision.
pub fn charpoly(m: &PadicMatrix) -> Result<PadicPoly> {
    let hf = hessenberg(m)?;
    Ok(hessenberg_charpoly(&hf.h))
}
