//! Textbook comparator: characteristic polynomial, Hensel-lifted roots and
//! eigenvectors from kernels.

use crate::decomp::hessenberg::hessenberg_charpoly;
use crate::decomp::{gl_inverse, hessenberg, normalizing_shift, pnumerical_left_kernel};
use crate::eigen::{SchurResult, Status};
use crate::error::{PadicError, Result};
use crate::matrix::PadicMatrix;
use crate::padic::{PadicPoly, PadicScalar};
use crate::residue::roots_mod_p;

/// Newton iteration from a simple root mod p.
pub fn hensel_root(f: &PadicPoly, root: u32, prec: i64) -> Result<PadicScalar> {
    let df = f.derivative();
    let mut x = PadicScalar::from_int(f.p(), i64::from(root), prec);
    for _ in 0..2 * (64 - prec.leading_zeros()) + 2 {
        let d = df.eval(&x);
        if !d.is_p_unit() {
            return Err(PadicError::Unsupported(format!("root {root} is not simple")));
        }
        let step = f.eval(&x).div(&d)?;
        if step.is_zero_ball() {
            break;
        }
        x = (&x - &step).lift_to(prec);
    }
    Ok(x.lift_to(x.prec().min(prec)))
}

/// Diagonalizes `M` when its characteristic polynomial mod p splits into
/// distinct linear factors.
pub fn classical_comparator(m: &PadicMatrix) -> Result<SchurResult> {
    if !m.is_square() {
        return Err(PadicError::ShapeMismatch(format!("{}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    let scale = normalizing_shift(m);
    let m1 = m.shift(-scale);
    let cap = m1.working_precision();
    let chi = hessenberg_charpoly(&hessenberg(&m1)?.h);
    let residues = chi
        .residues()
        .ok_or_else(|| PadicError::InsufficientPrecision("characteristic polynomial mod p".into()))?;
    let roots = roots_mod_p(&crate::residue::FpPoly::new(m.p(), residues));
    if !roots.is_square_free_split() {
        return Err(PadicError::Unsupported(
            "characteristic polynomial mod p is not square-free and split".into(),
        ));
    }
    let ctx = m1.ctx();
    let mut u = PadicMatrix::zeros(ctx.with_prec(cap), n, n);
    for (col, &(r, _)) in roots.roots.iter().enumerate() {
        let lambda = hensel_root(&chi, r, cap)?;
        let shifted = m1.sub(&PadicMatrix::identity(ctx, n).scale(&lambda))?;
        let prec = shifted.flat_precision();
        let k = pnumerical_left_kernel(&shifted.transpose(), prec)?;
        if k.rows() != 1 {
            return Err(PadicError::InsufficientPrecision(format!(
                "eigenvector for root {r} is not determined at precision {prec}"
            )));
        }
        for i in 0..n {
            u[(i, col)] = k[(0, i)].lift_to(cap);
        }
    }
    let t = gl_inverse(&u, cap)?.mul(&m1)?.mul(&u)?;
    Ok(SchurResult {
        t: t.shift(scale),
        u,
        status: Status::Success,
        blocks: vec![1; n],
        rounds_log: vec![],
        rounds: 0,
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::verify_similarity;
    use crate::padic::PadicContext;
    use rand::SeedableRng;

    #[test]
    fn charpoly_constant_term_carries_extra_digits() {
        let p = 7i64;
        let c = PadicContext::new(7, 6).unwrap();
        let a = PadicMatrix::from_ints(c, &[vec![p.pow(3), p.pow(2)], vec![0, -p.pow(3)]]);
        let chi = hessenberg_charpoly(&hessenberg(&a).unwrap().h);
        let c0 = chi.coeff(0);
        assert_eq!(c0.valuation(), Some(6));
        assert_eq!(c0.prec(), 8);
        assert!(chi.coeff(1).is_zero_ball() && chi.coeff(1).prec() == 6);
    }

    #[test]
    fn diagonal_input_is_reproduced() {
        let c = PadicContext::new(5, 8).unwrap();
        let m = PadicMatrix::from_ints(c, &[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]);
        let r = classical_comparator(&m).unwrap();
        for i in 0..3 {
            assert!((&r.t[(i, i)] - &m[(i, i)]).val_lower_bound() >= 8);
        }
        assert!(r.t.is_upper_triangular());
    }

    #[test]
    fn agrees_with_block_schur_on_random_split_input() {
        let c = PadicContext::new(11, 12).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let m = crate::bench::instances::split_squarefree(c, 8, &mut rng).unwrap();
        let r = classical_comparator(&m).unwrap();
        assert!(verify_similarity(&m, &r.u, &r.t, 12).unwrap());
        assert!(r.t.is_upper_triangular());
        let fast = crate::eigen::block_schur(&m).unwrap();
        assert_eq!(fast.status, Status::Success);
        let key = |x: &PadicScalar| x.residue_mod_pk(12).unwrap();
        let mut a: Vec<_> = r.t.diagonal().iter().map(key).collect();
        let mut b: Vec<_> = fast.t.diagonal().iter().map(key).collect();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn repeated_roots_are_unsupported() {
        let c = PadicContext::new(5, 6).unwrap();
        let m = PadicMatrix::from_ints(c, &[vec![1, 1], vec![0, 1]]);
        assert!(matches!(classical_comparator(&m), Err(PadicError::Unsupported(_))));
    }
}
