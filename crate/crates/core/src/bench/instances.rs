//! Seeded random test matrices.

use rand::seq::SliceRandom;
use rand::RngCore;

use crate::decomp::gl_inverse;
use crate::error::{PadicError, Result};
use crate::matrix::{random_integer, random_matrix_with, PadicMatrix};
use crate::padic::{PadicContext, PadicScalar};

fn entry(ctx: PadicContext, rng: &mut impl RngCore) -> PadicScalar {
    ctx.big(&random_integer(rng, ctx.p(), ctx.prec()))
}

/// Uniformly random matrix in `GL_n(Z_p)` (rejection on the residue).
pub fn random_gl(ctx: PadicContext, n: usize, rng: &mut impl RngCore) -> PadicMatrix {
    loop {
        let u = random_matrix_with(ctx, n, n, rng);
        if u.is_in_gl_zp() {
            return u;
        }
    }
}

/// `U T U^-1` with `U` random in `GL_n(Z_p)`, truncated to precision `N`.
pub fn conjugate_random(t: &PadicMatrix, rng: &mut impl RngCore) -> Result<PadicMatrix> {
    let ctx = t.ctx();
    let u = random_gl(ctx, t.rows(), rng);
    let u_inv = gl_inverse(&u, ctx.prec())?;
    Ok(u.mul(t)?.mul(&u_inv)?.lift_to(ctx.prec()))
}

/// Random matrix whose characteristic polynomial mod p is square-free and
/// splits: a conjugate of an upper triangular matrix with distinct diagonal
/// residues. Needs `n <= p`.
pub fn split_squarefree(ctx: PadicContext, n: usize, rng: &mut impl RngCore) -> Result<PadicMatrix> {
    let p = ctx.p() as usize;
    if n > p {
        return Err(PadicError::InvalidArgument(format!(
            "{n} distinct eigenvalues do not fit in F_{p}"
        )));
    }
    let mut residues: Vec<usize> = (0..p).collect();
    residues.shuffle(rng);
    let t = PadicMatrix::from_fn(ctx, n, n, |i, j| {
        if i > j {
            ctx.zero()
        } else if i == j {
            let high = &entry(ctx, rng) * &ctx.int(ctx.p().into());
            (&high + &ctx.int(residues[i] as i64)).lift_to(ctx.prec())
        } else {
            entry(ctx, rng)
        }
    });
    conjugate_random(&t, rng)
}

/// Conjugate of `[[A, C], [0, B]]` with `A` invertible mod p and `B` strictly
/// upper triangular of size `b`.
pub fn nilpotent_block(ctx: PadicContext, n: usize, b: usize, rng: &mut impl RngCore) -> Result<PadicMatrix> {
    if b > n {
        return Err(PadicError::InvalidArgument(format!("block of size {b} in a {n}x{n} matrix")));
    }
    let a = n - b;
    let top = random_gl(ctx, a, rng);
    let t = PadicMatrix::from_fn(ctx, n, n, |i, j| {
        if i < a && j < a {
            top[(i, j)].clone()
        } else if i < a || (i < j && i >= a) {
            entry(ctx, rng)
        } else {
            ctx.zero()
        }
    });
    conjugate_random(&t, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::{charpoly_mod_p, roots_mod_p};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn split_instances_have_distinct_roots() {
        let ctx = PadicContext::new(7, 10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=7 {
            let m = split_squarefree(ctx, n, &mut rng).unwrap();
            assert_eq!(m.flat_precision(), 10);
            let r = roots_mod_p(&charpoly_mod_p(&m.mod_p().unwrap()));
            assert!(r.is_square_free_split(), "n = {n}");
        }
        assert!(split_squarefree(ctx, 8, &mut rng).is_err());
    }

    #[test]
    fn nilpotent_block_has_zero_root_of_right_multiplicity() {
        let ctx = PadicContext::new(5, 6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = nilpotent_block(ctx, 6, 2, &mut rng).unwrap();
        let r = roots_mod_p(&charpoly_mod_p(&m.mod_p().unwrap()));
        assert_eq!(r.multiplicity(0), 2);
        assert!(m.pow(6).unwrap().mod_p().unwrap().rank() <= 4);
    }
}
