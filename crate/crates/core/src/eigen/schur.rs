//! Weak block Schur form driver.

use crate::decomp::normalizing_shift;
use crate::error::{PadicError, Result};
use crate::matrix::PadicMatrix;
use crate::padic::PadicScalar;
use crate::residue::{charpoly_mod_p, roots_mod_p};

use super::iteration::{Engine, Phase, RoundRecord};
use super::sorted::{attempt_in_place, is_sorted_hessenberg_mod_p, split_bottom_block};
use super::Status;

/// `M U = U T` with `U` in `GL_n(Z_p)` and `T` block upper triangular.
#[derive(Clone, Debug)]
pub struct SchurResult {
    pub t: PadicMatrix,
    pub u: PadicMatrix,
    pub status: Status,
    /// Diagonal block sizes, top-left first. A block left by the fallback
    /// path is reported as one block.
    pub blocks: Vec<usize>,
    pub rounds_log: Vec<RoundRecord>,
    /// Total number of QR rounds.
    pub rounds: usize,
    /// The computation ran on `p^-scale M`.
    pub scale: i64,
}

impl SchurResult {
    /// Rounds spent on each deflated block, bottom block first.
    pub fn rounds_per_step(&self) -> Vec<usize> {
        let steps = self.rounds_log.iter().map(|r| r.step + 1).max().unwrap_or(0);
        let mut out = vec![0; steps];
        for r in &self.rounds_log {
            out[r.step] += 1;
        }
        out
    }
}

/// Weak block Schur form of a square matrix.
pub fn block_schur(m: &PadicMatrix) -> Result<SchurResult> {
    if !m.is_square() {
        return Err(PadicError::ShapeMismatch(format!("{}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    let scale = normalizing_shift(m);
    let m1 = m.shift(-scale);
    let cap = m1.working_precision();
    let trivial = |t: PadicMatrix, u: PadicMatrix| SchurResult {
        t: t.shift(scale),
        u,
        status: Status::Success,
        blocks: if n == 0 { vec![] } else { vec![n] },
        rounds_log: vec![],
        rounds: 0,
        scale,
    };
    if n <= 1 || m1.entries().iter().all(PadicScalar::is_zero_ball) {
        return Ok(trivial(m1, PadicMatrix::identity(m.ctx(), n)));
    }
    if cap <= 0 {
        return Err(PadicError::InsufficientPrecision("matrix is known to no digits".into()));
    }

    let roots = roots_mod_p(&charpoly_mod_p(&m1.mod_p()?));
    let Some(&(lambda, b)) = roots.roots.iter().min_by_key(|&&(l, k)| (k, l)) else {
        return Ok(trivial(m1, PadicMatrix::identity(m.ctx(), n)));
    };
    if b == n {
        return Ok(trivial(m1, PadicMatrix::identity(m.ctx(), n)));
    }
    let mut eng = Engine::new(m1, Some(PadicMatrix::identity(m.ctx(), n)), cap);
    split_bottom_block(&mut eng.s, lambda, b, cap)?;
    let attempt = attempt_in_place(&mut eng.s, n - b, cap)?;

    let mut status = Status::Success;
    let mut blocks = Vec::new();
    let mut w = n;
    if attempt == Status::Fail {
        fallback(&mut eng, w)?;
        status = Status::FallbackUsed;
    }
    while status == Status::Success && w > 1 {
        let tb = eng.t().submatrix(0..w, 0..w).mod_p()?;
        let roots = roots_mod_p(&charpoly_mod_p(&tb));
        if roots.roots.is_empty() {
            break;
        }
        let start = (1..w).rev().find(|&k| tb.get(k, k - 1) == 0).unwrap_or(0);
        let local = roots_mod_p(&charpoly_mod_p(&tb.submatrix(start, w, start, w)));
        let Some(lambda) = local
            .roots
            .iter()
            .map(|&(l, _)| l)
            .min_by_key(|&l| (roots.multiplicity(l) != 1, l))
        else {
            fallback(&mut eng, w)?;
            status = Status::FallbackUsed;
            break;
        };
        let mult = roots.multiplicity(lambda);
        if mult == w {
            break;
        }
        let a = w - mult;
        let mu0 = PadicScalar::from_int(m.p(), i64::from(lambda), cap);

        eng.batch += 1;
        eng.round(w, &mu0, Phase::Pre, Some(a));
        let shifted = eng.t().submatrix(0..w, 0..w).mod_p()?.shift(lambda);
        if !is_sorted_hessenberg_mod_p(&shifted, a, Some(0)) {
            fallback(&mut eng, w)?;
            status = Status::FallbackUsed;
            break;
        }
        eng.shift_window(w, &mu0, true);
        let st = eng.fast(w, a, mult)?;
        eng.shift_window(w, &mu0, false);
        if st == Status::Fail {
            fallback(&mut eng, w)?;
            status = Status::FallbackUsed;
            break;
        }
        blocks.push(mult);
        eng.step += 1;
        w = a;
    }
    if w > 0 {
        blocks.push(w);
    }
    blocks.reverse();
    let Engine { s, log, rounds, .. } = eng;
    Ok(SchurResult {
        t: s.t.shift(scale),
        u: s.inv.expect("accumulator is tracked"),
        status,
        blocks,
        rounds_log: log,
        rounds,
        scale,
    })
}

/// Plain iteration on the whole matrix: Hessenberg reduction followed by
/// `m_i N` rounds per residue eigenvalue.
pub fn simple_schur(m: &PadicMatrix) -> Result<SchurResult> {
    if !m.is_square() {
        return Err(PadicError::ShapeMismatch(format!("{}x{} matrix", m.rows(), m.cols())));
    }
    let n = m.rows();
    let scale = normalizing_shift(m);
    let m1 = m.shift(-scale);
    let mut eng = Engine::new(m1.clone(), Some(PadicMatrix::identity(m.ctx(), n)), m1.working_precision());
    if n > 1 && !m1.entries().iter().all(PadicScalar::is_zero_ball) {
        fallback(&mut eng, n)?;
    }
    let Engine { s, log, rounds, .. } = eng;
    Ok(SchurResult {
        t: s.t.shift(scale),
        u: s.inv.expect("accumulator is tracked"),
        status: Status::Success,
        blocks: if n == 0 { vec![] } else { vec![n] },
        rounds_log: log,
        rounds,
        scale,
    })
}

fn fallback(eng: &mut Engine, w: usize) -> Result<()> {
    let tb = eng.t().submatrix(0..w, 0..w).mod_p()?;
    let roots = roots_mod_p(&charpoly_mod_p(&tb));
    eng.simple(w, &roots.roots)
}

/// `M U = U T + O(p^n)` and `U` in `GL_n(Z_p)`.
pub fn verify_similarity(m: &PadicMatrix, u: &PadicMatrix, t: &PadicMatrix, n: i64) -> Result<bool> {
    if !u.is_in_gl_zp() {
        return Ok(false);
    }
    m.mul(u)?.eq_mod(&u.mul(t)?, n)
}
