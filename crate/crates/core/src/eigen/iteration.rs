//! Shifted QR iterations: the fast block-deflating loop and the plain
//! multi-round fallback.

use num_integer::Integer;

use crate::decomp::qr::qr_round_window;
use crate::decomp::{RoundInfo, Similarity};
use crate::error::{PadicError, Result};
use crate::matrix::PadicMatrix;
use crate::padic::scalar::pow_p;
use crate::padic::PadicScalar;
use crate::residue::FpPoly;

use super::sorted::SortedHessenberg;
use super::Status;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    /// Single round with the residue eigenvalue as shift.
    Pre,
    Fast,
    Fallback,
}

/// One QR round. Valuations are `None` for zero balls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    /// Deflation step, counting from the bottom block.
    pub step: usize,
    pub batch: usize,
    pub round: usize,
    pub phase: Phase,
    pub shift_valuation: Option<i64>,
    pub eps_valuation: Option<i64>,
}

fn fmt_val(v: Option<i64>) -> String {
    v.map_or_else(|| "inf".to_string(), |v| v.to_string())
}

/// One line per round: `batch,shift_valuation,eps_valuation`.
pub fn rounds_csv(log: &[RoundRecord]) -> String {
    let mut out = String::from("batch,shift_valuation,eps_valuation\n");
    for r in log {
        out.push_str(&format!(
            "{},{},{}\n",
            r.batch,
            fmt_val(r.shift_valuation),
            fmt_val(r.eps_valuation)
        ));
    }
    out
}

/// `trace(B) / m`. When `p | m` the quotient loses precision and may leave
/// `Z_p`; the digits below `p^0` are then dropped.
pub fn trace_shift(b: &PadicMatrix, m: usize) -> Result<PadicScalar> {
    if m == 0 || !b.is_square() || b.rows() != m {
        return Err(PadicError::InvalidArgument(format!(
            "trace shift of a {}x{} block with m = {m}",
            b.rows(),
            b.cols()
        )));
    }
    let p = b.p();
    let cap = b.working_precision();
    let mut tr = b.trace();
    if tr.is_exact() {
        tr = tr.lift_to(cap);
    }
    let mu = tr.div(&PadicScalar::exact_int(p, m as i64))?;
    Ok(integral_part(&mu))
}

fn integral_part(x: &PadicScalar) -> PadicScalar {
    let p = x.p();
    match (x.valuation(), x.unit()) {
        (Some(v), Some(u)) if v < 0 => {
            let (q, _) = u.div_mod_floor(&*pow_p(p, -v));
            PadicScalar::from_parts(p, 0, q, x.prec())
        }
        _ if x.is_zero_ball() && x.prec() < 0 => PadicScalar::zero(p, 0),
        _ => x.clone(),
    }
}

/// State shared by the iterations: `T` with the right accumulator `U`
/// (`M U = U T`) and the round log.
pub(crate) struct Engine {
    pub s: Similarity,
    pub cap: i64,
    pub log: Vec<RoundRecord>,
    pub step: usize,
    pub batch: usize,
    pub rounds: usize,
}

impl Engine {
    pub fn new(t: PadicMatrix, u: Option<PadicMatrix>, cap: i64) -> Self {
        Self {
            s: Similarity { t, fwd: None, inv: u },
            cap,
            log: Vec::new(),
            step: 0,
            batch: 0,
            rounds: 0,
        }
    }

    pub fn t(&self) -> &PadicMatrix {
        &self.s.t
    }

    pub fn round(&mut self, w: usize, mu: &PadicScalar, phase: Phase, eps_row: Option<usize>) -> RoundInfo {
        let info = qr_round_window(&mut self.s.t, w, mu, self.cap, None, self.s.inv.as_mut());
        self.rounds += 1;
        let eps_valuation = eps_row.filter(|&a| a > 0).and_then(|a| self.s.t[(a, a - 1)].valuation());
        self.log.push(RoundRecord {
            step: self.step,
            batch: self.batch,
            round: self.rounds,
            phase,
            shift_valuation: mu.valuation(),
            eps_valuation,
        });
        info
    }

    pub fn shift_window(&mut self, w: usize, mu: &PadicScalar, negate: bool) {
        let mu = mu.lift_to(self.cap);
        for i in 0..w {
            let d = &self.s.t[(i, i)];
            self.s.t[(i, i)] = if negate { d - &mu } else { d + &mu };
        }
    }

    /// Batches of `m` trace-shifted rounds until the coupling entry
    /// `T[a, a-1]` vanishes to full precision. Fails as soon as a batch does
    /// not square its norm.
    pub fn fast(&mut self, w: usize, a: usize, m: usize) -> Result<Status> {
        let mut old = 0i64;
        loop {
            self.batch += 1;
            for _ in 0..m {
                let b = self.s.t.submatrix(a..w, a..w);
                let mu = trace_shift(&b, w - a)?;
                self.round(w, &mu, Phase::Fast, Some(a));
            }
            let eps = &self.s.t[(a, a - 1)];
            if eps.is_zero_ball() && eps.prec() >= self.cap {
                return Ok(Status::Success);
            }
            let v = eps.val_lower_bound();
            if v < 2 * old || v <= old {
                return Ok(Status::Fail);
            }
            old = v;
        }
    }

    /// Hessenberg reduction of the leading `w x w` window.
    pub fn hessenberg_window(&mut self, w: usize) -> Result<()> {
        for j in 0..w.saturating_sub(2) {
            let mut best = j + 1;
            for i in j + 2..w {
                if self.s.t[(i, j)].norm_cmp(&self.s.t[(best, j)]).is_gt() {
                    best = i;
                }
            }
            if self.s.t[(best, j)].is_zero_ball() {
                continue;
            }
            self.s.swap(best, j + 1);
            let piv = self.s.t[(j + 1, j)].clone();
            for i in j + 2..w {
                if self.s.t[(i, j)].is_zero_ball() {
                    continue;
                }
                let c = self.s.t[(i, j)].div(&piv)?.lift_to(self.cap);
                self.s.add_row(i, j + 1, &-&c);
            }
        }
        Ok(())
    }

    /// `m_i N` rounds with the lifted shift `lambda_i` for every root.
    pub fn simple(&mut self, w: usize, roots: &[(u32, usize)]) -> Result<()> {
        if !self.s.t.submatrix(0..w, 0..w).is_upper_hessenberg() {
            self.hessenberg_window(w)?;
        }
        let p = self.s.t.p();
        for &(lambda, mult) in roots {
            self.batch += 1;
            let mu = PadicScalar::from_int(p, i64::from(lambda), self.cap);
            for _ in 0..mult as i64 * self.cap.max(1) {
                self.round(w, &mu, Phase::Fallback, Some(w - 1));
            }
        }
        Ok(())
    }
}

/// Output of [`qr_iteration_fast`]: `H V = V T`.
#[derive(Clone, Debug)]
pub struct FastOutcome {
    pub status: Status,
    pub t: PadicMatrix,
    pub v: PadicMatrix,
    pub log: Vec<RoundRecord>,
}

fn zero_multiplicity(chi: &FpPoly) -> usize {
    chi.coeffs().iter().take_while(|&&c| c == 0).count()
}

/// Runs the fast iteration on a size-sorted Hessenberg matrix. `chi_mod_p`
/// is its characteristic polynomial mod p and fixes the batch length (the
/// multiplicity of 0). `v` is right-multiplied by every `Q`.
pub fn qr_iteration_fast(h: &SortedHessenberg, chi_mod_p: &FpPoly, v: &PadicMatrix) -> Result<FastOutcome> {
    let n = h.h.rows();
    if v.rows() != n {
        return Err(PadicError::ShapeMismatch(format!("accumulator has {} rows, expected {n}", v.rows())));
    }
    let m = zero_multiplicity(chi_mod_p);
    if m == 0 || m >= n {
        return Err(PadicError::InvalidArgument(format!("zero has multiplicity {m} in a size {n} matrix")));
    }
    let mut eng = Engine::new(h.h.clone(), Some(v.clone()), h.h.working_precision());
    let status = eng.fast(n, h.n_a, m)?;
    Ok(FastOutcome {
        status,
        t: eng.s.t,
        v: eng.s.inv.unwrap(),
        log: eng.log,
    })
}

/// `m_i N` rounds of QR with shift `lambda_i` for every root `lambda_i` of
/// `chi_mod_p`, reducing to Hessenberg form first if needed. Returns `(T, V')`
/// with `M V' = V' T` when `V` is the identity.
pub fn simple_qr_iteration(
    m: &PadicMatrix,
    chi_mod_p: &FpPoly,
    v: &PadicMatrix,
) -> Result<(PadicMatrix, PadicMatrix)> {
    if !m.is_square() || v.rows() != m.rows() {
        return Err(PadicError::ShapeMismatch("simple QR iteration".into()));
    }
    let roots = crate::residue::roots_mod_p(chi_mod_p);
    let mut eng = Engine::new(m.clone(), Some(v.clone()), m.working_precision());
    eng.simple(m.rows(), &roots.roots)?;
    Ok((eng.s.t, eng.s.inv.unwrap()))
}
