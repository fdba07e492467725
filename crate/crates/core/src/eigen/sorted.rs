//! Sorted forms and the bottom-up sorted Hessenberg reduction.

use crate::decomp::{gl_inverse, Similarity};
use crate::error::{PadicError, Result};
use crate::matrix::PadicMatrix;
use crate::padic::PadicScalar;
use crate::residue::schur::is_sorted_shape;
use crate::residue::{block_schur_mod_p, charpoly_mod_p, roots_mod_p, FpBlock, FpMatrix, FpPoly};

use super::Status;

/// `[A; eps, B]`: upper Hessenberg with the coupling entry `eps = H[n_a, n_a - 1]`.
#[derive(Clone, Debug)]
pub struct SortedHessenberg {
    pub h: PadicMatrix,
    pub n_a: usize,
    pub n_b: usize,
    /// `B` reduces to a nilpotent matrix mod p.
    pub size_sorted: bool,
}

impl SortedHessenberg {
    /// Checks the shape mod p and records whether it is size-sorted.
    pub fn new(h: PadicMatrix, n_a: usize, n_b: usize) -> Result<Self> {
        if n_a + n_b != h.rows() || !h.is_square() || n_a == 0 || n_b == 0 {
            return Err(PadicError::ShapeMismatch(format!(
                "blocks ({n_a}, {n_b}) for a {}x{} matrix",
                h.rows(),
                h.cols()
            )));
        }
        let hb = h.mod_p()?;
        if !is_sorted_hessenberg_mod_p(&hb, n_a, None) {
            return Err(PadicError::InvalidArgument("matrix is not sorted Hessenberg".into()));
        }
        let size_sorted = is_sorted_hessenberg_mod_p(&hb, n_a, Some(0));
        Ok(Self {
            h,
            n_a,
            n_b,
            size_sorted,
        })
    }

    pub fn epsilon(&self) -> &PadicScalar {
        &self.h[(self.n_a, self.n_a - 1)]
    }
}

/// `h` (mod p) is Hessenberg, `h[a, a-1] = 0`, the bottom block has a single
/// eigenvalue (equal to `lambda` when given) that is not an eigenvalue of the
/// top block.
pub fn is_sorted_hessenberg_mod_p(h: &FpMatrix, a: usize, lambda: Option<u32>) -> bool {
    let n = h.rows();
    if a == 0 || a >= n {
        return false;
    }
    for i in 0..n {
        for j in 0..i.saturating_sub(1) {
            if h.get(i, j) != 0 {
                return false;
            }
        }
    }
    if h.get(a, a - 1) != 0 {
        return false;
    }
    let bottom = charpoly_mod_p(&h.submatrix(a, n, a, n));
    let top = charpoly_mod_p(&h.submatrix(0, a, 0, a));
    let p = h.p();
    let lam = match lambda {
        Some(l) => l,
        None => match roots_mod_p(&bottom).roots.as_slice() {
            [(l, _)] => *l,
            _ => return false,
        },
    };
    bottom == FpPoly::from_roots(p, &[(lam, n - a)]) && top.eval(lam) != 0
}

/// `M' = U M U^-1` with `M' mod p` block upper triangular in sorted order.
#[derive(Clone, Debug)]
pub struct SortedForm {
    pub m: PadicMatrix,
    pub u: PadicMatrix,
    pub u_inv: PadicMatrix,
    /// Diagonal blocks from top-left to bottom-right.
    pub blocks: Vec<FpBlock>,
}

impl SortedForm {
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.size).collect()
    }
}

/// Lifts a block Schur form of `M mod p` to `GL_n(Z_p)` (entries in `[0, p)`).
pub fn sorted_form(m: &PadicMatrix) -> Result<SortedForm> {
    if !m.is_square() {
        return Err(PadicError::ShapeMismatch("sorted form of a non-square matrix".into()));
    }
    let cap = m.working_precision();
    let schur = block_schur_mod_p(&m.mod_p()?);
    let n = m.rows();
    let identity = FpMatrix::identity(m.p(), n);
    if schur.u == identity {
        let id = PadicMatrix::identity(m.ctx(), n);
        return Ok(SortedForm {
            m: m.clone(),
            u: id.clone(),
            u_inv: id,
            blocks: schur.blocks,
        });
    }
    let u = PadicMatrix::lift_fp(m.ctx(), &schur.u, cap);
    let u_inv = gl_inverse(&u, cap)?;
    let sorted = u.mul(m)?.mul(&u_inv)?;
    debug_assert!(is_sorted_shape(&sorted.mod_p()?, &schur.blocks));
    Ok(SortedForm {
        m: sorted,
        u,
        u_inv,
        blocks: schur.blocks,
    })
}

/// Result of [`attempt_sorted_hessenberg`]: `H U = U M`.
#[derive(Clone, Debug)]
pub struct SortedHessenbergAttempt {
    pub status: Status,
    pub h: PadicMatrix,
    pub u: PadicMatrix,
    pub u_inv: PadicMatrix,
}

// Ordering for pivot search: zero balls all count as zero.
fn size_key(x: &PadicScalar) -> i64 {
    x.valuation().unwrap_or(i64::MAX)
}

/// Hessenberg reduction from the bottom row upwards using column pivots,
/// refusing any pivot that would move an entry of the top block into the
/// bottom block. `(a, b)` are the block sizes.
pub fn attempt_sorted_hessenberg(m: &PadicMatrix, (a, b): (usize, usize)) -> Result<SortedHessenbergAttempt> {
    let n = m.rows();
    if !m.is_square() || a + b != n {
        return Err(PadicError::ShapeMismatch(format!(
            "blocks ({a}, {b}) for a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let mut s = Similarity::new(m.clone(), true, true);
    let status = attempt_in_place(&mut s, a, m.working_precision())?;
    Ok(SortedHessenbergAttempt {
        status,
        h: s.t,
        u: s.fwd.unwrap(),
        u_inv: s.inv.unwrap(),
    })
}

pub(crate) fn attempt_in_place(s: &mut Similarity, a: usize, cap: i64) -> Result<Status> {
    let n = s.n();
    for i in (1..n).rev() {
        let mut j = 0;
        for k in 1..i {
            if size_key(&s.t[(i, k)]) <= size_key(&s.t[(i, j)]) {
                j = k;
            }
        }
        if j < a && a < i {
            return Ok(Status::Fail);
        }
        s.swap(j, i - 1);
        let piv = s.t[(i, i - 1)].clone();
        if piv.is_zero_ball() {
            continue;
        }
        for k in 0..i - 1 {
            if s.t[(i, k)].is_zero_ball() {
                continue;
            }
            let c = s.t[(i, k)].div(&piv)?.lift_to(cap);
            // rows below i are Hessenberg already, so column i - 1 vanishes there
            s.add_row_above(i - 1, k, &c, i + 1);
        }
    }
    Ok(Status::Success)
}

/// Moves the generalized eigenspace of `lambda` (multiplicity `mult` in the
/// residue characteristic polynomial) to the bottom block. The transform is a
/// permutation followed by adding multiples of the top rows to the bottom
/// rows, so it costs `O(n^2 mult)`.
pub(crate) fn split_bottom_block(s: &mut Similarity, lambda: u32, mult: usize, cap: i64) -> Result<()> {
    let n = s.n();
    let p = s.t.p();
    let k = s.t.mod_p()?.shift(lambda).pow(mult as u64).left_kernel();
    if k.rows() != mult {
        return Err(PadicError::InvalidArgument(format!(
            "eigenvalue {lambda} has a {}-dimensional generalized eigenspace, expected {mult}",
            k.rows()
        )));
    }
    let (r, pivots) = k.rref();
    let a = n - mult;
    let order: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).chain(pivots.iter().copied()).collect();
    // position of each original index in the current arrangement
    let mut pos: Vec<usize> = (0..n).collect();
    let mut at: Vec<usize> = (0..n).collect();
    for (target, &orig) in order.iter().enumerate() {
        let cur = pos[orig];
        if cur != target {
            s.swap(cur, target);
            let other = at[target];
            at.swap(cur, target);
            pos[orig] = target;
            pos[other] = cur;
        }
    }
    for (row, _) in pivots.iter().enumerate() {
        for (j, &orig) in order[..a].iter().enumerate() {
            let c = r.get(row, orig);
            if c != 0 {
                s.add_row(a + row, j, &PadicScalar::from_int(p, i64::from(c), cap));
            }
        }
    }
    Ok(())
}
