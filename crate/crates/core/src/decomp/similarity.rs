//! Elementary similarity transforms with optional accumulation.

use crate::matrix::PadicMatrix;
use crate::padic::PadicScalar;

/// Tracks `T = F M F^-1` under elementary operations. `fwd` holds `F` and
/// `inv` holds `F^-1`; either may be skipped.
#[derive(Clone, Debug)]
pub struct Similarity {
    pub t: PadicMatrix,
    pub fwd: Option<PadicMatrix>,
    pub inv: Option<PadicMatrix>,
}

impl Similarity {
    pub fn new(m: PadicMatrix, track_fwd: bool, track_inv: bool) -> Self {
        let n = m.rows();
        let ctx = m.ctx();
        Self {
            t: m,
            fwd: track_fwd.then(|| PadicMatrix::identity(ctx, n)),
            inv: track_inv.then(|| PadicMatrix::identity(ctx, n)),
        }
    }

    pub fn n(&self) -> usize {
        self.t.rows()
    }

    /// `row[target] += c row[src]` followed by `col[src] -= c col[target]`.
    pub fn add_row(&mut self, target: usize, src: usize, c: &PadicScalar) {
        self.add_row_above(target, src, c, self.n());
    }

    /// [`Similarity::add_row`] when `t[r, target]` is already eliminated for
    /// every `r >= end`, so the column update stops at row `end`.
    pub fn add_row_above(&mut self, target: usize, src: usize, c: &PadicScalar, end: usize) {
        let n = self.n();
        let neg = -c;
        self.t.add_row_multiple(target, src, c, 0..n);
        self.t.add_col_multiple(src, target, &neg, 0..end);
        if let Some(f) = &mut self.fwd {
            f.add_row_multiple(target, src, c, 0..n);
        }
        if let Some(g) = &mut self.inv {
            g.add_col_multiple(src, target, &neg, 0..n);
        }
    }

    pub fn swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.t.swap_rows(i, j);
        self.t.swap_cols(i, j);
        if let Some(f) = &mut self.fwd {
            f.swap_rows(i, j);
        }
        if let Some(g) = &mut self.inv {
            g.swap_cols(i, j);
        }
    }
}
