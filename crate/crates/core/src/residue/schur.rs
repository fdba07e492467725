//! Block Schur form over F_p by generalized-eigenspace splitting.

use super::fp::{FpMatrix, FpPoly};
use super::{charpoly_mod_p, roots_mod_p};

/// A diagonal block: `lambda` is its single eigenvalue, `None` for the block
/// collecting the factors with no root in F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FpBlock {
    pub lambda: Option<u32>,
    pub size: usize,
}

#[derive(Clone, Debug)]
pub struct FpSchur {
    /// `T = U M U^-1`, block diagonal.
    pub t: FpMatrix,
    pub u: FpMatrix,
    /// Blocks from top-left to bottom-right.
    pub blocks: Vec<FpBlock>,
}

impl FpSchur {
    pub fn bottom(&self) -> Option<FpBlock> {
        self.blocks.last().copied()
    }
}

/// Rows of `U` are bases of the left generalized eigenspaces: the non-split
/// part on top, then one block per root. The bottom block is the root of
/// smallest multiplicity (smallest root among ties), and blocks above it
/// follow the same order upwards.
pub fn block_schur_mod_p(m: &FpMatrix) -> FpSchur {
    assert!(m.is_square(), "block Schur form of a non-square matrix");
    let p = m.p();
    let n = m.rows();
    let chi = charpoly_mod_p(m);
    let roots = roots_mod_p(&chi);
    let mut order = roots.roots.clone();
    order.sort_by_key(|&(lambda, mult)| (mult, lambda));

    let mut pieces: Vec<(FpBlock, FpMatrix)> = Vec::new();
    if roots.remaining_degree > 0 {
        let split = FpPoly::from_roots(p, &roots.roots);
        let (g, _) = chi.div_rem(&split);
        let rows = g.eval_matrix(m).left_kernel();
        debug_assert_eq!(rows.rows(), roots.remaining_degree);
        pieces.push((
            FpBlock {
                lambda: None,
                size: rows.rows(),
            },
            rows,
        ));
    }
    for &(lambda, mult) in order.iter().rev() {
        let rows = m.shift(lambda).pow(mult as u64).left_kernel();
        debug_assert_eq!(rows.rows(), mult);
        pieces.push((
            FpBlock {
                lambda: Some(lambda),
                size: mult,
            },
            rows,
        ));
    }
    let refs: Vec<&FpMatrix> = pieces.iter().map(|(_, r)| r).collect();
    let u = FpMatrix::vstack(p, n, &refs);
    let uinv = u
        .inverse()
        .expect("generalized eigenspaces span the whole space");
    FpSchur {
        t: u.mul(m).mul(&uinv),
        u,
        blocks: pieces.into_iter().map(|(b, _)| b).collect(),
    }
}

/// Checks that `t` is block upper triangular for `blocks`, that each rooted
/// block has characteristic polynomial `(t - lambda)^size`, and that the
/// non-split block has no roots.
pub fn is_sorted_shape(t: &FpMatrix, blocks: &[FpBlock]) -> bool {
    let p = t.p();
    let mut start = 0;
    for b in blocks {
        let end = start + b.size;
        for i in end..t.rows() {
            for j in start..end {
                if t.get(i, j) != 0 {
                    return false;
                }
            }
        }
        let chi = charpoly_mod_p(&t.submatrix(start, end, start, end));
        let ok = match b.lambda {
            Some(l) => chi == FpPoly::from_roots(p, &[(l, b.size)]),
            None => roots_mod_p(&chi).roots.is_empty(),
        };
        if !ok {
            return false;
        }
        start = end;
    }
    start == t.rows()
}
