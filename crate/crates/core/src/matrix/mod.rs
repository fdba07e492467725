//! Dense matrices over Q_p with per-entry precision.

pub mod io;

use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{PadicError, Result};
use crate::padic::scalar::{norm_of_exponent, pow_p};
use crate::padic::{Norm, PadicContext, PadicScalar, EXACT};
use crate::residue::FpMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicMatrix {
    ctx: PadicContext,
    rows: usize,
    cols: usize,
    data: Vec<PadicScalar>,
}

impl PadicMatrix {
    pub fn new(ctx: PadicContext, rows: usize, cols: usize, data: Vec<PadicScalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(PadicError::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(x) = data.iter().find(|x| x.p() != ctx.p()) {
            return Err(PadicError::InvalidArgument(format!(
                "entry over p = {} in a matrix over p = {}",
                x.p(),
                ctx.p()
            )));
        }
        Ok(Self {
            ctx,
            rows,
            cols,
            data,
        })
    }

    /// Zero balls at the context precision.
    pub fn zeros(ctx: PadicContext, rows: usize, cols: usize) -> Self {
        Self::filled(ctx, rows, cols, ctx.zero())
    }

    pub fn filled(ctx: PadicContext, rows: usize, cols: usize, x: PadicScalar) -> Self {
        Self {
            ctx,
            rows,
            cols,
            data: vec![x; rows * cols],
        }
    }

    /// Identity with exact entries.
    pub fn identity(ctx: PadicContext, n: usize) -> Self {
        let mut m = Self::filled(ctx, n, n, PadicScalar::zero(ctx.p(), EXACT));
        for i in 0..n {
            m[(i, i)] = PadicScalar::exact_int(ctx.p(), 1);
        }
        m
    }

    /// Integer entries at the context precision.
    pub fn from_ints(ctx: PadicContext, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| ctx.int(x)));
        }
        Self {
            ctx,
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_fn(
        ctx: PadicContext,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> PadicScalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self {
            ctx,
            rows,
            cols,
            data,
        }
    }

    /// Lifts a matrix over F_p entrywise, entries in `[0, p)` at precision `prec`.
    pub fn lift_fp(ctx: PadicContext, m: &FpMatrix, prec: i64) -> Self {
        Self::from_fn(ctx, m.rows(), m.cols(), |i, j| {
            PadicScalar::from_int(ctx.p(), m.get(i, j) as i64, prec)
        })
    }

    pub fn ctx(&self) -> PadicContext {
        self.ctx
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[PadicScalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[PadicScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Minimum absolute precision over the entries (`EXACT` if all are exact).
    pub fn flat_precision(&self) -> i64 {
        self.data.iter().map(PadicScalar::prec).min().unwrap_or(EXACT)
    }

    /// Flat precision, falling back to the context default when every entry
    /// is exact.
    pub fn working_precision(&self) -> i64 {
        match self.flat_precision() {
            EXACT => self.ctx.prec(),
            n => n,
        }
    }

    /// `-log_p ||A||` together with whether every entry is a zero ball (in
    /// which case the exponent is only a lower bound).
    pub fn norm_exponent(&self) -> (i64, bool) {
        let nonzero = self.data.iter().filter_map(PadicScalar::valuation).min();
        match nonzero {
            Some(v) => {
                let ball = self
                    .data
                    .iter()
                    .filter(|x| x.is_zero_ball())
                    .map(PadicScalar::prec)
                    .min()
                    .unwrap_or(EXACT);
                (v.min(ball), false)
            }
            None => (self.flat_precision(), true),
        }
    }

    pub fn norm(&self) -> Norm {
        let (v, bound) = self.norm_exponent();
        let r = norm_of_exponent(self.p(), if v == EXACT { i64::MAX / 2 } else { v });
        if bound {
            Norm::AtMost(r)
        } else {
            Norm::Exact(r)
        }
    }

    /// All entries have nonnegative valuation lower bound.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.val_lower_bound() >= 0)
    }

    fn check_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(PadicError::ShapeMismatch(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sum")?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "difference")?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Self, f: impl Fn(&PadicScalar, &PadicScalar) -> PadicScalar) -> Self {
        Self {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(PadicError::ShapeMismatch(format!(
                "product: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let zero = PadicScalar::zero(self.p(), EXACT);
        Ok(Self::from_fn(self.ctx, self.rows, other.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                acc = &acc + &(&self[(i, k)] * &other[(k, j)]);
            }
            acc
        }))
    }

    pub fn scale(&self, c: &PadicScalar) -> Self {
        self.map(|x| c * x)
    }

    pub fn map(&self, f: impl Fn(&PadicScalar) -> PadicScalar) -> Self {
        Self {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Multiplies every entry by `p^k` exactly.
    pub fn shift(&self, k: i64) -> Self {
        self.map(|x| x.shift(k))
    }

    pub fn lift_to(&self, prec: i64) -> Self {
        self.map(|x| x.lift_to(prec))
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(PadicError::ShapeMismatch("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.ctx, self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ctx, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn submatrix(&self, rows: Range<usize>, cols: Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(self.ctx, rows.len(), cols.len(), |i, j| {
            self[(r0 + i, c0 + j)].clone()
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.ctx, idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.ctx, self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(PadicError::ShapeMismatch("stacking rows of different widths".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            ctx: self.ctx,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn diagonal(&self) -> Vec<PadicScalar> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn trace(&self) -> PadicScalar {
        self.diagonal()
            .iter()
            .fold(PadicScalar::zero(self.p(), EXACT), |acc, x| &acc + x)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        self.swap_cols_in(a, b, 0..self.rows);
    }

    pub fn swap_rows_in(&mut self, a: usize, b: usize, cols: Range<usize>) {
        if a != b {
            for j in cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols_in(&mut self, a: usize, b: usize, rows: Range<usize>) {
        if a != b {
            for i in rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += c * row[src]` on the given columns.
    pub fn add_row_multiple(&mut self, target: usize, src: usize, c: &PadicScalar, cols: Range<usize>) {
        debug_assert_ne!(target, src);
        for j in cols {
            let t = &self.data[src * self.cols + j] * c;
            let x = &mut self.data[target * self.cols + j];
            *x = &*x + &t;
        }
    }

    /// `col[target] += c * col[src]` on the given rows.
    pub fn add_col_multiple(&mut self, target: usize, src: usize, c: &PadicScalar, rows: Range<usize>) {
        debug_assert_ne!(target, src);
        for i in rows {
            let t = &self.data[i * self.cols + src] * c;
            let x = &mut self.data[i * self.cols + target];
            *x = &*x + &t;
        }
    }

    /// `A == B + O(p^n)`. Errors when some entry of `A - B` is not known to
    /// precision `n` and no known digit already differs.
    pub fn eq_mod(&self, other: &Self, n: i64) -> Result<bool> {
        self.check_same_shape(other, "comparison")?;
        let mut undecided = None;
        for (idx, (a, b)) in self.data.iter().zip(&other.data).enumerate() {
            let d = a - b;
            match d.valuation() {
                Some(v) if v < n => return Ok(false),
                Some(_) => {}
                None if d.prec() < n => undecided = Some((idx, d.prec())),
                None => {}
            }
        }
        match undecided {
            Some((idx, prec)) => Err(PadicError::InsufficientPrecision(format!(
                "entry ({}, {}) is only known to O({}^{prec}), comparison asked for O({}^{n})",
                idx / self.cols,
                idx % self.cols,
                self.p(),
                self.p()
            ))),
            None => Ok(true),
        }
    }

    /// Reduction mod p; fails if an entry is not known to be integral.
    pub fn mod_p(&self) -> Result<FpMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| {
                x.residue().ok_or_else(|| {
                    PadicError::InsufficientPrecision(format!("entry {x} has no residue mod p"))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(FpMatrix::from_vec(self.p(), self.rows, self.cols, data))
    }

    /// `||A|| <= 1` and `A mod p` invertible, i.e. `A` lies in `GL_n(Z_p)`.
    pub fn is_in_gl_zp(&self) -> bool {
        self.is_square()
            && self.is_integral()
            && self.mod_p().is_ok_and(|m| m.det() != 0)
    }

    /// Every entry strictly below the first subdiagonal is a zero ball.
    pub fn is_upper_hessenberg(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i <= j + 1 || self[(i, j)].is_zero_ball()))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self[(i, j)].is_zero_ball()))
    }

    /// Entries `i > j` of row `i` below the diagonal blocks given by `sizes`
    /// are zero balls.
    pub fn is_block_upper_triangular(&self, sizes: &[usize]) -> bool {
        let mut start = 0;
        for &s in sizes {
            let end = start + s;
            for i in end..self.rows {
                for j in start..end {
                    if !self[(i, j)].is_zero_ball() {
                        return false;
                    }
                }
            }
            start = end;
        }
        true
    }
}

impl std::ops::Index<(usize, usize)> for PadicMatrix {
    type Output = PadicScalar;
    fn index(&self, (i, j): (usize, usize)) -> &PadicScalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PadicMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut PadicScalar {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for PadicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(PadicScalar::to_token).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Uniform integer in `[0, p^prec)` drawn digit by digit.
pub fn random_integer(rng: &mut impl RngCore, p: u32, prec: i64) -> BigInt {
    let mut x = BigInt::from(0);
    for k in 0..prec {
        let d = rng.gen_range(0..p);
        if d != 0 {
            x += pow_p(p, k).as_ref() * d;
        }
    }
    x
}

pub fn random_matrix_with(ctx: PadicContext, rows: usize, cols: usize, rng: &mut impl RngCore) -> PadicMatrix {
    PadicMatrix::from_fn(ctx, rows, cols, |_, _| {
        PadicScalar::from_bigint(ctx.p(), random_integer(rng, ctx.p(), ctx.prec()), ctx.prec())
    })
}

/// `n x n` matrix of uniform integers in `[0, p^N)` at precision `N`,
/// deterministic in `seed`.
pub fn random_matrix(ctx: PadicContext, n: usize, seed: u64) -> PadicMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_matrix_with(ctx, n, n, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ctx(p: u32, n: i64) -> PadicContext {
        PadicContext::new(p, n).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let c = ctx(7, 8);
        let a = random_matrix(c, 4, 1);
        assert_eq!(PadicMatrix::identity(c, 4).mul(&a).unwrap(), a);
        assert_eq!(a.mul(&PadicMatrix::identity(c, 4)).unwrap(), a);
    }

    #[test]
    fn product_with_zero_balls() {
        let c = ctx(5, 6);
        let a = PadicMatrix::from_ints(c, &[vec![5, 1], vec![0, 25]]);
        let z = PadicMatrix::zeros(c, 2, 2);
        let r = a.mul(&z).unwrap();
        assert!(r.entries().iter().all(PadicScalar::is_zero_ball));
        // row 0 meets the unit entry 1, row 1 only p and p^2
        assert_eq!(r[(0, 0)].prec(), 6);
        assert_eq!(r[(1, 1)].prec(), 8);
    }

    #[test]
    fn integer_product_matches_exact_oracle() {
        let c = ctx(3, 8);
        let a = [[17i64, -4], [9, 250]];
        let b = [[2i64, 33], [-81, 7]];
        let pa = PadicMatrix::from_ints(c, &a.map(|r| r.to_vec()));
        let pb = PadicMatrix::from_ints(c, &b.map(|r| r.to_vec()));
        let prod = pa.mul(&pb).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = a[i][0] * b[0][j] + a[i][1] * b[1][j];
                let modulus = 3i64.pow(8);
                assert_eq!(
                    prod[(i, j)].residue_mod_pk(8).unwrap(),
                    BigInt::from(want.rem_euclid(modulus))
                );
            }
        }
    }

    #[test]
    fn eq_mod_sees_ball_semantics() {
        let p = 5;
        let c = ctx(p, 10);
        let q = p as i64;
        let a = PadicMatrix::from_ints(c, &[vec![q.pow(3), q.pow(2)], vec![0, -q.pow(3)]]);
        let e = PadicMatrix::from_ints(c, &[vec![q.pow(6), 0], vec![0, q.pow(6)]]);
        assert!(a.eq_mod(&a, 10).unwrap());
        assert!(a.eq_mod(&a.add(&e).unwrap(), 6).unwrap());
        assert!(!a.eq_mod(&a.add(&e).unwrap(), 7).unwrap());
        let low = PadicMatrix::from_ints(c.with_prec(4), &[vec![0, 0], vec![0, 0]]);
        assert!(matches!(
            PadicMatrix::zeros(c, 2, 2).eq_mod(&low, 6),
            Err(PadicError::InsufficientPrecision(_))
        ));
    }

    #[test]
    fn norms() {
        use num_rational::BigRational;
        let c = ctx(7, 5);
        let one = BigRational::from_integer(1.into());
        assert_eq!(PadicMatrix::identity(c, 3).norm(), Norm::Exact(one.clone()));
        assert_eq!(PadicMatrix::from_ints(c, &[vec![7, 1], vec![0, 0]]).norm(), Norm::Exact(one));
        assert_eq!(
            PadicMatrix::from_ints(c, &[vec![7, 0], vec![0, 7]]).norm(),
            Norm::Exact(BigRational::new(1.into(), 7.into()))
        );
    }

    #[test]
    fn random_matrices_are_reproducible() {
        let c = ctx(41, 20);
        assert_eq!(random_matrix(c, 5, 9), random_matrix(c, 5, 9));
        assert_ne!(random_matrix(c, 5, 9), random_matrix(c, 5, 10));
        assert_eq!(random_matrix(c, 0, 3).rows(), 0);
        let m = random_matrix(c, 3, 1);
        assert!(m.entries().iter().all(|x| x.prec() == 20 && x.val_lower_bound() >= 0));
    }

    #[test]
    fn first_digits_are_uniform() {
        let p = 7u32;
        let c = ctx(p, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let m = random_matrix_with(c, 100, 100, &mut rng);
        let mut counts = [0f64; 7];
        for x in m.entries() {
            counts[x.residue().unwrap() as usize] += 1.0;
        }
        let n = 10_000f64;
        let expect = n / p as f64;
        let sigma = (n * (1.0 / 7.0) * (6.0 / 7.0)).sqrt();
        for c in counts {
            assert!((c - expect).abs() < 5.0 * sigma, "{counts:?}");
        }
    }
}
