//! Univariate polynomials over Z_p with per-coefficient precision.

use std::fmt;

use super::scalar::{PadicScalar, EXACT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicPoly {
    p: u32,
    coeffs: Vec<PadicScalar>,
    monic: bool,
}

impl PadicPoly {
    /// Coefficients indexed by degree. Trailing exact zeros are dropped.
    pub fn new(p: u32, coeffs: Vec<PadicScalar>) -> Self {
        let mut coeffs = coeffs;
        while coeffs
            .last()
            .is_some_and(|c| c.is_zero_ball() && c.is_exact())
        {
            coeffs.pop();
        }
        let monic = coeffs
            .last()
            .is_some_and(|c| c.is_exact() && *c == PadicScalar::exact_int(p, 1));
        Self { p, coeffs, monic }
    }

    /// `t^d + lower[d-1] t^(d-1) + ... + lower[0]` with an exact leading 1.
    pub fn monic_from_lower(p: u32, lower: Vec<PadicScalar>) -> Self {
        let mut coeffs = lower;
        coeffs.push(PadicScalar::exact_int(p, 1));
        Self::new(p, coeffs)
    }

    /// `prod (t - r)`.
    pub fn from_roots(p: u32, roots: &[PadicScalar]) -> Self {
        let mut f = Self::monic_from_lower(p, vec![]);
        for r in roots {
            f = f.mul(&Self::monic_from_lower(p, vec![-r]));
        }
        f
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn is_monic(&self) -> bool {
        self.monic
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[PadicScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> PadicScalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| PadicScalar::zero(self.p, EXACT))
    }

    pub fn eval(&self, x: &PadicScalar) -> PadicScalar {
        let mut acc = PadicScalar::zero(self.p, EXACT);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &PadicScalar::exact_int(self.p, i as i64))
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.p,
            (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.p,
            (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(self.p, vec![]);
        }
        let mut out = vec![PadicScalar::zero(self.p, EXACT); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.p, out)
    }

    /// Smallest valuation lower bound among coefficients, i.e. `-log_p ||f||`.
    pub fn norm_exponent(&self) -> i64 {
        self.coeffs
            .iter()
            .map(PadicScalar::val_lower_bound)
            .min()
            .unwrap_or(EXACT)
    }

    /// Smallest absolute precision among the coefficients.
    pub fn flat_precision(&self) -> i64 {
        self.coeffs.iter().map(PadicScalar::prec).min().unwrap_or(EXACT)
    }

    /// Coefficients reduced mod p (requires integral coefficients).
    pub fn residues(&self) -> Option<Vec<u32>> {
        self.coeffs.iter().map(PadicScalar::residue).collect()
    }

    /// Re-expresses every coefficient at precision `prec`.
    pub fn lift_to(&self, prec: i64) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .map(|c| if c.is_exact() { c.clone() } else { c.lift_to(prec) })
                .collect(),
        )
    }
}

impl fmt::Display for PadicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{i}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}
