//! Lifting a coprime factorization of a monic polynomial from F_p to Z/p^k.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::fp::FpPoly;
use crate::error::{PadicError, Result};
use crate::padic::{PadicPoly, PadicScalar};

fn lift_fp(f: &FpPoly) -> Vec<BigInt> {
    f.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

fn mul_int(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out.iter().map(|c| c.mod_floor(m)).collect()
}

fn to_fp(p: u32, v: &[BigInt]) -> FpPoly {
    let pb = BigInt::from(p);
    FpPoly::new(
        p,
        v.iter()
            .map(|c| u32::try_from(c.mod_floor(&pb)).unwrap())
            .collect(),
    )
}

/// Monic `F, G` with `F G = chi + O(p^k)`, `F = fbar` and `G = gbar` mod p.
pub fn hensel_factor_oracle(
    chi: &PadicPoly,
    fbar: &FpPoly,
    gbar: &FpPoly,
    k: i64,
) -> Result<(PadicPoly, PadicPoly)> {
    let p = chi.p();
    if k < 1 {
        return Err(PadicError::InvalidArgument("lifting precision must be positive".into()));
    }
    let pk = BigInt::from(p).pow(k as u32);
    let target: Vec<BigInt> = chi
        .coeffs()
        .iter()
        .map(|c| {
            c.residue_mod_pk(k).ok_or_else(|| {
                PadicError::InsufficientPrecision(format!(
                    "coefficient {c} is not known modulo {p}^{k}"
                ))
            })
        })
        .collect::<Result<_>>()?;
    if target.last().map(|c| (c - 1u32).mod_floor(&pk).is_zero()) != Some(true) {
        return Err(PadicError::InvalidArgument("polynomial is not monic".into()));
    }
    if fbar.lead() != 1 || gbar.lead() != 1 {
        return Err(PadicError::InvalidArgument("factors must be monic".into()));
    }
    if fbar.mul(gbar) != to_fp(p, &target) {
        return Err(PadicError::InvalidArgument(
            "factors do not multiply to the polynomial mod p".into(),
        ));
    }
    let (d, _, t) = fbar.ext_gcd(gbar);
    if d != FpPoly::one(p) {
        return Err(PadicError::NotCoprime);
    }
    let df = fbar.degree().unwrap();
    let dg = gbar.degree().unwrap();
    let mut f = lift_fp(fbar);
    let mut g = lift_fp(gbar);
    let mut pj = BigInt::from(p);
    for _ in 1..k {
        let prod = mul_int(&f, &g, &pk);
        let err: Vec<BigInt> = (0..target.len())
            .map(|i| {
                let pi = prod.get(i).cloned().unwrap_or_default();
                (&target[i] - pi).mod_floor(&pk) / &pj
            })
            .collect();
        let e = to_fp(p, &err);
        let a = e.mul(&t).rem(fbar);
        let (b, r) = e.sub(&a.mul(gbar)).div_rem(fbar);
        debug_assert!(r.is_zero());
        for (i, c) in a.coeffs().iter().enumerate() {
            f[i] = (&f[i] + &pj * c).mod_floor(&pk);
        }
        for (i, c) in b.coeffs().iter().enumerate() {
            g[i] = (&g[i] + &pj * c).mod_floor(&pk);
        }
        debug_assert!(a.degree().is_none_or(|d| d < df));
        debug_assert!(b.degree().is_none_or(|d| d < dg));
        pj *= p;
    }
    let build = |v: Vec<BigInt>| {
        let deg = v.len() - 1;
        let lower = v
            .into_iter()
            .take(deg)
            .map(|c| PadicScalar::from_bigint(p, c, k))
            .collect();
        PadicPoly::monic_from_lower(p, lower)
    };
    Ok((build(f), build(g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_poly(p: u32, c: &[i64]) -> PadicPoly {
        PadicPoly::new(p, c.iter().map(|&x| PadicScalar::exact_int(p, x)).collect())
    }

    #[test]
    fn separates_unit_root_from_small_root() {
        let p = 5;
        let k = 12;
        // (t - 1)(t - p)
        let chi = exact_poly(p as u32, &[p, -(p + 1), 1]);
        let (f, g) = hensel_factor_oracle(
            &chi,
            &FpPoly::linear(p as u32, 1),
            &FpPoly::new(p as u32, vec![0, 1]),
            k,
        )
        .unwrap();
        let neg = |x: i64| PadicScalar::from_int(p as u32, -x, k);
        assert_eq!(f.coeff(0), neg(1));
        assert_eq!(g.coeff(0), neg(p));
    }

    #[test]
    fn rejects_common_factors() {
        let p = 7;
        let chi = exact_poly(p, &[0, 0, 1]);
        let t = FpPoly::new(p, vec![0, 1]);
        assert_eq!(
            hensel_factor_oracle(&chi, &t, &t, 3).unwrap_err(),
            PadicError::NotCoprime
        );
    }
}
