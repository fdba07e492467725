//! Linear algebra over the residue field F_p.

pub mod fp;
pub mod hensel;
pub mod roots;
pub mod schur;

pub use fp::{FpMatrix, FpPoly};
pub use hensel::hensel_factor_oracle;
pub use roots::{roots_mod_p, Roots};
pub use schur::{block_schur_mod_p, FpBlock, FpSchur};

use fp::inv_mod;

/// Reduces to Hessenberg form by similarity over F_p.
pub fn hessenberg_mod_p(m: &FpMatrix) -> FpMatrix {
    assert!(m.is_square(), "charpoly of a non-square matrix");
    let n = m.rows();
    let p = m.p();
    let mut h = m.clone();
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h.get(i, j) != 0) else {
            continue;
        };
        if piv != j + 1 {
            h.swap_rows(piv, j + 1);
            for r in 0..n {
                let (a, b) = (h.get(r, piv), h.get(r, j + 1));
                h.set(r, piv, b);
                h.set(r, j + 1, a);
            }
        }
        let inv = inv_mod(h.get(j + 1, j), p);
        for i in j + 2..n {
            let f = (h.get(i, j) as u64 * inv as u64 % p as u64) as u32;
            if f == 0 {
                continue;
            }
            for c in 0..n {
                let x = (h.get(i, c) as u64 + (p - f) as u64 * h.get(j + 1, c) as u64) % p as u64;
                h.set(i, c, x as u32);
            }
            for r in 0..n {
                let x = (h.get(r, j + 1) as u64 + f as u64 * h.get(r, i) as u64) % p as u64;
                h.set(r, j + 1, x as u32);
            }
        }
    }
    h
}

/// Characteristic polynomial `det(tI - M)` via Hessenberg reduction and the
/// subdiagonal recurrence.
pub fn charpoly_mod_p(m: &FpMatrix) -> FpPoly {
    let p = m.p();
    let h = hessenberg_mod_p(m);
    let n = h.rows();
    let mut polys = vec![FpPoly::one(p)];
    for k in 1..=n {
        let mut next = FpPoly::linear(p, h.get(k - 1, k - 1)).mul(&polys[k - 1]);
        let mut prod = 1u32;
        for i in (0..k - 1).rev() {
            prod = (prod as u64 * h.get(i + 1, i) as u64 % p as u64) as u32;
            if prod == 0 {
                break;
            }
            let c = (h.get(i, k - 1) as u64 * prod as u64 % p as u64) as u32;
            next = next.sub(&polys[i].scale(c));
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    // det(tI - M) by cofactor expansion along the first row, entries in F_p[t].
    fn cofactor_charpoly(m: &FpMatrix) -> FpPoly {
        let p = m.p();
        let n = m.rows();
        let entries: Vec<Vec<FpPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = FpPoly::new(p, vec![(p - m.get(i, j)) % p]);
                        if i == j {
                            c.add(&FpPoly::new(p, vec![0, 1]))
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        fn det(a: &[Vec<FpPoly>], p: u32) -> FpPoly {
            if a.is_empty() {
                return FpPoly::one(p);
            }
            let mut acc = FpPoly::zero(p);
            for j in 0..a.len() {
                let minor: Vec<Vec<FpPoly>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = a[0][j].mul(&det(&minor, p));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
        det(&entries, p)
    }

    #[test]
    fn zero_matrix() {
        let f = charpoly_mod_p(&FpMatrix::zeros(5, 4, 4));
        assert_eq!(f, FpPoly::new(5, vec![0, 0, 0, 0, 1]));
    }

    #[test]
    fn diagonal() {
        let m = FpMatrix::from_rows(7, &[vec![1, 0], vec![0, 2]]);
        assert_eq!(charpoly_mod_p(&m), FpPoly::from_roots(7, &[(1, 1), (2, 1)]));
    }

    #[test]
    fn matches_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for &p in &[2u32, 3, 7, 41] {
            for n in 1..=6 {
                for _ in 0..5 {
                    let data = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
                    let m = FpMatrix::from_vec(p, n, n, data);
                    assert_eq!(charpoly_mod_p(&m), cofactor_charpoly(&m), "{m}");
                }
            }
        }
    }
}
