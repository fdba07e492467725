//! Roots of polynomials over F_p with multiplicities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fp::FpPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Roots {
    /// Distinct roots in ascending order with their multiplicities.
    pub roots: Vec<(u32, usize)>,
    /// Total degree of the factors with no root in F_p.
    pub remaining_degree: usize,
}

impl Roots {
    pub fn multiplicity(&self, lambda: u32) -> usize {
        self.roots
            .iter()
            .find(|&&(r, _)| r == lambda)
            .map_or(0, |&(_, m)| m)
    }

    pub fn is_split(&self) -> bool {
        self.remaining_degree == 0
    }

    pub fn is_square_free_split(&self) -> bool {
        self.is_split() && self.roots.iter().all(|&(_, m)| m == 1)
    }
}

const SCAN_LIMIT: u32 = 1 << 16;

pub fn roots_mod_p(f: &FpPoly) -> Roots {
    let p = f.p();
    let Some(deg) = f.degree() else {
        return Roots {
            roots: vec![],
            remaining_degree: 0,
        };
    };
    let mut distinct = if p < SCAN_LIMIT {
        (0..p).filter(|&x| f.eval(x) == 0).collect()
    } else {
        split_roots(f)
    };
    distinct.sort_unstable();
    let mut rest = f.clone();
    let mut roots = Vec::with_capacity(distinct.len());
    for r in distinct {
        let lin = FpPoly::linear(p, r);
        let mut m = 0;
        loop {
            let (q, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            m += 1;
        }
        roots.push((r, m));
    }
    let found: usize = roots.iter().map(|&(_, m)| m).sum();
    Roots {
        roots,
        remaining_degree: deg - found,
    }
}

// gcd with t^p - t isolates the distinct linear factors; Cantor-Zassenhaus
// splits them.
fn split_roots(f: &FpPoly) -> Vec<u32> {
    let p = f.p();
    let t = FpPoly::new(p, vec![0, 1]);
    let tp = t.pow_mod(p as u64, f);
    let g = f.gcd(&tp.sub(&t));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    let mut stack = vec![g];
    while let Some(g) = stack.pop() {
        match g.degree() {
            None | Some(0) => {}
            Some(1) => {
                let g = g.monic();
                out.push((p - g.coeff(0)) % p);
            }
            Some(_) => loop {
                let a = rng.gen_range(0..p);
                let shifted = FpPoly::new(p, vec![a, 1]);
                let h = shifted
                    .pow_mod((p as u64 - 1) / 2, &g)
                    .sub(&FpPoly::one(p));
                let d = g.gcd(&h);
                let dd = d.degree().unwrap_or(0);
                if dd > 0 && dd < g.degree().unwrap() {
                    let (q, _) = g.div_rem(&d);
                    stack.push(d);
                    stack.push(q);
                    break;
                }
            },
        }
    }
    out
}
