use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use padic_schur::bench::instances::random_gl;
use padic_schur::decomp::{
    charpoly, pnumerical_left_kernel, qr_factor, qr_round_hessenberg, row_span_contains, same_row_span, smith_svd,
};
use padic_schur::eigen::{block_schur, gze_tracked, verify_similarity};
use padic_schur::matrix::{random_integer, random_matrix_with, PadicMatrix};
use padic_schur::residue::schur::is_sorted_shape;
use padic_schur::residue::{block_schur_mod_p, charpoly_mod_p, hensel_factor_oracle, roots_mod_p, FpMatrix, FpPoly};
use padic_schur::{PadicContext, PadicScalar};

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn nonzero_scalar() -> impl Strategy<Value = PadicScalar> {
    (0..PRIMES.len(), -3i64..6, 1u64..1_000_000, 1i64..12).prop_map(|(pi, val, raw, rel)| {
        let p = PRIMES[pi];
        let raw = if raw % u64::from(p) == 0 { raw + 1 } else { raw };
        PadicScalar::from_parts(p, val, raw.into(), val + rel)
    })
}

fn same_prime_pair() -> impl Strategy<Value = (PadicScalar, PadicScalar)> {
    (nonzero_scalar(), -3i64..6, 1u64..1_000_000, 1i64..12).prop_map(|(a, val, raw, rel)| {
        let p = a.p();
        let raw = if raw % u64::from(p) == 0 { raw + 1 } else { raw };
        (a, PadicScalar::from_parts(p, val, raw.into(), val + rel))
    })
}

fn ctx(p: u32, n: i64) -> PadicContext {
    PadicContext::new(p, n).unwrap()
}

fn random_fp(p: u32, n: usize, rng: &mut impl Rng) -> FpMatrix {
    FpMatrix::from_vec(p, n, n, (0..n * n).map(|_| rng.gen_range(0..p)).collect())
}

fn random_hessenberg(c: PadicContext, n: usize, rng: &mut impl Rng) -> PadicMatrix {
    let m = random_matrix_with(c, n, n, rng);
    PadicMatrix::from_fn(c, n, n, |i, j| if i > j + 1 { c.zero() } else { m[(i, j)].clone() })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn valuation_is_additive((a, b) in same_prime_pair()) {
        prop_assert_eq!((&a * &b).valuation(), Some(a.valuation().unwrap() + b.valuation().unwrap()));
    }

    #[test]
    fn ultrametric_inequality((a, b) in same_prime_pair()) {
        let (va, vb) = (a.valuation().unwrap(), b.valuation().unwrap());
        let s = &a + &b;
        prop_assert!(s.val_lower_bound() >= va.min(vb));
        if va != vb {
            prop_assert_eq!(s.valuation(), Some(va.min(vb)));
        }
    }

    #[test]
    fn additive_precision_is_the_minimum((a, b) in same_prime_pair()) {
        prop_assert_eq!((&a + &b).prec(), a.prec().min(b.prec()));
        prop_assert_eq!((&a - &b).prec(), a.prec().min(b.prec()));
    }

    #[test]
    fn multiplicative_relative_precision_is_the_minimum((a, b) in same_prime_pair()) {
        let want = a.rel_prec().unwrap().min(b.rel_prec().unwrap());
        prop_assert_eq!((&a * &b).rel_prec(), Some(want));
        prop_assert_eq!(a.div(&b).unwrap().rel_prec(), Some(want));
    }

    #[test]
    fn division_undoes_multiplication((a, b) in same_prime_pair()) {
        let back = (&a * &b).div(&b).unwrap();
        let rel = a.rel_prec().unwrap().min(b.rel_prec().unwrap());
        prop_assert_eq!(back.prec(), a.valuation().unwrap() + rel);
        let diff = &back - &a;
        prop_assert!(diff.val_lower_bound() >= back.prec());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn norm_is_submultiplicative(pi in 0..PRIMES.len(), n in 1usize..5, seed in any::<u64>()) {
        let c = ctx(PRIMES[pi], 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_matrix_with(c, n, n, &mut rng).shift(rng.gen_range(0..3));
        let b = random_matrix_with(c, n, n, &mut rng).shift(rng.gen_range(0..3));
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.norm_exponent().0 >= a.norm_exponent().0 + b.norm_exponent().0);
        prop_assert_eq!(a.add(&b).unwrap().flat_precision(), a.flat_precision().min(b.flat_precision()));
    }

    #[test]
    fn residue_charpoly_is_a_similarity_invariant(pi in 0..PRIMES.len(), n in 1usize..7, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_fp(p, n, &mut rng);
        let u = loop {
            let u = random_fp(p, n, &mut rng);
            if u.det() != 0 {
                break u;
            }
        };
        let conj = u.mul(&m).mul(&u.inverse().unwrap());
        prop_assert_eq!(charpoly_mod_p(&conj), charpoly_mod_p(&m));
    }

    #[test]
    fn residue_block_schur_is_sorted(pi in 0..PRIMES.len(), n in 1usize..8, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_fp(p, n, &mut rng);
        let s = block_schur_mod_p(&m);
        prop_assert!(is_sorted_shape(&s.t, &s.blocks));
        prop_assert_eq!(s.t.mul(&s.u), s.u.mul(&m));
        prop_assert_eq!(s.blocks.iter().map(|b| b.size).sum::<usize>(), n);
    }

    #[test]
    fn hensel_lift_reproduces_the_polynomial(pi in 0..PRIMES.len(), n in 2usize..7, k in 1i64..10, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix_with(ctx(p, 12), n, n, &mut rng);
        let chi = charpoly(&m).unwrap();
        let chibar = FpPoly::new(p, chi.residues().unwrap());
        let roots = roots_mod_p(&chibar);
        prop_assume!(!roots.roots.is_empty() && roots.roots[0].1 < n);
        let g = FpPoly::from_roots(p, &[roots.roots[0]]);
        let f = chibar.div_rem(&g).0;
        let (ff, gg) = hensel_factor_oracle(&chi, &f, &g, k).unwrap();
        prop_assert!(ff.mul(&gg).sub(&chi).norm_exponent() >= k);
        prop_assert_eq!(FpPoly::new(p, ff.residues().unwrap()), f.clone());
        prop_assert_eq!(FpPoly::new(p, gg.residues().unwrap()), g.clone());
        let (f2, g2) = hensel_factor_oracle(&ff.mul(&gg), &f, &g, k).unwrap();
        prop_assert!(f2.sub(&ff).norm_exponent() >= k && g2.sub(&gg).norm_exponent() >= k);
    }

    #[test]
    fn qr_factor_reconstructs(pi in 0..PRIMES.len(), rows in 1usize..6, cols in 1usize..6, strict: bool, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix_with(ctx(p, 8), rows, cols, &mut rng);
        let f = qr_factor(&m, strict).unwrap();
        prop_assert!(f.reconstruct().unwrap().eq_mod(&m, 8).unwrap());
        prop_assert!(f.q.is_in_gl_zp());
        prop_assert!(charpoly_mod_p(&f.q.mod_p().unwrap()).coeff(0) != 0);
    }

    #[test]
    fn smith_reconstructs_and_singular_norms_are_invariant(pi in 0..PRIMES.len(), n in 1usize..6, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let c = ctx(p, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix_with(c, n, n, &mut rng).shift(rng.gen_range(0..2));
        let s = smith_svd(&m).unwrap();
        prop_assert!(s.reconstruct().unwrap().eq_mod(&m, 8).unwrap());
        let u = random_gl(c, n, &mut rng);
        let v = random_gl(c, n, &mut rng);
        let s2 = smith_svd(&u.mul(&m).unwrap().mul(&v).unwrap()).unwrap();
        let key = |x: &PadicScalar| x.valuation();
        prop_assert_eq!(
            s.singular_values.iter().map(key).collect::<Vec<_>>(),
            s2.singular_values.iter().map(key).collect::<Vec<_>>()
        );
    }

    #[test]
    fn qr_rounds_keep_shape_and_residue_charpoly(pi in 0..PRIMES.len(), n in 1usize..7, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let c = ctx(p, 10);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut h = random_hessenberg(c, n, &mut rng);
        let chi = charpoly_mod_p(&h.mod_p().unwrap());
        let mut v = PadicMatrix::identity(c, n);
        let h0 = h.clone();
        for _ in 0..4 {
            let mu = c.big(&random_integer(&mut rng, p, 10));
            let (h2, v2) = qr_round_hessenberg(&h, &mu, &v).unwrap();
            prop_assert!(h2.is_upper_hessenberg());
            prop_assert_eq!(charpoly_mod_p(&h2.mod_p().unwrap()), chi.clone());
            h = h2;
            v = v2;
        }
        prop_assert!(v.is_in_gl_zp());
        prop_assert!(h.mul(&v).unwrap().eq_mod(&v.mul(&h0).unwrap(), 10).unwrap());
    }

    #[test]
    fn kernel_contains_exact_kernel(pi in 0..PRIMES.len(), n in 2usize..6, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let c = ctx(p, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // last row is an integer combination of the others, so x = (a, -1) is a left kernel vector
        let mut m = random_matrix_with(c, n, n, &mut rng);
        let a: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-5..=5)).collect();
        for j in 0..n {
            let mut s = c.zero();
            for (i, &ai) in a.iter().enumerate() {
                s = &s + &(&m[(i, j)] * &c.int(ai));
            }
            m[(n - 1, j)] = s;
        }
        let mut x: Vec<i64> = a.clone();
        x.push(-1);
        let x = PadicMatrix::from_ints(c, &[x]);
        prop_assert!(x.mul(&m).unwrap().eq_mod(&PadicMatrix::zeros(c, 1, n), 8).unwrap());
        let k = pnumerical_left_kernel(&m, 8).unwrap();
        // kernel vectors are only determined modulo p^N over the smallest
        // nonzero singular value
        let svd = smith_svd(&m).unwrap();
        let gap = svd.singular_values.iter().filter_map(PadicScalar::valuation).filter(|&v| v < 8).max().unwrap_or(0);
        let prec = k.flat_precision().min(8 - gap);
        prop_assert!(row_span_contains(&k, &x, prec).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn block_schur_is_a_verified_similarity(pi in 0..PRIMES.len(), n in 1usize..7, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_matrix_with(ctx(p, 10), n, n, &mut rng);
        let r = block_schur(&m).unwrap();
        prop_assert!(verify_similarity(&m, &r.u, &r.t, 10).unwrap());
        prop_assert!(r.t.is_block_upper_triangular(&r.blocks));
    }

    #[test]
    fn tracked_gze_matches_the_kernel_of_a_power(n in 2usize..7, seed in any::<u64>()) {
        let c = ctx(5, 6);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = rng.gen_range(1..n);
        let m = padic_schur::bench::instances::nilpotent_block(c, n, b, &mut rng).unwrap();
        let g = gze_tracked(&m, &smith_svd(&m).unwrap()).unwrap();
        prop_assume!(g.precision > 0);
        let k = pnumerical_left_kernel(&m.pow(n as u32).unwrap(), g.precision).unwrap();
        prop_assert!(same_row_span(&g.rows, &k, g.precision).unwrap());
    }

    /// When the small factor of the characteristic polynomial is within
    /// `|eps|` of `t^m`, a batch of `m` unshifted rounds squares `eps`.
    #[test]
    fn batches_square_the_subdiagonal(pi in 1..PRIMES.len(), na in 1usize..4, m in 1usize..4, k in 1i64..6, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let prec = 40;
        let c = ctx(p, prec);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = na + m;
        let pk = c.int(1).shift(k);
        let h = loop {
            let h = PadicMatrix::from_fn(c, n, n, |i, j| {
                let x = c.big(&random_integer(&mut rng, p, prec));
                if i > j + 1 || (i >= na && j < na - 1) {
                    c.zero()
                } else if i == na && j == na - 1 {
                    let u = if x.is_p_unit() { x } else { &x + &c.int(1) };
                    if u.is_p_unit() { &u * &pk } else { pk.clone() }
                } else if i >= na && i == j + 1 {
                    if x.is_p_unit() { x } else { c.int(1) }
                } else if i >= na {
                    &x * &pk
                } else {
                    x
                }
            });
            if h.submatrix(0..na, 0..na).mod_p().unwrap().det() != 0 {
                break h.lift_to(prec);
            }
        };
        let chi = charpoly(&h).unwrap();
        let chibar = FpPoly::new(p, chi.residues().unwrap());
        let mut tm = vec![0; m + 1];
        tm[m] = 1;
        let g = FpPoly::new(p, tm);
        let f = chibar.div_rem(&g).0;
        let (_, small) = hensel_factor_oracle(&chi, &f, &g, k).unwrap();
        let mut t_m = vec![PadicScalar::zero(p, prec); m];
        t_m.push(c.int(1));
        prop_assume!(small.sub(&padic_schur::PadicPoly::new(p, t_m)).norm_exponent() >= k);

        let eps = h[(na, na - 1)].valuation().unwrap();
        let v = PadicMatrix::identity(c, n);
        let mut t = h;
        for _ in 0..m {
            t = qr_round_hessenberg(&t, &c.zero(), &v).unwrap().0;
        }
        let after = &t[(na, na - 1)];
        prop_assert!(after.val_lower_bound() >= 2 * eps, "v(eps) {} -> {:?}", eps, after.valuation());
    }
}
