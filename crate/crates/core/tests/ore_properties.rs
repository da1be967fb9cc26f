mod common;

use common::*;
use num_bigint::BigInt;
use orelab_core::ore::{
    left_form, ore_mul, q_binomial, q_leibniz, right_form, sigma_star, sigma_star_inverse,
    word_expansion, GaussianTable, OreContext, OrePoly,
};
use orelab_core::{seed, Elem, RingSpec};
use proptest::prelude::*;

fn mul(f: &OrePoly, g: &OrePoly) -> OrePoly {
    ore_mul(f, g).unwrap()
}

fn all_contexts() -> Vec<(OreContext, usize)> {
    vec![
        (quantum_plane(), 3),
        (rational_plane(), 2),
        (char3_derivative(), 3),
        (f4_frobenius(), 3),
        (shift_ring(), 3),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplication_is_associative_and_distributive(s in any::<u64>()) {
        let mut rng = seed::rng(s);
        for (ctx, deg) in all_contexts() {
            let f = ctx.random(&mut rng, deg);
            let g = ctx.random(&mut rng, deg);
            let h = ctx.random(&mut rng, deg);
            prop_assert_eq!(mul(&mul(&f, &g), &h), mul(&f, &mul(&g, &h)));
            prop_assert_eq!(mul(&f, &g.add(&h).unwrap()), mul(&f, &g).add(&mul(&f, &h)).unwrap());
            prop_assert_eq!(mul(&f.add(&g).unwrap(), &h), mul(&f, &h).add(&mul(&g, &h)).unwrap());
        }
    }

    #[test]
    fn q_leibniz_matches_products_and_words(s in any::<u64>(), k in 0usize..=10) {
        let mut rng = seed::rng(s);
        let ctx = quantum_plane();
        let r = ctx.ring().random(&mut rng);
        let by_formula = q_leibniz(k, &r, &ctx).unwrap();
        let by_product = mul(&ctx.x_pow(k).unwrap(), &ctx.constant(r.clone()));
        let by_words = word_expansion(k, &r, &ctx).unwrap();
        prop_assert_eq!(&by_formula, &by_product);
        prop_assert_eq!(&by_formula, &by_words);
    }

    #[test]
    fn q_leibniz_over_the_rationals(s in any::<u64>(), k in 0usize..=6) {
        let mut rng = seed::rng(s);
        let ctx = rational_plane();
        let r = ctx.ring().random(&mut rng);
        prop_assert_eq!(q_leibniz(k, &r, &ctx).unwrap(), mul(&ctx.x_pow(k).unwrap(), &ctx.constant(r)));
    }

    #[test]
    fn words_match_products_without_q(s in any::<u64>(), k in 0usize..=10) {
        let mut rng = seed::rng(s);
        for ctx in [char3_derivative(), f4_frobenius(), shift_ring()] {
            let r = ctx.ring().random(&mut rng);
            let expected = ctx.constant(r.clone());
            let mut by_x_times = expected;
            for _ in 0..k {
                by_x_times = by_x_times.x_times();
            }
            prop_assert_eq!(word_expansion(k, &r, &ctx).unwrap(), by_x_times);
        }
    }

    #[test]
    fn degree_law(s in any::<u64>()) {
        let mut rng = seed::rng(s);
        for (ctx, deg) in all_contexts() {
            let f = ctx.random(&mut rng, deg);
            let g = ctx.random(&mut rng, deg);
            let p = mul(&f, &g);
            match (f.degree(), g.degree()) {
                (Some(m), Some(n)) => {
                    prop_assert!(p.degree().map_or(true, |d| d <= m + n));
                    let r = ctx.ring();
                    let top = r.mul(&f.coeff(m), &ctx.sigma().apply_pow(&g.coeff(n), m as i64));
                    prop_assert_eq!(p.coeff(m + n), top);
                }
                _ => prop_assert!(p.is_zero()),
            }
        }
    }

    #[test]
    fn sigma_star_is_a_multiplicative_bijection(s in any::<u64>()) {
        let mut rng = seed::rng(s);
        for (ctx, deg) in [(quantum_plane(), 3), (rational_plane(), 2)] {
            let f = ctx.random(&mut rng, deg);
            let g = ctx.random(&mut rng, deg);
            let sf = sigma_star(&f).unwrap();
            prop_assert_eq!(sigma_star_inverse(&sf).unwrap(), f.clone());
            prop_assert_eq!(sigma_star(&sigma_star_inverse(&f).unwrap()).unwrap(), f.clone());
            prop_assert_eq!(sigma_star(&mul(&f, &g)).unwrap(), mul(&sf, &sigma_star(&g).unwrap()));
            prop_assert_eq!(sigma_star(&f.add(&g).unwrap()).unwrap(), sf.add(&sigma_star(&g).unwrap()).unwrap());
        }
    }

    #[test]
    fn right_form_round_trips(s in any::<u64>()) {
        let mut rng = seed::rng(s);
        for (ctx, deg) in all_contexts() {
            let f = ctx.random(&mut rng, deg);
            let right = right_form(&f);
            prop_assert_eq!(left_form(&ctx, &right), f.clone());
            // Σ x^i c_i computed directly with products.
            let mut direct = ctx.zero();
            for (i, c) in right.iter().enumerate() {
                direct = direct.add(&ctx.constant(c.clone()).x_pow_times(i)).unwrap();
            }
            prop_assert_eq!(direct, f);
        }
    }
}

fn classical_binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn gaussian_pascal_recursion_and_symmetry() {
    let table = GaussianTable::new(16);
    for k in 1..=16usize {
        for j in 0..=k as i64 {
            let lhs = table.poly(k, j).unwrap();
            let a = table.poly(k - 1, j - 1).unwrap();
            let b = table.poly(k - 1, j).unwrap();
            let len = lhs.len().max(a.len()).max(b.len() + j as usize);
            let coeff = |p: &[BigInt], i: usize| p.get(i).cloned().unwrap_or_default();
            for i in 0..len {
                let shifted = if i >= j as usize {
                    coeff(b, i - j as usize)
                } else {
                    BigInt::default()
                };
                assert_eq!(coeff(lhs, i), coeff(a, i) + shifted, "k={k} j={j} i={i}");
            }
            assert_eq!(lhs, table.poly(k, k as i64 - j).unwrap());
            let total: BigInt = lhs.iter().sum();
            assert_eq!(total, BigInt::from(classical_binomial(k as u64, j as u64)));
        }
    }
}

/// q-Lucas: with `q` of multiplicative order `m`,
/// `C(am+b, cm+d)_q = binom(a, c)·C(b, d)_q` for `0 ≤ b, d < m`.
#[test]
fn gaussian_collapse_at_roots_of_unity() {
    for (p, q, order) in [(7u64, 2i64, 3u64), (7, 6, 2), (5, 2, 4), (13, 3, 3)] {
        let field = ring(RingSpec::prime_field(p));
        let q = field.from_int(q).unwrap();
        assert_eq!(field.pow(&q, order), field.one().unwrap());
        for n in 0..=12u64 {
            for k in 0..=n {
                let (a, b) = (n / order, n % order);
                let (c, d) = (k / order, k % order);
                let lucas = if d > b || c > a {
                    field.zero()
                } else {
                    let small = q_binomial(b as i64, d as i64, &q, &field).unwrap();
                    field.mul(
                        &field
                            .from_int((classical_binomial(a, c) % p) as i64)
                            .unwrap(),
                        &small,
                    )
                };
                assert_eq!(
                    q_binomial(n as i64, k as i64, &q, &field).unwrap(),
                    lucas,
                    "p={p} n={n} k={k}"
                );
            }
        }
    }
}

#[test]
fn gaussian_agrees_with_the_product_formula() {
    // C(n, k)_q = Π (1 - q^(n-i)) / (1 - q^(i+1)) over Q, with q = 3.
    let rationals = ring(RingSpec::Rationals);
    let q = rationals.from_int(3).unwrap();
    for n in 0..=10i64 {
        for k in 0..=n {
            let mut value = num_rational::BigRational::from_integer(1.into());
            for i in 0..k {
                let num = 1 - 3i64.pow((n - i) as u32);
                let den = 1 - 3i64.pow((i + 1) as u32);
                value *= num_rational::BigRational::new(num.into(), den.into());
            }
            assert_eq!(q_binomial(n, k, &q, &rationals).unwrap(), Elem::Rat(value));
        }
    }
}
