mod common;

use common::*;
use orelab_core::ore::{ore_mul, OreContext, OrePoly};
use orelab_core::radical::{
    check_central_commutation, coefficient_equation_check, geometric_quasi_inverse, i_set_explore,
    is_quasi_inverse, neumann_quasi_inverse, nil_witness_chain, shift_product_check, Bounds,
    QuasiInverseStatus,
};
use orelab_core::ring::nilpotency_index;
use orelab_core::{seed, Elem, RingSpec};
use proptest::prelude::*;
use serde_json::json;

fn nilpotents(ctx: &OreContext) -> Vec<Elem> {
    let r = ctx.ring();
    r.elements()
        .unwrap()
        .iter()
        .filter(|a| nilpotency_index(r, a, 64).is_some())
        .cloned()
        .collect()
}

fn neumann(f: &OrePoly) -> Option<OrePoly> {
    neumann_quasi_inverse(f, Bounds::default())
        .unwrap()
        .found()
        .cloned()
}

/// `F_4[y]/(y^2)` with coefficientwise Frobenius.
fn f4_frobenius_small() -> OreContext {
    context(
        RingSpec::truncated(RingSpec::galois(2, 2), 2),
        json!({"frobenius": 1}),
        json!("zero"),
        None,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn found_quasi_inverses_satisfy_both_identities(s in any::<u64>()) {
        let mut rng = seed::rng(s);
        for ctx in [zn(8), char3_derivative(), f4_frobenius(), quantum_plane()] {
            let f = ctx.random(&mut rng, 2);
            let result = neumann_quasi_inverse(&f, Bounds::default()).unwrap();
            if let QuasiInverseStatus::Found(g) = &result.status {
                prop_assert!(is_quasi_inverse(&f, g));
                let fg = ore_mul(&f, g).unwrap();
                let gf = ore_mul(g, &f).unwrap();
                let sum = f.add(g).unwrap();
                prop_assert!(sum.add(&fg).unwrap().is_zero());
                prop_assert!(sum.add(&gf).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn central_commutation_feeds_the_geometric_series(s in any::<u64>(), tail in prop::collection::vec(0u64..3, 8)) {
        let ctx = char3_derivative();
        // Zero constant term makes a nilpotent.
        let coeffs: Vec<u64> = std::iter::once(0).chain(tail).collect();
        let a = ctx.ring().from_json(&json!(coeffs)).unwrap();
        prop_assert!(check_central_commutation(&a, 1, &ctx, s).unwrap().passed());
        let g = geometric_quasi_inverse(&a, 3, &ctx).unwrap();
        let f = ctx.monomial(a.clone(), 3);
        prop_assert!(is_quasi_inverse(&f, &g));
        prop_assert_eq!(neumann(&f), Some(g));
    }

    #[test]
    fn shift_products_vanish_past_the_support_width(s in any::<u64>(), width in 1i64..=4, start in -3i64..3) {
        let mut rng = seed::rng(s);
        let ctx = shift_ring();
        let r = ctx.ring();
        let mut entries: Vec<(i64, Elem)> = (start..start + width).map(|i| (i, r.base().unwrap().random(&mut rng))).collect();
        entries[0].1 = Elem::Int(1);
        entries[width as usize - 1].1 = Elem::Int(3);
        let a = r.sequence(entries).unwrap();
        let factors: Vec<OrePoly> = (0..=width).map(|_| ctx.random(&mut rng, 2)).collect();
        prop_assert!(shift_product_check(&ctx, &a, &factors).unwrap().passed());
    }
}

#[test]
fn equations_and_chain_on_finite_instances() {
    let mut instances = 0;
    for ctx in [zn(4), zn(8), zn(9), f4_frobenius()] {
        for a in nilpotents(&ctx) {
            for n in 1..=3usize {
                if ctx.sigma().apply_pow(&a, n as i64) != a {
                    continue;
                }
                let f = neumann(&ctx.monomial(a.clone(), n))
                    .expect("nilpotent a gives a quasi-inverse");
                let report = coefficient_equation_check(&a, n, &f).unwrap();
                assert!(report.passed(), "{:?}", report);
                let chain = nil_witness_chain(&a, n, &f).unwrap();
                assert!(chain.completed(), "{:?}", chain.status);
                assert!(chain.final_in_nilradical);
                instances += 1;
            }
        }
    }
    assert!(instances > 40, "{instances}");
}

#[test]
fn candidate_set_matches_nilpotents_when_d_vanishes() {
    let mut contexts: Vec<OreContext> = (2..=16).map(zn).collect();
    contexts.push(f4_frobenius_small());
    for (i, ctx) in contexts.iter().enumerate() {
        let report = i_set_explore(ctx, Bounds::default(), 32, i as u64).unwrap();
        assert!(report.exhaustive);
        assert!(report.stable(), "{}", ctx.ring());
        let mut found = report.candidate_elements();
        found.sort();
        let mut expected = nilpotents(ctx);
        expected.sort();
        assert_eq!(found, expected, "{}", ctx.ring());
    }
}

#[test]
fn candidate_set_with_a_derivation_is_stable_and_nil() {
    let ctx = context(
        RingSpec::truncated(RingSpec::prime_field(2), 4),
        json!("identity"),
        json!("formal_derivative"),
        None,
    );
    let report = i_set_explore(&ctx, Bounds::default(), 32, 5).unwrap();
    assert!(report.stable());
    let nil = nilpotents(&ctx);
    let found = report.candidate_elements();
    assert!(found.iter().all(|a| nil.contains(a)));
    // (y x)^2 = y^2 x^2 + y x, so the series for y x never stops.
    let y = ctx.ring().variable().unwrap();
    assert!(!found.contains(&y));
    assert!(found.contains(&ctx.ring().monomial(&Elem::Int(1), 2).unwrap()));
}
