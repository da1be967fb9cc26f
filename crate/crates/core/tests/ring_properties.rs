use orelab_core::ring::{
    center, jacobson_radical, make_ring, nilpotency_index, nilradical, quasi_inverse_elem,
    quotient, Elem, Ideal, Ring, RingSpec,
};
use orelab_core::seed;
use proptest::prelude::*;

fn ring(spec: RingSpec) -> Ring {
    make_ring(&spec).unwrap()
}

/// Finite rings small enough for exhaustive triples (|R| ≤ 64).
fn small_rings() -> Vec<Ring> {
    use RingSpec as S;
    vec![
        ring(S::modular(4)),
        ring(S::modular(6)),
        ring(S::modular(8)),
        ring(S::prime_field(5)),
        ring(S::galois(2, 2)),
        ring(S::galois(2, 3)),
        ring(S::upper_triangular(S::prime_field(2), 2)),
        ring(S::strictly_upper_triangular(S::prime_field(2), 3)),
        ring(S::truncated(S::prime_field(2), 3)),
        ring(S::truncated(S::prime_field(3), 3)),
        ring(S::truncated(S::modular(4), 2)),
        ring(S::truncated(S::galois(2, 2), 2)),
        ring(S::matrix(S::prime_field(2), 2)),
        ring(S::dorroh(
            S::strictly_upper_triangular(S::prime_field(2), 3),
            S::prime_field(2),
        )),
        ring(S::upper_triangular(S::modular(4), 2)),
    ]
}

/// Rings too large or infinite for exhaustive checks.
fn large_rings() -> Vec<Ring> {
    use RingSpec as S;
    vec![
        ring(S::truncated(S::prime_field(7), 6)),
        ring(S::polynomial(S::Rationals)),
        ring(S::Rationals),
        ring(S::direct_sum_shift(S::modular(4))),
        ring(S::matrix(S::prime_field(2), 3)),
        ring(S::dorroh(
            S::truncated(S::prime_field(5), 2),
            S::prime_field(5),
        )),
        ring(S::truncated(S::galois(2, 2), 3)),
    ]
}

fn axioms_hold(r: &Ring, a: &Elem, b: &Elem, c: &Elem) -> bool {
    r.add(&r.add(a, b), c) == r.add(a, &r.add(b, c))
        && r.mul(&r.mul(a, b), c) == r.mul(a, &r.mul(b, c))
        && r.mul(a, &r.add(b, c)) == r.add(&r.mul(a, b), &r.mul(a, c))
        && r.mul(&r.add(a, b), c) == r.add(&r.mul(a, c), &r.mul(b, c))
        && r.add(a, b) == r.add(b, a)
        && r.is_zero(&r.add(a, &r.neg(a)))
}

#[test]
fn ring_axioms_exhaustive_on_small_rings() {
    for r in small_rings() {
        let all = r.elements().unwrap();
        assert!(all.len() <= 64, "{r}");
        for a in all.iter() {
            for b in all.iter() {
                for c in all.iter() {
                    assert!(axioms_hold(&r, a, b, c), "{r}: {a:?} {b:?} {c:?}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms_sampled(s in any::<u64>()) {
        let mut rng = seed::rng(s);
        for r in large_rings() {
            let (a, b, c) = (r.random(&mut rng), r.random(&mut rng), r.random(&mut rng));
            prop_assert!(axioms_hold(&r, &a, &b, &c), "{}", r);
        }
    }

    #[test]
    fn jacobson_equals_nilradical_for_zn(n in 2u64..=120) {
        let r = ring(RingSpec::modular(n));
        let (j, n) = (jacobson_radical(&r).unwrap(), nilradical(&r).unwrap());
        prop_assert_eq!(j.elements(), n.elements());
    }

    #[test]
    fn jacobson_equals_nilradical_for_truncations(p in prop::sample::select(vec![2u64, 3, 5]), n in 1usize..=3) {
        let r = ring(RingSpec::truncated(RingSpec::prime_field(p), n));
        let (j, n) = (jacobson_radical(&r).unwrap(), nilradical(&r).unwrap());
        prop_assert_eq!(j.elements(), n.elements());
    }
}

#[test]
fn jacobson_equals_nilradical_on_catalog() {
    for r in small_rings() {
        assert_eq!(
            jacobson_radical(&r).unwrap().elements(),
            nilradical(&r).unwrap().elements(),
            "{r}"
        );
    }
}

#[test]
fn quasi_inverses_are_unique() {
    for r in small_rings() {
        let all = r.elements().unwrap();
        for a in all.iter() {
            let sols: Vec<&Elem> = all
                .iter()
                .filter(|s| {
                    let sum = r.add(a, s);
                    r.is_zero(&r.add(&sum, &r.mul(a, s))) && r.is_zero(&r.add(&sum, &r.mul(s, a)))
                })
                .collect();
            assert!(sols.len() <= 1, "{r}");
            assert_eq!(
                quasi_inverse_elem(&r, a).unwrap().as_ref(),
                sols.first().copied(),
                "{r}"
            );
        }
    }
}

#[test]
fn nilpotent_elements_central_modulo_n_lie_in_n() {
    for r in small_rings() {
        let all = r.elements().unwrap();
        let n = nilradical(&r).unwrap();
        for a in all.iter() {
            if nilpotency_index(&r, a, 64).is_none() {
                continue;
            }
            let central = all
                .iter()
                .all(|s| n.contains(&r.sub(&r.mul(a, s), &r.mul(s, a))));
            if central {
                assert!(n.contains(a), "{r}: {}", r.display(a));
            }
        }
    }
}

#[test]
fn quotient_by_jacobson_is_semiprimitive() {
    for r in small_rings() {
        let j = jacobson_radical(&r).unwrap();
        let q = quotient(&r, &j).unwrap();
        assert!(jacobson_radical(&q).unwrap().is_zero(), "{r}");
    }
}

#[test]
fn dorroh_inner_copy_is_an_ideal_with_the_same_product() {
    use RingSpec as S;
    for (inner, scalar) in [
        (
            S::strictly_upper_triangular(S::prime_field(2), 3),
            S::prime_field(2),
        ),
        (S::truncated(S::prime_field(3), 2), S::prime_field(3)),
        (S::galois(2, 2), S::galois(2, 2)),
    ] {
        let base = ring(inner.clone());
        let zero = ring(scalar.clone()).zero();
        let ext = ring(S::dorroh(inner, scalar));
        let all = base.elements().unwrap();
        let embed = |r: &Elem| Elem::pair(r.clone(), zero.clone());
        Ideal::new(&ext, all.iter().map(embed)).unwrap();
        for a in all.iter() {
            for b in all.iter() {
                assert_eq!(ext.mul(&embed(a), &embed(b)), embed(&base.mul(a, b)));
            }
        }
        assert!(ext.has_identity());
    }
}

#[test]
fn center_of_commutative_rings_is_everything() {
    for spec in [
        RingSpec::modular(6),
        RingSpec::truncated(RingSpec::prime_field(2), 3),
        RingSpec::galois(2, 3),
    ] {
        let r = ring(spec);
        assert_eq!(center(&r).unwrap().len(), r.elements().unwrap().len());
    }
}
