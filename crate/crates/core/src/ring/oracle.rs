//! Brute-force oracles on enumerable rings: quasi-inverses, Jacobson radical,
//! upper nilradical, center, ideals and quotients.
//!
//! Non-unital rings are handled through the adjoined-identity view: an element
//! `s + k·1` of `R^1` acts on `r` as `s·r + k·r`, so nothing here requires a
//! Dorroh extension.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{Elem, QuotientData, Ring};
use crate::error::{Error, Result};

/// A verified two-sided ideal of a finite ring, stored as an explicit element set.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    elements: BTreeSet<Elem>,
}

impl Ideal {
    /// Checks that `elements` is an ideal of `ring`: contains zero, closed under
    /// addition, and closed under multiplication by every ring element on both
    /// sides. A failure carries the offending pair.
    pub fn new(ring: &Ring, elements: impl IntoIterator<Item = Elem>) -> Result<Ideal> {
        let all = ring.elements()?;
        let elements: BTreeSet<Elem> = elements.into_iter().collect();
        if !elements.contains(&ring.zero()) {
            return Err(Error::precondition("ideal does not contain zero"));
        }
        for a in &elements {
            for b in &elements {
                let s = ring.add(a, b);
                if !elements.contains(&s) {
                    return Err(Error::precondition_with(
                        "set is not closed under addition",
                        format!("({}, {})", ring.display(a), ring.display(b)),
                    ));
                }
            }
            for r in all.iter() {
                if !elements.contains(&ring.mul(r, a)) {
                    return Err(Error::precondition_with(
                        "set is not closed under left multiplication",
                        format!("({}, {})", ring.display(r), ring.display(a)),
                    ));
                }
                if !elements.contains(&ring.mul(a, r)) {
                    return Err(Error::precondition_with(
                        "set is not closed under right multiplication",
                        format!("({}, {})", ring.display(a), ring.display(r)),
                    ));
                }
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            elements,
        })
    }

    pub fn zero(ring: &Ring) -> Result<Ideal> {
        Ideal::new(ring, [ring.zero()])
    }

    /// Smallest ideal containing `gens`.
    pub fn generated_by(ring: &Ring, gens: &[Elem]) -> Result<Ideal> {
        let all = ring.elements()?;
        let mut elements = BTreeSet::from([ring.zero()]);
        for g in gens {
            let set = generated_ideal(ring, &all, g, |_| true).expect("predicate never rejects");
            elements.extend(set);
        }
        let closed = additive_closure(ring, &elements.iter().cloned().collect::<Vec<_>>(), |_| {
            true
        })
        .expect("predicate never rejects");
        Ideal::new(ring, closed)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn elements(&self) -> &BTreeSet<Elem> {
        &self.elements
    }

    pub fn contains(&self, a: &Elem) -> bool {
        self.elements.contains(a)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Smallest additively closed set containing 0 and `gens`. Returns `None` as
/// soon as an element fails `keep`.
fn additive_closure(
    ring: &Ring,
    gens: &[Elem],
    mut keep: impl FnMut(&Elem) -> bool,
) -> Option<HashSet<Elem>> {
    let mut gens: Vec<Elem> = gens.iter().filter(|g| !ring.is_zero(g)).cloned().collect();
    gens.sort();
    gens.dedup();
    let zero = ring.zero();
    let mut set = HashSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(e) = frontier.pop() {
        for g in &gens {
            let s = ring.add(&e, g);
            if !set.contains(&s) {
                if !keep(&s) {
                    return None;
                }
                set.insert(s.clone());
                frontier.push(s);
            }
        }
    }
    Some(set)
}

/// Two-sided ideal generated by `r`: the additive span of `R^1 r R^1`.
fn generated_ideal(
    ring: &Ring,
    all: &[Elem],
    r: &Elem,
    mut keep: impl FnMut(&Elem) -> bool,
) -> Option<HashSet<Elem>> {
    let mut left: Vec<Elem> = vec![r.clone()];
    left.extend(all.iter().map(|s| ring.mul(s, r)));
    let left = additive_closure(ring, &left, &mut keep)?;
    let mut gens: Vec<Elem> = left.iter().cloned().collect();
    for l in &left {
        for t in all {
            gens.push(ring.mul(l, t));
        }
    }
    additive_closure(ring, &gens, keep)
}

/// Least `k ≤ bound` with `a^k = 0`.
pub fn nilpotency_index(ring: &Ring, a: &Elem, bound: u64) -> Option<u64> {
    let mut p = a.clone();
    for k in 1..=bound {
        if ring.is_zero(&p) {
            return Some(k);
        }
        p = ring.mul(&p, a);
    }
    None
}

/// Whether `r` is invertible under the circle operation `r∘s = r + s + rs`,
/// i.e. some circle power of `r` returns to 0.
fn circle_invertible(ring: &Ring, r: &Elem) -> bool {
    let mut seen = HashSet::new();
    let mut p = r.clone();
    loop {
        if ring.is_zero(&p) {
            return true;
        }
        if !seen.insert(p.clone()) {
            return false;
        }
        p = ring.add(&ring.add(&p, r), &ring.mul(&p, r));
    }
}

/// The two-sided quasi-inverse of `r`, found by exhaustive scan.
pub fn quasi_inverse_elem(ring: &Ring, r: &Elem) -> Result<Option<Elem>> {
    let all = ring.elements()?;
    let zero = ring.zero();
    Ok(all
        .iter()
        .find(|s| {
            let sum = ring.add(r, s);
            ring.add(&sum, &ring.mul(r, s)) == zero && ring.add(&sum, &ring.mul(s, r)) == zero
        })
        .cloned())
}

/// `{ s·r + k·r }` and `{ r·s + k·r }` for `s + k·1` ranging over `R^1`.
fn adjoined_multiples(ring: &Ring, all: &[Elem], r: &Elem) -> Vec<Elem> {
    let extra: Vec<Elem> = if ring.has_identity() {
        Vec::new()
    } else {
        (1..ring.characteristic().max(1) as i64)
            .map(|k| ring.mul_int(r, k))
            .collect()
    };
    let mut out = Vec::with_capacity(2 * all.len() * (extra.len() + 1));
    for s in all {
        let left = ring.mul(s, r);
        let right = ring.mul(r, s);
        for e in &extra {
            out.push(ring.add(&left, e));
            out.push(ring.add(&right, e));
        }
        out.push(left);
        out.push(right);
    }
    out.extend(extra);
    out
}

/// Jacobson radical by brute force: `r ∈ J(R)` iff every `s·r` and `r·s`,
/// `s ∈ R^1`, is quasi-regular. The result is verified to be an ideal.
pub fn jacobson_radical(ring: &Ring) -> Result<Ideal> {
    let all = ring.elements()?;
    let mut quasi_regular: HashMap<Elem, bool> = HashMap::new();
    let mut is_qr = |e: &Elem| -> bool {
        *quasi_regular
            .entry(e.clone())
            .or_insert_with(|| circle_invertible(ring, e))
    };
    let radical: Vec<Elem> = all
        .iter()
        .filter(|r| is_qr(r) && adjoined_multiples(ring, &all, r).iter().all(&mut is_qr))
        .cloned()
        .collect();
    Ideal::new(ring, radical)
}

/// Upper nilradical: the elements whose generated ideal is nil, closed under
/// addition and verified to be a nil ideal.
pub fn nilradical(ring: &Ring) -> Result<Ideal> {
    let all = ring.elements()?;
    let bound = all.len() as u64 + 1;
    let mut nilpotent: HashMap<Elem, bool> = HashMap::new();
    let mut is_nil = |e: &Elem| -> bool {
        *nilpotent
            .entry(e.clone())
            .or_insert_with(|| nilpotency_index(ring, e, bound).is_some())
    };
    let mut found: HashSet<Elem> = HashSet::from([ring.zero()]);
    for r in all.iter() {
        if found.contains(r) || !is_nil(r) {
            continue;
        }
        if let Some(ideal) = generated_ideal(ring, &all, r, &mut is_nil) {
            found.extend(ideal);
        }
    }
    let gens: Vec<Elem> = found.into_iter().collect();
    let closed = additive_closure(ring, &gens, |_| true).expect("predicate never rejects");
    if let Some(bad) = closed.iter().find(|e| !is_nil(e)) {
        return Err(Error::Internal(format!(
            "sum of nil ideals contains the non-nilpotent {}",
            ring.display(bad)
        )));
    }
    Ideal::new(ring, closed)
}

/// `{ z : z r = r z for all r }`.
pub fn center(ring: &Ring) -> Result<BTreeSet<Elem>> {
    let all = ring.elements()?;
    Ok(all
        .iter()
        .filter(|z| all.iter().all(|r| ring.mul(z, r) == ring.mul(r, z)))
        .cloned()
        .collect())
}

/// Quotient `R/I` on canonical coset representatives (the first coset member
/// in enumeration order).
pub fn quotient(ring: &Ring, ideal: &Ideal) -> Result<Ring> {
    if ideal.ring() != ring {
        return Err(Error::Usage(format!(
            "ideal belongs to {}, not {ring}",
            ideal.ring()
        )));
    }
    let all = ring.elements()?;
    let mut canon = HashMap::with_capacity(all.len());
    let mut reps = Vec::new();
    for e in all.iter() {
        if canon.contains_key(e) {
            continue;
        }
        for i in ideal.elements() {
            canon.insert(ring.add(e, i), e.clone());
        }
        reps.push(e.clone());
    }
    let label = format!("{ring}/({} elements)", ideal.len());
    Ok(Ring::quotient_ring(
        QuotientData {
            base: ring.clone(),
            canon,
            reps,
        },
        label,
    ))
}

#[cfg(test)]
mod tests {
    use super::super::{dorroh_extend, make_ring, RingSpec};
    use super::*;

    fn ring(spec: RingSpec) -> Ring {
        make_ring(&spec).unwrap()
    }

    fn ints(ideal: &Ideal) -> Vec<u64> {
        ideal.elements().iter().map(|e| e.as_int()).collect()
    }

    /// Direct scan of both quasi-regularity equations, independent of the
    /// circle-power shortcut used by `jacobson_radical`.
    fn quasi_regular_by_scan(r: &Ring, a: &Elem) -> bool {
        quasi_inverse_elem(r, a).unwrap().is_some()
    }

    #[test]
    fn quasi_inverse_examples_in_z4() {
        let z4 = ring(RingSpec::modular(4));
        assert_eq!(
            quasi_inverse_elem(&z4, &Elem::Int(0)).unwrap(),
            Some(Elem::Int(0))
        );
        assert_eq!(
            quasi_inverse_elem(&z4, &Elem::Int(2)).unwrap(),
            Some(Elem::Int(2))
        );
        assert_eq!(quasi_inverse_elem(&z4, &Elem::Int(1)).unwrap(), None);
    }

    #[test]
    fn quasi_inverse_is_unique() {
        let r = ring(RingSpec::upper_triangular(RingSpec::prime_field(2), 2));
        let all = r.elements().unwrap();
        for a in all.iter() {
            let count = all
                .iter()
                .filter(|s| {
                    let sum = r.add(a, s);
                    r.is_zero(&r.add(&sum, &r.mul(a, s))) && r.is_zero(&r.add(&sum, &r.mul(s, a)))
                })
                .count();
            assert!(count <= 1);
            assert_eq!(count == 1, circle_invertible(&r, a));
        }
    }

    #[test]
    fn non_enumerable_rings_are_refused() {
        let r = ring(RingSpec::direct_sum_shift(RingSpec::modular(4)));
        assert!(matches!(
            quasi_inverse_elem(&r, &r.zero()),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(jacobson_radical(&r), Err(Error::Unsupported(_))));
        assert!(matches!(nilradical(&r), Err(Error::Unsupported(_))));
        assert!(matches!(center(&r), Err(Error::Unsupported(_))));
    }

    #[test]
    fn radical_examples() {
        assert_eq!(
            ints(&jacobson_radical(&ring(RingSpec::modular(4))).unwrap()),
            vec![0, 2]
        );
        assert_eq!(
            ints(&jacobson_radical(&ring(RingSpec::prime_field(5))).unwrap()),
            vec![0]
        );
        assert_eq!(
            ints(&nilradical(&ring(RingSpec::modular(8))).unwrap()),
            vec![0, 2, 4, 6]
        );
        assert_eq!(
            ints(&nilradical(&ring(RingSpec::prime_field(5))).unwrap()),
            vec![0]
        );

        let ut = ring(RingSpec::upper_triangular(RingSpec::prime_field(2), 2));
        let strict: BTreeSet<Elem> = [0, 1]
            .into_iter()
            .map(|b| ut.from_json(&serde_json::json!([[0, b], [0, 0]])).unwrap())
            .collect();
        assert_eq!(jacobson_radical(&ut).unwrap().elements(), &strict);
        assert_eq!(nilradical(&ut).unwrap().elements(), &strict);
    }

    #[test]
    fn jacobson_of_zn_is_radical_of_n() {
        for n in 2..=36u64 {
            let r = ring(RingSpec::modular(n));
            let mut rad = 1;
            let mut m = n;
            let mut p = 2;
            while m > 1 {
                if m % p == 0 {
                    rad *= p;
                    while m % p == 0 {
                        m /= p;
                    }
                }
                p += 1;
            }
            let expected: Vec<u64> = (0..n).filter(|k| k % rad == 0).collect();
            assert_eq!(ints(&jacobson_radical(&r).unwrap()), expected, "Z/{n}");
        }
    }

    #[test]
    fn center_examples() {
        let z4 = ring(RingSpec::modular(4));
        assert_eq!(center(&z4).unwrap().len(), 4);
        for spec in [
            RingSpec::matrix(RingSpec::prime_field(2), 2),
            RingSpec::upper_triangular(RingSpec::prime_field(2), 2),
        ] {
            let r = ring(spec);
            let expected = BTreeSet::from([r.zero(), r.one().unwrap()]);
            assert_eq!(center(&r).unwrap(), expected, "{r}");
        }
    }

    #[test]
    fn quotient_examples() {
        let z8 = ring(RingSpec::modular(8));
        let i = Ideal::new(&z8, [Elem::Int(0), Elem::Int(4)]).unwrap();
        let q = quotient(&z8, &i).unwrap();
        assert_eq!(q.size(), Some(4));
        assert_eq!(q.characteristic(), 4);

        let z4 = ring(RingSpec::modular(4));
        let q = quotient(&z4, &Ideal::zero(&z4).unwrap()).unwrap();
        assert_eq!(
            q.elements().unwrap().as_slice(),
            z4.elements().unwrap().as_slice()
        );

        let j = Ideal::new(&z4, [Elem::Int(0), Elem::Int(2)]).unwrap();
        let q = quotient(&z4, &j).unwrap();
        assert_eq!(q.size(), Some(2));
        assert!(nilradical(&q).unwrap().is_zero());
        assert_eq!(q.project(&Elem::Int(3)).unwrap(), Elem::Int(1));
    }

    #[test]
    fn non_ideal_is_rejected_with_witness() {
        let z8 = ring(RingSpec::modular(8));
        let err = Ideal::new(&z8, [Elem::Int(0), Elem::Int(2)]).unwrap_err();
        match err {
            Error::Precondition {
                witness: Some(w), ..
            } => assert_eq!(w, "(2, 2)"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dorroh_embeds_r_as_an_ideal() {
        let inner = ring(RingSpec::strictly_upper_triangular(
            RingSpec::prime_field(2),
            3,
        ));
        let f2 = ring(RingSpec::prime_field(2));
        let ext = dorroh_extend(&inner, &f2).unwrap();
        let embedded: Vec<Elem> = inner
            .elements()
            .unwrap()
            .iter()
            .map(|r| Elem::pair(r.clone(), Elem::Int(0)))
            .collect();
        Ideal::new(&ext, embedded).unwrap();
        // a nilpotent ring is its own radical, and so is its copy in R^*
        assert_eq!(
            jacobson_radical(&inner).unwrap().len(),
            inner.size().unwrap() as usize
        );
        assert_eq!(
            jacobson_radical(&ext).unwrap().len(),
            inner.size().unwrap() as usize
        );
    }

    #[test]
    fn circle_shortcut_agrees_with_scan() {
        for spec in [
            RingSpec::modular(12),
            RingSpec::matrix(RingSpec::prime_field(2), 2),
            RingSpec::truncated(RingSpec::galois(2, 2), 2),
        ] {
            let r = ring(spec);
            for a in r.elements().unwrap().iter() {
                assert_eq!(
                    circle_invertible(&r, a),
                    quasi_regular_by_scan(&r, a),
                    "{r} {a:?}"
                );
            }
        }
    }
}
