//! Automorphisms `σ` and `σ`-derivations `D` from a closed structural
//! catalog, with exhaustive or sampled axiom checks.
//!
//! Maps are bound to a ring when resolved. Resolution only checks that the
//! action makes sense for the ring kind; the axioms themselves are checked by
//! [`check_automorphism`] and [`check_sigma_derivation`], which report a
//! witness instead of failing.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{elem_ints, ints_to_elem, strip, Elem, Kind, Ring};
use crate::seed;

/// Rings with at most this many elements are verified on all pairs.
pub const EXHAUSTIVE_LIMIT: u128 = 256;
/// Seeded random pairs added to the spanning pairs of larger rings.
pub const RANDOM_PAIRS: usize = 256;

/// Automorphism catalog, as written in configs: `"identity"`,
/// `{"scale": q}`, `{"frobenius": e}`, `{"shift": k}`, `{"entrywise": ..}`,
/// `{"dorroh": ..}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AutomorphismSpec {
    Identity,
    /// `y ↦ q·y` on a polynomial ring, `q` in the scalar field.
    Scale(Value),
    /// `c ↦ c^(p^e)` on Galois-field coefficients.
    Frobenius(i64),
    /// `(σa)_i = a_(i-k)` on a direct sum.
    Shift(i64),
    /// Apply the inner automorphism to every coefficient or entry.
    Entrywise(Box<AutomorphismSpec>),
    /// `(r, m) ↦ (σ(r), m)` on a Dorroh extension.
    Dorroh(Box<AutomorphismSpec>),
}

/// Derivation catalog: `"zero"`, `"formal_derivative"`, `"q_difference"`,
/// `{"dorroh": ..}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum DerivationSpec {
    Zero,
    /// `d/dy` on a polynomial ring.
    FormalDerivative,
    /// `D(y^i) = [i]_q y^(i-1)` for `σ(y) = q·y`.
    QDifference,
    /// `(r, m) ↦ (D(r), 0)` on a Dorroh extension.
    Dorroh(Box<DerivationSpec>),
}

#[derive(Clone, Debug)]
enum SigmaMap {
    Identity,
    Scale { q: Elem, field: Ring },
    Frobenius(i64),
    Shift(i64),
    Lift(Box<SigmaMap>),
    Dorroh(Box<SigmaMap>),
}

#[derive(Clone, Debug)]
enum DerivMap {
    Zero,
    Formal,
    QDifference { q: Elem, field: Ring },
    Dorroh(Box<DerivMap>),
}

/// An automorphism bound to its ring, with its declared inverse.
#[derive(Clone, Debug)]
pub struct Automorphism {
    ring: Ring,
    spec: AutomorphismSpec,
    map: SigmaMap,
    inverse: SigmaMap,
}

/// A `σ`-derivation bound to its ring and automorphism.
#[derive(Clone, Debug)]
pub struct Derivation {
    sigma: Automorphism,
    spec: DerivationSpec,
    map: DerivMap,
}

/// A counterexample: what failed and the elements involved, as JSON payloads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub description: String,
    pub elements: Vec<Value>,
}

impl Witness {
    pub fn new(ring: &Ring, description: impl Into<String>, elements: &[&Elem]) -> Self {
        Witness {
            description: description.into(),
            elements: elements.iter().map(|e| ring.to_json(e)).collect(),
        }
    }
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let items: Vec<String> = self.elements.iter().map(Value::to_string).collect();
        write!(f, "{} at ({})", self.description, items.join(", "))
    }
}

/// Outcome of an axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Witness),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    /// Converts a failure into a precondition error.
    pub fn into_result(self, what: &str) -> Result<()> {
        match self {
            Verdict::Pass => Ok(()),
            Verdict::Fail(w) => Err(Error::precondition_with(what, w.to_string())),
        }
    }
}

/// Elements and pairs on which map axioms are checked.
#[derive(Clone, Debug)]
pub struct VerificationSet {
    pub singles: Vec<Elem>,
    pub pairs: Vec<(Elem, Elem)>,
    pub description: String,
}

impl VerificationSet {
    /// All elements and pairs when `|R| ≤ 256`; otherwise all spanning
    /// elements and spanning pairs, followed by 256 seeded random pairs.
    pub fn for_ring(ring: &Ring, seed: u64) -> Self {
        if ring.size().is_some_and(|s| s <= EXHAUSTIVE_LIMIT) {
            let all = ring.elements().expect("small finite ring").to_vec();
            let pairs = all
                .iter()
                .flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone())))
                .collect();
            return VerificationSet {
                description: format!("all {} elements of {ring}", all.len()),
                singles: all,
                pairs,
            };
        }
        let span = ring.spanning_set();
        let mut pairs: Vec<(Elem, Elem)> = span
            .iter()
            .flat_map(|a| span.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        let mut singles = span.clone();
        let mut rng = seed::rng(seed);
        for _ in 0..RANDOM_PAIRS {
            let a = ring.random(&mut rng);
            let b = ring.random(&mut rng);
            singles.push(a.clone());
            pairs.push((a, b));
        }
        VerificationSet {
            description: format!(
                "{} spanning elements of {ring} and {RANDOM_PAIRS} random pairs (seed {seed})",
                span.len()
            ),
            singles,
            pairs,
        }
    }
}

/// Applies `f` to every coefficient or entry of a container element.
fn map_entries(ring: &Ring, a: &Elem, f: impl Fn(&Ring, &Elem) -> Elem) -> Elem {
    match ring.kind() {
        Kind::Truncated { base, .. } | Kind::Matrix { base, .. } => {
            Elem::Vector(a.as_vec().iter().map(|c| f(base, c)).collect())
        }
        Kind::Polynomial { base } => Elem::Vector(strip(
            a.as_vec().iter().map(|c| f(base, c)).collect(),
            &base.zero(),
        )),
        Kind::DirectSumShift { base } => Elem::Seq(
            a.as_seq()
                .iter()
                .map(|(i, c)| (*i, f(base, c)))
                .filter(|(_, c)| !base.is_zero(c))
                .collect(),
        ),
        _ => unreachable!("resolution only lifts through container kinds"),
    }
}

fn is_container(ring: &Ring) -> bool {
    matches!(
        ring.kind(),
        Kind::Truncated { .. }
            | Kind::Polynomial { .. }
            | Kind::Matrix { .. }
            | Kind::DirectSumShift { .. }
    )
}

fn is_polynomial(ring: &Ring) -> bool {
    matches!(
        ring.kind(),
        Kind::Truncated { .. } | Kind::Polynomial { .. }
    )
}

fn resolve_sigma(ring: &Ring, spec: &AutomorphismSpec) -> Result<(SigmaMap, SigmaMap)> {
    Ok(match spec {
        AutomorphismSpec::Identity => (SigmaMap::Identity, SigmaMap::Identity),
        AutomorphismSpec::Scale(q) => {
            if !is_polynomial(ring) {
                return Err(Error::Config(format!(
                    "scale needs a polynomial ring, not {ring}"
                )));
            }
            let field = ring.scalar_field().ok_or_else(|| {
                Error::Config(format!("{ring} has no scalar field for the scaling factor"))
            })?;
            let q = field.from_json(q)?;
            let inv = field.unit_inverse(&q).ok_or_else(|| {
                Error::Config(format!("scale factor {} is not a unit", field.display(&q)))
            })?;
            (
                SigmaMap::Scale {
                    q,
                    field: field.clone(),
                },
                SigmaMap::Scale { q: inv, field },
            )
        }
        AutomorphismSpec::Frobenius(e) => match ring.kind() {
            Kind::Galois(_) => (SigmaMap::Frobenius(*e), SigmaMap::Frobenius(-*e)),
            _ if is_container(ring) => {
                let base = ring.base().expect("container");
                let (m, inv) = resolve_sigma(base, spec)?;
                (SigmaMap::Lift(Box::new(m)), SigmaMap::Lift(Box::new(inv)))
            }
            _ => {
                return Err(Error::Config(format!(
                    "frobenius needs Galois-field coefficients, not {ring}"
                )))
            }
        },
        AutomorphismSpec::Shift(k) => {
            if !ring.is_direct_sum_shift() {
                return Err(Error::Config(format!(
                    "shift needs a direct sum ring, not {ring}"
                )));
            }
            (SigmaMap::Shift(*k), SigmaMap::Shift(-*k))
        }
        AutomorphismSpec::Entrywise(inner) => {
            if !is_container(ring) {
                return Err(Error::Config(format!(
                    "entrywise needs a container ring, not {ring}"
                )));
            }
            let (m, inv) = resolve_sigma(ring.base().expect("container"), inner)?;
            (SigmaMap::Lift(Box::new(m)), SigmaMap::Lift(Box::new(inv)))
        }
        AutomorphismSpec::Dorroh(inner) => {
            let (r, _) = ring.dorroh_parts().ok_or_else(|| {
                Error::Config(format!("dorroh lift needs a Dorroh extension, not {ring}"))
            })?;
            let (m, inv) = resolve_sigma(r, inner)?;
            (
                SigmaMap::Dorroh(Box::new(m)),
                SigmaMap::Dorroh(Box::new(inv)),
            )
        }
    })
}

impl SigmaMap {
    fn apply(&self, ring: &Ring, a: &Elem) -> Elem {
        match self {
            SigmaMap::Identity => a.clone(),
            SigmaMap::Scale { q, field } => {
                let base = ring.base().expect("polynomial ring");
                let mut power = field.one().expect("field");
                let mut out = Vec::with_capacity(a.as_vec().len());
                for c in a.as_vec() {
                    out.push(base.scale(&power, c));
                    power = field.mul(&power, q);
                }
                match ring.kind() {
                    Kind::Polynomial { .. } => Elem::Vector(strip(out, &base.zero())),
                    _ => Elem::Vector(out),
                }
            }
            SigmaMap::Frobenius(e) => match ring.kind() {
                Kind::Galois(gf) => ints_to_elem(gf.frobenius(&elem_ints(a), *e)),
                _ => unreachable!("frobenius resolves on Galois fields only"),
            },
            SigmaMap::Shift(k) => {
                Elem::Seq(a.as_seq().iter().map(|(i, c)| (i + k, c.clone())).collect())
            }
            SigmaMap::Lift(inner) => map_entries(ring, a, |base, c| inner.apply(base, c)),
            SigmaMap::Dorroh(inner) => {
                let (inner_ring, _) = ring.dorroh_parts().expect("Dorroh ring");
                let (r, m) = a.as_pair();
                Elem::pair(inner.apply(inner_ring, r), m.clone())
            }
        }
    }

    fn scale_factor(&self, ring: &Ring) -> Option<(Elem, Ring)> {
        match self {
            SigmaMap::Scale { q, field } => Some((q.clone(), field.clone())),
            SigmaMap::Identity => {
                let field = ring.scalar_field()?;
                Some((field.one()?, field))
            }
            _ => None,
        }
    }
}

impl Automorphism {
    /// Binds `spec` to `ring`. Only structural applicability is checked here.
    pub fn new(ring: &Ring, spec: &AutomorphismSpec) -> Result<Automorphism> {
        let (map, inverse) = resolve_sigma(ring, spec)?;
        Ok(Automorphism {
            ring: ring.clone(),
            spec: spec.clone(),
            map,
            inverse,
        })
    }

    pub fn identity(ring: &Ring) -> Automorphism {
        Automorphism::new(ring, &AutomorphismSpec::Identity)
            .expect("identity applies to every ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn spec(&self) -> &AutomorphismSpec {
        &self.spec
    }

    pub fn is_identity(&self) -> bool {
        matches!(self.map, SigmaMap::Identity)
    }

    pub fn apply(&self, a: &Elem) -> Elem {
        self.map.apply(&self.ring, a)
    }

    pub fn apply_inverse(&self, a: &Elem) -> Elem {
        self.inverse.apply(&self.ring, a)
    }

    /// `σ^k(a)`; negative `k` uses the declared inverse.
    pub fn apply_pow(&self, a: &Elem, k: i64) -> Elem {
        if self.is_identity() {
            return a.clone();
        }
        let mut out = a.clone();
        for _ in 0..k.unsigned_abs() {
            out = if k > 0 {
                self.apply(&out)
            } else {
                self.apply_inverse(&out)
            };
        }
        out
    }

    /// `σ*` on the Dorroh extension `ext` of this ring.
    pub fn dorroh_lift(&self, ext: &Ring) -> Result<Automorphism> {
        match ext.dorroh_parts() {
            Some((inner, _)) if *inner == self.ring => {}
            _ => {
                return Err(Error::Usage(format!(
                    "{ext} is not a Dorroh extension of {}",
                    self.ring
                )))
            }
        }
        Automorphism::new(ext, &AutomorphismSpec::Dorroh(Box::new(self.spec.clone())))
    }
}

fn resolve_deriv(sigma: &Automorphism, spec: &DerivationSpec) -> Result<DerivMap> {
    let ring = &sigma.ring;
    Ok(match spec {
        DerivationSpec::Zero => DerivMap::Zero,
        DerivationSpec::FormalDerivative => {
            if !is_polynomial(ring) {
                return Err(Error::Config(format!(
                    "formal derivative needs a polynomial ring, not {ring}"
                )));
            }
            DerivMap::Formal
        }
        DerivationSpec::QDifference => {
            if !is_polynomial(ring) {
                return Err(Error::Config(format!(
                    "q-difference needs a polynomial ring, not {ring}"
                )));
            }
            let (q, field) = sigma.map.scale_factor(ring).ok_or_else(|| {
                Error::Config(
                    "q-difference needs sigma to be identity or a scaling y -> q y".into(),
                )
            })?;
            DerivMap::QDifference { q, field }
        }
        DerivationSpec::Dorroh(inner) => {
            let SigmaMap::Dorroh(inner_sigma) = &sigma.map else {
                return Err(Error::Config(
                    "dorroh derivation needs a dorroh automorphism".into(),
                ));
            };
            let (inner_ring, _) = ring.dorroh_parts().expect("Dorroh automorphism");
            let inner_aut = Automorphism {
                ring: inner_ring.clone(),
                spec: match &sigma.spec {
                    AutomorphismSpec::Dorroh(s) => (**s).clone(),
                    _ => unreachable!("dorroh map comes from a dorroh spec"),
                },
                map: (**inner_sigma).clone(),
                inverse: match &sigma.inverse {
                    SigmaMap::Dorroh(i) => (**i).clone(),
                    _ => unreachable!("dorroh map has a dorroh inverse"),
                },
            };
            DerivMap::Dorroh(Box::new(resolve_deriv(&inner_aut, inner)?))
        }
    })
}

impl DerivMap {
    fn apply(&self, ring: &Ring, a: &Elem) -> Elem {
        match self {
            DerivMap::Zero => ring.zero(),
            DerivMap::Formal => lower_degree(ring, a, |base, i, c| base.mul_int(c, i as i64)),
            DerivMap::QDifference { q, field } => {
                // [i]_q for i = 0, 1, 2, ...
                let mut brackets = vec![field.zero()];
                let mut power = field.one().expect("field");
                for _ in 0..a.as_vec().len() {
                    let next = field.add(brackets.last().expect("nonempty"), &power);
                    brackets.push(next);
                    power = field.mul(&power, q);
                }
                lower_degree(ring, a, |base, i, c| base.scale(&brackets[i], c))
            }
            DerivMap::Dorroh(inner) => {
                let (inner_ring, scalar) = ring.dorroh_parts().expect("Dorroh ring");
                let (r, _) = a.as_pair();
                Elem::pair(inner.apply(inner_ring, r), scalar.zero())
            }
        }
    }
}

/// `Σ c_i y^i ↦ Σ w(i, c_i) y^(i-1)`.
fn lower_degree(ring: &Ring, a: &Elem, w: impl Fn(&Ring, usize, &Elem) -> Elem) -> Elem {
    let base = ring.base().expect("polynomial ring");
    let coeffs = a.as_vec();
    let mut out: Vec<Elem> = (1..coeffs.len()).map(|i| w(base, i, &coeffs[i])).collect();
    match ring.kind() {
        Kind::Truncated { .. } => {
            out.push(base.zero());
            Elem::Vector(out)
        }
        _ => Elem::Vector(strip(out, &base.zero())),
    }
}

impl Derivation {
    /// Binds `spec` to the ring of `sigma`. Only structural applicability is checked.
    pub fn new(sigma: &Automorphism, spec: &DerivationSpec) -> Result<Derivation> {
        let map = resolve_deriv(sigma, spec)?;
        Ok(Derivation {
            sigma: sigma.clone(),
            spec: spec.clone(),
            map,
        })
    }

    pub fn zero(sigma: &Automorphism) -> Derivation {
        Derivation::new(sigma, &DerivationSpec::Zero).expect("zero applies to every ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.sigma.ring
    }

    pub fn sigma(&self) -> &Automorphism {
        &self.sigma
    }

    pub fn spec(&self) -> &DerivationSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.map, DerivMap::Zero)
    }

    pub fn apply(&self, a: &Elem) -> Elem {
        self.map.apply(self.ring(), a)
    }

    /// `D^k(a)`.
    pub fn apply_pow(&self, a: &Elem, k: u64) -> Elem {
        let mut out = a.clone();
        for _ in 0..k {
            if self.ring().is_zero(&out) {
                break;
            }
            out = self.apply(&out);
        }
        out
    }

    /// `D*` on the Dorroh extension, paired with `σ*`.
    pub fn dorroh_lift(&self, ext: &Ring) -> Result<Derivation> {
        let sigma = self.sigma.dorroh_lift(ext)?;
        Derivation::new(&sigma, &DerivationSpec::Dorroh(Box::new(self.spec.clone())))
    }
}

/// Checks that `σ` is additive, multiplicative and inverted by its declared inverse.
pub fn check_automorphism(sigma: &Automorphism, set: &VerificationSet) -> Verdict {
    let r = sigma.ring();
    for a in &set.singles {
        let back = sigma.apply_inverse(&sigma.apply(a));
        let forth = sigma.apply(&sigma.apply_inverse(a));
        if back != *a || forth != *a {
            return Verdict::Fail(Witness::new(
                r,
                "declared inverse does not invert sigma",
                &[a],
            ));
        }
    }
    for (a, b) in &set.pairs {
        if sigma.apply(&r.add(a, b)) != r.add(&sigma.apply(a), &sigma.apply(b)) {
            return Verdict::Fail(Witness::new(r, "sigma(a+b) != sigma(a)+sigma(b)", &[a, b]));
        }
        if sigma.apply(&r.mul(a, b)) != r.mul(&sigma.apply(a), &sigma.apply(b)) {
            return Verdict::Fail(Witness::new(r, "sigma(ab) != sigma(a)sigma(b)", &[a, b]));
        }
    }
    Verdict::Pass
}

/// Checks additivity and `D(ab) = σ(a)D(b) + D(a)b`.
pub fn check_sigma_derivation(d: &Derivation, set: &VerificationSet) -> Verdict {
    let r = d.ring();
    let s = d.sigma();
    for (a, b) in &set.pairs {
        if d.apply(&r.add(a, b)) != r.add(&d.apply(a), &d.apply(b)) {
            return Verdict::Fail(Witness::new(r, "D(a+b) != D(a)+D(b)", &[a, b]));
        }
        let lhs = d.apply(&r.mul(a, b));
        let rhs = r.add(&r.mul(&s.apply(a), &d.apply(b)), &r.mul(&d.apply(a), b));
        if lhs != rhs {
            return Verdict::Fail(Witness::new(r, "D(ab) != sigma(a)D(b) + D(a)b", &[a, b]));
        }
    }
    Verdict::Pass
}

/// Checks `Dσ = q·σD`. `q` must be a unit of the scalar field.
pub fn check_q_skew(d: &Derivation, q: &Elem, set: &VerificationSet) -> Result<Verdict> {
    let r = d.ring();
    let field = r
        .scalar_field()
        .ok_or_else(|| Error::Config(format!("{r} has no scalar field, so q is undefined")))?;
    if field.unit_inverse(q).is_none() {
        return Err(Error::Config(format!(
            "q = {} is not a unit of {field}",
            field.display(q)
        )));
    }
    let s = d.sigma();
    for a in &set.singles {
        let lhs = d.apply(&s.apply(a));
        let rhs = r.scale(q, &s.apply(&d.apply(a)));
        if lhs != rhs {
            return Ok(Verdict::Fail(Witness::new(
                r,
                "D(sigma(a)) != q sigma(D(a))",
                &[a],
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// Checks `σD = Dσ`.
pub fn check_commuting(d: &Derivation, set: &VerificationSet) -> Verdict {
    let r = d.ring();
    let s = d.sigma();
    for a in &set.singles {
        if d.apply(&s.apply(a)) != s.apply(&d.apply(a)) {
            return Verdict::Fail(Witness::new(r, "D(sigma(a)) != sigma(D(a))", &[a]));
        }
    }
    Verdict::Pass
}

/// Least `n ≤ bound` with `σ^n(a) = a`.
pub fn torsion_order(sigma: &Automorphism, a: &Elem, bound: u64) -> Option<u64> {
    let mut cur = sigma.apply(a);
    for n in 1..=bound {
        if cur == *a {
            return Some(n);
        }
        cur = sigma.apply(&cur);
    }
    None
}

/// Per-element torsion orders over `gens` and their maximum, which is absent
/// as soon as one element has no order within `bound`.
pub fn torsion_profile(
    sigma: &Automorphism,
    gens: &[Elem],
    bound: u64,
) -> (Vec<Option<u64>>, Option<u64>) {
    let orders: Vec<Option<u64>> = gens
        .iter()
        .map(|g| torsion_order(sigma, g, bound))
        .collect();
    let max = orders.iter().try_fold(1u64, |acc, o| o.map(|o| acc.max(o)));
    (orders, max)
}

/// Least `m ≤ bound` with `D^m(a) = 0`.
pub fn nilpotence_order(d: &Derivation, a: &Elem, bound: u64) -> Option<u64> {
    let mut cur = d.apply(a);
    for m in 1..=bound {
        if d.ring().is_zero(&cur) {
            return Some(m);
        }
        cur = d.apply(&cur);
    }
    None
}

/// Per-element nilpotence orders over `gens` and their maximum.
pub fn nilpotence_profile(
    d: &Derivation,
    gens: &[Elem],
    bound: u64,
) -> (Vec<Option<u64>>, Option<u64>) {
    let orders: Vec<Option<u64>> = gens.iter().map(|g| nilpotence_order(d, g, bound)).collect();
    let max = orders.iter().try_fold(1u64, |acc, o| o.map(|o| acc.max(o)));
    (orders, max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{dorroh_extend, make_ring, RingSpec};
    use serde_json::json;

    fn ring(spec: RingSpec) -> Ring {
        make_ring(&spec).unwrap()
    }

    fn quantum_plane() -> (Ring, Derivation) {
        let r = ring(RingSpec::truncated(RingSpec::prime_field(7), 6));
        let s = Automorphism::new(&r, &AutomorphismSpec::Scale(json!(2))).unwrap();
        let d = Derivation::new(&s, &DerivationSpec::QDifference).unwrap();
        (r, d)
    }

    #[test]
    fn spec_json_forms() {
        let s: AutomorphismSpec = serde_json::from_value(json!({"scale": 2})).unwrap();
        assert_eq!(s, AutomorphismSpec::Scale(json!(2)));
        let s: AutomorphismSpec = serde_json::from_value(json!("identity")).unwrap();
        assert_eq!(s, AutomorphismSpec::Identity);
        let s: AutomorphismSpec =
            serde_json::from_value(json!({"dorroh": {"frobenius": 1}})).unwrap();
        assert_eq!(
            s,
            AutomorphismSpec::Dorroh(Box::new(AutomorphismSpec::Frobenius(1)))
        );
        let d: DerivationSpec = serde_json::from_value(json!("q_difference")).unwrap();
        assert_eq!(d, DerivationSpec::QDifference);
        assert!(serde_json::from_value::<AutomorphismSpec>(json!("rotate")).is_err());
    }

    #[test]
    fn ordinary_derivative_is_a_derivation() {
        let r = ring(RingSpec::truncated(RingSpec::prime_field(3), 9));
        let d = Derivation::new(
            &Automorphism::identity(&r),
            &DerivationSpec::FormalDerivative,
        )
        .unwrap();
        let set = VerificationSet::for_ring(&r, 1);
        assert!(check_sigma_derivation(&d, &set).passed());
    }

    #[test]
    fn q_difference_is_a_sigma_derivation() {
        let (r, d) = quantum_plane();
        let set = VerificationSet::for_ring(&r, 1);
        assert!(check_automorphism(d.sigma(), &set).passed());
        assert!(check_sigma_derivation(&d, &set).passed());
    }

    #[test]
    fn plain_derivative_with_scaling_fails_at_y_y() {
        let r = ring(RingSpec::truncated(RingSpec::prime_field(7), 6));
        let s = Automorphism::new(&r, &AutomorphismSpec::Scale(json!(2))).unwrap();
        let d = Derivation::new(&s, &DerivationSpec::FormalDerivative).unwrap();
        let verdict = check_sigma_derivation(&d, &VerificationSet::for_ring(&r, 1));
        let w = verdict.witness().expect("must fail");
        let y = json!([0, 1, 0, 0, 0, 0]);
        assert_eq!(w.elements, vec![y.clone(), y.clone()]);
        // D(y^2) = 2y against sigma(y)D(y) + D(y)y = 3y
        let yy = r.mul(&r.variable().unwrap(), &r.variable().unwrap());
        assert_eq!(r.display(&d.apply(&yy)), "2y");
    }

    #[test]
    fn q_skew_examples() {
        let (r, d) = quantum_plane();
        let set = VerificationSet::for_ring(&r, 1);
        assert!(check_q_skew(&d, &Elem::Int(2), &set).unwrap().passed());
        assert!(!check_q_skew(&d, &Elem::Int(3), &set).unwrap().passed());
        assert!(matches!(
            check_q_skew(&d, &Elem::Int(0), &set),
            Err(Error::Config(_))
        ));

        let zero = Derivation::zero(d.sigma());
        for q in 1..7 {
            assert!(check_q_skew(&zero, &Elem::Int(q), &set).unwrap().passed());
        }

        let r3 = ring(RingSpec::truncated(RingSpec::prime_field(3), 9));
        let dd = Derivation::new(
            &Automorphism::identity(&r3),
            &DerivationSpec::FormalDerivative,
        )
        .unwrap();
        assert!(
            check_q_skew(&dd, &Elem::Int(1), &VerificationSet::for_ring(&r3, 1))
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn q_skew_needs_a_scalar_field() {
        let r = ring(RingSpec::modular(4));
        let d = Derivation::zero(&Automorphism::identity(&r));
        let set = VerificationSet::for_ring(&r, 0);
        assert!(matches!(
            check_q_skew(&d, &Elem::Int(1), &set),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn commuting_examples() {
        let (r, d) = quantum_plane();
        let verdict = check_commuting(&d, &VerificationSet::for_ring(&r, 1));
        let w = verdict.witness().expect("must fail");
        assert_eq!(w.elements, vec![json!([0, 1, 0, 0, 0, 0])]);
        let y = r.variable().unwrap();
        assert_eq!(
            d.apply(&d.sigma().apply(&y)),
            r.from_json(&json!([2])).unwrap()
        );
        assert_eq!(d.sigma().apply(&d.apply(&y)), r.one().unwrap());

        let r4 = ring(RingSpec::truncated(RingSpec::galois(2, 2), 3));
        let frob = Automorphism::new(&r4, &AutomorphismSpec::Frobenius(1)).unwrap();
        let set = VerificationSet::for_ring(&r4, 1);
        assert!(check_automorphism(&frob, &set).passed());
        assert!(check_commuting(&Derivation::zero(&frob), &set).passed());

        let z = ring(RingSpec::modular(4));
        assert!(check_commuting(
            &Derivation::zero(&Automorphism::identity(&z)),
            &VerificationSet::for_ring(&z, 0)
        )
        .passed());
    }

    #[test]
    fn torsion_examples() {
        let f4 = ring(RingSpec::galois(2, 2));
        let frob = Automorphism::new(&f4, &AutomorphismSpec::Frobenius(1)).unwrap();
        let w = f4.from_json(&json!([0, 1])).unwrap();
        assert_eq!(torsion_order(&frob, &w, 10), Some(2));
        assert_eq!(torsion_order(&frob, &f4.one().unwrap(), 10), Some(1));
        assert_eq!(torsion_order(&Automorphism::identity(&f4), &w, 1), Some(1));

        let dss = ring(RingSpec::direct_sum_shift(RingSpec::modular(4)));
        let shift = Automorphism::new(&dss, &AutomorphismSpec::Shift(1)).unwrap();
        let a = dss.from_json(&json!({"0": 1})).unwrap();
        assert_eq!(torsion_order(&shift, &a, 1000), None);
        assert_eq!(torsion_order(&shift, &dss.zero(), 1000), Some(1));
        // shift moves support up: sigma(a)_i = a_(i-1)
        assert_eq!(dss.to_json(&shift.apply(&a)), json!({"1": 1}));

        let (orders, max) = torsion_profile(&frob, &f4.spanning_set(), 10);
        assert_eq!(orders, vec![Some(1), Some(2)]);
        assert_eq!(max, Some(2));
    }

    #[test]
    fn nilpotence_examples() {
        let r = ring(RingSpec::truncated(RingSpec::prime_field(3), 9));
        let d = Derivation::new(
            &Automorphism::identity(&r),
            &DerivationSpec::FormalDerivative,
        )
        .unwrap();
        let y = r.variable().unwrap();
        assert_eq!(nilpotence_order(&d, &r.pow(&y, 3), 10), Some(1));
        assert_eq!(nilpotence_order(&d, &r.pow(&y, 2), 10), Some(3));
        assert_eq!(nilpotence_order(&d, &r.pow(&y, 5), 2), None);
        assert_eq!(nilpotence_order(&d, &r.pow(&y, 5), 3), Some(3));
        let zero = Derivation::zero(&Automorphism::identity(&r));
        assert_eq!(nilpotence_order(&zero, &y, 1), Some(1));
    }

    #[test]
    fn resolution_errors() {
        let z4 = ring(RingSpec::modular(4));
        assert!(Automorphism::new(&z4, &AutomorphismSpec::Shift(1)).is_err());
        assert!(Automorphism::new(&z4, &AutomorphismSpec::Frobenius(1)).is_err());
        assert!(Automorphism::new(&z4, &AutomorphismSpec::Scale(json!(3))).is_err());
        let tp = ring(RingSpec::truncated(RingSpec::prime_field(7), 6));
        assert!(Automorphism::new(&tp, &AutomorphismSpec::Scale(json!(0))).is_err());
        let frob = Automorphism::new(
            &ring(RingSpec::truncated(RingSpec::galois(2, 2), 3)),
            &AutomorphismSpec::Frobenius(1),
        )
        .unwrap();
        assert!(Derivation::new(&frob, &DerivationSpec::QDifference).is_err());
    }

    #[test]
    fn dorroh_lifts_verify() {
        let inner = ring(RingSpec::truncated(RingSpec::prime_field(5), 2));
        let f5 = ring(RingSpec::prime_field(5));
        let ext = dorroh_extend(&inner, &f5).unwrap();
        // q = 4 has [2]_q = 5 = 0, so the q-difference respects y^2 = 0
        let sigma = Automorphism::new(&inner, &AutomorphismSpec::Scale(json!(4))).unwrap();
        let lifted = sigma.dorroh_lift(&ext).unwrap();
        let set = VerificationSet::for_ring(&ext, 3);
        assert!(check_automorphism(&lifted, &set).passed());
        let d = Derivation::new(&sigma, &DerivationSpec::QDifference).unwrap();
        assert!(check_sigma_derivation(&d.dorroh_lift(&ext).unwrap(), &set).passed());

        let r = ring(RingSpec::truncated(RingSpec::prime_field(3), 3));
        let f3 = ring(RingSpec::prime_field(3));
        let ext = dorroh_extend(&r, &f3).unwrap();
        let d = Derivation::new(
            &Automorphism::identity(&r),
            &DerivationSpec::FormalDerivative,
        )
        .unwrap();
        let lifted = d.dorroh_lift(&ext).unwrap();
        assert!(check_sigma_derivation(&lifted, &VerificationSet::for_ring(&ext, 0)).passed());
        assert_eq!(lifted.apply(&ext.one().unwrap()), ext.zero());
    }

    #[test]
    fn dorroh_lift_of_a_semilinear_map_is_not_multiplicative() {
        // sigma* fixes the scalar m, so it only respects m·r when sigma is F-linear
        let inner = ring(RingSpec::truncated(RingSpec::galois(2, 2), 2));
        let f4 = ring(RingSpec::galois(2, 2));
        let ext = dorroh_extend(&inner, &f4).unwrap();
        let sigma = Automorphism::new(&inner, &AutomorphismSpec::Frobenius(1)).unwrap();
        assert!(check_automorphism(&sigma, &VerificationSet::for_ring(&inner, 0)).passed());
        let lifted = sigma.dorroh_lift(&ext).unwrap();
        let verdict = check_automorphism(&lifted, &VerificationSet::for_ring(&ext, 0));
        assert!(verdict.witness().unwrap().description.contains("sigma(ab)"));
    }
}
