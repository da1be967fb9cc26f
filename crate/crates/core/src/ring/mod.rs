//! Concrete coefficient rings with canonical element normal forms.
//!
//! A [`Ring`] is a cheap, shareable handle; elements are plain [`Elem`]
//! payloads interpreted by the ring that owns them. All finite kinds can be
//! enumerated (up to [`ENUMERATION_LIMIT`] elements), which is what the
//! brute-force radical oracles in [`oracle`] rely on.

mod elem;
mod gf;
pub mod oracle;
mod payload;
mod spec;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub use elem::Elem;
pub use oracle::{
    center, jacobson_radical, nilpotency_index, nilradical, quasi_inverse_elem, quotient, Ideal,
};
pub use spec::RingSpec;

use crate::error::{Error, Result};
use gf::GfData;

/// Oracles refuse rings with more elements than this.
pub const ENUMERATION_LIMIT: u128 = 1 << 16;

/// Spanning samples for untruncated polynomial rings use monomials below this degree.
const SPAN_DEGREE: usize = 6;
/// Spanning samples for direct sums use indices in `-SPAN_WINDOW..=SPAN_WINDOW`.
const SPAN_WINDOW: i64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Shape {
    Full,
    Upper,
    StrictUpper,
}

impl Shape {
    fn allows(self, i: usize, j: usize) -> bool {
        match self {
            Shape::Full => true,
            Shape::Upper => i <= j,
            Shape::StrictUpper => i < j,
        }
    }
}

pub(crate) struct QuotientData {
    pub base: Ring,
    pub canon: HashMap<Elem, Elem>,
    pub reps: Vec<Elem>,
}

pub(crate) enum Kind {
    Residue { n: u64, field: bool },
    Galois(GfData),
    Rationals,
    Truncated { base: Ring, n: usize },
    Polynomial { base: Ring },
    Matrix { base: Ring, d: usize, shape: Shape },
    DirectSumShift { base: Ring },
    Dorroh { inner: Ring, scalar: Ring },
    Quotient(Box<QuotientData>),
}

struct RingData {
    kind: Kind,
    spec: Option<RingSpec>,
    label: String,
    zero: Elem,
    one: Option<Elem>,
    characteristic: OnceLock<u64>,
    elements: OnceLock<Option<Arc<Vec<Elem>>>>,
}

/// Shared handle to a coefficient ring.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.label)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.label)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.spec.is_some() && self.0.spec == other.0.spec)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn lcm_opt(a: Option<u64>, b: Option<u64>) -> Option<u64> {
    let (a, b) = (a?, b?);
    let g = a.gcd(&b);
    (a / g).checked_mul(b)
}

pub(crate) fn strip(mut v: Vec<Elem>, zero: &Elem) -> Vec<Elem> {
    while v.last() == Some(zero) {
        v.pop();
    }
    v
}

/// Mixed-radix product of the factor lists, first factor varying fastest.
fn cartesian(factors: &[Arc<Vec<Elem>>]) -> Vec<Vec<Elem>> {
    let total: usize = factors.iter().map(|f| f.len()).product();
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut item = Vec::with_capacity(factors.len());
        for f in factors {
            item.push(f[idx % f.len()].clone());
            idx /= f.len();
        }
        out.push(item);
    }
    out
}

/// Builds a ring from its declarative description, validating parameters.
pub fn make_ring(spec: &RingSpec) -> Result<Ring> {
    let kind = match spec {
        RingSpec::ModularInt(n) => {
            if *n < 2 {
                return Err(Error::Config(format!(
                    "modulus must be at least 2, got {n}"
                )));
            }
            Kind::Residue {
                n: *n,
                field: false,
            }
        }
        RingSpec::PrimeField(p) => {
            if !is_prime(*p) {
                return Err(Error::Config(format!("{p} is not prime")));
            }
            Kind::Residue { n: *p, field: true }
        }
        RingSpec::GaloisField { p, k } => {
            if !is_prime(*p) {
                return Err(Error::Config(format!("{p} is not prime")));
            }
            if *k == 0 {
                return Err(Error::Config(
                    "extension degree k must be at least 1".into(),
                ));
            }
            if (*p as u128)
                .checked_pow(*k as u32)
                .is_none_or(|q| q > u64::MAX as u128)
            {
                return Err(Error::Config(format!("GF({p}^{k}) is too large")));
            }
            Kind::Galois(GfData::new(*p, *k))
        }
        RingSpec::Rationals => Kind::Rationals,
        RingSpec::TruncatedPoly { base, n } => {
            if *n == 0 {
                return Err(Error::Config(
                    "truncation degree N must be at least 1".into(),
                ));
            }
            Kind::Truncated {
                base: make_ring(base)?,
                n: *n,
            }
        }
        RingSpec::Polynomial { base } => Kind::Polynomial {
            base: make_ring(base)?,
        },
        RingSpec::Matrix { base, d }
        | RingSpec::UpperTriangular { base, d }
        | RingSpec::StrictlyUpperTriangular { base, d } => {
            if *d == 0 {
                return Err(Error::Config(
                    "matrix dimension d must be at least 1".into(),
                ));
            }
            let shape = match spec {
                RingSpec::Matrix { .. } => Shape::Full,
                RingSpec::UpperTriangular { .. } => Shape::Upper,
                _ => Shape::StrictUpper,
            };
            Kind::Matrix {
                base: make_ring(base)?,
                d: *d,
                shape,
            }
        }
        RingSpec::DirectSumShift { base } => Kind::DirectSumShift {
            base: make_ring(base)?,
        },
        RingSpec::Dorroh { inner, scalar } => {
            return dorroh_extend(&make_ring(inner)?, &make_ring(scalar)?);
        }
    };
    Ok(Ring::from_kind(kind, Some(spec.clone()), spec.to_string()))
}

/// Unitalization `R ⊕ F` with `(r1,m1)(r2,m2) = (r1 r2 + m2 r1 + m1 r2, m1 m2)`.
///
/// `F` must be a field and `R` an `F`-algebra.
pub fn dorroh_extend(inner: &Ring, scalar: &Ring) -> Result<Ring> {
    if !scalar.is_field() {
        return Err(Error::Config(format!(
            "Dorroh scalar ring {scalar} is not a field"
        )));
    }
    let acts = inner.scalar_field().is_some_and(|f| f.same_scalars(scalar));
    if !acts {
        return Err(Error::Config(format!(
            "scalar action of {scalar} on {inner} is undefined"
        )));
    }
    let spec = match (&inner.0.spec, &scalar.0.spec) {
        (Some(i), Some(s)) => Some(RingSpec::dorroh(i.clone(), s.clone())),
        _ => None,
    };
    let label = format!("Dorroh({inner}, {scalar})");
    Ok(Ring::from_kind(
        Kind::Dorroh {
            inner: inner.clone(),
            scalar: scalar.clone(),
        },
        spec,
        label,
    ))
}

impl Ring {
    fn from_kind(kind: Kind, spec: Option<RingSpec>, label: String) -> Ring {
        let zero = zero_of(&kind);
        let one = one_of(&kind);
        Ring(Arc::new(RingData {
            kind,
            spec,
            label,
            zero,
            one,
            characteristic: OnceLock::new(),
            elements: OnceLock::new(),
        }))
    }

    pub(crate) fn quotient_ring(data: QuotientData, label: String) -> Ring {
        Ring::from_kind(Kind::Quotient(Box::new(data)), None, label)
    }

    pub(crate) fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn spec(&self) -> Option<&RingSpec> {
        self.0.spec.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn zero(&self) -> Elem {
        self.0.zero.clone()
    }

    pub fn one(&self) -> Option<Elem> {
        self.0.one.clone()
    }

    pub fn has_identity(&self) -> bool {
        self.0.one.is_some()
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        *a == self.0.zero
    }

    /// Least `c > 0` with `c·1 = 0` (unital) or `c·s = 0` for every spanning
    /// element (non-unital); 0 when no such `c` exists.
    pub fn characteristic(&self) -> u64 {
        *self.0.characteristic.get_or_init(|| {
            let order = match &self.0.one {
                Some(one) => self.additive_order(one),
                None => self
                    .spanning_set()
                    .iter()
                    .fold(Some(1), |acc, s| lcm_opt(acc, self.additive_order(s))),
            };
            order.unwrap_or(0)
        })
    }

    /// Whether this ring is a field kind (prime field, Galois field, rationals).
    pub fn is_field(&self) -> bool {
        match &self.0.kind {
            Kind::Residue { n, .. } => is_prime(*n),
            Kind::Galois(_) | Kind::Rationals => true,
            _ => false,
        }
    }

    fn same_scalars(&self, other: &Ring) -> bool {
        match (&self.0.kind, &other.0.kind) {
            (Kind::Residue { n: a, .. }, Kind::Residue { n: b, .. }) => a == b,
            (Kind::Galois(a), Kind::Galois(b)) => a.p == b.p && a.k == b.k,
            (Kind::Rationals, Kind::Rationals) => true,
            _ => false,
        }
    }

    /// The field this ring is an algebra over, when it has one.
    pub fn scalar_field(&self) -> Option<Ring> {
        match &self.0.kind {
            Kind::Residue { n, field } => {
                if *field {
                    Some(self.clone())
                } else if is_prime(*n) {
                    make_ring(&RingSpec::PrimeField(*n)).ok()
                } else {
                    None
                }
            }
            Kind::Galois(_) | Kind::Rationals => Some(self.clone()),
            Kind::Truncated { base, .. }
            | Kind::Polynomial { base }
            | Kind::Matrix { base, .. }
            | Kind::DirectSumShift { base } => base.scalar_field(),
            Kind::Dorroh { scalar, .. } => Some(scalar.clone()),
            Kind::Quotient(q) => q
                .base
                .scalar_field()
                .filter(|f| matches!(f.0.kind, Kind::Residue { .. })),
        }
    }

    /// Underlying coefficient ring of a polynomial, matrix or sequence kind.
    pub fn base(&self) -> Option<&Ring> {
        match &self.0.kind {
            Kind::Truncated { base, .. }
            | Kind::Polynomial { base }
            | Kind::Matrix { base, .. }
            | Kind::DirectSumShift { base } => Some(base),
            Kind::Quotient(q) => Some(&q.base),
            _ => None,
        }
    }

    /// `(inner, scalar)` of a Dorroh extension.
    pub fn dorroh_parts(&self) -> Option<(&Ring, &Ring)> {
        match &self.0.kind {
            Kind::Dorroh { inner, scalar } => Some((inner, scalar)),
            _ => None,
        }
    }

    pub fn is_direct_sum_shift(&self) -> bool {
        matches!(self.0.kind, Kind::DirectSumShift { .. })
    }

    // ---- arithmetic -------------------------------------------------------

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match &self.0.kind {
            Kind::Residue { n, .. } => {
                Elem::Int(((a.as_int() as u128 + b.as_int() as u128) % *n as u128) as u64)
            }
            Kind::Galois(gf) => ints_to_elem(gf.add(&elem_ints(a), &elem_ints(b))),
            Kind::Rationals => Elem::Rat(a.as_rat() + b.as_rat()),
            Kind::Truncated { base, .. } | Kind::Matrix { base, .. } => Elem::Vector(
                a.as_vec()
                    .iter()
                    .zip(b.as_vec())
                    .map(|(x, y)| base.add(x, y))
                    .collect(),
            ),
            Kind::Polynomial { base } => {
                let (a, b) = (a.as_vec(), b.as_vec());
                let len = a.len().max(b.len());
                let zero = base.zero();
                let v = (0..len)
                    .map(|i| base.add(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
                    .collect();
                Elem::Vector(strip(v, &zero))
            }
            Kind::DirectSumShift { base } => {
                let mut out = a.as_seq().clone();
                for (idx, v) in b.as_seq() {
                    let sum = match out.get(idx) {
                        Some(u) => base.add(u, v),
                        None => v.clone(),
                    };
                    if base.is_zero(&sum) {
                        out.remove(idx);
                    } else {
                        out.insert(*idx, sum);
                    }
                }
                Elem::Seq(out)
            }
            Kind::Dorroh { inner, scalar } => {
                let ((r1, m1), (r2, m2)) = (a.as_pair(), b.as_pair());
                Elem::pair(inner.add(r1, r2), scalar.add(m1, m2))
            }
            Kind::Quotient(q) => q.canon(&q.base.add(a, b)),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match &self.0.kind {
            Kind::Residue { n, .. } => Elem::Int((*n - a.as_int()) % *n),
            Kind::Galois(gf) => ints_to_elem(gf.neg(&elem_ints(a))),
            Kind::Rationals => Elem::Rat(-a.as_rat()),
            Kind::Truncated { base, .. }
            | Kind::Matrix { base, .. }
            | Kind::Polynomial { base } => {
                Elem::Vector(a.as_vec().iter().map(|x| base.neg(x)).collect())
            }
            Kind::DirectSumShift { base } => {
                Elem::Seq(a.as_seq().iter().map(|(i, v)| (*i, base.neg(v))).collect())
            }
            Kind::Dorroh { inner, scalar } => {
                let (r, m) = a.as_pair();
                Elem::pair(inner.neg(r), scalar.neg(m))
            }
            Kind::Quotient(q) => q.canon(&q.base.neg(a)),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match &self.0.kind {
            Kind::Residue { n, .. } => Elem::Int(mulmod(a.as_int(), b.as_int(), *n)),
            Kind::Galois(gf) => ints_to_elem(gf.mul(&elem_ints(a), &elem_ints(b))),
            Kind::Rationals => Elem::Rat(a.as_rat() * b.as_rat()),
            Kind::Truncated { base, n } => {
                let (a, b) = (a.as_vec(), b.as_vec());
                let mut out = vec![base.zero(); *n];
                for (i, x) in a.iter().enumerate() {
                    if base.is_zero(x) {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate().take(n - i) {
                        out[i + j] = base.add(&out[i + j], &base.mul(x, y));
                    }
                }
                Elem::Vector(out)
            }
            Kind::Polynomial { base } => {
                let (a, b) = (a.as_vec(), b.as_vec());
                if a.is_empty() || b.is_empty() {
                    return Elem::Vector(Vec::new());
                }
                let mut out = vec![base.zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if base.is_zero(x) {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] = base.add(&out[i + j], &base.mul(x, y));
                    }
                }
                Elem::Vector(strip(out, &base.zero()))
            }
            Kind::Matrix { base, d, .. } => {
                let (a, b) = (a.as_vec(), b.as_vec());
                let d = *d;
                let mut out = Vec::with_capacity(d * d);
                for i in 0..d {
                    for j in 0..d {
                        let mut acc = base.zero();
                        for k in 0..d {
                            let x = &a[i * d + k];
                            if base.is_zero(x) {
                                continue;
                            }
                            acc = base.add(&acc, &base.mul(x, &b[k * d + j]));
                        }
                        out.push(acc);
                    }
                }
                Elem::Vector(out)
            }
            Kind::DirectSumShift { base } => {
                let b = b.as_seq();
                let out = a
                    .as_seq()
                    .iter()
                    .filter_map(|(i, x)| {
                        let prod = base.mul(x, b.get(i)?);
                        (!base.is_zero(&prod)).then_some((*i, prod))
                    })
                    .collect();
                Elem::Seq(out)
            }
            Kind::Dorroh { inner, scalar } => {
                let ((r1, m1), (r2, m2)) = (a.as_pair(), b.as_pair());
                let r = inner.add(
                    &inner.mul(r1, r2),
                    &inner.add(&inner.scale(m2, r1), &inner.scale(m1, r2)),
                );
                Elem::pair(r, scalar.mul(m1, m2))
            }
            Kind::Quotient(q) => q.canon(&q.base.mul(a, b)),
        }
    }

    /// `k·a` for an integer `k`.
    pub fn mul_int(&self, a: &Elem, k: i64) -> Elem {
        match &self.0.kind {
            Kind::Residue { n, .. } => {
                let k = (k as i128).rem_euclid(*n as i128) as u64;
                Elem::Int(mulmod(a.as_int(), k, *n))
            }
            Kind::Galois(gf) => {
                let k = (k as i128).rem_euclid(gf.p as i128) as u64;
                ints_to_elem(elem_ints(a).iter().map(|&c| mulmod(c, k, gf.p)).collect())
            }
            Kind::Rationals => Elem::Rat(a.as_rat() * BigRational::from_integer(BigInt::from(k))),
            Kind::Truncated { base, .. } | Kind::Matrix { base, .. } => {
                Elem::Vector(a.as_vec().iter().map(|x| base.mul_int(x, k)).collect())
            }
            Kind::Polynomial { base } => Elem::Vector(strip(
                a.as_vec().iter().map(|x| base.mul_int(x, k)).collect(),
                &base.zero(),
            )),
            Kind::DirectSumShift { base } => Elem::Seq(
                a.as_seq()
                    .iter()
                    .map(|(i, v)| (*i, base.mul_int(v, k)))
                    .filter(|(_, v)| !base.is_zero(v))
                    .collect(),
            ),
            Kind::Dorroh { inner, scalar } => {
                let (r, m) = a.as_pair();
                Elem::pair(inner.mul_int(r, k), scalar.mul_int(m, k))
            }
            Kind::Quotient(q) => q.canon(&q.base.mul_int(a, k)),
        }
    }

    /// `m·a` for `m` in [`scalar_field`](Self::scalar_field).
    pub fn scale(&self, m: &Elem, a: &Elem) -> Elem {
        if let Elem::Int(k) = m {
            return self.mul_int(a, *k as i64);
        }
        match &self.0.kind {
            Kind::Galois(_) | Kind::Rationals => self.mul(m, a),
            Kind::Truncated { base, .. } | Kind::Matrix { base, .. } => {
                Elem::Vector(a.as_vec().iter().map(|x| base.scale(m, x)).collect())
            }
            Kind::Polynomial { base } => Elem::Vector(strip(
                a.as_vec().iter().map(|x| base.scale(m, x)).collect(),
                &base.zero(),
            )),
            Kind::DirectSumShift { base } => Elem::Seq(
                a.as_seq()
                    .iter()
                    .map(|(i, v)| (*i, base.scale(m, v)))
                    .filter(|(_, v)| !base.is_zero(v))
                    .collect(),
            ),
            Kind::Dorroh { inner, scalar } => {
                let (r, s) = a.as_pair();
                Elem::pair(inner.scale(m, r), scalar.mul(m, s))
            }
            Kind::Quotient(q) => q.canon(&q.base.scale(m, a)),
            Kind::Residue { .. } => unreachable!("residue rings only take integer scalars"),
        }
    }

    /// `k·1`, for unital rings.
    pub fn from_int(&self, k: i64) -> Option<Elem> {
        self.0.one.as_ref().map(|one| self.mul_int(one, k))
    }

    /// `k·1` for an arbitrary-size integer, for unital rings.
    pub fn from_bigint(&self, k: &BigInt) -> Option<Elem> {
        let one = self.0.one.as_ref()?;
        Some(match &self.0.kind {
            Kind::Rationals => Elem::Rat(BigRational::from_integer(k.clone())),
            _ => {
                let c = self.characteristic();
                let reduced = if c == 0 {
                    i64::try_from(k).ok()?
                } else {
                    let r = k.mod_floor(&BigInt::from(c));
                    i64::try_from(&r).ok()?
                };
                self.mul_int(one, reduced)
            }
        })
    }

    /// `a^k`; `k = 0` requires an identity.
    pub fn pow(&self, a: &Elem, k: u64) -> Elem {
        if k == 0 {
            return self.one().expect("a^0 needs an identity element");
        }
        let mut result: Option<Elem> = None;
        let mut base = a.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    Some(r) => self.mul(&r, &base),
                    None => base.clone(),
                });
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result.expect("k >= 1")
    }

    /// Two-sided multiplicative inverse, when one exists and can be found.
    pub fn unit_inverse(&self, a: &Elem) -> Option<Elem> {
        let one = self.one()?;
        let found = match &self.0.kind {
            Kind::Residue { n, .. } => {
                let g = (a.as_int() as i128).extended_gcd(&(*n as i128));
                (g.gcd == 1).then(|| Elem::Int(g.x.rem_euclid(*n as i128) as u64))
            }
            Kind::Galois(gf) => gf.inverse(&elem_ints(a)).map(ints_to_elem),
            Kind::Rationals => {
                let r = a.as_rat();
                (!r.is_zero()).then(|| Elem::Rat(r.recip()))
            }
            Kind::Truncated { base, n } => {
                // power-series inverse, checked two-sided below
                let a = a.as_vec();
                let c0 = base.unit_inverse(&a[0])?;
                let mut b = vec![c0.clone()];
                for k in 1..*n {
                    let mut acc = base.zero();
                    for i in 1..=k {
                        acc = base.add(&acc, &base.mul(&a[i], &b[k - i]));
                    }
                    b.push(base.neg(&base.mul(&c0, &acc)));
                }
                Some(Elem::Vector(b))
            }
            Kind::Polynomial { base } => match a.as_vec() {
                [c] => base.unit_inverse(c).map(|c| Elem::Vector(vec![c])),
                _ => None,
            },
            _ => {
                let elems = self.elements().ok()?;
                elems
                    .iter()
                    .find(|s| self.mul(a, s) == one && self.mul(s, a) == one)
                    .cloned()
            }
        }?;
        (self.mul(a, &found) == one && self.mul(&found, a) == one).then_some(found)
    }

    /// Additive order of `a`; `None` when infinite.
    pub fn additive_order(&self, a: &Elem) -> Option<u64> {
        match &self.0.kind {
            Kind::Residue { n, .. } => Some(n / a.as_int().gcd(n)),
            Kind::Galois(gf) => Some(if elem_ints(a).iter().all(|&c| c == 0) {
                1
            } else {
                gf.p
            }),
            Kind::Rationals => a.as_rat().is_zero().then_some(1),
            Kind::Truncated { base, .. }
            | Kind::Matrix { base, .. }
            | Kind::Polynomial { base } => a
                .as_vec()
                .iter()
                .fold(Some(1), |acc, x| lcm_opt(acc, base.additive_order(x))),
            Kind::DirectSumShift { base } => a
                .as_seq()
                .values()
                .fold(Some(1), |acc, x| lcm_opt(acc, base.additive_order(x))),
            Kind::Dorroh { inner, scalar } => {
                let (r, m) = a.as_pair();
                lcm_opt(inner.additive_order(r), scalar.additive_order(m))
            }
            Kind::Quotient(q) => {
                let mut acc = a.clone();
                for k in 1..=q.reps.len() as u64 {
                    if self.is_zero(&acc) {
                        return Some(k);
                    }
                    acc = self.add(&acc, a);
                }
                None
            }
        }
    }

    // ---- enumeration and sampling -----------------------------------------

    /// Number of elements, `None` for infinite rings. Saturates at `u128::MAX`.
    pub fn size(&self) -> Option<u128> {
        let pow =
            |b: u128, e: usize| -> u128 { (0..e).fold(1u128, |acc, _| acc.saturating_mul(b)) };
        match &self.0.kind {
            Kind::Residue { n, .. } => Some(*n as u128),
            Kind::Galois(gf) => gf.order(),
            Kind::Rationals | Kind::Polynomial { .. } | Kind::DirectSumShift { .. } => None,
            Kind::Truncated { base, n } => Some(pow(base.size()?, *n)),
            Kind::Matrix { base, d, shape } => {
                let cells = (0..*d)
                    .flat_map(|i| (0..*d).map(move |j| (i, j)))
                    .filter(|&(i, j)| shape.allows(i, j))
                    .count();
                Some(pow(base.size()?, cells))
            }
            Kind::Dorroh { inner, scalar } => Some(inner.size()?.saturating_mul(scalar.size()?)),
            Kind::Quotient(q) => Some(q.reps.len() as u128),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// All elements in canonical order. Refuses infinite rings and rings with
    /// more than [`ENUMERATION_LIMIT`] elements.
    pub fn elements(&self) -> Result<Arc<Vec<Elem>>> {
        self.0
            .elements
            .get_or_init(|| {
                let size = self.size()?;
                (size <= ENUMERATION_LIMIT).then(|| Arc::new(self.enumerate()))
            })
            .clone()
            .ok_or_else(|| match self.size() {
                None => Error::Unsupported(format!("{self} is infinite and cannot be enumerated")),
                Some(s) => Error::Unsupported(format!(
                    "{self} has {s} elements, above the enumeration limit of {ENUMERATION_LIMIT}"
                )),
            })
    }

    fn enumerate(&self) -> Vec<Elem> {
        match &self.0.kind {
            Kind::Residue { n, .. } => (0..*n).map(Elem::Int).collect(),
            Kind::Galois(gf) => {
                let digits = Arc::new((0..gf.p).map(Elem::Int).collect::<Vec<_>>());
                cartesian(&vec![digits; gf.k])
                    .into_iter()
                    .map(Elem::Vector)
                    .collect()
            }
            Kind::Truncated { base, n } => {
                let b = base.elements().expect("size checked");
                cartesian(&vec![b; *n])
                    .into_iter()
                    .map(Elem::Vector)
                    .collect()
            }
            Kind::Matrix { base, d, shape } => {
                let b = base.elements().expect("size checked");
                let zero = Arc::new(vec![base.zero()]);
                let factors: Vec<_> = (0..*d)
                    .flat_map(|i| (0..*d).map(move |j| (i, j)))
                    .map(|(i, j)| {
                        if shape.allows(i, j) {
                            b.clone()
                        } else {
                            zero.clone()
                        }
                    })
                    .collect();
                cartesian(&factors).into_iter().map(Elem::Vector).collect()
            }
            Kind::Dorroh { inner, scalar } => {
                let i = inner.elements().expect("size checked");
                let s = scalar.elements().expect("size checked");
                cartesian(&[i, s])
                    .into_iter()
                    .map(|mut v| {
                        let m = v.pop().expect("pair");
                        let r = v.pop().expect("pair");
                        Elem::pair(r, m)
                    })
                    .collect()
            }
            Kind::Quotient(q) => q.reps.clone(),
            Kind::Rationals | Kind::Polynomial { .. } | Kind::DirectSumShift { .. } => {
                unreachable!("infinite kinds are never enumerated")
            }
        }
    }

    /// Additive generators over the prime ring (or the scalar field). For
    /// infinite kinds this is a bounded sample of a basis: monomials below
    /// degree 6 for `base[y]`, indices in `[-2, 2]` for direct sums.
    pub fn spanning_set(&self) -> Vec<Elem> {
        match &self.0.kind {
            Kind::Residue { .. } => vec![Elem::Int(1)],
            Kind::Galois(gf) => (0..gf.k)
                .map(|i| {
                    let mut v = vec![0; gf.k];
                    v[i] = 1;
                    ints_to_elem(v)
                })
                .collect(),
            Kind::Rationals => vec![Elem::Rat(BigRational::one())],
            Kind::Truncated { base, n } => {
                let span = base.spanning_set();
                (0..*n)
                    .flat_map(|i| {
                        span.iter().map(move |s| {
                            let mut v = vec![base.zero(); *n];
                            v[i] = s.clone();
                            Elem::Vector(v)
                        })
                    })
                    .collect()
            }
            Kind::Polynomial { base } => {
                let span = base.spanning_set();
                (0..SPAN_DEGREE)
                    .flat_map(|i| {
                        span.iter().map(move |s| {
                            let mut v = vec![base.zero(); i + 1];
                            v[i] = s.clone();
                            Elem::Vector(v)
                        })
                    })
                    .collect()
            }
            Kind::Matrix { base, d, shape } => {
                let span = base.spanning_set();
                let mut out = Vec::new();
                for i in 0..*d {
                    for j in 0..*d {
                        if !shape.allows(i, j) {
                            continue;
                        }
                        for s in &span {
                            let mut v = vec![base.zero(); d * d];
                            v[i * d + j] = s.clone();
                            out.push(Elem::Vector(v));
                        }
                    }
                }
                out
            }
            Kind::DirectSumShift { base } => {
                let span = base.spanning_set();
                (-SPAN_WINDOW..=SPAN_WINDOW)
                    .flat_map(|i| {
                        span.iter()
                            .map(move |s| Elem::Seq(BTreeMap::from([(i, s.clone())])))
                    })
                    .collect()
            }
            Kind::Dorroh { inner, scalar } => inner
                .spanning_set()
                .into_iter()
                .map(|r| Elem::pair(r, scalar.zero()))
                .chain(
                    scalar
                        .spanning_set()
                        .into_iter()
                        .map(|m| Elem::pair(inner.zero(), m)),
                )
                .collect(),
            Kind::Quotient(q) => {
                let mut out: Vec<Elem> = q.base.spanning_set().iter().map(|s| q.canon(s)).collect();
                out.sort();
                out.dedup();
                out
            }
        }
    }

    /// A seeded pseudo-random element. Infinite kinds draw from a bounded
    /// window: rationals `n/d` with `|n| ≤ 4, d ≤ 3`, polynomials of degree ≤ 3,
    /// sequences supported in `[-3, 3]`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &self.0.kind {
            Kind::Residue { n, .. } => Elem::Int(rng.gen_range(0..*n)),
            Kind::Galois(gf) => ints_to_elem((0..gf.k).map(|_| rng.gen_range(0..gf.p)).collect()),
            Kind::Rationals => {
                let num: i64 = rng.gen_range(-4..=4);
                let den: i64 = rng.gen_range(1..=3);
                Elem::Rat(BigRational::new(num.into(), den.into()))
            }
            Kind::Truncated { base, n } => {
                Elem::Vector((0..*n).map(|_| base.random(rng)).collect())
            }
            Kind::Polynomial { base } => {
                let deg = rng.gen_range(0..=3);
                Elem::Vector(strip(
                    (0..=deg).map(|_| base.random(rng)).collect(),
                    &base.zero(),
                ))
            }
            Kind::Matrix { base, d, shape } => {
                let d = *d;
                Elem::Vector(
                    (0..d * d)
                        .map(|c| {
                            if shape.allows(c / d, c % d) {
                                base.random(rng)
                            } else {
                                base.zero()
                            }
                        })
                        .collect(),
                )
            }
            Kind::DirectSumShift { base } => {
                let mut out = BTreeMap::new();
                for i in -3..=3 {
                    if rng.gen_bool(0.5) {
                        let v = base.random(rng);
                        if !base.is_zero(&v) {
                            out.insert(i, v);
                        }
                    }
                }
                Elem::Seq(out)
            }
            Kind::Dorroh { inner, scalar } => Elem::pair(inner.random(rng), scalar.random(rng)),
            Kind::Quotient(q) => q.canon(&q.base.random(rng)),
        }
    }

    // ---- structured constructors ------------------------------------------

    /// `c·y^i` in a truncated or untruncated polynomial ring.
    pub fn monomial(&self, c: &Elem, i: usize) -> Result<Elem> {
        match &self.0.kind {
            Kind::Truncated { base, n } => {
                let mut v = vec![base.zero(); *n];
                if i < *n {
                    v[i] = c.clone();
                }
                Ok(Elem::Vector(v))
            }
            Kind::Polynomial { base } => {
                let mut v = vec![base.zero(); i + 1];
                v[i] = c.clone();
                Ok(Elem::Vector(strip(v, &base.zero())))
            }
            _ => Err(Error::Usage(format!("{self} has no polynomial variable"))),
        }
    }

    /// The variable `y` of a unital polynomial ring.
    pub fn variable(&self) -> Result<Elem> {
        let base = self
            .base()
            .ok_or_else(|| Error::Usage(format!("{self} has no polynomial variable")))?;
        let one = base
            .one()
            .ok_or_else(|| Error::Usage(format!("{base} has no identity")))?;
        self.monomial(&one, 1)
    }

    /// Matrix unit `c·E_ij`.
    pub fn matrix_unit(&self, i: usize, j: usize, c: &Elem) -> Result<Elem> {
        match &self.0.kind {
            Kind::Matrix { base, d, shape } if i < *d && j < *d && shape.allows(i, j) => {
                let mut v = vec![base.zero(); d * d];
                v[i * d + j] = c.clone();
                Ok(Elem::Vector(v))
            }
            _ => Err(Error::Usage(format!(
                "E_{i}{j} is not an element of {self}"
            ))),
        }
    }

    /// Element of a direct sum supported on the given indices.
    pub fn sequence(&self, entries: impl IntoIterator<Item = (i64, Elem)>) -> Result<Elem> {
        let Kind::DirectSumShift { base } = &self.0.kind else {
            return Err(Error::Usage(format!("{self} is not a direct sum")));
        };
        Ok(Elem::Seq(
            entries
                .into_iter()
                .filter(|(_, v)| !base.is_zero(v))
                .collect(),
        ))
    }

    /// Natural projection into a quotient ring.
    pub fn project(&self, a: &Elem) -> Result<Elem> {
        match &self.0.kind {
            Kind::Quotient(q) => Ok(q.canon(a)),
            _ => Err(Error::Usage(format!("{self} is not a quotient ring"))),
        }
    }
}

impl QuotientData {
    pub(crate) fn canon(&self, a: &Elem) -> Elem {
        self.canon
            .get(a)
            .cloned()
            .expect("quotient base elements are all enumerated")
    }
}

pub(crate) fn elem_ints(a: &Elem) -> Vec<u64> {
    a.as_vec().iter().map(Elem::as_int).collect()
}

pub(crate) fn ints_to_elem(v: Vec<u64>) -> Elem {
    Elem::Vector(v.into_iter().map(Elem::Int).collect())
}

fn zero_of(kind: &Kind) -> Elem {
    match kind {
        Kind::Residue { .. } => Elem::Int(0),
        Kind::Galois(gf) => ints_to_elem(vec![0; gf.k]),
        Kind::Rationals => Elem::Rat(BigRational::zero()),
        Kind::Truncated { base, n } => Elem::Vector(vec![base.zero(); *n]),
        Kind::Polynomial { .. } => Elem::Vector(Vec::new()),
        Kind::Matrix { base, d, .. } => Elem::Vector(vec![base.zero(); d * d]),
        Kind::DirectSumShift { .. } => Elem::Seq(BTreeMap::new()),
        Kind::Dorroh { inner, scalar } => Elem::pair(inner.zero(), scalar.zero()),
        Kind::Quotient(q) => q.canon(&q.base.zero()),
    }
}

fn one_of(kind: &Kind) -> Option<Elem> {
    match kind {
        Kind::Residue { .. } => Some(Elem::Int(1)),
        Kind::Galois(gf) => Some(ints_to_elem(gf.one())),
        Kind::Rationals => Some(Elem::Rat(BigRational::one())),
        Kind::Truncated { base, n } => {
            let mut v = vec![base.zero(); *n];
            v[0] = base.one()?;
            Some(Elem::Vector(v))
        }
        Kind::Polynomial { base } => Some(Elem::Vector(vec![base.one()?])),
        Kind::Matrix { base, d, shape } => {
            if *shape == Shape::StrictUpper {
                return None;
            }
            let one = base.one()?;
            let mut v = vec![base.zero(); d * d];
            for i in 0..*d {
                v[i * d + i] = one.clone();
            }
            Some(Elem::Vector(v))
        }
        Kind::DirectSumShift { .. } => None,
        Kind::Dorroh { inner, scalar } => Some(Elem::pair(inner.zero(), scalar.one()?)),
        Kind::Quotient(q) => q.base.one().map(|o| q.canon(&o)),
    }
}

/// Rational `num/den`, for building elements of `Q` and rings over it.
pub fn rational(num: i64, den: i64) -> Elem {
    Elem::Rat(BigRational::new(num.into(), den.into()))
}
