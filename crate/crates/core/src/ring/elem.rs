use std::collections::BTreeMap;

use num_rational::BigRational;

/// Canonical payload of a ring element.
///
/// The payload carries no reference to its ring; every operation goes through
/// [`Ring`](super::Ring), which keeps each payload in normal form so that
/// derived equality is ring equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    /// Residue in `[0, n)`.
    Int(u64),
    /// Exact rational in lowest terms.
    Rat(BigRational),
    /// Fixed-length coordinate vector: Galois-field coordinates, truncated
    /// polynomial coefficients, untruncated polynomial coefficients (trailing
    /// zeros stripped) or row-major matrix entries.
    Vector(Vec<Elem>),
    /// Finitely supported integer-indexed sequence; zero entries are never stored.
    Seq(BTreeMap<i64, Elem>),
    /// Dorroh pair `(r, m)`.
    Pair(Box<Elem>, Box<Elem>),
}

impl Elem {
    pub fn pair(r: Elem, m: Elem) -> Self {
        Elem::Pair(Box::new(r), Box::new(m))
    }

    pub(crate) fn as_int(&self) -> u64 {
        match self {
            Elem::Int(v) => *v,
            other => panic!("expected residue payload, found {other:?}"),
        }
    }

    pub(crate) fn as_rat(&self) -> &BigRational {
        match self {
            Elem::Rat(v) => v,
            other => panic!("expected rational payload, found {other:?}"),
        }
    }

    pub(crate) fn as_vec(&self) -> &[Elem] {
        match self {
            Elem::Vector(v) => v,
            other => panic!("expected vector payload, found {other:?}"),
        }
    }

    pub(crate) fn as_seq(&self) -> &BTreeMap<i64, Elem> {
        match self {
            Elem::Seq(v) => v,
            other => panic!("expected sequence payload, found {other:?}"),
        }
    }

    pub(crate) fn as_pair(&self) -> (&Elem, &Elem) {
        match self {
            Elem::Pair(r, m) => (r, m),
            other => panic!("expected pair payload, found {other:?}"),
        }
    }
}
