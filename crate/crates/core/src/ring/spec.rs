use std::fmt;

use serde::{Deserialize, Serialize};

/// Declarative description of a coefficient ring, as it appears in configs.
///
/// JSON form is externally tagged, e.g. `{"modular_int": 4}`,
/// `{"truncated_poly": {"base": {"prime_field": 7}, "n": 6}}` or `"rationals"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum RingSpec {
    /// Z/nZ, n ≥ 2.
    ModularInt(u64),
    /// F_p, p prime.
    PrimeField(u64),
    /// GF(p^k).
    GaloisField { p: u64, k: usize },
    /// Q with exact arbitrary-precision arithmetic.
    Rationals,
    /// base[y]/(y^n).
    TruncatedPoly { base: Box<RingSpec>, n: usize },
    /// base[y], untruncated.
    Polynomial { base: Box<RingSpec> },
    /// Full d×d matrices.
    Matrix { base: Box<RingSpec>, d: usize },
    /// Upper triangular d×d matrices.
    UpperTriangular { base: Box<RingSpec>, d: usize },
    /// Strictly upper triangular d×d matrices (non-unital).
    StrictlyUpperTriangular { base: Box<RingSpec>, d: usize },
    /// Finitely supported Z-indexed sequences over base, pointwise product (non-unital).
    DirectSumShift { base: Box<RingSpec> },
    /// Unitalization inner ⊕ scalar.
    Dorroh {
        inner: Box<RingSpec>,
        scalar: Box<RingSpec>,
    },
}

impl RingSpec {
    pub fn modular(n: u64) -> Self {
        RingSpec::ModularInt(n)
    }

    pub fn prime_field(p: u64) -> Self {
        RingSpec::PrimeField(p)
    }

    pub fn galois(p: u64, k: usize) -> Self {
        RingSpec::GaloisField { p, k }
    }

    pub fn truncated(base: RingSpec, n: usize) -> Self {
        RingSpec::TruncatedPoly {
            base: Box::new(base),
            n,
        }
    }

    pub fn polynomial(base: RingSpec) -> Self {
        RingSpec::Polynomial {
            base: Box::new(base),
        }
    }

    pub fn matrix(base: RingSpec, d: usize) -> Self {
        RingSpec::Matrix {
            base: Box::new(base),
            d,
        }
    }

    pub fn upper_triangular(base: RingSpec, d: usize) -> Self {
        RingSpec::UpperTriangular {
            base: Box::new(base),
            d,
        }
    }

    pub fn strictly_upper_triangular(base: RingSpec, d: usize) -> Self {
        RingSpec::StrictlyUpperTriangular {
            base: Box::new(base),
            d,
        }
    }

    pub fn direct_sum_shift(base: RingSpec) -> Self {
        RingSpec::DirectSumShift {
            base: Box::new(base),
        }
    }

    pub fn dorroh(inner: RingSpec, scalar: RingSpec) -> Self {
        RingSpec::Dorroh {
            inner: Box::new(inner),
            scalar: Box::new(scalar),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::ModularInt(n) => write!(f, "Z/{n}"),
            RingSpec::PrimeField(p) => write!(f, "F_{p}"),
            RingSpec::GaloisField { p, k } => write!(f, "GF({p}^{k})"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::TruncatedPoly { base, n } => write!(f, "{base}[y]/(y^{n})"),
            RingSpec::Polynomial { base } => write!(f, "{base}[y]"),
            RingSpec::Matrix { base, d } => write!(f, "M_{d}({base})"),
            RingSpec::UpperTriangular { base, d } => write!(f, "UT_{d}({base})"),
            RingSpec::StrictlyUpperTriangular { base, d } => write!(f, "SUT_{d}({base})"),
            RingSpec::DirectSumShift { base } => write!(f, "Sum_Z({base})"),
            RingSpec::Dorroh { inner, scalar } => write!(f, "Dorroh({inner}, {scalar})"),
        }
    }
}
