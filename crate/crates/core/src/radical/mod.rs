//! Quasi-regularity in `R[x; σ, D]`: Neumann-series quasi-inverses, the
//! geometric construction for nilpotent coefficients, the coefficient
//! equations of a quasi-inverse of `a·x^n` with their nil witness chain,
//! shift-ring nilpotency, and the set of `r` with `r·x` quasi-regular.
//!
//! Membership in the Jacobson radical is only ever semi-decided: a
//! terminating series is evidence, anything else is absence of evidence.

mod chain;
mod iset;
mod shift;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maps::{check_commuting, Verdict, VerificationSet, Witness};
use crate::ore::{OreContext, OrePoly};
use crate::ring::{nilpotency_index, Elem};

pub use chain::{
    coefficient_equation_check, nil_witness_chain, ChainLink, ChainReport, ChainStatus,
    EquationCheck, EquationReport, CHAIN_FACTOR_CAP,
};
pub use iset::{i_set_explore, ISetReport, Membership};
pub use shift::{shift_nonzero_witness, shift_product_check, shift_support};

/// Largest `k` tried when looking for `a^k = 0`.
pub const NILPOTENCY_BOUND: u64 = 4096;

/// Largest exponent `m·p^m` the commutation check expands.
pub const MAX_COMMUTATION_EXPONENT: u64 = 4096;

/// Truncation limits for the Neumann series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub degree: usize,
    pub terms: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            degree: 512,
            terms: 64,
        }
    }
}

/// Which limit stopped a Neumann series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exhausted {
    Degree(usize),
    Terms(usize),
}

impl std::fmt::Display for Exhausted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exhausted::Degree(d) => write!(f, "degree bound {d}"),
            Exhausted::Terms(t) => write!(f, "term bound {t}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum QuasiInverseStatus {
    /// A two-sided quasi-inverse, re-verified.
    Found(OrePoly),
    /// No power of `-f` vanished within the bounds.
    DivergentBeyond(Exhausted),
    /// The powers of `-f` cycle through nonzero values, so the series never
    /// terminates. A quasi-inverse may still exist by other means.
    Refuted(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuasiInverseResult {
    pub status: QuasiInverseStatus,
    pub partial_sums_checked: usize,
}

impl QuasiInverseResult {
    pub fn found(&self) -> Option<&OrePoly> {
        match &self.status {
            QuasiInverseStatus::Found(g) => Some(g),
            _ => None,
        }
    }
}

/// `f + g + f·g = 0` and `f + g + g·f = 0`.
pub fn is_quasi_inverse(f: &OrePoly, g: &OrePoly) -> bool {
    let sum = f + g;
    (&sum + &(f * g)).is_zero() && (&sum + &(g * f)).is_zero()
}

fn verified(f: &OrePoly, g: OrePoly, how: &str) -> Result<OrePoly> {
    if is_quasi_inverse(f, &g) {
        Ok(g)
    } else {
        Err(Error::Internal(format!(
            "{how} produced {g}, which is not a quasi-inverse of {f}"
        )))
    }
}

/// Partial sums `Σ_{i=1}^K (-f)^i`. The series stops when a power of `-f`
/// vanishes, exceeds the degree bound, repeats an earlier power, or after
/// `bounds.terms` terms.
pub fn neumann_quasi_inverse(f: &OrePoly, bounds: Bounds) -> Result<QuasiInverseResult> {
    if bounds.degree == 0 || bounds.terms == 0 {
        return Err(Error::Usage("Neumann bounds must be at least 1".into()));
    }
    let ctx = f.context();
    let neg = f.neg();
    let mut sum = ctx.zero();
    let mut power = neg.clone();
    let mut seen: Vec<OrePoly> = Vec::new();
    for i in 1.. {
        if power.is_zero() {
            let g = verified(f, sum, "the Neumann series")?;
            return Ok(QuasiInverseResult {
                status: QuasiInverseStatus::Found(g),
                partial_sums_checked: i,
            });
        }
        let stop = if i > bounds.terms {
            Some(Exhausted::Terms(bounds.terms))
        } else if power.degree().is_some_and(|d| d > bounds.degree) {
            Some(Exhausted::Degree(bounds.degree))
        } else {
            None
        };
        if let Some(stop) = stop {
            return Ok(QuasiInverseResult {
                status: QuasiInverseStatus::DivergentBeyond(stop),
                partial_sums_checked: i - 1,
            });
        }
        if let Some(j) = seen.iter().position(|p| *p == power) {
            return Ok(QuasiInverseResult {
                status: QuasiInverseStatus::Refuted(format!(
                    "(-f)^{i} = (-f)^{} = {power}, so the powers cycle without reaching 0",
                    j + 1
                )),
                partial_sums_checked: i - 1,
            });
        }
        sum = &sum + &power;
        seen.push(power.clone());
        power = &power * &neg;
    }
    unreachable!("the loop returns")
}

/// `Σ_{i=1}^{ν-1} (-a)^i x^(ik)` for `a` nilpotent of index `ν`, after
/// checking `x^k·a = a·x^k` so that `(a x^k)^i = a^i x^(ik)`.
pub fn geometric_quasi_inverse(a: &Elem, k: usize, ctx: &OreContext) -> Result<OrePoly> {
    let ring = ctx.ring();
    let left = ctx.constant(a.clone()).x_pow_times(k);
    let right = ctx.monomial(a.clone(), k);
    if left != right {
        return Err(Error::precondition_with(
            format!("x^{k}·a != a·x^{k}"),
            format!(
                "a = {}: x^{k}·a = {left}, a·x^{k} = {right}",
                ring.display(a)
            ),
        ));
    }
    let nu = nilpotency_index(ring, a, NILPOTENCY_BOUND).ok_or_else(|| {
        Error::precondition_with(
            format!("a is not nilpotent within {NILPOTENCY_BOUND} powers"),
            ring.display(a),
        )
    })?;
    let neg_a = ring.neg(a);
    let mut coeffs = vec![ring.zero(); ((nu as usize).saturating_sub(1)) * k + 1];
    let mut power = neg_a.clone();
    for i in 1..nu as usize {
        coeffs[i * k] = ring.add(&coeffs[i * k], &power);
        power = ring.mul(&power, &neg_a);
    }
    verified(&right, ctx.poly(coeffs), "the geometric series")
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Whether `x^(m p^m)·a = a·x^(m p^m)`, after checking that the
/// characteristic is a prime `p`, `σD = Dσ`, `σ^m(a) = a` and
/// `D^(p^m)(a) = 0`. Each failed precondition is its own error.
pub fn check_central_commutation(a: &Elem, m: u32, ctx: &OreContext, seed: u64) -> Result<Verdict> {
    let ring = ctx.ring();
    let p = ring.characteristic();
    if !is_prime(p) {
        return Err(Error::precondition_with(
            "the characteristic is not a prime p > 0",
            p.to_string(),
        ));
    }
    if m == 0 {
        return Err(Error::Usage("m must be at least 1".into()));
    }
    let set = VerificationSet::for_ring(ring, seed);
    check_commuting(ctx.deriv(), &set).into_result("sigma D != D sigma")?;
    if ctx.sigma().apply_pow(a, m as i64) != *a {
        return Err(Error::precondition_with(
            format!("sigma^{m}(a) != a"),
            ring.display(a),
        ));
    }
    let exponent = p
        .checked_pow(m)
        .and_then(|pm| pm.checked_mul(m as u64).map(|e| (pm, e)))
        .filter(|(_, e)| *e <= MAX_COMMUTATION_EXPONENT);
    let Some((pm, e)) = exponent else {
        return Err(Error::Usage(format!(
            "m p^m exceeds {MAX_COMMUTATION_EXPONENT}"
        )));
    };
    if !ring.is_zero(&ctx.deriv().apply_pow(a, pm)) {
        return Err(Error::precondition_with(
            format!("D^{pm}(a) != 0"),
            ring.display(a),
        ));
    }
    let e = e as usize;
    let left = ctx.constant(a.clone()).x_pow_times(e);
    let right = ctx.monomial(a.clone(), e);
    Ok(if left == right {
        Verdict::Pass
    } else {
        Verdict::Fail(Witness::new(
            ring,
            format!("x^{e}·a = {left} but a·x^{e} = {right}"),
            &[a],
        ))
    })
}
