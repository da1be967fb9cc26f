//! Gaussian binomials as integer polynomials in `t`, built by the Pascal
//! recursion and only then evaluated in a scalar field. The closed quotient
//! formula is never used, so roots of unity need no special casing.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{OreContext, OrePoly};
use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// Rows `0..=max_k` of `C(k, j)_t`, coefficients low degree first.
#[derive(Clone, Debug)]
pub struct GaussianTable {
    rows: Vec<Vec<Vec<BigInt>>>,
}

fn trim(mut p: Vec<BigInt>) -> Vec<BigInt> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

impl GaussianTable {
    pub fn new(max_k: usize) -> Self {
        let mut t = GaussianTable {
            rows: vec![vec![vec![BigInt::one()]]],
        };
        t.extend_to(max_k);
        t
    }

    pub fn max_k(&self) -> usize {
        self.rows.len() - 1
    }

    /// Appends rows with `C(k,j) = C(k-1,j-1) + t^j C(k-1,j)`.
    pub fn extend_to(&mut self, max_k: usize) {
        while self.rows.len() <= max_k {
            let prev = self.rows.last().expect("row 0 exists");
            let k = self.rows.len();
            let row = (0..=k)
                .map(|j| {
                    let left: &[BigInt] = if j >= 1 { &prev[j - 1] } else { &[] };
                    let right: &[BigInt] = if j < k { &prev[j] } else { &[] };
                    let len = left.len().max(right.len() + j);
                    let mut p = vec![BigInt::zero(); len];
                    for (i, c) in left.iter().enumerate() {
                        p[i] += c;
                    }
                    for (i, c) in right.iter().enumerate() {
                        p[i + j] += c;
                    }
                    trim(p)
                })
                .collect();
            self.rows.push(row);
        }
    }

    /// Coefficients of `C(k, j)_t`; empty (the zero polynomial) for `j < 0`
    /// or `j > k`.
    pub fn poly(&self, k: usize, j: i64) -> Result<&[BigInt]> {
        let row = self.rows.get(k).ok_or_else(|| {
            Error::Usage(format!("k = {k} exceeds the table size {}", self.max_k()))
        })?;
        Ok(usize::try_from(j)
            .ok()
            .and_then(|j| row.get(j))
            .map_or(&[], |p| p.as_slice()))
    }

    /// `C(k, j)_q` evaluated in `field` by Horner's rule.
    pub fn eval(&self, k: usize, j: i64, q: &Elem, field: &Ring) -> Result<Elem> {
        let coeffs = self.poly(k, j)?;
        let mut acc = field.zero();
        for c in coeffs.iter().rev() {
            let c = field
                .from_bigint(c)
                .ok_or_else(|| Error::Usage(format!("{field} cannot hold the integer {c}")))?;
            acc = field.add(&field.mul(&acc, q), &c);
        }
        Ok(acc)
    }
}

/// `C(k, j)_q` in `field`, for `0 ≤ j ≤ k`.
pub fn q_binomial(k: i64, j: i64, q: &Elem, field: &Ring) -> Result<Elem> {
    if k < 0 || j < 0 || j > k {
        return Err(Error::Usage(format!("C({k}, {j}) needs 0 <= j <= k")));
    }
    GaussianTable::new(k as usize).eval(k as usize, j, q, field)
}

/// `x^k·r = Σ_i C(k,i)_q σ^i D^(k-i)(r) x^i`, for contexts with a q-skew certificate.
pub fn q_leibniz(k: usize, r: &Elem, ctx: &OreContext) -> Result<OrePoly> {
    let cert = ctx
        .q_cert()
        .ok_or_else(|| Error::precondition("the context has no q-skew certificate"))?;
    let ring = ctx.ring();
    let mut coeffs = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let term = ctx
            .sigma()
            .apply_pow(&ctx.deriv().apply_pow(r, (k - i) as u64), i as i64);
        if ring.is_zero(&term) {
            coeffs.push(term);
            continue;
        }
        let c = ctx.gaussian(k, i, cert)?;
        coeffs.push(ring.scale(&c, &term));
    }
    Ok(ctx.poly(coeffs))
}
