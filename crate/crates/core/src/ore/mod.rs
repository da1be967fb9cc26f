//! Skew polynomials `Σ a_i x^i` in `R[x; σ, D]`, multiplied through
//! `x·a = σ(a)x + D(a)`.
//!
//! Polynomials are kept in left-coefficient form with trailing zeros
//! stripped. Products never need an identity in `R`: `x·f` is computed
//! directly, so non-unital coefficient rings work unchanged.

mod gauss;
mod structural;
mod words;

use std::fmt;
use std::sync::{Arc, Mutex};

use rand::Rng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::maps::{
    check_automorphism, check_q_skew, check_sigma_derivation, Automorphism, AutomorphismSpec,
    Derivation, DerivationSpec, VerificationSet,
};
use crate::ring::{Elem, Ring};

pub use gauss::{q_binomial, q_leibniz, GaussianTable};
pub use structural::{
    check_lambda_endomorphism, dorroh_lift_context, lambda_scale, left_form, right_form,
    sigma_star, sigma_star_inverse,
};
pub use words::{word_expansion, word_sum, MAX_WORD_LENGTH};

/// Certificate that `Dσ = q·σD` held on a verification set.
#[derive(Clone, Debug)]
pub struct QSkewCert {
    pub q: Elem,
    pub q_inverse: Elem,
    pub field: Ring,
    pub verified_on: String,
}

struct ContextData {
    deriv: Derivation,
    q: Option<QSkewCert>,
    gauss: Mutex<GaussianTable>,
}

/// A verified triple `(R, σ, D)`, optionally with a q-skew certificate.
#[derive(Clone)]
pub struct OreContext(Arc<ContextData>);

impl fmt::Debug for OreContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OreContext({}, {:?}, {:?}, q = {:?})",
            self.ring(),
            self.sigma().spec(),
            self.deriv().spec(),
            self.q_cert().map(|c| c.field.display(&c.q))
        )
    }
}

impl PartialEq for OreContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl OreContext {
    /// Verifies `σ` and `D` (and `q`, when given) on the ring's verification
    /// set drawn with `seed`. A failed axiom is a precondition error carrying
    /// the witness.
    pub fn new(deriv: Derivation, q: Option<Elem>, seed: u64) -> Result<OreContext> {
        let ring = deriv.ring().clone();
        let set = VerificationSet::for_ring(&ring, seed);
        check_automorphism(deriv.sigma(), &set).into_result("sigma is not an automorphism")?;
        check_sigma_derivation(&deriv, &set).into_result("D is not a sigma-derivation")?;
        let cert = match q {
            None => None,
            Some(q) => {
                check_q_skew(&deriv, &q, &set)?.into_result("D is not q-skew")?;
                let field = ring.scalar_field().expect("checked by check_q_skew");
                let q_inverse = field.unit_inverse(&q).expect("checked by check_q_skew");
                Some(QSkewCert {
                    q,
                    q_inverse,
                    field,
                    verified_on: set.description.clone(),
                })
            }
        };
        Ok(OreContext(Arc::new(ContextData {
            deriv,
            q: cert,
            gauss: Mutex::new(GaussianTable::new(0)),
        })))
    }

    /// Resolves and verifies a context from catalog specs. `q` is a payload
    /// in the ring's scalar field.
    pub fn from_specs(
        ring: &Ring,
        sigma: &AutomorphismSpec,
        deriv: &DerivationSpec,
        q: Option<&Value>,
        seed: u64,
    ) -> Result<OreContext> {
        let sigma = Automorphism::new(ring, sigma)?;
        let deriv = Derivation::new(&sigma, deriv)?;
        let q = match q {
            None => None,
            Some(v) => {
                let field = ring.scalar_field().ok_or_else(|| {
                    Error::Config(format!("{ring} has no scalar field, so q is undefined"))
                })?;
                Some(field.from_json(v)?)
            }
        };
        OreContext::new(deriv, q, seed)
    }

    pub fn ring(&self) -> &Ring {
        self.0.deriv.ring()
    }

    pub fn sigma(&self) -> &Automorphism {
        self.0.deriv.sigma()
    }

    pub fn deriv(&self) -> &Derivation {
        &self.0.deriv
    }

    pub fn q_cert(&self) -> Option<&QSkewCert> {
        self.0.q.as_ref()
    }

    /// `C(k, j)_q` from the shared table, grown on demand.
    pub(crate) fn gaussian(&self, k: usize, j: usize, cert: &QSkewCert) -> Result<Elem> {
        let mut table = self.0.gauss.lock().expect("gaussian table lock");
        table.extend_to(k);
        table.eval(k, j as i64, &cert.q, &cert.field)
    }

    pub fn zero(&self) -> OrePoly {
        OrePoly {
            ctx: self.clone(),
            coeffs: Vec::new(),
        }
    }

    /// Polynomial with left coefficients `coeffs[i]` of `x^i`.
    pub fn poly(&self, coeffs: Vec<Elem>) -> OrePoly {
        let mut p = OrePoly {
            ctx: self.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    pub fn constant(&self, a: Elem) -> OrePoly {
        self.poly(vec![a])
    }

    /// `a·x^i`.
    pub fn monomial(&self, a: Elem, i: usize) -> OrePoly {
        let mut coeffs = vec![self.ring().zero(); i];
        coeffs.push(a);
        self.poly(coeffs)
    }

    /// `x^i`; requires an identity in `R`.
    pub fn x_pow(&self, i: usize) -> Result<OrePoly> {
        let one = self.ring().one().ok_or_else(|| {
            Error::Unsupported(format!(
                "{} has no identity, so x is not an element",
                self.ring()
            ))
        })?;
        Ok(self.monomial(one, i))
    }

    /// Parses a coefficient array, index `i` = power of `x`.
    pub fn from_json(&self, v: &Value) -> Result<OrePoly> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Config(format!("polynomial {v} must be a coefficient array")))?;
        let coeffs = items
            .iter()
            .map(|c| self.ring().from_json(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.poly(coeffs))
    }

    /// Random polynomial of degree at most `max_degree`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, max_degree: usize) -> OrePoly {
        let deg = rng.gen_range(0..=max_degree);
        self.poly((0..=deg).map(|_| self.ring().random(rng)).collect())
    }
}

/// A skew polynomial in left form. The zero polynomial has no coefficients.
#[derive(Clone)]
pub struct OrePoly {
    ctx: OreContext,
    coeffs: Vec<Elem>,
}

impl PartialEq for OrePoly {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrePoly({self})")
    }
}

impl fmt::Display for OrePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = self.ctx.ring();
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if ring.is_zero(c) {
                continue;
            }
            let c = ring.display(c);
            let power = match i {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{i}"),
            };
            let c = if c.chars().skip(1).any(|ch| "+- ,".contains(ch)) {
                format!("({c})")
            } else {
                c
            };
            parts.push(match (i, c.as_str()) {
                (0, _) => c,
                (_, "1") => power,
                _ => format!("{c}·{power}"),
            });
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl OrePoly {
    fn normalize(&mut self) {
        let ring = self.ctx.ring();
        while self.coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn context(&self) -> &OreContext {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.ctx.ring().zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| self.ctx.ring().to_json(c))
                .collect(),
        )
    }

    fn same_context(&self, other: &OrePoly) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::Usage(
                "polynomials belong to different Ore contexts".into(),
            ))
        }
    }

    pub fn add(&self, other: &OrePoly) -> Result<OrePoly> {
        self.same_context(other)?;
        let ring = self.ctx.ring();
        let len = self.coeffs.len().max(other.coeffs.len());
        Ok(self.ctx.poly(
            (0..len)
                .map(|i| ring.add(&self.coeff(i), &other.coeff(i)))
                .collect(),
        ))
    }

    pub fn neg(&self) -> OrePoly {
        let ring = self.ctx.ring();
        self.ctx
            .poly(self.coeffs.iter().map(|c| ring.neg(c)).collect())
    }

    pub fn sub(&self, other: &OrePoly) -> Result<OrePoly> {
        self.add(&other.neg())
    }

    /// `a·f`.
    pub fn left_mul(&self, a: &Elem) -> OrePoly {
        let ring = self.ctx.ring();
        self.ctx
            .poly(self.coeffs.iter().map(|c| ring.mul(a, c)).collect())
    }

    /// `f·a` for a constant `a`, i.e. `Σ a_i (x^i·a)`.
    pub fn right_mul(&self, a: &Elem) -> OrePoly {
        ore_mul(self, &self.ctx.constant(a.clone())).expect("same context")
    }

    /// `f·x^k`: shifts coefficients up.
    pub fn shift(&self, k: usize) -> OrePoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ctx.ring().zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        self.ctx.poly(coeffs)
    }

    /// `x·f = Σ (σ(a_i) x^(i+1) + D(a_i) x^i)`.
    pub fn x_times(&self) -> OrePoly {
        let ring = self.ctx.ring();
        let sigma = self.ctx.sigma();
        let deriv = self.ctx.deriv();
        let n = self.coeffs.len();
        let mut out = vec![ring.zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            out[i + 1] = ring.add(&out[i + 1], &sigma.apply(a));
            if !deriv.is_zero() {
                out[i] = ring.add(&out[i], &deriv.apply(a));
            }
        }
        self.ctx.poly(out)
    }

    /// `x^k·f`.
    pub fn x_pow_times(&self, k: usize) -> OrePoly {
        let mut out = self.clone();
        for _ in 0..k {
            if out.is_zero() {
                break;
            }
            out = out.x_times();
        }
        out
    }

    /// `f^k` for `k ≥ 1`.
    pub fn pow(&self, k: u32) -> OrePoly {
        assert!(k >= 1, "f^0 needs an identity");
        let mut out = self.clone();
        for _ in 1..k {
            out = ore_mul(&out, self).expect("same context");
        }
        out
    }
}

/// Product in `R[x; σ, D]`: `f·g = Σ_i a_i (x^i·g)`, with `x^i·g` built by
/// repeated application of `x·b = σ(b)x + D(b)`.
pub fn ore_mul(f: &OrePoly, g: &OrePoly) -> Result<OrePoly> {
    f.same_context(g)?;
    let ctx = &f.ctx;
    let ring = ctx.ring();
    if f.is_zero() || g.is_zero() {
        return Ok(ctx.zero());
    }
    let mut acc = vec![ring.zero(); f.coeffs.len() + g.coeffs.len() - 1];
    let mut xg = g.clone();
    for (i, a) in f.coeffs.iter().enumerate() {
        if i > 0 {
            xg = xg.x_times();
        }
        if ring.is_zero(a) {
            continue;
        }
        for (j, b) in xg.coeffs.iter().enumerate() {
            acc[j] = ring.add(&acc[j], &ring.mul(a, b));
        }
    }
    Ok(ctx.poly(acc))
}

impl std::ops::Add for &OrePoly {
    type Output = OrePoly;

    fn add(self, rhs: &OrePoly) -> OrePoly {
        OrePoly::add(self, rhs).expect("same Ore context")
    }
}

impl std::ops::Sub for &OrePoly {
    type Output = OrePoly;

    fn sub(self, rhs: &OrePoly) -> OrePoly {
        OrePoly::sub(self, rhs).expect("same Ore context")
    }
}

impl std::ops::Neg for &OrePoly {
    type Output = OrePoly;

    fn neg(self) -> OrePoly {
        OrePoly::neg(self)
    }
}

impl std::ops::Mul for &OrePoly {
    type Output = OrePoly;

    fn mul(self, rhs: &OrePoly) -> OrePoly {
        ore_mul(self, rhs).expect("same Ore context")
    }
}
