//! Coefficient-level maps on `R[x; σ, D]`: the twisted automorphism `σ*`,
//! the scalings `λ_β`, right-coefficient form, and the Dorroh lift of a
//! whole context.

use super::{OreContext, OrePoly};
use crate::error::{Error, Result};
use crate::maps::{Verdict, VerificationSet, Witness};
use crate::ring::{dorroh_extend, Elem, Ring};

fn cert(ctx: &OreContext) -> Result<&super::QSkewCert> {
    ctx.q_cert()
        .ok_or_else(|| Error::precondition("sigma* needs a q-skew certificate with q invertible"))
}

/// `σ*(Σ a_i x^i) = Σ q^(-i) σ(a_i) x^i`.
pub fn sigma_star(f: &OrePoly) -> Result<OrePoly> {
    let ctx = f.context();
    let c = cert(ctx)?;
    Ok(twist(f, &c.q_inverse, &c.field, |a| ctx.sigma().apply(a)))
}

/// `(σ*)^(-1)(Σ a_i x^i) = Σ q^i σ^(-1)(a_i) x^i`.
pub fn sigma_star_inverse(f: &OrePoly) -> Result<OrePoly> {
    let ctx = f.context();
    let c = cert(ctx)?;
    Ok(twist(f, &c.q, &c.field, |a| ctx.sigma().apply_inverse(a)))
}

fn twist(f: &OrePoly, factor: &Elem, field: &Ring, map: impl Fn(&Elem) -> Elem) -> OrePoly {
    let ctx = f.context();
    let ring = ctx.ring();
    let mut power = field.one().expect("field");
    let mut out = Vec::with_capacity(f.coeffs().len());
    for a in f.coeffs() {
        out.push(ring.scale(&power, &map(a)));
        power = field.mul(&power, factor);
    }
    ctx.poly(out)
}

fn check_beta(ctx: &OreContext, beta: &Elem) -> Result<()> {
    let ring = ctx.ring();
    if ctx.sigma().apply(beta) != *beta {
        return Err(Error::precondition_with(
            "sigma(beta) != beta",
            ring.display(beta),
        ));
    }
    if !ring.is_zero(&ctx.deriv().apply(beta)) {
        return Err(Error::precondition_with("D(beta) != 0", ring.display(beta)));
    }
    Ok(())
}

/// `λ_β(Σ a_j x^j) = Σ a_j β^j x^j`, after checking `σ(β) = β` and `D(β) = 0`.
pub fn lambda_scale(f: &OrePoly, beta: &Elem) -> Result<OrePoly> {
    let ctx = f.context();
    check_beta(ctx, beta)?;
    let ring = ctx.ring();
    let mut out = Vec::with_capacity(f.coeffs().len());
    let mut power: Option<Elem> = None;
    for a in f.coeffs() {
        out.push(match &power {
            None => a.clone(),
            Some(p) => ring.mul(a, p),
        });
        power = Some(match power {
            None => beta.clone(),
            Some(p) => ring.mul(&p, beta),
        });
    }
    Ok(ctx.poly(out))
}

/// Whether `λ_β` is multiplicative. Beyond `σ(β) = β` and `D(β) = 0` this
/// needs `β` central and `β·D(a) = D(a)` for all `a`, since
/// `λ_β(x·a) = σ(a)βx + D(a)` while `λ_β(x)λ_β(a) = βσ(a)x + βD(a)`.
pub fn check_lambda_endomorphism(ctx: &OreContext, beta: &Elem, seed: u64) -> Result<Verdict> {
    check_beta(ctx, beta)?;
    let ring = ctx.ring();
    let set = VerificationSet::for_ring(ring, seed);
    for a in &set.singles {
        if ring.mul(beta, a) != ring.mul(a, beta) {
            return Ok(Verdict::Fail(Witness::new(
                ring,
                "beta is not central",
                &[beta, a],
            )));
        }
        let da = ctx.deriv().apply(a);
        if ring.mul(beta, &da) != da {
            return Ok(Verdict::Fail(Witness::new(
                ring,
                "beta D(a) != D(a), so lambda(x a) != lambda(x) lambda(a)",
                &[beta, a],
            )));
        }
    }
    Ok(Verdict::Pass)
}

/// Right coefficients `c_i` with `f = Σ x^i c_i`. The leading one is
/// `σ^(-n)(a_n)`; subtracting `x^n c_n` lowers the degree.
pub fn right_form(f: &OrePoly) -> Vec<Elem> {
    let ctx = f.context();
    let ring = ctx.ring();
    let mut rest = f.clone();
    let mut out = vec![ring.zero(); f.coeffs().len()];
    while let Some(n) = rest.degree() {
        let c = ctx.sigma().apply_pow(&rest.coeff(n), -(n as i64));
        let term = ctx.constant(c.clone()).x_pow_times(n);
        rest = rest.sub(&term).expect("same context");
        out[n] = c;
    }
    out
}

/// `Σ x^i c_i` in left form.
pub fn left_form(ctx: &OreContext, right: &[Elem]) -> OrePoly {
    right.iter().enumerate().fold(ctx.zero(), |acc, (i, c)| {
        acc.add(&ctx.constant(c.clone()).x_pow_times(i))
            .expect("same context")
    })
}

/// Moves `ctx` to the Dorroh extension `R ⊕ F` with `σ*((r,m)) = (σ(r),m)`
/// and `D*((r,m)) = (D(r),0)`. Both lifts need `σ` and `D` to be `F`-linear;
/// after that check, a failed re-verification is an internal error.
pub fn dorroh_lift_context(ctx: &OreContext, scalar: &Ring, seed: u64) -> Result<OreContext> {
    let ring = ctx.ring();
    let ext = dorroh_extend(ring, scalar)?;
    let set = VerificationSet::for_ring(ring, seed);
    let scalars: Vec<Elem> = match scalar.elements() {
        Ok(all) if all.len() <= 256 => all.to_vec(),
        _ => scalar.spanning_set(),
    };
    for m in &scalars {
        for a in &set.singles {
            let ma = ring.scale(m, a);
            if ctx.sigma().apply(&ma) != ring.scale(m, &ctx.sigma().apply(a)) {
                return Err(Error::precondition_with(
                    format!("sigma is not {scalar}-linear"),
                    format!("({}, {})", scalar.display(m), ring.display(a)),
                ));
            }
            if ctx.deriv().apply(&ma) != ring.scale(m, &ctx.deriv().apply(a)) {
                return Err(Error::precondition_with(
                    format!("D is not {scalar}-linear"),
                    format!("({}, {})", scalar.display(m), ring.display(a)),
                ));
            }
        }
    }
    let deriv = ctx.deriv().dorroh_lift(&ext)?;
    let q = ctx.q_cert().map(|c| c.q.clone());
    OreContext::new(deriv, q, seed)
        .map_err(|e| Error::Internal(format!("Dorroh lift failed re-verification: {e}")))
}
