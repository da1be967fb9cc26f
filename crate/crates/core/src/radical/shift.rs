//! Nilpotency of `a·x·R[x; σ]` over a direct sum `⊕_i S` with the index
//! shift. If `a` is supported on `[m, n]`, each factor `a·x·f` moves the
//! support of what follows by the shift, so products of `n - m + 2` such
//! factors vanish.

use rand::Rng;

use crate::error::{Error, Result};
use crate::maps::{AutomorphismSpec, Verdict, Witness};
use crate::ore::{OreContext, OrePoly};
use crate::ring::Elem;
use crate::seed;

fn check_setting(ctx: &OreContext) -> Result<()> {
    if !ctx.ring().is_direct_sum_shift() {
        return Err(Error::Usage(format!(
            "{} is not a direct sum with index shift",
            ctx.ring()
        )));
    }
    if !matches!(ctx.sigma().spec(), AutomorphismSpec::Shift(k) if *k != 0) {
        return Err(Error::Usage("sigma must be a nonzero index shift".into()));
    }
    if !ctx.deriv().is_zero() {
        return Err(Error::Usage("D must be zero".into()));
    }
    Ok(())
}

/// `[m, n]`, the smallest and largest index in the support of `a`.
pub fn shift_support(ctx: &OreContext, a: &Elem) -> Result<Option<(i64, i64)>> {
    check_setting(ctx)?;
    let seq = a.as_seq();
    Ok(seq
        .keys()
        .next()
        .copied()
        .zip(seq.keys().next_back().copied()))
}

fn product(ctx: &OreContext, a: &Elem, factors: &[OrePoly]) -> OrePoly {
    let ax = ctx.monomial(a.clone(), 1);
    let mut iter = factors.iter().map(|f| &ax * f);
    let first = iter.next().unwrap_or_else(|| ctx.zero());
    iter.fold(first, |acc, g| &acc * &g)
}

/// Passes iff `(a·x·f_1)(a·x·f_2)⋯(a·x·f_k) = 0`.
pub fn shift_product_check(ctx: &OreContext, a: &Elem, factors: &[OrePoly]) -> Result<Verdict> {
    check_setting(ctx)?;
    if factors.is_empty() {
        return Err(Error::Usage("at least one factor is needed".into()));
    }
    let p = product(ctx, a, factors);
    Ok(if p.is_zero() {
        Verdict::Pass
    } else {
        Verdict::Fail(Witness::new(
            ctx.ring(),
            format!("the product of {} factors a·x·f_i is {p}", factors.len()),
            &[a],
        ))
    })
}

/// Seeded search for `count` factors whose product `Π (a·x·f_i)` is
/// nonzero. Factors are constants or linear polynomials drawn from the
/// ring's sampler.
pub fn shift_nonzero_witness(
    ctx: &OreContext,
    a: &Elem,
    count: usize,
    seed: u64,
    tries: usize,
) -> Result<Option<Vec<OrePoly>>> {
    check_setting(ctx)?;
    let mut rng = seed::rng(seed);
    for _ in 0..tries {
        let factors: Vec<OrePoly> = (0..count)
            .map(|_| {
                let deg = usize::from(rng.gen_bool(0.25));
                ctx.random(&mut rng, deg)
            })
            .collect();
        if !product(ctx, a, &factors).is_zero() {
            return Ok(Some(factors));
        }
    }
    Ok(None)
}
