//! `x^n·a` as a sum over words in `σ` and `D`: the coefficient of `x^m` is
//! the sum of `w(a)` over all words `w` with `m` letters `σ` and `n - m`
//! letters `D`. No q-skew relation and no inverse of `σ` are used.

use super::{OreContext, OrePoly};
use crate::error::{Error, Result};
use crate::ring::Elem;

/// Longest word the enumeration accepts (`2^16` words).
pub const MAX_WORD_LENGTH: usize = 16;

/// Visits every word with the given letter budget, applying letters
/// innermost first, and adds `w(a)` into `acc[σ-degree]`.
fn walk(
    ctx: &OreContext,
    value: Elem,
    sigmas: usize,
    ds: usize,
    acc: &mut [Elem],
    used_sigma: usize,
) {
    let ring = ctx.ring();
    if ring.is_zero(&value) {
        return;
    }
    if sigmas == 0 && ds == 0 {
        acc[used_sigma] = ring.add(&acc[used_sigma], &value);
        return;
    }
    if sigmas > 0 {
        walk(
            ctx,
            ctx.sigma().apply(&value),
            sigmas - 1,
            ds,
            acc,
            used_sigma + 1,
        );
    }
    if ds > 0 {
        walk(
            ctx,
            ctx.deriv().apply(&value),
            sigmas,
            ds - 1,
            acc,
            used_sigma,
        );
    }
}

fn check_length(n: usize) -> Result<()> {
    if n > MAX_WORD_LENGTH {
        Err(Error::Usage(format!(
            "word length {n} exceeds {MAX_WORD_LENGTH}"
        )))
    } else {
        Ok(())
    }
}

/// `x^n·a` by enumerating all `2^n` words.
pub fn word_expansion(n: usize, a: &Elem, ctx: &OreContext) -> Result<OrePoly> {
    check_length(n)?;
    let ring = ctx.ring();
    let mut acc = vec![ring.zero(); n + 1];
    for m in 0..=n {
        walk(ctx, a.clone(), m, n - m, &mut acc, 0);
    }
    Ok(ctx.poly(acc))
}

/// `w_{i,j}(a)`: the sum of `w(a)` over words with `i` letters `σ` and `j` letters `D`.
pub fn word_sum(ctx: &OreContext, a: &Elem, i: usize, j: usize) -> Result<Elem> {
    check_length(i + j)?;
    let mut acc = vec![ctx.ring().zero(); i + 1];
    walk(ctx, a.clone(), i, j, &mut acc, 0);
    Ok(acc.pop().expect("nonempty"))
}
