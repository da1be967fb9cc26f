//! The set `I = { r : r·x ∈ J(R[x; σ, D]) }`, semi-decided element by
//! element through termination of the Neumann series of `r·x`.
//!
//! `I_0 = { Σ_{i≥1} r_i x^i : r_i ∈ I }` is infinite and never built; it is
//! described by the constraint that every coefficient of positive degree
//! lies in `I`.

use std::collections::BTreeMap;

use super::{neumann_quasi_inverse, Bounds, QuasiInverseStatus};
use crate::error::Result;
use crate::maps::{Verdict, VerificationSet, Witness};
use crate::ore::{OreContext, OrePoly};
use crate::ring::{Elem, Ring};
use crate::seed;

/// Rings up to this size are explored element by element.
pub const EXHAUSTIVE_LIMIT: u128 = 256;

/// Ring elements used as left and right multipliers in the ideal check.
const MULTIPLIERS: usize = 32;

/// Evidence that `r ∈ I`: a verified quasi-inverse of `r·x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Membership {
    pub element: Elem,
    pub quasi_inverse: OrePoly,
    /// Partial sums computed before the series terminated.
    pub terms: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ISetReport {
    /// Elements with membership evidence.
    pub candidates: Vec<Membership>,
    /// Elements without evidence within the bounds, and why.
    pub no_evidence: Vec<(Elem, String)>,
    /// Whether every element of the ring was examined.
    pub exhaustive: bool,
    pub ideal_check: Verdict,
    pub sigma_invariance: Verdict,
    pub d_stability: Verdict,
    pub i0_description: String,
}

impl ISetReport {
    pub fn candidate_elements(&self) -> Vec<Elem> {
        self.candidates.iter().map(|m| m.element.clone()).collect()
    }

    pub fn stable(&self) -> bool {
        self.ideal_check.passed() && self.sigma_invariance.passed() && self.d_stability.passed()
    }
}

struct Oracle<'a> {
    ctx: &'a OreContext,
    bounds: Bounds,
    memo: BTreeMap<Elem, Result<Membership, String>>,
}

impl Oracle<'_> {
    fn decide(&mut self, r: &Elem) -> Result<&Result<Membership, String>> {
        if !self.memo.contains_key(r) {
            let q = neumann_quasi_inverse(&self.ctx.monomial(r.clone(), 1), self.bounds)?;
            let entry = match q.status {
                QuasiInverseStatus::Found(g) => Ok(Membership {
                    element: r.clone(),
                    quasi_inverse: g,
                    terms: q.partial_sums_checked,
                }),
                QuasiInverseStatus::DivergentBeyond(b) => {
                    Err(format!("no termination within the {b}"))
                }
                QuasiInverseStatus::Refuted(why) => Err(why),
            };
            self.memo.insert(r.clone(), entry);
        }
        Ok(&self.memo[r])
    }

    fn member(&mut self, r: &Elem) -> Result<bool> {
        Ok(self.decide(r)?.is_ok())
    }
}

fn sample(ring: &Ring, samples: usize, seed: u64) -> Result<(Vec<Elem>, bool)> {
    if ring.size().is_some_and(|s| s <= EXHAUSTIVE_LIMIT) {
        return Ok((ring.elements()?.to_vec(), true));
    }
    let mut rng = seed::rng(seed);
    let mut out = vec![ring.zero()];
    out.extend(ring.spanning_set());
    out.extend((0..samples).map(|_| ring.random(&mut rng)));
    out.sort();
    out.dedup();
    Ok((out, false))
}

/// Collects the elements `r` whose series for `r·x` terminates, then checks
/// that this candidate set is closed under addition and under left and right
/// multiplication by sampled elements, and that `σ`, `σ^(-1)` and `D` map it
/// into itself. Non-membership is never claimed.
pub fn i_set_explore(
    ctx: &OreContext,
    bounds: Bounds,
    samples: usize,
    seed: u64,
) -> Result<ISetReport> {
    let ring = ctx.ring();
    let (elements, exhaustive) = sample(ring, samples, seed)?;
    let mut oracle = Oracle {
        ctx,
        bounds,
        memo: BTreeMap::new(),
    };
    let mut candidates = Vec::new();
    let mut no_evidence = Vec::new();
    for r in &elements {
        match oracle.decide(r)? {
            Ok(m) => candidates.push(m.clone()),
            Err(why) => no_evidence.push((r.clone(), why.clone())),
        }
    }
    let members: Vec<Elem> = candidates.iter().map(|m| m.element.clone()).collect();
    let multipliers: Vec<Elem> = VerificationSet::for_ring(ring, seed)
        .singles
        .into_iter()
        .take(MULTIPLIERS)
        .collect();

    let mut ideal_check = Verdict::Pass;
    'ideal: for (i, r) in members.iter().enumerate() {
        for s in &members[i..] {
            let sum = ring.add(r, s);
            if !oracle.member(&sum)? {
                ideal_check = Verdict::Fail(Witness::new(
                    ring,
                    "r + s has no membership evidence",
                    &[r, s],
                ));
                break 'ideal;
            }
        }
        let neg = ring.neg(r);
        if !oracle.member(&neg)? {
            ideal_check = Verdict::Fail(Witness::new(ring, "-r has no membership evidence", &[r]));
            break;
        }
        for t in &multipliers {
            for (side, p) in [("t·r", ring.mul(t, r)), ("r·t", ring.mul(r, t))] {
                if !oracle.member(&p)? {
                    ideal_check = Verdict::Fail(Witness::new(
                        ring,
                        format!("{side} has no membership evidence"),
                        &[r, t],
                    ));
                    break 'ideal;
                }
            }
        }
    }

    let mut sigma_invariance = Verdict::Pass;
    for r in &members {
        let images = [
            ("sigma(r)", ctx.sigma().apply(r)),
            ("sigma^-1(r)", ctx.sigma().apply_inverse(r)),
        ];
        if let Some((what, _)) = first_outside(&mut oracle, &images)? {
            sigma_invariance = Verdict::Fail(Witness::new(
                ring,
                format!("{what} has no membership evidence"),
                &[r],
            ));
            break;
        }
    }

    let mut d_stability = Verdict::Pass;
    for r in &members {
        if first_outside(&mut oracle, &[("D(r)", ctx.deriv().apply(r))])?.is_some() {
            d_stability =
                Verdict::Fail(Witness::new(ring, "D(r) has no membership evidence", &[r]));
            break;
        }
    }

    Ok(ISetReport {
        candidates,
        no_evidence,
        exhaustive,
        ideal_check,
        sigma_invariance,
        d_stability,
        i0_description: "I_0 is the set of polynomials with zero constant term whose other coefficients all lie in \
                         the candidate set; it is infinite and is not enumerated"
            .into(),
    })
}

fn first_outside<'a>(
    oracle: &mut Oracle<'_>,
    images: &'a [(&'a str, Elem)],
) -> Result<Option<&'a (&'a str, Elem)>> {
    for item in images {
        if !oracle.member(&item.1)? {
            return Ok(Some(item));
        }
    }
    Ok(None)
}
