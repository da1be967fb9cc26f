//! Coefficient equations of a quasi-inverse `f = Σ b_i x^i` of `a·x^n`,
//! and the chain of products of `a, σ(a), …, σ^(n-1)(a)` that pushes each
//! `b_i` into the nilradical.
//!
//! Expanding `f + a x^n + f·a x^n = 0` with `x^l·a = Σ_i w_{i,l-i}(a) x^i`
//! gives, for the coefficient of `x^t`,
//! `b_t + [t = n] a + Σ_{l ≥ t-n} b_l w_{t-n, l-t+n}(a) = 0`.

use super::is_quasi_inverse;
use crate::error::{Error, Result};
use crate::maps::{Verdict, Witness};
use crate::ore::{word_expansion, OreContext, OrePoly, MAX_WORD_LENGTH};
use crate::ring::{nilradical, Elem, Ideal};

/// Longest product of orbit elements the chain builds.
pub const CHAIN_FACTOR_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct EquationCheck {
    pub label: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquationReport {
    pub n: usize,
    /// Degree of `f`; absent when `f = 0`.
    pub m: Option<usize>,
    pub checks: Vec<EquationCheck>,
}

impl EquationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.passed())
    }
}

fn check_hypotheses(a: &Elem, n: usize, f: &OrePoly) -> Result<()> {
    let ctx = f.context();
    let ring = ctx.ring();
    let axn = ctx.monomial(a.clone(), n);
    if !is_quasi_inverse(&axn, f) {
        return Err(Error::precondition_with(
            format!("f is not a quasi-inverse of a·x^{n}"),
            f.to_string(),
        ));
    }
    if ctx.sigma().apply_pow(a, n as i64) != *a {
        return Err(Error::precondition_with(
            format!("sigma^{n}(a) != a"),
            ring.display(a),
        ));
    }
    Ok(())
}

/// `x^l·a` for `l = 0..=m`, by word enumeration while words are short
/// enough and by repeated `x·` afterwards.
fn expansions(ctx: &OreContext, a: &Elem, m: usize) -> Result<Vec<OrePoly>> {
    let mut out = Vec::with_capacity(m + 1);
    for l in 0..=m {
        if l <= MAX_WORD_LENGTH {
            out.push(word_expansion(l, a, ctx)?);
        } else {
            let prev: &OrePoly = out.last().expect("l > 0");
            out.push(prev.x_times());
        }
    }
    Ok(out)
}

/// Checks every coefficient equation of `f + a x^n + f·a x^n = 0`:
/// vanishing of `b_0, …, b_(n-1)`, the top equation `b_m σ^m(a) = 0`, the
/// band `x^(m+i)` for `1 ≤ i < n`, the tail `x^(n+i)` for `1 ≤ i ≤ m-n`, and
/// the `x^n` equation `b_n + a + Σ_i b_i D^i(a) = 0`.
pub fn coefficient_equation_check(a: &Elem, n: usize, f: &OrePoly) -> Result<EquationReport> {
    check_hypotheses(a, n, f)?;
    let ctx = f.context();
    let ring = ctx.ring();
    let Some(m) = f.degree() else {
        return Ok(EquationReport {
            n,
            m: None,
            checks: Vec::new(),
        });
    };
    let b = |i: usize| f.coeff(i);
    let table = expansions(ctx, a, m)?;
    let w = |i: usize, j: usize| table[i + j].coeff(i);
    let mut checks = Vec::new();
    let mut record = |label: String, value: Elem| {
        let verdict = if ring.is_zero(&value) {
            Verdict::Pass
        } else {
            Verdict::Fail(Witness::new(ring, format!("{label} is nonzero"), &[&value]))
        };
        checks.push(EquationCheck { label, verdict });
    };
    for t in 0..n.min(m + 1) {
        record(format!("b_{t}"), b(t));
    }
    if m < n {
        return Ok(EquationReport {
            n,
            m: Some(m),
            checks,
        });
    }
    record(
        format!("x^{}: b_m sigma^m(a)", m + n),
        ring.mul(&b(m), &ctx.sigma().apply_pow(a, m as i64)),
    );
    for i in 1..n {
        let s = m - n + i;
        let value = (s..=m).fold(ring.zero(), |acc, l| {
            ring.add(&acc, &ring.mul(&b(l), &w(s, l - s)))
        });
        record(format!("x^{}: band i = {i}", m + i), value);
    }
    for i in 1..=m - n {
        let value = (i..=m).fold(b(n + i), |acc, l| {
            ring.add(&acc, &ring.mul(&b(l), &w(i, l - i)))
        });
        record(format!("x^{}: tail i = {i}", n + i), value);
    }
    let value = (n..=m).fold(ring.add(&b(n), a), |acc, i| {
        ring.add(&acc, &ring.mul(&b(i), &ctx.deriv().apply_pow(a, i as u64)))
    });
    record(format!("x^{n}: b_n + a + sum b_i D^i(a)"), value);
    Ok(EquationReport {
        n,
        m: Some(m),
        checks,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainLink {
    /// `j`, so that `b_(m-j)·r_j` should lie in `N(R)`.
    pub index: usize,
    pub element: Elem,
    /// Number of orbit factors in the product `r_j`.
    pub factors: usize,
    pub in_nilradical: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ChainStatus {
    Complete,
    /// `r_index` would need more than `CHAIN_FACTOR_CAP` factors.
    CapReached {
        index: usize,
    },
    /// `b_(m-index)·r_index` left `N(R)`: a step of the construction failed.
    Broken {
        index: usize,
        description: String,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainReport {
    pub links: Vec<ChainLink>,
    pub status: ChainStatus,
    /// `a·r_(m-n)⋯r_0`.
    pub final_product: Elem,
    pub final_in_nilradical: bool,
    /// Whether `a·σ(a)⋯σ^(n-1)(a)` lies in `N(R)`.
    pub orbit_product_in_nilradical: bool,
}

impl ChainReport {
    pub fn completed(&self) -> bool {
        self.status == ChainStatus::Complete && self.final_in_nilradical
    }
}

/// Builds `r_0 = σ^m(a)` and, for `k = 0, …, m-n-1`,
/// `r_(k+1) = σ^(m-k-1)(a)·r_k⋯r_0` while `k+1 < n`, and
/// `r_(k+1) = σ^(m-k-1)(a)·r_0⋯r_k·r_(k-n+1)` afterwards. Each step checks
/// `b_(m-j) r_j ∈ N`; the last checks `a·r_(m-n)⋯r_0 ∈ N`.
///
/// The second product includes `r_k`: the terms `b_l w(a)` with `l` down to
/// `m-k` are only absorbed into `N` when every `r_(m-l)` with `m-l ≤ k` is a
/// factor.
pub fn nil_witness_chain(a: &Elem, n: usize, f: &OrePoly) -> Result<ChainReport> {
    let report = coefficient_equation_check(a, n, f)?;
    if let Some(bad) = report.checks.iter().find(|c| !c.verdict.passed()) {
        return Err(Error::precondition_with(
            "a coefficient equation fails",
            bad.label.clone(),
        ));
    }
    let ctx = f.context();
    let ring = ctx.ring();
    let all = ring.elements()?;
    let nil = nilradical(ring)?;
    for s in all.iter() {
        let comm = ring.sub(&ring.mul(a, s), &ring.mul(s, a));
        if !nil.contains(&comm) {
            return Err(Error::precondition_with(
                "a + N(R) is not central in R/N(R)",
                format!(
                    "a·s - s·a = {} for s = {}",
                    ring.display(&comm),
                    ring.display(s)
                ),
            ));
        }
    }
    let orbit = (1..n).fold(a.clone(), |acc, i| {
        ring.mul(&acc, &ctx.sigma().apply_pow(a, i as i64))
    });
    let orbit_product_in_nilradical = nil.contains(&orbit);
    let Some(m) = report.m else {
        return Ok(ChainReport {
            links: Vec::new(),
            status: ChainStatus::Complete,
            final_in_nilradical: nil.contains(a),
            final_product: a.clone(),
            orbit_product_in_nilradical,
        });
    };
    let mut links: Vec<ChainLink> = Vec::new();
    let mut status = ChainStatus::Complete;
    let push = |links: &mut Vec<ChainLink>, index: usize, element: Elem, factors: usize| -> bool {
        let in_n = in_nil(&nil, ring, &f.coeff(m - index), &element);
        links.push(ChainLink {
            index,
            element,
            factors,
            in_nilradical: in_n,
        });
        in_n
    };
    if !push(&mut links, 0, ctx.sigma().apply_pow(a, m as i64), 1) {
        status = broken(0, m);
    }
    for k in 0..m - n {
        if status != ChainStatus::Complete {
            break;
        }
        let mut picks: Vec<usize> = if k + 1 < n {
            (0..=k).rev().collect()
        } else {
            (0..=k).collect()
        };
        if k + 1 >= n {
            picks.push(k + 1 - n);
        }
        let factors = 1 + picks.iter().map(|&i| links[i].factors).sum::<usize>();
        if factors > CHAIN_FACTOR_CAP {
            status = ChainStatus::CapReached { index: k + 1 };
            break;
        }
        let xi = picks[1..]
            .iter()
            .fold(links[picks[0]].element.clone(), |acc, &i| {
                ring.mul(&acc, &links[i].element)
            });
        let r = ring.mul(&ctx.sigma().apply_pow(a, (m - k - 1) as i64), &xi);
        if !push(&mut links, k + 1, r, factors) {
            status = broken(k + 1, m);
        }
    }
    let final_product = links
        .iter()
        .rev()
        .fold(a.clone(), |acc, l| ring.mul(&acc, &l.element));
    Ok(ChainReport {
        final_in_nilradical: status == ChainStatus::Complete && nil.contains(&final_product),
        final_product,
        links,
        status,
        orbit_product_in_nilradical,
    })
}

fn in_nil(nil: &Ideal, ring: &crate::ring::Ring, b: &Elem, r: &Elem) -> bool {
    nil.contains(&ring.mul(b, r))
}

fn broken(index: usize, m: usize) -> ChainStatus {
    ChainStatus::Broken {
        index,
        description: format!("b_{} r_{index} is not in N(R)", m - index),
    }
}
