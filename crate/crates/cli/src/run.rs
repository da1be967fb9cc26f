//! Scenario execution. Every scenario draws from its own seed: the one it
//! fixes in its config, or the run seed split by the scenario's position.
//! Reports come back in input order whatever the thread count.

use std::time::Instant;

use orelab_core::maps::{
    check_automorphism, check_q_skew, check_sigma_derivation, Automorphism, Derivation, Verdict,
    VerificationSet, Witness,
};
use orelab_core::ore::{
    ore_mul, q_binomial, q_leibniz, sigma_star, sigma_star_inverse, word_expansion, OreContext,
    OrePoly, MAX_WORD_LENGTH,
};
use orelab_core::radical::{
    check_central_commutation, coefficient_equation_check, geometric_quasi_inverse, i_set_explore,
    is_quasi_inverse, neumann_quasi_inverse, nil_witness_chain, shift_nonzero_witness,
    shift_product_check, shift_support, Bounds, ChainStatus, QuasiInverseStatus,
};
use orelab_core::ring::{jacobson_radical, make_ring, nilradical, Elem, Ring};
use orelab_core::{seed, Error};
use rayon::prelude::*;
use serde_json::Value;

use crate::config::{ScenarioConfig, ScenarioKind};
use crate::report::{status_of, CheckResult, ScenarioReport, Status};

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub jobs: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 0, jobs: 1 }
    }
}

/// The seed a scenario runs with.
pub fn scenario_seed(config: &ScenarioConfig, index: usize, run_seed: u64) -> u64 {
    config
        .seed
        .unwrap_or_else(|| seed::split(run_seed, index as u64))
}

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}

/// Runs every scenario.
pub fn run_scenarios(configs: &[ScenarioConfig], options: &RunOptions) -> Vec<ScenarioReport> {
    in_pool(options.jobs, || {
        configs
            .par_iter()
            .enumerate()
            .map(|(i, c)| timed(c, scenario_seed(c, i, options.seed), execute))
            .collect()
    })
}

/// Runs only the map axiom checks of every scenario.
pub fn check_maps(configs: &[ScenarioConfig], options: &RunOptions) -> Vec<ScenarioReport> {
    in_pool(options.jobs, || {
        configs
            .par_iter()
            .enumerate()
            .map(|(i, c)| {
                timed(c, scenario_seed(c, i, options.seed), |c, seed| {
                    let ring = make_ring(&c.ring)?;
                    Ok(axioms(&ring, c, seed)?.0)
                })
            })
            .collect()
    })
}

type Outcome = Result<Vec<CheckResult>, Error>;

fn timed(
    config: &ScenarioConfig,
    seed: u64,
    f: impl FnOnce(&ScenarioConfig, u64) -> Outcome,
) -> ScenarioReport {
    let start = Instant::now();
    let outcome = f(config, seed);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let (status, checks, error) = match outcome {
        Ok(checks) => (status_of(&checks), checks, None),
        Err(e) => (Status::Error, Vec::new(), Some(e.to_string())),
    };
    ScenarioReport {
        name: config.name.clone(),
        kind: config.scenario.name().to_string(),
        status,
        checks,
        error,
        seed,
        elapsed_ms,
    }
}

fn verdict(description: impl Into<String>, v: Verdict) -> CheckResult {
    match v {
        Verdict::Pass => CheckResult::pass(description),
        Verdict::Fail(w) => CheckResult::fail(description, w),
    }
}

fn check(
    description: impl Into<String>,
    ok: bool,
    witness: impl FnOnce() -> Witness,
) -> CheckResult {
    if ok {
        CheckResult::pass(description)
    } else {
        CheckResult::fail(description, witness())
    }
}

fn poly_witness(description: impl Into<String>, polys: &[&OrePoly]) -> Witness {
    Witness {
        description: description.into(),
        elements: polys.iter().map(|p| p.to_json()).collect(),
    }
}

/// A precondition error becomes a failed check; anything else propagates.
fn precondition_check(description: &str, err: Error, subject: Value) -> Result<CheckResult, Error> {
    match err {
        Error::Precondition { what, witness } => {
            let mut elements = vec![subject];
            elements.extend(witness.map(Value::String));
            Ok(CheckResult::fail(
                description,
                Witness {
                    description: what,
                    elements,
                },
            ))
        }
        other => Err(other),
    }
}

type Maps = (Automorphism, Derivation, Option<Elem>);

/// Axiom checks for σ, D and q. The resolved maps are returned when all pass.
fn axioms(
    ring: &Ring,
    c: &ScenarioConfig,
    seed: u64,
) -> Result<(Vec<CheckResult>, Option<Maps>), Error> {
    let sigma = Automorphism::new(ring, &c.sigma)?;
    let deriv = Derivation::new(&sigma, &c.deriv)?;
    let set = VerificationSet::for_ring(ring, seed);
    let mut checks = vec![
        verdict(
            format!("sigma is a ring automorphism ({})", set.description),
            check_automorphism(&sigma, &set),
        ),
        verdict(
            format!("D is a sigma-derivation ({})", set.description),
            check_sigma_derivation(&deriv, &set),
        ),
    ];
    let q = match &c.q {
        Some(v) => {
            let field = ring
                .scalar_field()
                .ok_or_else(|| Error::Config(format!("{ring} has no scalar field")))?;
            let q = field.from_json(v)?;
            checks.push(verdict(
                format!("D sigma = q sigma D with q = {}", field.display(&q)),
                check_q_skew(&deriv, &q, &set)?,
            ));
            Some(q)
        }
        None => None,
    };
    let ok = checks.iter().all(|c| c.passed);
    Ok((checks, ok.then_some((sigma, deriv, q))))
}

fn bounds(c: &ScenarioConfig) -> Bounds {
    let d = Bounds::default();
    Bounds {
        degree: c.bounds.degree.unwrap_or(d.degree),
        terms: c.bounds.terms.unwrap_or(d.terms),
    }
}

fn execute(c: &ScenarioConfig, seed: u64) -> Outcome {
    let ring = make_ring(&c.ring)?;
    match &c.scenario {
        ScenarioKind::Axioms {} => return Ok(axioms(&ring, c, seed)?.0),
        ScenarioKind::RadicalOracle {
            expect_jacobson,
            expect_nilradical,
        } => {
            return radical_oracle(
                &ring,
                expect_jacobson.as_deref(),
                expect_nilradical.as_deref(),
            );
        }
        ScenarioKind::Gaussian { cases } => {
            let field = ring
                .scalar_field()
                .ok_or_else(|| Error::Config(format!("{ring} has no scalar field")))?;
            let q = field.from_json(c.q.as_ref().expect("validated"))?;
            let mut out = Vec::new();
            for case in cases {
                let got = q_binomial(case.k, case.j, &q, &field)?;
                let expected = field.from_json(&case.expected)?;
                out.push(check(
                    format!(
                        "C({}, {}) at q = {} is {}",
                        case.k,
                        case.j,
                        field.display(&q),
                        field.display(&expected)
                    ),
                    got == expected,
                    || Witness::new(&field, format!("computed {}", field.display(&got)), &[&got]),
                ));
            }
            return Ok(out);
        }
        _ => {}
    }
    let (mut checks, maps) = axioms(&ring, c, seed)?;
    let Some((_, deriv, q)) = maps else {
        return Ok(checks);
    };
    let ctx = OreContext::new(deriv, q, seed)?;
    let samples = c.samples();
    let mut rng = seed::rng(seed::split(seed, 1));
    match &c.scenario {
        ScenarioKind::Qleibniz { max_k } => {
            checks.extend(qleibniz(&ctx, *max_k, samples, &mut rng)?)
        }
        ScenarioKind::Associativity { max_degree } => {
            checks.extend(associativity(&ctx, *max_degree, samples, &mut rng));
        }
        ScenarioKind::SigmaStar { max_degree } => {
            checks.extend(sigma_star_checks(&ctx, *max_degree, samples, &mut rng)?)
        }
        ScenarioKind::CharPCommutation { m } => {
            let mut elems = ring.spanning_set();
            elems.extend((0..samples).map(|_| ring.random(&mut rng)));
            let mut failure = None;
            for a in &elems {
                match check_central_commutation(a, *m, &ctx, seed) {
                    Ok(Verdict::Pass) => {}
                    Ok(Verdict::Fail(w)) => {
                        failure = Some(CheckResult::fail("commutation", w));
                        break;
                    }
                    Err(e) => {
                        failure = Some(precondition_check("commutation", e, ring.to_json(a))?);
                        break;
                    }
                }
            }
            let description = format!(
                "x^(m p^m)·a = a·x^(m p^m) with m = {m} on {} elements ({} spanning, {samples} random)",
                elems.len(),
                elems.len() - samples
            );
            checks.push(match failure {
                None => CheckResult::pass(description),
                Some(f) => CheckResult { description, ..f },
            });
        }
        ScenarioKind::GeometricQi {
            a,
            k,
            expected_degree,
        } => {
            checks.extend(geometric(
                &ctx,
                &ring.from_json(a)?,
                *k,
                *expected_degree,
                bounds(c),
            )?);
        }
        ScenarioKind::CoefficientEquations { a, n, f } => {
            let f = f.as_ref().map(|v| ctx.from_json(v)).transpose()?;
            checks.extend(coefficient_equations(
                &ctx,
                &ring.from_json(a)?,
                *n,
                f,
                bounds(c),
            )?);
        }
        ScenarioKind::ShiftNilpotency {
            a,
            max_degree,
            expect_witness,
            witness_tries,
        } => {
            let a = ring.from_json(a)?;
            let width = shift_support(&ctx, &a)?.map_or(0, |(lo, hi)| (hi - lo + 1) as usize);
            let mut failure = None;
            for _ in 0..samples {
                let factors: Vec<OrePoly> = (0..=width)
                    .map(|_| ctx.random(&mut rng, *max_degree))
                    .collect();
                if let Verdict::Fail(w) = shift_product_check(&ctx, &a, &factors)? {
                    failure = Some(w);
                    break;
                }
            }
            checks.push(check(
                format!(
                    "{samples} products of {} factors a·x·f_i vanish (support width {width})",
                    width + 1
                ),
                failure.is_none(),
                || failure.clone().expect("failure"),
            ));
            if *expect_witness {
                let found = if width == 0 {
                    None
                } else {
                    shift_nonzero_witness(&ctx, &a, width, seed, *witness_tries)?
                };
                checks.push(check(
                    format!("some product of {width} factors a·x·f_i is nonzero"),
                    found.is_some(),
                    || Witness::new(&ring, format!("none found in {witness_tries} tries"), &[&a]),
                ));
            }
        }
        ScenarioKind::Iset {
            expect,
            expect_all_samples,
        } => {
            checks.extend(iset(
                &ctx,
                bounds(c),
                samples,
                seed,
                expect.as_deref(),
                *expect_all_samples,
            )?);
        }
        ScenarioKind::Axioms {}
        | ScenarioKind::RadicalOracle { .. }
        | ScenarioKind::Gaussian { .. } => {
            unreachable!("handled above")
        }
    }
    Ok(checks)
}

fn qleibniz(ctx: &OreContext, max_k: usize, samples: usize, rng: &mut seed::SeededRng) -> Outcome {
    let ring = ctx.ring();
    let rs: Vec<Elem> = (0..samples).map(|_| ring.random(rng)).collect();
    let x = ctx.x_pow(1).ok();
    let mut out = Vec::new();
    for k in 0..=max_k {
        let mut failure = None;
        for r in &rs {
            let formula = q_leibniz(k, r, ctx)?;
            let mut iterated = ctx.constant(r.clone());
            for _ in 0..k {
                iterated = match &x {
                    Some(x) => ore_mul(x, &iterated)?,
                    None => iterated.x_times(),
                };
            }
            let words = if k <= MAX_WORD_LENGTH {
                Some(word_expansion(k, r, ctx)?)
            } else {
                None
            };
            if formula != iterated || words.as_ref().is_some_and(|w| *w != formula) {
                let mut polys = vec![&formula, &iterated];
                polys.extend(words.as_ref());
                let mut w = poly_witness(
                    format!("x^{k}·r disagrees for r = {}", ring.display(r)),
                    &polys,
                );
                w.elements.insert(0, ring.to_json(r));
                failure = Some(w);
                break;
            }
        }
        out.push(check(
            format!(
                "x^{k}·r by q-Leibniz, iterated product and words agree on {} samples",
                rs.len()
            ),
            failure.is_none(),
            || failure.expect("failure"),
        ));
    }
    Ok(out)
}

fn associativity(
    ctx: &OreContext,
    max_degree: usize,
    samples: usize,
    rng: &mut seed::SeededRng,
) -> Vec<CheckResult> {
    type Law = fn(&OrePoly, &OrePoly, &OrePoly) -> (OrePoly, OrePoly);
    let laws: [(&str, Law); 3] = [
        ("(fg)h = f(gh)", |f, g, h| (&(f * g) * h, f * &(g * h))),
        ("f(g + h) = fg + fh", |f, g, h| {
            (f * &(g + h), &(f * g) + &(f * h))
        }),
        ("(f + g)h = fh + gh", |f, g, h| {
            (&(f + g) * h, &(f * h) + &(g * h))
        }),
    ];
    let triples: Vec<[OrePoly; 3]> = (0..samples)
        .map(|_| std::array::from_fn(|_| ctx.random(rng, max_degree)))
        .collect();
    laws.iter()
        .map(|(name, law)| {
            let bad = triples.iter().find(|[f, g, h]| {
                let (l, r) = law(f, g, h);
                l != r
            });
            check(
                format!("{name} on {samples} triples"),
                bad.is_none(),
                || {
                    let [f, g, h] = bad.expect("failure");
                    poly_witness(format!("{name} fails"), &[f, g, h])
                },
            )
        })
        .collect()
}

fn sigma_star_checks(
    ctx: &OreContext,
    max_degree: usize,
    samples: usize,
    rng: &mut seed::SeededRng,
) -> Outcome {
    let mut mult = None;
    let mut add = None;
    let mut inv = None;
    for _ in 0..samples {
        let f = ctx.random(rng, max_degree);
        let g = ctx.random(rng, max_degree);
        let (sf, sg) = (sigma_star(&f)?, sigma_star(&g)?);
        if mult.is_none() && sigma_star(&(&f * &g))? != &sf * &sg {
            mult = Some(poly_witness("sigma*(fg) != sigma*(f) sigma*(g)", &[&f, &g]));
        }
        if add.is_none() && sigma_star(&(&f + &g))? != &sf + &sg {
            add = Some(poly_witness(
                "sigma*(f + g) != sigma*(f) + sigma*(g)",
                &[&f, &g],
            ));
        }
        if inv.is_none()
            && (sigma_star_inverse(&sf)? != f || sigma_star(&sigma_star_inverse(&f)?)? != f)
        {
            inv = Some(poly_witness(
                "sigma* and its inverse do not compose to the identity",
                &[&f],
            ));
        }
    }
    let entry = |name: &str, w: Option<Witness>| {
        check(format!("{name} on {samples} pairs"), w.is_none(), || {
            w.expect("failure")
        })
    };
    Ok(vec![
        entry("sigma* is multiplicative", mult),
        entry("sigma* is additive", add),
        entry("sigma* is inverted by its inverse", inv),
    ])
}

fn geometric(
    ctx: &OreContext,
    a: &Elem,
    k: usize,
    expected_degree: Option<usize>,
    bounds: Bounds,
) -> Outcome {
    let ring = ctx.ring();
    let g = match geometric_quasi_inverse(a, k, ctx) {
        Ok(g) => g,
        Err(e) => {
            return Ok(vec![precondition_check(
                "geometric quasi-inverse exists",
                e,
                ring.to_json(a),
            )?])
        }
    };
    let f = ctx.monomial(a.clone(), k);
    let sum = &f + &g;
    let mut out = vec![
        check("f + g + f·g = 0", (&sum + &(&f * &g)).is_zero(), || {
            poly_witness("f + g + f·g != 0", &[&f, &g])
        }),
        check("f + g + g·f = 0", (&sum + &(&g * &f)).is_zero(), || {
            poly_witness("f + g + g·f != 0", &[&f, &g])
        }),
    ];
    if let Some(d) = expected_degree {
        out.push(check(
            format!("quasi-inverse has degree {d}"),
            g.degree() == Some(d),
            || poly_witness(format!("degree is {:?}", g.degree()), &[&g]),
        ));
    }
    let neumann = neumann_quasi_inverse(&f, bounds)?;
    out.push(check(
        format!(
            "Neumann series agrees after {} partial sums",
            neumann.partial_sums_checked
        ),
        neumann.found() == Some(&g),
        || poly_witness(format!("Neumann series gave {:?}", neumann.status), &[&g]),
    ));
    Ok(out)
}

fn coefficient_equations(
    ctx: &OreContext,
    a: &Elem,
    n: usize,
    f: Option<OrePoly>,
    bounds: Bounds,
) -> Outcome {
    let ring = ctx.ring();
    let subject = ring.to_json(a);
    let f = match f {
        Some(f) => f,
        None => {
            let axn = ctx.monomial(a.clone(), n);
            match neumann_quasi_inverse(&axn, bounds)?.status {
                QuasiInverseStatus::Found(g) => g,
                status => {
                    return Ok(vec![CheckResult::fail(
                        "a·x^n has a terminating Neumann series",
                        Witness {
                            description: format!("{status:?}"),
                            elements: vec![subject],
                        },
                    )])
                }
            }
        }
    };
    let report = match coefficient_equation_check(a, n, &f) {
        Ok(r) => r,
        Err(e) => {
            return Ok(vec![precondition_check(
                "coefficient equation preconditions",
                e,
                subject,
            )?])
        }
    };
    let mut out: Vec<CheckResult> = report
        .checks
        .into_iter()
        .map(|c| verdict(format!("coefficient equation {}", c.label), c.verdict))
        .collect();
    let chain = match nil_witness_chain(a, n, &f) {
        Ok(chain) => chain,
        Err(e) => {
            out.push(precondition_check(
                "nil witness chain preconditions",
                e,
                subject,
            )?);
            return Ok(out);
        }
    };
    let m = report.m.unwrap_or(0);
    for link in &chain.links {
        let j = link.index;
        out.push(check(
            format!(
                "b_{} r_{j} in N(R), r_{j} a product of {} orbit factors",
                m - j,
                link.factors
            ),
            link.in_nilradical,
            || {
                Witness::new(
                    ring,
                    format!("b_{} r_{j} is outside N(R)", m - j),
                    &[&f.coeff(m - j), &link.element],
                )
            },
        ));
    }
    let status = chain.status.clone();
    out.push(check(
        "chain construction completes",
        status == ChainStatus::Complete,
        || Witness {
            description: format!("{status:?}"),
            elements: vec![subject.clone()],
        },
    ));
    out.push(check(
        "a·r_(m-n)⋯r_0 in N(R)",
        chain.final_in_nilradical,
        || {
            Witness::new(
                ring,
                "final product is outside N(R)",
                &[&chain.final_product],
            )
        },
    ));
    Ok(out)
}

fn iset(
    ctx: &OreContext,
    bounds: Bounds,
    samples: usize,
    seed: u64,
    expect: Option<&[Value]>,
    expect_all: bool,
) -> Outcome {
    let ring = ctx.ring();
    let report = i_set_explore(ctx, bounds, samples, seed)?;
    let scope = if report.exhaustive {
        "all elements"
    } else {
        "sampled elements"
    };
    let mut out = vec![
        verdict(
            format!("candidate set is an ideal on {scope}"),
            report.ideal_check.clone(),
        ),
        verdict(
            "sigma maps the candidate set onto itself",
            report.sigma_invariance.clone(),
        ),
        verdict(
            "D maps the candidate set into itself",
            report.d_stability.clone(),
        ),
    ];
    let bad = report
        .candidates
        .iter()
        .find(|m| !is_quasi_inverse(&ctx.monomial(m.element.clone(), 1), &m.quasi_inverse));
    out.push(check(
        format!(
            "each of {} candidates carries a verified quasi-inverse of r·x",
            report.candidates.len()
        ),
        bad.is_none(),
        || {
            Witness::new(
                ring,
                "quasi-inverse fails",
                &[&bad.expect("failure").element],
            )
        },
    ));
    let found = report.candidate_elements();
    if let Some(expect) = expect {
        let mut want = expect
            .iter()
            .map(|v| ring.from_json(v))
            .collect::<Result<Vec<_>, _>>()?;
        want.sort();
        want.dedup();
        let mut got = found.clone();
        got.sort();
        out.push(check(
            format!("candidate set is {}", set_display(ring, &want)),
            got == want,
            || Witness {
                description: format!("candidate set is {}", set_display(ring, &got)),
                elements: got.iter().map(|e| ring.to_json(e)).collect(),
            },
        ));
    }
    if expect_all {
        out.push(check(
            format!(
                "all {} {scope} enter the candidate set",
                found.len() + report.no_evidence.len()
            ),
            report.no_evidence.is_empty(),
            || {
                let (e, why) = &report.no_evidence[0];
                Witness::new(ring, why.clone(), &[e])
            },
        ));
    }
    Ok(out)
}

fn set_display(ring: &Ring, elems: &[Elem]) -> String {
    let items: Vec<String> = elems.iter().map(|e| ring.display(e)).collect();
    format!("{{{}}}", items.join(", "))
}

fn radical_oracle(ring: &Ring, expect_j: Option<&[Value]>, expect_n: Option<&[Value]>) -> Outcome {
    let j: Vec<Elem> = jacobson_radical(ring)?.elements().iter().cloned().collect();
    let n: Vec<Elem> = nilradical(ring)?.elements().iter().cloned().collect();
    let payloads = |s: &[Elem]| s.iter().map(|e| ring.to_json(e)).collect::<Vec<_>>();
    let mut out = vec![check(
        format!("J(R) = N(R) = {}", set_display(ring, &j)),
        j == n,
        || Witness {
            description: format!("N(R) = {}", set_display(ring, &n)),
            elements: payloads(&n),
        },
    )];
    for (name, got, want) in [("J(R)", &j, expect_j), ("N(R)", &n, expect_n)] {
        let Some(want) = want else { continue };
        let mut want = want
            .iter()
            .map(|v| ring.from_json(v))
            .collect::<Result<Vec<_>, _>>()?;
        want.sort();
        want.dedup();
        out.push(check(
            format!("{name} = {}", set_display(ring, &want)),
            *got == want,
            || Witness {
                description: format!("{name} = {}", set_display(ring, got)),
                elements: payloads(got),
            },
        ));
    }
    Ok(out)
}
