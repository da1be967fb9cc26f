#![allow(dead_code)]

use orelab_core::maps::{AutomorphismSpec, DerivationSpec};
use orelab_core::ore::OreContext;
use orelab_core::{make_ring, Ring, RingSpec};
use serde_json::{json, Value};
use std::sync::OnceLock;

pub fn ring(spec: RingSpec) -> Ring {
    make_ring(&spec).unwrap()
}

/// Context from JSON catalog entries, verified with seed 0.
pub fn context(ring_spec: RingSpec, sigma: Value, deriv: Value, q: Option<Value>) -> OreContext {
    let r = ring(ring_spec);
    let sigma: AutomorphismSpec = serde_json::from_value(sigma).unwrap();
    let deriv: DerivationSpec = serde_json::from_value(deriv).unwrap();
    OreContext::from_specs(&r, &sigma, &deriv, q.as_ref(), 0).unwrap()
}

pub fn f7_trunc() -> RingSpec {
    RingSpec::truncated(RingSpec::prime_field(7), 6)
}

/// `F_7[y]/(y^6)` with `σ(y) = 2y` and the 2-difference operator.
pub fn quantum_plane() -> OreContext {
    static CTX: OnceLock<OreContext> = OnceLock::new();
    CTX.get_or_init(|| {
        context(
            f7_trunc(),
            json!({"scale": 2}),
            json!("q_difference"),
            Some(json!(2)),
        )
    })
    .clone()
}

/// `Q[y]` with `σ(y) = 2y` and the 2-difference operator.
pub fn rational_plane() -> OreContext {
    static CTX: OnceLock<OreContext> = OnceLock::new();
    CTX.get_or_init(|| {
        context(
            RingSpec::polynomial(RingSpec::Rationals),
            json!({"scale": 2}),
            json!("q_difference"),
            Some(json!(2)),
        )
    })
    .clone()
}

/// `F_3[y]/(y^9)` with `d/dy`.
pub fn char3_derivative() -> OreContext {
    static CTX: OnceLock<OreContext> = OnceLock::new();
    CTX.get_or_init(|| {
        context(
            RingSpec::truncated(RingSpec::prime_field(3), 9),
            json!("identity"),
            json!("formal_derivative"),
            None,
        )
    })
    .clone()
}

/// `F_4[y]/(y^3)` with coefficientwise Frobenius and `D = 0`.
pub fn f4_frobenius() -> OreContext {
    static CTX: OnceLock<OreContext> = OnceLock::new();
    CTX.get_or_init(|| {
        context(
            RingSpec::truncated(RingSpec::galois(2, 2), 3),
            json!({"frobenius": 1}),
            json!("zero"),
            None,
        )
    })
    .clone()
}

/// Direct sum of copies of `Z_4` with the index shift.
pub fn shift_ring() -> OreContext {
    static CTX: OnceLock<OreContext> = OnceLock::new();
    CTX.get_or_init(|| {
        context(
            RingSpec::direct_sum_shift(RingSpec::modular(4)),
            json!({"shift": 1}),
            json!("zero"),
            None,
        )
    })
    .clone()
}

/// `Z_n` with trivial maps.
pub fn zn(n: u64) -> OreContext {
    context(RingSpec::modular(n), json!("identity"), json!("zero"), None)
}
