//! Exact arithmetic for Ore extensions `R[x; σ, D]` over concrete coefficient
//! rings, together with brute-force radical oracles and quasi-inverse search.

mod error;
pub mod maps;
pub mod ore;
pub mod radical;
pub mod ring;
pub mod seed;

pub use error::{Error, Result};
pub use ring::{make_ring, Elem, Ring, RingSpec};
