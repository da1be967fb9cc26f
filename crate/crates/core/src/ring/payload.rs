//! Element payload syntax: JSON values for configs and reports, and a compact
//! human-readable rendering.
//!
//! | kind | JSON payload |
//! |------|--------------|
//! | residue ring, prime field | integer (negative values are reduced) |
//! | Galois field | coordinate array `[c0, c1, ...]` meaning `c0 + c1 w + ...`, or an integer |
//! | rationals | integer or string `"n/d"` |
//! | truncated / untruncated polynomial | coefficient array, index = power of `y` |
//! | matrix kinds | array of rows |
//! | direct sum | object `{"index": payload}` |
//! | Dorroh extension | `[r, m]` |

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::{elem_ints, ints_to_elem, strip, Elem, Kind, Ring};
use crate::error::{Error, Result};

fn bad(ring: &Ring, v: &Value, why: &str) -> Error {
    Error::Config(format!("invalid element {v} for {ring}: {why}"))
}

fn parse_bigint(ring: &Ring, v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(bad(ring, v, "expected an integer"))
            }
        }
        Value::String(s) => {
            BigInt::from_str(s.trim()).map_err(|_| bad(ring, v, "expected an integer"))
        }
        _ => Err(bad(ring, v, "expected an integer")),
    }
}

fn atomic(s: &str) -> bool {
    !s.chars().skip(1).any(|c| "+-/[{(, ".contains(c))
}

fn render_poly(terms: &[String], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, c) in terms.iter().enumerate().rev() {
        if c == "0" {
            continue;
        }
        let power = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let part = if i == 0 {
            c.clone()
        } else if c == "1" {
            power
        } else if c == "-1" {
            format!("-{power}")
        } else if atomic(c) {
            format!("{c}{power}")
        } else {
            format!("({c}){power}")
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+").replace("+-", "-")
    }
}

impl Ring {
    /// Human-readable rendering of an element.
    pub fn display(&self, a: &Elem) -> String {
        match self.kind() {
            Kind::Residue { .. } => a.as_int().to_string(),
            Kind::Rationals => a.as_rat().to_string(),
            Kind::Galois(_) => {
                let terms: Vec<String> = elem_ints(a).iter().map(|c| c.to_string()).collect();
                render_poly(&terms, "w")
            }
            Kind::Truncated { base, .. } | Kind::Polynomial { base } => {
                let terms: Vec<String> = a.as_vec().iter().map(|c| base.display(c)).collect();
                render_poly(&terms, "y")
            }
            Kind::Matrix { base, d, .. } => {
                let rows: Vec<String> = a
                    .as_vec()
                    .chunks(*d)
                    .map(|row| {
                        let cells: Vec<String> = row.iter().map(|c| base.display(c)).collect();
                        format!("[{}]", cells.join(", "))
                    })
                    .collect();
                format!("[{}]", rows.join(", "))
            }
            Kind::DirectSumShift { base } => {
                let seq = a.as_seq();
                if seq.is_empty() {
                    return "0".into();
                }
                let cells: Vec<String> = seq
                    .iter()
                    .map(|(i, v)| format!("{i}: {}", base.display(v)))
                    .collect();
                format!("{{{}}}", cells.join(", "))
            }
            Kind::Dorroh { inner, scalar } => {
                let (r, m) = a.as_pair();
                format!("({}, {})", inner.display(r), scalar.display(m))
            }
            Kind::Quotient(q) => format!("{}+I", q.base.display(a)),
        }
    }

    /// Canonical JSON payload of an element.
    pub fn to_json(&self, a: &Elem) -> Value {
        match self.kind() {
            Kind::Residue { .. } => json!(a.as_int()),
            Kind::Rationals => {
                let r = a.as_rat();
                if r.is_integer() {
                    match i64::try_from(r.numer()) {
                        Ok(i) => json!(i),
                        Err(_) => json!(r.numer().to_string()),
                    }
                } else {
                    json!(r.to_string())
                }
            }
            Kind::Galois(_) => json!(elem_ints(a)),
            Kind::Truncated { base, .. } | Kind::Polynomial { base } => {
                Value::Array(a.as_vec().iter().map(|c| base.to_json(c)).collect())
            }
            Kind::Matrix { base, d, .. } => Value::Array(
                a.as_vec()
                    .chunks(*d)
                    .map(|row| Value::Array(row.iter().map(|c| base.to_json(c)).collect()))
                    .collect(),
            ),
            Kind::DirectSumShift { base } => Value::Object(
                a.as_seq()
                    .iter()
                    .map(|(i, v)| (i.to_string(), base.to_json(v)))
                    .collect(),
            ),
            Kind::Dorroh { inner, scalar } => {
                let (r, m) = a.as_pair();
                json!([inner.to_json(r), scalar.to_json(m)])
            }
            Kind::Quotient(q) => q.base.to_json(a),
        }
    }

    /// Parses a JSON payload into a canonical element of this ring.
    pub fn from_json(&self, v: &Value) -> Result<Elem> {
        match self.kind() {
            Kind::Residue { n, .. } => {
                let k = parse_bigint(self, v)?.mod_floor(&BigInt::from(*n));
                Ok(Elem::Int(u64::try_from(&k).expect("reduced residue fits")))
            }
            Kind::Rationals => match v {
                Value::String(s) => BigRational::from_str(s.trim())
                    .map(Elem::Rat)
                    .map_err(|_| bad(self, v, "expected a rational n/d")),
                _ => Ok(Elem::Rat(BigRational::from_integer(parse_bigint(self, v)?))),
            },
            Kind::Galois(gf) => match v {
                Value::Array(items) => {
                    if items.len() > gf.k {
                        return Err(bad(self, v, "too many coordinates"));
                    }
                    let mut coords = vec![0u64; gf.k];
                    for (slot, item) in coords.iter_mut().zip(items) {
                        let c = parse_bigint(self, item)?.mod_floor(&BigInt::from(gf.p));
                        *slot = u64::try_from(&c).expect("reduced");
                    }
                    Ok(ints_to_elem(coords))
                }
                _ => {
                    let c = parse_bigint(self, v)?.mod_floor(&BigInt::from(gf.p));
                    let mut coords = vec![0u64; gf.k];
                    coords[0] = u64::try_from(&c).expect("reduced");
                    Ok(ints_to_elem(coords))
                }
            },
            Kind::Truncated { base, n } => {
                let items = v
                    .as_array()
                    .ok_or_else(|| bad(self, v, "expected a coefficient array"))?;
                if items.len() > *n {
                    return Err(bad(self, v, "more coefficients than the truncation degree"));
                }
                let mut coeffs = vec![base.zero(); *n];
                for (slot, item) in coeffs.iter_mut().zip(items) {
                    *slot = base.from_json(item)?;
                }
                Ok(Elem::Vector(coeffs))
            }
            Kind::Polynomial { base } => {
                let items = v
                    .as_array()
                    .ok_or_else(|| bad(self, v, "expected a coefficient array"))?;
                let coeffs = items
                    .iter()
                    .map(|c| base.from_json(c))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Elem::Vector(strip(coeffs, &base.zero())))
            }
            Kind::Matrix { base, d, shape } => {
                let rows = v
                    .as_array()
                    .ok_or_else(|| bad(self, v, "expected an array of rows"))?;
                if rows.len() != *d {
                    return Err(bad(self, v, "wrong number of rows"));
                }
                let mut cells = Vec::with_capacity(d * d);
                for (i, row) in rows.iter().enumerate() {
                    let row = row
                        .as_array()
                        .filter(|r| r.len() == *d)
                        .ok_or_else(|| bad(self, v, "wrong row length"))?;
                    for (j, c) in row.iter().enumerate() {
                        let e = base.from_json(c)?;
                        if !shape.allows(i, j) && !base.is_zero(&e) {
                            return Err(bad(self, v, "entry outside the allowed triangle"));
                        }
                        cells.push(e);
                    }
                }
                Ok(Elem::Vector(cells))
            }
            Kind::DirectSumShift { base } => {
                let obj = v
                    .as_object()
                    .ok_or_else(|| bad(self, v, "expected an index map"))?;
                let mut seq = BTreeMap::new();
                for (k, item) in obj {
                    let idx: i64 = k
                        .trim()
                        .parse()
                        .map_err(|_| bad(self, v, "indices must be integers"))?;
                    let e = base.from_json(item)?;
                    if !base.is_zero(&e) {
                        seq.insert(idx, e);
                    }
                }
                Ok(Elem::Seq(seq))
            }
            Kind::Dorroh { inner, scalar } => match v.as_array().map(Vec::as_slice) {
                Some([r, m]) => Ok(Elem::pair(inner.from_json(r)?, scalar.from_json(m)?)),
                _ => Err(bad(self, v, "expected a pair [r, m]")),
            },
            Kind::Quotient(q) => Ok(q.canon(&q.base.from_json(v)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{make_ring, RingSpec};
    use serde_json::json;

    #[test]
    fn display_truncated_poly_and_gf() {
        let r = make_ring(&RingSpec::truncated(RingSpec::prime_field(7), 6)).unwrap();
        let a = r.from_json(&json!([1, 1, 2])).unwrap();
        assert_eq!(r.display(&a), "2y^2+y+1");
        let gf = make_ring(&RingSpec::truncated(RingSpec::galois(2, 2), 3)).unwrap();
        let b = gf.from_json(&json!([[0], [0, 1], [1, 1]])).unwrap();
        assert_eq!(gf.display(&b), "(w+1)y^2+wy");
    }

    #[test]
    fn json_payload_round_trip() {
        for (spec, payload) in [
            (RingSpec::modular(4), json!(-1)),
            (RingSpec::Rationals, json!("3/4")),
            (RingSpec::galois(2, 2), json!([0, 1])),
            (
                RingSpec::polynomial(RingSpec::Rationals),
                json!([1, "1/2", 0]),
            ),
            (
                RingSpec::upper_triangular(RingSpec::prime_field(2), 2),
                json!([[1, 1], [0, 1]]),
            ),
            (
                RingSpec::direct_sum_shift(RingSpec::modular(4)),
                json!({"-1": 3, "2": 1}),
            ),
            (
                RingSpec::dorroh(
                    RingSpec::strictly_upper_triangular(RingSpec::prime_field(2), 2),
                    RingSpec::prime_field(2),
                ),
                json!([[[0, 1], [0, 0]], 1]),
            ),
        ] {
            let r = make_ring(&spec).unwrap();
            let e = r.from_json(&payload).unwrap();
            assert_eq!(r.from_json(&r.to_json(&e)).unwrap(), e, "{spec}");
        }
    }

    #[test]
    fn rejects_malformed_payloads() {
        let ut = make_ring(&RingSpec::upper_triangular(RingSpec::prime_field(2), 2)).unwrap();
        assert!(ut.from_json(&json!([[1, 0], [1, 1]])).is_err());
        let tp = make_ring(&RingSpec::truncated(RingSpec::prime_field(3), 2)).unwrap();
        assert!(tp.from_json(&json!([1, 2, 0])).is_err());
    }
}
