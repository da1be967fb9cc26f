//! Scenario configuration: one JSON document with a schema version and a
//! list of scenarios. Parsing validates everything that can be checked
//! without running a scenario (ring parameters, map kinds, payloads); map
//! axioms are checked at run time so that a broken map yields a failing
//! report with a witness.

use std::fmt;

use orelab_core::maps::{Automorphism, AutomorphismSpec, Derivation, DerivationSpec};
use orelab_core::ring::{make_ring, Ring, RingSpec};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Overrides for the Neumann bounds and the per-kind sample count.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsConfig {
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default)]
    pub terms: Option<usize>,
    #[serde(default)]
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianCase {
    pub k: i64,
    pub j: i64,
    pub expected: Value,
}

fn default_max_k() -> usize {
    10
}

fn default_max_degree() -> usize {
    3
}

fn default_tries() -> usize {
    2000
}

/// What a scenario checks, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ScenarioKind {
    /// σ is a ring automorphism, D a σ-derivation, and `Dσ = qσD` when `q` is given.
    Axioms {},
    /// `x^k·r` by the q-Leibniz formula, by iterated products and by words.
    Qleibniz {
        #[serde(default = "default_max_k")]
        max_k: usize,
    },
    /// Gaussian binomials at `q` against expected values.
    Gaussian { cases: Vec<GaussianCase> },
    /// Associativity and both distributive laws on random triples.
    Associativity {
        #[serde(default = "default_max_degree")]
        max_degree: usize,
    },
    /// `σ*` is additive, multiplicative and inverted by its inverse.
    SigmaStar {
        #[serde(default = "default_max_degree")]
        max_degree: usize,
    },
    /// `x^(m p^m)·a = a·x^(m p^m)` on spanning and random elements.
    CharPCommutation { m: u32 },
    /// Geometric quasi-inverse of `a·x^k`, cross-checked with the Neumann series.
    GeometricQi {
        a: Value,
        k: usize,
        #[serde(default)]
        expected_degree: Option<usize>,
    },
    /// Coefficient equations of the quasi-inverse of `a·x^n` and the nil witness chain.
    CoefficientEquations {
        a: Value,
        n: usize,
        #[serde(default)]
        f: Option<Value>,
    },
    /// Products of `a·x·f_i` over a direct sum with index shift.
    ShiftNilpotency {
        a: Value,
        #[serde(default = "default_max_degree")]
        max_degree: usize,
        #[serde(default)]
        expect_witness: bool,
        #[serde(default = "default_tries")]
        witness_tries: usize,
    },
    /// Candidate set `{ r : r·x quasi-regular }` and its stability.
    Iset {
        #[serde(default)]
        expect: Option<Vec<Value>>,
        #[serde(default)]
        expect_all_samples: bool,
    },
    /// Brute-force `J(R)` and `N(R)` of a finite ring.
    RadicalOracle {
        #[serde(default)]
        expect_jacobson: Option<Vec<Value>>,
        #[serde(default)]
        expect_nilradical: Option<Vec<Value>>,
    },
}

impl ScenarioKind {
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::Axioms {} => "axioms",
            ScenarioKind::Qleibniz { .. } => "qleibniz",
            ScenarioKind::Gaussian { .. } => "gaussian",
            ScenarioKind::Associativity { .. } => "associativity",
            ScenarioKind::SigmaStar { .. } => "sigma-star",
            ScenarioKind::CharPCommutation { .. } => "char-p-commutation",
            ScenarioKind::GeometricQi { .. } => "geometric-qi",
            ScenarioKind::CoefficientEquations { .. } => "coefficient-equations",
            ScenarioKind::ShiftNilpotency { .. } => "shift-nilpotency",
            ScenarioKind::Iset { .. } => "iset",
            ScenarioKind::RadicalOracle { .. } => "radical-oracle",
        }
    }

    /// Sample count used when `bounds.samples` is absent.
    pub fn default_samples(&self) -> usize {
        match self {
            ScenarioKind::Qleibniz { .. } | ScenarioKind::ShiftNilpotency { .. } => 100,
            ScenarioKind::Associativity { .. } => 500,
            ScenarioKind::SigmaStar { .. } | ScenarioKind::CharPCommutation { .. } => 200,
            ScenarioKind::Iset { .. } => 32,
            _ => 0,
        }
    }

    fn needs_q(&self) -> bool {
        matches!(
            self,
            ScenarioKind::Qleibniz { .. }
                | ScenarioKind::Gaussian { .. }
                | ScenarioKind::SigmaStar { .. }
        )
    }
}

fn identity() -> AutomorphismSpec {
    AutomorphismSpec::Identity
}

fn zero() -> DerivationSpec {
    DerivationSpec::Zero
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub ring: RingSpec,
    #[serde(default = "identity")]
    pub sigma: AutomorphismSpec,
    #[serde(default = "zero")]
    pub deriv: DerivationSpec,
    #[serde(default)]
    pub q: Option<Value>,
    pub scenario: ScenarioKind,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub bounds: BoundsConfig,
}

impl ScenarioConfig {
    pub fn samples(&self) -> usize {
        self.bounds
            .samples
            .unwrap_or_else(|| self.scenario.default_samples())
    }
}

/// A problem at a JSON path such as `scenarios[2].ring`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionedError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for PositionedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError {
    pub errors: Vec<PositionedError>,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.errors.iter().map(ToString::to_string).collect();
        write!(f, "{}", lines.join("\n"))
    }
}

impl std::error::Error for ConfigError {}

impl ConfigError {
    fn single(path: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            errors: vec![PositionedError {
                path: path.into(),
                message: message.into(),
            }],
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    schema_version: u32,
    scenarios: Vec<Value>,
}

pub(crate) fn core_message(e: &orelab_core::Error) -> String {
    match e {
        orelab_core::Error::Config(m) => m.clone(),
        other => other.to_string(),
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<Vec<ScenarioConfig>, ConfigError> {
    let doc: Document =
        serde_json::from_str(text).map_err(|e| ConfigError::single("$", e.to_string()))?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(ConfigError::single(
            "schema_version",
            format!(
                "unsupported schema version {} (expected {SCHEMA_VERSION})",
                doc.schema_version
            ),
        ));
    }
    let mut configs = Vec::new();
    let mut errors = Vec::new();
    for (i, raw) in doc.scenarios.into_iter().enumerate() {
        let path = format!("scenarios[{i}]");
        match serde_json::from_value::<ScenarioConfig>(raw) {
            Ok(c) => {
                errors.extend(validate(&c, &path));
                configs.push(c);
            }
            Err(e) => errors.push(PositionedError {
                path,
                message: e.to_string(),
            }),
        }
    }
    if errors.is_empty() {
        Ok(configs)
    } else {
        Err(ConfigError { errors })
    }
}

fn validate(c: &ScenarioConfig, path: &str) -> Vec<PositionedError> {
    let err = |field: &str, message: String| PositionedError {
        path: format!("{path}.{field}"),
        message,
    };
    let ring = match make_ring(&c.ring) {
        Ok(r) => r,
        Err(e) => return vec![err("ring", core_message(&e))],
    };
    let mut out = Vec::new();
    match Automorphism::new(&ring, &c.sigma) {
        Ok(sigma) => {
            if let Err(e) = Derivation::new(&sigma, &c.deriv) {
                out.push(err("deriv", core_message(&e)));
            }
        }
        Err(e) => out.push(err("sigma", core_message(&e))),
    }
    match &c.q {
        Some(q) => {
            if let Err(m) = check_q(&ring, q) {
                out.push(err("q", m));
            }
        }
        None if c.scenario.needs_q() => {
            out.push(err(
                "q",
                format!("scenario kind {} needs q", c.scenario.name()),
            ));
        }
        None => {}
    }
    if matches!(c.bounds.degree, Some(0)) || matches!(c.bounds.terms, Some(0)) {
        out.push(err("bounds", "Neumann bounds must be at least 1".into()));
    }
    let payload = |field: &str, v: &Value| {
        ring.from_json(v)
            .err()
            .map(|e| err(&format!("scenario.{field}"), core_message(&e)))
    };
    match &c.scenario {
        ScenarioKind::GeometricQi { a, .. } | ScenarioKind::ShiftNilpotency { a, .. } => {
            out.extend(payload("a", a))
        }
        ScenarioKind::CoefficientEquations { a, f, .. } => {
            out.extend(payload("a", a));
            if let Some(f) = f {
                match f.as_array() {
                    Some(items) => out.extend(items.iter().filter_map(|c| payload("f", c))),
                    None => out.push(err(
                        "scenario.f",
                        "expected an array of coefficients".into(),
                    )),
                }
            }
        }
        ScenarioKind::Iset {
            expect: Some(list), ..
        } => out.extend(list.iter().filter_map(|v| payload("expect", v))),
        ScenarioKind::RadicalOracle {
            expect_jacobson,
            expect_nilradical,
        } => {
            for (field, list) in [
                ("expect_jacobson", expect_jacobson),
                ("expect_nilradical", expect_nilradical),
            ] {
                out.extend(list.iter().flatten().filter_map(|v| payload(field, v)));
            }
            if ring.elements().is_err() {
                out.push(err(
                    "ring",
                    format!("{ring} is not finite and small enough to enumerate"),
                ));
            }
        }
        ScenarioKind::Gaussian { cases } => {
            if let Some(field) = ring.scalar_field() {
                for (i, case) in cases.iter().enumerate() {
                    if let Err(e) = field.from_json(&case.expected) {
                        out.push(err(
                            &format!("scenario.cases[{i}].expected"),
                            core_message(&e),
                        ));
                    }
                    if case.j < 0 || case.j > case.k {
                        out.push(err(
                            &format!("scenario.cases[{i}]"),
                            "needs 0 <= j <= k".into(),
                        ));
                    }
                }
            }
        }
        _ => {}
    }
    if let ScenarioKind::ShiftNilpotency { .. } = c.scenario {
        if !ring.is_direct_sum_shift() {
            out.push(err(
                "ring",
                "shift-nilpotency needs a direct_sum_shift ring".into(),
            ));
        }
    }
    out
}

fn check_q(ring: &Ring, q: &Value) -> Result<(), String> {
    let field = ring
        .scalar_field()
        .ok_or_else(|| format!("{ring} has no scalar field, so q is undefined"))?;
    let q = field.from_json(q).map_err(|e| core_message(&e))?;
    field
        .unit_inverse(&q)
        .map(|_| ())
        .ok_or_else(|| format!("q = {} is not a unit", field.display(&q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn doc(scenarios: Value) -> String {
        json!({ "schema_version": 1, "scenarios": scenarios }).to_string()
    }

    #[test]
    fn minimal_radical_oracle() {
        let text = doc(json!([{
            "name": "z4",
            "ring": {"modular_int": 4},
            "scenario": {"kind": "radical-oracle"}
        }]));
        let configs = parse_config(&text).unwrap();
        assert_eq!(configs.len(), 1);
        assert_eq!(configs[0].sigma, AutomorphismSpec::Identity);
        assert_eq!(configs[0].deriv, DerivationSpec::Zero);
    }

    #[test]
    fn non_prime_field_has_a_path() {
        let text = doc(json!([
            {"name": "ok", "ring": {"modular_int": 4}, "scenario": {"kind": "axioms"}},
            {"name": "bad", "ring": {"prime_field": 6}, "scenario": {"kind": "axioms"}}
        ]));
        let e = parse_config(&text).unwrap_err();
        assert_eq!(
            e.errors,
            vec![PositionedError {
                path: "scenarios[1].ring".into(),
                message: "6 is not prime".into()
            }]
        );
    }

    #[test]
    fn quantum_plane_qleibniz_is_valid() {
        let text = doc(json!([{
            "name": "plane",
            "ring": {"truncated_poly": {"base": {"prime_field": 7}, "n": 6}},
            "sigma": {"scale": 2},
            "deriv": "q_difference",
            "q": 2,
            "scenario": {"kind": "qleibniz"}
        }]));
        let c = &parse_config(&text).unwrap()[0];
        assert_eq!(c.scenario, ScenarioKind::Qleibniz { max_k: 10 });
        assert_eq!(c.samples(), 100);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = doc(
            json!([{"name": "x", "ring": {"modular_int": 4}, "scenario": {"kind": "axioms"}, "extra": 1}]),
        );
        assert!(parse_config(&text).unwrap_err().errors[0]
            .message
            .contains("unknown field"));
        let text = doc(
            json!([{"name": "x", "ring": {"modular_int": 4}, "scenario": {"kind": "axioms", "m": 1}}]),
        );
        assert!(parse_config(&text).is_err());
        let text = doc(
            json!([{"name": "x", "ring": {"modular_int": 4}, "scenario": {"kind": "nonsense"}}]),
        );
        assert!(parse_config(&text).is_err());
    }

    #[test]
    fn syntax_and_version_errors() {
        assert_eq!(parse_config("{").unwrap_err().errors[0].path, "$");
        let text = json!({"schema_version": 9, "scenarios": []}).to_string();
        assert_eq!(
            parse_config(&text).unwrap_err().errors[0].path,
            "schema_version"
        );
        assert!(parse_config(&json!({"scenarios": []}).to_string()).is_err());
    }

    #[test]
    fn map_and_payload_errors() {
        let text = doc(json!([
            {"name": "a", "ring": {"modular_int": 4}, "sigma": {"frobenius": 1}, "scenario": {"kind": "axioms"}},
            {"name": "b", "ring": {"modular_int": 4}, "q": 2, "scenario": {"kind": "axioms"}},
            {"name": "c", "ring": {"prime_field": 7}, "scenario": {"kind": "sigma-star"}},
            {"name": "d", "ring": {"modular_int": 4}, "scenario": {"kind": "geometric-qi", "a": [1, 2], "k": 1}}
        ]));
        let paths: Vec<String> = parse_config(&text)
            .unwrap_err()
            .errors
            .into_iter()
            .map(|e| e.path)
            .collect();
        assert_eq!(
            paths,
            [
                "scenarios[0].sigma",
                "scenarios[1].q",
                "scenarios[2].q",
                "scenarios[3].scenario.a"
            ]
        );
    }

    #[test]
    fn empty_list_is_valid() {
        assert!(parse_config(&doc(json!([]))).unwrap().is_empty());
    }
}
