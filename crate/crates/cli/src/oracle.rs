//! `orelab oracle`: brute-force `J(R)`, `N(R)` and the center of a finite ring.

use orelab_core::ring::{center, jacobson_radical, make_ring, nilradical, Elem, Ring, RingSpec};
use serde_json::{json, Value};

use crate::config::core_message;
use crate::report::Format;

/// Parses a ring spec given as JSON text, such as `{"modular_int": 4}`.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec, String> {
    serde_json::from_str(text).map_err(|e| format!("invalid ring spec: {e}"))
}

fn set<'a>(ring: &Ring, elems: impl IntoIterator<Item = &'a Elem>) -> (String, Vec<Value>) {
    let elems: Vec<&Elem> = elems.into_iter().collect();
    let shown: Vec<String> = elems.iter().map(|e| ring.display(e)).collect();
    (
        format!("{{{}}}", shown.join(", ")),
        elems.iter().map(|e| ring.to_json(e)).collect(),
    )
}

/// Renders the three sets; errors are configuration errors.
pub fn oracle_report(spec: &RingSpec, format: Format) -> Result<String, String> {
    let ring = make_ring(spec).map_err(|e| core_message(&e))?;
    let j = jacobson_radical(&ring).map_err(|e| core_message(&e))?;
    let n = nilradical(&ring).map_err(|e| core_message(&e))?;
    let z = center(&ring).map_err(|e| core_message(&e))?;
    let size = ring.elements().map_err(|e| core_message(&e))?.len();
    let (j_text, j_json) = set(&ring, j.elements());
    let (n_text, n_json) = set(&ring, n.elements());
    let (z_text, z_json) = set(&ring, &z);
    Ok(match format {
        Format::Human => format!(
            "ring: {ring}\norder: {size}\nJ(R) = {j_text}\nN(R) = {n_text}\ncenter = {z_text}\n"
        ),
        Format::Json => {
            let doc = json!({
                "ring": spec,
                "order": size,
                "jacobson_radical": j_json,
                "nilradical": n_json,
                "center": z_json,
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&doc).expect("serializable")
            )
        }
    })
}
