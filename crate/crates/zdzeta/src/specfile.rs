//! Loading and saving action specs as JSON.
//!
//! Schema: { "d": int, "suspended": bool, "components": [ ... ] } where a
//! component is either {"kind":"principal","p":int,"mult":int} or
//! {"kind":"curve","p":int,"images":[...],"inverted":[...],"mult":int,
//! "defining_poly": "..."} with polynomials in ascending-coefficient text
//! form. Unknown fields are rejected so a typo cannot silently change the
//! action.

use crate::action::{ActionSpec, Component, CurveComponent};
use crate::error::{Error, Result};
use crate::funcfield::{PolyFp, RatFunc};
use crate::multipoly::MultiPoly;
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    d: usize,
    #[serde(default)]
    suspended: bool,
    components: Vec<ComponentFile>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentFile {
    kind: String,
    p: u64,
    #[serde(default = "default_mult")]
    mult: u32,
    images: Option<Vec<String>>,
    inverted: Option<Vec<String>>,
    defining_poly: Option<String>,
}

fn default_mult() -> u32 {
    1
}

/// Parse a spec from JSON text. Syntax errors carry line and column.
pub fn spec_from_json(text: &str) -> Result<ActionSpec> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| {
        Error::SpecFile(format!("line {}, column {}: {}", e.line(), e.column(), e))
    })?;
    let base_dim = if file.suspended { file.d.saturating_sub(1) } else { file.d };
    let mut components = Vec::new();
    for (i, c) in file.components.iter().enumerate() {
        let at = |msg: String| Error::SpecFile(format!("component {i}: {msg}"));
        match c.kind.as_str() {
            "principal" => {
                for (field, present) in [
                    ("images", c.images.is_some()),
                    ("inverted", c.inverted.is_some()),
                    ("defining_poly", c.defining_poly.is_some()),
                ] {
                    if present {
                        return Err(at(format!("field {field:?} not allowed for principal")));
                    }
                }
                components.push(Component::Principal { p: c.p, mult: c.mult });
            }
            "curve" => {
                let images = c
                    .images
                    .as_ref()
                    .ok_or_else(|| at("curve needs \"images\"".into()))?
                    .iter()
                    .map(|s| RatFunc::parse(c.p, s))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| at(e.to_string()))?;
                let inverted = c
                    .inverted
                    .as_deref()
                    .unwrap_or_default()
                    .iter()
                    .map(|s| PolyFp::parse(c.p, s))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| at(e.to_string()))?;
                let defining = c
                    .defining_poly
                    .as_ref()
                    .map(|s| MultiPoly::parse(c.p, base_dim, s))
                    .transpose()
                    .map_err(|e| at(e.to_string()))?;
                let curve = CurveComponent::new(c.p, images, inverted, c.mult, defining)
                    .map_err(|e| at(e.to_string()))?;
                components.push(Component::Curve(curve));
            }
            other => return Err(at(format!("unknown component kind {other:?}"))),
        }
    }
    ActionSpec::new(file.d, file.suspended, components)
}

pub fn load_spec(path: &std::path::Path) -> Result<ActionSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::SpecFile(format!("{}: {e}", path.display())))?;
    spec_from_json(&text).map_err(|e| match e {
        Error::SpecFile(msg) => Error::SpecFile(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// Serialize a spec back to the file schema.
pub fn spec_to_json(spec: &ActionSpec) -> Value {
    let components: Vec<Value> = spec
        .components()
        .iter()
        .map(|c| match c {
            Component::Principal { p, mult } => {
                json!({ "kind": "principal", "p": p, "mult": mult })
            }
            Component::Curve(curve) => {
                let mut v = json!({
                    "kind": "curve",
                    "p": curve.characteristic(),
                    "images": curve.images().iter().map(|f| f.to_coeff_string()).collect::<Vec<_>>(),
                    "inverted": curve.inverted().iter().map(|g| g.to_coeff_string()).collect::<Vec<_>>(),
                    "mult": curve.mult(),
                });
                if let Some(f) = curve.defining_poly() {
                    v["defining_poly"] = Value::String(f.to_string());
                }
                v
            }
        })
        .collect();
    json!({ "d": spec.dim(), "suspended": spec.suspended(), "components": components })
}
