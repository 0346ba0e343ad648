//! Instance files: a single JSON document with the fields `p`, `e`,
//! `modulus` (required exactly when `e > 1`), `phi` (the coefficients
//! `kappa_1..kappa_r` as rational-function strings; the degree-0
//! coefficient `T` is implicit), and `points`.

use crate::Failure;
use drinrel_core::drinfeld::DrinfeldModule;
use drinrel_core::field::{FieldDesc, Fq};
use drinrel_core::newton::check_points;
use drinrel_core::parse::{parse_modulus, parse_ratfunc};
use drinrel_core::ratfunc::RatFunc;
use serde::Deserialize;
use std::path::Path;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    p: u64,
    e: u32,
    #[serde(default)]
    modulus: Option<String>,
    phi: Vec<String>,
    points: Vec<String>,
}

/// A validated instance.
pub struct Instance {
    pub field: Fq,
    pub module: DrinfeldModule,
    pub points: Vec<RatFunc>,
    pub file: String,
    pub phi_strings: Vec<String>,
    pub point_strings: Vec<String>,
}

pub fn load(path: &Path) -> Result<Instance, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let raw: InstanceFile = serde_json::from_str(&text).map_err(|e| {
        Failure::Input(format!(
            "invalid instance file {} at line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })?;
    let modulus = match (&raw.modulus, raw.e) {
        (Some(s), _) => Some(
            parse_modulus(raw.p, s)
                .map_err(|e| Failure::Input(format!("modulus: {e}")))?,
        ),
        (None, _) => None,
    };
    let field = Fq::new(FieldDesc { p: raw.p, e: raw.e, modulus })
        .map_err(|e| Failure::Input(e.to_string()))?;
    let kappa = raw
        .phi
        .iter()
        .map(|s| {
            parse_ratfunc(&field, s).map_err(|e| Failure::Input(format!("phi entry {s:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let module =
        DrinfeldModule::new(&field, kappa).map_err(|e| Failure::Input(e.to_string()))?;
    let points = raw
        .points
        .iter()
        .map(|s| {
            parse_ratfunc(&field, s)
                .map_err(|e| Failure::Input(format!("point entry {s:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    check_points(&points).map_err(|e| Failure::Input(e.to_string()))?;
    Ok(Instance {
        field,
        module,
        points,
        file: path.display().to_string(),
        phi_strings: raw.phi,
        point_strings: raw.points,
    })
}
