//! Inline JSON state descriptions accepted by `su2w report`.
//!
//! Either a gallery family,
//! `{"family": "cat" | "phase_averaged" | "superposition" | "intelligent" | "coherent", ...}`,
//! or an explicit density matrix `[[{"re": .., "im": ..}, ..], ..]`
//! (also accepted as `{"matrix": [[..]]}`), rows indexed by `m` ascending.

use serde_json::Value;
use su2w_core::{
    cat_state, coherent_state, intelligent_state, partial_superposition, phase_averaged_equatorial, CMatrix,
    DensityOperator, SphereDirection, SpinJ, C64,
};

use crate::CliError;

/// Parameters that may come from flags when the JSON leaves them out.
#[derive(Clone, Copy, Debug)]
pub struct FamilyDefaults {
    pub eta: f64,
    pub alpha_sq: f64,
}

pub fn parse_state(text: &str, j: SpinJ, defaults: FamilyDefaults) -> Result<DensityOperator, CliError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("--state is not valid JSON: {e}")))?;
    match &value {
        Value::Array(_) => parse_matrix(&value, j),
        Value::Object(obj) => {
            if let Some(m) = obj.get("matrix") {
                return parse_matrix(m, j);
            }
            let family = obj
                .get("family")
                .and_then(Value::as_str)
                .ok_or_else(|| CliError::Invalid("state object needs a \"family\" string or a \"matrix\"".into()))?;
            let num = |key: &str, default: Option<f64>| -> Result<f64, CliError> {
                match obj.get(key) {
                    Some(v) => v
                        .as_f64()
                        .ok_or_else(|| CliError::Invalid(format!("\"{key}\" must be a number"))),
                    None => default.ok_or_else(|| CliError::Invalid(format!("family {family} needs \"{key}\""))),
                }
            };
            match family {
                "cat" => Ok(cat_state(j)?.to_density()),
                "phase_averaged" => Ok(phase_averaged_equatorial(j)),
                "superposition" => {
                    let a2 = num("alpha_sq", Some(defaults.alpha_sq))?;
                    if !(0.0..=1.0).contains(&a2) {
                        return Err(CliError::Invalid(format!("alpha_sq must lie in [0, 1], got {a2}")));
                    }
                    let alpha = C64::new(a2.sqrt(), 0.0);
                    let beta = C64::new((1.0 - a2).sqrt(), 0.0);
                    Ok(partial_superposition(j, alpha, beta)?.to_density())
                }
                "intelligent" => Ok(intelligent_state(j, num("eta", Some(defaults.eta))?)?.density()),
                "coherent" => {
                    let omega = SphereDirection::new(num("theta", None)?, num("phi", Some(0.0))?)?;
                    Ok(coherent_state(j, omega).to_density())
                }
                other => Err(CliError::Invalid(format!("unknown state family {other:?}"))),
            }
        }
        _ => Err(CliError::Invalid("--state must be a JSON object or matrix".into())),
    }
}

fn parse_matrix(value: &Value, j: SpinJ) -> Result<DensityOperator, CliError> {
    let rows = value
        .as_array()
        .ok_or_else(|| CliError::Invalid("matrix must be an array of rows".into()))?;
    let d = rows.len();
    if d != j.dim() {
        return Err(CliError::Invalid(format!(
            "matrix has {d} rows but j = {j} needs {}",
            j.dim()
        )));
    }
    let mut m = CMatrix::zeros(d, d);
    for (r, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|x| x.len() == d)
            .ok_or_else(|| CliError::Invalid(format!("matrix row {r} must have {d} entries")))?;
        for (c, entry) in row.iter().enumerate() {
            m[(r, c)] = parse_complex(entry).ok_or_else(|| {
                CliError::Invalid(format!("matrix entry ({r}, {c}) must be {{\"re\": x, \"im\": y}}"))
            })?;
        }
    }
    Ok(DensityOperator::new(j, m)?)
}

fn parse_complex(v: &Value) -> Option<C64> {
    match v {
        Value::Number(n) => Some(C64::new(n.as_f64()?, 0.0)),
        Value::Object(o) => {
            let re = o.get("re").map_or(Some(0.0), Value::as_f64)?;
            let im = o.get("im").map_or(Some(0.0), Value::as_f64)?;
            Some(C64::new(re, im))
        }
        _ => None,
    }
}
