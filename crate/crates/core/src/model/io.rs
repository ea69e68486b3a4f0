//! JSON model files.
//!
//! ```json
//! {"rank":1,"dimC":1,"components":[
//!   {"name":"N","moment":["1"],"weights":[["1"]]},
//!   {"name":"S","moment":["-1"],"weights":[["-1"]]}]}
//! ```
//!
//! Rationals are strings (`"-3/4"`). Positive-dimensional components use
//! `normal_weights` (`{"beta": [...], "c1_multiple": d}`) and
//! `generator_integral` instead of `weights`.

use serde::{Deserialize, Serialize};

use super::{FixedComponent, FixedLocus, FixedPoint, ModelError, NormalWeight, TorusModel};
use crate::exactalg::{format_rational, parse_rational, LinearForm, Rational};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    rank: usize,
    #[serde(rename = "dimC")]
    dim_c: usize,
    #[serde(default, skip_serializing_if = "is_false")]
    noncompact: bool,
    components: Vec<RawComponent>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    name: String,
    #[serde(rename = "dimC", default, skip_serializing_if = "is_zero")]
    dim_c: usize,
    moment: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normal_weights: Option<Vec<RawNormalWeight>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generator_integral: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNormalWeight {
    beta: Vec<String>,
    c1_multiple: i64,
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

fn field_err(path: String, message: impl Into<String>) -> ModelError {
    ModelError::Field {
        path,
        message: message.into(),
    }
}

fn rational(path: &str, s: &str) -> Result<Rational, ModelError> {
    parse_rational(s).map_err(|e| field_err(path.to_string(), e.to_string()))
}

fn form(path: String, raw: &[String]) -> Result<LinearForm, ModelError> {
    raw.iter()
        .enumerate()
        .map(|(i, s)| rational(&format!("{path}[{i}]"), s))
        .collect::<Result<Vec<_>, _>>()
        .map(LinearForm::new)
}

fn component(idx: usize, raw: RawComponent) -> Result<FixedLocus, ModelError> {
    let base = format!("components[{idx}] ({:?})", raw.name);
    let moment = form(format!("{base}.moment"), &raw.moment)?;
    if raw.dim_c == 0 {
        if raw.normal_weights.is_some() || raw.generator_integral.is_some() {
            return Err(field_err(
                base,
                "a point (dimC 0) takes \"weights\", not \"normal_weights\"",
            ));
        }
        let raw_weights = raw
            .weights
            .ok_or_else(|| field_err(base.clone(), "missing \"weights\""))?;
        let weights = raw_weights
            .iter()
            .enumerate()
            .map(|(j, w)| form(format!("{base}.weights[{j}]"), w))
            .collect::<Result<_, _>>()?;
        Ok(FixedLocus::Point(FixedPoint {
            name: raw.name,
            moment,
            weights,
        }))
    } else {
        if raw.weights.is_some() {
            return Err(field_err(
                base,
                "a positive-dimensional component takes \"normal_weights\", not \"weights\"",
            ));
        }
        let raw_normal = raw
            .normal_weights
            .ok_or_else(|| field_err(base.clone(), "missing \"normal_weights\""))?;
        let normal_weights = raw_normal
            .iter()
            .enumerate()
            .map(|(j, w)| {
                Ok(NormalWeight {
                    beta: form(format!("{base}.normal_weights[{j}].beta"), &w.beta)?,
                    c1_multiple: w.c1_multiple,
                })
            })
            .collect::<Result<_, ModelError>>()?;
        let gi = raw
            .generator_integral
            .ok_or_else(|| field_err(base.clone(), "missing \"generator_integral\""))?;
        let generator_integral = rational(&format!("{base}.generator_integral"), &gi)?;
        Ok(FixedLocus::Component(FixedComponent {
            name: raw.name,
            dim_c: raw.dim_c,
            moment,
            normal_weights,
            generator_integral,
        }))
    }
}

/// Parses and validates a model file.
pub fn load_model(text: &[u8]) -> Result<TorusModel, ModelError> {
    let text = std::str::from_utf8(text).map_err(|e| ModelError::Parse {
        line: 0,
        column: 0,
        message: format!("invalid UTF-8: {e}"),
    })?;
    let raw: RawModel = serde_json::from_str(text).map_err(|e| ModelError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let components = raw
        .components
        .into_iter()
        .enumerate()
        .map(|(i, c)| component(i, c))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TorusModel::new(raw.rank, raw.dim_c, components)?.with_noncompact(raw.noncompact))
}

fn raw_form(f: &LinearForm) -> Vec<String> {
    f.coefficients().iter().map(format_rational).collect()
}

/// Serializes a model in the format read by [`load_model`].
pub fn render_model(m: &TorusModel) -> String {
    let components = m
        .components()
        .iter()
        .map(|c| match c {
            FixedLocus::Point(p) => RawComponent {
                name: p.name.clone(),
                dim_c: 0,
                moment: raw_form(&p.moment),
                weights: Some(p.weights.iter().map(raw_form).collect()),
                normal_weights: None,
                generator_integral: None,
            },
            FixedLocus::Component(fc) => RawComponent {
                name: fc.name.clone(),
                dim_c: fc.dim_c,
                moment: raw_form(&fc.moment),
                weights: None,
                normal_weights: Some(
                    fc.normal_weights
                        .iter()
                        .map(|w| RawNormalWeight {
                            beta: raw_form(&w.beta),
                            c1_multiple: w.c1_multiple,
                        })
                        .collect(),
                ),
                generator_integral: Some(format_rational(&fc.generator_integral)),
            },
        })
        .collect();
    let raw = RawModel {
        rank: m.rank(),
        dim_c: m.dim_c(),
        noncompact: m.is_noncompact(),
        components,
    };
    serde_json::to_string(&raw).expect("model serializes")
}
