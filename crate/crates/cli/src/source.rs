//! Resolving `--model` / `--builtin` into a [`TorusModel`].

use std::path::Path;

use equiloc::{builtin_cpn, builtin_gaussian, builtin_s2, load_model, product, ModelError, Rational, TorusModel};

#[derive(Debug)]
pub enum SourceError {
    Io(String, std::io::Error),
    Model(ModelError),
    Spec(String),
}

impl std::fmt::Display for SourceError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SourceError::Io(path, e) => write!(f, "cannot read {path}: {e}"),
            SourceError::Model(e) => write!(f, "invalid model: {e}"),
            SourceError::Spec(msg) => f.write_str(msg),
        }
    }
}

impl From<ModelError> for SourceError {
    fn from(e: ModelError) -> Self {
        SourceError::Model(e)
    }
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, SourceError> {
    std::fs::read(path).map_err(|e| SourceError::Io(path.display().to_string(), e))
}

pub fn from_file(path: &Path) -> Result<TorusModel, SourceError> {
    Ok(load_model(&read_file(path)?)?)
}

/// `s2`, `cpn` (= `cpn:1`), `cpn:<n>`, `gaussian`, or `product:<a>,<b>,...`
/// whose factors are any of the non-product forms.
pub fn from_builtin(spec: &str) -> Result<TorusModel, SourceError> {
    if let Some(factors) = spec.strip_prefix("product:") {
        let mut parts = factors.split(',');
        let first = parts.next().filter(|s| !s.is_empty()).ok_or_else(|| bad(spec))?;
        let mut acc = single(first)?;
        for part in parts {
            acc = product(&acc, &single(part)?)?;
        }
        return Ok(acc);
    }
    single(spec)
}

fn single(spec: &str) -> Result<TorusModel, SourceError> {
    match spec {
        "s2" => Ok(builtin_s2(&Rational::from_integer(1.into()))?),
        "gaussian" => Ok(builtin_gaussian()),
        "cpn" => Ok(builtin_cpn(1)?),
        _ => {
            let n = spec
                .strip_prefix("cpn:")
                .and_then(|n| n.parse::<usize>().ok())
                .ok_or_else(|| bad(spec))?;
            Ok(builtin_cpn(n)?)
        }
    }
}

fn bad(spec: &str) -> SourceError {
    SourceError::Spec(format!(
        "unknown builtin {spec:?}; expected s2, cpn[:n], gaussian or product:<a>,<b>,..."
    ))
}
