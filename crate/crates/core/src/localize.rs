//! Fixed-point localization.
//!
//! `∫_M α = Σ_F ∫_F ι_F^* α / e^T(ν_F)`. Each summand is a
//! [`LinFactoredRational`]; the sum must cancel to a polynomial in
//! `H_T(pt) = ℚ[t]`, and anything else is reported as
//! [`LocalizeError::NonPolynomialResult`]: no global equivariant class has
//! the supplied restrictions.

use std::collections::BTreeMap;

use num_traits::{One, ToPrimitive};
use serde::Deserialize;
use thiserror::Error;

use crate::charclass::{component_contribution, euler_class_at, ClassError, TruncatedClass};
use crate::exactalg::{parse_polynomial, AlgebraError, LinFactoredRational, LinearForm, Polynomial, Rational};
use crate::model::{FixedLocus, ModelError, TorusModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizeError {
    #[error("fixed-point contributions do not cancel to a polynomial; remainder = {remainder}")]
    NonPolynomialResult { remainder: LinFactoredRational },
    #[error("top Duistermaat-Heckman coefficient is not constant: {entry}")]
    NonConstantVolume { entry: Polynomial },
    #[error("operation requires isolated fixed points; {component:?} has positive dimension")]
    RequiresIsolatedPoints { component: String },
    #[error("no class given for component {component:?}")]
    MissingClass { component: String },
    #[error("class given for unknown component {component:?}")]
    UnknownComponent { component: String },
    #[error("localization needs a compact model; use the closed-form path for noncompact models")]
    Noncompact,
    #[error("closed form needs zero moment at every fixed point; {component:?} has moment {moment}")]
    NonzeroMoment { component: String, moment: LinearForm },
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// What to integrate, given by its restriction to each fixed component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivariantIntegrand {
    /// `ω̄^k = (ω + μ)^k`; on an isolated point this restricts to `μ|_f^k`.
    PowerOfOmegaBar(u32),
    /// Restriction per component name. Points take a single coefficient.
    Explicit(BTreeMap<String, TruncatedClass>),
}

impl EquivariantIntegrand {
    /// Explicit integrand from one polynomial per isolated point.
    pub fn from_point_values<I, S>(values: I) -> Self
    where
        I: IntoIterator<Item = (S, Polynomial)>,
        S: Into<String>,
    {
        EquivariantIntegrand::Explicit(
            values
                .into_iter()
                .map(|(name, p)| (name.into(), TruncatedClass::new(vec![p])))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizationResult {
    pub value: Polynomial,
    /// Fully cancelled summand for each component, in model order.
    pub contributions: Vec<(String, LinFactoredRational)>,
}

fn restriction(locus: &FixedLocus, integrand: &EquivariantIntegrand) -> Result<TruncatedClass, LocalizeError> {
    match integrand {
        EquivariantIntegrand::PowerOfOmegaBar(k) => match locus {
            FixedLocus::Point(p) => Ok(TruncatedClass::new(vec![p.moment.to_polynomial().pow(*k)])),
            FixedLocus::Component(c) => Err(LocalizeError::RequiresIsolatedPoints {
                component: c.name.clone(),
            }),
        },
        EquivariantIntegrand::Explicit(map) => {
            map.get(locus.name())
                .cloned()
                .ok_or_else(|| LocalizeError::MissingClass {
                    component: locus.name().to_string(),
                })
        }
    }
}

/// Sums fixed-point contributions with `rat_add` in the given order.
pub fn sum_contributions<'a, I>(rank: usize, terms: I) -> Result<LinFactoredRational, AlgebraError>
where
    I: IntoIterator<Item = &'a LinFactoredRational>,
{
    terms
        .into_iter()
        .try_fold(LinFactoredRational::zero(rank), |acc, t| acc.try_add(t))
}

/// Localizes `integrand` over the fixed set of `m`.
pub fn localize(m: &TorusModel, integrand: &EquivariantIntegrand) -> Result<LocalizationResult, LocalizeError> {
    if m.is_noncompact() {
        return Err(LocalizeError::Noncompact);
    }
    if let EquivariantIntegrand::Explicit(map) = integrand {
        if let Some(name) = map.keys().find(|n| m.component(n).is_none()) {
            return Err(LocalizeError::UnknownComponent {
                component: name.clone(),
            });
        }
    }
    let contributions = m
        .components()
        .iter()
        .map(|locus| {
            let restricted = restriction(locus, integrand)?;
            let value = component_contribution(&locus.to_component(), &restricted)?;
            Ok((locus.name().to_string(), value))
        })
        .collect::<Result<Vec<_>, LocalizeError>>()?;
    let total = sum_contributions(m.rank(), contributions.iter().map(|(_, v)| v))?;
    match total.into_polynomial() {
        Ok(value) => Ok(LocalizationResult { value, contributions }),
        Err(remainder) => Err(LocalizeError::NonPolynomialResult { remainder }),
    }
}

fn require_isolated(m: &TorusModel) -> Result<(), LocalizeError> {
    match m.components().iter().find(|c| c.dim_c() > 0) {
        Some(c) => Err(LocalizeError::RequiresIsolatedPoints {
            component: c.name().to_string(),
        }),
        None => Ok(()),
    }
}

/// `∫_M (ω + μ)^k = Σ_f μ|_f^k / e_f`. Zero for `k < dimC`, homogeneous of
/// degree `k - dimC` otherwise.
pub fn power_integral(m: &TorusModel, k: u32) -> Result<Polynomial, LocalizeError> {
    require_isolated(m)?;
    Ok(localize(m, &EquivariantIntegrand::PowerOfOmegaBar(k))?.value)
}

fn factorial(k: u32) -> Rational {
    (1..=k).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i.into()))
}

/// Taylor coefficients of `Σ_f exp(μ|_f) / e_f`: entry `k` is
/// `Σ_f μ|_f^k / (k! e_f)`. Entry `dimC` is the symplectic volume.
pub fn dh_series(m: &TorusModel, order: u32) -> Result<Vec<Polynomial>, LocalizeError> {
    require_isolated(m)?;
    (0..=order)
        .map(|k| Ok(power_integral(m, k)?.scale(&factorial(k).recip())))
        .collect()
}

/// `∫_M ω^n / n!`.
pub fn dh_volume(m: &TorusModel) -> Result<Rational, LocalizeError> {
    let n = m.dim_c() as u32;
    let entry = power_integral(m, n)?.scale(&factorial(n).recip());
    entry.as_constant().ok_or(LocalizeError::NonConstantVolume { entry })
}

/// `Σ_f exp(μ|_f) / e_f` for models whose moments all vanish, where the
/// exponentials are 1. Intended for noncompact models such as the Gaussian
/// plane, so the result is not required to be polynomial.
pub fn dh_closed_form(m: &TorusModel) -> Result<LinFactoredRational, LocalizeError> {
    require_isolated(m)?;
    let points = m.points().expect("isolated");
    let mut terms = Vec::with_capacity(points.len());
    for p in points {
        if !p.moment.is_zero() {
            return Err(LocalizeError::NonzeroMoment {
                component: p.name.clone(),
                moment: p.moment.clone(),
            });
        }
        terms.push(LinFactoredRational::over_product(
            Polynomial::one(m.rank()),
            &p.weights,
        )?);
    }
    Ok(sum_contributions(m.rank(), &terms)?)
}

/// `∫_M e^T(TM)`. Every summand is `e_f / e_f = 1`, so this counts fixed
/// points.
pub fn euler_characteristic(m: &TorusModel) -> Result<i64, LocalizeError> {
    require_isolated(m)?;
    let points = m.points().expect("isolated");
    let integrand = EquivariantIntegrand::from_point_values(points.iter().map(|p| (p.name.clone(), euler_class_at(p))));
    let result = localize(m, &integrand)?;
    debug_assert!(result.contributions.iter().all(|(_, c)| is_unit(c)));
    let value = result.value;
    let c = value.as_constant().ok_or_else(|| LocalizeError::NonPolynomialResult {
        remainder: LinFactoredRational::from_polynomial(value.clone()),
    })?;
    Ok(c.to_integer().to_i64().expect("fixed-point count fits in i64"))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClassFile {
    classes: BTreeMap<String, RawClass>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawClass {
    Point(String),
    Series(Vec<String>),
}

/// Reads a class file: `{"classes": {"<name>": "<polynomial>" | ["c0", "c1", ...]}}`,
/// one entry per component. Polynomials use the canonical text format; a
/// list gives the coefficients of `h^0..h^m` on a component of dimension `m`.
pub fn load_class_file(text: &[u8], m: &TorusModel) -> Result<EquivariantIntegrand, ModelError> {
    let text = std::str::from_utf8(text).map_err(|e| ModelError::Parse {
        line: 0,
        column: 0,
        message: format!("invalid UTF-8: {e}"),
    })?;
    let raw: RawClassFile = serde_json::from_str(text).map_err(|e| ModelError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let parse = |path: String, s: &str| {
        parse_polynomial(s, m.rank()).map_err(|e| ModelError::Field {
            path,
            message: e.to_string(),
        })
    };
    let mut map = BTreeMap::new();
    for (name, class) in raw.classes {
        let coefficients = match class {
            RawClass::Point(s) => vec![parse(format!("classes.{name}"), &s)?],
            RawClass::Series(list) => {
                if list.is_empty() {
                    return Err(ModelError::Field {
                        path: format!("classes.{name}"),
                        message: "empty coefficient list".into(),
                    });
                }
                list.iter()
                    .enumerate()
                    .map(|(k, s)| parse(format!("classes.{name}[{k}]"), s))
                    .collect::<Result<_, _>>()?
            }
        };
        map.insert(name, TruncatedClass::new(coefficients));
    }
    Ok(EquivariantIntegrand::Explicit(map))
}

/// True iff `p` is zero or every term has total degree `d`.
pub fn is_homogeneous_of_degree(p: &Polynomial, d: u32) -> bool {
    p.is_zero() || (p.is_homogeneous() && p.degree() == Some(d))
}

fn is_unit(c: &LinFactoredRational) -> bool {
    c.as_polynomial()
        .and_then(Polynomial::as_constant)
        .is_some_and(|v| v.is_one())
}
