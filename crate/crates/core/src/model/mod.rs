//! Hamiltonian torus actions described by their fixed-point data.
//!
//! A [`TorusModel`] is the whole manifold as far as localization is
//! concerned: the torus rank, the complex dimension and one entry per
//! connected component of the fixed set. Isolated points carry a moment
//! value and `dimC` tangent weights; positive-dimensional components carry
//! normal weights together with the first Chern class of each normal line,
//! expressed as an integer multiple of a single degree-2 generator `h`.

mod builtin;
mod io;

pub use builtin::{builtin_cpn, builtin_gaussian, builtin_s2, product, subtorus_restrict};
pub use io::{load_model, render_model};

use std::collections::BTreeSet;

use thiserror::Error;

use crate::exactalg::{LinearForm, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("torus rank must be positive")]
    ZeroRank,
    #[error("model has no fixed components")]
    NoComponents,
    #[error("duplicate component name {0:?}")]
    DuplicateName(String),
    #[error("component {component:?}: {field} has length {found}, expected rank {expected}")]
    RankMismatch {
        component: String,
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("component {component:?}: weight {index} is zero")]
    ZeroWeight { component: String, index: usize },
    #[error("component {component:?}: dimension mismatch, {found} (expected {expected})")]
    DimensionMismatch {
        component: String,
        expected: usize,
        found: usize,
    },
    #[error("scale must be nonzero")]
    ZeroScale,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot pair positive-dimensional components {left:?} and {right:?}")]
    UnsupportedComponentProduct { left: String, right: String },
    #[error("component {component:?}: weight {index} collapses to zero under the subtorus map")]
    WeightCollapsesToZero { component: String, index: usize },
    #[error("subtorus map has shape {rows}x{cols}, expected {expected_rows} rows")]
    MapShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Field { path: String, message: String },
}

/// An isolated fixed point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedPoint {
    pub name: String,
    /// Moment map value μ|_f as a linear form on the Lie algebra.
    pub moment: LinearForm,
    /// Tangent weights; their product is the equivariant Euler class.
    pub weights: Vec<LinearForm>,
}

/// One line `ν_j` of the normal bundle of a fixed component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalWeight {
    pub beta: LinearForm,
    /// `c1(ν_j) = c1_multiple · h`.
    pub c1_multiple: i64,
}

/// A positive-dimensional fixed component whose cohomology is generated by
/// one degree-2 class `h` with `h^{dim_c + 1} = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedComponent {
    pub name: String,
    pub dim_c: usize,
    pub moment: LinearForm,
    pub normal_weights: Vec<NormalWeight>,
    /// `∫_F h^{dim_c}`.
    pub generator_integral: Rational,
}

impl From<&FixedPoint> for FixedComponent {
    /// The degenerate `dim_c = 0` component.
    fn from(p: &FixedPoint) -> Self {
        FixedComponent {
            name: p.name.clone(),
            dim_c: 0,
            moment: p.moment.clone(),
            normal_weights: p
                .weights
                .iter()
                .map(|w| NormalWeight {
                    beta: w.clone(),
                    c1_multiple: 0,
                })
                .collect(),
            generator_integral: Rational::from_integer(1.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FixedLocus {
    Point(FixedPoint),
    Component(FixedComponent),
}

impl FixedLocus {
    pub fn name(&self) -> &str {
        match self {
            FixedLocus::Point(p) => &p.name,
            FixedLocus::Component(c) => &c.name,
        }
    }

    pub fn moment(&self) -> &LinearForm {
        match self {
            FixedLocus::Point(p) => &p.moment,
            FixedLocus::Component(c) => &c.moment,
        }
    }

    pub fn dim_c(&self) -> usize {
        match self {
            FixedLocus::Point(_) => 0,
            FixedLocus::Component(c) => c.dim_c,
        }
    }

    pub fn as_point(&self) -> Option<&FixedPoint> {
        match self {
            FixedLocus::Point(p) => Some(p),
            FixedLocus::Component(_) => None,
        }
    }

    /// Normal weights; for a point these are its tangent weights.
    pub fn normal_forms(&self) -> Vec<&LinearForm> {
        match self {
            FixedLocus::Point(p) => p.weights.iter().collect(),
            FixedLocus::Component(c) => c.normal_weights.iter().map(|w| &w.beta).collect(),
        }
    }

    pub fn to_component(&self) -> FixedComponent {
        match self {
            FixedLocus::Point(p) => FixedComponent::from(p),
            FixedLocus::Component(c) => c.clone(),
        }
    }

    fn map_forms(&self, mut f: impl FnMut(&LinearForm) -> LinearForm) -> FixedLocus {
        match self {
            FixedLocus::Point(p) => FixedLocus::Point(FixedPoint {
                name: p.name.clone(),
                moment: f(&p.moment),
                weights: p.weights.iter().map(&mut f).collect(),
            }),
            FixedLocus::Component(c) => FixedLocus::Component(FixedComponent {
                name: c.name.clone(),
                dim_c: c.dim_c,
                moment: f(&c.moment),
                normal_weights: c
                    .normal_weights
                    .iter()
                    .map(|w| NormalWeight {
                        beta: f(&w.beta),
                        c1_multiple: w.c1_multiple,
                    })
                    .collect(),
                generator_integral: c.generator_integral.clone(),
            }),
        }
    }
}

/// Fixed-point data of a Hamiltonian torus action. Validated on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusModel {
    rank: usize,
    dim_c: usize,
    components: Vec<FixedLocus>,
    noncompact: bool,
}

impl TorusModel {
    pub fn new(rank: usize, dim_c: usize, components: Vec<FixedLocus>) -> Result<Self, ModelError> {
        let m = TorusModel {
            rank,
            dim_c,
            components,
            noncompact: false,
        };
        m.validate()?;
        Ok(m)
    }

    /// Marks the underlying manifold as noncompact. Only the closed-form
    /// Duistermaat-Heckman path accepts such models.
    pub fn with_noncompact(mut self, noncompact: bool) -> Self {
        self.noncompact = noncompact;
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim_c(&self) -> usize {
        self.dim_c
    }

    pub fn components(&self) -> &[FixedLocus] {
        &self.components
    }

    pub fn is_noncompact(&self) -> bool {
        self.noncompact
    }

    pub fn component(&self, name: &str) -> Option<&FixedLocus> {
        self.components.iter().find(|c| c.name() == name)
    }

    pub fn all_isolated(&self) -> bool {
        self.components.iter().all(|c| matches!(c, FixedLocus::Point(_)))
    }

    /// Isolated points, or `None` if some component has positive dimension.
    pub fn points(&self) -> Option<Vec<&FixedPoint>> {
        self.components.iter().map(FixedLocus::as_point).collect()
    }

    fn validate(&self) -> Result<(), ModelError> {
        if self.rank == 0 {
            return Err(ModelError::ZeroRank);
        }
        if self.components.is_empty() {
            return Err(ModelError::NoComponents);
        }
        let mut names = BTreeSet::new();
        for c in &self.components {
            let name = c.name();
            if !names.insert(name) {
                return Err(ModelError::DuplicateName(name.to_string()));
            }
            let check_rank = |field: String, f: &LinearForm| {
                if f.rank() == self.rank {
                    Ok(())
                } else {
                    Err(ModelError::RankMismatch {
                        component: name.to_string(),
                        field,
                        expected: self.rank,
                        found: f.rank(),
                    })
                }
            };
            check_rank("moment".into(), c.moment())?;
            for (i, w) in c.normal_forms().into_iter().enumerate() {
                check_rank(format!("weight {i}"), w)?;
                if w.is_zero() {
                    return Err(ModelError::ZeroWeight {
                        component: name.to_string(),
                        index: i,
                    });
                }
            }
            if let FixedLocus::Component(fc) = c {
                if fc.dim_c == 0 {
                    return Err(ModelError::InvalidArgument(format!(
                        "component {name:?} has dimC 0; use a fixed point"
                    )));
                }
            }
            let found = c.dim_c() + c.normal_forms().len();
            if found != self.dim_c {
                return Err(ModelError::DimensionMismatch {
                    component: name.to_string(),
                    expected: self.dim_c,
                    found,
                });
            }
        }
        Ok(())
    }

    /// Applies `f` to every linear form, producing a model of rank `new_rank`.
    pub(crate) fn map_forms(&self, new_rank: usize, f: impl Fn(&LinearForm) -> LinearForm) -> Result<Self, ModelError> {
        let components = self.components.iter().map(|c| c.map_forms(&f)).collect();
        Ok(TorusModel::new(new_rank, self.dim_c, components)?.with_noncompact(self.noncompact))
    }

    /// Multiplies every moment value by `c`.
    pub fn scale_moments(&self, c: &Rational) -> Self {
        let components = self
            .components
            .iter()
            .map(|comp| {
                let mut comp = comp.clone();
                match &mut comp {
                    FixedLocus::Point(p) => p.moment = p.moment.scale(c),
                    FixedLocus::Component(fc) => fc.moment = fc.moment.scale(c),
                }
                comp
            })
            .collect();
        TorusModel {
            components,
            ..self.clone()
        }
    }
}
