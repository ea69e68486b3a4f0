//! Builtin models and model combinators.

use num_traits::Zero;

use super::{FixedComponent, FixedLocus, FixedPoint, ModelError, NormalWeight, TorusModel};
use crate::exactalg::{LinearForm, Rational};

/// The round 2-sphere rotated about its axis, with moment `±scale·t0` at the
/// poles.
///
/// The tangent weight at each pole has the same sign as its moment, so the
/// power integral `∫ ω̄` localizes to `2·scale`.
pub fn builtin_s2(scale: &Rational) -> Result<TorusModel, ModelError> {
    if scale.is_zero() {
        return Err(ModelError::ZeroScale);
    }
    let t = LinearForm::var(1, 0);
    let north = FixedPoint {
        name: "N".into(),
        moment: t.scale(scale),
        weights: vec![t.clone()],
    };
    let south = FixedPoint {
        name: "S".into(),
        moment: t.scale(&-scale.clone()),
        weights: vec![t.neg()],
    };
    TorusModel::new(1, 1, vec![FixedLocus::Point(north), FixedLocus::Point(south)])
}

/// Complex projective space `CP^n` under the standard rank `n+1` torus.
///
/// Fixed point `f_i` is the `i`-th coordinate line, with moment `t_i` and
/// tangent weights `t_i - t_j` for `j ≠ i`. With this sign the power
/// integral `∫ ω̄^n` equals 1 (the opposite sign gives `(-1)^n`).
pub fn builtin_cpn(n: usize) -> Result<TorusModel, ModelError> {
    if n == 0 {
        return Err(ModelError::InvalidArgument("CP^n needs n >= 1".into()));
    }
    let rank = n + 1;
    let points = (0..rank)
        .map(|i| {
            let ti = LinearForm::var(rank, i);
            let weights = (0..rank)
                .filter(|&j| j != i)
                .map(|j| {
                    let mut c = vec![0i64; rank];
                    c[i] = 1;
                    c[j] = -1;
                    LinearForm::from_integers(&c)
                })
                .collect();
            FixedLocus::Point(FixedPoint {
                name: format!("f{i}"),
                moment: ti,
                weights,
            })
        })
        .collect();
    TorusModel::new(rank, n, points)
}

/// `ℂ` with the circle acting by weight `t0`; one fixed point at the origin
/// with moment 0. Noncompact.
pub fn builtin_gaussian() -> TorusModel {
    let origin = FixedPoint {
        name: "origin".into(),
        moment: LinearForm::zero(1),
        weights: vec![LinearForm::var(1, 0)],
    };
    TorusModel::new(1, 1, vec![FixedLocus::Point(origin)])
        .expect("gaussian model is valid")
        .with_noncompact(true)
}

/// Cartesian product. The variables of `b` are shifted past those of `a`;
/// fixed components are all pairs, with moments added and weights
/// concatenated.
pub fn product(a: &TorusModel, b: &TorusModel) -> Result<TorusModel, ModelError> {
    let rank = a.rank() + b.rank();
    let left = |f: &LinearForm| f.embed(0, rank);
    let right = |f: &LinearForm| f.embed(a.rank(), rank);
    let mut components = Vec::with_capacity(a.components().len() * b.components().len());
    for ca in a.components() {
        for cb in b.components() {
            let name = format!("({},{})", ca.name(), cb.name());
            let moment = left(ca.moment())
                .try_add(&right(cb.moment()))
                .expect("embedded ranks agree");
            let locus = match (ca, cb) {
                (FixedLocus::Point(pa), FixedLocus::Point(pb)) => FixedLocus::Point(FixedPoint {
                    name,
                    moment,
                    weights: pa
                        .weights
                        .iter()
                        .map(left)
                        .chain(pb.weights.iter().map(right))
                        .collect(),
                }),
                (FixedLocus::Component(fa), FixedLocus::Point(pb)) => {
                    let mut normal_weights: Vec<NormalWeight> = fa
                        .normal_weights
                        .iter()
                        .map(|w| NormalWeight {
                            beta: left(&w.beta),
                            c1_multiple: w.c1_multiple,
                        })
                        .collect();
                    normal_weights.extend(pb.weights.iter().map(|w| NormalWeight {
                        beta: right(w),
                        c1_multiple: 0,
                    }));
                    FixedLocus::Component(FixedComponent {
                        name,
                        dim_c: fa.dim_c,
                        moment,
                        normal_weights,
                        generator_integral: fa.generator_integral.clone(),
                    })
                }
                (FixedLocus::Point(pa), FixedLocus::Component(fb)) => {
                    let mut normal_weights: Vec<NormalWeight> = pa
                        .weights
                        .iter()
                        .map(|w| NormalWeight {
                            beta: left(w),
                            c1_multiple: 0,
                        })
                        .collect();
                    normal_weights.extend(fb.normal_weights.iter().map(|w| NormalWeight {
                        beta: right(&w.beta),
                        c1_multiple: w.c1_multiple,
                    }));
                    FixedLocus::Component(FixedComponent {
                        name,
                        dim_c: fb.dim_c,
                        moment,
                        normal_weights,
                        generator_integral: fb.generator_integral.clone(),
                    })
                }
                (FixedLocus::Component(fa), FixedLocus::Component(fb)) => {
                    return Err(ModelError::UnsupportedComponentProduct {
                        left: fa.name.clone(),
                        right: fb.name.clone(),
                    })
                }
            };
            components.push(locus);
        }
    }
    Ok(TorusModel::new(rank, a.dim_c() + b.dim_c(), components)?
        .with_noncompact(a.is_noncompact() || b.is_noncompact()))
}

/// Restricts the action to a subtorus given by an integer matrix of shape
/// `rank × new_rank`. Every form `ℓ` becomes `ℓ ∘ map`.
///
/// Fails if a weight becomes zero: the subtorus then fixes more than the
/// original fixed set and the caller must supply component data instead.
pub fn subtorus_restrict(m: &TorusModel, map: &[Vec<i64>]) -> Result<TorusModel, ModelError> {
    let new_rank = map.first().map_or(0, Vec::len);
    if map.len() != m.rank() || new_rank == 0 || map.iter().any(|row| row.len() != new_rank) {
        return Err(ModelError::MapShape {
            rows: map.len(),
            cols: new_rank,
            expected_rows: m.rank(),
        });
    }
    for c in m.components() {
        for (index, w) in c.normal_forms().into_iter().enumerate() {
            if w.pull_back(map, new_rank).is_zero() {
                return Err(ModelError::WeightCollapsesToZero {
                    component: c.name().to_string(),
                    index,
                });
            }
        }
    }
    m.map_forms(new_rank, |f| f.pull_back(map, new_rank))
}
