#![allow(dead_code)]

use equiloc::{
    builtin_cpn, builtin_s2, product, EquivariantIntegrand, LinFactoredRational, LinearForm, Polynomial, Rational,
    TorusModel,
};
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn fixture(name: &str) -> Vec<u8> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != q(0, 1))
}

/// Up to six terms of total degree at most `max_degree`.
pub fn polynomial(rank: usize, max_degree: u32) -> impl Strategy<Value = Polynomial> {
    let term = (proptest::collection::vec(0..=max_degree, rank), small_rational()).prop_map(move |(mut exps, c)| {
        // Clamp total degree by trimming from the last variable.
        let mut total: u32 = exps.iter().sum();
        for e in exps.iter_mut().rev() {
            if total <= max_degree {
                break;
            }
            let cut = (*e).min(total - max_degree);
            *e -= cut;
            total -= cut;
        }
        (exps, c)
    });
    proptest::collection::vec(term, 0..=6).prop_map(move |terms| Polynomial::from_terms(rank, terms))
}

pub fn linear_form(rank: usize) -> impl Strategy<Value = LinearForm> {
    proptest::collection::vec(-3i64..=3, rank).prop_map(|c| LinearForm::from_integers(&c))
}

pub fn nonzero_linear_form(rank: usize) -> impl Strategy<Value = LinearForm> {
    linear_form(rank).prop_filter("nonzero form", |f| !f.is_zero())
}

pub fn lin_factored(rank: usize) -> impl Strategy<Value = LinFactoredRational> {
    (
        polynomial(rank, 3),
        proptest::collection::vec((nonzero_linear_form(rank), 1u32..=2), 0..=3),
    )
        .prop_map(|(num, den)| LinFactoredRational::new(num, den).unwrap())
}

pub fn point(rank: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-40i64..=40, 1i64..=7).prop_map(|(n, d)| q(n, d)), rank)
}

/// Small compact builtin: S² (random scale), CPⁿ (n ≤ 3) or a product of two.
pub fn builtin_model() -> impl Strategy<Value = TorusModel> {
    let leaf = prop_oneof![
        nonzero_rational().prop_map(|s| builtin_s2(&s).unwrap()),
        (1usize..=3).prop_map(|n| builtin_cpn(n).unwrap()),
    ];
    prop_oneof![
        2 => leaf.clone(),
        1 => (leaf.clone(), leaf).prop_filter_map("small product", |(a, b)| {
            (a.rank() + b.rank() <= 5).then(|| product(&a, &b).unwrap())
        }),
    ]
}

/// S² with a random scale or CP¹: a single rank-1 or rank-2 factor, small
/// enough that triple products stay cheap.
pub fn small_builtin() -> impl Strategy<Value = TorusModel> {
    prop_oneof![
        nonzero_rational().prop_map(|s| builtin_s2(&s).unwrap()),
        Just(builtin_cpn(1).unwrap()),
    ]
}

/// A global class: `P(t, ω̄)` restricted to each point as `P(t, μ_f)`.
pub fn class_from_template(m: &TorusModel, template: &Polynomial) -> EquivariantIntegrand {
    let r = m.rank();
    let points = m.points().expect("isolated model");
    EquivariantIntegrand::from_point_values(points.into_iter().map(|p| {
        let mut images: Vec<LinearForm> = (0..r).map(|i| LinearForm::var(r, i)).collect();
        images.push(p.moment.clone());
        (p.name.clone(), template.substitute(&images, r).unwrap())
    }))
}

/// The integrand `t_iⁿ` at `f_i` on `CPⁿ`.
pub fn cpn_chern_integrand(n: usize) -> EquivariantIntegrand {
    EquivariantIntegrand::from_point_values((0..=n).map(|i| (format!("f{i}"), Polynomial::var(n + 1, i).pow(n as u32))))
}
