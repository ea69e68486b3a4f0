//! Localization over positive-dimensional fixed components, checked against
//! the full-torus computation on CP².

mod common;

use common::*;
use equiloc::{
    builtin_cpn, component_contribution, load_class_file, load_model, localize, power_integral, subtorus_restrict,
    EquivariantIntegrand, FixedComponent, FixedLocus, FixedPoint, LinearForm, NormalWeight, Polynomial, TorusModel,
    TruncatedClass,
};

fn s() -> LinearForm {
    LinearForm::var(1, 0)
}

fn p(text: &str) -> Polynomial {
    equiloc::parse_polynomial(text, 1).unwrap()
}

/// CP² under `(t0, t1, t2) = (0, 0, s)`: the line {x2 = 0} is fixed with
/// moment 0 and normal weight -s (normal bundle O(1)); f2 stays isolated
/// with moment s and weights (s, s).
fn collapsed_at_f2() -> TorusModel {
    let line = FixedComponent {
        name: "line".into(),
        dim_c: 1,
        moment: LinearForm::zero(1),
        normal_weights: vec![NormalWeight {
            beta: s().neg(),
            c1_multiple: 1,
        }],
        generator_integral: q(1, 1),
    };
    let f2 = FixedPoint {
        name: "f2".into(),
        moment: s(),
        weights: vec![s(), s()],
    };
    TorusModel::new(1, 2, vec![FixedLocus::Component(line), FixedLocus::Point(f2)]).unwrap()
}

/// CP² under `(t0, t1, t2) = (s, s, 0)`: the line now has moment s and
/// normal weight s, and f2 has moment 0 with weights (-s, -s).
fn collapsed_at_line() -> TorusModel {
    load_model(&fixture("cp2_collapsed.json")).unwrap()
}

/// `(h + μ_F)^k` on the line and `μ_f^k` at the point.
fn omega_bar_power(m: &TorusModel, k: u32) -> EquivariantIntegrand {
    let mut map = std::collections::BTreeMap::new();
    for c in m.components() {
        let class = match c {
            FixedLocus::Point(pt) => TruncatedClass::new(vec![pt.moment.to_polynomial().pow(k)]),
            FixedLocus::Component(fc) => {
                TruncatedClass::linear(fc.moment.to_polynomial(), Polynomial::one(1), fc.dim_c).pow(k)
            }
        };
        map.insert(c.name().to_string(), class);
    }
    EquivariantIntegrand::Explicit(map)
}

#[test]
fn full_torus_reference() {
    assert_eq!(power_integral(&builtin_cpn(2).unwrap(), 2).unwrap(), Polynomial::one(3));
}

#[test]
fn generic_subtorus_keeps_chern_integral() {
    let r = subtorus_restrict(&builtin_cpn(2).unwrap(), &[vec![0], vec![1], vec![2]]).unwrap();
    assert_eq!(power_integral(&r, 2).unwrap(), p("1"));
    // The weights at f1 are (s, -s).
    let f1 = r.component("f1").unwrap().as_point().unwrap();
    assert_eq!(f1.weights, vec![s(), s().neg()]);
}

#[test]
fn collapsing_subtorus_is_refused() {
    assert!(matches!(
        subtorus_restrict(&builtin_cpn(2).unwrap(), &[vec![0], vec![0], vec![1]]),
        Err(equiloc::ModelError::WeightCollapsesToZero { .. })
    ));
}

#[test]
fn component_data_reproduces_chern_integral() {
    for m in [collapsed_at_f2(), collapsed_at_line()] {
        let r = localize(&m, &omega_bar_power(&m, 2)).unwrap();
        assert_eq!(r.value, p("1"));
    }
    // With moment s on the line its contribution carries everything:
    // [s², 2s]·[1/s, -1/s²] at h¹ is -1 + 2 = 1.
    let m = collapsed_at_line();
    let r = localize(&m, &omega_bar_power(&m, 2)).unwrap();
    let line = &r.contributions.iter().find(|(n, _)| n == "line").unwrap().1;
    assert_eq!(line.as_polynomial(), Some(&p("1")));
}

#[test]
fn wrong_normal_chern_number_breaks_the_total() {
    let mut m = collapsed_at_line();
    let FixedLocus::Component(line) = m.components()[0].clone() else {
        unreachable!()
    };
    let flipped = FixedComponent {
        normal_weights: vec![NormalWeight {
            c1_multiple: -1,
            ..line.normal_weights[0].clone()
        }],
        ..line
    };
    m = TorusModel::new(1, 2, vec![FixedLocus::Component(flipped), m.components()[1].clone()]).unwrap();
    assert_eq!(localize(&m, &omega_bar_power(&m, 2)).unwrap().value, p("3"));
}

#[test]
fn lower_powers_vanish_and_higher_match_full_torus() {
    let full = builtin_cpn(2).unwrap();
    for (m, images) in [
        (collapsed_at_f2(), [p("0"), p("0"), p("t0")]),
        (collapsed_at_line(), [p("t0"), p("t0"), p("0")]),
    ] {
        for k in 0..=4u32 {
            let expected = power_integral(&full, k).unwrap();
            // Substitute t_i -> image_i.
            let forms: Vec<LinearForm> = images
                .iter()
                .map(|q| LinearForm::new(vec![q.coefficient(&[1])]))
                .collect();
            let expected = expected.substitute(&forms, 1).unwrap();
            assert_eq!(
                localize(&m, &omega_bar_power(&m, k)).unwrap().value,
                expected,
                "k = {k}"
            );
        }
    }
}

#[test]
fn euler_class_through_component() {
    // e^T(TM)|_line = e(T line) · e^T(ν) = 2h · (β + h).
    let m = collapsed_at_f2();
    let line = m.components()[0].to_component();
    let beta = line.normal_weights[0].beta.to_polynomial();
    let tangent = TruncatedClass::linear(Polynomial::zero(1), p("2"), 1);
    let normal = TruncatedClass::linear(beta, Polynomial::one(1), 1);
    let restricted = tangent.try_mul(&normal).unwrap();
    let c = component_contribution(&line, &restricted).unwrap();
    assert_eq!(c.as_polynomial(), Some(&p("2")));
    let mut map = std::collections::BTreeMap::new();
    map.insert("line".to_string(), restricted);
    map.insert("f2".to_string(), TruncatedClass::new(vec![p("t0^2")]));
    assert_eq!(
        localize(&m, &EquivariantIntegrand::Explicit(map)).unwrap().value,
        p("3")
    );
}

#[test]
fn class_file_for_components() {
    let m = collapsed_at_line();
    let integrand = load_class_file(&fixture("cp2_collapsed_classes.json"), &m).unwrap();
    assert_eq!(localize(&m, &integrand).unwrap().value, p("1"));
}

#[test]
fn power_integral_requires_points() {
    assert!(matches!(
        power_integral(&collapsed_at_f2(), 2),
        Err(equiloc::LocalizeError::RequiresIsolatedPoints { .. })
    ));
}
