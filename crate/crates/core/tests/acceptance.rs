//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Run with `cargo test -p equiloc --test acceptance`.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use equiloc::localize::is_homogeneous_of_degree;
use equiloc::oracle::random_rational;
use equiloc::{
    builtin_cpn, builtin_gaussian, builtin_s2, dh_closed_form, dh_series, dh_volume, euler_characteristic,
    lagrange_power_sum, load_model, localize, power_integral, product, s2_area_quadrature, subtorus_restrict,
    vandermonde_det, EquivariantIntegrand, FixedComponent, FixedLocus, FixedPoint, LinFactoredRational, LinearForm,
    LocalizeError, ModelError, NormalWeight, Polynomial, Rational, TorusModel, TruncatedClass,
};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {{
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($fmt)+));
        }
    }};
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn fixture(name: &str) -> Vec<u8> {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    std::fs::read(path).expect("fixture readable")
}

fn cpn_chern_integrand(n: usize) -> EquivariantIntegrand {
    EquivariantIntegrand::from_point_values((0..=n).map(|i| (format!("f{i}"), Polynomial::var(n + 1, i).pow(n as u32))))
}

fn compact_builtin(rng: &mut ChaCha8Rng) -> TorusModel {
    if rng.gen_bool(0.4) {
        let mut s = random_rational(rng);
        while s.is_zero() {
            s = random_rational(rng);
        }
        builtin_s2(&s).unwrap()
    } else {
        builtin_cpn(rng.gen_range(1..=3)).unwrap()
    }
}

fn random_poly(rng: &mut ChaCha8Rng, rank: usize, max_degree: u32) -> Polynomial {
    let terms = rng.gen_range(0..=5);
    Polynomial::from_terms(
        rank,
        (0..terms).map(|_| {
            let mut left = max_degree;
            let exps = (0..rank)
                .map(|_| {
                    let e = rng.gen_range(0..=left);
                    left -= e;
                    e
                })
                .collect();
            let c = Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into());
            (exps, c)
        }),
    )
}

fn random_form(rng: &mut ChaCha8Rng, rank: usize) -> LinearForm {
    loop {
        let f = LinearForm::from_integers(&(0..rank).map(|_| rng.gen_range(-3i64..=3)).collect::<Vec<_>>());
        if !f.is_zero() {
            return f;
        }
    }
}

fn random_lfr(rng: &mut ChaCha8Rng, rank: usize) -> LinFactoredRational {
    let num = random_poly(rng, rank, 3);
    let factors: Vec<(LinearForm, u32)> = (0..rng.gen_range(0..=3))
        .map(|_| (random_form(rng, rank), rng.gen_range(1..=2)))
        .collect();
    LinFactoredRational::new(num, factors).unwrap()
}

fn class_from_template(m: &TorusModel, template: &Polynomial) -> EquivariantIntegrand {
    let r = m.rank();
    EquivariantIntegrand::from_point_values(m.points().unwrap().into_iter().map(|p| {
        let mut images: Vec<LinearForm> = (0..r).map(|i| LinearForm::var(r, i)).collect();
        images.push(p.moment.clone());
        (p.name.clone(), template.substitute(&images, r).unwrap())
    }))
}

fn cpn_chern_integral() -> Outcome {
    let mut slowest = Duration::ZERO;
    for n in 1..=6 {
        let start = Instant::now();
        let r = localize(&builtin_cpn(n).unwrap(), &cpn_chern_integrand(n)).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        ensure!(r.value == Polynomial::one(n + 1), "n = {n}: got {}", r.value);
        ensure!(elapsed < Duration::from_secs(1), "n = {n} took {elapsed:?}");
        slowest = slowest.max(elapsed);
    }
    Ok(format!("n = 1..6 all exactly 1, slowest {slowest:?}"))
}

fn s2_area() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..20 {
        let s = loop {
            let s = random_rational(&mut rng);
            if !s.is_zero() {
                break s;
            }
        };
        let v = power_integral(&builtin_s2(&s).unwrap(), 1).map_err(|e| e.to_string())?;
        ensure!(v == Polynomial::constant(1, &s * q(2)), "scale {s}: got {v}");
    }
    // The area is linear in the scale; substitute s = 2π into 2·s.
    let per_unit = power_integral(&builtin_s2(&q(1)).unwrap(), 1)
        .unwrap()
        .as_constant()
        .unwrap()
        .to_f64()
        .unwrap();
    let area = per_unit * 2.0 * PI;
    let quad = s2_area_quadrature(10_000);
    ensure!((area - quad).abs() < 1e-6, "quadrature {quad} vs {area}");
    ensure!((area - 4.0 * PI).abs() < 1e-9, "{area} vs 4π");
    Ok(format!(
        "20 random scales give 2s; 2·(2π) = {area:.12}, quadrature {quad:.12}"
    ))
}

fn vanishing_below_top_degree() -> Outcome {
    for n in 1..=4 {
        let m = builtin_cpn(n).unwrap();
        for k in 0..n as u32 {
            let v = power_integral(&m, k).map_err(|e| e.to_string())?;
            ensure!(v.is_zero(), "CP^{n}, k = {k}: {v}");
        }
    }
    Ok("CP^n, n ≤ 4, k < n all exactly 0".into())
}

fn euler_characteristics() -> Outcome {
    let s2 = builtin_s2(&q(1)).unwrap();
    ensure!(euler_characteristic(&s2) == Ok(2), "χ(S²) ≠ 2");
    for n in 1..=5 {
        let chi = euler_characteristic(&builtin_cpn(n).unwrap()).map_err(|e| e.to_string())?;
        ensure!(chi == n as i64 + 1, "χ(CP^{n}) = {chi}");
    }
    let pieces = [
        s2.clone(),
        builtin_cpn(1).unwrap(),
        builtin_cpn(2).unwrap(),
        builtin_cpn(3).unwrap(),
    ];
    for a in &pieces {
        for b in &pieces {
            let p = product(a, b).unwrap();
            let lhs = euler_characteristic(&p).map_err(|e| e.to_string())?;
            let rhs = euler_characteristic(a).unwrap() * euler_characteristic(b).unwrap();
            ensure!(lhs == rhs, "χ(product) = {lhs}, expected {rhs}");
        }
    }
    Ok("χ(S²) = 2, χ(CP^n) = n+1 for n ≤ 5, 16 products multiply".into())
}

fn vandermonde_identity() -> Outcome {
    for s in 2..=6 {
        let nodes: Vec<Polynomial> = (0..s).map(|i| Polynomial::var(s, i)).collect();
        let det = vandermonde_det(&nodes);
        let mut prod = Polynomial::one(s);
        for i in 0..s {
            for j in i + 1..s {
                prod = &prod * &(&nodes[j] - &nodes[i]);
            }
        }
        ensure!(det == prod, "size {s}: determinant differs from product");
    }
    Ok("sizes 2..6 exact".into())
}

fn lagrange_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=8u32 {
        let mut done = 0;
        while done < 100 {
            let nodes: Vec<Rational> = (0..=n).map(|_| random_rational(&mut rng)).collect();
            let Ok(v) = lagrange_power_sum(n, &nodes) else {
                continue;
            };
            ensure!(v == q(1), "n = {n}: {v}");
            done += 1;
        }
    }
    Ok("n = 1..8, 100 node sets each, all exactly 1".into())
}

fn duistermaat_heckman() -> Outcome {
    let mut builtins = vec![
        builtin_s2(&q(1)).unwrap(),
        builtin_s2(&Rational::new(7.into(), 3.into())).unwrap(),
    ];
    builtins.extend((1..=5).map(|n| builtin_cpn(n).unwrap()));
    builtins.push(product(&builtins[0], &builtins[3]).unwrap());
    for m in &builtins {
        let n = m.dim_c();
        let series = dh_series(m, n as u32).map_err(|e| e.to_string())?;
        ensure!(
            series[..n].iter().all(Polynomial::is_zero),
            "nonzero entry below degree {n}"
        );
        ensure!(series[n].is_constant(), "entry {n} not constant: {}", series[n]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..10 {
        let a = compact_builtin(&mut rng);
        let b = compact_builtin(&mut rng);
        let lhs = dh_volume(&product(&a, &b).unwrap()).map_err(|e| e.to_string())?;
        let rhs = dh_volume(&a).unwrap() * dh_volume(&b).unwrap();
        ensure!(lhs == rhs, "volume {lhs} vs {rhs}");
    }
    Ok(format!(
        "{} builtins: low entries 0, top constant; 10 product volumes multiply",
        builtins.len()
    ))
}

fn gaussian_convention() -> Outcome {
    let v = dh_closed_form(&builtin_gaussian()).map_err(|e| e.to_string())?;
    let expected = LinFactoredRational::over_product(Polynomial::one(1), &[LinearForm::var(1, 0)]).unwrap();
    ensure!(v == expected, "got {v}");
    Ok(format!("closed form = {v}"))
}

fn subtorus_component_consistency() -> Outcome {
    let full = builtin_cpn(2).unwrap();
    let reference = power_integral(&full, 2).map_err(|e| e.to_string())?;
    ensure!(reference == Polynomial::one(3), "full torus gives {reference}");

    let generic = subtorus_restrict(&full, &[vec![0], vec![1], vec![2]]).map_err(|e| e.to_string())?;
    let v = power_integral(&generic, 2).map_err(|e| e.to_string())?;
    ensure!(v == Polynomial::one(1), "generic subtorus gives {v}");

    ensure!(
        matches!(
            subtorus_restrict(&full, &[vec![0], vec![0], vec![1]]),
            Err(ModelError::WeightCollapsesToZero { .. })
        ),
        "collapsing map was not refused"
    );
    // (t0, t1, t2) = (0, 0, s): fixed line {x2 = 0} plus the point f2.
    let s = LinearForm::var(1, 0);
    let line = FixedComponent {
        name: "line".into(),
        dim_c: 1,
        moment: LinearForm::zero(1),
        normal_weights: vec![NormalWeight {
            beta: s.neg(),
            c1_multiple: 1,
        }],
        generator_integral: q(1),
    };
    let f2 = FixedPoint {
        name: "f2".into(),
        moment: s.clone(),
        weights: vec![s.clone(), s.clone()],
    };
    let collapsed =
        TorusModel::new(1, 2, vec![FixedLocus::Component(line), FixedLocus::Point(f2)]).map_err(|e| e.to_string())?;
    let mut classes = std::collections::BTreeMap::new();
    // (h + μ_line)² with μ_line = 0, and μ_f2² = s².
    classes.insert(
        "line".to_string(),
        TruncatedClass::linear(Polynomial::zero(1), Polynomial::one(1), 1).pow(2),
    );
    classes.insert("f2".to_string(), TruncatedClass::new(vec![s.to_polynomial().pow(2)]));
    let v = localize(&collapsed, &EquivariantIntegrand::Explicit(classes)).map_err(|e| e.to_string())?;
    ensure!(v.value == Polynomial::one(1), "collapsed (0,0,s) gives {}", v.value);

    // (t0, t1, t2) = (s, s, 0): the line carries moment s and the whole answer.
    let file_model = load_model(&fixture("cp2_collapsed.json")).map_err(|e| e.to_string())?;
    let integrand = equiloc::load_class_file(&fixture("cp2_collapsed_classes.json"), &file_model).unwrap();
    let v = localize(&file_model, &integrand).map_err(|e| e.to_string())?;
    ensure!(v.value == Polynomial::one(1), "collapsed (s,s,0) gives {}", v.value);
    Ok("generic restriction = 1; both collapsed point+line models = 1".into())
}

fn error_path_integrity() -> Outcome {
    let tampered = load_model(&fixture("tampered_cp1.json")).map_err(|e| e.to_string())?;
    match power_integral(&tampered, 1) {
        Err(LocalizeError::NonPolynomialResult { remainder }) => {
            ensure!(!remainder.is_polynomial(), "remainder is polynomial")
        }
        other => return Err(format!("tampered CP¹ gave {other:?}")),
    }
    match load_model(&fixture("zero_weight.json")) {
        Err(ModelError::ZeroWeight { component, .. }) => ensure!(component == "N", "named {component}"),
        other => return Err(format!("zero-weight model gave {other:?}")),
    }
    Ok("tampered CP¹ -> NonPolynomialResult; zero weight rejected at load".into())
}

fn property_suites() -> Outcome {
    const CASES: usize = 200;
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for case in 0..CASES {
        let r = rng.gen_range(1..=6);
        let (a, b, c) = (
            random_poly(&mut rng, r, 6),
            random_poly(&mut rng, r, 6),
            random_poly(&mut rng, r, 6),
        );
        ensure!(&(&a + &b) + &c == &a + &(&b + &c), "case {case}: + not associative");
        ensure!(&a + &b == &b + &a, "case {case}: + not commutative");
        ensure!(&(&a * &b) * &c == &a * &(&b * &c), "case {case}: * not associative");
        ensure!(&a * &b == &b * &a, "case {case}: * not commutative");
        ensure!(
            &a * &(&b + &c) == &(&a * &b) + &(&a * &c),
            "case {case}: not distributive"
        );
        ensure!(
            &a + &Polynomial::zero(r) == a && &a * &Polynomial::one(r) == a,
            "case {case}: identities"
        );
    }
    let mut checked = 0;
    while checked < CASES {
        let r = rng.gen_range(1..=4);
        let (a, b) = (random_lfr(&mut rng, r), random_lfr(&mut rng, r));
        let x: Vec<Rational> = (0..r).map(|_| random_rational(&mut rng)).collect();
        let (Ok(va), Ok(vb)) = (a.eval(&x), b.eval(&x)) else {
            continue;
        };
        let sum = a.try_add(&b).unwrap().eval(&x).unwrap();
        ensure!(sum == va + vb, "evaluation is not additive");
        checked += 1;
    }
    for case in 0..CASES {
        let m = compact_builtin(&mut rng);
        let r = m.rank();
        let n = m.dim_c() as u32;
        let (s, t) = (random_poly(&mut rng, r + 1, 3), random_poly(&mut rng, r + 1, 3));
        let both = localize(&m, &class_from_template(&m, &(&s + &t)))
            .map_err(|e| e.to_string())?
            .value;
        let parts = &localize(&m, &class_from_template(&m, &s)).unwrap().value
            + &localize(&m, &class_from_template(&m, &t)).unwrap().value;
        ensure!(both == parts, "case {case}: localize not linear");

        let k = rng.gen_range(0..=n + 2);
        let pk = power_integral(&m, k).map_err(|e| e.to_string())?;
        if k < n {
            ensure!(pk.is_zero(), "case {case}: power {k} < {n} nonzero");
        } else {
            ensure!(is_homogeneous_of_degree(&pk, k - n), "case {case}: degree law");
        }

        let c = Rational::new(rng.gen_range(1i64..=5).into(), rng.gen_range(1i64..=5).into());
        let scaled = power_integral(&m.scale_moments(&c), k).unwrap();
        ensure!(scaled == pk.scale(&c.pow(k as i32)), "case {case}: moment scaling");

        let mut perm: Vec<usize> = (0..r).collect();
        for i in (1..r).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let map: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| i64::from(perm[i] == j)).collect())
            .collect();
        let images: Vec<LinearForm> = (0..r).map(|i| LinearForm::var(r, perm[i])).collect();
        let permuted = power_integral(&subtorus_restrict(&m, &map).unwrap(), k).unwrap();
        ensure!(
            permuted == pk.substitute(&images, r).unwrap(),
            "case {case}: permutation"
        );
    }
    Ok(format!(
        "{CASES} cases each: ring laws, evaluation, linearity, degree, scaling, permutation"
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("CP^n Chern integral = 1 (n = 1..6, < 1 s each)", cpn_chern_integral),
        ("S² area = 2s exactly; 4π at s = 2π", s2_area),
        ("power integrals vanish below top degree", vanishing_below_top_degree),
        ("Euler characteristics by fixed-point counting", euler_characteristics),
        ("Vandermonde determinant = Π(t_j - t_i)", vandermonde_identity),
        ("Lagrange power-sum identity", lagrange_identity),
        ("Duistermaat-Heckman series and volumes", duistermaat_heckman),
        ("Gaussian closed form = 1/t0", gaussian_convention),
        (
            "subtorus and fixed-component consistency",
            subtorus_component_consistency,
        ),
        ("error-path integrity", error_path_integrity),
        ("randomized property suites", property_suites),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, check) in criteria {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  {name} [{:.2?}]: {detail}", t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} [{:.2?}]: {why}", t.elapsed());
            }
        }
    }
    println!(
        "{} criteria, {failed} failed, {:.2?} total",
        criteria.len(),
        start.elapsed()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
