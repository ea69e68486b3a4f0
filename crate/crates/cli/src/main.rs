//! `equiloc`: exact equivariant localization from the command line.
//!
//! Exit codes: 0 success, 1 a `check` failed, 2 bad input, 3 the model is
//! mathematically inconsistent (contributions do not cancel).

mod source;

use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use equiloc::localize::sum_contributions;
use equiloc::{
    dh_closed_form, dh_series, dh_volume, euler_characteristic, format_rational, load_class_file, localize,
    parse_rational, sum_equal_by_evaluation, EquivariantIntegrand, LinFactoredRational, LocalizeError, Polynomial,
    Rational, TorusModel,
};
use num_traits::{One, Signed, ToPrimitive, Zero};

use source::SourceError;

#[derive(Parser)]
#[command(
    name = "equiloc",
    version,
    about = "Exact fixed-point localization for torus actions"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Model file (JSON).
    #[arg(long, global = true, conflicts_with = "builtin")]
    model: Option<PathBuf>,
    /// Built-in model: s2, cpn[:n], gaussian, product:<a>,<b>,...
    #[arg(long, global = true)]
    builtin: Option<String>,
    /// Multiply every moment value by this rational.
    #[arg(long, global = true, value_name = "RATIONAL", allow_hyphen_values = true)]
    scale: Option<String>,
    /// Also print the answer with the scale multiplied by 2π (integrate, volume).
    #[arg(long, global = true)]
    scale_two_pi: bool,
    /// Print each fixed component's contribution.
    #[arg(long, global = true)]
    contributions: bool,
    /// Seed for the randomized evaluation cross-check in `check`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Localize an equivariant class and print the resulting polynomial.
    Integrate(Integrand),
    /// Symplectic volume ∫ ω^n/n!.
    Volume,
    /// Euler characteristic by fixed-point counting.
    Chi,
    /// Duistermaat-Heckman series entries 0..=order, one per line as `k!: <entry>`.
    Dh {
        /// Last entry to print; defaults to the complex dimension.
        #[arg(long)]
        order: Option<u32>,
    },
    /// Validate the model and probe it for polynomiality and the Euler count.
    Check,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Integrand {
    /// Integrate ω̄^k = (ω + μ)^k.
    #[arg(long, value_name = "K")]
    power: Option<u32>,
    /// Integrate the top power ω̄^n; on CP^n this is c1(O(1))^n.
    #[arg(long)]
    chern_power: bool,
    /// Per-component restrictions: {"classes": {"<name>": "<poly>" | ["c0", ...]}}.
    #[arg(long, value_name = "PATH")]
    class_file: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Inconsistent(String),
}

impl From<SourceError> for Failure {
    fn from(e: SourceError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<LocalizeError> for Failure {
    fn from(e: LocalizeError) -> Self {
        match e {
            LocalizeError::NonPolynomialResult { .. }
            | LocalizeError::NonConstantVolume { .. }
            | LocalizeError::Algebra(_) => Failure::Inconsistent(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check => return check(&cli.common),
        Command::Integrate(ref integrand) => integrate(&cli.common, integrand),
        Command::Volume => volume(&cli.common),
        Command::Chi => chi(&cli.common),
        Command::Dh { order } => dh(&cli.common, order),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Inconsistent(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn scale(common: &Common) -> Result<Rational, SourceError> {
    let Some(text) = &common.scale else {
        return Ok(Rational::one());
    };
    let s = parse_rational(text).map_err(|e| SourceError::Spec(format!("--scale: {e}")))?;
    if s.is_zero() {
        return Err(SourceError::Spec("--scale must be nonzero".into()));
    }
    Ok(s)
}

fn load(common: &Common) -> Result<TorusModel, SourceError> {
    let model = match (&common.model, &common.builtin) {
        (Some(path), _) => source::from_file(path)?,
        (None, Some(spec)) => source::from_builtin(spec)?,
        (None, None) => return Err(SourceError::Spec("one of --model or --builtin is required".into())),
    };
    let s = scale(common)?;
    Ok(if s.is_one() { model } else { model.scale_moments(&s) })
}

/// `value · (2π)^degree`, rendered exactly in π and as a float.
fn two_pi_rendering(value: &Rational, degree: u32) -> Option<String> {
    if degree == 0 {
        return None;
    }
    let coefficient = value * Rational::from_integer(2.into()).pow(degree as i32);
    let approx = value.to_f64()? * (2.0 * PI).powi(degree as i32);
    let prefix = if coefficient.is_zero() {
        return Some("0 ≈ 0".into());
    } else if coefficient.abs().is_one() {
        if coefficient.is_negative() { "-" } else { "" }.to_string()
    } else if coefficient.is_integer() {
        format_rational(&coefficient)
    } else {
        format!("({})", format_rational(&coefficient))
    };
    let power = if degree == 1 {
        String::new()
    } else {
        format!("^{degree}")
    };
    Some(format!("{prefix}π{power} ≈ {approx}"))
}

fn print_two_pi(common: &Common, value: &Polynomial, degree: u32) {
    if !common.scale_two_pi {
        return;
    }
    match value.as_constant().and_then(|c| two_pi_rendering(&c, degree)) {
        Some(line) => println!("{line}"),
        None => eprintln!("note: --scale-two-pi needs a constant answer of positive degree in the scale"),
    }
}

fn print_contributions(contributions: &[(String, LinFactoredRational)]) {
    for (name, c) in contributions {
        println!("{name}: {} / {}", c.numerator(), c.denominator_string());
    }
}

fn integrate(common: &Common, integrand: &Integrand) -> Result<(), Failure> {
    let m = load(common)?;
    let (class, degree) = match (integrand.power, &integrand.class_file) {
        (Some(k), _) => (EquivariantIntegrand::PowerOfOmegaBar(k), Some(k)),
        (None, Some(path)) => {
            let classes = load_class_file(&source::read_file(path)?, &m)
                .map_err(|e| Failure::Input(format!("invalid class file: {e}")))?;
            (classes, None)
        }
        (None, None) => {
            let n = m.dim_c() as u32;
            (EquivariantIntegrand::PowerOfOmegaBar(n), Some(n))
        }
    };
    let result = localize(&m, &class)?;
    println!("result = {}", result.value);
    if common.contributions {
        print_contributions(&result.contributions);
    }
    if let Some(d) = degree {
        print_two_pi(common, &result.value, d);
    } else if common.scale_two_pi {
        eprintln!("note: --scale-two-pi does not apply to class files");
    }
    Ok(())
}

fn volume(common: &Common) -> Result<(), Failure> {
    let m = load(common)?;
    if m.is_noncompact() {
        // Only the closed form exists; it is a rational function, not a number.
        println!("{}", dh_closed_form(&m)?);
        return Ok(());
    }
    let v = dh_volume(&m)?;
    println!("{}", format_rational(&v));
    print_two_pi(common, &Polynomial::constant(m.rank(), v), m.dim_c() as u32);
    Ok(())
}

fn chi(common: &Common) -> Result<(), Failure> {
    let m = load(common)?;
    println!("{}", euler_characteristic(&m)?);
    Ok(())
}

fn dh(common: &Common, order: Option<u32>) -> Result<(), Failure> {
    let m = load(common)?;
    let order = order.unwrap_or(m.dim_c() as u32);
    for (k, entry) in dh_series(&m, order)?.iter().enumerate() {
        println!("{k}!: {entry}");
    }
    Ok(())
}

enum Status {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn report(name: &str, status: &Status) {
    let (tag, detail) = match status {
        Status::Pass(d) => ("PASS", d),
        Status::Fail(d) => ("FAIL", d),
        Status::Skip(d) => ("SKIP", d),
    };
    println!("{tag} {name}: {detail}");
}

fn check(common: &Common) -> ExitCode {
    let mut checks: Vec<(&str, Status)> = Vec::new();
    match load(common) {
        Err(e) => {
            checks.push(("validation", Status::Fail(e.to_string())));
            for name in ["polynomiality", "oracle", "euler"] {
                checks.push((name, Status::Skip("model did not load".into())));
            }
        }
        Ok(m) => {
            checks.push((
                "validation",
                Status::Pass(format!(
                    "rank {}, dimC {}, {} fixed components",
                    m.rank(),
                    m.dim_c(),
                    m.components().len()
                )),
            ));
            let skip = if m.is_noncompact() {
                Some("noncompact model")
            } else if !m.all_isolated() {
                Some("needs explicit classes on positive-dimensional components")
            } else {
                None
            };
            match skip {
                Some(why) => {
                    for name in ["polynomiality", "oracle", "euler"] {
                        checks.push((name, Status::Skip(why.into())));
                    }
                }
                None => {
                    let (poly, oracle) = polynomiality_probe(&m, common.seed);
                    checks.push(("polynomiality", poly));
                    checks.push(("oracle", oracle));
                    checks.push(("euler", euler_probe(&m)));
                }
            }
        }
    }
    let mut failed = false;
    for (name, status) in &checks {
        report(name, status);
        failed |= matches!(status, Status::Fail(_));
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

/// Localizes ω̄^n, then re-checks the sum of contributions by evaluation at
/// random rational points.
fn polynomiality_probe(m: &TorusModel, seed: u64) -> (Status, Status) {
    let n = m.dim_c() as u32;
    let result = match localize(m, &EquivariantIntegrand::PowerOfOmegaBar(n)) {
        Ok(r) => r,
        Err(e) => return (Status::Fail(e.to_string()), Status::Skip("no polynomial result".into())),
    };
    let poly = Status::Pass(format!("∫ω̄^{n} = {}", result.value));
    let terms: Vec<LinFactoredRational> = result.contributions.iter().map(|(_, c)| c.clone()).collect();
    let target = LinFactoredRational::from_polynomial(result.value.clone());
    const TRIALS: usize = 8;
    let oracle = if !sum_equal_by_evaluation(&terms, &target, TRIALS, seed) {
        Status::Fail(format!(
            "contributions disagree with the result at a random point (seed {seed})"
        ))
    } else if sum_contributions(m.rank(), &terms).map_or(true, |s| s != target) {
        Status::Fail("contributions do not re-sum to the result".into())
    } else {
        Status::Pass(format!("{TRIALS} random evaluations agree (seed {seed})"))
    };
    (poly, oracle)
}

fn euler_probe(m: &TorusModel) -> Status {
    let expected = m.components().len() as i64;
    match euler_characteristic(m) {
        Ok(chi) if chi == expected => Status::Pass(format!("χ = {chi}")),
        Ok(chi) => Status::Fail(format!("χ = {chi}, but there are {expected} fixed points")),
        Err(e) => Status::Fail(e.to_string()),
    }
}
