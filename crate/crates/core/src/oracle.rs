//! Brute-force cross-checks that share no code path with the localization
//! engine: determinant expansion, plain rational partial-fraction sums,
//! evaluation at random points and a floating-point quadrature.
//!
//! The quadrature is the only floating-point code in the crate.

use std::f64::consts::PI;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactalg::{LinFactoredRational, Polynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("nodes {0} and {1} coincide")]
    DuplicateNodes(usize, usize),
    #[error("expected {expected} nodes, got {found}")]
    NodeCount { expected: usize, found: usize },
}

/// Determinant of the Vandermonde matrix `V[i][j] = nodes[j]^i`, by Laplace
/// expansion along rows with memoised minors (indexed by column subsets).
pub fn vandermonde_det(nodes: &[Polynomial]) -> Polynomial {
    let s = nodes.len();
    let rank = nodes.first().map_or(1, Polynomial::rank);
    if s == 0 {
        return Polynomial::one(rank);
    }
    assert!(s < usize::BITS as usize, "too many nodes");
    let mut powers: Vec<Vec<Polynomial>> = Vec::with_capacity(s);
    for node in nodes {
        let mut row = vec![Polynomial::one(rank)];
        for i in 1..s {
            let next = &row[i - 1] * node;
            row.push(next);
        }
        powers.push(row);
    }
    // minor[mask] = det of rows 0..popcount(mask) restricted to the columns
    // in `mask`, expanded along its last row.
    let mut minor = vec![Polynomial::zero(rank); 1 << s];
    minor[0] = Polynomial::one(rank);
    for mask in 1usize..(1 << s) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = Polynomial::zero(rank);
        // Sign of column j is (-1)^(row + position of j within mask).
        let mut position = 0;
        for (j, col_powers) in powers.iter().enumerate() {
            if mask & (1 << j) == 0 {
                continue;
            }
            let sub = &minor[mask & !(1 << j)];
            if !sub.is_zero() {
                let term = &col_powers[row] * sub;
                acc = if (row + position).is_multiple_of(2) {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            position += 1;
        }
        minor[mask] = acc;
    }
    minor.pop().unwrap()
}

/// `Σ_i x_i^n / Π_{j≠i}(x_i - x_j)` over `n+1` distinct rationals, which
/// equals 1 for every choice of nodes.
pub fn lagrange_power_sum(n: u32, nodes: &[Rational]) -> Result<Rational, OracleError> {
    if nodes.len() != n as usize + 1 {
        return Err(OracleError::NodeCount {
            expected: n as usize + 1,
            found: nodes.len(),
        });
    }
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i] == nodes[j] {
                return Err(OracleError::DuplicateNodes(i, j));
            }
        }
    }
    let mut total = Rational::zero();
    for (i, xi) in nodes.iter().enumerate() {
        let mut num = Rational::one();
        for _ in 0..n {
            num *= xi;
        }
        let den = nodes
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(Rational::one(), |acc, (_, xj)| acc * (xi - xj));
        total += num / den;
    }
    Ok(total)
}

/// Random rational with numerator and denominator bounded by 10⁴.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(-10_000..=10_000);
    let den: i64 = rng.gen_range(1..=10_000);
    Rational::new(num.into(), den.into())
}

fn eval_sum(terms: &[LinFactoredRational], point: &[Rational]) -> Option<Rational> {
    terms
        .iter()
        .try_fold(Rational::zero(), |acc, t| Some(acc + t.eval(point).ok()?))
}

/// Checks `Σ terms = target` at `trials` seeded random points, resampling
/// points where some denominator vanishes (at most `10·trials` draws).
/// Returns false if the budget runs out.
pub fn sum_equal_by_evaluation(
    terms: &[LinFactoredRational],
    target: &LinFactoredRational,
    trials: usize,
    seed: u64,
) -> bool {
    let rank = target.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = 0;
    for _ in 0..trials.saturating_mul(10).max(1) {
        if passed == trials {
            break;
        }
        let point: Vec<Rational> = (0..rank).map(|_| random_rational(&mut rng)).collect();
        let (Some(lhs), Ok(rhs)) = (eval_sum(terms, &point), target.eval(&point)) else {
            continue;
        };
        if lhs != rhs {
            return false;
        }
        passed += 1;
    }
    passed == trials
}

/// Probabilistic equality of two rational functions by evaluation.
pub fn rat_equal_by_evaluation(a: &LinFactoredRational, b: &LinFactoredRational, trials: usize, seed: u64) -> bool {
    a.rank() == b.rank() && sum_equal_by_evaluation(std::slice::from_ref(a), b, trials, seed)
}

/// Composite midpoint rule for `∫_0^{2π} ∫_0^π sin φ dφ dθ` on a
/// `samples × samples` grid.
pub fn s2_area_quadrature(samples: usize) -> f64 {
    assert!(samples >= 2, "need at least two samples");
    let n = samples as f64;
    let dphi = PI / n;
    let dtheta = 2.0 * PI / n;
    // The integrand does not depend on θ, so each θ-row is the same sum.
    let row: f64 = (0..samples).map(|k| ((k as f64 + 0.5) * dphi).sin() * dphi).sum();
    (0..samples).map(|_| row * dtheta).sum()
}
