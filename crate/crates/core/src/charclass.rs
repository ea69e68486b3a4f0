//! Equivariant characteristic classes restricted to fixed components.
//!
//! At an isolated point the restriction of `c_k^T` is the `k`-th elementary
//! symmetric polynomial of the tangent weights and the Euler class is their
//! product. On a positive-dimensional component `F` the normal Euler class
//! is `Π_j (β_j + d_j h)` in `H_T(pt)[h] / (h^{m+1})`, `m = dimC F`, and its
//! inverse is a finite geometric series in `h`.

use std::fmt;

use thiserror::Error;

use crate::exactalg::{AlgebraError, LinFactoredRational, LinearForm, Polynomial, Rational};
use crate::model::{FixedComponent, FixedPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("class for {component:?} has {found} coefficients, expected {expected}")]
    Length {
        component: String,
        expected: usize,
        found: usize,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Coefficient ring of a truncated series.
pub trait SeriesCoefficient: Clone + fmt::Display {
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Result<Self, AlgebraError>;
    fn mul(&self, other: &Self) -> Result<Self, AlgebraError>;
}

impl SeriesCoefficient for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.rank())
    }
    fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(other)
    }
    fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_mul(other)
    }
}

impl SeriesCoefficient for LinFactoredRational {
    fn zero_like(&self) -> Self {
        LinFactoredRational::zero(self.rank())
    }
    fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(other)
    }
    fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_mul(other)
    }
}

/// `Σ_k c_k h^k` with `h^{len} = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Truncated<R> {
    coefficients: Vec<R>,
}

/// Polynomial-coefficient classes on a fixed component.
pub type TruncatedClass = Truncated<Polynomial>;

impl<R: SeriesCoefficient> Truncated<R> {
    /// Panics on an empty coefficient list.
    pub fn new(coefficients: Vec<R>) -> Self {
        assert!(
            !coefficients.is_empty(),
            "truncated series needs at least one coefficient"
        );
        Truncated { coefficients }
    }

    pub fn coefficients(&self) -> &[R] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<R> {
        self.coefficients
    }

    /// `m` where `h^{m+1} = 0`.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn top(&self) -> &R {
        self.coefficients.last().unwrap()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        let len = self.coefficients.len().min(other.coefficients.len());
        let zero = self.coefficients[0].zero_like();
        let mut out = vec![zero; len];
        for (i, a) in self.coefficients.iter().enumerate().take(len) {
            for (j, b) in other.coefficients.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(Truncated { coefficients: out })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        let len = self.coefficients.len().min(other.coefficients.len());
        let coefficients = self.coefficients[..len]
            .iter()
            .zip(&other.coefficients[..len])
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(Truncated { coefficients })
    }
}

impl TruncatedClass {
    /// `c` placed in degree 0 of a series of order `m`.
    pub fn constant(c: Polynomial, order: usize) -> Self {
        let zero = c.zero_like();
        let mut coefficients = vec![zero; order + 1];
        coefficients[0] = c;
        Truncated { coefficients }
    }

    /// `(a + b h)` truncated at order `m`.
    pub fn linear(a: Polynomial, b: Polynomial, order: usize) -> Self {
        let mut s = Self::constant(a, order);
        if order >= 1 {
            s.coefficients[1] = b;
        }
        s
    }

    pub fn pow(&self, k: u32) -> Self {
        let rank = self.coefficients[0].rank();
        let mut acc = Self::constant(Polynomial::one(rank), self.order());
        for _ in 0..k {
            acc = acc.try_mul(self).expect("ranks agree within a series");
        }
        acc
    }

    pub fn to_rational(&self) -> Truncated<LinFactoredRational> {
        Truncated {
            coefficients: self
                .coefficients
                .iter()
                .cloned()
                .map(LinFactoredRational::from_polynomial)
                .collect(),
        }
    }
}

/// `c0 + (c1)*h + ... + (cm)*h^m`.
impl<R: fmt::Display> fmt::Display for Truncated<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coefficients.iter().enumerate() {
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, " + ({c})*h")?,
                _ => write!(f, " + ({c})*h^{k}")?,
            }
        }
        Ok(())
    }
}

/// `ε_k(forms)`; `ε_0 = 1` and `ε_k = 0` for `k > forms.len()`.
pub fn elementary_symmetric(k: usize, forms: &[LinearForm], rank: usize) -> Polynomial {
    if k > forms.len() {
        return Polynomial::zero(rank);
    }
    // e[j] holds ε_j of the forms seen so far.
    let mut e = vec![Polynomial::zero(rank); k + 1];
    e[0] = Polynomial::one(rank);
    for (seen, f) in forms.iter().enumerate() {
        let fp = f.to_polynomial();
        for j in (1..=k.min(seen + 1)).rev() {
            e[j] = &e[j] + &(&e[j - 1] * &fp);
        }
    }
    e.swap_remove(k)
}

/// Product of the tangent weights.
pub fn euler_class_at(p: &FixedPoint) -> Polynomial {
    let rank = p.moment.rank();
    p.weights
        .iter()
        .fold(Polynomial::one(rank), |acc, w| &acc * &w.to_polynomial())
}

/// `c_k^T` restricted to `p`.
pub fn chern_restriction(k: usize, p: &FixedPoint) -> Polynomial {
    elementary_symmetric(k, &p.weights, p.moment.rank())
}

/// `1 / Π_j (β_j + d_j h)` truncated at `h^{m+1}`, `m = c.dim_c`.
pub fn inverse_euler_component(c: &FixedComponent) -> Result<Truncated<LinFactoredRational>, AlgebraError> {
    let rank = c.moment.rank();
    let order = c.dim_c;
    let mut acc = Truncated::new(
        std::iter::once(LinFactoredRational::one(rank))
            .chain(std::iter::repeat_n(LinFactoredRational::zero(rank), order))
            .collect(),
    );
    for w in &c.normal_weights {
        // (β + d h)^{-1} = Σ_k (-d)^k h^k / β^{k+1}
        let minus_d = Rational::from_integer((-w.c1_multiple).into());
        let mut numer = Rational::from_integer(1.into());
        let mut coefficients = Vec::with_capacity(order + 1);
        for k in 0..=order {
            coefficients.push(LinFactoredRational::new(
                Polynomial::constant(rank, numer.clone()),
                [(w.beta.clone(), k as u32 + 1)],
            )?);
            numer *= &minus_d;
        }
        acc = acc.try_mul(&Truncated::new(coefficients))?;
    }
    Ok(acc)
}

/// `∫_F restricted / e^T(ν_F)`: the `h^m` coefficient of the product with the
/// inverse Euler series, times `∫_F h^m`.
pub fn component_contribution(
    c: &FixedComponent,
    restricted: &TruncatedClass,
) -> Result<LinFactoredRational, ClassError> {
    if restricted.coefficients().len() != c.dim_c + 1 {
        return Err(ClassError::Length {
            component: c.name.clone(),
            expected: c.dim_c + 1,
            found: restricted.coefficients().len(),
        });
    }
    if c.dim_c == 0 {
        let betas: Vec<LinearForm> = c.normal_weights.iter().map(|w| w.beta.clone()).collect();
        let value = LinFactoredRational::over_product(restricted.coefficients()[0].clone(), &betas)?;
        return Ok(value.scale(&c.generator_integral));
    }
    let inverse = inverse_euler_component(c)?;
    let product = restricted.to_rational().try_mul(&inverse)?;
    Ok(product.top().scale(&c.generator_integral))
}
