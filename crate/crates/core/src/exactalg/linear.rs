use std::fmt;

use num_traits::{One, Zero};

use super::{AlgebraError, Polynomial, Rational};

/// A homogeneous linear form `Σ c_i t_i` with rational coefficients.
///
/// Weights of the torus action and moment values at fixed points both live
/// here. The zero form is representable; callers that need a weight reject it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    coefficients: Vec<Rational>,
}

impl LinearForm {
    pub fn new(coefficients: Vec<Rational>) -> Self {
        LinearForm { coefficients }
    }

    pub fn from_integers(coefficients: &[i64]) -> Self {
        LinearForm::new(coefficients.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero(rank: usize) -> Self {
        LinearForm::new(vec![Rational::zero(); rank])
    }

    /// The coordinate form `t_index`.
    pub fn var(rank: usize, index: usize) -> Self {
        let mut f = Self::zero(rank);
        f.coefficients[index] = Rational::one();
        f
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn leading_index(&self) -> Option<usize> {
        self.coefficients.iter().position(|c| !c.is_zero())
    }

    /// Splits `self = scalar · monic` where `monic` has leading coefficient 1.
    pub fn normalize(&self) -> Option<(Rational, LinearForm)> {
        let lead = self.coefficients[self.leading_index()?].clone();
        let inv = lead.recip();
        let monic = LinearForm::new(self.coefficients.iter().map(|c| c * &inv).collect());
        Some((lead, monic))
    }

    pub fn scale(&self, c: &Rational) -> LinearForm {
        LinearForm::new(self.coefficients.iter().map(|x| x * c).collect())
    }

    pub fn try_add(&self, other: &LinearForm) -> Result<LinearForm, AlgebraError> {
        if self.rank() != other.rank() {
            return Err(AlgebraError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(LinearForm::new(
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm::new(self.coefficients.iter().map(|c| -c.clone()).collect())
    }

    /// Places this form in coordinates `offset..offset+rank` of a rank
    /// `new_rank` torus.
    pub fn embed(&self, offset: usize, new_rank: usize) -> LinearForm {
        assert!(offset + self.rank() <= new_rank);
        let mut coefficients = vec![Rational::zero(); new_rank];
        coefficients[offset..offset + self.rank()].clone_from_slice(&self.coefficients);
        LinearForm::new(coefficients)
    }

    /// Pulls back along an integer map of shape `rank × new_rank`:
    /// the result has coefficients `mapᵀ · self`.
    pub fn pull_back(&self, map: &[Vec<i64>], new_rank: usize) -> LinearForm {
        let mut out = vec![Rational::zero(); new_rank];
        for (c, row) in self.coefficients.iter().zip(map) {
            if c.is_zero() {
                continue;
            }
            for (o, &m) in out.iter_mut().zip(row) {
                if m != 0 {
                    *o += c * Rational::from_integer(m.into());
                }
            }
        }
        LinearForm::new(out)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        if point.len() != self.rank() {
            return Err(AlgebraError::PointDimension {
                expected: self.rank(),
                found: point.len(),
            });
        }
        Ok(self
            .coefficients
            .iter()
            .zip(point)
            .fold(Rational::zero(), |acc, (c, x)| acc + c * x))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let rank = self.rank();
        Polynomial::from_terms(
            rank,
            self.coefficients.iter().enumerate().map(|(i, c)| {
                let mut e = vec![0; rank];
                e[i] = 1;
                (e, c.clone())
            }),
        )
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_polynomial().fmt(f)
    }
}
