use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{AlgebraError, LinearForm, Polynomial, Rational};

/// A polynomial over a product of linear forms, `p / Π ℓ_i^{k_i}`.
///
/// Canonical form: every denominator factor is monic (first nonzero
/// coefficient 1, scalar absorbed into the numerator) and no factor divides
/// the numerator. Zero has an empty denominator. Under these rules two
/// values are equal as rational functions iff they are structurally equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinFactoredRational {
    numerator: Polynomial,
    denominator: BTreeMap<LinearForm, u32>,
}

impl LinFactoredRational {
    /// Builds `numerator / Π factors^mult` and cancels it fully.
    pub fn new<I>(numerator: Polynomial, factors: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (LinearForm, u32)>,
    {
        let rank = numerator.rank();
        let mut scale = Rational::one();
        let mut denominator = BTreeMap::new();
        for (f, mult) in factors {
            if f.rank() != rank {
                return Err(AlgebraError::RankMismatch {
                    left: rank,
                    right: f.rank(),
                });
            }
            let (lead, monic) = f.normalize().ok_or(AlgebraError::ZeroDivisor)?;
            if mult == 0 {
                continue;
            }
            for _ in 0..mult {
                scale *= &lead;
            }
            *denominator.entry(monic).or_insert(0) += mult;
        }
        let numerator = numerator.scale(&scale.recip());
        Ok(Self::cancelled(numerator, denominator))
    }

    /// `numerator / Π forms` for a list of (not necessarily distinct) forms.
    pub fn over_product(numerator: Polynomial, forms: &[LinearForm]) -> Result<Self, AlgebraError> {
        Self::new(numerator, forms.iter().map(|f| (f.clone(), 1)))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        LinFactoredRational {
            numerator: p,
            denominator: BTreeMap::new(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        Self::from_polynomial(Polynomial::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Self::from_polynomial(Polynomial::one(rank))
    }

    // Factors must already be monic.
    fn cancelled(mut numerator: Polynomial, mut denominator: BTreeMap<LinearForm, u32>) -> Self {
        if numerator.is_zero() {
            denominator.clear();
        }
        denominator.retain(|f, mult| {
            while *mult > 0 {
                match numerator.divide_linear(f).expect("denominator factor rank checked") {
                    Some(q) => {
                        numerator = q;
                        *mult -= 1;
                    }
                    None => break,
                }
            }
            *mult > 0
        });
        LinFactoredRational { numerator, denominator }
    }

    pub fn rank(&self) -> usize {
        self.numerator.rank()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    /// Distinct monic factors with multiplicities.
    pub fn denominator(&self) -> &BTreeMap<LinearForm, u32> {
        &self.denominator
    }

    /// Total degree of the denominator.
    pub fn denominator_degree(&self) -> u32 {
        self.denominator.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.numerator)
    }

    pub fn into_polynomial(self) -> Result<Polynomial, Self> {
        if self.is_polynomial() {
            Ok(self.numerator)
        } else {
            Err(self)
        }
    }

    fn check_rank(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.rank() == other.rank() {
            Ok(())
        } else {
            Err(AlgebraError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            })
        }
    }

    /// `Π_{f ∈ full} f^{full[f] - part[f]}` as a polynomial.
    fn cofactor(rank: usize, full: &BTreeMap<LinearForm, u32>, part: &BTreeMap<LinearForm, u32>) -> Polynomial {
        let mut acc = Polynomial::one(rank);
        for (f, &m) in full {
            let missing = m - part.get(f).copied().unwrap_or(0);
            if missing > 0 {
                acc = &acc * &f.to_polynomial().pow(missing);
            }
        }
        acc
    }

    /// Sum over the common denominator (per-factor maximum multiplicity),
    /// followed by greedy cancellation.
    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let mut common = self.denominator.clone();
        for (f, &m) in &other.denominator {
            let e = common.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
        let rank = self.rank();
        let left = &self.numerator * &Self::cofactor(rank, &common, &self.denominator);
        let right = &other.numerator * &Self::cofactor(rank, &common, &other.denominator);
        Ok(Self::cancelled(&left + &right, common))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_rank(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.rank()));
        }
        let mut denominator = self.denominator.clone();
        for (f, &m) in &other.denominator {
            *denominator.entry(f.clone()).or_insert(0) += m;
        }
        Ok(Self::cancelled(&self.numerator * &other.numerator, denominator))
    }

    pub fn neg(&self) -> Self {
        LinFactoredRational {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank());
        }
        LinFactoredRational {
            numerator: self.numerator.scale(c),
            denominator: self.denominator.clone(),
        }
    }

    pub fn mul_polynomial(&self, p: &Polynomial) -> Result<Self, AlgebraError> {
        self.try_mul(&Self::from_polynomial(p.clone()))
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        let mut den = Rational::one();
        for (f, &m) in &self.denominator {
            let v = f.eval(point)?;
            if v.is_zero() {
                return Err(AlgebraError::DenominatorVanishes { factor: f.clone() });
            }
            for _ in 0..m {
                den *= &v;
            }
        }
        Ok(self.numerator.eval(point)? / den)
    }

    /// Renders the denominator as `(ℓ1)^2*(ℓ2)`, or `1` when empty.
    pub fn denominator_string(&self) -> String {
        if self.denominator.is_empty() {
            return "1".to_string();
        }
        self.denominator
            .iter()
            .map(|(f, &m)| if m == 1 { format!("({f})") } else { format!("({f})^{m}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl From<Polynomial> for LinFactoredRational {
    fn from(p: Polynomial) -> Self {
        Self::from_polynomial(p)
    }
}

impl fmt::Display for LinFactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            self.numerator.fmt(f)
        } else {
            write!(f, "({}) / {}", self.numerator, self.denominator_string())
        }
    }
}
