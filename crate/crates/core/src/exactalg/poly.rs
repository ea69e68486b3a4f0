use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{abs_is_one, format_rational, Rational};
use super::{AlgebraError, LinearForm};

/// Exponent vector of a monomial in `t0..t{r-1}`.
///
/// The derived ordering compares total degree first and then exponents
/// lexicographically, which is graded-lex with `t0 > t1 > …`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Monomial { degree, exponents }
    }

    pub fn one(rank: usize) -> Self {
        Monomial {
            degree: 0,
            exponents: vec![0; rank],
        }
    }

    pub fn var(rank: usize, index: usize) -> Self {
        let mut exponents = vec![0; rank];
        exponents[index] = 1;
        Monomial { degree: 1, exponents }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn times_var(&self, index: usize) -> Monomial {
        let mut m = self.clone();
        m.exponents[index] += 1;
        m.degree += 1;
        m
    }

    fn div_var(&self, index: usize) -> Option<Monomial> {
        if self.exponents[index] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exponents[index] -= 1;
        m.degree -= 1;
        Some(m)
    }
}

/// Sparse polynomial over ℚ with no stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    rank: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(rank: usize) -> Self {
        Polynomial {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, Rational::one())
    }

    pub fn constant(rank: usize, c: Rational) -> Self {
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(rank), c);
        }
        p
    }

    pub fn var(rank: usize, index: usize) -> Self {
        assert!(index < rank, "variable t{index} out of range for rank {rank}");
        let mut p = Self::zero(rank);
        p.terms.insert(Monomial::var(rank, index), Rational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(rank: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(rank);
        for (exps, c) in terms {
            assert_eq!(exps.len(), rank, "exponent vector length must equal rank");
            p.add_term(Monomial::new(exps), c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&Monomial::new(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    /// The constant value if this polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.degree() {
            None => Some(Rational::zero()),
            Some(0) => self.terms.values().next().cloned(),
            Some(_) => None,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        accumulate(&mut self.terms, m, c);
    }

    fn check_rank(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(AlgebraError::RankMismatch {
                left: self.rank,
                right: other.rank,
            })
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_rank(other)?;
        let (mut acc, rest) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &rest.terms {
            acc.add_term(m.clone(), c.clone());
        }
        Ok(acc)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_rank(other)?;
        let mut acc = self.clone();
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), -c.clone());
        }
        Ok(acc)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_rank(other)?;
        let mut acc = Polynomial::zero(self.rank);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.rank);
        }
        Polynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.rank);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient by a nonzero linear form, or `None` if `f` does not
    /// divide `self`.
    ///
    /// Runs graded-lex division; the leading monomial of `f` is the variable
    /// with the lowest index carrying a nonzero coefficient, so the first
    /// leading term not divisible by it proves a nonzero remainder.
    pub fn divide_linear(&self, f: &LinearForm) -> Result<Option<Polynomial>, AlgebraError> {
        if f.rank() != self.rank {
            return Err(AlgebraError::RankMismatch {
                left: self.rank,
                right: f.rank(),
            });
        }
        let pivot = f.leading_index().ok_or(AlgebraError::ZeroDivisor)?;
        let coeffs = f.coefficients();
        let inv_lead = coeffs[pivot].recip();
        let support: Vec<(usize, &Rational)> = coeffs
            .iter()
            .enumerate()
            .filter(|(j, c)| *j != pivot && !c.is_zero())
            .collect();

        let mut rem = self.terms.clone();
        let mut quotient = Polynomial::zero(self.rank);
        while let Some((lead, lc)) = rem.pop_last() {
            let Some(qm) = lead.div_var(pivot) else {
                return Ok(None);
            };
            let qc = lc * &inv_lead;
            for &(j, fj) in &support {
                accumulate(&mut rem, qm.times_var(j), -(&qc * fj));
            }
            quotient.terms.insert(qm, qc);
        }
        Ok(Some(quotient))
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        if point.len() != self.rank {
            return Err(AlgebraError::PointDimension {
                expected: self.rank,
                found: point.len(),
            });
        }
        let mut powers: Vec<Vec<Rational>> = point.iter().map(|x| vec![Rational::one(), x.clone()]).collect();
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &point[i];
                    cache.push(next);
                }
                term *= &cache[e as usize];
            }
            total += term;
        }
        Ok(total)
    }

    /// Substitutes `t_i ↦ images[i]`, producing a polynomial in the rank of
    /// the images.
    pub fn substitute(&self, images: &[LinearForm], new_rank: usize) -> Result<Polynomial, AlgebraError> {
        if images.len() != self.rank {
            return Err(AlgebraError::RankMismatch {
                left: self.rank,
                right: images.len(),
            });
        }
        if let Some(bad) = images.iter().find(|f| f.rank() != new_rank) {
            return Err(AlgebraError::RankMismatch {
                left: new_rank,
                right: bad.rank(),
            });
        }
        let bases: Vec<Polynomial> = images.iter().map(LinearForm::to_polynomial).collect();
        let mut powers: Vec<Vec<Polynomial>> = bases
            .iter()
            .map(|b| vec![Polynomial::one(new_rank), b.clone()])
            .collect();
        let mut acc = Polynomial::zero(new_rank);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(new_rank, c.clone());
            for (i, &e) in m.exponents.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &bases[i];
                    cache.push(next);
                }
                term = &term * &cache[e as usize];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

fn accumulate(terms: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match terms.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl From<&LinearForm> for Polynomial {
    fn from(f: &LinearForm) -> Self {
        f.to_polynomial()
    }
}

// Operator forms panic on rank mismatch; use the `try_*` methods for
// unchecked input.
impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial rank mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial rank mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial rank mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "t{i}")?;
        } else {
            write!(f, "t{i}^{e}")?;
        }
    }
    Ok(())
}

/// Graded-lex descending, e.g. `t0^2 - 2/3*t0*t1 + 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.degree == 0 {
                f.write_str(&format_rational(&mag))?;
            } else {
                if !abs_is_one(&mag) {
                    write!(f, "{}*", format_rational(&mag))?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}
