use num_traits::One;

use super::rational::parse_rational;
use super::{AlgebraError, Monomial, Polynomial, Rational};

/// Parses the canonical polynomial text format (`t0^2 - 2/3*t0*t1 + 1`).
///
/// Accepts any term order, repeated variables within a term and arbitrary
/// whitespace; every variable index must be below `rank`.
pub fn parse_polynomial(text: &str, rank: usize) -> Result<Polynomial, AlgebraError> {
    Parser {
        src: text.as_bytes(),
        pos: 0,
        rank,
    }
    .polynomial()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    rank: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, AlgebraError> {
        Err(AlgebraError::InvalidPolynomial {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn polynomial(mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = Polynomial::zero(self.rank);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -Rational::one()
            }
            Some(b'+') => {
                self.pos += 1;
                Rational::one()
            }
            Some(_) => Rational::one(),
            None => return self.err("empty polynomial"),
        };
        loop {
            let (m, c) = self.term()?;
            acc.add_term(m, c * &sign);
            sign = match self.peek() {
                None => return Ok(acc),
                Some(b'+') => Rational::one(),
                Some(b'-') => -Rational::one(),
                Some(b) => return self.err(format!("unexpected {:?}", b as char)),
            };
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rational), AlgebraError> {
        let mut exps = vec![0u32; self.rank];
        let mut coeff = Rational::one();
        loop {
            match self.peek() {
                Some(b't') => {
                    self.pos += 1;
                    let idx = self.digits();
                    let Ok(i) = idx.parse::<usize>() else {
                        return self.err("expected variable index after 't'");
                    };
                    if i >= self.rank {
                        return self.err(format!("variable t{i} exceeds rank {}", self.rank));
                    }
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        let Ok(v) = self.digits().parse::<u32>() else {
                            return self.err("expected exponent after '^'");
                        };
                        e = v;
                    }
                    exps[i] += e;
                }
                Some(b) if b.is_ascii_digit() => {
                    let start = self.pos;
                    self.digits();
                    if self.src.get(self.pos) == Some(&b'/') {
                        self.pos += 1;
                        self.digits();
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    match parse_rational(text) {
                        Ok(q) => coeff *= q,
                        Err(_) => return self.err(format!("invalid coefficient {text:?}")),
                    }
                }
                _ => return self.err("expected coefficient or variable"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((Monomial::new(exps), coeff));
            }
        }
    }
}
