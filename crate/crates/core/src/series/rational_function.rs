use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Polynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `numerator / denominator` in lowest terms with `denominator(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRationalFunction")]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

#[derive(Deserialize)]
struct RawRationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl TryFrom<RawRationalFunction> for RationalFunction {
    type Error = Error;

    fn try_from(raw: RawRationalFunction) -> Result<Self> {
        RationalFunction::new(raw.numerator, raw.denominator)
    }
}

impl RationalFunction {
    /// Normalizes to coprime form with unit constant term in the denominator.
    ///
    /// Fails if the denominator is zero or still vanishes at `t = 0` after
    /// cancellation (no power-series expansion exists).
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if numerator.is_zero() {
            return Ok(Self::from_polynomial(Polynomial::zero()));
        }
        let g = numerator.gcd(&denominator);
        let (num, _) = numerator.div_rem(&g);
        let (den, _) = denominator.div_rem(&g);
        let c0 = den.coeff(0);
        if c0.is_zero() {
            return Err(Error::InvalidInput(format!(
                "denominator {den} vanishes at t=0; no power-series expansion"
            )));
        }
        let inv = c0.recip();
        Ok(Self {
            numerator: num.scale(&inv),
            denominator: den.scale(&inv),
        })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Self {
            numerator: p,
            denominator: Polynomial::one(),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.degree() == Some(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.numerator * &other.denominator) + &(&other.numerator * &self.denominator);
        let den = &self.denominator * &other.denominator;
        Self::new(num, den).expect("product of unit-constant denominators")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let num = &self.numerator * &other.numerator;
        let den = &self.denominator * &other.denominator;
        Self::new(num, den).expect("product of unit-constant denominators")
    }

    pub fn scale(&self, by: &Rational) -> Self {
        Self::new(self.numerator.scale(by), self.denominator.clone())
            .expect("scaling keeps a valid denominator")
    }

    /// First `n` coefficients of the Taylor expansion at `t = 0`.
    pub fn expand(&self, n: usize) -> Vec<Rational> {
        let den = self.denominator.coeffs();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.numerator.coeff(k);
            for (i, d) in den.iter().enumerate().skip(1).take(k) {
                c -= d * &out[k - i];
            }
            out.push(c);
        }
        out
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        let den = self.denominator.eval(t);
        if den.is_zero() {
            return Err(Error::PoleAtOne);
        }
        Ok(self.numerator.eval(t) / den)
    }

    /// The regularized value: the function evaluated at `t = 1`.
    ///
    /// Numerator and denominator are coprime, so a vanishing denominator at
    /// `t = 1` is a genuine pole.
    pub fn eval_at_one(&self) -> Result<Rational> {
        self.eval(&Rational::one())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = self.numerator.to_string();
        if self.is_polynomial() {
            return f.write_str(&num);
        }
        let num = if self
            .numerator
            .coeffs()
            .iter()
            .filter(|c| !c.is_zero())
            .count()
            > 1
        {
            format!("({num})")
        } else {
            num
        };
        write!(f, "{num}/({})", self.denominator)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Polynomial::from_ints(num), Polynomial::from_ints(den)).unwrap()
    }

    #[test]
    fn normalizes() {
        // (2 + 2t)/(2 + 8t + 6t^2) = 1/(1+3t)
        assert_eq!(rf(&[2, 2], &[2, 8, 6]), rf(&[1], &[1, 3]));
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::zero()).is_err());
        assert!(RationalFunction::new(Polynomial::one(), Polynomial::from_ints(&[0, 1])).is_err());
    }

    #[test]
    fn expansion() {
        assert_eq!(
            rf(&[0, -1], &[1, 4, 3]).expand(5),
            vec![int(0), int(-1), int(4), int(-13), int(40)]
        );
        assert_eq!(
            rf(&[2], &[1, 3]).expand(4),
            vec![int(2), int(-6), int(18), int(-54)]
        );
    }

    #[test]
    fn values_at_one() {
        assert_eq!(rf(&[1], &[1, 1]).eval_at_one().unwrap(), rat(1, 2));
        assert_eq!(rf(&[0, -1], &[1, 4, 3]).eval_at_one().unwrap(), rat(-1, 8));
        let diff = rf(&[2], &[1, 15]).sub(&rf(&[1], &[1, 3]));
        assert_eq!(diff.eval_at_one().unwrap(), rat(-1, 8));
        assert_eq!(rf(&[1], &[1, -1]).eval_at_one(), Err(Error::PoleAtOne));
    }

    #[test]
    fn display() {
        assert_eq!(rf(&[0, -1], &[1, 4, 3]).to_string(), "-t/(1 + 4t + 3t^2)");
        assert_eq!(rf(&[1, 1], &[1, 3]).to_string(), "(1 + t)/(1 + 3t)");
        assert_eq!(rf(&[1, 2, 1], &[1]).to_string(), "1 + 2t + t^2");
    }
}
