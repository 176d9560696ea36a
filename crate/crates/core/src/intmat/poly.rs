use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Univariate integer polynomial in `t`, coefficients stored lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_ascending<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        Self::new(coeffs.into_iter().map(Into::into).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients in ascending degree order.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Horner evaluation.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

/// Descending powers with explicit signs: `t^2 - 6t + 1`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            if power == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => f.write_str("t")?,
                p => write!(f, "t^{p}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial term {term:?}")]
pub struct ParsePolynomialError {
    pub term: String,
}

/// Accepts the [`Display`](fmt::Display) rendering, with or without spaces.
impl FromStr for IntPolynomial {
    type Err = ParsePolynomialError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |term: &str| ParsePolynomialError {
            term: term.to_string(),
        };
        if compact.is_empty() {
            return Err(err(s));
        }
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        let mut terms = Vec::new();
        for i in 1..=bytes.len() {
            if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^')
            {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        for term in terms {
            let (negative, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, power) = match body.find('t') {
                None => (body.parse::<BigInt>().map_err(|_| err(term))?, 0usize),
                Some(pos) => {
                    let coef = if pos == 0 {
                        BigInt::one()
                    } else {
                        body[..pos].parse::<BigInt>().map_err(|_| err(term))?
                    };
                    let rest = &body[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|p| p.parse::<usize>().ok())
                            .ok_or_else(|| err(term))?
                    };
                    (coef, power)
                }
            };
            if coef.is_negative() {
                return Err(err(term));
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, BigInt::zero());
            }
            if negative {
                coeffs[power] -= coef;
            } else {
                coeffs[power] += coef;
            }
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn trims_trailing_zeros() {
        let p = IntPolynomial::from_ascending([1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(IntPolynomial::from_ascending([0, 0]).degree(), None);
    }

    #[test]
    fn renders_descending_with_signs() {
        assert_eq!(
            IntPolynomial::from_ascending([1, -6, 1]).to_string(),
            "t^2 - 6t + 1"
        );
        assert_eq!(
            IntPolynomial::from_ascending([-1, 0, 1]).to_string(),
            "t^2 - 1"
        );
        assert_eq!(IntPolynomial::from_ascending([0, -1]).to_string(), "-t");
        assert_eq!(
            IntPolynomial::from_ascending([3, 0, 0, -2]).to_string(),
            "-2t^3 + 3"
        );
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::from_ascending([-7]).to_string(), "-7");
    }

    #[test]
    fn parses_loose_spacing() {
        let p: IntPolynomial = "t^2-6t+1".parse().unwrap();
        assert_eq!(p, IntPolynomial::from_ascending([1, -6, 1]));
        assert!("t^".parse::<IntPolynomial>().is_err());
        assert!("".parse::<IntPolynomial>().is_err());
        assert!("2x".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn horner() {
        let p = IntPolynomial::from_ascending([1, -6, 1]);
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(-8));
    }

    proptest! {
        #[test]
        fn display_parses_back(c in prop::collection::vec(-50i64..50, 0..7)) {
            let p = IntPolynomial::from_ascending(c);
            prop_assert_eq!(p.to_string().parse::<IntPolynomial>().unwrap(), p);
        }
    }
}
