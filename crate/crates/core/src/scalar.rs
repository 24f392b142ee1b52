//! Exact scalars: big rationals and square roots of nonnegative rationals.

use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number used for every measure weight and density value.
pub type Rational = BigRational;

/// Builds `n/d` as an exact rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {text:?} as a rational (expected \"p\" or \"p/q\")")]
pub struct ParseRationalError {
    pub text: String,
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError {
        text: text.to_string(),
    };
    let trimmed = text.trim();
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, always reduced.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn rational_to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

fn exact_integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a rational, when the rational is a perfect square.
pub fn rational_sqrt(value: &Rational) -> Option<Rational> {
    let num = exact_integer_sqrt(value.numer())?;
    let den = exact_integer_sqrt(value.denom())?;
    Some(Rational::new(num, den))
}

/// The nonnegative real number `√q` for a nonnegative rational `q`, stored as `q`.
///
/// Products and quotients stay exact, which is all the rescaling formulas need.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SqrtRational {
    square: Rational,
}

impl SqrtRational {
    /// `√square`; `None` when `square` is negative.
    pub fn new(square: Rational) -> Option<Self> {
        (!square.is_negative()).then_some(Self { square })
    }

    pub fn zero() -> Self {
        Self {
            square: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        Self {
            square: Rational::one(),
        }
    }

    /// The value `q` itself, encoded as `√(q²)`.
    pub fn from_rational(value: &Rational) -> Option<Self> {
        Self::new(value * value).filter(|_| !value.is_negative())
    }

    pub fn square(&self) -> &Rational {
        &self.square
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.square.is_one()
    }

    /// The value as a rational, when it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        rational_sqrt(&self.square)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.square).sqrt()
    }

    pub fn recip(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self {
            square: self.square.recip(),
        })
    }
}

impl Mul for &SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: &SqrtRational) -> SqrtRational {
        SqrtRational {
            square: &self.square * &rhs.square,
        }
    }
}

impl Mul for SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: SqrtRational) -> SqrtRational {
        &self * &rhs
    }
}

impl Div for &SqrtRational {
    type Output = SqrtRational;
    /// Panics when dividing by zero.
    fn div(self, rhs: &SqrtRational) -> SqrtRational {
        assert!(!rhs.is_zero(), "division by zero square root");
        SqrtRational {
            square: &self.square / &rhs.square,
        }
    }
}

impl fmt::Display for SqrtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "sqrt({})", self.square),
        }
    }
}
