//! Exact rational scalars.
//!
//! [`Rational`] wraps an arbitrary-precision fraction that is always kept in
//! lowest terms with a positive denominator. It is the only scalar used by the
//! constructions; nothing upstream of the dimension estimate touches floats.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

/// Builds `numer/denom` in lowest terms. The sign ends up on the numerator.
pub fn rat(numer: i64, denom: i64) -> Result<Rational> {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    /// `1 / base^exp`.
    pub fn inverse_power(base: u64, exp: u32) -> Self {
        Rational(BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(base), exp as usize)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    /// Exact midpoint of `self` and `other`.
    pub fn midpoint(&self, other: &Rational) -> Self {
        Rational((&self.0 + &other.0) / BigInt::from(2))
    }

    /// `floor(self + 1/2)`, the round-half-up integer.
    pub fn round_half_up(&self) -> BigInt {
        (&self.0 + BigRational::new(BigInt::one(), BigInt::from(2)))
            .floor()
            .to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        // Scale down large operands before converting so that huge
        // denominators do not overflow to inf/inf.
        match (self.0.numer().to_f64(), self.0.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                let shift = self.0.denom().bits().max(self.0.numer().bits()).saturating_sub(1000);
                let n = (self.0.numer() >> shift).to_f64().unwrap_or(f64::NAN);
                let d = (self.0.denom() >> shift).to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    /// True when the reduced denominator divides `modulus`.
    pub fn denom_divides(&self, modulus: &BigInt) -> bool {
        modulus.is_multiple_of(self.denom())
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    /// Always `num/den`, including `0/1` and `1/1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `[+-]num/den` or a bare integer.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse {
            message: format!("malformed fraction {s:?}"),
            line: 1,
            column: 1,
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let valid_int = |t: &str, signed: bool| {
            let digits = if signed { t.strip_prefix(['+', '-']).unwrap_or(t) } else { t };
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid_int(num, true) || !valid_int(den, false) {
            return Err(bad());
        }
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Rational::new(num, den)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Division by zero panics like integer division; callers validate first.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer(BigInt::from(*other))
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer(BigInt::from(*other)))
    }
}

/// Shorthand used throughout the tests: `q(1, 3)` is one third.
/// Panics on a zero denominator.
pub fn q(numer: i64, denom: i64) -> Rational {
    rat(numer, denom).expect("nonzero denominator")
}
