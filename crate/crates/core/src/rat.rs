//! Exact rational scalars.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn from_bigints(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer, denom))
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    /// `Some(n)` when the value is the nonpositive integer `-n`.
    pub fn as_nonpositive_int(&self) -> Option<u64> {
        if self.is_integer() && !self.0.is_positive() {
            (-self.numer()).to_u64()
        } else {
            None
        }
    }

    /// `Some(n)` when the value is a nonnegative integer.
    pub fn as_nonnegative_int(&self) -> Option<u64> {
        if self.is_integer() && !self.0.is_negative() {
            self.numer().to_u64()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat(self.0.recip())
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// `2^e` for a possibly negative exponent.
    pub fn pow2(e: i64) -> Self {
        let p = BigInt::one() << e.unsigned_abs();
        if e >= 0 {
            Rat::from_int(p)
        } else {
            Rat::from_bigints(BigInt::one(), p)
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Rat::one();
        for _ in 0..e {
            acc *= self;
        }
        acc
    }

    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `[-]digits` or `[-]digits/digits` with a nonzero denominator.
    /// Non-canonical input such as `2/4` is accepted and reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRatError(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let digits = num.strip_prefix('-').unwrap_or(num);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let numer: BigInt = num.parse().map_err(|_| err())?;
        let denom: BigInt = match den {
            None => BigInt::one(),
            Some(d) => {
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err());
                }
                d.parse().map_err(|_| err())?
            }
        };
        if denom.is_zero() {
            return Err(err());
        }
        Ok(Rat::from_bigints(numer, denom))
    }
}

impl Rat {
    /// Parses and additionally requires the text to be the canonical
    /// rendering (lowest terms, no `/1`).
    pub fn parse_canonical(s: &str) -> Result<Self, ParseRatError> {
        let r: Rat = s.parse()?;
        if r.to_string() == s {
            Ok(r)
        } else {
            Err(ParseRatError(s.to_string()))
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $tr<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl std::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl std::iter::Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let r = Rat::new(4, -6);
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(Rat::new(6, 3).to_string(), "2");
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn parse() {
        assert_eq!("3".parse::<Rat>().unwrap(), Rat::from(3));
        assert_eq!("-7/14".parse::<Rat>().unwrap(), Rat::new(-1, 2));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("1/-2".parse::<Rat>().is_err());
        assert!("+1".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
        assert!(Rat::parse_canonical("2/4").is_err());
        assert!(Rat::parse_canonical("4/1").is_err());
        assert_eq!(Rat::parse_canonical("-1/2").unwrap(), Rat::new(-1, 2));
    }

    #[test]
    fn integer_views() {
        assert_eq!(Rat::from(-5).as_nonpositive_int(), Some(5));
        assert_eq!(Rat::zero().as_nonpositive_int(), Some(0));
        assert_eq!(Rat::from(2).as_nonpositive_int(), None);
        assert_eq!(Rat::new(-1, 2).as_nonpositive_int(), None);
        assert_eq!(Rat::pow2(-3), Rat::new(1, 8));
        assert_eq!(Rat::pow2(4), Rat::from(16));
    }
}
