//! Exact coefficient fields: the rationals, the cyclotomic field `Q(w)` for
//! an odd prime `p`, and rational functions over `Q(w)` in named parameters.
//!
//! Everything that does linear algebra or polynomial arithmetic in this crate
//! is generic over [`FieldElem`]. Elements carry enough context (the prime,
//! the parameter ring) to build their own zero and one, so no separate field
//! object has to be threaded through.

mod cyclotomic;
mod paramrat;
mod parse;

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{is_prime, CycNum};
pub use paramrat::{ParamRat, ParamRing};
pub use parse::parse_cyc;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

/// Build a rational from a numerator and a nonzero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Arithmetic needed by the polynomial and linear-algebra layers.
pub trait FieldElem: Clone + PartialEq + Eq + Debug + Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_int_like(&self, n: i64) -> Self;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// True when the printed form needs parentheses as a product factor.
    fn is_compound(&self) -> bool {
        false
    }

    /// True when the printed form starts with a minus sign.
    fn is_negative_display(&self) -> bool {
        false
    }
}

impl FieldElem for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int_like(&self, n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
    fn is_negative_display(&self) -> bool {
        self.is_negative()
    }
}

/// Render a rational as `"num/den"` (or `"num"` when the denominator is 1).
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"num"` or `"num/den"`.
pub fn rational_from_str(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let bad = || crate::Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(crate::Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(rational_to_string(&rat(6, -4)), "-3/2");
        assert_eq!(rational_to_string(&rat(4, 2)), "2");
        assert_eq!(rational_from_str("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(rational_from_str("1/0"), Err(crate::Error::DivisionByZero));
        assert!(rational_from_str("x").is_err());
    }

    #[test]
    fn rational_is_normalized() {
        let r = rat(10, -4);
        assert_eq!(*r.denom(), BigInt::from(2));
        assert_eq!(*r.numer(), BigInt::from(-5));
        assert_eq!(rat(0, 7), rat(0, 1));
    }
}
