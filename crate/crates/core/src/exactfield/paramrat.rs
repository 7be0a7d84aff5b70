use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::{CycNum, FieldElem};
use crate::multipoly::{div_exact, poly_gcd, MonomialOrder, MultiPoly, PolyRing, RingHandle};
use crate::{Error, Result};

/// Polynomial ring over `Q(w_p)` in named parameters, graded-lex ordered.
pub type ParamRing = PolyRing<CycNum>;

/// A rational function in symbolic parameters with `Q(w_p)` coefficients.
///
/// Always stored in lowest terms with a monic denominator, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamRat {
    num: MultiPoly<CycNum>,
    den: MultiPoly<CycNum>,
}

impl ParamRat {
    /// Parameter ring for the given names.
    pub fn ring(p: u32, names: &[&str]) -> Result<Arc<ParamRing>> {
        CycNum::reduce(p, &[])?;
        Ok(PolyRing::new(
            names.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grlex,
            CycNum::one(p),
        ))
    }

    pub fn new(num: MultiPoly<CycNum>, den: MultiPoly<CycNum>) -> Result<ParamRat> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        num.checked_add(&den)?;
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(num: MultiPoly<CycNum>) -> ParamRat {
        let den = num.ring().one();
        Self::canonical(num, den)
    }

    pub fn param(ring: &Arc<ParamRing>, i: usize) -> ParamRat {
        Self::from_poly(ring.var(i))
    }

    pub fn constant(ring: &Arc<ParamRing>, c: CycNum) -> ParamRat {
        Self::from_poly(ring.constant(c))
    }

    pub fn numerator(&self) -> &MultiPoly<CycNum> {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly<CycNum> {
        &self.den
    }

    fn canonical(num: MultiPoly<CycNum>, den: MultiPoly<CycNum>) -> ParamRat {
        if num.is_zero() {
            let one = den.ring().one();
            return ParamRat { num, den: one };
        }
        let g = poly_gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (
                div_exact(&num, &g).expect("gcd divides numerator"),
                div_exact(&den, &g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        ParamRat { num, den }
    }

    /// Substitute values for the parameters.
    pub fn evaluate(&self, point: &[CycNum]) -> Result<CycNum> {
        let n = self.num.evaluate(point)?;
        let d = self.den.evaluate(point)?;
        n.div(&d).ok_or(Error::DivisionByZero)
    }
}

impl FieldElem for ParamRat {
    fn zero_like(&self) -> Self {
        ParamRat {
            num: self.num.ring().zero(),
            den: self.num.ring().one(),
        }
    }
    fn one_like(&self) -> Self {
        ParamRat {
            num: self.num.ring().one(),
            den: self.num.ring().one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num == self.den
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::canonical(self.num.add(&other.num), self.den.clone());
        }
        Self::canonical(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.zero_like();
        }
        Self::canonical(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        ParamRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::canonical(self.den.clone(), self.num.clone()))
    }
    fn from_int_like(&self, n: i64) -> Self {
        let p = self.num.ring().one_coeff().prime();
        Self::constant(self.num.ring(), CycNum::from_int(p, n))
    }
    fn is_compound(&self) -> bool {
        self.num.num_terms() > 1 || !self.den.is_constant()
    }
    fn is_negative_display(&self) -> bool {
        !self.is_compound() && self.to_string().starts_with('-')
    }
}

impl fmt::Display for ParamRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Serialize for ParamRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (&self.num, &self.den).serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;

    #[test]
    fn canonical_form() {
        let r = ParamRat::ring(5, &["a", "b"]).unwrap();
        let a = ParamRat::param(&r, 0);
        let b = ParamRat::param(&r, 1);
        let one = a.one_like();
        // (a^2 - b^2) / (2a + 2b) == (a - b) / 2
        let num = a.mul(&a).sub(&b.mul(&b));
        let two = one.from_int_like(2);
        let den = two.mul(&a.add(&b));
        let q = num.div(&den).unwrap();
        let expect = a.sub(&b).mul(&two.inv().unwrap());
        assert_eq!(q, expect);
        assert!(q.denominator().is_constant());
        assert_eq!(q.to_string(), "1/2*a - 1/2*b");
    }

    #[test]
    fn field_laws_on_samples() {
        let r = ParamRat::ring(5, &["a", "b"]).unwrap();
        let a = ParamRat::param(&r, 0);
        let b = ParamRat::param(&r, 1);
        let w = ParamRat::constant(&r, CycNum::omega(5));
        let x = a.add(&w).div(&b.sub(&a)).unwrap();
        let y = b.mul(&b).add(&a.one_like()).inv().unwrap();
        assert!(x.mul(&x.inv().unwrap()).is_one());
        assert_eq!(x.add(&y).sub(&y), x);
        assert_eq!(x.mul(&y).div(&y).unwrap(), x);
        // denominators normalized to leading coefficient 1
        assert!(x.denominator().leading_coeff().unwrap().is_one());
        assert!(x.zero_like().is_zero());
    }

    #[test]
    fn evaluation() {
        let r = ParamRat::ring(5, &["a", "b"]).unwrap();
        let a = ParamRat::param(&r, 0);
        let b = ParamRat::param(&r, 1);
        let x = a.div(&b.add(&a.one_like())).unwrap();
        let v = x
            .evaluate(&[CycNum::from_int(5, 3), CycNum::from_int(5, 1)])
            .unwrap();
        assert_eq!(v, CycNum::from_rational(5, rat(3, 2)));
        assert_eq!(
            x.evaluate(&[CycNum::from_int(5, 3), CycNum::from_int(5, -1)]),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn zero_denominator_rejected() {
        let r = ParamRat::ring(3, &["t"]).unwrap();
        assert_eq!(
            ParamRat::new(r.one(), r.zero()).unwrap_err(),
            Error::DivisionByZero
        );
    }
}
