use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{rational_from_str, rational_to_string, FieldElem, Rational};
use crate::{Error, Result};

/// Primality test for the small primes used as cyclotomic orders.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u32) -> Result<()> {
    if p >= 3 && is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

/// An element of `Q(w)` with `w` a primitive `p`-th root of unity.
///
/// Stored as `sum coeffs[i] * w^i` over the basis `1, w, ..., w^(p-2)`;
/// `w^(p-1)` is always rewritten as `-(1 + w + ... + w^(p-2))`, so equal
/// numbers have equal coefficient vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNum {
    p: u32,
    coeffs: Vec<Rational>,
}

impl CycNum {
    /// Reduce `sum raw[i] * w^i` (any length) to the canonical basis.
    pub fn reduce(p: u32, raw: &[Rational]) -> Result<CycNum> {
        check_prime(p)?;
        Ok(Self::reduce_unchecked(p, raw))
    }

    pub(crate) fn reduce_unchecked(p: u32, raw: &[Rational]) -> CycNum {
        let n = p as usize;
        let mut folded = vec![Rational::zero(); n];
        for (i, c) in raw.iter().enumerate() {
            if !Zero::is_zero(c) {
                folded[i % n] += c;
            }
        }
        let top = folded.pop().unwrap();
        if !Zero::is_zero(&top) {
            for c in folded.iter_mut() {
                *c -= &top;
            }
        }
        CycNum { p, coeffs: folded }
    }

    pub fn zero(p: u32) -> CycNum {
        CycNum {
            p,
            coeffs: vec![Rational::zero(); p as usize - 1],
        }
    }

    pub fn one(p: u32) -> CycNum {
        Self::from_rational(p, Rational::one())
    }

    pub fn from_int(p: u32, n: i64) -> CycNum {
        Self::from_rational(p, Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(p: u32, r: Rational) -> CycNum {
        let mut c = Self::zero(p);
        c.coeffs[0] = r;
        c
    }

    /// `w^k` for any integer exponent.
    pub fn omega_pow(p: u32, k: i64) -> CycNum {
        let e = k.rem_euclid(p as i64) as usize;
        let mut raw = vec![Rational::zero(); p as usize];
        raw[e] = Rational::one();
        Self::reduce_unchecked(p, &raw)
    }

    pub fn omega(p: u32) -> CycNum {
        Self::omega_pow(p, 1)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// True when the number lies in the rational subfield.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the number is rational.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    fn same_prime(&self, other: &CycNum) {
        assert_eq!(
            self.p, other.p,
            "cyclotomic numbers over different primes"
        );
    }

    pub fn checked_add(&self, other: &CycNum) -> Result<CycNum> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(FieldElem::add(self, other))
    }

    pub fn checked_mul(&self, other: &CycNum) -> Result<CycNum> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Ok(FieldElem::mul(self, other))
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        self.div(other).ok_or(Error::DivisionByZero)
    }

    pub fn inverse(&self) -> Result<CycNum> {
        self.inv().ok_or(Error::DivisionByZero)
    }

    pub fn scale(&self, r: &Rational) -> CycNum {
        CycNum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// The automorphism `w -> w^j`; `j = p - 1` is complex conjugation.
    pub fn galois(&self, j: i64) -> Result<CycNum> {
        let p = self.p as i64;
        if j.rem_euclid(p) == 0 {
            return Err(Error::NotAUnit(j, self.p));
        }
        Ok(self.galois_unchecked(j))
    }

    pub(crate) fn galois_unchecked(&self, j: i64) -> CycNum {
        if self.is_rational() {
            return self.clone();
        }
        let p = self.p as i64;
        let mut raw = vec![Rational::zero(); self.p as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !Zero::is_zero(c) {
                raw[(i as i64 * j).rem_euclid(p) as usize] += c;
            }
        }
        Self::reduce_unchecked(self.p, &raw)
    }

    pub fn conj(&self) -> CycNum {
        self.galois_unchecked(self.p as i64 - 1)
    }

    /// Field norm down to `Q`: the product of all `p - 1` conjugates.
    pub fn norm(&self) -> Rational {
        if let Some(r) = self.to_rational() {
            let mut acc = Rational::one();
            for _ in 1..self.p {
                acc *= &r;
            }
            return acc;
        }
        let mut acc = self.clone();
        for j in 2..self.p as i64 {
            acc = FieldElem::mul(&acc, &self.galois_unchecked(j));
        }
        acc.to_rational()
            .expect("norm of a cyclotomic number is rational")
    }
}

impl FieldElem for CycNum {
    fn zero_like(&self) -> Self {
        CycNum::zero(self.p)
    }
    fn one_like(&self) -> Self {
        CycNum::one(self.p)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn is_one(&self) -> bool {
        One::is_one(&self.coeffs[0]) && self.coeffs[1..].iter().all(Zero::is_zero)
    }
    fn add(&self, other: &Self) -> Self {
        self.same_prime(other);
        CycNum {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        self.same_prime(other);
        CycNum {
            p: self.p,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        self.same_prime(other);
        if let Some(r) = other.to_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.to_rational() {
            return other.scale(&r);
        }
        let n = self.coeffs.len();
        let mut raw = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    raw[i + j] += a * b;
                }
            }
        }
        Self::reduce_unchecked(self.p, &raw)
    }
    fn neg(&self) -> Self {
        CycNum {
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if FieldElem::is_zero(self) {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(CycNum::from_rational(self.p, r.recip()));
        }
        // x^-1 = (product of the other conjugates) / N(x)
        let mut others = CycNum::one(self.p);
        for j in 2..self.p as i64 {
            others = FieldElem::mul(&others, &self.galois_unchecked(j));
        }
        let norm = FieldElem::mul(self, &others)
            .to_rational()
            .expect("norm of a cyclotomic number is rational");
        Some(others.scale(&norm.recip()))
    }
    fn from_int_like(&self, n: i64) -> Self {
        CycNum::from_int(self.p, n)
    }
    fn is_compound(&self) -> bool {
        self.coeffs.iter().filter(|c| !Zero::is_zero(*c)).count() > 1
    }
    fn is_negative_display(&self) -> bool {
        !self.is_compound() && self.to_string().starts_with('-')
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c < &BigRational::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mag_s = rational_to_string(&mag);
            match i {
                0 => f.write_str(&mag_s)?,
                _ => {
                    if !One::is_one(&mag) {
                        write!(f, "{mag_s}*")?;
                    }
                    if i == 1 {
                        f.write_str("w")?;
                    } else {
                        write!(f, "w^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum<{}>({})", self.p, self)
    }
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(rational_to_string).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs: Vec<String> = Vec::deserialize(d)?;
        let p = strs.len() as u32 + 1;
        let coeffs = strs
            .iter()
            .map(|s| rational_from_str(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CycNum::reduce(p, &coeffs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::rat;
    use proptest::prelude::*;

    fn w(p: u32, k: i64) -> CycNum {
        CycNum::omega_pow(p, k)
    }

    fn from_ints(p: u32, c: &[i64]) -> CycNum {
        let raw: Vec<Rational> = c.iter().map(|&x| rat(x, 1)).collect();
        CycNum::reduce(p, &raw).unwrap()
    }

    #[test]
    fn omega_to_the_p_is_one() {
        let mut raw = vec![Rational::zero(); 6];
        raw[5] = Rational::one();
        assert_eq!(CycNum::reduce(5, &raw).unwrap(), CycNum::one(5));
    }

    #[test]
    fn cyclotomic_relation_vanishes() {
        assert!(from_ints(5, &[1, 1, 1, 1, 1]).is_zero());
        assert!(from_ints(7, &[2, 2, 2, 2, 2, 2, 2]).is_zero());
    }

    #[test]
    fn gauss_sum_squares_to_five() {
        // (w + w^4 - w^2 - w^3)^2 expanded into 16 exponent terms by hand.
        let signs = [(1, 1), (4, 1), (2, -1), (3, -1)];
        let mut raw = vec![Rational::zero(); 9];
        for &(i, si) in &signs {
            for &(j, sj) in &signs {
                raw[i + j] += rat(si * sj, 1);
            }
        }
        assert_eq!(CycNum::reduce(5, &raw).unwrap(), CycNum::from_int(5, 5));
        let g = from_ints(5, &[0, 1, -1, -1, 1]);
        assert_eq!(g.mul(&g), CycNum::from_int(5, 5));
    }

    #[test]
    fn rejects_non_prime() {
        assert_eq!(CycNum::reduce(4, &[]), Err(Error::NotPrime(4)));
        assert_eq!(CycNum::reduce(9, &[]), Err(Error::NotPrime(9)));
        assert!(CycNum::reduce(2, &[]).is_err());
    }

    #[test]
    fn inverse_of_omega() {
        for p in [3u32, 5, 7] {
            let expect = CycNum::reduce(p, &vec![rat(-1, 1); p as usize - 1]).unwrap();
            assert_eq!(w(p, 1).inverse().unwrap(), expect);
            assert_eq!(w(p, 1).inverse().unwrap(), w(p, p as i64 - 1));
        }
    }

    #[test]
    fn inverse_examples() {
        let one_minus_w = CycNum::one(5).sub(&w(5, 1));
        assert!(one_minus_w.mul(&one_minus_w.inverse().unwrap()).is_one());
        assert_eq!(
            CycNum::from_int(5, 2).inverse().unwrap(),
            CycNum::from_rational(5, rat(1, 2))
        );
        assert_eq!(CycNum::zero(5).inverse(), Err(Error::DivisionByZero));
        assert_eq!(
            CycNum::one(5).checked_div(&CycNum::zero(5)),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            CycNum::one(5).checked_add(&CycNum::one(7)),
            Err(Error::PrimeMismatch(5, 7))
        );
    }

    #[test]
    fn galois_examples() {
        assert_eq!(w(5, 1).galois(4).unwrap(), w(5, 4));
        let five_thirds = CycNum::from_rational(7, rat(5, 3));
        for j in 1..7 {
            assert_eq!(five_thirds.galois(j).unwrap(), five_thirds);
        }
        let x = w(5, 1).add(&w(5, 4));
        assert_eq!(x.galois(2).unwrap(), w(5, 2).add(&w(5, 3)));
        assert_eq!(x.galois(0), Err(Error::NotAUnit(0, 5)));
        assert_eq!(x.galois(10), Err(Error::NotAUnit(10, 5)));
    }

    #[test]
    fn display() {
        assert_eq!(from_ints(5, &[1, 0, -2, 1]).to_string(), "1 - 2*w^2 + w^3");
        assert_eq!(CycNum::zero(3).to_string(), "0");
        assert_eq!(w(3, 2).to_string(), "-1 - w");
    }

    #[test]
    fn json_round_trip() {
        let x = CycNum::reduce(5, &[rat(1, 2), rat(-3, 1), rat(0, 1), rat(7, 4)]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"["1/2","-3","0","7/4"]"#);
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
    }

    fn arb_cyc(p: u32) -> impl Strategy<Value = CycNum> {
        proptest::collection::vec((-6i64..=6, 1i64..=4), p as usize - 1).prop_map(move |v| {
            let raw: Vec<Rational> = v.iter().map(|&(n, d)| rat(n, d)).collect();
            CycNum::reduce(p, &raw).unwrap()
        })
    }

    fn arb_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
        prop_oneof![Just(3u32), Just(5u32), Just(7u32)]
            .prop_flat_map(|p| (arb_cyc(p), arb_cyc(p), arb_cyc(p)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms((x, y, z) in arb_triple()) {
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert!(x.sub(&x).is_zero());
            if !x.is_zero() {
                prop_assert!(x.mul(&x.inverse().unwrap()).is_one());
                prop_assert_eq!(y.mul(&x).div(&x).unwrap(), y.clone());
            }
        }

        #[test]
        fn galois_is_automorphism((x, y, _z) in arb_triple(), j in 1i64..7) {
            let p = x.prime() as i64;
            prop_assume!(j % p != 0);
            let s = |v: &CycNum| v.galois(j).unwrap();
            prop_assert_eq!(s(&x.add(&y)), s(&x).add(&s(&y)));
            prop_assert_eq!(s(&x.mul(&y)), s(&x).mul(&s(&y)));
        }

        #[test]
        fn galois_composes((x, _y, _z) in arb_triple(), j in 1i64..7, k in 1i64..7) {
            let p = x.prime() as i64;
            prop_assume!(j % p != 0 && k % p != 0);
            prop_assert_eq!(
                x.galois(j).unwrap().galois(k).unwrap(),
                x.galois((j * k) % p).unwrap()
            );
        }

        #[test]
        fn norm_of_nonzero_is_nonzero_rational((x, _y, _z) in arb_triple()) {
            prop_assume!(!x.is_zero());
            prop_assert!(!Zero::is_zero(&x.norm()));
        }
    }
}
