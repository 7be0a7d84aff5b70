use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

/// A power product `x_0^e_0 * ... * x_{n-1}^e_{n-1}` with cached total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; nvars],
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        Self::var_pow(nvars, i, 1)
    }

    pub fn var_pow(nvars: usize, i: usize, e: u32) -> Monomial {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial { exps, degree: e }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when the monomial is a pure power of `x_i`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut nz = self.exps.iter().enumerate().filter(|(_, e)| **e > 0);
        match (nz.next(), nz.next()) {
            (Some((i, _)), None) => Some(i),
            _ => None,
        }
    }
}

/// Term orders. Variables are ranked `x_0 > x_1 > ... > x_{n-1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    Grlex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Grlex => a.degree.cmp(&b.degree).then_with(|| a.exps.cmp(&b.exps)),
            MonomialOrder::Grevlex => a.degree.cmp(&b.degree).then_with(|| {
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grlex => "grlex",
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" => Ok(MonomialOrder::Grlex),
            _ => Err(crate::Error::InvalidInput(format!("unknown order {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn basic_ops() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 3, 1]);
        assert_eq!(a.mul(&b), m(&[3, 4, 1]));
        assert_eq!(a.lcm(&b), m(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), m(&[1, 1, 0]));
        assert!(m(&[1, 1, 0]).divides(&a));
        assert!(!a.divides(&b));
        assert_eq!(a.div(&m(&[1, 0, 0])), Some(m(&[1, 1, 0])));
        assert_eq!(a.div(&b), None);
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 2, 1])));
        assert_eq!(m(&[0, 4, 0]).pure_power_var(), Some(1));
        assert_eq!(a.pure_power_var(), None);
        assert_eq!(a.degree(), 3);
    }

    #[test]
    fn orders_differ_as_expected() {
        // x*z^2 vs y^3 (deg 3): lex puts x first; grevlex compares last variable.
        let xz2 = m(&[1, 0, 2]);
        let y3 = m(&[0, 3, 0]);
        assert_eq!(MonomialOrder::Lex.cmp(&xz2, &y3), Ordering::Greater);
        assert_eq!(MonomialOrder::Grlex.cmp(&xz2, &y3), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&xz2, &y3), Ordering::Less);
        // x vs y^2: lex says x bigger, graded orders say y^2 bigger.
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0, 0]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&m(&[1, 0, 0]), &m(&[0, 2, 0])), Ordering::Less);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 4).prop_map(Monomial::new)
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::Grlex)
        ]
    }

    proptest! {
        #[test]
        fn term_order_axioms(o in arb_order(), a in arb_mono(), b in arb_mono(), n in arb_mono()) {
            // totality and antisymmetry
            let ab = o.cmp(&a, &b);
            prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            // 1 is the minimum
            prop_assert!(o.cmp(&Monomial::one(4), &a) != Ordering::Greater);
            // compatibility with multiplication
            if ab != Ordering::Greater {
                prop_assert!(o.cmp(&a.mul(&n), &b.mul(&n)) != Ordering::Greater);
            }
        }

        #[test]
        fn transitivity(o in arb_order(), a in arb_mono(), b in arb_mono(), c in arb_mono()) {
            if o.cmp(&a, &b) == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
                prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
            }
        }
    }
}
