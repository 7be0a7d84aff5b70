//! Sparse multivariate polynomials over any [`FieldElem`] coefficient type.
//!
//! Terms are kept strictly sorted in descending order under the ring's
//! [`MonomialOrder`], with no zero coefficients, so the leading term is always
//! `terms[0]` and structural equality is polynomial equality.

mod gcd;
mod monomial;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exactfield::FieldElem;
use crate::{Error, Result};

pub use gcd::{div_exact, poly_gcd};
pub use monomial::{Monomial, MonomialOrder};

/// Variable names, term order and coefficient field of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<E> {
    names: Vec<String>,
    order: MonomialOrder,
    one: E,
}

impl<E: FieldElem> PolyRing<E> {
    pub fn new(names: Vec<String>, order: MonomialOrder, one: E) -> Arc<PolyRing<E>> {
        Arc::new(PolyRing { names, order, one })
    }

    /// Ring with variables `prefix0 .. prefix{n-1}`.
    pub fn with_prefix(prefix: &str, n: usize, order: MonomialOrder, one: E) -> Arc<PolyRing<E>> {
        Self::new((0..n).map(|i| format!("{prefix}{i}")).collect(), order, one)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn one_coeff(&self) -> &E {
        &self.one
    }

    pub fn zero_coeff(&self) -> E {
        self.one.zero_like()
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing<E>> {
        Arc::new(PolyRing {
            names: self.names.clone(),
            order,
            one: self.one.clone(),
        })
    }
}

/// Constructors that need a shared handle to the ring.
pub trait RingHandle<E> {
    fn zero(&self) -> MultiPoly<E>;
    fn one(&self) -> MultiPoly<E>;
    fn constant(&self, c: E) -> MultiPoly<E>;
    fn var(&self, i: usize) -> MultiPoly<E>;
    fn monomial(&self, c: E, m: Monomial) -> MultiPoly<E>;
    fn from_terms(&self, terms: Vec<(Monomial, E)>) -> MultiPoly<E>;
}

impl<E: FieldElem> RingHandle<E> for Arc<PolyRing<E>> {
    fn zero(&self) -> MultiPoly<E> {
        MultiPoly {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    fn one(&self) -> MultiPoly<E> {
        self.constant(self.one.clone())
    }

    fn constant(&self, c: E) -> MultiPoly<E> {
        self.monomial(c, Monomial::one(self.nvars()))
    }

    fn var(&self, i: usize) -> MultiPoly<E> {
        self.monomial(self.one.clone(), Monomial::var(self.nvars(), i))
    }

    fn monomial(&self, c: E, m: Monomial) -> MultiPoly<E> {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        MultiPoly {
            ring: self.clone(),
            terms,
        }
    }

    /// Canonicalize an arbitrary term list: combine like terms, drop zeros, sort.
    fn from_terms(&self, terms: Vec<(Monomial, E)>) -> MultiPoly<E> {
        let mut acc: HashMap<Monomial, E> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = v.add(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Monomial, E)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = self.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        MultiPoly {
            ring: self.clone(),
            terms,
        }
    }
}

/// A polynomial with terms sorted descending under the ring order.
#[derive(Clone, Debug)]
pub struct MultiPoly<E> {
    ring: Arc<PolyRing<E>>,
    terms: Vec<(Monomial, E)>,
}

impl<E: FieldElem> PartialEq for MultiPoly<E> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<E: FieldElem> Eq for MultiPoly<E> {}

fn same_ring<E: FieldElem>(a: &Arc<PolyRing<E>>, b: &Arc<PolyRing<E>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<E: FieldElem> MultiPoly<E> {
    pub fn ring(&self) -> &Arc<PolyRing<E>> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, E)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, E)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&E> {
        self.terms.first().map(|t| &t.1)
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Common degree of all terms, or `None` if the terms disagree.
    /// The zero polynomial counts as homogeneous of degree 0.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first().map_or(0, |t| t.0.degree());
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Coefficient of the given monomial (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> E {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.zero_coeff())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn with_terms(&self, terms: Vec<(Monomial, E)>) -> MultiPoly<E> {
        MultiPoly {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Merge `self + sign * c * m * g` for sorted inputs.
    fn merge(&self, g: &MultiPoly<E>, c: &E, m: Option<&Monomial>, negate: bool) -> MultiPoly<E> {
        let order = self.ring.order;
        let factor = if negate { c.neg() } else { c.clone() };
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let scaled = g.terms.iter().map(|(gm, gc)| {
            let mono = match m {
                Some(m) => gm.mul(m),
                None => gm.clone(),
            };
            let coef = if factor.is_one() { gc.clone() } else { gc.mul(&factor) };
            (mono, coef)
        });
        let mut b = scaled.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (am, ac) = a.next().unwrap();
                        let (_, bc) = b.next().unwrap();
                        let s = ac.add(&bc);
                        if !s.is_zero() {
                            out.push((am.clone(), s));
                        }
                    }
                },
            }
        }
        self.with_terms(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("ring mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("ring mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("ring mismatch")
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, self.ring.one_coeff(), None, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, self.ring.one_coeff(), None, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = self.ring.zero();
        for (m, c) in &small.terms {
            acc = acc.merge(big, c, Some(m), false);
        }
        Ok(acc)
    }

    /// `self - c * m * g`, the elementary reduction step.
    pub fn sub_mul_term(&self, c: &E, m: &Monomial, g: &Self) -> Self {
        self.merge(g, c, Some(m), true)
    }

    pub fn neg(&self) -> Self {
        self.with_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect())
    }

    pub fn scale(&self, s: &E) -> Self {
        if s.is_zero() {
            return self.ring.zero();
        }
        self.with_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.mul(s))).collect())
    }

    pub fn mul_term(&self, c: &E, m: &Monomial) -> Self {
        if c.is_zero() {
            return self.ring.zero();
        }
        self.with_terms(
            self.terms
                .iter()
                .map(|(t, d)| (t.mul(m), d.mul(c)))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Everything but the leading term.
    pub fn tail(&self) -> Self {
        self.with_terms(self.terms.iter().skip(1).cloned().collect())
    }

    /// Divide by the leading coefficient (no-op for zero).
    pub fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Substitute field values for the variables.
    pub fn evaluate(&self, point: &[E]) -> Result<E> {
        if point.len() != self.ring.nvars() {
            return Err(Error::Arity {
                expected: self.ring.nvars(),
                got: point.len(),
            });
        }
        let mut powers: Vec<Vec<E>> = point.iter().map(|v| vec![v.one_like(), v.clone()]).collect();
        let mut acc = self.ring.zero_coeff();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap().mul(&pw[1]);
                    pw.push(next);
                }
                t = t.mul(&pw[e as usize]);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitute polynomials (all in one target ring) for the variables.
    pub fn substitute(&self, images: &[MultiPoly<E>], target: &Arc<PolyRing<E>>) -> Result<MultiPoly<E>> {
        if images.len() != self.ring.nvars() {
            return Err(Error::Arity {
                expected: self.ring.nvars(),
                got: images.len(),
            });
        }
        let mut powers: Vec<Vec<MultiPoly<E>>> =
            images.iter().map(|g| vec![target.one(), g.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap().checked_mul(&pw[1])?;
                    pw.push(next);
                }
                t = t.checked_mul(&pw[e as usize])?;
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Set the listed variables to zero.
    pub fn restrict_zero(&self, vars: &[usize]) -> MultiPoly<E> {
        self.with_terms(
            self.terms
                .iter()
                .filter(|(m, _)| vars.iter().all(|&v| m.exps()[v] == 0))
                .cloned()
                .collect(),
        )
    }

    /// Same polynomial re-sorted in another ring with identical variables.
    pub fn reorder(&self, ring: &Arc<PolyRing<E>>) -> Result<MultiPoly<E>> {
        if ring.names != self.ring.names || ring.one != self.ring.one {
            return Err(Error::RingMismatch);
        }
        Ok(ring.from_terms(self.terms.clone()))
    }

    /// Apply `f` to every coefficient (dropping those that become zero).
    pub fn map_coeffs(&self, f: impl Fn(&E) -> E) -> MultiPoly<E> {
        self.with_terms(
            self.terms
                .iter()
                .filter_map(|(m, c)| {
                    let v = f(c);
                    (!v.is_zero()).then(|| (m.clone(), v))
                })
                .collect(),
        )
    }
}

impl<E: FieldElem> fmt::Display for MultiPoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.names[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.names[i], e)),
                }
            }
            let compound = c.is_compound();
            let neg = !compound && c.is_negative_display();
            let mag = if neg { c.neg() } else { c.clone() };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut parts = Vec::new();
            if !mag.is_one() || factors.is_empty() {
                if compound {
                    parts.push(format!("({mag})"));
                } else {
                    parts.push(mag.to_string());
                }
            }
            parts.extend(factors);
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    coeff: String,
    exps: &'a [u32],
}

impl<E: FieldElem> Serialize for MultiPoly<E> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermJson<'_>> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                exps: m.exps(),
            })
            .collect();
        let mut st = s.serialize_struct("MultiPoly", 3)?;
        st.serialize_field("vars", &self.ring.names)?;
        st.serialize_field("order", &self.ring.order)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{rat, CycNum, Rational};
    use proptest::prelude::*;

    fn qring(names: &[&str], order: MonomialOrder) -> Arc<PolyRing<Rational>> {
        PolyRing::new(
            names.iter().map(|s| s.to_string()).collect(),
            order,
            rat(1, 1),
        )
    }

    #[test]
    fn difference_of_squares() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let (x, y) = (r.var(0), r.var(1));
        let f = x.add(&y).mul(&x.sub(&y));
        assert_eq!(f, x.pow(2).sub(&y.pow(2)));
        assert_eq!(f.to_string(), "x^2 - y^2");
        assert!(f.mul(&r.zero()).is_zero());
        assert!(f.mul(&r.zero()).terms().is_empty());
    }

    #[test]
    fn cyclotomic_product() {
        let w = CycNum::omega(5);
        let r = PolyRing::with_prefix("z", 2, MonomialOrder::Grevlex, CycNum::one(5));
        let (z0, z1) = (r.var(0), r.var(1));
        let f = z0.add(&z1.scale(&w));
        let g = z0.add(&z1.scale(&CycNum::omega_pow(5, 4)));
        let expect = z0
            .pow(2)
            .add(&z0.mul(&z1).scale(&w.add(&CycNum::omega_pow(5, 4))))
            .add(&z1.pow(2));
        assert_eq!(f.mul(&g), expect);
        assert_eq!(expect.to_string(), "z0^2 + (-1 - w^2 - w^3)*z0*z1 + z1^2");
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let r1 = qring(&["x", "y"], MonomialOrder::Grevlex);
        let r2 = qring(&["x", "z"], MonomialOrder::Grevlex);
        assert_eq!(r1.var(0).checked_add(&r2.var(0)), Err(Error::RingMismatch));
        assert_eq!(r1.var(0).checked_mul(&r2.var(1)), Err(Error::RingMismatch));
    }

    fn q0(a: i64, b: i64) -> MultiPoly<Rational> {
        let r = qring(&["z0", "z1", "z2", "z3", "z4"], MonomialOrder::Grevlex);
        let z: Vec<_> = (0..5).map(|i| r.var(i)).collect();
        z[0].pow(2)
            .scale(&rat(2, 1))
            .add(&z[1].mul(&z[4]).scale(&rat(2 * a, 1)))
            .add(&z[2].mul(&z[3]).scale(&rat(2 * b, 1)))
    }

    #[test]
    fn evaluate_examples() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let f = r.var(0).pow(2).add(&r.var(1).pow(2));
        assert!(f.evaluate(&[rat(0, 1), rat(0, 1)]).unwrap().is_zero());
        assert_eq!(
            f.evaluate(&[rat(0, 1)]),
            Err(Error::Arity {
                expected: 2,
                got: 1
            })
        );
        // conic point (0:1:a:-a:-1) with a = 1, b = -1/a = -1
        let q = q0(1, -1);
        let pt: Vec<Rational> = [0, 1, 1, -1, -1].iter().map(|&v| rat(v, 1)).collect();
        assert!(q.evaluate(&pt).unwrap().is_zero());
    }

    #[test]
    fn homogeneity() {
        let r = qring(&["x", "y"], MonomialOrder::Grevlex);
        let (x, y) = (r.var(0), r.var(1));
        assert_eq!(x.pow(2).add(&x.mul(&y)).homogeneous_degree(), Some(2));
        assert_eq!(x.pow(2).add(&x).homogeneous_degree(), None);
        assert_eq!(q0(3, 7).homogeneous_degree(), Some(2));
        assert_eq!(q0(1, 1).to_string(), "2*z0^2 + 2*z2*z3 + 2*z1*z4");
    }

    #[test]
    fn substitution_and_restriction() {
        let r = qring(&["x", "y"], MonomialOrder::Lex);
        let (x, y) = (r.var(0), r.var(1));
        let f = x.pow(2).add(&x.mul(&y)).add(&y);
        let g = f.substitute(&[y.clone(), x.clone()], &r).unwrap();
        assert_eq!(g, y.pow(2).add(&x.mul(&y)).add(&x));
        assert_eq!(f.restrict_zero(&[0]), y);
    }

    #[test]
    fn json_shape() {
        let r = qring(&["a", "b"], MonomialOrder::Grevlex);
        let f = r.var(0).scale(&rat(1, 2)).sub(&r.one());
        let v: serde_json::Value = serde_json::to_value(&f).unwrap();
        assert_eq!(v["vars"], serde_json::json!(["a", "b"]));
        assert_eq!(v["terms"][0]["exps"], serde_json::json!([1, 0]));
        assert_eq!(v["terms"][1]["coeff"], serde_json::json!("-1"));
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 3), -5i64..=5), 0..6)
    }

    fn build(r: &Arc<PolyRing<Rational>>, t: &[(Vec<u32>, i64)]) -> MultiPoly<Rational> {
        r.from_terms(
            t.iter()
                .map(|(e, c)| (Monomial::new(e.clone()), rat(*c, 1)))
                .collect(),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let r = qring(&["x", "y", "z"], MonomialOrder::Grevlex);
            let (f, g, h) = (build(&r, &a), build(&r, &b), build(&r, &c));
            prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
            prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
            prop_assert_eq!(f.mul(&g), g.mul(&f));
            prop_assert!(f.sub(&f).is_zero());
            prop_assert_eq!(f.add(&g).sub(&g), f);
        }

        #[test]
        fn leading_term_multiplicative(a in arb_poly(), b in arb_poly(), ord in 0usize..3) {
            let order = [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Grlex][ord];
            let r = qring(&["x", "y", "z"], order);
            let (f, g) = (build(&r, &a), build(&r, &b));
            prop_assume!(!f.is_zero() && !g.is_zero());
            let fg = f.mul(&g);
            let (fm, fc) = f.leading_term().unwrap();
            let (gm, gc) = g.leading_term().unwrap();
            prop_assert_eq!(fg.leading_monomial().unwrap(), &fm.mul(gm));
            prop_assert_eq!(fg.leading_coeff().unwrap(), &fc.mul(gc));
        }

        #[test]
        fn homogeneous_scaling(a in proptest::collection::vec((0u32..3, -4i64..=4), 1..5), l in -3i64..=3) {
            // homogeneous of degree 2 in (x, y): build x^e y^(2-e)
            let r = qring(&["x", "y"], MonomialOrder::Grevlex);
            let f = r.from_terms(a.iter().map(|&(e, c)| (Monomial::new(vec![e, 2 - e.min(2)]), rat(c, 1))).collect());
            let f = f.map_coeffs(|c| c.clone());
            prop_assume!(f.homogeneous_degree() == Some(2));
            let pt = [rat(2, 1), rat(-1, 3)];
            let lam = rat(l, 1);
            let scaled = [pt[0].clone() * &lam, pt[1].clone() * &lam];
            prop_assert_eq!(
                f.evaluate(&scaled).unwrap(),
                f.evaluate(&pt).unwrap() * &lam * &lam
            );
        }
    }
}
