//! Exact division and a recursive primitive-PRS gcd, enough to keep
//! rational functions in a few parameters in lowest terms.

use std::collections::BTreeMap;

use super::{Monomial, MultiPoly, RingHandle};
use crate::exactfield::FieldElem;

/// `f / g` when `g` divides `f` exactly.
pub fn div_exact<E: FieldElem>(f: &MultiPoly<E>, g: &MultiPoly<E>) -> Option<MultiPoly<E>> {
    let (gm, gc) = g.leading_term()?;
    let gc_inv = gc.inv()?;
    let mut rem = f.clone();
    let mut quot = Vec::new();
    while let Some((m, c)) = rem.leading_term() {
        let qm = m.div(gm)?;
        let qc = c.mul(&gc_inv);
        rem = rem.sub_mul_term(&qc, &qm, g);
        quot.push((qm, qc));
    }
    Some(f.ring().from_terms(quot))
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn poly_gcd<E: FieldElem>(f: &MultiPoly<E>, g: &MultiPoly<E>) -> MultiPoly<E> {
    gcd_from(f, g, 0)
}

fn gcd_from<E: FieldElem>(f: &MultiPoly<E>, g: &MultiPoly<E>, from: usize) -> MultiPoly<E> {
    if f.is_zero() {
        return g.make_monic();
    }
    if g.is_zero() {
        return f.make_monic();
    }
    let ring = f.ring().clone();
    let Some(v) = (from..ring.nvars()).find(|&v| uses_var(f, v) || uses_var(g, v)) else {
        return ring.one();
    };
    let (cf, pf) = content_split(f, v);
    let (cg, pg) = content_split(g, v);
    let content = gcd_from(&cf, &cg, v + 1);

    let (mut a, mut b) = if degree_in(&pf, v) >= degree_in(&pg, v) {
        (pf, pg)
    } else {
        (pg, pf)
    };
    while !b.is_zero() && degree_in(&b, v) > 0 {
        let r = pseudo_rem(&a, &b, v);
        a = b;
        b = if r.is_zero() { r } else { content_split(&r, v).1 };
    }
    let core = if b.is_zero() {
        content_split(&a, v).1
    } else {
        ring.one()
    };
    content.mul(&core).make_monic()
}

fn uses_var<E: FieldElem>(f: &MultiPoly<E>, v: usize) -> bool {
    f.terms().iter().any(|(m, _)| m.exps()[v] > 0)
}

fn degree_in<E: FieldElem>(f: &MultiPoly<E>, v: usize) -> u32 {
    f.terms().iter().map(|(m, _)| m.exps()[v]).max().unwrap_or(0)
}

/// Coefficients of `f` viewed as a polynomial in `x_v`, keyed by degree.
fn coefficients_in<E: FieldElem>(f: &MultiPoly<E>, v: usize) -> BTreeMap<u32, MultiPoly<E>> {
    let mut parts: BTreeMap<u32, Vec<(Monomial, E)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut e = m.exps().to_vec();
        let d = std::mem::replace(&mut e[v], 0);
        parts.entry(d).or_default().push((Monomial::new(e), c.clone()));
    }
    parts
        .into_iter()
        .map(|(d, t)| (d, f.ring().from_terms(t)))
        .collect()
}

/// Split `f` into (content w.r.t. `x_v`, primitive part).
fn content_split<E: FieldElem>(f: &MultiPoly<E>, v: usize) -> (MultiPoly<E>, MultiPoly<E>) {
    let coeffs = coefficients_in(f, v);
    let mut content = f.ring().zero();
    for c in coeffs.values() {
        content = gcd_from(&content, c, v + 1);
        if content.is_constant() {
            break;
        }
    }
    let pp = div_exact(f, &content).expect("content divides the polynomial");
    (content, pp)
}

fn pseudo_rem<E: FieldElem>(a: &MultiPoly<E>, b: &MultiPoly<E>, v: usize) -> MultiPoly<E> {
    let db = degree_in(b, v);
    let lcb = coefficients_in(b, v).remove(&db).unwrap();
    let n = a.ring().nvars();
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = degree_in(&r, v);
        if dr < db {
            break;
        }
        let lcr = coefficients_in(&r, v).remove(&dr).unwrap();
        let shift = r.ring().monomial(r.ring().one_coeff().clone(), Monomial::var_pow(n, v, dr - db));
        r = r.mul(&lcb).sub(&lcr.mul(&shift).mul(b));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{rat, CycNum, Rational};
    use crate::multipoly::{MonomialOrder, PolyRing};
    use std::sync::Arc;

    fn ring() -> Arc<PolyRing<Rational>> {
        PolyRing::new(vec!["a".into(), "b".into()], MonomialOrder::Grlex, rat(1, 1))
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let (a, b) = (r.var(0), r.var(1));
        let f = a.add(&b).mul(&a.sub(&b.scale(&rat(3, 1))));
        assert_eq!(div_exact(&f, &a.add(&b)), Some(a.sub(&b.scale(&rat(3, 1)))));
        assert_eq!(div_exact(&f, &a), None);
    }

    #[test]
    fn gcd_of_products() {
        let r = ring();
        let (a, b) = (r.var(0), r.var(1));
        let common = a.mul(&b).add(&r.one());
        let f = common.mul(&a.pow(2).sub(&b)).scale(&rat(4, 1));
        let g = common.mul(&a.add(&b.pow(3))).scale(&rat(-7, 3));
        assert_eq!(poly_gcd(&f, &g), common);
        assert_eq!(poly_gcd(&a, &b), r.one());
        assert_eq!(poly_gcd(&r.zero(), &b.scale(&rat(5, 1))), b);
    }

    #[test]
    fn gcd_with_powers_and_content() {
        let r = ring();
        let (a, b) = (r.var(0), r.var(1));
        // b^2 (a + 1)^2 and b (a + 1)(a - 1)
        let ap1 = a.add(&r.one());
        let f = b.pow(2).mul(&ap1.pow(2));
        let g = b.mul(&ap1).mul(&a.sub(&r.one()));
        assert_eq!(poly_gcd(&f, &g), b.mul(&ap1));
    }

    #[test]
    fn gcd_over_cyclotomics() {
        let r = PolyRing::new(vec!["a".into(), "b".into()], MonomialOrder::Grlex, CycNum::one(5));
        let w = CycNum::omega(5);
        let (a, b) = (r.var(0), r.var(1));
        let line = r.one().add(&a.scale(&w)).add(&b.scale(&CycNum::omega_pow(5, 4)));
        let f = line.mul(&a.pow(2).add(&b));
        let g = line.mul(&b.sub(&r.one()));
        assert_eq!(poly_gcd(&f, &g), line.make_monic());
    }
}
