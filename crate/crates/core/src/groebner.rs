//! Reduced Gröbner bases by Buchberger's algorithm with the product and chain
//! criteria and the normal (lowest lcm degree first) selection strategy.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::exactfield::FieldElem;
use crate::multipoly::{Monomial, MultiPoly, PolyRing, RingHandle};
use crate::{Error, Result};

/// Resource bounds for a Buchberger run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: u32,
    pub max_basis: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 30,
            max_basis: 5000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis<E> {
    ring: Arc<PolyRing<E>>,
    basis: Vec<MultiPoly<E>>,
    reduced: bool,
}

/// Reduce `f` completely modulo `basis` (every term, not just the leading one).
pub fn normal_form<E: FieldElem>(f: &MultiPoly<E>, basis: &[MultiPoly<E>]) -> MultiPoly<E> {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, E)> = Vec::new();
    while let Some((m, c)) = p.leading_term() {
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)));
        match divisor {
            Some(g) => {
                let (gm, gc) = g.leading_term().unwrap();
                let q = c.div(gc).expect("basis elements are nonzero");
                let shift = m.div(gm).unwrap();
                p = p.sub_mul_term(&q, &shift, g);
            }
            None => {
                rem.push((m.clone(), c.clone()));
                p = p.tail();
            }
        }
    }
    ring.from_terms(rem)
}

fn s_poly<E: FieldElem>(f: &MultiPoly<E>, g: &MultiPoly<E>) -> MultiPoly<E> {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&gc.one_like(), &l.div(fm).unwrap()).scale(&fc.inv().unwrap());
    let b = g.mul_term(&gc.one_like(), &l.div(gm).unwrap()).scale(&gc.inv().unwrap());
    a.sub(&b)
}

#[derive(Clone, PartialEq, Eq)]
struct Pair {
    degree: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Run Buchberger's algorithm and return the reduced basis.
pub fn buchberger<E: FieldElem>(gens: &[MultiPoly<E>], limits: &Limits) -> Result<GroebnerBasis<E>> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(Error::InvalidInput("empty generator list".into())),
    };
    for g in gens {
        g.checked_add(&gens[0])?;
    }
    let order = ring.order();
    let mut basis: Vec<MultiPoly<E>> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut queued: BTreeSet<(usize, usize)> = BTreeSet::new();

    let insert = |basis: &mut Vec<MultiPoly<E>>,
                  pending: &mut Vec<Pair>,
                  queued: &mut BTreeSet<(usize, usize)>,
                  h: MultiPoly<E>|
     -> Result<()> {
        if basis.len() >= limits.max_basis {
            return Err(Error::ResourceLimit(format!(
                "basis exceeded {} elements",
                limits.max_basis
            )));
        }
        let j = basis.len();
        let hm = h.leading_monomial().unwrap().clone();
        basis.push(h);
        for i in 0..j {
            let lcm = basis[i].leading_monomial().unwrap().lcm(&hm);
            pending.push(Pair {
                degree: lcm.degree(),
                lcm,
                i,
                j,
            });
            queued.insert((i, j));
        }
        Ok(())
    };

    let mut start: Vec<MultiPoly<E>> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.make_monic()).collect();
    start.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for g in start {
        let h = normal_form(&g, &basis);
        if !h.is_zero() {
            insert(&mut basis, &mut pending, &mut queued, h.make_monic())?;
        }
    }

    while !pending.is_empty() {
        // normal strategy: smallest lcm first; ties broken deterministically
        let (idx, _) = pending
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.degree
                    .cmp(&b.degree)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })
            .unwrap();
        let pair = pending.swap_remove(idx);
        queued.remove(&(pair.i, pair.j));
        if pair.degree > limits.max_degree {
            return Err(Error::ResourceLimit(format!(
                "S-pair degree {} exceeds {} (basis size {})",
                pair.degree,
                limits.max_degree,
                basis.len()
            )));
        }
        let fi = basis[pair.i].leading_monomial().unwrap();
        let fj = basis[pair.j].leading_monomial().unwrap();
        if fi.is_coprime(fj) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].leading_monomial().unwrap().divides(&pair.lcm)
                && !queued.contains(&(pair.i.min(k), pair.i.max(k)))
                && !queued.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        let h = normal_form(&s_poly(&basis[pair.i], &basis[pair.j]), &basis);
        if !h.is_zero() {
            insert(&mut basis, &mut pending, &mut queued, h.make_monic())?;
        }
    }

    let gb = GroebnerBasis {
        basis: reduce_basis(basis, &ring),
        ring,
        reduced: true,
    };
    gb.verify()?;
    Ok(gb)
}

fn reduce_basis<E: FieldElem>(basis: Vec<MultiPoly<E>>, ring: &Arc<PolyRing<E>>) -> Vec<MultiPoly<E>> {
    let order = ring.order();
    let mut minimal: Vec<MultiPoly<E>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hm = h.leading_monomial().unwrap();
            k != i && hm.divides(lm) && (hm != lm || k < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<MultiPoly<E>> = (0..minimal.len())
        .map(|i| {
            let others: Vec<MultiPoly<E>> = minimal
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, g)| g.clone())
                .collect();
            let g = &minimal[i];
            let lt = ring.monomial(g.leading_coeff().unwrap().clone(), g.leading_monomial().unwrap().clone());
            lt.add(&normal_form(&g.tail(), &others)).make_monic()
        })
        .collect();
    out.sort_by(|a, b| order.cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    out
}

impl<E: FieldElem> GroebnerBasis<E> {
    pub fn basis(&self) -> &[MultiPoly<E>] {
        &self.basis
    }

    pub fn ring(&self) -> &Arc<PolyRing<E>> {
        &self.ring
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn normal_form(&self, f: &MultiPoly<E>) -> MultiPoly<E> {
        normal_form(f, &self.basis)
    }

    pub fn is_member(&self, f: &MultiPoly<E>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Minimal generators of the leading-term ideal.
    pub fn leading_ideal(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_monomial().unwrap().clone())
            .collect()
    }

    /// True when the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant())
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn verify(&self) -> Result<()> {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let (a, b) = (&self.basis[i], &self.basis[j]);
                if a.leading_monomial().unwrap().is_coprime(b.leading_monomial().unwrap()) {
                    continue;
                }
                if !self.normal_form(&s_poly(a, b)).is_zero() {
                    return Err(Error::Inconsistent(format!("S-pair ({i}, {j}) does not reduce to zero")));
                }
            }
        }
        Ok(())
    }

    /// Smallest `e` with `x_v^e` a leading monomial, if any.
    pub fn pure_power_exponent(&self, v: usize) -> Option<u32> {
        self.leading_ideal()
            .iter()
            .filter(|m| m.pure_power_var() == Some(v))
            .map(|m| m.degree())
            .min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{rat, Rational};
    use crate::multipoly::MonomialOrder;
    use proptest::prelude::*;

    fn ring(n: usize, order: MonomialOrder) -> Arc<PolyRing<Rational>> {
        PolyRing::with_prefix("x", n, order, rat(1, 1))
    }

    #[test]
    fn single_variable() {
        let r = ring(1, MonomialOrder::Lex);
        let gb = buchberger(&[r.var(0).scale(&rat(3, 1))], &Limits::default()).unwrap();
        assert_eq!(gb.basis(), &[r.var(0)]);
    }

    #[test]
    fn linear_lex() {
        let r = ring(3, MonomialOrder::Lex);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let gb = buchberger(&[x.sub(&y), y.sub(&z)], &Limits::default()).unwrap();
        assert_eq!(gb.basis(), &[x.sub(&z), y.sub(&z)]);
        assert_eq!(gb.leading_ideal(), vec![Monomial::var(3, 0), Monomial::var(3, 1)]);
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(2, MonomialOrder::Grevlex);
        let (x, y) = (r.var(0), r.var(1));
        let gb = buchberger(&[x.mul(&y), x.pow(2)], &Limits::default()).unwrap();
        assert_eq!(gb.leading_ideal().len(), 2);
        assert!(gb.is_member(&x.pow(3).add(&x.mul(&y.pow(4)))));
        assert_eq!(gb.normal_form(&r.one()), r.one());
    }

    #[test]
    fn twisted_cubic() {
        // ideal of the twisted cubic; standard reduced grevlex basis has 3 quadrics
        let r = ring(4, MonomialOrder::Grevlex);
        let x: Vec<_> = (0..4).map(|i| r.var(i)).collect();
        let gens = vec![
            x[0].mul(&x[2]).sub(&x[1].pow(2)),
            x[1].mul(&x[3]).sub(&x[2].pow(2)),
            x[0].mul(&x[3]).sub(&x[1].mul(&x[2])),
        ];
        let gb = buchberger(&gens, &Limits::default()).unwrap();
        assert_eq!(gb.len(), 3);
        for g in &gens {
            assert!(gb.is_member(g));
        }
        assert!(!gb.is_member(&x[0].pow(2)));
    }

    #[test]
    fn resource_limit_reports() {
        let r = ring(3, MonomialOrder::Lex);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let gens = vec![x.pow(3).sub(&y.mul(&z)), y.pow(3).sub(&x.mul(&z)), z.pow(3).sub(&x.mul(&y))];
        let tight = Limits {
            max_degree: 4,
            max_basis: 5000,
        };
        assert!(matches!(buchberger(&gens, &tight), Err(Error::ResourceLimit(_))));
        let few = Limits {
            max_degree: 30,
            max_basis: 2,
        };
        assert!(matches!(buchberger(&gens, &few), Err(Error::ResourceLimit(_))));
    }

    fn arb_gens() -> impl Strategy<Value = Vec<Vec<(Vec<u32>, i64)>>> {
        let term = (proptest::collection::vec(0u32..3, 3), -3i64..=3);
        proptest::collection::vec(proptest::collection::vec(term, 1..4), 1..4)
    }

    fn build(r: &Arc<PolyRing<Rational>>, gens: &[Vec<(Vec<u32>, i64)>]) -> Vec<MultiPoly<Rational>> {
        gens.iter()
            .map(|g| r.from_terms(g.iter().map(|(e, c)| (Monomial::new(e.clone()), rat(*c, 1))).collect()))
            .filter(|g| !g.is_zero())
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn canonical_and_order_independent(gens in arb_gens(), seed in any::<u64>()) {
            let r = ring(3, MonomialOrder::Grevlex);
            let g = build(&r, &gens);
            prop_assume!(!g.is_empty());
            let Ok(gb) = buchberger(&g, &Limits::default()) else { return Ok(()); };
            for f in &g {
                prop_assert!(gb.is_member(f));
            }
            // permuting generators gives the identical reduced basis
            let mut perm = g.clone();
            let k = (seed % perm.len() as u64) as usize;
            perm.rotate_left(k);
            perm.reverse();
            let gb2 = buchberger(&perm, &Limits::default()).unwrap();
            prop_assert_eq!(gb.basis(), gb2.basis());
            // lex agrees on membership
            let rl = r.with_order(MonomialOrder::Lex);
            let gl: Vec<_> = g.iter().map(|f| f.reorder(&rl).unwrap()).collect();
            if let Ok(gbl) = buchberger(&gl, &Limits::default()) {
                let (x, y) = (r.var(0), r.var(1));
                let probe = g[0].mul(&x).add(&g[g.len() - 1].mul(&y));
                prop_assert!(gbl.is_member(&probe.reorder(&rl).unwrap()));
                let off = x.pow(2).add(&r.one());
                prop_assert_eq!(gb.is_member(&off), gbl.is_member(&off.reorder(&rl).unwrap()));
            }
            // closure under sums and products
            let h = g[0].mul(&r.var(2)).add(&g[g.len() - 1]);
            prop_assert!(gb.is_member(&h));
        }
    }
}
