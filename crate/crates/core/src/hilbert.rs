//! Hilbert series of graded quotients `K[x_0..x_{n-1}]/I`, computed from the
//! leading-term ideal by the pivot recursion
//! `N(I) = N(I + (x)) + t * N(I : x)` on numerators over `(1-t)^n`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::exactfield::FieldElem;
use crate::groebner::{buchberger, Limits};
use crate::multipoly::{Monomial, MultiPoly};
use crate::{Error, Result};

/// `numerator(t) / (1-t)^denom_power`, in lowest terms.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HilbertSeries {
    pub numerator: Vec<i64>,
    pub denom_power: u32,
}

fn trim(v: &mut Vec<i64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_add(a: &[i64], b: &[i64], shift: usize) -> Vec<i64> {
    let n = a.len().max(b.len() + shift);
    let mut out = vec![0; n];
    for (i, &x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, &x) in b.iter().enumerate() {
        out[i + shift] += x;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn one_minus_t_pow(k: usize) -> Vec<i64> {
    let mut out = vec![1];
    for _ in 0..k {
        out = poly_mul(&out, &[1, -1]);
    }
    out
}

impl HilbertSeries {
    pub fn new(numerator: Vec<i64>, denom_power: u32) -> HilbertSeries {
        let mut h = HilbertSeries {
            numerator,
            denom_power,
        };
        trim(&mut h.numerator);
        if h.numerator == [0] {
            h.denom_power = 0;
        }
        h.reduce();
        h
    }

    /// Cancel common factors of `1-t`.
    fn reduce(&mut self) {
        while self.denom_power > 0 && self.numerator.iter().sum::<i64>() == 0 && self.numerator != [0] {
            // synthetic division by (1 - t): q_i = sum_{j <= i} a_j
            let mut q = Vec::with_capacity(self.numerator.len() - 1);
            let mut acc = 0;
            for &a in &self.numerator[..self.numerator.len() - 1] {
                acc += a;
                q.push(acc);
            }
            self.numerator = if q.is_empty() { vec![0] } else { q };
            trim(&mut self.numerator);
            self.denom_power -= 1;
        }
    }

    /// First `n + 1` Taylor coefficients.
    pub fn expand(&self, n: usize) -> Vec<i64> {
        let den = one_minus_t_pow(self.denom_power as usize);
        expand_rational(&self.numerator, &den, n).expect("(1-t)^d has constant term 1")
    }

    /// Krull dimension minus one of the quotient, i.e. the projective dimension
    /// of its zero set (`-1` for the empty set), and the degree.
    pub fn dimension_and_degree(&self) -> (i64, i64) {
        if self.denom_power == 0 {
            (-1, 0)
        } else {
            (self.denom_power as i64 - 1, self.numerator.iter().sum())
        }
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in self.numerator.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            let body = match (i, mag) {
                (0, _) => mag.to_string(),
                (1, 1) => "t".to_string(),
                (1, _) => format!("{mag}t"),
                (_, 1) => format!("t^{i}"),
                _ => format!("{mag}t^{i}"),
            };
            if parts.is_empty() {
                parts.push(if c < 0 { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{} {body}", if c < 0 { "-" } else { "+" }));
            }
        }
        let num = if parts.is_empty() { "0".to_string() } else { parts.join(" ") };
        match self.denom_power {
            0 => f.write_str(&num),
            d => {
                let num = if parts.len() > 1 { format!("({num})") } else { num };
                if d == 1 {
                    write!(f, "{num} / (1-t)")
                } else {
                    write!(f, "{num} / (1-t)^{d}")
                }
            }
        }
    }
}

/// Taylor coefficients of `num / den` up to `t^n`; `den[0]` must be `±1`.
pub fn expand_rational(num: &[i64], den: &[i64], n: usize) -> Result<Vec<i64>> {
    let d0 = *den.first().ok_or(Error::DivisionByZero)?;
    if d0 != 1 && d0 != -1 {
        return Err(Error::InvalidInput("denominator constant term must be ±1".into()));
    }
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = *num.get(k).unwrap_or(&0);
        for j in 1..den.len().min(k + 1) {
            acc -= den[j] * out[k - j];
        }
        out.push(acc * d0);
    }
    Ok(out)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.exps().cmp(b.exps())));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out.sort_by(|a, b| a.exps().cmp(b.exps()));
    out
}

fn numerator(gens: Vec<Monomial>, n: usize, memo: &mut HashMap<Vec<Monomial>, Vec<i64>>) -> Vec<i64> {
    if let Some(v) = memo.get(&gens) {
        return v.clone();
    }
    let result = if gens.iter().any(Monomial::is_one) {
        vec![0]
    } else if gens.iter().all(|m| m.degree() == 1) {
        one_minus_t_pow(gens.len())
    } else if gens.len() == 1 {
        // 1 - t^deg
        let d = gens[0].degree() as usize;
        let mut v = vec![0; d + 1];
        v[0] = 1;
        v[d] = -1;
        v
    } else {
        // pivot on the variable occurring in the most nonlinear generators
        let mut counts = vec![0usize; n];
        for m in gens.iter().filter(|m| m.degree() > 1) {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    counts[i] += 1;
                }
            }
        }
        let v = (0..n).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
        let x = Monomial::var(n, v);
        let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.exps()[v] == 0).cloned().collect();
        plus.push(x.clone());
        let colon: Vec<Monomial> = gens
            .iter()
            .map(|m| m.div(&m.gcd(&x)).unwrap())
            .collect();
        let a = numerator(minimalize(plus), n, memo);
        let b = numerator(minimalize(colon), n, memo);
        poly_add(&a, &b, 1)
    };
    memo.insert(gens, result.clone());
    result
}

/// Hilbert series of `K[x_0..x_{n-1}] / (lead)` for monomial generators.
pub fn hilbert_of_monomial_quotient(lead: &[Monomial], n: usize) -> HilbertSeries {
    let mut memo = HashMap::new();
    let num = numerator(minimalize(lead.to_vec()), n, &mut memo);
    HilbertSeries::new(num, n as u32)
}

/// Hilbert series of the quotient by a homogeneous ideal.
pub fn hilbert_of_quotient<E: FieldElem>(gens: &[MultiPoly<E>], limits: &Limits) -> Result<HilbertSeries> {
    if let Some(g) = gens.iter().find(|g| !g.is_zero() && g.homogeneous_degree().is_none()) {
        return Err(Error::InvalidInput(format!("generator {g} is not homogeneous")));
    }
    let gb = buchberger(gens, limits)?;
    Ok(hilbert_of_monomial_quotient(&gb.leading_ideal(), gb.ring().nvars()))
}

/// `(dim, degree)` of the projective zero set of the monomial ideal.
pub fn projective_dimension_and_degree(lead: &[Monomial], n: usize) -> (i64, i64) {
    hilbert_of_monomial_quotient(lead, n).dimension_and_degree()
}

/// Count standard monomials of each degree `<= n` by brute force.
pub fn count_standard_monomials(lead: &[Monomial], nvars: usize, n: u32) -> Vec<i64> {
    fn rec(prefix: &mut Vec<u32>, left: u32, nvars: usize, lead: &[Monomial], count: &mut i64) {
        if prefix.len() == nvars - 1 {
            prefix.push(left);
            let m = Monomial::new(prefix.clone());
            if !lead.iter().any(|l| l.divides(&m)) {
                *count += 1;
            }
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(prefix, left - e, nvars, lead, count);
            prefix.pop();
        }
    }
    (0..=n)
        .map(|d| {
            let mut c = 0;
            rec(&mut Vec::new(), d, nvars, lead, &mut c);
            c
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{rat, Rational};
    use crate::multipoly::{MonomialOrder, PolyRing, RingHandle};
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn free_and_trivial_quotients() {
        let h = hilbert_of_monomial_quotient(&[], 5);
        assert_eq!(h, HilbertSeries::new(vec![1], 5));
        assert_eq!(h.expand(5), vec![1, 5, 15, 35, 70, 126]);
        let vars: Vec<Monomial> = (0..5).map(|i| Monomial::var(5, i)).collect();
        let h = hilbert_of_monomial_quotient(&vars, 5);
        assert_eq!(h, HilbertSeries::new(vec![1], 0));
        assert_eq!(h.dimension_and_degree(), (-1, 0));
    }

    #[test]
    fn lowest_terms() {
        // (1 - t^2)/(1-t)^2 = (1+t)/(1-t)
        let h = HilbertSeries::new(vec![1, 0, -1], 2);
        assert_eq!(h, HilbertSeries::new(vec![1, 1], 1));
        assert_eq!(h.to_string(), "(1 + t) / (1-t)");
        assert_eq!(HilbertSeries::new(vec![1, 4, 5, 0, -5], 1).to_string(), "(1 + 4t + 5t^2 - 5t^4) / (1-t)");
        assert_eq!(HilbertSeries::new(vec![1, 3, 1], 2).to_string(), "(1 + 3t + t^2) / (1-t)^2");
    }

    #[test]
    fn expansions() {
        assert_eq!(HilbertSeries::new(vec![1, 4, 5], 1).expand(3), vec![1, 5, 10, 10]);
        assert_eq!(
            expand_rational(&[1, 1], &[1, -4, 5, 0, -5], 5).unwrap(),
            vec![1, 5, 15, 35, 70, 130]
        );
        assert!(expand_rational(&[1], &[2, 1], 3).is_err());
        assert_eq!(HilbertSeries::new(vec![1, 4, 5], 1).dimension_and_degree(), (0, 10));
        assert_eq!(HilbertSeries::new(vec![1, 3, 1], 2).dimension_and_degree(), (1, 5));
    }

    #[test]
    fn twisted_cubic_series() {
        let r = PolyRing::with_prefix("x", 4, MonomialOrder::Grevlex, rat(1, 1));
        let x: Vec<_> = (0..4).map(|i| r.var(i)).collect();
        let gens = vec![
            x[0].mul(&x[2]).sub(&x[1].pow(2)),
            x[1].mul(&x[3]).sub(&x[2].pow(2)),
            x[0].mul(&x[3]).sub(&x[1].mul(&x[2])),
        ];
        let h = hilbert_of_quotient(&gens, &Limits::default()).unwrap();
        assert_eq!(h, HilbertSeries::new(vec![1, 2], 2));
        assert_eq!(h.dimension_and_degree(), (1, 3));
        let rl = r.with_order(MonomialOrder::Lex);
        let gl: Vec<_> = gens.iter().map(|g| g.reorder(&rl).unwrap()).collect();
        assert_eq!(hilbert_of_quotient(&gl, &Limits::default()).unwrap(), h);
        let inhom = vec![x[0].add(&r.one())];
        assert!(hilbert_of_quotient::<Rational>(&inhom, &Limits::default()).is_err());
    }

    proptest! {
        #[test]
        fn matches_standard_monomial_count(gens in proptest::collection::vec(proptest::collection::vec(0u32..3, 4), 0..5)) {
            let lead: Vec<Monomial> = gens.into_iter().map(Monomial::new).filter(|m| !m.is_one()).collect();
            let h = hilbert_of_monomial_quotient(&lead, 4);
            let direct = count_standard_monomials(&lead, 4, 6);
            prop_assert_eq!(h.expand(6), direct.clone());
            prop_assert_eq!(direct[0], 1);
            let linear = minimalize(lead.clone()).iter().filter(|m| m.degree() == 1).count() as i64;
            prop_assert_eq!(direct[1], 4 - linear);
        }
    }

    #[test]
    fn single_generators() {
        assert_eq!(hilbert_of_monomial_quotient(&[m(&[1, 1])], 2), HilbertSeries::new(vec![1, 1], 1));
        assert_eq!(hilbert_of_monomial_quotient(&[m(&[2, 0])], 2), HilbertSeries::new(vec![1, 1], 1));
    }
}
