//! The `H_p`-invariant Clifford family.
//!
//! A moduli point `(a_0 : ... : a_h)`, `h = (p-1)/2`, gives the relations
//! `a_0 (x_u x_v + x_v x_u) = a_d x_k^2` for `u != v`, where `k = (u+v)/2`
//! and `d = min(|u-v|, p-|u-v|)`, all indices mod `p`. The matrices `M_k`
//! collect these coefficients homogeneously: `(M_k)_{kk} = 2 a_0`,
//! `(M_k)_{uv} = a_d`. The Koszul dual is commutative with relations
//! `q_k = z^T M_k z`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::exactfield::{is_prime, CycNum, FieldElem, Rational};
use crate::groebner::{buchberger, Limits};
use crate::heisenberg::{class_reps, simple_rep, Character};
use crate::hilbert::{hilbert_of_monomial_quotient, HilbertSeries};
use crate::linalg::{rref, same_span, Matrix};
use crate::multipoly::{Monomial, MonomialOrder, MultiPoly, PolyRing, RingHandle};
use crate::quad_algebra::{CharacterSeries, QuadraticAlgebra};
use crate::{Error, Result};

pub(crate) fn inv_mod(a: i64, p: u32) -> i64 {
    let p = p as i64;
    let a = a.rem_euclid(p);
    (1..p).find(|x| (a * x) % p == 1).expect("invertible residue")
}

/// `i / 2` as a residue mod `p`.
pub fn half(p: u32, i: i64) -> usize {
    (i * inv_mod(2, p)).rem_euclid(p as i64) as usize
}

/// Cyclic distance between two indices.
pub fn dist(p: u32, u: usize, v: usize) -> usize {
    let p = p as usize;
    let d = (u + p - v) % p;
    d.min(p - d)
}

/// Normalize a projective vector so its first nonzero entry is 1.
pub fn normalize_projective(v: &[CycNum]) -> Result<Vec<CycNum>> {
    let first = v
        .iter()
        .find(|x| !x.is_zero())
        .ok_or_else(|| Error::InvalidInput("the zero vector is not a projective point".into()))?;
    let inv = first.inv().unwrap();
    Ok(v.iter().map(|x| x.mul(&inv)).collect())
}

pub(crate) fn fmt_point(v: &[CycNum]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(" : "))
}

/// A point `(a_0 : ... : a_h)` of the moduli space, first nonzero entry 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct ModuliPoint {
    p: u32,
    coords: Vec<CycNum>,
}

impl ModuliPoint {
    pub fn new(p: u32, coords: Vec<CycNum>) -> Result<ModuliPoint> {
        if p < 3 || !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if coords.len() != (p as usize).div_ceil(2) {
            return Err(Error::Arity {
                expected: (p as usize).div_ceil(2),
                got: coords.len(),
            });
        }
        if let Some(c) = coords.iter().find(|c| c.prime() != p) {
            return Err(Error::PrimeMismatch(p, c.prime()));
        }
        Ok(ModuliPoint {
            p,
            coords: normalize_projective(&coords)?,
        })
    }

    /// `(A : B : C)` at `p = 5`, stored as `(a_0, a_1, a_2) = (C, B, A)`.
    pub fn from_abc(a: CycNum, b: CycNum, c: CycNum) -> Result<ModuliPoint> {
        Self::new(5, vec![c, b, a])
    }

    /// The affine chart `C = 1` at `p = 5`.
    pub fn from_ab(a: CycNum, b: CycNum) -> Result<ModuliPoint> {
        Self::from_abc(a, b, CycNum::one(5))
    }

    /// The affine parameter `t = a_1 / a_0` at `p = 3`.
    pub fn from_t(t: CycNum) -> Result<ModuliPoint> {
        Self::new(3, vec![CycNum::one(3), t])
    }

    /// `(0 : ... : 0 : 1)`; at `p = 3` this is `t = infinity`.
    pub fn infinity(p: u32) -> Result<ModuliPoint> {
        let mut c = vec![CycNum::zero(p); (p as usize).div_ceil(2)];
        *c.last_mut().unwrap() = CycNum::one(p);
        Self::new(p, c)
    }

    /// `(1 : 0 : ... : 0)`, the anticommuting quantum space.
    pub fn quantum(p: u32) -> Result<ModuliPoint> {
        let mut c = vec![CycNum::zero(p); (p as usize).div_ceil(2)];
        c[0] = CycNum::one(p);
        Self::new(p, c)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn coords(&self) -> &[CycNum] {
        &self.coords
    }

    pub fn is_degenerate(&self) -> bool {
        self.coords[0].is_zero()
    }

    /// `(A, B, C)` at `p = 5`.
    pub fn abc(&self) -> Option<[CycNum; 3]> {
        (self.p == 5).then(|| [self.coords[2].clone(), self.coords[1].clone(), self.coords[0].clone()])
    }

    /// `t` at `p = 3`, `None` at infinity.
    pub fn t(&self) -> Option<CycNum> {
        (self.p == 3 && !self.is_degenerate()).then(|| self.coords[1].clone())
    }
}

impl fmt::Display for ModuliPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_point(&self.coords))
    }
}

/// Relation space, quadratic forms and dual quadrics at one moduli point.
#[derive(Clone, Debug)]
pub struct CliffordPresentation {
    point: ModuliPoint,
    m: Vec<Matrix<CycNum>>,
    relations: Vec<Vec<CycNum>>,
    algebra: QuadraticAlgebra,
}

fn sym_vec(p: u32, u: usize, v: usize, c: &CycNum, out: &mut [CycNum]) {
    let n = p as usize;
    out[u * n + v] = out[u * n + v].add(c);
    if u != v {
        out[v * n + u] = out[v * n + u].add(c);
    }
}

/// The pairs `(k+m, k-m)`, `m = 1..=h`, whose anticommutator involves `x_k^2`.
fn class_pairs(p: u32, k: usize) -> Vec<(usize, usize)> {
    let n = p as usize;
    (1..=n / 2).map(|m| ((k + m) % n, (k + n - m) % n)).collect()
}

/// `M_0, ..., M_{p-1}` for arbitrary (not necessarily normalized) coordinates.
pub fn family_forms(p: u32, a: &[CycNum]) -> Vec<Matrix<CycNum>> {
    let n = p as usize;
    (0..n)
        .map(|k| {
            let mut mk = Matrix::zeros(n, n, &CycNum::zero(p));
            mk[(k, k)] = a[0].add(&a[0]);
            for (u, v) in class_pairs(p, k) {
                let d = dist(p, u, v);
                mk[(u, v)] = a[d].clone();
                mk[(v, u)] = a[d].clone();
            }
            mk
        })
        .collect()
}

pub fn build_presentation(point: &ModuliPoint) -> Result<CliffordPresentation> {
    let p = point.p;
    let n = p as usize;
    let a = &point.coords;
    let zero = CycNum::zero(p);

    let m = family_forms(p, a);

    let mut relations = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let k = half(p, (u + v) as i64);
            let mut r = vec![zero.clone(); n * n];
            sym_vec(p, u, v, &a[0], &mut r);
            r[k * n + k] = a[dist(p, u, v)].neg();
            if r.iter().any(|x| !x.is_zero()) {
                relations.push(r);
            }
        }
    }
    if point.is_degenerate() {
        // a_{d'} S_{uv} - a_d S_{u'v'} for pairs sharing the square x_k^2.
        for k in 0..n {
            let pairs = class_pairs(p, k);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                for &(u2, v2) in &pairs[i + 1..] {
                    let mut r = vec![zero.clone(); n * n];
                    sym_vec(p, u, v, &a[dist(p, u2, v2)], &mut r);
                    sym_vec(p, u2, v2, &a[dist(p, u, v)].neg(), &mut r);
                    if r.iter().any(|x| !x.is_zero()) {
                        relations.push(r);
                    }
                }
            }
        }
    }

    let rank = rref(relations.clone(), n * n).rank();
    if rank != n * (n - 1) / 2 {
        return Err(Error::Inconsistent(format!(
            "relation space has rank {rank}, expected {}",
            n * (n - 1) / 2
        )));
    }
    let algebra = QuadraticAlgebra::new(p, n, relations.clone(), Some(simple_rep(p, 1)?))?;
    Ok(CliffordPresentation {
        point: point.clone(),
        m,
        relations,
        algebra,
    })
}

/// Verdict on the common zero set of the dual quadrics in `P^{p-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Empty,
    Points { count: i64 },
    Positive { dim: i64, degree: i64 },
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Empty => write!(f, "empty"),
            Verdict::Points { count } => write!(f, "{count} points"),
            Verdict::Positive { dim, degree } => write!(f, "dimension {dim}, degree {degree}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasePointReport {
    pub verdict: Verdict,
    pub hilbert_series: HilbertSeries,
    /// Smallest `N` with `z_i^N` in the leading ideal, per variable (empty verdict only).
    pub pure_powers: Option<Vec<u32>>,
    /// Candidate points confirmed to lie on every quadric.
    pub verified_points: Vec<Vec<CycNum>>,
    /// For finite loci: the number of verified points equals the degree.
    pub points_certified: Option<bool>,
    pub basis_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub regular: bool,
    pub reason: String,
    pub base_points: Option<BasePointReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DetReport {
    pub det: MultiPoly<CycNum>,
    pub triviality: bool,
    pub leading: CycNum,
}

/// Points of `P^{p-1}` whose `H_p`-stabilizer is nontrivial: the orbits of
/// `(1:0:...:0)` and of `(w^{j i(i+1)/2})_i` for `j = 0..p-1`.
pub fn special_orbit_points(p: u32) -> Result<Vec<Vec<Vec<CycNum>>>> {
    let n = p as usize;
    let rep = simple_rep(p, 1)?;
    let mut reps = Vec::with_capacity(n + 1);
    let mut e0 = vec![CycNum::zero(p); n];
    e0[0] = CycNum::one(p);
    reps.push(e0);
    for j in 0..p as i64 {
        reps.push((0..n as i64).map(|i| CycNum::omega_pow(p, j * i * (i + 1) / 2)).collect());
    }
    let mut out = Vec::new();
    for r in reps {
        let mut orbit = BTreeSet::new();
        for a in 0..p {
            for b in 0..p {
                let g = rep.e1().pow(a).mul(&rep.e2().pow(b));
                orbit.insert(normalize_projective(&g.mul_vec(&r))?);
            }
        }
        out.push(orbit.into_iter().collect());
    }
    Ok(out)
}

impl CliffordPresentation {
    pub fn point(&self) -> &ModuliPoint {
        &self.point
    }

    pub fn prime(&self) -> u32 {
        self.point.p
    }

    pub fn is_degenerate(&self) -> bool {
        self.point.is_degenerate()
    }

    /// `M_0, ..., M_{p-1}`.
    pub fn forms(&self) -> &[Matrix<CycNum>] {
        &self.m
    }

    /// The generating relations, before row reduction.
    pub fn relations(&self) -> &[Vec<CycNum>] {
        &self.relations
    }

    pub fn algebra(&self) -> &QuadraticAlgebra {
        &self.algebra
    }

    pub fn dual_ring(&self, order: MonomialOrder) -> Arc<PolyRing<CycNum>> {
        PolyRing::with_prefix("z", self.prime() as usize, order, CycNum::one(self.prime()))
    }

    /// `q_k = z^T M_k z`.
    pub fn koszul_dual_quadrics(&self, order: MonomialOrder) -> Vec<MultiPoly<CycNum>> {
        let ring = self.dual_ring(order);
        let n = self.prime() as usize;
        self.m
            .iter()
            .map(|mk| {
                let mut terms = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if !mk[(i, j)].is_zero() {
                            let mut e = vec![0; n];
                            e[i] += 1;
                            e[j] += 1;
                            terms.push((Monomial::new(e), mk[(i, j)].clone()));
                        }
                    }
                }
                ring.from_terms(terms)
            })
            .collect()
    }

    /// The dual relation space equals the commutators plus the symmetric
    /// tensors of the `M_k`.
    pub fn cross_validate_dual(&self) -> Result<bool> {
        let p = self.prime();
        let n = p as usize;
        let dual = self.algebra.koszul_dual()?;
        let mut expect = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![CycNum::zero(p); n * n];
                v[i * n + j] = CycNum::one(p);
                v[j * n + i] = CycNum::from_int(p, -1);
                expect.push(v);
            }
        }
        for mk in &self.m {
            expect.push((0..n * n).map(|ij| mk[(ij / n, ij % n)].clone()).collect());
        }
        Ok(same_span(dual.relations(), &expect, n * n))
    }

    /// True when `v` is a common zero of every `q_k`.
    pub fn is_base_point(&self, v: &[CycNum]) -> bool {
        self.m.iter().all(|mk| bilinear(mk, v, v).is_zero())
    }

    /// True when the whole line through `u` and `v` lies on every quadric.
    pub fn line_on_locus(&self, u: &[CycNum], v: &[CycNum]) -> bool {
        self.is_base_point(u) && self.is_base_point(v) && self.m.iter().all(|mk| bilinear(mk, u, v).is_zero())
    }

    /// Pairs of `vertices` joined by a line contained in the base locus.
    pub fn locus_edges(&self, vertices: &[Vec<CycNum>]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if self.line_on_locus(&vertices[i], &vertices[j]) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Gröbner basis and Hilbert series of the dual quotient, checked against
    /// the special `H_p`-orbits and any `extra` candidate points.
    pub fn base_point_analysis(
        &self,
        order: MonomialOrder,
        limits: &Limits,
        extra: &[Vec<CycNum>],
    ) -> Result<BasePointReport> {
        let n = self.prime() as usize;
        let gb = buchberger(&self.koszul_dual_quadrics(order), limits)?;
        let lead = gb.leading_ideal();
        let hs = hilbert_of_monomial_quotient(&lead, n);
        let (dim, degree) = hs.dimension_and_degree();

        let mut candidates: BTreeSet<Vec<CycNum>> = special_orbit_points(self.prime())?.into_iter().flatten().collect();
        for e in extra {
            candidates.insert(normalize_projective(e)?);
        }
        let verified: Vec<Vec<CycNum>> = candidates.into_iter().filter(|v| self.is_base_point(v)).collect();

        let (verdict, pure_powers, certified) = match dim {
            -1 => {
                let pp: Option<Vec<u32>> = (0..n).map(|v| gb.pure_power_exponent(v)).collect();
                if pp.is_none() {
                    return Err(Error::Inconsistent("finite quotient without a pure power of every variable".into()));
                }
                (Verdict::Empty, pp, None)
            }
            0 => (
                Verdict::Points { count: degree },
                None,
                Some(verified.len() as i64 == degree),
            ),
            _ => (Verdict::Positive { dim, degree }, None, None),
        };
        Ok(BasePointReport {
            verdict,
            hilbert_series: hs,
            pure_powers,
            verified_points: verified,
            points_certified: certified,
            basis_size: gb.len(),
        })
    }

    /// Regular exactly when the quadric system has no base point.
    pub fn regularity_verdict(&self, limits: &Limits) -> Result<RegularityReport> {
        if self.is_degenerate() {
            return Ok(RegularityReport {
                regular: false,
                reason: "a_0 = 0: not a graded Clifford algebra of finite global dimension".into(),
                base_points: None,
            });
        }
        let bp = self.base_point_analysis(MonomialOrder::Grevlex, limits, &[])?;
        let regular = bp.verdict == Verdict::Empty;
        let reason = if regular {
            "quadric system is base-point free".to_string()
        } else {
            format!("base locus: {}", bp.verdict)
        };
        Ok(RegularityReport {
            regular,
            reason,
            base_points: Some(bp),
        })
    }

    /// Symmetric matrix `sum_k M_k s_k` in the squares `s_k = x_k^2`.
    pub fn form_matrix_at(&self, s: &[CycNum]) -> Matrix<CycNum> {
        let p = self.prime();
        let n = p as usize;
        let mut out = Matrix::zeros(n, n, &CycNum::zero(p));
        for (mk, sk) in self.m.iter().zip(s) {
            out = out.add(&mk.scale(sk));
        }
        out
    }

    /// `det(sum_k M_k s_k)` by the Leibniz expansion; each entry is a single
    /// term, so every permutation contributes one monomial.
    pub fn det_quadratic_form(&self) -> Result<DetReport> {
        let p = self.prime();
        let n = p as usize;
        if self.is_degenerate() {
            return Err(Error::InvalidInput("det(M) needs a_0 != 0".into()));
        }
        if p > 5 {
            return Err(Error::ResourceLimit(format!("symbolic determinant for p = {p} (limit p <= 5)")));
        }
        let ring = PolyRing::with_prefix("s", n, MonomialOrder::Grevlex, CycNum::one(p));
        // entry (i, j) = coeff * s_k
        let entry = |i: usize, j: usize| -> (usize, CycNum) {
            let k = half(p, (i + j) as i64);
            (k, self.m[k][(i, j)].clone())
        };
        let mut terms = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |sigma, sign| {
            let mut c = CycNum::from_int(p, sign);
            let mut e = vec![0u32; n];
            for (i, &j) in sigma.iter().enumerate() {
                let (k, x) = entry(i, j);
                if x.is_zero() {
                    return;
                }
                c = c.mul(&x);
                e[k] += 1;
            }
            terms.push((Monomial::new(e), c));
        });
        let det = ring.from_terms(terms);

        let shift: Vec<MultiPoly<CycNum>> = (0..n).map(|k| ring.var((k + n - 1) % n)).collect();
        let scale: Vec<MultiPoly<CycNum>> = (0..n)
            .map(|k| ring.var(k).scale(&CycNum::omega_pow(p, 2 * k as i64)))
            .collect();
        let triviality = det.substitute(&shift, &ring)? == det && det.substitute(&scale, &ring)? == det;
        let leading = det.coeff(&Monomial::new(vec![1; n]));
        Ok(DetReport {
            det,
            triviality,
            leading,
        })
    }
}

fn bilinear(m: &Matrix<CycNum>, u: &[CycNum], v: &[CycNum]) -> CycNum {
    let mv = m.mul_vec(v);
    u.iter().zip(&mv).fold(CycNum::zero(u[0].prime()), |acc, (a, b)| acc.add(&a.mul(b)))
}

/// Heap-style enumeration of all permutations with their signs.
fn permutations(v: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize], i64)) {
    fn sign(v: &[usize]) -> i64 {
        let mut s = 1;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    s = -s;
                }
            }
        }
        s
    }
    if start == v.len() {
        let s = sign(v);
        f(v, s);
        return;
    }
    for i in start..v.len() {
        v.swap(start, i);
        permutations(v, start + 1, f);
        v.swap(start, i);
    }
}

/// `D(a, b) = 1 + a^5 - 4ab + a^6 b + 5a^3 b^3 + b^5 + a b^6`.
pub fn discriminant(a: &CycNum, b: &CycNum) -> CycNum {
    let p = a.prime();
    let pw = |x: &CycNum, e: u32| (0..e).fold(CycNum::one(p), |acc, _| acc.mul(x));
    let terms = [
        CycNum::one(p),
        pw(a, 5),
        a.mul(b).mul(&CycNum::from_int(p, -4)),
        pw(a, 6).mul(b),
        pw(a, 3).mul(&pw(b, 3)).mul(&CycNum::from_int(p, 5)),
        pw(b, 5),
        a.mul(&pw(b, 6)),
    ];
    terms.iter().fold(CycNum::zero(p), |acc, t| acc.add(t))
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscriminantCheck {
    pub value: CycNum,
    pub empty: bool,
    /// `D != 0` exactly when the base locus is empty.
    pub agrees: bool,
}

/// Compare `D(a, b) != 0` with the computed emptiness of the base locus at `(a : b : 1)`.
pub fn discriminant_check(a: &CycNum, b: &CycNum, limits: &Limits) -> Result<DiscriminantCheck> {
    if a.prime() != 5 || b.prime() != 5 {
        return Err(Error::InvalidInput("the discriminant is defined for p = 5".into()));
    }
    let value = discriminant(a, b);
    let pres = build_presentation(&ModuliPoint::from_ab(a.clone(), b.clone())?)?;
    let bp = pres.base_point_analysis(MonomialOrder::Grevlex, limits, &[])?;
    let empty = bp.verdict == Verdict::Empty;
    Ok(DiscriminantCheck {
        agrees: empty == !value.is_zero(),
        value,
        empty,
    })
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Closed-form character series of the center of a regular member:
/// `(1 + t^p) / (1 - w^{2k} t^2)^p` on `z^k`, `1 / (1 - t^p)` elsewhere.
pub fn center_series_prediction(p: u32, bound: usize) -> CharacterSeries {
    let n = p as usize;
    let reps = class_reps(p);
    let central = |k: i64, d: usize| -> CycNum {
        let mut acc = CycNum::zero(p);
        for shift in [0, n] {
            if d >= shift && (d - shift).is_multiple_of(2) {
                let m = ((d - shift) / 2) as u64;
                let c = CycNum::from_rational(p, BigRational::from_integer(binomial(n as u64 + m - 1, m)));
                acc = acc.add(&c.mul(&CycNum::omega_pow(p, 2 * k * m as i64)));
            }
        }
        acc
    };
    let degrees = (0..=bound)
        .map(|d| Character {
            p,
            values: reps
                .iter()
                .map(|g| {
                    if g.is_central() {
                        central(g.z as i64, d)
                    } else if d % n == 0 {
                        CycNum::one(p)
                    } else {
                        CycNum::zero(p)
                    }
                })
                .collect(),
        })
        .collect();
    CharacterSeries { p, degrees }
}

/// Linear-constraint check of the ansatz `x_i x_j + x_j x_i = a_{ij} x_k^2`
/// (one square per pair) for the `n`-dimensional action `e1 x_i = x_{i-1}`,
/// `e2 x_i = zeta^i x_i`, `zeta` a primitive `n`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareFamilyReport {
    pub n: usize,
    /// Number of ways to assign a weight-compatible square to each pair.
    pub assignments: usize,
    /// Largest solution dimension over all assignments; 0 means only the
    /// anticommuting quantum space survives.
    pub max_solution_dim: usize,
}

pub fn square_family_constraints(n: usize) -> Result<SquareFamilyReport> {
    if n < 2 {
        return Err(Error::InvalidInput("need at least two generators".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    // e2-weight of x_i x_j is i+j, of x_k^2 is 2k
    let cands: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(i, j)| (0..n).filter(|&k| (2 * k) % n == (i + j) % n).collect())
        .collect();
    let live: Vec<usize> = (0..pairs.len()).filter(|&i| !cands[i].is_empty()).collect();
    let index_of = |u: usize, v: usize| pairs.iter().position(|&q| q == (u.min(v), u.max(v))).unwrap();

    let mut assignments = 0;
    let mut max_dim = 0;
    let mut choice = vec![0usize; live.len()];
    loop {
        assignments += 1;
        let mut k_of = vec![None; pairs.len()];
        for (slot, &pi) in live.iter().enumerate() {
            k_of[pi] = Some(cands[pi][choice[slot]]);
        }
        // unknown per live pair; e1 maps pair P with square k to P-1 with k-1
        let col = |pi: usize| live.iter().position(|&x| x == pi).unwrap();
        let one = Rational::from_integer(1.into());
        let zero = Rational::from_integer(0.into());
        let mut rows = Vec::new();
        for &pi in &live {
            let (i, j) = pairs[pi];
            let k = k_of[pi].unwrap();
            let qi = index_of((i + n - 1) % n, (j + n - 1) % n);
            let mut row = vec![zero.clone(); live.len()];
            row[col(pi)] = one.clone();
            if k_of[qi] == Some((k + n - 1) % n) {
                row[col(qi)] = row[col(qi)].clone() - one.clone();
            }
            rows.push(row);
        }
        let rank = if live.is_empty() { 0 } else { rref(rows, live.len()).rank() };
        max_dim = max_dim.max(live.len() - rank);

        // next assignment
        let mut slot = 0;
        loop {
            if slot == live.len() {
                return Ok(SquareFamilyReport {
                    n,
                    assignments,
                    max_solution_dim: max_dim,
                });
            }
            choice[slot] += 1;
            if choice[slot] < cands[live[slot]].len() {
                break;
            }
            choice[slot] = 0;
            slot += 1;
        }
    }
}

/// Machine-readable summary of one analysis run.
#[derive(Clone, Debug, Serialize)]
pub struct CliffordReport {
    pub p: u32,
    pub point: Vec<String>,
    pub degenerate: bool,
    pub dual_quadrics: Vec<String>,
    pub verdict: Verdict,
    pub regular: bool,
    pub hilbert_series: String,
    pub base_points: BasePointReport,
    pub discriminant: Option<String>,
    pub det_triviality: Option<bool>,
}

/// Full analysis of one point with the given order and limits.
pub fn analyze(point: &ModuliPoint, order: MonomialOrder, limits: &Limits) -> Result<CliffordReport> {
    let pres = build_presentation(point)?;
    let bp = pres.base_point_analysis(order, limits, &[])?;
    let discriminant = point.abc().and_then(|[a, b, c]| {
        (c.is_one()).then(|| discriminant(&a, &b).to_string())
    });
    let det_triviality = if !pres.is_degenerate() && point.p <= 5 {
        Some(pres.det_quadratic_form()?.triviality)
    } else {
        None
    };
    Ok(CliffordReport {
        p: point.p,
        point: point.coords.iter().map(|c| c.to_string()).collect(),
        degenerate: pres.is_degenerate(),
        dual_quadrics: pres.koszul_dual_quadrics(order).iter().map(|q| q.to_string()).collect(),
        regular: !pres.is_degenerate() && bp.verdict == Verdict::Empty,
        verdict: bp.verdict.clone(),
        hilbert_series: bp.hilbert_series.to_string(),
        base_points: bp,
        discriminant,
        det_triviality,
    })
}
