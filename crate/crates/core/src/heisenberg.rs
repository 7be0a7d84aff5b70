//! The Heisenberg group `H_p` of order `p^3`: group law, the simple
//! representations `W_{i,j}` and `V_i`, conjugacy classes and characters.
//!
//! Elements are written `z^r e1^s e2^t` with `e2^t e1^s = z^{-ts} e1^s e2^t`,
//! so that `[e1, e2] = e1 e2 e1^-1 e2^-1 = z`.

use std::fmt;

use crate::exactfield::{is_prime, CycNum, FieldElem, Rational};
use crate::linalg::Matrix;
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct HElem {
    pub p: u32,
    pub z: u32,
    pub e1: u32,
    pub e2: u32,
}

fn md(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

impl HElem {
    pub fn new(p: u32, z: i64, e1: i64, e2: i64) -> HElem {
        HElem {
            p,
            z: md(z, p),
            e1: md(e1, p),
            e2: md(e2, p),
        }
    }

    pub fn identity(p: u32) -> HElem {
        Self::new(p, 0, 0, 0)
    }

    pub fn e1(p: u32) -> HElem {
        Self::new(p, 0, 1, 0)
    }

    pub fn e2(p: u32) -> HElem {
        Self::new(p, 0, 0, 1)
    }

    pub fn z(p: u32) -> HElem {
        Self::new(p, 1, 0, 0)
    }

    pub fn mul(&self, o: &HElem) -> HElem {
        assert_eq!(self.p, o.p, "elements of different groups");
        let (r, s, t) = (self.z as i64, self.e1 as i64, self.e2 as i64);
        let (r2, s2, t2) = (o.z as i64, o.e1 as i64, o.e2 as i64);
        Self::new(self.p, r + r2 - t * s2, s + s2, t + t2)
    }

    pub fn inv(&self) -> HElem {
        let (r, s, t) = (self.z as i64, self.e1 as i64, self.e2 as i64);
        Self::new(self.p, -r - t * s, -s, -t)
    }

    pub fn pow(&self, n: i64) -> HElem {
        let base = if n < 0 { self.inv() } else { *self };
        let mut acc = Self::identity(self.p);
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn commutator(&self, o: &HElem) -> HElem {
        self.mul(o).mul(&self.inv()).mul(&o.inv())
    }

    pub fn is_central(&self) -> bool {
        self.e1 == 0 && self.e2 == 0
    }

    /// Index of the conjugacy class containing this element.
    pub fn class_index(&self) -> usize {
        class_index(self.p, self)
    }
}

impl fmt::Display for HElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("z", self.z), ("e1", self.e1), ("e2", self.e2)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

fn check_prime(p: u32) -> Result<()> {
    if p >= 3 && is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

/// Number of conjugacy classes, `p^2 + p - 1`.
pub fn num_classes(p: u32) -> usize {
    (p * p + p - 1) as usize
}

/// Class representatives: `z^0..z^{p-1}`, then `e1^a e2^b` for
/// `(a, b) != (0, 0)` in lexicographic order.
pub fn class_reps(p: u32) -> Vec<HElem> {
    let mut reps: Vec<HElem> = (0..p).map(|k| HElem::new(p, k as i64, 0, 0)).collect();
    for a in 0..p {
        for b in 0..p {
            if (a, b) != (0, 0) {
                reps.push(HElem::new(p, 0, a as i64, b as i64));
            }
        }
    }
    reps
}

pub fn class_index(p: u32, g: &HElem) -> usize {
    if g.is_central() {
        g.z as usize
    } else {
        (p + g.e1 * p + g.e2 - 1) as usize
    }
}

pub fn class_sizes(p: u32) -> Vec<u64> {
    (0..num_classes(p))
        .map(|i| if i < p as usize { 1 } else { p as u64 })
        .collect()
}

pub fn group_order(p: u32) -> u64 {
    (p as u64).pow(3)
}

/// A representation given by the images of `e1` and `e2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    p: u32,
    e1: Matrix<CycNum>,
    e2: Matrix<CycNum>,
}

impl Representation {
    /// Build and verify `e1^p = e2^p = 1` and that `[e1, e2]` is central of
    /// order dividing `p`.
    pub fn new(p: u32, e1: Matrix<CycNum>, e2: Matrix<CycNum>) -> Result<Representation> {
        check_prime(p)?;
        let rep = Representation { p, e1, e2 };
        rep.verify()?;
        Ok(rep)
    }

    fn verify(&self) -> Result<()> {
        let n = self.dim();
        if self.e1.nrows() != n || self.e1.ncols() != n || self.e2.ncols() != n || self.e2.nrows() != n {
            return Err(Error::InvalidInput("generator matrices must be square of equal size".into()));
        }
        if !self.e1.pow(self.p).is_identity() || !self.e2.pow(self.p).is_identity() {
            return Err(Error::Inconsistent("e1^p or e2^p is not the identity".into()));
        }
        let z = self.matrix_of(&HElem::z(self.p));
        let zc = self.e1.mul(&self.e2).mul(&self.e1.inverse()?).mul(&self.e2.inverse()?);
        if z != zc {
            return Err(Error::Inconsistent("commutator mismatch".into()));
        }
        if self.e1.mul(&z) != z.mul(&self.e1) || self.e2.mul(&z) != z.mul(&self.e2) {
            return Err(Error::Inconsistent("commutator is not central".into()));
        }
        if !z.pow(self.p).is_identity() {
            return Err(Error::Inconsistent("z^p is not the identity".into()));
        }
        Ok(())
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.e1.nrows()
    }

    pub fn e1(&self) -> &Matrix<CycNum> {
        &self.e1
    }

    pub fn e2(&self) -> &Matrix<CycNum> {
        &self.e2
    }

    /// Image of an arbitrary group element.
    pub fn matrix_of(&self, g: &HElem) -> Matrix<CycNum> {
        let e1 = self.e1.pow(g.e1);
        let e2 = self.e2.pow(g.e2);
        let word = e1.mul(&e2);
        if g.z == 0 {
            return word;
        }
        let c = self
            .e1
            .mul(&self.e2)
            .mul(&self.e1.pow(self.p - 1))
            .mul(&self.e2.pow(self.p - 1));
        c.pow(g.z).mul(&word)
    }

    pub fn tensor(&self, other: &Representation) -> Result<Representation> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Representation::new(self.p, self.e1.kron(&other.e1), self.e2.kron(&other.e2))
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if self.p != other.p {
            return Err(Error::PrimeMismatch(self.p, other.p));
        }
        Representation::new(self.p, block_diag(&self.e1, &other.e1), block_diag(&self.e2, &other.e2))
    }

    /// Contragredient representation `g -> (g^-1)^T`.
    pub fn dual(&self) -> Result<Representation> {
        Representation::new(
            self.p,
            self.e1.inverse()?.transpose(),
            self.e2.inverse()?.transpose(),
        )
    }
}

fn block_diag(a: &Matrix<CycNum>, b: &Matrix<CycNum>) -> Matrix<CycNum> {
    let like = &a[(0, 0)];
    let (n, m) = (a.nrows(), b.nrows());
    let mut out = Matrix::zeros(n + m, n + m, like);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[(n + i, n + j)] = b[(i, j)].clone();
        }
    }
    out
}

/// The `p`-dimensional simple `V_i`: `e1 x_j = x_{j-1}`, `e2 x_j = w^{ij} x_j`,
/// so that `z` acts as `w^i`.
pub fn simple_rep(p: u32, i: u32) -> Result<Representation> {
    check_prime(p)?;
    if i.is_multiple_of(p) {
        return Err(Error::InvalidInput("V_i needs i != 0 mod p".into()));
    }
    let zero = CycNum::zero(p);
    let n = p as usize;
    let mut e1 = Matrix::zeros(n, n, &zero);
    for j in 0..n {
        e1[((j + n - 1) % n, j)] = CycNum::one(p);
    }
    let diag: Vec<CycNum> = (0..n)
        .map(|j| CycNum::omega_pow(p, i as i64 * j as i64))
        .collect();
    Representation::new(p, e1, Matrix::diagonal(&diag))
}

/// The one-dimensional `W_{i,j}`: `e1 -> w^i`, `e2 -> w^j`.
pub fn one_dim_rep(p: u32, i: u32, j: u32) -> Result<Representation> {
    check_prime(p)?;
    Representation::new(
        p,
        Matrix::diagonal(&[CycNum::omega_pow(p, i as i64)]),
        Matrix::diagonal(&[CycNum::omega_pow(p, j as i64)]),
    )
}

/// A class function, one value per conjugacy class in [`class_reps`] order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Character {
    pub p: u32,
    pub values: Vec<CycNum>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum SimpleLabel {
    /// One-dimensional `W_{i,j}`; `W_{0,0}` is the trivial representation.
    W(u32, u32),
    V(u32),
}

impl fmt::Display for SimpleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleLabel::W(0, 0) => f.write_str("T"),
            SimpleLabel::W(i, j) => write!(f, "W_{{{i},{j}}}"),
            SimpleLabel::V(i) => write!(f, "V_{i}"),
        }
    }
}

impl Character {
    pub fn of(rep: &Representation) -> Character {
        let p = rep.prime();
        Character {
            p,
            values: class_reps(p).iter().map(|g| rep.matrix_of(g).trace()).collect(),
        }
    }

    /// Character of a simple representation from the closed formulas.
    pub fn simple(p: u32, label: SimpleLabel) -> Character {
        let values = class_reps(p)
            .iter()
            .map(|g| match label {
                SimpleLabel::W(i, j) => {
                    if g.is_central() {
                        CycNum::one(p)
                    } else {
                        CycNum::omega_pow(p, (i * g.e1 + j * g.e2) as i64)
                    }
                }
                SimpleLabel::V(i) => {
                    if g.is_central() {
                        CycNum::omega_pow(p, (i * g.z) as i64).scale(&Rational::from_integer(p.into()))
                    } else {
                        CycNum::zero(p)
                    }
                }
            })
            .collect();
        Character { p, values }
    }

    pub fn trivial(p: u32) -> Character {
        Self::simple(p, SimpleLabel::W(0, 0))
    }

    pub fn degree(&self) -> &CycNum {
        &self.values[0]
    }

    pub fn at(&self, g: &HElem) -> &CycNum {
        &self.values[g.class_index()]
    }

    pub fn add(&self, o: &Character) -> Character {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn mul(&self, o: &Character) -> Character {
        self.zip(o, |a, b| a.mul(b))
    }

    pub fn scale(&self, n: i64) -> Character {
        let c = CycNum::from_int(self.p, n);
        Character {
            p: self.p,
            values: self.values.iter().map(|v| v.mul(&c)).collect(),
        }
    }

    pub fn conj(&self) -> Character {
        Character {
            p: self.p,
            values: self.values.iter().map(CycNum::conj).collect(),
        }
    }

    fn zip(&self, o: &Character, f: impl Fn(&CycNum, &CycNum) -> CycNum) -> Character {
        assert_eq!(self.p, o.p);
        Character {
            p: self.p,
            values: self.values.iter().zip(&o.values).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `(1/|G|) sum_g chi(g) conj(psi(g))`.
    pub fn inner(&self, o: &Character) -> CycNum {
        let p = self.p;
        let sizes = class_sizes(p);
        let mut acc = CycNum::zero(p);
        for ((a, b), &s) in self.values.iter().zip(&o.values).zip(&sizes) {
            acc = acc.add(&a.mul(&b.conj()).mul(&CycNum::from_int(p, s as i64)));
        }
        acc.scale(&Rational::new(1.into(), group_order(p).into()))
    }

    /// Multiplicities of the simple constituents, sorted by label.
    pub fn decompose(&self) -> Result<Vec<(SimpleLabel, u64)>> {
        let p = self.p;
        let mut out = Vec::new();
        let mut rebuilt = Character {
            p,
            values: vec![CycNum::zero(p); num_classes(p)],
        };
        for label in simple_labels(p) {
            let chi = Character::simple(p, label);
            let m = self.inner(&chi);
            let m = m
                .to_rational()
                .filter(|r| r.is_integer() && *r >= Rational::from_integer(0.into()))
                .ok_or_else(|| Error::NotACharacter(format!("multiplicity of {label} is {m}")))?;
            let m: u64 = m.to_integer().try_into().map_err(|_| Error::NotACharacter("huge multiplicity".into()))?;
            if m > 0 {
                rebuilt = rebuilt.add(&chi.scale(m as i64));
                out.push((label, m));
            }
        }
        if rebuilt != *self {
            return Err(Error::NotACharacter("not a combination of simple characters".into()));
        }
        Ok(out)
    }
}

/// All `p^2 + p - 1` simple labels: the `W_{i,j}` then the `V_i`.
pub fn simple_labels(p: u32) -> Vec<SimpleLabel> {
    let mut out = Vec::new();
    for i in 0..p {
        for j in 0..p {
            out.push(SimpleLabel::W(i, j));
        }
    }
    out.extend((1..p).map(SimpleLabel::V));
    out
}

/// Power sums `tr(g^k)` turned into the coefficients of `det(I + tG)` and
/// `1/det(I - tG)` up to degree `n` (Newton's identities).
pub fn power_characters(g: &Matrix<CycNum>, n: usize) -> (Vec<CycNum>, Vec<CycNum>) {
    let dim = g.nrows();
    let like = g[(0, 0)].clone();
    let mut sums = vec![like.zero_like()];
    let mut pw = g.clone();
    for k in 1..=n {
        if k > 1 {
            pw = pw.mul(g);
        }
        sums.push(pw.trace());
    }
    let mut ext = vec![like.one_like()];
    let mut sym = vec![like.one_like()];
    for k in 1..=n {
        let inv_k = like.from_int_like(k as i64).inv().unwrap();
        let mut e = like.zero_like();
        let mut h = like.zero_like();
        for i in 1..=k {
            let term = ext[k - i].mul(&sums[i]);
            e = if i % 2 == 1 { e.add(&term) } else { e.sub(&term) };
            h = h.add(&sym[k - i].mul(&sums[i]));
        }
        ext.push(if k > dim { like.zero_like() } else { e.mul(&inv_k) });
        sym.push(h.mul(&inv_k));
    }
    (ext, sym)
}

/// Characters of `S^k V` and `wedge^k V` for `k <= n`, from [`power_characters`]
/// evaluated at every class representative.
pub fn power_character_series(rep: &Representation, n: usize) -> (Vec<Character>, Vec<Character>) {
    let p = rep.prime();
    let per_class: Vec<(Vec<CycNum>, Vec<CycNum>)> = class_reps(p)
        .iter()
        .map(|g| power_characters(&rep.matrix_of(g), n))
        .collect();
    let collect = |pick: &dyn Fn(&(Vec<CycNum>, Vec<CycNum>)) -> &Vec<CycNum>, k: usize| Character {
        p,
        values: per_class.iter().map(|c| pick(c)[k].clone()).collect(),
    };
    let sym = (0..=n).map(|k| collect(&|c| &c.1, k)).collect();
    let ext = (0..=n).map(|k| collect(&|c| &c.0, k)).collect();
    (sym, ext)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn commutator_is_z() {
        for p in [3, 5, 7] {
            assert_eq!(HElem::e1(p).commutator(&HElem::e2(p)), HElem::z(p));
        }
    }

    #[test]
    fn reordering_rule() {
        // e2^2 e1^3 = z^{-6} e1^3 e2^2 = z^4 e1^3 e2^2 for p = 5
        let p = 5;
        let lhs = HElem::e2(p).pow(2).mul(&HElem::e1(p).pow(3));
        assert_eq!(lhs, HElem::new(p, 4, 3, 2));
    }

    #[test]
    fn simple_rep_matrices() {
        let v = simple_rep(5, 1).unwrap();
        let diag: Vec<CycNum> = (0..5).map(|j| v.e2()[(j, j)].clone()).collect();
        assert_eq!(diag, (0..5).map(|j| CycNum::omega_pow(5, j)).collect::<Vec<_>>());
        let z = v.matrix_of(&HElem::z(5));
        assert_eq!(z.as_scalar(), Some(CycNum::omega(5)));
        assert!(v.e1().pow(5).is_identity());
        assert!(simple_rep(5, 0).is_err());
        assert!(simple_rep(9, 1).is_err());
    }

    #[test]
    fn characters_of_v1() {
        let v = simple_rep(5, 1).unwrap();
        let chi = Character::of(&v);
        for k in 0..5 {
            assert_eq!(chi.values[k], CycNum::omega_pow(5, k as i64).scale(&Rational::from_integer(5.into())));
        }
        assert!(chi.at(&HElem::new(5, 0, 2, 3)).is_zero());
        assert_eq!(chi, Character::simple(5, SimpleLabel::V(1)));
        let t = Character::of(&one_dim_rep(5, 0, 0).unwrap());
        assert!(t.values.iter().all(|x| x.is_one()));
    }

    #[test]
    fn table_orthogonality() {
        for p in [3, 5, 7] {
            let labels = simple_labels(p);
            assert_eq!(labels.len(), num_classes(p));
            let chars: Vec<Character> = labels.iter().map(|&l| Character::simple(p, l)).collect();
            for (i, a) in chars.iter().enumerate() {
                for (j, b) in chars.iter().enumerate() {
                    let v = a.inner(b);
                    assert_eq!(v, CycNum::from_int(p, (i == j) as i64));
                }
            }
        }
    }

    #[test]
    fn closed_forms_match_constructed_reps() {
        let p = 3;
        for i in 1..p {
            assert_eq!(Character::of(&simple_rep(p, i).unwrap()), Character::simple(p, SimpleLabel::V(i)));
        }
        for i in 0..p {
            for j in 0..p {
                assert_eq!(
                    Character::of(&one_dim_rep(p, i, j).unwrap()),
                    Character::simple(p, SimpleLabel::W(i, j))
                );
            }
        }
    }

    #[test]
    fn tensor_rules() {
        let p = 5;
        let v = simple_rep(p, 1).unwrap();
        let vv = v.tensor(&simple_rep(p, p - 1).unwrap()).unwrap();
        let d = Character::of(&vv).decompose().unwrap();
        assert_eq!(d.len(), 25);
        assert!(d.iter().all(|(l, m)| matches!(l, SimpleLabel::W(..)) && *m == 1));
        let v2 = v.tensor(&simple_rep(p, 2).unwrap()).unwrap();
        assert_eq!(Character::of(&v2).decompose().unwrap(), vec![(SimpleLabel::V(3), 5)]);
    }

    #[test]
    fn exterior_square() {
        let v = simple_rep(5, 1).unwrap();
        let (_, ext) = power_character_series(&v, 5);
        assert_eq!(ext[2].decompose().unwrap(), vec![(SimpleLabel::V(2), 2)]);
        assert_eq!(ext[5].decompose().unwrap(), vec![(SimpleLabel::W(0, 0), 1)]);
    }

    #[test]
    fn power_series_closed_forms() {
        let p = 5;
        let v = simple_rep(p, 1).unwrap();
        // z^k: (1 + w^k t)^5 and 1/(1 - w^k t)^5
        let (ext, sym) = power_characters(&v.matrix_of(&HElem::z(p)), 6);
        let binom = [1, 5, 10, 10, 5, 1];
        for k in 0..=5 {
            assert_eq!(ext[k], CycNum::omega_pow(p, k as i64).mul(&CycNum::from_int(p, binom[k])));
        }
        // h_2 of five copies of w is 15 w^2
        assert_eq!(sym[2], CycNum::omega_pow(p, 2).mul(&CycNum::from_int(p, 15)));
        // e1: 1 + t^5
        let (ext, sym) = power_characters(v.e1(), 10);
        let mut want = vec![CycNum::zero(p); 11];
        want[0] = CycNum::one(p);
        want[5] = CycNum::one(p);
        assert_eq!(ext, want);
        want[10] = CycNum::one(p);
        assert_eq!(sym, want);
    }

    fn arb_elem(p: u32) -> impl Strategy<Value = HElem> {
        (0..p as i64, 0..p as i64, 0..p as i64).prop_map(move |(a, b, c)| HElem::new(p, a, b, c))
    }

    proptest! {
        #[test]
        fn group_axioms(a in arb_elem(7), b in arb_elem(7), c in arb_elem(7)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&a.inv()), HElem::identity(7));
            prop_assert_eq!(a.inv().mul(&a), HElem::identity(7));
        }

        #[test]
        fn representation_is_a_homomorphism(a in arb_elem(3), b in arb_elem(3)) {
            let v = simple_rep(3, 2).unwrap();
            prop_assert_eq!(v.matrix_of(&a.mul(&b)), v.matrix_of(&a).mul(&v.matrix_of(&b)));
        }

        #[test]
        fn class_functions(a in arb_elem(5), g in arb_elem(5)) {
            // conjugate elements share a class index
            let c = g.mul(&a).mul(&g.inv());
            prop_assert_eq!(c.class_index(), a.class_index());
        }

        #[test]
        fn decompose_direct_sums(picks in proptest::collection::vec((0u32..3, 0u32..3, any::<bool>()), 1..4)) {
            let p = 3;
            let reps: Vec<Representation> = picks
                .iter()
                .map(|&(i, j, big)| if big { simple_rep(p, 1 + i % 2).unwrap() } else { one_dim_rep(p, i, j).unwrap() })
                .collect();
            let mut sum = reps[0].clone();
            for r in &reps[1..] {
                sum = sum.direct_sum(r).unwrap();
            }
            let chi = Character::of(&sum);
            let dec = chi.decompose().unwrap();
            let total: u64 = dec.iter().map(|(_, m)| m).sum();
            prop_assert_eq!(total as usize, reps.len());
            // sum over classes of size * |chi|^2 = |G| * sum m^2
            let norm = chi.inner(&chi);
            let sq: u64 = dec.iter().map(|(_, m)| m * m).sum();
            prop_assert_eq!(norm, CycNum::from_int(p, sq as i64));
        }
    }
}
