//! The `PSL_2(p)` action on the moduli space `P^{(p-1)/2}`.
//!
//! An element `[[a, b], [c, d]]` of `SL_2(F_p)` lifts to the automorphism
//! `e1 -> e1^a e2^c`, `e2 -> e1^b e2^d` of `H_p`. New generators are read
//! from that twisted action: `y_0` spans the fixed line of the image of `e2`
//! and `y_i = phi(e1)^{-i} y_0`. Rewriting the dual quadrics in the dual
//! basis of the `y_i` gives the new moduli point. The action is linear on
//! the coordinates and is a right action.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::clifford::{
    build_presentation, dist, family_forms, half, inv_mod, normalize_projective, special_orbit_points, ModuliPoint,
    Verdict,
};
use crate::exactfield::{CycNum, FieldElem};
use crate::groebner::Limits;
use crate::heisenberg::{simple_rep, HElem, Representation};
use crate::linalg::{same_span, Matrix};
use crate::multipoly::MonomialOrder;
use crate::{Error, Result};

/// `[[a, b], [c, d]]` with determinant 1 mod `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct SL2p {
    pub p: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl SL2p {
    pub fn new(p: u32, a: i64, b: i64, c: i64, d: i64) -> Result<SL2p> {
        let m = |x: i64| x.rem_euclid(p as i64) as u32;
        let g = SL2p {
            p,
            a: m(a),
            b: m(b),
            c: m(c),
            d: m(d),
        };
        let det = (g.a as i64 * g.d as i64 - g.b as i64 * g.c as i64).rem_euclid(p as i64);
        if det != 1 {
            return Err(Error::InvalidInput(format!("determinant {det} != 1 mod {p}")));
        }
        Ok(g)
    }

    pub fn identity(p: u32) -> SL2p {
        Self::new(p, 1, 0, 0, 1).unwrap()
    }

    /// `[[0, -1], [1, 0]]`, of order 2 in `PSL_2`.
    pub fn u(p: u32) -> SL2p {
        Self::new(p, 0, -1, 1, 0).unwrap()
    }

    /// `[[0, 1], [-1, 1]]`, of order 3 in `PSL_2`.
    pub fn v(p: u32) -> SL2p {
        Self::new(p, 0, 1, -1, 1).unwrap()
    }

    pub fn mul(&self, o: &SL2p) -> SL2p {
        let (a, b, c, d) = (self.a as i64, self.b as i64, self.c as i64, self.d as i64);
        let (e, f, g, h) = (o.a as i64, o.b as i64, o.c as i64, o.d as i64);
        Self::new(self.p, a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h).unwrap()
    }

    pub fn inverse(&self) -> SL2p {
        Self::new(self.p, self.d as i64, -(self.b as i64), -(self.c as i64), self.a as i64).unwrap()
    }

    pub fn neg(&self) -> SL2p {
        Self::new(self.p, -(self.a as i64), -(self.b as i64), -(self.c as i64), -(self.d as i64)).unwrap()
    }

    pub fn trace(&self) -> u32 {
        (self.a + self.d) % self.p
    }

    /// Representative of the class `{g, -g}` in `PSL_2`.
    pub fn projective(&self) -> SL2p {
        (*self).min(self.neg())
    }

    pub fn is_projective_identity(&self) -> bool {
        self.projective() == SL2p::identity(self.p).projective()
    }

    /// All of `SL_2(F_p)`.
    pub fn all(p: u32) -> Vec<SL2p> {
        let mut out = Vec::new();
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                for c in 0..p as i64 {
                    for d in 0..p as i64 {
                        if let Ok(g) = SL2p::new(p, a, b, c, d) {
                            out.push(g);
                        }
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for SL2p {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Images of `e1` and `e2` under the automorphism attached to `g`.
pub fn lift_automorphism(g: &SL2p) -> (HElem, HElem) {
    let p = g.p;
    (
        HElem::new(p, 0, g.a as i64, g.c as i64),
        HElem::new(p, 0, g.b as i64, g.d as i64),
    )
}

/// Everything needed to move moduli points along one group element.
#[derive(Clone, Debug)]
pub struct Twist {
    g: SL2p,
    y: Matrix<CycNum>,
    y_inv: Matrix<CycNum>,
    /// Linear action on `(a_0, ..., a_h)`.
    moduli: Matrix<CycNum>,
}

impl Twist {
    pub fn new(g: &SL2p) -> Result<Twist> {
        let p = g.p;
        let n = p as usize;
        let h = n / 2;
        let one = CycNum::one(p);
        let rep = simple_rep(p, 1)?;
        let (f1, f2) = lift_automorphism(g);
        let (m1, m2) = (rep.matrix_of(&f1), rep.matrix_of(&f2));
        let ident = Matrix::identity(n, &one);

        let fixed = m2.sub(&ident).null_space();
        if fixed.len() != 1 {
            return Err(Error::Inconsistent(format!("image of e2 has a {}-dimensional fixed space", fixed.len())));
        }
        let m1_inv = m1.inverse()?;
        let mut cols = vec![normalize_projective(&fixed[0])?];
        for i in 1..n {
            let next = m1_inv.mul_vec(&cols[i - 1]);
            cols.push(next);
        }
        let y = Matrix::from_cols(cols);
        let y_inv = y.inverse()?;

        // The twisted e2 permutes the q_k up to scalars, independently of the
        // point; its fixed combination becomes the new q_0.
        let base = family_forms(p, &vec![one.clone(); h + 1]);
        let mut perm = Matrix::zeros(n, n, &CycNum::zero(p));
        for (j, qj) in base.iter().enumerate() {
            let img = m2.transpose().mul(qj).mul(&m2);
            for (k, qk) in base.iter().enumerate() {
                perm[(k, j)] = img[(k, k)].mul(&qk[(k, k)].inv().unwrap());
            }
        }
        let comb = perm.sub(&ident).null_space();
        if comb.len() != 1 {
            return Err(Error::Inconsistent("twisted e2 does not fix a unique quadric".into()));
        }
        let comb = &comb[0];

        let two_inv = CycNum::from_int(p, 2).inv().unwrap();
        let mut moduli = Matrix::zeros(h + 1, h + 1, &CycNum::zero(p));
        for i in 0..=h {
            let mut e = vec![CycNum::zero(p); h + 1];
            e[i] = one.clone();
            let forms = family_forms(p, &e);
            let mut s = Matrix::zeros(n, n, &CycNum::zero(p));
            for (ck, mk) in comb.iter().zip(&forms) {
                s = s.add(&mk.scale(ck));
            }
            let s = y.transpose().mul(&s).mul(&y);
            for u in 0..n {
                for v in 0..n {
                    if (u + v) % n != 0 && !s[(u, v)].is_zero() {
                        return Err(Error::Inconsistent("twisted quadric left the family".into()));
                    }
                }
            }
            moduli[(0, i)] = s[(0, 0)].mul(&two_inv);
            for m in 1..=h {
                moduli[(dist(p, m, n - m), i)] = s[(m, n - m)].clone();
            }
        }
        Ok(Twist { g: *g, y, y_inv, moduli })
    }

    pub fn element(&self) -> &SL2p {
        &self.g
    }

    /// Columns are the new generators `y_i` in `x`-coordinates.
    pub fn basis(&self) -> &Matrix<CycNum> {
        &self.y
    }

    pub fn moduli_matrix(&self) -> &Matrix<CycNum> {
        &self.moduli
    }

    /// The twisted point, after checking that the rewritten quadric span is
    /// exactly the family span there.
    pub fn apply(&self, pt: &ModuliPoint) -> Result<ModuliPoint> {
        let p = pt.prime();
        if p != self.g.p {
            return Err(Error::PrimeMismatch(self.g.p, p));
        }
        let image = ModuliPoint::new(p, self.moduli.mul_vec(pt.coords()))?;
        let flat = |m: &Matrix<CycNum>| -> Vec<CycNum> { m.to_rows().into_iter().flatten().collect() };
        let moved: Vec<Vec<CycNum>> = family_forms(p, pt.coords())
            .iter()
            .map(|s| flat(&self.y.transpose().mul(s).mul(&self.y)))
            .collect();
        let target: Vec<Vec<CycNum>> = family_forms(p, image.coords()).iter().map(flat).collect();
        let nn = (p * p) as usize;
        if !same_span(&moved, &target, nn) {
            return Err(Error::Inconsistent(format!("twist of {pt} does not land in the family")));
        }
        Ok(image)
    }

    /// Relations of the algebra at `pt` rewritten in the `y` basis.
    pub fn relations(&self, pt: &ModuliPoint) -> Result<Vec<Vec<CycNum>>> {
        let pres = build_presentation(pt)?;
        let t = self.y_inv.kron(&self.y_inv);
        Ok(pres.algebra().relations().iter().map(|r| t.mul_vec(r)).collect())
    }
}

pub fn twist_action(g: &SL2p, pt: &ModuliPoint) -> Result<ModuliPoint> {
    Twist::new(g)?.apply(pt)
}

/// Orbit under the group generated by `U` and `V`, each point paired with an
/// element `g` such that `twist(g, start)` is that point.
pub fn orbit_with_elements(start: &ModuliPoint) -> Result<Vec<(ModuliPoint, SL2p)>> {
    let p = start.prime();
    let gens = [Twist::new(&SL2p::u(p))?, Twist::new(&SL2p::v(p))?];
    let mut seen: BTreeMap<ModuliPoint, SL2p> = BTreeMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone(), SL2p::identity(p));
    queue.push_back(start.clone());
    while let Some(pt) = queue.pop_front() {
        let w = seen[&pt];
        for t in &gens {
            let next = t.apply(&pt)?;
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), w.mul(t.element()));
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

pub fn orbit(start: &ModuliPoint) -> Result<Vec<ModuliPoint>> {
    Ok(orbit_with_elements(start)?.into_iter().map(|(pt, _)| pt).collect())
}

/// The `p` eigenlines of a non-central element.
pub fn projective_fixed_points(g: &HElem, rep: &Representation) -> Result<Vec<Vec<CycNum>>> {
    if g.is_central() {
        return Err(Error::InvalidInput("a central element fixes every point".into()));
    }
    let p = rep.prime();
    let m = rep.matrix_of(g);
    let ident = Matrix::identity(rep.dim(), &CycNum::one(p));
    let mut out = BTreeSet::new();
    // for odd p every non-central image has p-th-root-of-unity eigenvalues
    for j in 0..p as i64 {
        for v in m.sub(&ident.scale(&CycNum::omega_pow(p, j))).null_space() {
            out.insert(normalize_projective(&v)?);
        }
    }
    if out.len() != rep.dim() {
        return Err(Error::Inconsistent(format!(
            "found {} eigenlines, expected {}",
            out.len(),
            rep.dim()
        )));
    }
    Ok(out.into_iter().collect())
}

/// The moduli points whose algebra is the anticommuting quantum space.
///
/// At a point `s` of a special orbit of the squares representation the form
/// `M(s)` must have rank one. Combining the minors on rows/columns `0, e, -e`
/// gives `a_{d(2e)} = 2 s_e s_{-e/2} / (s_0 s_{e/2})`; the full rank-one
/// condition is then checked on the whole orbit.
pub fn quantum_points(p: u32) -> Result<Vec<ModuliPoint>> {
    let n = p as usize;
    let h = n / 2;
    let squares = simple_rep(p, 2)?;
    let mut out = BTreeSet::new();
    out.insert(ModuliPoint::quantum(p)?);
    let inv4 = inv_mod(4, p);
    for j in 0..p as i64 {
        let fixed = projective_fixed_points(&HElem::new(p, 0, -1, j), &squares)?;
        let s = &fixed[0];
        if s.iter().any(|x| x.is_zero()) {
            return Err(Error::Inconsistent("special orbit point with a zero coordinate".into()));
        }
        let mut a = vec![CycNum::one(p); h + 1];
        for (i, ai) in a.iter_mut().enumerate().skip(1) {
            let i = i as i64;
            let q = (i * inv4).rem_euclid(p as i64) as usize;
            let mq = (-i * inv4).rem_euclid(p as i64) as usize;
            let num = CycNum::from_int(p, 2).mul(&s[half(p, i)]).mul(&s[mq]);
            *ai = num.mul(&s[0].mul(&s[q]).inv().unwrap());
        }
        let forms = family_forms(p, &a);
        for pt in &fixed {
            let mut m = Matrix::zeros(n, n, &CycNum::zero(p));
            for (mk, sk) in forms.iter().zip(pt) {
                m = m.add(&mk.scale(sk));
            }
            if m.rank() != 1 {
                return Err(Error::Inconsistent(format!("rank-one condition fails for j = {j}")));
            }
        }
        out.insert(ModuliPoint::new(p, a)?);
    }
    if out.len() != n + 1 {
        return Err(Error::Inconsistent(format!("found {} quantum points, expected {}", out.len(), n + 1)));
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityPair {
    pub quantum_point: ModuliPoint,
    /// Generator of the order-`p` subgroup fixing the quantum point.
    pub generator: SL2p,
    /// All fixed points of the generator, the quantum point included.
    pub fixed_points: Vec<ModuliPoint>,
    /// Normal vector of the hyperplane through the other fixed points.
    pub hyperplane_normal: Vec<CycNum>,
}

/// Eigenlines of a moduli matrix whose projective order is `p`, given one
/// known eigenvector.
fn moduli_fixed_points(l: &Matrix<CycNum>, known: &ModuliPoint) -> Result<Vec<ModuliPoint>> {
    let p = known.prime();
    let q = known.coords();
    let lq = l.mul_vec(q);
    let j = q.iter().position(|x| !x.is_zero()).unwrap();
    let lambda = lq[j].mul(&q[j].inv().unwrap());
    if lq.iter().zip(q).any(|(x, y)| *x != lambda.mul(y)) {
        return Err(Error::Inconsistent("point is not fixed".into()));
    }
    let ident = Matrix::identity(l.nrows(), &CycNum::one(p));
    let mut out = BTreeSet::new();
    for m in 0..p as i64 {
        let mu = lambda.mul(&CycNum::omega_pow(p, m));
        for v in l.sub(&ident.scale(&mu)).null_space() {
            out.insert(ModuliPoint::new(p, v)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// Hyperplane attached to a quantum point through its fixing `p`-Sylow subgroup.
pub fn duality_map(q: &ModuliPoint) -> Result<DualityPair> {
    let p = q.prime();
    let h = p as usize / 2;
    if !quantum_points(p)?.contains(q) {
        return Err(Error::InvalidInput(format!("{q} is not a quantum point")));
    }
    let mut generator = None;
    for g in SL2p::all(p) {
        if g.trace() != 2 || g == SL2p::identity(p) {
            continue;
        }
        let t = Twist::new(&g)?;
        if t.apply(q)? == *q {
            generator = Some(t);
            break;
        }
    }
    let t = generator.ok_or_else(|| Error::Inconsistent("no order-p element fixes the point".into()))?;
    let fixed = moduli_fixed_points(t.moduli_matrix(), q)?;
    if fixed.len() != h + 1 {
        return Err(Error::Inconsistent(format!("{} fixed points, expected {}", fixed.len(), h + 1)));
    }
    let others: Vec<Vec<CycNum>> = fixed.iter().filter(|f| *f != q).map(|f| f.coords().to_vec()).collect();
    let normal = Matrix::from_rows(others).null_space();
    if normal.len() != 1 {
        return Err(Error::Inconsistent("fixed points do not span a hyperplane".into()));
    }
    Ok(DualityPair {
        quantum_point: q.clone(),
        generator: *t.element(),
        fixed_points: fixed,
        hyperplane_normal: normalize_projective(&normal[0])?,
    })
}

/// The twelve points of `AB + C^2 = 0` on the six lines at `p = 5`.
pub fn conic_special_points() -> Vec<ModuliPoint> {
    let w = |k: i64| CycNum::omega_pow(5, k);
    let s1 = w(1).add(&w(4));
    let s2 = w(2).add(&w(3));
    let mut out = vec![
        ModuliPoint::from_abc(CycNum::one(5), CycNum::zero(5), CycNum::zero(5)).unwrap(),
        ModuliPoint::from_abc(CycNum::zero(5), CycNum::one(5), CycNum::zero(5)).unwrap(),
    ];
    for k in 0..5 {
        out.push(ModuliPoint::from_ab(w(k).mul(&s2), w(-k).mul(&s1)).unwrap());
        out.push(ModuliPoint::from_ab(w(k).mul(&s1), w(-k).mul(&s2)).unwrap());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LineConfiguration {
    pub point: ModuliPoint,
    pub verdict: Verdict,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FullGraphCheck {
    pub duality: DualityPair,
    /// Vertices shared by both configurations, normalized.
    pub vertices: Vec<Vec<CycNum>>,
    pub configurations: Vec<LineConfiguration>,
    /// The vertices form one `H_p`-orbit.
    pub vertex_orbit: bool,
    /// The two edge sets are disjoint and together give every pair.
    pub complete: bool,
}

/// At `p = 5`: the two conic points on each dual line give 5-line
/// configurations on a common vertex orbit whose edges make up `K_5`.
pub fn full_graph_duality(limits: &Limits) -> Result<Vec<FullGraphCheck>> {
    let specials = conic_special_points();
    let orbits = special_orbit_points(5)?;
    let mut out = Vec::new();
    for q in quantum_points(5)? {
        let duality = duality_map(&q)?;
        let on_line: Vec<&ModuliPoint> = specials
            .iter()
            .filter(|pt| {
                pt.coords()
                    .iter()
                    .zip(&duality.hyperplane_normal)
                    .fold(CycNum::zero(5), |acc, (x, y)| acc.add(&x.mul(y)))
                    .is_zero()
            })
            .collect();
        if on_line.len() != 2 {
            return Err(Error::Inconsistent(format!("line meets the conic in {} special points", on_line.len())));
        }
        let mut vertex_sets = Vec::new();
        let mut configurations = Vec::new();
        let mut edge_sets: Vec<BTreeSet<(Vec<CycNum>, Vec<CycNum>)>> = Vec::new();
        for pt in on_line {
            let pres = build_presentation(pt)?;
            let bp = pres.base_point_analysis(MonomialOrder::Grevlex, limits, &[])?;
            let verts = bp.verified_points.clone();
            let edges = pres.locus_edges(&verts);
            edge_sets.push(edges.iter().map(|&(i, j)| (verts[i].clone(), verts[j].clone())).collect());
            vertex_sets.push(verts);
            configurations.push(LineConfiguration {
                point: pt.clone(),
                verdict: bp.verdict,
                edges,
            });
        }
        let vertices = vertex_sets[0].clone();
        let vertex_orbit = vertex_sets[0] == vertex_sets[1]
            && vertices.len() == 5
            && orbits.contains(&vertices);
        let complete = vertex_orbit
            && edge_sets.iter().all(|e| e.len() == 5)
            && edge_sets[0].is_disjoint(&edge_sets[1]);
        out.push(FullGraphCheck {
            duality,
            vertices,
            configurations,
            vertex_orbit,
            complete,
        });
    }
    Ok(out)
}
