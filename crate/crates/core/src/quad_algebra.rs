//! Quadratic algebras `T(V)/(R)` with `R ⊂ V⊗V`: graded pieces, Koszul duals,
//! and character series for an attached Heisenberg action.
//!
//! Graded pieces are built one degree at a time as
//! `A_n = (A_{n-1} ⊗ V) / image(A_{n-2} ⊗ R)`, with bases given by the free
//! columns of a row-reduced relation matrix. The group acts on each `A_n`
//! through the same normal-form map, so characters are plain traces.

use serde::Serialize;

use crate::exactfield::{CycNum, FieldElem};
use crate::heisenberg::{class_reps, num_classes, Character, HElem, Representation};
use crate::linalg::{rref, same_span, Matrix, Rref};
use crate::{Error, Result};

/// Default bound on the ambient dimension `dim A_{n-1} * dim V` of one step.
pub const DEFAULT_AMBIENT_LIMIT: usize = 5000;

/// Relation vectors use index `i * n + j` for `x_i ⊗ x_j`.
#[derive(Clone, Debug)]
pub struct QuadraticAlgebra {
    p: u32,
    n: usize,
    relations: Vec<Vec<CycNum>>,
    action: Option<Representation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedPieceReport {
    pub degree: usize,
    pub dimension: usize,
    pub character: Option<Vec<CycNum>>,
}

/// One entry per degree `0..=N`; `classes()` gives the per-class view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterSeries {
    pub p: u32,
    pub degrees: Vec<Character>,
}

impl CharacterSeries {
    /// Coefficient sequence of `Ch(g, t)` for the class with index `class`.
    pub fn class_series(&self, class: usize) -> Vec<CycNum> {
        self.degrees.iter().map(|c| c.values[class].clone()).collect()
    }

    pub fn classes(&self) -> Vec<Vec<CycNum>> {
        (0..num_classes(self.p)).map(|c| self.class_series(c)).collect()
    }

    pub fn dims(&self) -> Vec<CycNum> {
        self.class_series(0)
    }
}

impl QuadraticAlgebra {
    pub fn new(
        p: u32,
        n: usize,
        relations: Vec<Vec<CycNum>>,
        action: Option<Representation>,
    ) -> Result<QuadraticAlgebra> {
        if relations.iter().any(|r| r.len() != n * n) {
            return Err(Error::InvalidInput(format!("relations must have length {}", n * n)));
        }
        if let Some(rep) = &action {
            if rep.dim() != n || rep.prime() != p {
                return Err(Error::InvalidInput("action does not match the generators".into()));
            }
        }
        let red = rref(relations, n * n);
        let alg = QuadraticAlgebra {
            p,
            n,
            relations: red.rows,
            action,
        };
        if !alg.is_action_stable() {
            return Err(Error::Inconsistent("relation space is not stable under the action".into()));
        }
        Ok(alg)
    }

    /// Build from relation matrices `r[i][j]` meaning `sum r_ij x_i x_j`.
    pub fn from_matrices(
        p: u32,
        n: usize,
        mats: &[Matrix<CycNum>],
        action: Option<Representation>,
    ) -> Result<QuadraticAlgebra> {
        let rels = mats
            .iter()
            .map(|m| (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].clone()).collect())
            .collect();
        Self::new(p, n, rels, action)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    /// Row-reduced basis of the relation space.
    pub fn relations(&self) -> &[Vec<CycNum>] {
        &self.relations
    }

    pub fn action(&self) -> Option<&Representation> {
        self.action.as_ref()
    }

    pub fn same_relations(&self, other: &QuadraticAlgebra) -> bool {
        self.n == other.n && same_span(&self.relations, &other.relations, self.n * self.n)
    }

    fn is_action_stable(&self) -> bool {
        let Some(rep) = &self.action else {
            return true;
        };
        if self.relations.is_empty() {
            return true;
        }
        let span = Rref {
            rows: self.relations.clone(),
            pivots: self
                .relations
                .iter()
                .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
                .collect(),
            cols: self.n * self.n,
        };
        [rep.e1(), rep.e2()].iter().all(|g| {
            let gg = g.kron(g);
            self.relations.iter().all(|r| span.contains(&gg.mul_vec(r)))
        })
    }

    /// `J = R^⊥ ⊂ V*⊗V*` under `z_i(x_j) = δ_ij`, with the contragredient action.
    pub fn koszul_dual(&self) -> Result<QuadraticAlgebra> {
        let nn = self.n * self.n;
        let dual_rels = if self.relations.is_empty() {
            (0..nn)
                .map(|k| {
                    let mut v = vec![CycNum::zero(self.p); nn];
                    v[k] = CycNum::one(self.p);
                    v
                })
                .collect()
        } else {
            Matrix::from_rows(self.relations.clone()).null_space()
        };
        let action = self.action.as_ref().map(Representation::dual).transpose()?;
        QuadraticAlgebra::new(self.p, self.n, dual_rels, action)
    }

    pub fn tower(&self) -> GradedTower<'_> {
        GradedTower::new(self)
    }

    pub fn graded_piece(&self, degree: usize) -> Result<GradedPieceReport> {
        let mut t = self.tower();
        t.extend_to(degree)?;
        Ok(t.report(degree))
    }

    pub fn character_series(&self, bound: usize) -> Result<CharacterSeries> {
        let mut t = self.tower();
        t.extend_to(bound)?;
        t.character_series()
    }

    pub fn hilbert_dims(&self, bound: usize) -> Result<Vec<usize>> {
        let mut t = self.tower();
        t.extend_to(bound)?;
        Ok(t.dims())
    }

    /// Truncated `Ch_A(g,t) * Ch_{(A^!)^*}(g,-t) - 1` per class, degrees `0..=bound`.
    pub fn koszul_identity_check(&self, bound: usize) -> Result<Vec<Vec<CycNum>>> {
        let a = self.character_series(bound)?;
        let dual = self.koszul_dual()?.character_series(bound)?;
        Ok(koszul_residual(&a, &dual))
    }

    /// `dim A_n` by brute force in `V^{⊗n}`; a test oracle for small cases.
    pub fn brute_force_dim(&self, degree: usize) -> usize {
        if degree < 2 {
            return self.n.pow(degree as u32);
        }
        let n = self.n;
        let total = n.pow(degree as u32);
        let mut rows = Vec::new();
        for left in 0..=degree - 2 {
            let right = degree - 2 - left;
            let (ln, rn) = (n.pow(left as u32), n.pow(right as u32));
            for r in &self.relations {
                for a in 0..ln {
                    for b in 0..rn {
                        let mut v = vec![CycNum::zero(self.p); total];
                        for (k, c) in r.iter().enumerate() {
                            if !c.is_zero() {
                                v[(a * n * n + k) * rn + b] = c.clone();
                            }
                        }
                        rows.push(v);
                    }
                }
            }
        }
        total - rref(rows, total).rank()
    }
}

/// Residual of the Koszul character identity given both series.
pub fn koszul_residual(a: &CharacterSeries, dual: &CharacterSeries) -> Vec<Vec<CycNum>> {
    let p = a.p;
    let bound = a.degrees.len().min(dual.degrees.len());
    (0..num_classes(p))
        .map(|c| {
            let x = a.class_series(c);
            let y: Vec<CycNum> = dual
                .class_series(c)
                .iter()
                .enumerate()
                .map(|(k, v)| if k % 2 == 1 { v.conj().neg() } else { v.conj() })
                .collect();
            (0..bound)
                .map(|k| {
                    let mut acc = CycNum::zero(p);
                    for i in 0..=k {
                        acc = acc.add(&x[i].mul(&y[k - i]));
                    }
                    if k == 0 {
                        acc.sub(&CycNum::one(p))
                    } else {
                        acc
                    }
                })
                .collect()
        })
        .collect()
}

struct Level {
    dim: usize,
    /// Normal form of each unit vector of `A_{n-1} ⊗ V`, as sparse coordinates in `A_n`.
    nf: Vec<Vec<(usize, CycNum)>>,
    /// Free column of `A_{n-1} ⊗ V` behind each basis vector of `A_n`.
    basis_cols: Vec<usize>,
    /// Matrices of `e1`, `e2` on `A_n`.
    act: Option<(Matrix<CycNum>, Matrix<CycNum>)>,
}

/// Incrementally computed graded pieces `A_0, A_1, ...`.
pub struct GradedTower<'a> {
    alg: &'a QuadraticAlgebra,
    levels: Vec<Level>,
    ambient_limit: usize,
    z_scalar: Option<CycNum>,
}

impl<'a> GradedTower<'a> {
    fn new(alg: &'a QuadraticAlgebra) -> GradedTower<'a> {
        let p = alg.p;
        let one = CycNum::one(p);
        let level0 = Level {
            dim: 1,
            nf: Vec::new(),
            basis_cols: vec![0],
            act: alg
                .action
                .as_ref()
                .map(|_| (Matrix::identity(1, &one), Matrix::identity(1, &one))),
        };
        let level1 = Level {
            dim: alg.n,
            nf: (0..alg.n).map(|c| vec![(c, one.clone())]).collect(),
            basis_cols: (0..alg.n).collect(),
            act: alg.action.as_ref().map(|r| (r.e1().clone(), r.e2().clone())),
        };
        let z_scalar = alg
            .action
            .as_ref()
            .and_then(|r| r.matrix_of(&HElem::z(p)).as_scalar());
        GradedTower {
            alg,
            levels: vec![level0, level1],
            ambient_limit: DEFAULT_AMBIENT_LIMIT,
            z_scalar,
        }
    }

    pub fn with_ambient_limit(mut self, limit: usize) -> Self {
        self.ambient_limit = limit;
        self
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.dim).collect()
    }

    fn nf_vector(&self, level: usize, v: &[CycNum]) -> Vec<CycNum> {
        let lv = &self.levels[level];
        let mut out = vec![CycNum::zero(self.alg.p); lv.dim];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in &lv.nf[c] {
                out[*q] = out[*q].add(&x.mul(y));
            }
        }
        out
    }

    pub fn extend_to(&mut self, degree: usize) -> Result<()> {
        while self.levels.len() <= degree {
            self.push_level()?;
        }
        Ok(())
    }

    fn push_level(&mut self) -> Result<()> {
        let n = self.alg.n;
        let p = self.alg.p;
        let k = self.levels.len();
        let prev = &self.levels[k - 1];
        let cols = prev.dim * n;
        if cols > self.ambient_limit {
            return Err(Error::ResourceLimit(format!(
                "degree {k} needs an ambient space of dimension {cols} (limit {})",
                self.ambient_limit
            )));
        }
        // image of A_{k-2} ⊗ R in A_{k-1} ⊗ V
        let pp = &self.levels[k - 2];
        let mut gens = Vec::with_capacity(pp.dim * self.alg.relations.len());
        for w in 0..pp.dim {
            for r in &self.alg.relations {
                let mut v = vec![CycNum::zero(p); cols];
                for (idx, c) in r.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (i, j) = (idx / n, idx % n);
                    for (u, y) in &prev.nf[w * n + i] {
                        let slot = u * n + j;
                        v[slot] = v[slot].add(&c.mul(y));
                    }
                }
                if v.iter().any(|x| !x.is_zero()) {
                    gens.push(v);
                }
            }
        }
        let red = rref(gens, cols);
        let free = red.free_columns();
        let mut index = vec![usize::MAX; cols];
        for (q, &c) in free.iter().enumerate() {
            index[c] = q;
        }
        let mut nf: Vec<Vec<(usize, CycNum)>> = (0..cols)
            .map(|c| {
                if index[c] != usize::MAX {
                    vec![(index[c], CycNum::one(p))]
                } else {
                    Vec::new()
                }
            })
            .collect();
        for (row, &pc) in red.rows.iter().zip(&red.pivots) {
            nf[pc] = free
                .iter()
                .enumerate()
                .filter(|(_, &c)| !row[c].is_zero())
                .map(|(q, &c)| (q, row[c].neg()))
                .collect();
        }
        let mut level = Level {
            dim: free.len(),
            nf,
            basis_cols: free,
            act: None,
        };
        if let (Some((g1, g2)), Some(rep)) = (&prev.act, &self.alg.action) {
            let mats: Vec<Matrix<CycNum>> = [(g1, rep.e1()), (g2, rep.e2())]
                .iter()
                .map(|(gp, g)| {
                    let colsv: Vec<Vec<CycNum>> = level
                        .basis_cols
                        .iter()
                        .map(|&c| {
                            let (u, j) = (c / n, c % n);
                            let mut v = vec![CycNum::zero(p); cols];
                            for u2 in 0..prev.dim {
                                let a = &gp[(u2, u)];
                                if a.is_zero() {
                                    continue;
                                }
                                for j2 in 0..n {
                                    let b = &g[(j2, j)];
                                    if !b.is_zero() {
                                        v[u2 * n + j2] = v[u2 * n + j2].add(&a.mul(b));
                                    }
                                }
                            }
                            apply_nf(&level.nf, level.dim, &v, p)
                        })
                        .collect();
                    if colsv.is_empty() {
                        Matrix::zeros(0, 0, &CycNum::zero(p))
                    } else {
                        Matrix::from_cols(colsv)
                    }
                })
                .collect();
            let mut it = mats.into_iter();
            level.act = Some((it.next().unwrap(), it.next().unwrap()));
        }
        self.levels.push(level);
        Ok(())
    }

    /// Character of the action on `A_degree`.
    pub fn character(&self, degree: usize) -> Result<Character> {
        let p = self.alg.p;
        let lv = &self.levels[degree];
        let (g1, g2) = lv
            .act
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("no group action attached".into()))?;
        let z = self
            .z_scalar
            .clone()
            .ok_or_else(|| Error::InvalidInput("z must act by a scalar on the generators".into()))?;
        let dim = CycNum::from_int(p, lv.dim as i64);
        let mut values = Vec::with_capacity(num_classes(p));
        if lv.dim == 0 {
            return Ok(Character {
                p,
                values: vec![CycNum::zero(p); num_classes(p)],
            });
        }
        let zn = pow(&z, degree as u64);
        for g in class_reps(p).iter().take(p as usize) {
            values.push(dim.mul(&pow(&zn, g.z as u64)));
        }
        let e1_pows = powers(g1, p);
        let e2_pows = powers(g2, p);
        for g in class_reps(p).iter().skip(p as usize) {
            values.push(trace_of_product(&e1_pows[g.e1 as usize], &e2_pows[g.e2 as usize]));
        }
        Ok(Character { p, values })
    }

    pub fn character_series(&self) -> Result<CharacterSeries> {
        Ok(CharacterSeries {
            p: self.alg.p,
            degrees: (0..self.levels.len()).map(|d| self.character(d)).collect::<Result<_>>()?,
        })
    }

    pub fn report(&self, degree: usize) -> GradedPieceReport {
        GradedPieceReport {
            degree,
            dimension: self.levels[degree].dim,
            character: self.character(degree).ok().map(|c| c.values),
        }
    }

    /// Normal form in `A_degree` of a word `x_{i_1} ... x_{i_degree}`.
    pub fn normal_form_of_word(&self, word: &[usize]) -> Vec<CycNum> {
        let p = self.alg.p;
        let mut v = vec![CycNum::one(p)];
        for (k, &i) in word.iter().enumerate() {
            let n = self.alg.n;
            let mut t = vec![CycNum::zero(p); v.len() * n];
            for (u, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    t[u * n + i] = x.clone();
                }
            }
            v = self.nf_vector(k + 1, &t);
        }
        v
    }
}

fn apply_nf(nf: &[Vec<(usize, CycNum)>], dim: usize, v: &[CycNum], p: u32) -> Vec<CycNum> {
    let mut out = vec![CycNum::zero(p); dim];
    for (c, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (q, y) in &nf[c] {
            out[*q] = out[*q].add(&x.mul(y));
        }
    }
    out
}

fn pow(x: &CycNum, e: u64) -> CycNum {
    let mut acc = x.one_like();
    for _ in 0..e {
        acc = acc.mul(x);
    }
    acc
}

fn powers(g: &Matrix<CycNum>, p: u32) -> Vec<Matrix<CycNum>> {
    let like = g[(0, 0)].clone();
    let mut out = vec![Matrix::identity(g.nrows(), &like)];
    for _ in 1..p {
        let next = out.last().unwrap().mul(g);
        out.push(next);
    }
    out
}

fn trace_of_product(a: &Matrix<CycNum>, b: &Matrix<CycNum>) -> CycNum {
    let mut acc = a[(0, 0)].zero_like();
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let y = &b[(j, i)];
            if !y.is_zero() {
                acc = acc.add(&x.mul(y));
            }
        }
    }
    acc
}

/// Relations `x_i x_j + x_j x_i` for `i < j`: the `(-1)`-skew polynomial ring.
pub fn quantum_space_relations(p: u32, n: usize) -> Vec<Vec<CycNum>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = vec![CycNum::zero(p); n * n];
            v[i * n + j] = CycNum::one(p);
            v[j * n + i] = CycNum::one(p);
            out.push(v);
        }
    }
    out
}
