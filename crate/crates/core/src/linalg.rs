//! Dense exact linear algebra over any [`FieldElem`].
//!
//! Matrices act on column vectors. Row reduction skips zero entries, which
//! matters because nearly every matrix in this crate is sparse.

use std::fmt;

use crate::exactfield::FieldElem;
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// Reduced row echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Rref<E> {
    /// Nonzero rows only, each with a leading 1.
    pub rows: Vec<Vec<E>>,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

impl<E: FieldElem> Matrix<E> {
    pub fn zeros(rows: usize, cols: usize, like: &E) -> Matrix<E> {
        Matrix {
            rows,
            cols,
            data: vec![like.zero_like(); rows * cols],
        }
    }

    pub fn identity(n: usize, like: &E) -> Matrix<E> {
        let mut m = Self::zeros(n, n, like);
        for i in 0..n {
            m[(i, i)] = like.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Matrix<E> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: Vec<Vec<E>>) -> Matrix<E> {
        Self::from_rows(cols).transpose()
    }

    pub fn diagonal(entries: &[E]) -> Matrix<E> {
        let mut m = Self::zeros(entries.len(), entries.len(), &entries[0]);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix<E> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self[(i, j)].clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map(&self, f: impl Fn(&E) -> E) -> Matrix<E> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let like = self.data.first().or(other.data.first());
        let Some(like) = like else {
            return Matrix {
                rows: self.rows,
                cols: other.cols,
                data: Vec::new(),
            };
        };
        let mut out = Self::zeros(self.rows, other.cols, like);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let v = out[(i, j)].add(&a.mul(b));
                        out[(i, j)] = v;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn add(&self, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix<E>) -> Matrix<E> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, s: &E) -> Matrix<E> {
        self.map(|x| x.mul(s))
    }

    pub fn pow(&self, e: u32) -> Matrix<E> {
        assert_eq!(self.rows, self.cols);
        let like = self.data[0].clone();
        let mut result = Self::identity(self.rows, &like);
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    pub fn trace(&self) -> E {
        assert_eq!(self.rows, self.cols);
        let mut acc = self.data[0].zero_like();
        for i in 0..self.rows {
            acc = acc.add(&self[(i, i)]);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElem::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// True when `self = c * I` for some `c`, returning `c`.
    pub fn as_scalar(&self) -> Option<E> {
        let c = self[(0, 0)].clone();
        let ok = self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        *v == c
                    } else {
                        v.is_zero()
                    }
                })
            });
        ok.then_some(c)
    }

    /// Kronecker product; index `(i, k)` of the result is `i * other.rows + k`.
    pub fn kron(&self, other: &Matrix<E>) -> Matrix<E> {
        let like = &self.data[0];
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols, like);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            out[(i * other.rows + k, j * other.cols + l)] = a.mul(b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn rref(&self) -> Rref<E> {
        rref(self.to_rows(), self.cols)
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn determinant(&self) -> E {
        assert_eq!(self.rows, self.cols);
        let mut m = self.to_rows();
        let n = self.rows;
        let mut det = self.data[0].one_like();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return det.zero_like();
            };
            if piv != c {
                m.swap(piv, c);
                det = det.neg();
            }
            det = det.mul(&m[c][c]);
            let inv = m[c][c].inv().unwrap();
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let f = m[r][c].mul(&inv);
                for k in c..n {
                    let v = m[r][k].sub(&f.mul(&m[c][k]));
                    m[r][k] = v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix<E>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let like = self.data[0].clone();
        let aug: Vec<Vec<E>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { like.one_like() } else { like.zero_like() }));
                row
            })
            .collect();
        let r = rref(aug, 2 * n);
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return Err(Error::DivisionByZero);
        }
        Ok(Matrix::from_rows(r.rows.into_iter().map(|row| row[n..].to_vec()).collect()))
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<E>> {
        if self.rows == 0 {
            return Vec::new();
        }
        self.rref().kernel_basis(&self.data[0])
    }
}

impl<E> std::ops::Index<(usize, usize)> for Matrix<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.data[i * self.cols + j]
    }
}

impl<E> std::ops::IndexMut<(usize, usize)> for Matrix<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.data[i * self.cols + j]
    }
}

impl<E: FieldElem> fmt::Display for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn dot<E: FieldElem>(a: &[E], b: &[E]) -> E {
    let mut acc = a[0].zero_like();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add(&x.mul(y));
        }
    }
    acc
}

/// `a - f * b`, entrywise.
pub fn axpy<E: FieldElem>(a: &mut [E], f: &E, b: &[E]) {
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = x.sub(&f.mul(y));
        }
    }
}

/// Row-reduce a list of vectors of length `cols`.
pub fn rref<E: FieldElem>(mut rows: Vec<Vec<E>>, cols: usize) -> Rref<E> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = rows[r][c].inv().unwrap();
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = x.mul(&inv);
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Rref { rows, pivots, cols }
}

impl<E: FieldElem> Rref<E> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `v` modulo the row space; the result vanishes at every pivot.
    pub fn reduce(&self, v: &[E]) -> Vec<E> {
        let mut out = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if !out[c].is_zero() {
                let f = out[c].clone();
                axpy(&mut out, &f, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &[E]) -> bool {
        self.reduce(v).iter().all(FieldElem::is_zero)
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Basis of the solutions of `row . x = 0` for every row.
    pub fn kernel_basis(&self, like: &E) -> Vec<Vec<E>> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = vec![like.zero_like(); self.cols];
                x[f] = like.one_like();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = row[f].neg();
                }
                x
            })
            .collect()
    }
}

/// True when two lists of vectors span the same subspace.
pub fn same_span<E: FieldElem>(a: &[Vec<E>], b: &[Vec<E>], cols: usize) -> bool {
    let ra = rref(a.to_vec(), cols);
    let rb = rref(b.to_vec(), cols);
    ra.pivots == rb.pivots && ra.rows == rb.rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{rat, CycNum, Rational};
    use proptest::prelude::*;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.null_space();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_and_determinant() {
        let m = q(&[&[2, 1], &[5, 3]]);
        assert_eq!(m.determinant(), rat(1, 1));
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::DivisionByZero));
        assert_eq!(q(&[&[0, 1], &[1, 0]]).determinant(), rat(-1, 1));
    }

    #[test]
    fn kron_shapes() {
        let a = q(&[&[1, 2], &[3, 4]]);
        let i = Matrix::identity(2, &rat(0, 1));
        let k = a.kron(&i);
        assert_eq!(k[(2, 0)], rat(3, 1));
        assert_eq!(k[(3, 1)], rat(3, 1));
        assert_eq!(k[(2, 1)], rat(0, 1));
        assert_eq!(a.kron(&a).trace(), a.trace().mul(&a.trace()));
    }

    #[test]
    fn cyclotomic_vandermonde_is_invertible() {
        let p = 5;
        let rows: Vec<Vec<CycNum>> = (0..p)
            .map(|i| (0..p).map(|j| CycNum::omega_pow(p, (i * j) as i64)).collect())
            .collect();
        let f = Matrix::from_rows(rows);
        let inv = f.inverse().unwrap();
        assert!(f.mul(&inv).is_identity());
        // F^2 is p times the index-reversal permutation
        let f2 = f.mul(&f);
        assert_eq!(f2[(1, 4)], CycNum::from_int(p, 5));
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 1..6)
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in arb_matrix()) {
            let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect());
            let ker = m.null_space();
            prop_assert_eq!(m.rank() + ker.len(), 4);
            for k in &ker {
                prop_assert!(m.mul_vec(k).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn reduce_lands_in_complement(rows in arb_matrix(), v in proptest::collection::vec(-3i64..=3, 4)) {
            let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect());
            let r = m.rref();
            let v: Vec<Rational> = v.iter().map(|&x| rat(x, 1)).collect();
            let red = r.reduce(&v);
            for &c in &r.pivots {
                prop_assert!(red[c].is_zero());
            }
            // v - red lies in the row space
            let diff: Vec<Rational> = v.iter().zip(&red).map(|(a, b)| a - b).collect();
            prop_assert!(r.contains(&diff));
        }
    }
}
