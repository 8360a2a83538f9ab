//! Dense exact matrices over a Euclidean domain.

mod field;
mod frames;
mod lattice;
mod smith;

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rings::{EuclideanDomain, FrameRing, RingElem};

pub use field::{nullspace, rank_over_field, rref};
pub use frames::{complement, is_partial_frame, is_primitive};
pub use lattice::EchelonLattice;
pub use smith::{smith_normal_form, SmithForm};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

impl<R: EuclideanDomain> ExactMatrix<R> {
    pub fn new(rows: usize, cols: usize, entries: Vec<R>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = R::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Matrix whose rows are the given vectors; `cols` is needed for zero rows.
    pub fn from_rows(rows: &[Vec<R>], cols: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a matrix with {cols} columns",
                    r.len()
                )));
            }
            entries.extend(r.iter().cloned());
        }
        Ok(ExactMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_columns(columns: &[Vec<R>], rows: usize) -> Result<Self> {
        Ok(Self::from_rows(columns, rows)?.transpose())
    }

    pub fn diagonal(values: &[R]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a.clone() * b.clone();
                        let cell = &mut out[(i, j)];
                        *cell = cell.clone() + prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[R]) -> Result<Vec<R>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(R::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix subtraction".into()));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts".into()));
        }
        let cols = self.cols + other.cols;
        Ok(Self::from_fn(self.rows, cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        }))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += c · row[src]`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.entries[src * self.cols + j];
            if !s.is_zero() {
                let add = c.clone() * s.clone();
                let d = &mut self.entries[dst * self.cols + j];
                *d = d.clone() + add;
            }
        }
    }

    /// `col[dst] += c · col[src]`.
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, c: &R) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.entries[i * self.cols + src];
            if !s.is_zero() {
                let add = c.clone() * s.clone();
                let d = &mut self.entries[i * self.cols + dst];
                *d = d.clone() + add;
            }
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &R) {
        for j in 0..self.cols {
            let e = &mut self.entries[i * self.cols + j];
            *e = c.clone() * e.clone();
        }
    }

    /// Determinant by Euclidean row reduction (no division needed).
    pub fn det(&self) -> Result<R> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut sign_flip = false;
        for c in 0..n {
            loop {
                // smallest-norm nonzero entry at or below the diagonal
                let pivot = (c..n)
                    .filter(|&i| !m[(i, c)].is_zero())
                    .min_by(|&a, &b| m[(a, c)].norm().cmp(&m[(b, c)].norm()));
                let Some(p) = pivot else {
                    return Ok(R::zero());
                };
                if p != c {
                    m.swap_rows(p, c);
                    sign_flip = !sign_flip;
                }
                let mut done = true;
                for i in c + 1..n {
                    if m[(i, c)].is_zero() {
                        continue;
                    }
                    let (q, r) = m[(i, c)].div_rem_euclid(&m[(c, c)]).expect("nonzero pivot");
                    m.add_row_multiple(i, c, &-q);
                    if !r.is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
        }
        let mut d = R::one();
        for i in 0..n {
            d = d * m[(i, i)].clone();
        }
        Ok(if sign_flip { -d } else { d })
    }

    pub fn is_invertible(&self) -> bool {
        self.det().map(|d| d.is_unit()).unwrap_or(false)
    }

    /// Inverse over the ring, from the Smith transforms: `A⁻¹ = V·D⁻¹·U`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotInvertible);
        }
        let snf = smith_normal_form(self);
        let n = self.rows;
        let mut dinv = Vec::with_capacity(n);
        for i in 0..n {
            dinv.push(snf.d[(i, i)].unit_inverse().ok_or(Error::NotInvertible)?);
        }
        snf.v
            .checked_mul(&Self::diagonal(&dinv))?
            .checked_mul(&snf.u)
    }

    pub fn map<S: EuclideanDomain>(&self, f: impl Fn(&R) -> S) -> ExactMatrix<S> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<R: FrameRing> ExactMatrix<R> {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let vecs: Vec<Vec<R>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| R::from_i64(x)).collect())
            .collect();
        Self::from_rows(&vecs, cols).expect("rectangular input")
    }

    pub fn to_elem_rows(&self) -> Vec<Vec<RingElem>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(FrameRing::to_elem).collect())
            .collect()
    }

    pub fn from_elem_rows(rows: &[Vec<RingElem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let vecs = rows
            .iter()
            .map(|r| r.iter().map(R::from_elem).collect::<Result<Vec<R>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(&vecs, cols)
    }
}

impl<R: FrameRing> Serialize for ExactMatrix<R> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_elem_rows().serialize(s)
    }
}

impl<R> Index<(usize, usize)> for ExactMatrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        &self.entries[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for ExactMatrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        &mut self.entries[i * self.cols + j]
    }
}

impl<R: EuclideanDomain> Mul for &ExactMatrix<R> {
    type Output = ExactMatrix<R>;
    fn mul(self, rhs: Self) -> ExactMatrix<R> {
        self.checked_mul(rhs).expect("matrix dimensions agree")
    }
}

impl<R: EuclideanDomain> fmt::Display for ExactMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}
