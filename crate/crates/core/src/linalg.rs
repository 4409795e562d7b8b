//! Dense matrices over commutative rings, with exact Gaussian elimination
//! for the rational case.

use std::fmt;
use std::ops::{Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// Commutative ring with unit, by value.
pub trait Ring: Clone + fmt::Debug + PartialEq + Zero + One + Sub<Output = Self> + Neg<Output = Self> {}

impl<T> Ring for T where T: Clone + fmt::Debug + PartialEq + Zero + One + Sub<Output = T> + Neg<Output = T> {}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type RationalMatrix = Matrix<BigRational>;

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[R]> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_struct("Matrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &rows)
            .finish()
    }
}

impl<R> Matrix<R> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut R {
        &mut self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn map<S>(&self, f: impl FnMut(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<R: Ring> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| R::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{:?} times {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(R::zero(), |acc, k| {
                acc + self.get(i, k).clone() * other.get(k, j).clone()
            })
        }))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).clone() + other.get(i, j).clone()
        }))
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Self::from_vec(self.rows + other.rows, self.cols, data)
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack".into()));
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    fn check_minor_indices(&self, rows: &[usize], cols: &[usize]) -> Result<()> {
        if rows.len() != cols.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} rows and {} columns selected",
                rows.len(),
                cols.len()
            )));
        }
        if rows.iter().any(|&i| i >= self.rows) || cols.iter().any(|&j| j >= self.cols) {
            return Err(Error::DimensionMismatch("minor index out of range".into()));
        }
        Ok(())
    }

    /// Determinant of the selected square submatrix by cofactor expansion;
    /// works over any commutative ring.
    pub fn minor_expand(&self, rows: &[usize], cols: &[usize]) -> Result<R> {
        self.check_minor_indices(rows, cols)?;
        Ok(laplace(self, rows, cols))
    }

    /// Matrix of all `s x s` minors, rows and columns indexed by
    /// lexicographically ordered `s`-subsets.
    pub fn compound(&self, s: usize) -> Self {
        use itertools::Itertools;
        let row_sets: Vec<Vec<usize>> = (0..self.rows).combinations(s).collect();
        let col_sets: Vec<Vec<usize>> = (0..self.cols).combinations(s).collect();
        Self::from_fn(row_sets.len(), col_sets.len(), |i, j| {
            laplace(self, &row_sets[i], &col_sets[j])
        })
    }
}

fn laplace<R: Ring>(m: &Matrix<R>, rows: &[usize], cols: &[usize]) -> R {
    match rows.len() {
        0 => R::one(),
        1 => m.get(rows[0], cols[0]).clone(),
        _ => {
            let mut acc = R::zero();
            let mut rest = Vec::with_capacity(cols.len() - 1);
            for (k, &c) in cols.iter().enumerate() {
                let entry = m.get(rows[0], c);
                if entry.is_zero() {
                    continue;
                }
                rest.clear();
                rest.extend(cols.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &c)| c));
                let term = entry.clone() * laplace(m, &rows[1..], &rest);
                acc = if k % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

/// Reduced row echelon form with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn from_integers(rows: usize, cols: usize, values: &[i64]) -> Result<Self> {
        Self::from_vec(rows, cols, values.iter().map(|&v| rational::q(v)).collect())
    }

    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).recip();
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let v = m.get(i, j) - &factor * m.get(row, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let Echelon { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); self.cols];
                v[f] = Q::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> Result<Q> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Q::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !m.get(i, col).is_zero()) else {
                return Ok(Q::zero());
            };
            if p != col {
                for j in 0..n {
                    m.data.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for i in col + 1..n {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col) / &pivot;
                for j in col..n {
                    let v = m.get(i, j) - &factor * m.get(col, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Exact determinant of the selected submatrix.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Q> {
        self.check_minor_indices(rows, cols)?;
        self.submatrix(rows, cols).det()
    }

    pub fn mul_vec(&self, v: &[Q]) -> Result<Vec<Q>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix-vector product".into()));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Whether the column spans agree.
    pub fn same_column_span(&self, other: &Self) -> Result<bool> {
        let r = self.rank();
        Ok(r == other.rank() && self.hstack(other)?.rank() == r)
    }
}

/// Rank of a list of vectors of equal length.
pub fn rank_of_vectors(vectors: &[Vec<Q>]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    Matrix::from_rows(vectors.to_vec()).map(|m| m.rank())
}

impl Serialize for Matrix<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(rational::to_string).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        let rows = raw
            .iter()
            .map(|row| row.iter().map(|s| rational::parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Matrix::from_rows(rows).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(rows: usize, cols: usize, v: &[i64]) -> RationalMatrix {
        RationalMatrix::from_integers(rows, cols, v).unwrap()
    }

    #[test]
    fn minor_examples() {
        let id = RationalMatrix::identity(3);
        assert_eq!(id.minor(&[0, 1, 2], &[0, 1, 2]).unwrap(), q(1));
        assert_eq!(id.minor(&[1, 2], &[1, 2]).unwrap(), q(1));
        let a = m(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 10]);
        assert_eq!(a.minor(&[0, 0], &[0, 1]).unwrap(), q(0));
        let b = m(2, 2, &[1, 2, 3, 4]);
        assert_eq!(b.minor(&[0, 1], &[0, 1]).unwrap(), q(-2));
        assert_eq!(b.minor_expand(&[0, 1], &[0, 1]).unwrap(), q(-2));
        assert!(b.minor(&[0, 1], &[0]).is_err());
        assert!(b.minor(&[0, 2], &[0, 1]).is_err());
    }

    #[test]
    fn gauss_and_cofactor_agree() {
        let a = m(4, 4, &[2, -1, 0, 3, 1, 5, -2, 0, 0, 4, 1, 1, -3, 2, 2, 7]);
        let rows = [0, 1, 2, 3];
        assert_eq!(a.det().unwrap(), a.minor_expand(&rows, &rows).unwrap());
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(2, 3, &[1, 2, 3, 2, 4, 6]);
        assert_eq!(a.rank(), 1);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        assert_eq!(RationalMatrix::zeros(3, 2).rank(), 0);
    }

    #[test]
    fn compound_of_identity_is_identity() {
        let id = RationalMatrix::identity(4);
        assert_eq!(id.compound(2), RationalMatrix::identity(6));
    }

    #[test]
    fn json_form() {
        let a = RationalMatrix::from_rows(vec![vec![q(1), crate::rational::q_frac(-1, 2)]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[["1/1","-1/2"]]"#);
        let back: RationalMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }
}
