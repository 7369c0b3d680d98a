use serde::{Deserialize, Serialize};

use super::tower::{FieldTower, FqElem};
use crate::error::{Error, Result};

/// Dense matrix over the ambient field. Serializes as an array of rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FqElem>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<&[FqElem]> = (0..self.rows).map(|i| self.row(i)).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<FqElem>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

impl Matrix {
    pub fn zeros(tw: &FieldTower, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![tw.zero(); rows * cols] }
    }

    pub fn identity(tw: &FieldTower, n: usize) -> Self {
        Self::scalar(tw, n, &tw.one())
    }

    pub fn scalar(tw: &FieldTower, n: usize, c: &FqElem) -> Self {
        let mut m = Self::zeros(tw, n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FqElem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FqElem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &FqElem {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FqElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[FqElem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<FqElem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FqElem::is_zero)
    }

    pub fn check(&self, tw: &FieldTower) -> Result<()> {
        self.data.iter().try_for_each(|x| tw.check(x))
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix, tw: &FieldTower) -> Matrix {
        self.same_shape(other).expect("matrix shapes differ");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| tw.add(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix, tw: &FieldTower) -> Matrix {
        self.same_shape(other).expect("matrix shapes differ");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| tw.sub(a, b)).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self, tw: &FieldTower) -> Matrix {
        self.map(|x| tw.neg(x))
    }

    pub fn scale(&self, c: &FqElem, tw: &FieldTower) -> Matrix {
        self.map(|x| tw.mul(c, x))
    }

    pub fn map(&self, f: impl Fn(&FqElem) -> FqElem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &Matrix, tw: &FieldTower) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(tw.zero(), |acc, k| tw.add(&acc, &tw.mul(self.get(i, k), other.get(k, j))))
        })
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FqElem], tw: &FieldTower) -> Vec<FqElem> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| v.iter().enumerate().fold(tw.zero(), |acc, (i, x)| tw.add(&acc, &tw.mul(x, self.get(i, j)))))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise x ↦ x^(q^k).
    pub fn frobenius(&self, k: usize, tw: &FieldTower) -> Matrix {
        self.map(|x| tw.frobenius_q(x, k))
    }

    /// Row echelon elimination; returns (determinant, rank).
    fn eliminate(&self, tw: &FieldTower) -> (FqElem, usize) {
        let mut m = self.clone();
        let mut det = tw.one();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                det = tw.zero();
                continue;
            };
            if piv != r {
                m.swap_rows(piv, r);
                det = tw.neg(&det);
            }
            let pv = m.get(r, c).clone();
            det = tw.mul(&det, &pv);
            let inv = tw.inv(&pv).expect("pivot is nonzero");
            for i in r + 1..m.rows {
                let f = tw.mul(m.get(i, c), &inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = tw.sub(m.get(i, j), &tw.mul(&f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            r += 1;
        }
        if r < m.rows {
            det = tw.zero();
        }
        (det, r)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn det(&self, tw: &FieldTower) -> FqElem {
        assert!(self.is_square(), "determinant of a non-square matrix");
        if self.rows == 0 {
            return tw.one();
        }
        self.eliminate(tw).0
    }

    pub fn rank(&self, tw: &FieldTower) -> usize {
        self.eliminate(tw).1
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self, tw: &FieldTower) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(tw, n);
        for c in 0..n {
            let piv = (c..n)
                .find(|&i| !a.get(i, c).is_zero())
                .ok_or_else(|| Error::NotInvertible("singular matrix".into()))?;
            a.swap_rows(piv, c);
            inv.swap_rows(piv, c);
            let pinv = tw.inv(a.get(c, c))?;
            for j in 0..n {
                a.set(c, j, tw.mul(a.get(c, j), &pinv));
                inv.set(c, j, tw.mul(inv.get(c, j), &pinv));
            }
            for i in 0..n {
                if i == c {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(i, j, tw.sub(a.get(i, j), &tw.mul(&f, a.get(c, j))));
                    inv.set(i, j, tw.sub(inv.get(i, j), &tw.mul(&f, inv.get(c, j))));
                }
            }
        }
        Ok(inv)
    }
}
