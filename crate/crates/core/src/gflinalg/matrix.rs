use std::fmt;
use std::ops::{Index, IndexMut};

use super::field::{Field, FieldElement};
use super::poly::ModulusPoly;
use crate::error::{Error, Result};

/// Dense row-major matrix over `F_q`. Acts on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::ONE;
        }
        m
    }

    /// Builds from small integers (element indices), validated against `field`.
    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for &v in row {
                data.push(field.element(v).ok_or_else(|| {
                    Error::InvalidParameters(format!("entry {v} not in F_{}", field.order()))
                })?);
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
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

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.0 as u32).collect())
            .collect()
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, field: &Field, v: &[FieldElement]) -> Vec<FieldElement> {
        debug_assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    pub fn mul(&self, field: &Field, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = field.add(out[(i, j)], field.mul(a, rhs[(k, j)]));
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self, field: &Field) -> Vec<Vec<FieldElement>> {
        let mut work = self.data.clone();
        let pivots = rref_in_place(field, &mut work, self.cols);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![FieldElement::ZERO; self.cols];
            v[free] = FieldElement::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(work[r * self.cols + free]);
            }
            basis.push(v);
        }
        basis
    }

    pub fn rank(&self, field: &Field) -> usize {
        let mut work = self.data.clone();
        rref_in_place(field, &mut work, self.cols).len()
    }

    pub fn determinant(&self, field: &Field) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Ok(FieldElement::ZERO);
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = field.neg(det);
            }
            let pivot = a[col * n + col];
            det = field.mul(det, pivot);
            let inv = field.inv(pivot).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = field.mul(a[r * n + col], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    a[r * n + j] = field.sub(a[r * n + j], field.mul(factor, a[col * n + j]));
                }
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss-Jordan; [`Error::SingularOperator`] when singular.
    pub fn inverse(&self, field: &Field) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let w = 2 * n;
        let mut aug = vec![FieldElement::ZERO; n * w];
        for i in 0..n {
            aug[i * w..i * w + n].copy_from_slice(self.row(i));
            aug[i * w + n + i] = FieldElement::ONE;
        }
        let pivots = rref_in_place(field, &mut aug, w);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::SingularOperator);
        }
        let data = (0..n)
            .flat_map(|i| aug[i * w + n..(i + 1) * w].to_vec())
            .collect();
        Ok(Matrix {
            rows: n,
            cols: n,
            data,
        })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// Reduced row echelon form of a row-major buffer with `cols` columns.
/// Zero rows are moved to the bottom; returns the pivot columns.
pub(crate) fn rref_in_place(field: &Field, data: &mut [FieldElement], cols: usize) -> Vec<usize> {
    if cols == 0 {
        return Vec::new();
    }
    let rows = data.len() / cols;
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !data[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(data[r * cols + c]).expect("nonzero pivot");
        for j in c..cols {
            data[r * cols + j] = field.mul(data[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = data[i * cols + c];
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let v = field.mul(factor, data[r * cols + j]);
                data[i * cols + j] = field.sub(data[i * cols + j], v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Matrix of multiplication by `σ = x mod f` in the basis `1, σ, .., σ^(N-1)`:
/// the companion matrix of `f`.
pub fn companion_operator(field: &Field, f: &ModulusPoly) -> Matrix {
    let n = f.degree();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n - 1 {
        m[(j + 1, j)] = FieldElement::ONE;
    }
    for (i, &c) in f.coeffs()[..n].iter().enumerate() {
        m[(i, n - 1)] = field.neg(c);
    }
    m
}
