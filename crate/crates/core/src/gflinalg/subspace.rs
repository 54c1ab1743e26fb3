use std::fmt;

use super::field::{Field, FieldElement};
use super::matrix::{rref_in_place, Matrix};
use crate::error::{Error, Result};

/// Subspace of `F_q^N` in canonical reduced row echelon form.
///
/// Every basis row is nonzero with a leading 1 at its pivot, pivot columns
/// are otherwise zero and pivots strictly increase, so two values are equal
/// exactly when they span the same subspace.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    dim: usize,
    basis: Vec<FieldElement>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            dim: 0,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let m = Matrix::identity(ambient);
        Self {
            ambient,
            dim: ambient,
            basis: m.data().to_vec(),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of arbitrary row vectors of length `ambient`.
    pub fn span<'a, I>(field: &Field, ambient: usize, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [FieldElement]>,
    {
        let mut data = Vec::new();
        for row in rows {
            if row.len() != ambient {
                return Err(Error::DimensionMismatch {
                    expected: ambient,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self::from_buffer(field, ambient, data))
    }

    pub(crate) fn from_buffer(field: &Field, ambient: usize, mut data: Vec<FieldElement>) -> Self {
        let pivots = rref_in_place(field, &mut data, ambient);
        data.truncate(pivots.len() * ambient);
        Self {
            ambient,
            dim: pivots.len(),
            basis: data,
            pivots,
        }
    }

    /// Trusted constructor for rows already in canonical form.
    pub(crate) fn from_canonical(ambient: usize, basis: Vec<FieldElement>, pivots: Vec<usize>) -> Self {
        debug_assert_eq!(basis.len(), pivots.len() * ambient);
        Self {
            ambient,
            dim: pivots.len(),
            basis,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_row(&self, i: usize) -> &[FieldElement] {
        &self.basis[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn basis_rows(&self) -> impl DoubleEndedIterator<Item = &[FieldElement]> + ExactSizeIterator {
        self.basis.chunks_exact(self.ambient.max(1)).take(self.dim)
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.basis_rows()
            .map(|r| r.iter().map(|x| x.0 as u32).collect())
            .collect()
    }

    /// Canonical bytes: ambient dimension followed by the RREF basis.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = vec![self.ambient as u8];
        out.extend(self.basis.iter().map(|x| x.0));
        out
    }

    /// Whether `v` lies in the subspace: reduce `v` against the RREF rows.
    pub fn contains_vector(&self, field: &Field, v: &[FieldElement]) -> bool {
        let mut r = v.to_vec();
        for (row, &p) in self.basis_rows().zip(&self.pivots) {
            let c = r[p];
            if c.is_zero() {
                continue;
            }
            for (x, &b) in r.iter_mut().zip(row) {
                *x = field.sub(*x, field.mul(c, b));
            }
        }
        r.iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, field: &Field, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.dim <= other.dim
            && self.basis_rows().all(|r| other.contains_vector(field, r))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(N={}, {:?})", self.ambient, self.to_rows())
    }
}

fn check_same_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::DimensionMismatch {
            expected: a.ambient,
            found: b.ambient,
        });
    }
    Ok(())
}

/// Canonical subspace spanned by the rows of `rows`.
pub fn rref(field: &Field, rows: &Matrix) -> Subspace {
    Subspace::from_buffer(field, rows.cols(), rows.data().to_vec())
}

pub fn sum(field: &Field, a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_same_ambient(a, b)?;
    let mut data = a.basis.clone();
    data.extend_from_slice(&b.basis);
    Ok(Subspace::from_buffer(field, a.ambient, data))
}

/// Zassenhaus: reduce `[a | a]` stacked on `[b | 0]`; rows with a zero left
/// half carry a basis of the intersection in their right half.
pub fn intersect(field: &Field, a: &Subspace, b: &Subspace) -> Result<Subspace> {
    check_same_ambient(a, b)?;
    let n = a.ambient;
    let w = 2 * n;
    let mut data = Vec::with_capacity((a.dim + b.dim) * w);
    for row in a.basis_rows() {
        data.extend_from_slice(row);
        data.extend_from_slice(row);
    }
    for row in b.basis_rows() {
        data.extend_from_slice(row);
        data.extend(std::iter::repeat_n(FieldElement::ZERO, n));
    }
    let pivots = rref_in_place(field, &mut data, w);
    let mut out = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        if p >= n {
            out.extend_from_slice(&data[r * w + n..(r + 1) * w]);
        }
    }
    Ok(Subspace::from_buffer(field, n, out))
}

/// `M W`.
pub fn image(field: &Field, m: &Matrix, w: &Subspace) -> Result<Subspace> {
    if m.cols() != w.ambient {
        return Err(Error::DimensionMismatch {
            expected: m.cols(),
            found: w.ambient,
        });
    }
    let mut data = Vec::with_capacity(w.dim * m.rows());
    for row in w.basis_rows() {
        data.extend(m.mul_vec(field, row));
    }
    Ok(Subspace::from_buffer(field, m.rows(), data))
}

/// Basis rows `y` with `y . w = 0` for every `w` in `W`.
fn annihilator(field: &Field, w: &Subspace) -> Vec<Vec<FieldElement>> {
    if w.dim == 0 {
        return (0..w.ambient)
            .map(|i| {
                let mut e = vec![FieldElement::ZERO; w.ambient];
                e[i] = FieldElement::ONE;
                e
            })
            .collect();
    }
    let b = Matrix::new(w.dim, w.ambient, w.basis.clone()).expect("shape");
    b.nullspace(field)
}

/// `{x : M x in W}` for any square `M`, as the kernel of `H M` where the rows
/// of `H` cut out `W`.
pub fn preimage(field: &Field, m: &Matrix, w: &Subspace) -> Result<Subspace> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    if m.rows() != w.ambient {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: w.ambient,
        });
    }
    let n = w.ambient;
    let h_rows = annihilator(field, w);
    if h_rows.is_empty() {
        return Ok(Subspace::full(n));
    }
    let h = Matrix::new(h_rows.len(), n, h_rows.concat()).expect("shape");
    let hm = h.mul(field, m)?;
    let kernel = hm.nullspace(field);
    Ok(Subspace::from_buffer(field, n, kernel.concat()))
}

/// A square linear operator together with its inverse when it has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operator {
    matrix: Matrix,
    inverse: Option<Matrix>,
}

impl Operator {
    pub fn new(field: &Field, matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        let inverse = matrix.inverse(field).ok();
        Ok(Self { matrix, inverse })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse.is_some()
    }

    pub fn apply(&self, field: &Field, w: &Subspace) -> Result<Subspace> {
        image(field, &self.matrix, w)
    }

    /// Via the inverse when available, otherwise by solving.
    pub fn preimage(&self, field: &Field, w: &Subspace) -> Result<Subspace> {
        match &self.inverse {
            Some(inv) => image(field, inv, w),
            None => preimage(field, &self.matrix, w),
        }
    }

    /// `W + T W`.
    pub fn span_with_image(&self, field: &Field, w: &Subspace) -> Result<Subspace> {
        if self.dim() != w.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: w.ambient,
            });
        }
        let mut data = w.basis.clone();
        for row in w.basis_rows() {
            data.extend(self.matrix.mul_vec(field, row));
        }
        Ok(Subspace::from_buffer(field, w.ambient, data))
    }

    /// `dim(W ∩ T^-1 W)`. For invertible `T` this equals
    /// `2 dim W - dim(W + T W)`, which needs a single elimination.
    pub fn defect(&self, field: &Field, w: &Subspace) -> Result<usize> {
        if self.is_invertible() {
            let s = self.span_with_image(field, w)?;
            Ok(2 * w.dim - s.dim)
        } else {
            let pre = self.preimage(field, w)?;
            Ok(intersect(field, w, &pre)?.dim)
        }
    }
}
