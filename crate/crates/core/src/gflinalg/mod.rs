//! Finite fields, the multiplication-by-σ operator, and canonical-form
//! subspace linear algebra over `F_q`.

mod enumerate;
mod field;
mod matrix;
mod poly;
mod subspace;

pub use enumerate::{enumerate_subspaces, enumerate_subspaces_containing, SubspaceIter, MAX_AMBIENT};
pub use field::{Field, FieldElement, FieldSpec, MAX_ORDER};
pub use matrix::{companion_operator, Matrix};
pub use poly::{find_irreducible, irreducibles, is_irreducible, ModulusPoly};
pub use subspace::{image, intersect, preimage, rref, sum, Operator, Subspace};

use crate::error::{Error, Result};

/// The operator of multiplication by `σ = x mod f`.
pub fn sigma_operator(field: &Field, f: &ModulusPoly) -> Operator {
    Operator::new(field, companion_operator(field, f)).expect("companion matrix is square")
}

/// Matrix of multiplication by `g(σ) = Σ g_i σ^i` in the basis `1, σ, ..`,
/// where `σ = x mod f`. Column `j` is `g(σ)·σ^j`.
pub fn multiplication_operator(field: &Field, f: &ModulusPoly, g: &[FieldElement]) -> Result<Matrix> {
    let n = f.degree();
    if g.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: g.len(),
        });
    }
    let c = companion_operator(field, f);
    let mut out = Matrix::zeros(n, n);
    let mut col = g.to_vec();
    for j in 0..n {
        for i in 0..n {
            out[(i, j)] = col[i];
        }
        col = c.mul_vec(field, &col);
    }
    Ok(out)
}

/// Every element `g` of `F_q[x]/(f)` with `F_q(g)` the whole field, as the
/// matrix of multiplication by `g`, in increasing order of the index
/// `Σ g_i q^i`.
pub fn generator_operators(field: &Field, f: &ModulusPoly) -> Vec<Matrix> {
    let n = f.degree();
    let q = field.order();
    let mut out = Vec::new();
    for code in 0..q.pow(n as u32) {
        let mut rest = code;
        let g: Vec<FieldElement> = (0..n)
            .map(|_| {
                let d = FieldElement((rest % q) as u8);
                rest /= q;
                d
            })
            .collect();
        let m = multiplication_operator(field, f, &g).expect("length matches degree");
        // 1, g, .., g^(n-1) independent exactly when g has degree n
        let mut krylov = Vec::with_capacity(n * n);
        let mut v = vec![FieldElement::ZERO; n];
        v[0] = FieldElement::ONE;
        for _ in 0..n {
            krylov.extend_from_slice(&v);
            v = m.mul_vec(field, &v);
        }
        if Matrix::new(n, n, krylov).expect("square").rank(field) == n {
            out.push(m);
        }
    }
    out
}
