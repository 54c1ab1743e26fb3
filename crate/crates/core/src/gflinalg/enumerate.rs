//! Exhaustive subspace enumeration by RREF pattern.
//!
//! Pivot-column subsets are visited in colexicographic order (Gosper's hack
//! on the pivot bitmask), and for each pattern the free entries run through
//! all `q^f` fillings in odometer order, first free entry fastest.

use super::field::{Field, FieldElement};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Largest ambient dimension the bitmask enumeration supports.
pub const MAX_AMBIENT: usize = 24;

fn next_colex(mask: u32) -> u32 {
    let c = mask & mask.wrapping_neg();
    let r = mask + c;
    (((r ^ mask) >> 2) / c) | r
}

/// Stream of every `k`-dimensional subspace of `F_q^N`, each exactly once.
pub struct SubspaceIter {
    q: u8,
    n: usize,
    k: usize,
    mask: u32,
    pivots: Vec<usize>,
    /// (row, column) of each free entry of the current pattern
    free: Vec<(usize, usize)>,
    digits: Vec<u8>,
    done: bool,
}

impl SubspaceIter {
    fn new(q: usize, n: usize, k: usize) -> Self {
        let mut it = Self {
            q: q as u8,
            n,
            k,
            mask: if k == 0 { 0 } else { (1u32 << k) - 1 },
            pivots: Vec::new(),
            free: Vec::new(),
            digits: Vec::new(),
            done: k > n,
        };
        if !it.done {
            it.load_pattern();
        }
        it
    }

    fn load_pattern(&mut self) {
        self.pivots = (0..self.n).filter(|&c| self.mask >> c & 1 == 1).collect();
        self.free.clear();
        for (row, &p) in self.pivots.iter().enumerate() {
            for col in p + 1..self.n {
                if self.mask >> col & 1 == 0 {
                    self.free.push((row, col));
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn current(&self) -> Subspace {
        let mut basis = vec![FieldElement::ZERO; self.k * self.n];
        for (row, &p) in self.pivots.iter().enumerate() {
            basis[row * self.n + p] = FieldElement::ONE;
        }
        for (&(row, col), &d) in self.free.iter().zip(&self.digits) {
            basis[row * self.n + col] = FieldElement(d);
        }
        Subspace::from_canonical(self.n, basis, self.pivots.clone())
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.q {
                return;
            }
            *d = 0;
        }
        // odometer wrapped: next pivot pattern
        if self.k == 0 || self.k == self.n {
            self.done = true;
            return;
        }
        let next = next_colex(self.mask);
        if next >> self.n != 0 {
            self.done = true;
            return;
        }
        self.mask = next;
        self.load_pattern();
    }
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        let w = self.current();
        self.advance();
        Some(w)
    }
}

/// Every `k`-dimensional subspace of `F_q^N`; empty when `k > N`.
pub fn enumerate_subspaces(field: &Field, n: usize, k: usize) -> SubspaceIter {
    assert!(n <= MAX_AMBIENT, "ambient dimension {n} too large to enumerate");
    SubspaceIter::new(field.order(), n, k)
}

/// Every `k`-dimensional subspace of `F_q^N` containing `u`.
///
/// Uses the complement spanned by the standard vectors at the non-pivot
/// columns of `u`: each such `W` is `u ⊕ (W ∩ C)` for a unique subspace of `C`.
pub fn enumerate_subspaces_containing<'a>(
    field: &'a Field,
    u: &'a Subspace,
    k: usize,
) -> Result<impl Iterator<Item = Subspace> + 'a> {
    let n = u.ambient_dim();
    if k < u.dim() || k > n {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            found: k,
        });
    }
    let complement: Vec<usize> = (0..n).filter(|c| !u.pivots().contains(c)).collect();
    let m = complement.len();
    Ok(enumerate_subspaces(field, m, k - u.dim()).map(move |s| {
        let mut data: Vec<FieldElement> = u.basis_rows().flatten().copied().collect();
        for row in s.basis_rows() {
            let mut v = vec![FieldElement::ZERO; n];
            for (t, &c) in complement.iter().enumerate() {
                v[c] = row[t];
            }
            data.extend(v);
        }
        Subspace::from_buffer(field, n, data)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::gaussian_binomial;
    use std::collections::HashSet;

    #[test]
    fn counts_and_examples() {
        let f2 = Field::of_order(2).unwrap();
        let f3 = Field::of_order(3).unwrap();
        assert_eq!(enumerate_subspaces(&f2, 2, 1).count(), 3);
        assert_eq!(enumerate_subspaces(&f2, 4, 2).count(), 35);
        assert_eq!(enumerate_subspaces(&f3, 4, 2).count(), 130);
        assert_eq!(enumerate_subspaces(&f2, 3, 0).collect::<Vec<_>>(), vec![Subspace::zero(3)]);
        assert_eq!(enumerate_subspaces(&f2, 3, 3).collect::<Vec<_>>(), vec![Subspace::full(3)]);
        assert_eq!(enumerate_subspaces(&f2, 3, 4).count(), 0);
        assert_eq!(enumerate_subspaces(&f2, 0, 0).count(), 1);
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        for q in [2, 3, 4] {
            let field = Field::of_order(q).unwrap();
            for n in 0..=(if q == 2 { 6 } else { 4 }) {
                for k in 0..=n {
                    let all: Vec<_> = enumerate_subspaces(&field, n, k).collect();
                    let distinct: HashSet<_> = all.iter().cloned().collect();
                    assert_eq!(all.len(), distinct.len());
                    let expected = gaussian_binomial(n as i64, k as i64).evaluate_i64(q as i64);
                    assert_eq!(all.len().to_string(), expected.to_string(), "q={q} n={n} k={k}");
                    for w in &all {
                        assert_eq!(w.dim(), k);
                        // already canonical
                        assert_eq!(&Subspace::span(&field, n, w.basis_rows()).unwrap(), w);
                    }
                }
            }
        }
    }

    #[test]
    fn order_is_deterministic_colex() {
        let f2 = Field::of_order(2).unwrap();
        let pivots: Vec<Vec<usize>> = enumerate_subspaces(&f2, 3, 1).map(|w| w.pivots().to_vec()).collect();
        assert_eq!(pivots, vec![vec![0], vec![0], vec![0], vec![0], vec![1], vec![1], vec![2]]);
        let first: Vec<_> = enumerate_subspaces(&f2, 3, 1).take(2).map(|w| w.to_rows()).collect();
        assert_eq!(first, vec![vec![vec![1, 0, 0]], vec![vec![1, 1, 0]]]);
    }

    #[test]
    fn containing_examples() {
        let f2 = Field::of_order(2).unwrap();
        let zero = Subspace::zero(4);
        let plain: HashSet<_> = enumerate_subspaces(&f2, 4, 2).collect();
        let via: HashSet<_> = enumerate_subspaces_containing(&f2, &zero, 2).unwrap().collect();
        assert_eq!(plain, via);

        let u = enumerate_subspaces(&f2, 4, 2).nth(7).unwrap();
        let forced: Vec<_> = enumerate_subspaces_containing(&f2, &u, 2).unwrap().collect();
        assert_eq!(forced, vec![u.clone()]);
        let ext: Vec<_> = enumerate_subspaces_containing(&f2, &u, 3).unwrap().collect();
        assert_eq!(ext.len(), 3);
        assert!(ext.iter().all(|w| w.dim() == 3 && u.is_subspace_of(&f2, w)));
        assert!(enumerate_subspaces_containing(&f2, &u, 1).is_err());
        assert!(enumerate_subspaces_containing(&f2, &u, 5).is_err());
    }

    #[test]
    fn containing_matches_filtered_enumeration() {
        let f3 = Field::of_order(3).unwrap();
        for u in enumerate_subspaces(&f3, 4, 1).step_by(7) {
            for k in 1..=4 {
                let direct: HashSet<_> = enumerate_subspaces(&f3, 4, k)
                    .filter(|w| u.is_subspace_of(&f3, w))
                    .collect();
                let via: HashSet<_> = enumerate_subspaces_containing(&f3, &u, k).unwrap().collect();
                assert_eq!(direct, via);
                let expected = gaussian_binomial(3, k as i64 - 1).evaluate_i64(3);
                assert_eq!(via.len().to_string(), expected.to_string());
            }
        }
    }
}
