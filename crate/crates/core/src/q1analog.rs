//! The set-theoretic analogue at `q = 1`: subsets of `{1, .., N}` under the
//! cyclic shift `σ = (1 2 .. N)`, with union in place of sum.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::label::{FlagTupleLabel, PairClassLabel};
use crate::qarith::binomial;

/// Largest `N` the bitmask enumeration accepts.
pub const MAX_SET_SIZE: usize = 20;

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SET_SIZE {
        return Err(Error::InvalidParameters(format!("N must be in 1..={MAX_SET_SIZE}, got {n}")));
    }
    Ok(())
}

/// A subset of `{1, .., N}`; bit `i` stands for element `i + 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetWord {
    mask: u32,
    n: usize,
}

impl SubsetWord {
    pub fn new(mask: u32, n: usize) -> Result<Self> {
        check_size(n)?;
        if mask >> n != 0 {
            return Err(Error::InvalidParameters(format!("mask {mask:#b} has bits beyond N = {n}")));
        }
        Ok(Self { mask, n })
    }

    /// From 1-based elements.
    pub fn from_elements(elements: &[usize], n: usize) -> Result<Self> {
        check_size(n)?;
        let mut mask = 0;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::InvalidParameters(format!("element {e} not in 1..={n}")));
            }
            mask |= 1 << (e - 1);
        }
        Ok(Self { mask, n })
    }

    pub fn mask(self) -> u32 {
        self.mask
    }

    pub fn universe(self) -> usize {
        self.n
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn elements(self) -> Vec<usize> {
        (0..self.n).filter(|i| self.mask >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn union(self, other: Self) -> Self {
        Self {
            mask: self.mask | other.mask,
            n: self.n,
        }
    }

    pub fn intersection(self, other: Self) -> Self {
        Self {
            mask: self.mask & other.mask,
            n: self.n,
        }
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.mask & !other.mask == 0
    }
}

impl fmt::Debug for SubsetWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.elements())
    }
}

/// `σ = (1 2 .. N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicShift {
    n: usize,
}

impl CyclicShift {
    pub fn new(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self { n })
    }

    fn full(self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    /// `i ↦ i + 1`, with `N ↦ 1`.
    pub fn apply(self, s: SubsetWord) -> SubsetWord {
        let m = ((s.mask << 1) | (s.mask >> (self.n - 1))) & self.full();
        SubsetWord { mask: m, n: self.n }
    }

    pub fn apply_inverse(self, s: SubsetWord) -> SubsetWord {
        let m = ((s.mask >> 1) | (s.mask << (self.n - 1))) & self.full();
        SubsetWord { mask: m, n: self.n }
    }

    /// `|S ∩ σ⁻¹S|`.
    pub fn defect(self, s: SubsetWord) -> usize {
        s.intersection(self.apply_inverse(s)).len()
    }
}

/// `σ(S)` on `{1, .., N}`.
pub fn shift(s: SubsetWord) -> SubsetWord {
    CyclicShift { n: s.n }.apply(s)
}

fn subsets(n: usize, size: usize) -> impl Iterator<Item = SubsetWord> {
    (0..1u32 << n)
        .filter(move |m| m.count_ones() as usize == size)
        .map(move |mask| SubsetWord { mask, n })
}

/// `m`-subsets `W` of `{1, .., mn}` with `W ∪ σW ∪ .. ∪ σ^{n-1}W` everything.
pub fn count_splitting_subsets(m: usize, n: usize) -> Result<u64> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameters("m and n must be positive".into()));
    }
    let big = m * n;
    let sigma = CyclicShift::new(big)?;
    let full = sigma.full();
    let mut count = 0;
    for w in subsets(big, m) {
        let mut acc = w;
        let mut cur = w;
        for _ in 1..n {
            cur = sigma.apply(cur);
            acc = acc.union(cur);
        }
        if acc.mask == full {
            count += 1;
        }
    }
    Ok(count)
}

/// `a`-subsets `W` of `{1, .., N}` with `|W ∩ σ⁻¹W| = b`.
pub fn count_pair_class_sets(a: usize, b: usize, n: usize) -> Result<u64> {
    PairClassLabel::new(a, b)
        .validate(n)
        .map_err(|e| Error::InvalidParameters(e.to_string()))?;
    let sigma = CyclicShift::new(n)?;
    Ok(subsets(n, a).filter(|&w| sigma.defect(w) == b).count() as u64)
}

fn divide(num: BigInt, den: BigInt) -> Result<BigInt> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::NonExactDivision(format!("{num} / {den}")));
    }
    Ok(q)
}

/// The double count of `|(m, k)|` at `q = 1`, once fixing `W` first and once
/// fixing a starting element first:
/// `N/(N-m) · C(N-m, m-k) · C(m-1, k)` and `N/m · C(N-m-1, m-k-1) · C(m, k)`.
pub fn pair_class_closed_forms(m: usize, k: usize, n: usize) -> Result<(BigInt, BigInt)> {
    if m == 0 && k == 0 {
        return Ok((BigInt::from(1), BigInt::from(1)));
    }
    PairClassLabel::new(m, k)
        .validate(n)
        .map_err(|e| Error::InvalidParameters(e.to_string()))?;
    let (m, k, n) = (m as i64, k as i64, n as i64);
    let first = divide(BigInt::from(n) * binomial(n - m, m - k) * binomial(m - 1, k), BigInt::from(n - m))?;
    let second = divide(BigInt::from(n) * binomial(n - m - 1, m - k - 1) * binomial(m, k), BigInt::from(m))?;
    Ok((first, second))
}

/// The splitting count at `q = 1` in ambient size `N >= mn`:
/// `N/m · C(N - mn + m - 1, m - 1)`.
pub fn splitting_subsets_formula(m: usize, n: usize, big_n: usize) -> Result<BigInt> {
    if m == 0 || n == 0 || big_n < m * n {
        return Err(Error::InvalidParameters(format!("need N >= mn >= 1 (m = {m}, n = {n}, N = {big_n})")));
    }
    let (m, n, nn) = (m as i64, n as i64, big_n as i64);
    divide(BigInt::from(nn) * binomial(nn - m * n + m - 1, m - 1), BigInt::from(m))
}

/// Chains of subsets `W_1 ⊇ W_2 ∪ σW_2, ..` with `W_i` in class
/// `(a_{i,1}, a_{i,2})`.
pub fn count_flag_subsets(label: &FlagTupleLabel, n: usize) -> Result<u64> {
    label.validate(n)?;
    let sigma = CyclicShift::new(n)?;
    let label = label.normalized();
    let pairs = label.pairs();
    let Some(&(a, b)) = pairs.last() else {
        return Ok(1);
    };
    let mut layer: HashMap<u32, u64> = subsets(n, a).filter(|&w| sigma.defect(w) == b).map(|w| (w.mask, 1)).collect();
    for &(a, b) in pairs[..pairs.len() - 1].iter().rev() {
        let mut next: HashMap<u32, u64> = HashMap::new();
        for (mask, c) in layer {
            let w = SubsetWord { mask, n };
            let u = w.union(sigma.apply(w));
            // supersets of u of size a
            let free: Vec<u32> = (0..n as u32).filter(|i| u.mask >> i & 1 == 0).collect();
            let need = a.checked_sub(u.len());
            let Some(need) = need else { continue };
            for extra in free.iter().combinations(need) {
                let v = SubsetWord {
                    mask: extra.iter().fold(u.mask, |m, &&i| m | 1 << i),
                    n,
                };
                if sigma.defect(v) == b {
                    *next.entry(v.mask).or_insert(0) += c;
                }
            }
        }
        layer = next;
    }
    Ok(layer.values().sum())
}

/// Exhaustive check on `S_N` that a permutation fixes no proper nonempty
/// subset exactly when it is a single `N`-cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationReport {
    pub n: usize,
    pub fixing_no_proper_subset: usize,
    pub full_cycles: usize,
    pub consistent: bool,
}

pub fn check_irreducible_permutations(n: usize) -> Result<PermutationReport> {
    if n == 0 || n > 8 {
        return Err(Error::InvalidParameters(format!("N must be in 1..=8, got {n}")));
    }
    let mut fixing_none = 0;
    let mut cycles = 0;
    let mut consistent = true;
    for perm in (0..n).permutations(n) {
        let image = |mask: u32| (0..n).filter(|&i| mask >> i & 1 == 1).fold(0u32, |m, i| m | 1 << perm[i]);
        let preserves = (1..(1u32 << n) - 1).any(|mask| image(mask) == mask);
        let mut len = 1;
        let mut x = perm[0];
        while x != 0 {
            x = perm[x];
            len += 1;
        }
        let is_cycle = len == n;
        if !preserves {
            fixing_none += 1;
        }
        if is_cycle {
            cycles += 1;
        }
        consistent &= is_cycle == !preserves;
    }
    Ok(PermutationReport {
        n,
        fixing_no_proper_subset: fixing_none,
        full_cycles: cycles,
        consistent,
    })
}
