//! Combinatorial labels for the subspace families being counted.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The class `(a, b)`: `a`-dimensional `W` with `dim(W ∩ σ⁻¹W) = b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairClassLabel {
    pub a: usize,
    pub b: usize,
}

impl PairClassLabel {
    pub fn new(a: usize, b: usize) -> Self {
        Self { a, b }
    }

    /// `N > a > b`, or `a = b = 0`.
    pub fn is_valid(&self, n: usize) -> bool {
        (self.a == 0 && self.b == 0) || (n > self.a && self.a > self.b)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.is_valid(n) {
            Ok(())
        } else {
            Err(Error::InvalidLabel(format!(
                "({},{}) needs N > a > b or a = b = 0 (N = {n})",
                self.a, self.b
            )))
        }
    }
}

/// `[(a_{1,1}, a_{1,2}), .., (a_{r,1}, a_{r,2})]`: chains `W_1 ⊇ .. ⊇ W_r` with
/// `W_i` in class `(a_{i,1}, a_{i,2})` and `W_i ⊇ W_{i+1} + σW_{i+1}`.
///
/// Trailing `(0,0)` pairs do not change the family; the empty list stands
/// for `[(0,0)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FlagTupleLabel {
    pairs: Vec<(usize, usize)>,
}

impl FlagTupleLabel {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        Self { pairs }
    }

    pub fn empty() -> Self {
        Self { pairs: Vec::new() }
    }

    /// `[((n-1)m, (n-2)m), .., (2m, m), (m, 0)]`, whose chains are in
    /// bijection with σ-splitting subspaces of dimension `m` in `F_q^{mn}`.
    pub fn splitting(m: usize, n: usize) -> Self {
        Self {
            pairs: (1..n).rev().map(|t| (t * m, (t - 1) * m)).collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Without trailing `(0,0)` pairs.
    pub fn normalized(&self) -> Self {
        let mut pairs = self.pairs.clone();
        while pairs.last() == Some(&(0, 0)) {
            pairs.pop();
        }
        Self { pairs }
    }

    /// Number of pairs after normalization.
    pub fn rank(&self) -> usize {
        self.normalized().pairs.len()
    }

    /// `N > a_{1,1} > a_{1,2} >= a_{2,1} > .. >= a_{r,1} > a_{r,2} >= 0`, after
    /// dropping trailing `(0,0)` pairs.
    pub fn is_valid(&self, n: usize) -> bool {
        let norm = self.normalized();
        let mut bound = n.checked_sub(1);
        for &(a, b) in &norm.pairs {
            match bound {
                Some(top) if a <= top && a > b => bound = Some(b),
                _ => return false,
            }
        }
        true
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.is_valid(n) {
            Ok(())
        } else {
            Err(Error::InvalidLabel(format!("{self} is not a valid chain for N = {n}")))
        }
    }

    /// The chain condition with `a_{i,1} >= a_{i,2}` allowed to be equal:
    /// the labels that arise for an arbitrary invertible operator.
    pub fn is_weakly_valid(&self, n: usize) -> bool {
        let norm = self.normalized();
        let mut bound = n.checked_sub(1);
        for &(a, b) in &norm.pairs {
            match bound {
                Some(top) if a <= top && a >= b && a >= 1 => bound = Some(b),
                _ => return false,
            }
        }
        true
    }

    /// `a_{i-1,1} >= 2a_{i,1} - a_{i,2}` for every `i`, with `a_{0,1} = N`:
    /// `W_i + σW_i` has to fit inside `W_{i-1}`. Otherwise the family is empty.
    pub fn satisfies_nonemptiness(&self, n: usize) -> bool {
        let mut outer = n;
        for &(a, b) in &self.normalized().pairs {
            if outer + b < 2 * a {
                return false;
            }
            outer = a;
        }
        true
    }

    /// All valid normalized labels for ambient dimension `n` with at most
    /// `max_rank` pairs, the empty label first.
    pub fn all_valid(n: usize, max_rank: usize) -> Vec<Self> {
        let mut out = vec![Self::empty()];
        let mut stack = Vec::new();
        if let Some(top) = n.checked_sub(1) {
            extend_chains(&mut out, &mut stack, top, max_rank, false);
        }
        out
    }

    /// All weakly valid normalized labels, the empty label first.
    pub fn all_weakly_valid(n: usize, max_rank: usize) -> Vec<Self> {
        let mut out = vec![Self::empty()];
        let mut stack = Vec::new();
        if let Some(top) = n.checked_sub(1) {
            extend_chains(&mut out, &mut stack, top, max_rank, true);
        }
        out
    }
}

fn extend_chains(
    out: &mut Vec<FlagTupleLabel>,
    stack: &mut Vec<(usize, usize)>,
    top: usize,
    max_rank: usize,
    weak: bool,
) {
    if stack.len() == max_rank {
        return;
    }
    for a in 1..=top {
        let b_max = if weak { a } else { a - 1 };
        for b in 0..=b_max {
            stack.push((a, b));
            out.push(FlagTupleLabel::new(stack.clone()));
            extend_chains(out, stack, b, max_rank, weak);
            stack.pop();
        }
    }
}

impl fmt::Display for FlagTupleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "(0,0)");
        }
        let parts: Vec<String> = self.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `"(3,1),(1,0)"`; whitespace is ignored. The list may be wrapped
/// in `[..]` or `⟨..⟩` and pairs may be written `[3,1]`.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("expected pairs like \"(3,1),(1,0)\", got {text:?}"));
    let mut rest = s.as_str();
    for (open, close) in [("[", "]"), ("⟨", "⟩"), ("<", ">")] {
        if let Some(inner) = rest.strip_prefix(open).and_then(|r| r.strip_suffix(close)) {
            if inner.starts_with('(') || inner.starts_with('[') {
                rest = inner;
                break;
            }
        }
    }
    let mut pairs = Vec::new();
    loop {
        let (inner, close) = match rest.chars().next() {
            Some('(') => (&rest[1..], ')'),
            Some('[') => (&rest[1..], ']'),
            _ => return Err(bad()),
        };
        let end = inner.find(close).ok_or_else(bad)?;
        let (a, b) = inner[..end].split_once(',').ok_or_else(bad)?;
        let a = a.parse().map_err(|_| bad())?;
        let b = b.parse().map_err(|_| bad())?;
        pairs.push((a, b));
        rest = &inner[end + 1..];
        if rest.is_empty() {
            return Ok(pairs);
        }
        rest = rest.strip_prefix(',').ok_or_else(bad)?;
    }
}

impl FromStr for FlagTupleLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_pairs(s).map(Self::new)
    }
}
