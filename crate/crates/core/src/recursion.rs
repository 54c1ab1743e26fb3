//! Memoized symbolic evaluation of `|[(a_{1,1}, a_{1,2}), ..]|` by counting
//! `|⟨[a_{1,1}, a_{1,2}], ..⟩|` in two ways and solving for the one term of
//! the second expansion that is not yet known.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::label::FlagTupleLabel;
use crate::qarith::{gaussian_binomial, QPolynomial};

/// A normalized label under the tuple order `≻`.
///
/// Pairs compare by larger first coordinate, then by smaller second
/// coordinate; tuples compare lexicographically and a proper extension is
/// greater than its prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OrderedTupleKey(Vec<(usize, usize)>);

fn pair_cmp(x: (usize, usize), y: (usize, usize)) -> Ordering {
    x.0.cmp(&y.0).then(y.1.cmp(&x.1))
}

impl Ord for OrderedTupleKey {
    fn cmp(&self, other: &Self) -> Ordering {
        for (&x, &y) in self.0.iter().zip(&other.0) {
            match pair_cmp(x, y) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for OrderedTupleKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl OrderedTupleKey {
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn label(&self) -> FlagTupleLabel {
        FlagTupleLabel::new(self.0.clone())
    }

    /// Every pair has the form `(a, a)`: such keys are fixed points of the
    /// general recursion and have to be supplied.
    pub fn is_irreducible(&self) -> bool {
        !self.0.is_empty() && self.0.iter().all(|&(a, b)| a == b)
    }
}

impl From<&FlagTupleLabel> for OrderedTupleKey {
    fn from(label: &FlagTupleLabel) -> Self {
        normalize(label)
    }
}

impl fmt::Display for OrderedTupleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.label().fmt(f)
    }
}

/// Strips trailing `(0,0)` pairs.
pub fn normalize(label: &FlagTupleLabel) -> OrderedTupleKey {
    OrderedTupleKey(label.normalized().pairs().to_vec())
}

/// `x ≺ y`.
pub fn precedes(x: &OrderedTupleKey, y: &OrderedTupleKey) -> bool {
    x < y
}

/// Per-position closed ranges `[lo, hi]` of the `C` and `D` index sets.
/// A range with `lo > hi` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexBox {
    pub c: Vec<(i64, i64)>,
    pub d: Vec<(i64, i64)>,
}

impl IndexBox {
    /// The ranges for a multiplication-by-σ operator:
    /// `j_i ∈ [max(a_{i+1,2}, 2a_{i,2} - a_{i,1}), max(a_{i,2} - 1, 0)]` and
    /// `k_i ∈ [a_{i,2}, a_{i,1} - 1]`.
    pub fn cyclic(key: &OrderedTupleKey) -> Self {
        Self::build(key, false)
    }

    /// Ranges for an arbitrary invertible operator, where `W_{i,2}` and
    /// `W_{i,1}` may be invariant: `j_i <= a_{i,2}` and `k_i <= a_{i,1}`.
    pub fn general(key: &OrderedTupleKey) -> Self {
        Self::build(key, true)
    }

    fn build(key: &OrderedTupleKey, general: bool) -> Self {
        let p: Vec<(i64, i64)> = key.0.iter().map(|&(a, b)| (a as i64, b as i64)).collect();
        let next_b = |i: usize| p.get(i + 1).map_or(0, |x| x.1);
        let c = (0..p.len())
            .map(|i| {
                let (a, b) = p[i];
                let lo = next_b(i).max(2 * b - a);
                let hi = if general { b } else { (b - 1).max(0) };
                (lo, hi)
            })
            .collect();
        let d = p
            .iter()
            .map(|&(a, b)| (b, if general { a } else { a - 1 }))
            .collect();
        Self { c, d }
    }

    fn product(ranges: &[(i64, i64)]) -> impl Iterator<Item = Vec<i64>> + '_ {
        ranges.iter().map(|&(lo, hi)| lo..=hi).multi_cartesian_product()
    }
}

/// One summand of an expansion: a coefficient times the count of `key`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub key: OrderedTupleKey,
    pub factor: QPolynomial,
}

fn make_key(pairs: Vec<(usize, usize)>) -> OrderedTupleKey {
    normalize(&FlagTupleLabel::new(pairs))
}

/// The terms of the expansion over `C`: labels `[(a_{i,2}, j_i)]` with
/// factors `Π gauss(a_{i-1,2} - (2a_{i,2} - j_i), a_{i,1} - (2a_{i,2} - j_i))`,
/// where `a_{0,2} = N`. Zero factors are dropped.
pub fn left_terms(key: &OrderedTupleKey, n: usize, bx: &IndexBox) -> Vec<Term> {
    let p = &key.0;
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for js in IndexBox::product(&bx.c) {
        let mut factor = QPolynomial::one();
        for (i, &j) in js.iter().enumerate() {
            let outer = if i == 0 { n as i64 } else { p[i - 1].1 as i64 };
            let t = 2 * p[i].1 as i64 - j;
            factor = &factor * &gaussian_binomial(outer - t, p[i].0 as i64 - t);
            if factor.is_zero() {
                break;
            }
        }
        if factor.is_zero() {
            continue;
        }
        let pairs = p.iter().zip(&js).map(|(&(_, b), &j)| (b, j as usize)).collect();
        out.push(Term {
            key: make_key(pairs),
            factor,
        });
    }
    out
}

/// The terms of the expansion over `D`: labels `[(a_{i,1}, k_i)]` with
/// factors `Π gauss(k_i - a_{i+1,1}, a_{i,2} - a_{i+1,1})`. With `skip_self`
/// the tuple `k = (a_{1,2}, .., a_{r,2})`, whose label is `key` itself, is
/// left out. Zero factors are dropped.
pub fn right_terms(key: &OrderedTupleKey, bx: &IndexBox, skip_self: bool) -> Vec<Term> {
    let p = &key.0;
    if p.is_empty() {
        return Vec::new();
    }
    let own: Vec<i64> = p.iter().map(|&(_, b)| b as i64).collect();
    let mut out = Vec::new();
    for ks in IndexBox::product(&bx.d) {
        if skip_self && ks == own {
            continue;
        }
        let mut factor = QPolynomial::one();
        for (i, &k) in ks.iter().enumerate() {
            let next_a = p.get(i + 1).map_or(0, |x| x.0) as i64;
            factor = &factor * &gaussian_binomial(k - next_a, p[i].1 as i64 - next_a);
            if factor.is_zero() {
                break;
            }
        }
        if factor.is_zero() {
            continue;
        }
        let pairs = p.iter().zip(&ks).map(|(&(a, _), &k)| (a, k as usize)).collect();
        out.push(Term {
            key: make_key(pairs),
            factor,
        });
    }
    out
}

/// Counts for irreducible keys `[(a_1, a_1), ..]`, which the recursion
/// cannot produce for a general operator.
#[derive(Debug, Clone, Default)]
pub struct BaseTable {
    entries: HashMap<OrderedTupleKey, QPolynomial>,
    missing_is_empty: bool,
}

impl BaseTable {
    /// Every reachable irreducible key must be present.
    pub fn new() -> Self {
        Self::default()
    }

    /// Missing irreducible keys count as empty, the situation for an
    /// operator that preserves no proper nonzero subspace.
    pub fn cyclic() -> Self {
        Self {
            entries: HashMap::new(),
            missing_is_empty: true,
        }
    }

    pub fn insert(&mut self, label: &FlagTupleLabel, value: QPolynomial) {
        self.entries.insert(normalize(label), value);
    }

    pub fn with(mut self, label: &FlagTupleLabel, value: QPolynomial) -> Self {
        self.insert(label, value);
        self
    }

    pub fn get(&self, key: &OrderedTupleKey) -> Result<QPolynomial> {
        match self.entries.get(key) {
            Some(v) => Ok(v.clone()),
            None if self.missing_is_empty => Ok(QPolynomial::zero()),
            None => Err(Error::MissingBaseCase(key.to_string())),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone)]
enum Mode {
    Cyclic,
    General(BaseTable),
}

/// Memoizing evaluator. The memo is keyed by `(key, N)` and lives as long
/// as the engine; one engine is meant to be driven from a single thread.
#[derive(Debug, Clone)]
pub struct RecursionEngine {
    mode: Mode,
    memo: HashMap<(OrderedTupleKey, usize), QPolynomial>,
}

impl Default for RecursionEngine {
    fn default() -> Self {
        Self::cyclic()
    }
}

impl RecursionEngine {
    pub fn cyclic() -> Self {
        Self {
            mode: Mode::Cyclic,
            memo: HashMap::new(),
        }
    }

    pub fn general(bases: BaseTable) -> Self {
        Self {
            mode: Mode::General(bases),
            memo: HashMap::new(),
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn admissible(&self, key: &OrderedTupleKey, n: usize) -> bool {
        let label = key.label();
        let valid = match self.mode {
            Mode::Cyclic => label.is_valid(n),
            Mode::General(_) => label.is_weakly_valid(n),
        };
        valid && label.satisfies_nonemptiness(n)
    }

    fn check_top(&self, label: &FlagTupleLabel, n: usize) -> Result<OrderedTupleKey> {
        let ok = match self.mode {
            Mode::Cyclic => label.is_valid(n),
            Mode::General(_) => label.is_weakly_valid(n),
        };
        if !ok {
            return Err(Error::InvalidLabel(format!("{label} is not a valid chain for N = {n}")));
        }
        Ok(normalize(label))
    }

    fn index_box(&self, key: &OrderedTupleKey) -> IndexBox {
        match self.mode {
            Mode::Cyclic => IndexBox::cyclic(key),
            Mode::General(_) => IndexBox::general(key),
        }
    }

    /// The direct dependencies of `key`: `+` terms over `C` and `-` terms
    /// over `D` without `key` itself. Empty for keys evaluated without
    /// recursing.
    pub fn dependencies(&self, key: &OrderedTupleKey, n: usize) -> Vec<(Term, bool)> {
        if key.is_empty() || !self.admissible(key, n) {
            return Vec::new();
        }
        if matches!(self.mode, Mode::General(_)) && key.is_irreducible() {
            return Vec::new();
        }
        let bx = self.index_box(key);
        let mut out: Vec<(Term, bool)> = left_terms(key, n, &bx).into_iter().map(|t| (t, true)).collect();
        out.extend(right_terms(key, &bx, true).into_iter().map(|t| (t, false)));
        out
    }

    fn eval(&mut self, key: &OrderedTupleKey, n: usize) -> Result<QPolynomial> {
        if key.is_empty() {
            return Ok(QPolynomial::one());
        }
        if let Some(v) = self.memo.get(&(key.clone(), n)) {
            return Ok(v.clone());
        }
        let value = if !self.admissible(key, n) {
            QPolynomial::zero()
        } else if let (Mode::General(bases), true) = (&self.mode, key.is_irreducible()) {
            bases.get(key)?
        } else {
            let mut acc = QPolynomial::zero();
            for (term, plus) in self.dependencies(key, n) {
                let sub = &self.eval(&term.key, n)? * &term.factor;
                acc = if plus { &acc + &sub } else { &acc - &sub };
            }
            acc
        };
        self.memo.insert((key.clone(), n), value.clone());
        Ok(value)
    }

    /// `|label|` in ambient dimension `n`, symbolic in `q`.
    pub fn count(&mut self, label: &FlagTupleLabel, n: usize) -> Result<QPolynomial> {
        let key = self.check_top(label, n)?;
        self.eval(&key, n)
    }

    fn visit(&self, key: &OrderedTupleKey, n: usize, seen: &mut HashSet<OrderedTupleKey>, out: &mut Vec<OrderedTupleKey>) {
        for (term, _) in self.dependencies(key, n) {
            if seen.insert(term.key.clone()) {
                out.push(term.key.clone());
                self.visit(&term.key, n, seen, out);
            }
        }
    }

    /// Every key reached from `label` through nonzero terms, each once, in
    /// first-visit (depth-first) order. The root is not included.
    pub fn trace(&self, label: &FlagTupleLabel, n: usize) -> Result<Vec<OrderedTupleKey>> {
        let root = self.check_top(label, n)?;
        let mut seen = HashSet::from([root.clone()]);
        let mut out = Vec::new();
        self.visit(&root, n, &mut seen, &mut out);
        Ok(out)
    }
}

/// `|label|` for multiplication by σ on `F_q^n`, as a polynomial in `q`.
pub fn count_recursive(label: &FlagTupleLabel, n: usize) -> Result<QPolynomial> {
    RecursionEngine::cyclic().count(label, n)
}

/// The recursion for an arbitrary invertible operator, with its irreducible
/// counts taken from `bases`.
pub fn count_recursive_with_bases(label: &FlagTupleLabel, n: usize, bases: &BaseTable) -> Result<QPolynomial> {
    RecursionEngine::general(bases.clone()).count(label, n)
}

/// Keys visited while evaluating `label` with the cyclic recursion.
pub fn recursion_trace(label: &FlagTupleLabel, n: usize) -> Result<Vec<OrderedTupleKey>> {
    RecursionEngine::cyclic().trace(label, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::evaluate;
    use num_bigint::BigInt;

    fn key(s: &str) -> OrderedTupleKey {
        normalize(&s.parse().unwrap())
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(key("(3,1),(1,0),(0,0)"), key("(3,1),(1,0)"));
        assert!(key("(0,0)").is_empty());
        assert_eq!(key("(2,0)").pairs(), &[(2, 0)]);
    }

    #[test]
    fn ordering_examples() {
        assert!(precedes(&key("(3,2)"), &key("(3,1)")));
        assert!(precedes(&key("(2,0)"), &key("(3,2)")));
        assert!(precedes(&key("(6,5),(4,3)"), &key("(6,5),(4,2)")));
        assert!(precedes(&key("(5,2),(2,0)"), &key("(6,5),(4,3)")));
        assert!(precedes(&key("(5,2)"), &key("(5,2),(2,0)")));
        assert!(precedes(&key("(0,0)"), &key("(1,0)")));
        assert!(!precedes(&key("(3,1)"), &key("(3,1)")));
    }

    #[test]
    fn base_case_and_examples() {
        for n in 1..6 {
            assert_eq!(count_recursive(&"(0,0)".parse().unwrap(), n).unwrap(), QPolynomial::one());
        }
        let l = "(3,1),(1,0)".parse().unwrap();
        let v = count_recursive(&l, 5).unwrap();
        assert_eq!(evaluate(&v, &BigInt::from(2)), BigInt::from(124));
        assert_eq!(
            evaluate(&count_recursive(&"(3,2),(1,0)".parse().unwrap(), 5).unwrap(), &BigInt::from(2)),
            BigInt::from(93)
        );
        assert!(matches!(count_recursive(&"(2,2)".parse().unwrap(), 4), Err(Error::InvalidLabel(_))));
        assert!(matches!(count_recursive(&"(4,1)".parse().unwrap(), 4), Err(Error::InvalidLabel(_))));
    }

    #[test]
    fn two_way_example_rearranged() {
        // |[(3,1),(1,0)]| = gauss(N-2,1)|[(1,0)]| - |[(3,2),(1,0)]|
        for n in 4..8 {
            let lhs = count_recursive(&"(3,1),(1,0)".parse().unwrap(), n).unwrap();
            let lines = count_recursive(&"(1,0)".parse().unwrap(), n).unwrap();
            let other = count_recursive(&"(3,2),(1,0)".parse().unwrap(), n).unwrap();
            assert_eq!(lhs, &(&gaussian_binomial(n as i64 - 2, 1) * &lines) - &other);
        }
    }

    #[test]
    fn trace_examples() {
        assert!(recursion_trace(&"(0,0)".parse().unwrap(), 4).unwrap().is_empty());
        let t = recursion_trace(&"(3,1),(1,0)".parse().unwrap(), 5).unwrap();
        assert!(t.contains(&key("(3,2),(1,0)")));
        assert!(t.contains(&key("(1,0)")));
        let distinct: HashSet<_> = t.iter().collect();
        assert_eq!(distinct.len(), t.len());
    }

    #[test]
    fn dependencies_strictly_precede() {
        let engine = RecursionEngine::cyclic();
        for n in 1..=8 {
            for label in FlagTupleLabel::all_valid(n, 3) {
                let root = normalize(&label);
                for k in engine.trace(&label, n).unwrap() {
                    assert!(precedes(&k, &root), "{k} vs {root}");
                    for (t, _) in engine.dependencies(&k, n) {
                        assert!(precedes(&t.key, &k), "{} vs {k}", t.key);
                    }
                }
            }
        }
    }

    #[test]
    fn trailing_zero_pairs_do_not_change_counts() {
        let mut engine = RecursionEngine::cyclic();
        for n in 1..=6 {
            for label in FlagTupleLabel::all_valid(n, 2) {
                let mut padded = label.pairs().to_vec();
                padded.extend([(0, 0), (0, 0)]);
                assert_eq!(
                    engine.count(&label, n).unwrap(),
                    engine.count(&FlagTupleLabel::new(padded), n).unwrap()
                );
            }
        }
    }

    #[test]
    fn last_pair_with_zero_defect_needs_no_special_case() {
        // a_{r,2} = 0 reaches C-ranges whose Gaussian factors have negative
        // entries; they vanish under the zero convention
        let mut engine = RecursionEngine::cyclic();
        let l: FlagTupleLabel = "(4,2),(2,0)".parse().unwrap();
        let v = engine.count(&l, 6).unwrap();
        assert!(v.has_nonnegative_coeffs());
        assert!(!v.is_zero());
    }

    #[test]
    fn cyclic_base_table_reproduces_cyclic_recursion() {
        let mut general = RecursionEngine::general(BaseTable::cyclic());
        let mut cyclic = RecursionEngine::cyclic();
        for n in 1..=7 {
            for label in FlagTupleLabel::all_valid(n, 3) {
                assert_eq!(general.count(&label, n).unwrap(), cyclic.count(&label, n).unwrap(), "{label} N={n}");
            }
        }
    }

    #[test]
    fn strict_base_table() {
        let l: FlagTupleLabel = "(4,4),(2,2)".parse().unwrap();
        let v = QPolynomial::from_i64s(&[7, 0, 1]);
        let table = BaseTable::new().with(&l, v.clone());
        assert_eq!(count_recursive_with_bases(&l, 6, &table).unwrap(), v);
        assert!(matches!(
            count_recursive_with_bases(&"(2,1)".parse().unwrap(), 4, &BaseTable::new()),
            Err(Error::MissingBaseCase(_))
        ));
    }
}
