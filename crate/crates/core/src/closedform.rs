//! Product formulas for the flag-tuple counts, their corollaries, and the
//! two terminating q-Chu-Vandermonde specializations that solve the
//! recursion.
//!
//! Every quotient is computed as one numerator product followed by a single
//! exact division, so a transcription error shows up as
//! [`Error::NonExactDivision`] instead of a wrong polynomial.

use crate::error::{Error, Result};
use crate::label::FlagTupleLabel;
use crate::qarith::{gaussian_binomial, gaussian_binomial_continued, q_factorial, q_integer, QPolynomial};
use crate::recursion::{left_terms, normalize, right_terms, IndexBox};

fn g(n: i64, k: i64) -> QPolynomial {
    gaussian_binomial(n, k)
}

fn pairs_i64(label: &FlagTupleLabel) -> Vec<(i64, i64)> {
    label.pairs().iter().map(|&(a, b)| (a as i64, b as i64)).collect()
}

/// `E = Σ (a_{i,1} - a_{i,2})(a_{i,1} - a_{i,2} - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ExponentE(pub usize);

impl ExponentE {
    pub fn of(label: &FlagTupleLabel) -> Self {
        Self(
            label
                .normalized()
                .pairs()
                .iter()
                .map(|&(a, b)| {
                    let d = a.saturating_sub(b);
                    d * d.saturating_sub(1)
                })
                .sum(),
        )
    }

    pub fn value(self) -> usize {
        self.0
    }
}

/// The closed product for `|[(a_{1,1}, a_{1,2}), .., (a_{r,1}, a_{r,2})]|`:
///
/// `[N]/[a_{1,1}] · Π_{i=0}^{r-1} gauss(a_{i,1} - a_{i+1,1} - 1, a_{i+1,1} - a_{i+1,2} - 1)
///  · gauss(a_{i+1,1}, a_{i+1,2}) · gauss(a_{i+1,2}, a_{i+2,1})
///  / Π_{i=1}^{r-1} gauss(a_{i,1} - 1, a_{i+1,1} - 1) · q^E`
///
/// with `a_{0,1} = N` and zero pairs past the end. When the family is empty
/// the first factor on the offending index vanishes.
pub fn theorem_alpha(label: &FlagTupleLabel, n: usize) -> Result<QPolynomial> {
    label.validate(n)?;
    let label = label.normalized();
    let r = label.rank();
    if r == 0 {
        return Ok(QPolynomial::one());
    }
    let n = n as i64;
    let mut a = vec![(n, n)];
    a.extend(pairs_i64(&label));
    a.extend([(0, 0), (0, 0)]);

    let mut num = g(n, 1);
    for i in 0..r {
        num = &num * &g(a[i].0 - a[i + 1].0 - 1, a[i + 1].0 - a[i + 1].1 - 1);
        num = &num * &g(a[i + 1].0, a[i + 1].1);
        num = &num * &g(a[i + 1].1, a[i + 2].0);
    }
    let mut den = g(a[1].0, 1);
    for i in 1..r {
        den = &den * &g(a[i].0 - 1, a[i + 1].0 - 1);
    }
    num.shift(ExponentE::of(&label).value()).div_exact(&den)
}

/// `[N]/[m] · gauss(N - mn + m - 1, m - 1) · q^{m(m-1)(n-1)}`, the number of
/// chains on the splitting tuple in ambient dimension `N >= mn`.
pub fn splitting_count_formula(m: usize, n: usize, big_n: usize) -> Result<QPolynomial> {
    if m == 0 || n == 0 || big_n < m * n {
        return Err(Error::InvalidParameters(format!(
            "need N >= mn >= 1 (m = {m}, n = {n}, N = {big_n})"
        )));
    }
    let (mi, ni, nn) = (m as i64, n as i64, big_n as i64);
    let num = &g(nn, 1) * &g(nn - mi * ni + mi - 1, mi - 1);
    num.shift(m * (m - 1) * (n - 1)).div_exact(&g(mi, 1))
}

/// `|(m, k)| = [N]/[m] · gauss(N - m - 1, m - k - 1) · gauss(m, k) · q^{(m-k)(m-k-1)}`.
pub fn pair_class_formula(m: usize, k: usize, big_n: usize) -> Result<QPolynomial> {
    if m == 0 && k == 0 {
        return Ok(QPolynomial::one());
    }
    if !(big_n > m && m > k) {
        return Err(Error::InvalidParameters(format!(
            "need N > m > k >= 0 or m = k = 0 (m = {m}, k = {k}, N = {big_n})"
        )));
    }
    let (mi, ki, nn) = (m as i64, k as i64, big_n as i64);
    let num = &(&g(nn, 1) * &g(nn - mi - 1, mi - ki - 1)) * &g(mi, ki);
    num.shift((m - k) * (m - k - 1)).div_exact(&g(mi, 1))
}

fn fact(n: i64) -> Result<QPolynomial> {
    usize::try_from(n)
        .map(q_factorial)
        .map_err(|_| Error::InvalidParameters(format!("negative q-factorial argument {n}")))
}

/// The common value of both expansions of `|⟨[a_{1,1}, a_{1,2}], ..⟩|`:
///
/// `[N] [N - a_{1,2} - 1]! / ([N - a_{1,1}]! [a_{r,2}]!)
///  · Π_{i=1}^{r} [a_{i,1} - a_{i+1,2} - 1]! / ([a_{i,1} - a_{i,2} - 1]! [a_{i,1} - a_{i,2}]!)
///  · Π_{i=2}^{r} 1 / [a_{i-1,2} - a_{i,1}]!`
pub fn rl_closed_value(label: &FlagTupleLabel, n: usize) -> Result<QPolynomial> {
    label.validate(n)?;
    let label = label.normalized();
    let r = label.rank();
    if r == 0 {
        return Err(Error::InvalidLabel("the closed value needs at least one pair".into()));
    }
    let p = pairs_i64(&label);
    let nn = n as i64;
    let b_after = |i: usize| p.get(i + 1).map_or(0, |x| x.1);

    let mut num = &q_integer(n) * &fact(nn - p[0].1 - 1)?;
    let mut den = &fact(nn - p[0].0)? * &fact(p[r - 1].1)?;
    for i in 0..r {
        let (a, b) = p[i];
        num = &num * &fact(a - b_after(i) - 1)?;
        den = &den * &(&fact(a - b - 1)? * &fact(a - b)?);
        if i > 0 {
            den = &den * &fact(p[i - 1].1 - a)?;
        }
    }
    num.div_exact(&den)
}

/// The three values that have to agree for one label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LrReport {
    pub label: FlagTupleLabel,
    pub n: usize,
    pub left: QPolynomial,
    pub right: QPolynomial,
    pub closed: QPolynomial,
}

impl LrReport {
    pub fn holds(&self) -> bool {
        self.left == self.right && self.right == self.closed
    }
}

/// Both expansions of `|⟨[a_{1,1}, a_{1,2}], ..⟩|` with every flag count
/// replaced by [`theorem_alpha`], against [`rl_closed_value`].
pub fn verify_lr(label: &FlagTupleLabel, n: usize) -> Result<LrReport> {
    let closed = rl_closed_value(label, n)?;
    let key = normalize(label);
    let bx = IndexBox::cyclic(&key);
    let mut left = QPolynomial::zero();
    for t in left_terms(&key, n, &bx) {
        left = &left + &(&theorem_alpha(&t.key.label(), n)? * &t.factor);
    }
    let mut right = QPolynomial::zero();
    for t in right_terms(&key, &bx, false) {
        right = &right + &(&theorem_alpha(&t.key.label(), n)? * &t.factor);
    }
    Ok(LrReport {
        label: key.label(),
        n,
        left,
        right,
        closed,
    })
}

/// Both sides of one instance of a summation lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub params: (usize, usize, usize, usize),
    pub lhs: QPolynomial,
    pub rhs: QPolynomial,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `q^{(B-s)(B-s-1)} gauss(A - B - 1, B - s - 1)`. For `A = B` the upper
/// entry is `-1` and the continued binomial is used; the power of `q` keeps
/// the product polynomial.
fn weighted_head(a: i64, b: i64, s: i64) -> Result<QPolynomial> {
    gaussian_binomial_continued(a - b - 1, b - s - 1, (b - s) * (b - s - 1))
}

/// `Σ_{s=C}^{B-1} gauss(A-B-1, B-s-1) gauss(B,s) gauss(s,C) gauss(A-(2B-s), D-(2B-s)) q^{(B-s)(B-s-1)}`
/// against `[B]/[D-C] · gauss(B-1, C) gauss(A-B-1, D-B-1) gauss(D-C, B-C)`,
/// for `C <= B-1 <= D-1 <= A-1`.
pub fn lemma_first_identity(a: usize, b: usize, c: usize, d: usize) -> Result<LemmaReport> {
    if !(b >= 1 && c < b && b <= d && d <= a) {
        return Err(Error::InvalidParameters(format!(
            "need C <= B-1 <= D-1 <= A-1 (A,B,C,D = {a},{b},{c},{d})"
        )));
    }
    let (ai, bi, ci, di) = (a as i64, b as i64, c as i64, d as i64);
    let mut lhs = QPolynomial::zero();
    for s in ci..bi {
        let t = 2 * bi - s;
        let term = &(&weighted_head(ai, bi, s)? * &g(bi, s)) * &(&g(s, ci) * &g(ai - t, di - t));
        lhs = &lhs + &term;
    }
    let num = &(&q_integer(b) * &g(bi - 1, ci)) * &(&g(ai - bi - 1, di - bi - 1) * &g(di - ci, bi - ci));
    let rhs = num.div_exact(&q_integer(d - c))?;
    Ok(LemmaReport {
        params: (a, b, c, d),
        lhs,
        rhs,
    })
}

/// `Σ_{s=D}^{B-1} gauss(A-B-1, B-s-1) gauss(B,s) gauss(s,C) gauss(s-C, D-C) q^{(B-s)(B-s-1)}`
/// against `[B]/[A-D] · gauss(B-1, C) gauss(B-C-1, D-C) gauss(A-D, B-D)`,
/// for `C <= D <= B-1 <= A-1`.
pub fn lemma_second_identity(a: usize, b: usize, c: usize, d: usize) -> Result<LemmaReport> {
    if !(c <= d && d < b && b <= a) {
        return Err(Error::InvalidParameters(format!(
            "need C <= D <= B-1 <= A-1 (A,B,C,D = {a},{b},{c},{d})"
        )));
    }
    let (ai, bi, ci, di) = (a as i64, b as i64, c as i64, d as i64);
    let mut lhs = QPolynomial::zero();
    for s in di..bi {
        let term = &(&weighted_head(ai, bi, s)? * &g(bi, s)) * &(&g(s, ci) * &g(s - ci, di - ci));
        lhs = &lhs + &term;
    }
    let num = &(&q_integer(b) * &g(bi - 1, ci)) * &(&g(bi - ci - 1, di - ci) * &g(ai - di, bi - di));
    let rhs = num.div_exact(&q_integer(a - d))?;
    Ok(LemmaReport {
        params: (a, b, c, d),
        lhs,
        rhs,
    })
}

fn sweep(
    max_a: usize,
    admissible: impl Fn(usize, usize, usize, usize) -> bool,
    check: impl Fn(usize, usize, usize, usize) -> Result<LemmaReport>,
) -> Result<Vec<LemmaReport>> {
    let mut out = Vec::new();
    for a in 0..=max_a {
        for b in 0..=a {
            for c in 0..=a {
                for d in 0..=a {
                    if admissible(a, b, c, d) {
                        out.push(check(a, b, c, d)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// [`lemma_first_identity`] on every admissible `(A, B, C, D)` with `A <= max_a`.
pub fn lemma_first_sweep(max_a: usize) -> Result<Vec<LemmaReport>> {
    sweep(max_a, |a, b, c, d| b >= 1 && c < b && b <= d && d <= a, lemma_first_identity)
}

/// [`lemma_second_identity`] on every admissible `(A, B, C, D)` with `A <= max_a`.
pub fn lemma_second_sweep(max_a: usize) -> Result<Vec<LemmaReport>> {
    sweep(max_a, |a, b, c, d| c <= d && d < b && b <= a, lemma_second_identity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::evaluate;
    use crate::recursion::count_recursive;
    use num_bigint::BigInt;

    fn l(s: &str) -> FlagTupleLabel {
        s.parse().unwrap()
    }

    fn at(p: &QPolynomial, q: i64) -> BigInt {
        evaluate(p, &BigInt::from(q))
    }

    #[test]
    fn exponent_is_even() {
        for label in FlagTupleLabel::all_valid(8, 3) {
            assert_eq!(ExponentE::of(&label).value() % 2, 0);
        }
        assert_eq!(ExponentE::of(&l("(3,0),(1,0)")).value(), 6);
    }

    #[test]
    fn alpha_single_pair_is_pair_class_formula() {
        for n in 2..=8 {
            for m in 1..n {
                for k in 0..m {
                    let label = FlagTupleLabel::new(vec![(m, k)]);
                    assert_eq!(theorem_alpha(&label, n).unwrap(), pair_class_formula(m, k, n).unwrap());
                }
            }
        }
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(at(&theorem_alpha(&l("(3,1),(1,0)"), 5).unwrap(), 2), BigInt::from(124));
        assert_eq!(theorem_alpha(&l("(0,0)"), 3).unwrap(), QPolynomial::one());
        assert!(matches!(theorem_alpha(&l("(2,2)"), 4), Err(Error::InvalidLabel(_))));
        // empty family: 5 < 2*3 - 0
        assert!(theorem_alpha(&l("(3,0)"), 5).unwrap().is_zero());
    }

    #[test]
    fn alpha_is_zero_exactly_when_family_is_empty() {
        for n in 1..=8 {
            for label in FlagTupleLabel::all_valid(n, 3) {
                let v = theorem_alpha(&label, n).unwrap();
                assert_eq!(v.is_zero(), !label.satisfies_nonemptiness(n), "{label} N={n}");
                assert!(v.has_nonnegative_coeffs());
            }
        }
    }

    #[test]
    fn splitting_formula_examples() {
        for n in 1..=6 {
            assert_eq!(splitting_count_formula(1, n, n).unwrap(), q_integer(n));
        }
        for m in 1..=5 {
            assert_eq!(splitting_count_formula(m, 1, m).unwrap(), QPolynomial::one());
        }
        assert_eq!(at(&splitting_count_formula(2, 2, 4).unwrap(), 2), BigInt::from(20));
        assert!(splitting_count_formula(2, 3, 5).is_err());
        assert!(splitting_count_formula(0, 3, 5).is_err());
    }

    #[test]
    fn splitting_formula_matches_alpha_on_splitting_tuple() {
        for (m, n) in [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (2, 4), (3, 3), (4, 2)] {
            for extra in 0..3 {
                let big_n = m * n + extra;
                let alpha = theorem_alpha(&FlagTupleLabel::splitting(m, n), big_n).unwrap();
                assert_eq!(alpha, splitting_count_formula(m, n, big_n).unwrap(), "m={m} n={n} N={big_n}");
            }
        }
    }

    #[test]
    fn near_diagonal_class_is_independent_of_k() {
        for n in 2..=10 {
            for k in 1..n {
                assert_eq!(pair_class_formula(k, k - 1, n).unwrap(), q_integer(n));
            }
        }
        assert_eq!(at(&pair_class_formula(2, 0, 4).unwrap(), 2), BigInt::from(20));
        assert_eq!(pair_class_formula(0, 0, 4).unwrap(), QPolynomial::one());
        assert!(pair_class_formula(2, 2, 4).is_err());
    }

    #[test]
    fn rl_single_zero_pair_is_grassmannian() {
        for n in 2..=8 {
            for a in 1..n {
                let v = rl_closed_value(&FlagTupleLabel::new(vec![(a, 0)]), n).unwrap();
                assert_eq!(v, gaussian_binomial(n as i64, a as i64));
            }
        }
        assert!(rl_closed_value(&l("(0,0)"), 4).is_err());
    }

    #[test]
    fn rl_single_pair_is_sum_of_expanded_flag_counts() {
        for n in 2..=7 {
            for a in 1..n {
                for b in 0..a {
                    let b: usize = b;
                    let mut total = QPolynomial::zero();
                    for i in b..a {
                        for j in 0..=b.max(1) - 1 {
                            total = &total + &theorem_alpha(&FlagTupleLabel::new(vec![(a, i), (b, j)]), n).unwrap();
                        }
                    }
                    assert_eq!(total, rl_closed_value(&FlagTupleLabel::new(vec![(a, b)]), n).unwrap());
                }
            }
        }
    }

    #[test]
    fn rl_with_trailing_zero_defect_reduces_to_prefix() {
        // |⟨.., [a_{r,1}, 0]⟩| = |⟨..⟩| gauss(a_{r-1,2}, a_{r,1})
        for n in 3..=8 {
            for label in FlagTupleLabel::all_valid(n, 3) {
                let p = label.pairs();
                if p.len() < 2 || p[p.len() - 1].1 != 0 {
                    continue;
                }
                let prefix = FlagTupleLabel::new(p[..p.len() - 1].to_vec());
                let expected = &rl_closed_value(&prefix, n).unwrap()
                    * &gaussian_binomial(p[p.len() - 2].1 as i64, p[p.len() - 1].0 as i64);
                assert_eq!(rl_closed_value(&label, n).unwrap(), expected, "{label} N={n}");
            }
        }
    }

    #[test]
    fn lr_examples() {
        assert!(verify_lr(&l("(3,1),(1,0)"), 5).unwrap().holds());
        assert!(verify_lr(&l("(2,0)"), 4).unwrap().holds());
        for n in 2..=7 {
            assert!(verify_lr(&FlagTupleLabel::new(vec![(n - 1, 0)]), n).unwrap().holds());
        }
    }

    #[test]
    fn alpha_matches_recursion_small() {
        for n in 1..=6 {
            for label in FlagTupleLabel::all_valid(n, 2) {
                assert_eq!(theorem_alpha(&label, n).unwrap(), count_recursive(&label, n).unwrap());
            }
        }
    }

    #[test]
    fn lemma_examples() {
        assert!(lemma_first_identity(4, 2, 1, 3).unwrap().holds());
        for c in 0..4 {
            assert!(lemma_first_identity(7, c + 1, c, c + 2).unwrap().holds());
        }
        assert!(lemma_second_identity(5, 3, 0, 1).unwrap().holds());
        for b in 1..6 {
            assert!(lemma_second_identity(6, b, 0, b - 1).unwrap().holds());
        }
        assert!(lemma_first_identity(4, 2, 2, 3).is_err());
        assert!(lemma_second_identity(4, 2, 0, 2).is_err());
    }

    #[test]
    fn lemma_sweeps_pass_including_a_equals_b() {
        let first = lemma_first_sweep(7).unwrap();
        let second = lemma_second_sweep(7).unwrap();
        assert!(first.iter().all(LemmaReport::holds));
        assert!(second.iter().all(LemmaReport::holds));
        assert!(second.iter().any(|r| r.params.0 == r.params.1 && !r.rhs.is_zero()));
    }
}
