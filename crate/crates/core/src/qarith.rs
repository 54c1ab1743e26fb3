//! Exact arithmetic in `Z[q]`: q-integers, q-factorials, Gaussian binomials.
//!
//! Counts are carried symbolically as [`QPolynomial`] and only evaluated at a
//! concrete `q` on demand. All quotient formulas go through
//! [`QPolynomial::div_exact`], which fails loudly on a nonzero remainder.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Evaluation target for counts.
pub type ExactInteger = BigInt;

/// Dense polynomial in `q` with arbitrary-precision integer coefficients.
///
/// `coeffs[i]` is the coefficient of `q^i`. There is never a trailing zero;
/// the zero polynomial has no coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
}

impl QPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * q^degree`.
    pub fn monomial(c: impl Into<BigInt>, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree];
        coeffs.push(c.into());
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Horner evaluation with exact integers.
    pub fn evaluate(&self, q0: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q0 + c)
    }

    pub fn evaluate_i64(&self, q0: i64) -> BigInt {
        self.evaluate(&BigInt::from(q0))
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Long division over `Z`. Only succeeds when every quotient coefficient is
    /// an integer; returns `(quotient, remainder)`.
    pub fn div_rem(&self, den: &Self) -> Result<(Self, Self)> {
        let Some(den_deg) = den.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead = den.leading_coeff().expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= den_deg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - den_deg];
        for shift in (0..quot.len()).rev() {
            let top = &rem[shift + den_deg];
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NonExactDivision(format!(
                    "leading coefficient {lead} does not divide {top} ({self} / {den})"
                )));
            }
            for (i, d) in den.coeffs.iter().enumerate() {
                rem[shift + i] -= &c * d;
            }
            quot[shift] = c;
        }
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient of an exact division; a nonzero remainder is an error.
    pub fn div_exact(&self, den: &Self) -> Result<Self> {
        let (quot, rem) = self.div_rem(den)?;
        if !rem.is_zero() {
            return Err(Error::NonExactDivision(format!(
                "({self}) / ({den}) leaves remainder {rem}"
            )));
        }
        Ok(quot)
    }
}

impl fmt::Debug for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPolynomial({self})")
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{mag}q^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: &QPolynomial) -> QPolynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

impl Add for QPolynomial {
    type Output = QPolynomial;
    fn add(self, rhs: QPolynomial) -> QPolynomial {
        &self + &rhs
    }
}

impl AddAssign<&QPolynomial> for QPolynomial {
    fn add_assign(&mut self, rhs: &QPolynomial) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (c, r) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += r;
        }
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }
}

impl Neg for &QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        QPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for QPolynomial {
    type Output = QPolynomial;
    fn neg(self) -> QPolynomial {
        -&self
    }
}

impl Sub<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: &QPolynomial) -> QPolynomial {
        self + &(-rhs)
    }
}

impl Sub for QPolynomial {
    type Output = QPolynomial;
    fn sub(self, rhs: QPolynomial) -> QPolynomial {
        &self - &rhs
    }
}

impl Mul<&QPolynomial> for &QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: &QPolynomial) -> QPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return QPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPolynomial::from_coeffs(coeffs)
    }
}

impl Mul for QPolynomial {
    type Output = QPolynomial;
    fn mul(self, rhs: QPolynomial) -> QPolynomial {
        &self * &rhs
    }
}

impl Sum for QPolynomial {
    fn sum<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        iter.fold(QPolynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl Product for QPolynomial {
    fn product<I: Iterator<Item = QPolynomial>>(iter: I) -> Self {
        iter.fold(QPolynomial::one(), |acc, p| &acc * &p)
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`; zero for `n = 0`.
pub fn q_integer(n: usize) -> QPolynomial {
    QPolynomial::from_coeffs(vec![BigInt::one(); n])
}

/// `[n]!_q = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: usize) -> QPolynomial {
    (1..=n).map(q_integer).product()
}

/// Gaussian binomial `[n choose k]_q` by the q-Pascal recurrence
/// `G(n,k) = G(n-1,k-1) + q^k G(n-1,k)`.
///
/// Total: returns 0 whenever `k < 0`, `k > n` or `n < 0`.
pub fn gaussian_binomial(n: i64, k: i64) -> QPolynomial {
    if n < 0 || k < 0 || k > n {
        return QPolynomial::zero();
    }
    let k = k.min(n - k) as usize;
    let n = n as usize;
    // row[j] = G(i, j) for the current i, j <= k
    let mut row = vec![QPolynomial::zero(); k + 1];
    row[0] = QPolynomial::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            let carried = row[j].shift(j);
            row[j] = &row[j - 1] + &carried;
        }
    }
    row.swap_remove(k)
}

/// Gaussian binomial by the q-factorial quotient `[n]! / ([k]! [n-k]!)`,
/// same zero convention as [`gaussian_binomial`].
pub fn gaussian_binomial_by_factorials(n: i64, k: i64) -> Result<QPolynomial> {
    if n < 0 || k < 0 || k > n {
        return Ok(QPolynomial::zero());
    }
    let (n, k) = (n as usize, k as usize);
    let den = &q_factorial(k) * &q_factorial(n - k);
    q_factorial(n).div_exact(&den)
}

/// `q^shift * [n choose k]_q` with `n` allowed to be negative, using the
/// analytic continuation `[-m choose k] = (-1)^k q^(-mk - k(k-1)/2) [m+k-1 choose k]`.
///
/// Errors when the product would carry a negative power of `q`.
pub fn gaussian_binomial_continued(n: i64, k: i64, shift: i64) -> Result<QPolynomial> {
    if k < 0 {
        return Ok(QPolynomial::zero());
    }
    let (base, exponent, negate) = if n >= 0 {
        (gaussian_binomial(n, k), shift, false)
    } else {
        let m = -n;
        (
            gaussian_binomial(m + k - 1, k),
            shift - m * k - k * (k - 1) / 2,
            k % 2 == 1,
        )
    };
    if base.is_zero() {
        return Ok(base);
    }
    if exponent < 0 {
        return Err(Error::InvalidParameters(format!(
            "q^{shift} [{n} choose {k}] is not a polynomial"
        )));
    }
    let p = base.shift(exponent as usize);
    Ok(if negate { -p } else { p })
}

/// `num / den`, failing on a nonzero remainder.
pub fn exact_divide(num: &QPolynomial, den: &QPolynomial) -> Result<QPolynomial> {
    num.div_exact(den)
}

pub fn evaluate(p: &QPolynomial, q0: &ExactInteger) -> ExactInteger {
    p.evaluate(q0)
}

/// Ordinary binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> QPolynomial {
        QPolynomial::from_i64s(c)
    }

    #[test]
    fn q_integer_examples() {
        assert_eq!(q_integer(3), p(&[1, 1, 1]));
        assert_eq!(q_integer(0), QPolynomial::zero());
        assert_eq!(q_integer(1), QPolynomial::one());
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(q_factorial(0), QPolynomial::one());
        assert_eq!(q_factorial(2), p(&[1, 1]));
        assert_eq!(q_factorial(3).evaluate_i64(2), BigInt::from(21));
    }

    #[test]
    fn gaussian_binomial_examples() {
        let g42 = gaussian_binomial(4, 2);
        assert_eq!(g42, p(&[1, 1, 2, 1, 1]));
        assert_eq!(g42, gaussian_binomial_by_factorials(4, 2).unwrap());
        assert_eq!(g42.evaluate_i64(2), BigInt::from(35));
        for n in 0..6 {
            assert_eq!(gaussian_binomial(n, 0), QPolynomial::one());
        }
        assert!(gaussian_binomial(3, 5).is_zero());
        assert!(gaussian_binomial(-1, 0).is_zero());
        assert!(gaussian_binomial(3, -1).is_zero());
    }

    #[test]
    fn exact_divide_examples() {
        assert_eq!(exact_divide(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[1, 1]));
        assert_eq!(
            exact_divide(&q_factorial(4), &q_factorial(2)).unwrap(),
            &q_integer(3) * &q_integer(4)
        );
        let num = &(&gaussian_binomial(4, 2) * &q_factorial(2)) * &q_factorial(2);
        assert_eq!(exact_divide(&num, &q_factorial(4)).unwrap(), QPolynomial::one());
    }

    #[test]
    fn exact_divide_rejects_remainders() {
        assert!(matches!(
            exact_divide(&p(&[1, 0, 1]), &p(&[1, 1])),
            Err(Error::NonExactDivision(_))
        ));
        assert!(matches!(
            exact_divide(&p(&[1, 1]), &p(&[0, 2])),
            Err(Error::NonExactDivision(_))
        ));
        assert_eq!(
            exact_divide(&p(&[1]), &QPolynomial::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(q_integer(3).evaluate_i64(1), BigInt::from(3));
        assert_eq!(gaussian_binomial(4, 2).evaluate_i64(1), BigInt::from(6));
        assert_eq!(gaussian_binomial(6, 2).evaluate_i64(2), BigInt::from(651));
    }

    #[test]
    fn degree_is_k_times_n_minus_k() {
        for n in 0..=12 {
            for k in 0..=n {
                let g = gaussian_binomial(n, k);
                assert_eq!(g.degree(), Some((k * (n - k)) as usize));
            }
        }
    }

    #[test]
    fn pascal_and_factorial_routes_agree() {
        for n in 0..=12 {
            for k in -1..=n + 1 {
                assert_eq!(
                    gaussian_binomial(n, k),
                    gaussian_binomial_by_factorials(n, k).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn continued_binomial_at_minus_one() {
        // [-1 choose k] = (-1)^k q^(-k(k+1)/2)
        for k in 0..6i64 {
            let got = gaussian_binomial_continued(-1, k, k * (k + 1)).unwrap();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(got, QPolynomial::monomial(sign, (k * (k + 1) / 2) as usize));
        }
        assert!(gaussian_binomial_continued(-1, 1, 0).is_err());
        assert_eq!(
            gaussian_binomial_continued(5, 2, 3).unwrap(),
            gaussian_binomial(5, 2).shift(3)
        );
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 0, 2]).to_string(), "1 - q + 2q^3");
        assert_eq!(p(&[0, 1]).to_string(), "q");
        assert_eq!(QPolynomial::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = QPolynomial> {
        prop::collection::vec(-20i64..20, 0..7).prop_map(|c| QPolynomial::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn product_divides_back(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
        }

        #[test]
        fn evaluation_is_a_ring_homomorphism(a in small_poly(), b in small_poly(), x in -5i64..6) {
            let x = BigInt::from(x);
            prop_assert_eq!((&a * &b).evaluate(&x), a.evaluate(&x) * b.evaluate(&x));
            prop_assert_eq!((&a - &b).evaluate(&x), a.evaluate(&x) - b.evaluate(&x));
        }
    }
}
