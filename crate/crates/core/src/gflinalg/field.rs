use std::fmt;

use crate::error::{Error, Result};

/// Largest field order supported. Desk scale only.
pub const MAX_ORDER: usize = 16;

/// Element of a field of order `q <= 16`, stored as the integer
/// `sum r_i p^i` of its residue vector `(r_0, .., r_{e-1})` with respect to
/// the base modulus.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub u8);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Description of `F_q`, `q = p^e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u8,
    extension_degree: u8,
    /// Monic irreducible over `F_p`, constant term first; present iff `e > 1`.
    base_modulus: Option<Vec<u8>>,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl FieldSpec {
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p as usize > MAX_ORDER {
            return Err(Error::InvalidField(format!("q = {p} exceeds {MAX_ORDER}")));
        }
        Ok(Self {
            characteristic: p as u8,
            extension_degree: 1,
            base_modulus: None,
        })
    }

    /// `F_p[x] / (modulus)`; `modulus` is constant-first and must be monic
    /// and irreducible over `F_p`.
    pub fn with_base_modulus(p: u32, modulus: &[u32]) -> Result<Self> {
        let prime = Self::prime(p)?;
        let e = modulus.len().saturating_sub(1);
        if e == 0 {
            return Err(Error::InvalidField("base modulus must have degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("base modulus coefficients must be < {p}")));
        }
        if modulus[e] != 1 {
            return Err(Error::InvalidField("base modulus must be monic".into()));
        }
        if e == 1 {
            return Ok(prime);
        }
        let order = (p as usize).checked_pow(e as u32).unwrap_or(usize::MAX);
        if order > MAX_ORDER {
            return Err(Error::InvalidField(format!("q = {p}^{e} exceeds {MAX_ORDER}")));
        }
        let base = Field::new(prime);
        let coeffs: Vec<FieldElement> = modulus.iter().map(|&c| FieldElement(c as u8)).collect();
        if !super::poly::is_irreducible(&base, &coeffs) {
            return Err(Error::InvalidField(format!(
                "base modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        Ok(Self {
            characteristic: p as u8,
            extension_degree: e as u8,
            base_modulus: Some(modulus.iter().map(|&c| c as u8).collect()),
        })
    }

    /// Primes natively; `4`, `8`, `9` from a built-in modulus table.
    pub fn from_order(q: u32) -> Result<Self> {
        match q {
            4 => Self::with_base_modulus(2, &[1, 1, 1]),
            8 => Self::with_base_modulus(2, &[1, 1, 0, 1]),
            9 => Self::with_base_modulus(3, &[1, 0, 1]),
            _ if is_prime(q) => Self::prime(q),
            _ => Err(Error::InvalidField(format!(
                "no built-in field of order {q}; pass an explicit base modulus"
            ))),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic as u32
    }

    pub fn extension_degree(&self) -> u32 {
        self.extension_degree as u32
    }

    pub fn base_modulus(&self) -> Option<&[u8]> {
        self.base_modulus.as_deref()
    }

    pub fn order(&self) -> usize {
        (self.characteristic as usize).pow(self.extension_degree as u32)
    }
}

/// Arithmetic context for `F_q` with full addition and multiplication tables.
#[derive(Clone, PartialEq, Eq)]
pub struct Field {
    spec: FieldSpec,
    q: usize,
    add: Vec<FieldElement>,
    mul: Vec<FieldElement>,
    neg: Vec<FieldElement>,
    inv: Vec<FieldElement>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(q = {})", self.q)
    }
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let p = spec.characteristic as usize;
        let e = spec.extension_degree as usize;
        let q = spec.order();
        let digits = |x: usize| -> Vec<usize> { (0..e).map(|i| x / p.pow(i as u32) % p).collect() };
        let undigits = |d: &[usize]| -> u8 { d.iter().rev().fold(0, |acc, &r| acc * p + r) as u8 };

        let mut add = vec![FieldElement::ZERO; q * q];
        let mut mul = vec![FieldElement::ZERO; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = FieldElement(undigits(&sum));

                // schoolbook product, then reduce by the monic base modulus
                let mut prod = vec![0usize; 2 * e - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                if let Some(modulus) = &spec.base_modulus {
                    for top in (e..prod.len()).rev() {
                        let c = prod[top];
                        if c == 0 {
                            continue;
                        }
                        for (i, &m) in modulus.iter().enumerate() {
                            let idx = top - e + i;
                            prod[idx] = (prod[idx] + p * p - c * m as usize % p) % p;
                        }
                    }
                }
                mul[a * q + b] = FieldElement(undigits(&prod[..e]));
            }
        }
        let neg = (0..q)
            .map(|a| {
                let d: Vec<usize> = digits(a).iter().map(|r| (p - r) % p).collect();
                FieldElement(undigits(&d))
            })
            .collect();
        let inv = (0..q)
            .map(|a| {
                (0..q)
                    .find(|&b| a != 0 && mul[a * q + b] == FieldElement::ONE)
                    .map_or(FieldElement::ZERO, |b| FieldElement(b as u8))
            })
            .collect();
        Self {
            spec,
            q,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn of_order(q: u32) -> Result<Self> {
        Ok(Self::new(FieldSpec::from_order(q)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.characteristic()
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q as u8).map(FieldElement)
    }

    /// Canonical element from an integer index; `None` if out of range.
    pub fn element(&self, index: u32) -> Option<FieldElement> {
        (index < self.q as u32).then_some(FieldElement(index as u8))
    }

    /// Residue vector `(r_0, .., r_{e-1})` of an element.
    pub fn residues(&self, x: FieldElement) -> Vec<u32> {
        let p = self.characteristic();
        (0..self.spec.extension_degree())
            .map(|i| x.0 as u32 / p.pow(i) % p)
            .collect()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add[a.index() * self.q + b.index()]
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul[a.index() * self.q + b.index()]
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.neg[a.index()]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| self.inv[a.index()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_field_axioms(f: &Field) {
        let els: Vec<_> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
            assert_eq!(f.mul(a, FieldElement::ONE), a);
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn built_in_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13] {
            check_field_axioms(&Field::of_order(q).unwrap());
        }
        check_field_axioms(&Field::new(FieldSpec::with_base_modulus(2, &[1, 1, 0, 0, 1]).unwrap()));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(FieldSpec::prime(6).is_err());
        assert!(FieldSpec::prime(17).is_err());
        assert!(FieldSpec::from_order(6).is_err());
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(FieldSpec::with_base_modulus(2, &[1, 0, 1]).is_err());
        assert!(FieldSpec::with_base_modulus(3, &[1, 0, 2]).is_err());
        assert!(FieldSpec::with_base_modulus(3, &[1, 0, 0, 1]).is_err());
    }

    #[test]
    fn residues_round_trip_index() {
        let f = Field::of_order(9).unwrap();
        assert_eq!(f.residues(FieldElement(7)), vec![1, 2]);
        assert_eq!(f.spec().order(), 9);
    }
}
