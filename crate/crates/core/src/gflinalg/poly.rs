use std::fmt;

use super::field::{Field, FieldElement};
use crate::error::{Error, Result};

fn trim(p: &mut Vec<FieldElement>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `b` (both constant-first).
pub(crate) fn rem_monic(field: &Field, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top];
        for (i, &bi) in b.iter().enumerate() {
            let idx = top - db + i;
            r[idx] = field.sub(r[idx], field.mul(c, bi));
        }
        trim(&mut r);
    }
    r
}

/// Monic polynomial of degree `degree` whose lower coefficients are the
/// base-`q` digits of `code` (`c_0` least significant).
fn monic_from_code(q: usize, degree: usize, mut code: usize) -> Vec<FieldElement> {
    let mut coeffs = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        coeffs.push(FieldElement((code % q) as u8));
        code /= q;
    }
    coeffs.push(FieldElement::ONE);
    coeffs
}

/// Irreducibility by trial division against every monic polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(field: &Field, f: &[FieldElement]) -> bool {
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    let q = field.order();
    for d in 1..=n / 2 {
        for code in 0..q.pow(d as u32) {
            let g = monic_from_code(q, d, code);
            if rem_monic(field, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// A monic irreducible polynomial over `F_q`; `σ` is the residue of `x`
/// modulo it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModulusPoly {
    coeffs: Vec<FieldElement>,
}

impl ModulusPoly {
    /// Checks monicity and irreducibility.
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidParameters("modulus must have degree >= 1".into()));
        }
        if coeffs.iter().any(|c| c.index() >= field.order()) {
            return Err(Error::InvalidParameters(format!(
                "modulus coefficients must be < {}",
                field.order()
            )));
        }
        if *coeffs.last().unwrap() != FieldElement::ONE {
            return Err(Error::InvalidParameters("modulus must be monic".into()));
        }
        if !is_irreducible(field, &coeffs) {
            return Err(Error::InvalidParameters(format!(
                "modulus {} is reducible",
                Self { coeffs }
            )));
        }
        Ok(Self { coeffs })
    }

    /// Parses the comma-separated constant-first format, e.g. `"1,1,0,1"`.
    pub fn parse(field: &Field, text: &str) -> Result<Self> {
        let coeffs = text
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u32>()
                    .ok()
                    .and_then(|v| field.element(v))
                    .ok_or_else(|| Error::Parse(format!("bad modulus coefficient {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(field, coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeffs[0]
    }
}

impl fmt::Display for ModulusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for ModulusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModulusPoly({self})")
    }
}

/// Every monic irreducible of degree `n`, in the order of [`find_irreducible`].
pub fn irreducibles(field: &Field, n: usize) -> impl Iterator<Item = ModulusPoly> + '_ {
    let q = field.order();
    (0..q.pow(n as u32))
        .map(move |code| monic_from_code(q, n, code))
        .filter(move |f| is_irreducible(field, f))
        .map(|coeffs| ModulusPoly { coeffs })
}

/// The `(index+1)`-th monic irreducible of degree `n`, enumerating candidates
/// lexicographically from the highest non-leading coefficient down
/// (equivalently by the integer `sum c_i q^i`).
pub fn find_irreducible(field: &Field, n: usize, index: usize) -> Result<ModulusPoly> {
    if n == 0 {
        return Err(Error::InvalidParameters("degree must be >= 1".into()));
    }
    let mut available = 0;
    for f in irreducibles(field, n) {
        if available == index {
            return Ok(f);
        }
        available += 1;
    }
    Err(Error::IndexOutOfRange {
        requested: index,
        available,
    })
}
