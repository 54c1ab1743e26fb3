//! Brute-force ground truth over a concrete field.
//!
//! All counts here come from enumerating subspaces of `F_q^N` in canonical
//! form; nothing is assumed about the operator beyond invertibility.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gflinalg::{
    enumerate_subspaces, enumerate_subspaces_containing, sigma_operator, Field, Matrix, ModulusPoly, Operator,
    Subspace,
};
use crate::label::{FlagTupleLabel, PairClassLabel};
use crate::qarith::QPolynomial;
use crate::recursion::BaseTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Count {
    Integer(BigInt),
    Polynomial(QPolynomial),
}

impl Count {
    /// The integer value, evaluating a polynomial at `q` if needed.
    pub fn at(&self, q: &BigInt) -> BigInt {
        match self {
            Count::Integer(v) => v.clone(),
            Count::Polynomial(p) => p.evaluate(q),
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Integer(v) => write!(f, "{v}"),
            Count::Polynomial(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Oracle,
    Recursion,
    ClosedForm,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::Oracle => "oracle",
            Provenance::Recursion => "recursion",
            Provenance::ClosedForm => "closed-form",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exact count together with how it was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub count: Count,
    pub provenance: Provenance,
    pub parameters: BTreeMap<String, String>,
}

impl CountResult {
    pub fn integer(&self) -> Option<&BigInt> {
        match &self.count {
            Count::Integer(v) => Some(v),
            Count::Polynomial(_) => None,
        }
    }
}

/// One position of a chain: a dimension and, optionally, a prescribed defect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slot {
    pub dim: usize,
    pub defect: Option<usize>,
}

impl Slot {
    pub fn dim(dim: usize) -> Self {
        Self { dim, defect: None }
    }

    pub fn class(dim: usize, defect: usize) -> Self {
        Self {
            dim,
            defect: Some(defect),
        }
    }
}

/// How consecutive members of a chain are related.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Link {
    /// outer ⊇ inner + T·inner
    WithImage,
    /// outer ⊇ inner
    Contains,
}

/// Outcome of checking that `W ↦ W + σW` maps `(k-1,k-2)` onto `(k,k-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub k: usize,
    pub source_size: usize,
    pub target_size: usize,
    pub well_defined: bool,
    pub injective: bool,
    pub surjective: bool,
}

impl BijectionReport {
    pub fn holds(&self) -> bool {
        self.well_defined && self.injective && self.surjective
    }
}

/// Enumerates subspaces of `F_q^N` under a fixed invertible operator `T`
/// (the multiplication-by-σ map unless built with [`Oracle::with_operator`]).
#[derive(Debug, Clone)]
pub struct Oracle {
    field: Field,
    operator: Operator,
}

impl Oracle {
    pub fn sigma(field: Field, f: &ModulusPoly) -> Self {
        let operator = sigma_operator(&field, f);
        Self { field, operator }
    }

    pub fn with_operator(field: Field, matrix: Matrix) -> Result<Self> {
        let operator = Operator::new(&field, matrix)?;
        if !operator.is_invertible() {
            return Err(Error::SingularOperator);
        }
        Ok(Self { field, operator })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn operator(&self) -> &Operator {
        &self.operator
    }

    /// Ambient dimension `N`.
    pub fn ambient(&self) -> usize {
        self.operator.dim()
    }

    fn params(&self, extra: &[(&str, String)]) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        p.insert("q".to_string(), self.field.order().to_string());
        p.insert("N".to_string(), self.ambient().to_string());
        for (k, v) in extra {
            p.insert(k.to_string(), v.clone());
        }
        p
    }

    fn result(&self, count: impl Into<BigInt>, extra: &[(&str, String)]) -> CountResult {
        CountResult {
            count: Count::Integer(count.into()),
            provenance: Provenance::Oracle,
            parameters: self.params(extra),
        }
    }

    /// `dim(W ∩ T⁻¹W)`.
    pub fn defect(&self, w: &Subspace) -> Result<usize> {
        self.operator.defect(&self.field, w)
    }

    fn fits(&self, slot: Slot, w: &Subspace) -> Result<bool> {
        match slot.defect {
            None => Ok(true),
            Some(d) => Ok(self.defect(w)? == d),
        }
    }

    /// Number of chains `W_1, .., W_k` with `W_i` matching `slots[i]` and
    /// consecutive members related by `links[i]`.
    ///
    /// Innermost first: the distinct candidates for `W_k` are extended
    /// outward through subspaces containing the required span, carrying
    /// multiplicities.
    pub fn count_chain(&self, slots: &[Slot], links: &[Link]) -> Result<BigInt> {
        if slots.is_empty() {
            return Ok(BigInt::from(1));
        }
        if links.len() + 1 != slots.len() {
            return Err(Error::DimensionMismatch {
                expected: slots.len() - 1,
                found: links.len(),
            });
        }
        let n = self.ambient();
        if slots.iter().any(|s| s.dim > n) {
            return Ok(BigInt::from(0));
        }
        let last = *slots.last().unwrap();
        let mut layer: HashMap<Subspace, u128> = HashMap::new();
        for w in enumerate_subspaces(&self.field, n, last.dim) {
            if self.fits(last, &w)? {
                layer.insert(w, 1);
            }
        }
        for i in (0..slots.len() - 1).rev() {
            let slot = slots[i];
            let mut next: HashMap<Subspace, u128> = HashMap::new();
            for (w, c) in layer {
                let u = match links[i] {
                    Link::WithImage => self.operator.span_with_image(&self.field, &w)?,
                    Link::Contains => w,
                };
                if u.dim() > slot.dim {
                    continue;
                }
                for v in enumerate_subspaces_containing(&self.field, &u, slot.dim)? {
                    if self.fits(slot, &v)? {
                        *next.entry(v).or_insert(0) += c;
                    }
                }
            }
            layer = next;
        }
        Ok(layer.values().map(|&c| BigInt::from(c)).sum())
    }

    /// The class `(a, b)`.
    pub fn count_pair_class(&self, a: usize, b: usize) -> Result<CountResult> {
        PairClassLabel::new(a, b).validate(self.ambient())?;
        let mut count = 0u64;
        for w in enumerate_subspaces(&self.field, self.ambient(), a) {
            if self.defect(&w)? == b {
                count += 1;
            }
        }
        Ok(self.result(count, &[("a", a.to_string()), ("b", b.to_string())]))
    }

    fn flag_slots(label: &FlagTupleLabel) -> (Vec<Slot>, Vec<Link>) {
        let slots: Vec<Slot> = label.pairs().iter().map(|&(a, b)| Slot::class(a, b)).collect();
        let links = vec![Link::WithImage; slots.len().saturating_sub(1)];
        (slots, links)
    }

    /// `[(a_{1,1}, a_{1,2}), ..]` for a label that is valid in the cyclic sense.
    pub fn count_flag_tuple(&self, label: &FlagTupleLabel) -> Result<CountResult> {
        label.validate(self.ambient())?;
        self.flag_count(label)
    }

    /// Like [`Oracle::count_flag_tuple`] but also accepting pairs `(a, a)`,
    /// which can be nonempty when `T` preserves proper subspaces.
    pub fn count_flag_tuple_general(&self, label: &FlagTupleLabel) -> Result<CountResult> {
        if !label.is_weakly_valid(self.ambient()) {
            return Err(Error::InvalidLabel(format!(
                "{label} is not a chain for N = {}",
                self.ambient()
            )));
        }
        self.flag_count(label)
    }

    fn flag_count(&self, label: &FlagTupleLabel) -> Result<CountResult> {
        let norm = label.normalized();
        let (slots, links) = Self::flag_slots(&norm);
        let count = self.count_chain(&slots, &links)?;
        Ok(self.result(count, &[("tuple", norm.to_string())]))
    }

    /// `[A_1, .., A_k]`: chains with `W_i ⊇ W_{i+1} + T W_{i+1}`.
    pub fn count_bracket(&self, slots: &[Slot]) -> Result<BigInt> {
        self.count_chain(slots, &vec![Link::WithImage; slots.len().saturating_sub(1)])
    }

    /// `⟨[A_{1,1}, A_{1,2}], ..⟩` with dimension constraints only.
    pub fn count_angle_tuple(&self, blocks: &[(usize, usize)]) -> Result<CountResult> {
        let n = self.ambient();
        let mut bound = n;
        for &(x, y) in blocks {
            if !(x <= bound && y <= x) {
                return Err(Error::InvalidLabel(format!(
                    "angle blocks {blocks:?} are not nested within N = {n}"
                )));
            }
            bound = y;
        }
        let refined: Vec<(Slot, Slot)> = blocks.iter().map(|&(x, y)| (Slot::dim(x), Slot::dim(y))).collect();
        let count = self.count_angle_refined(&refined)?;
        let shown: Vec<String> = blocks.iter().map(|(x, y)| format!("[{x},{y}]")).collect();
        Ok(self.result(count, &[("angle", shown.join(","))]))
    }

    /// `⟨..⟩` where each slot may also fix a defect.
    pub fn count_angle_refined(&self, blocks: &[(Slot, Slot)]) -> Result<BigInt> {
        let mut slots = Vec::with_capacity(2 * blocks.len());
        let mut links = Vec::new();
        for (i, &(outer, inner)) in blocks.iter().enumerate() {
            if i > 0 {
                links.push(Link::Contains);
            }
            slots.push(outer);
            slots.push(inner);
            links.push(Link::WithImage);
        }
        self.count_chain(&slots, &links)
    }

    /// `m`-dimensional `W` with `W ⊕ TW ⊕ .. ⊕ T^{n-1}W` the whole space.
    /// Requires `N = mn`.
    pub fn count_splitting(&self, m: usize, n: usize) -> Result<CountResult> {
        let total = self.ambient();
        if m == 0 || n == 0 || m * n != total {
            return Err(Error::InvalidParameters(format!(
                "splitting needs m, n >= 1 and mn = N (m = {m}, n = {n}, N = {total})"
            )));
        }
        let field = &self.field;
        let mut count = 0u64;
        'outer: for w in enumerate_subspaces(field, total, m) {
            let mut acc = w.clone();
            let mut cur = w;
            for i in 1..n {
                cur = self.operator.apply(field, &cur)?;
                acc = crate::gflinalg::sum(field, &acc, &cur)?;
                if acc.dim() != (i + 1) * m {
                    continue 'outer;
                }
            }
            count += 1;
        }
        Ok(self.result(count, &[("m", m.to_string()), ("n", n.to_string())]))
    }

    /// Checks `φ(W) = W + σW` from `(k-1, k-2)` to `(k, k-1)`.
    pub fn check_bijection_phi(&self, k: usize) -> Result<BijectionReport> {
        let n = self.ambient();
        if k < 2 || k + 1 > n {
            return Err(Error::InvalidParameters(format!("need 2 <= k <= N-1 (k = {k}, N = {n})")));
        }
        let field = &self.field;
        let mut source_size = 0;
        let mut well_defined = true;
        let mut images = HashSet::new();
        for w in enumerate_subspaces(field, n, k - 1) {
            if self.defect(&w)? != k - 2 {
                continue;
            }
            source_size += 1;
            let v = self.operator.span_with_image(field, &w)?;
            if v.dim() != k || self.defect(&v)? != k - 1 {
                well_defined = false;
            }
            images.insert(v);
        }
        let mut target_size = 0;
        let mut covered = 0;
        for v in enumerate_subspaces(field, n, k) {
            if self.defect(&v)? == k - 1 {
                target_size += 1;
                if images.contains(&v) {
                    covered += 1;
                }
            }
        }
        Ok(BijectionReport {
            k,
            source_size,
            target_size,
            well_defined,
            injective: images.len() == source_size,
            surjective: covered == target_size,
        })
    }
}

impl Oracle {
    /// Measured counts of every irreducible key `[(a_1, a_1), .., (a_s, a_s)]`
    /// with `s <= max_rank`, as base cases for the general recursion.
    pub fn measure_bases(&self, max_rank: usize) -> Result<BaseTable> {
        let n = self.ambient();
        let mut table = BaseTable::new();
        for label in FlagTupleLabel::all_weakly_valid(n, max_rank) {
            if label.pairs().is_empty() || label.pairs().iter().any(|&(a, b)| a != b) {
                continue;
            }
            let count = self.count_flag_tuple_general(&label)?;
            table.insert(&label, QPolynomial::constant(count.integer().unwrap().clone()));
        }
        Ok(table)
    }
}

/// Splitting count for an arbitrary operator `T` on `F_q^{mn}`.
pub fn count_t_splitting(field: &Field, t: &Matrix, m: usize, n: usize) -> Result<CountResult> {
    Oracle::with_operator(field.clone(), t.clone())?.count_splitting(m, n)
}
