//! Named verification suites for `splitcount verify`.

use clap::ValueEnum;
use num_bigint::BigInt;
use serde::Serialize;

use splitcount::closedform::{lemma_first_sweep, lemma_second_sweep, splitting_count_formula, theorem_alpha, verify_lr};
use splitcount::gflinalg::{find_irreducible, generator_operators, irreducibles, Field, Matrix};
use splitcount::label::FlagTupleLabel;
use splitcount::oracle::{count_t_splitting, CountResult, Oracle, Slot};
use splitcount::q1analog::{count_flag_subsets, count_pair_class_sets, count_splitting_subsets, pair_class_closed_forms};
use splitcount::qarith::{binomial, gaussian_binomial, gaussian_binomial_by_factorials, q_integer};
use splitcount::recursion::{count_recursive_with_bases, RecursionEngine};
use splitcount::Result;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Pascal,
    OracleVsClosed,
    OracleVsRecursion,
    RecursionVsClosed,
    Expand,
    Lr,
    Identities,
    SigmaIndependence,
    Bijection,
    Q1,
    #[value(name = "general-T", alias = "general-t")]
    GeneralT,
}

impl Suite {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Serialize, Debug, Clone)]
pub struct CaseResult {
    pub case: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: Vec<CaseResult>,
}

#[derive(Serialize)]
struct SuiteJson<'a> {
    suite: String,
    cases: &'a [CaseResult],
    passed: usize,
    failed: usize,
    agreement: bool,
    elapsed_ms: u64,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        !self.cases.is_empty() && self.failed() == 0
    }

    pub fn to_json(&self, elapsed_ms: u64) -> String {
        serde_json::to_string(&SuiteJson {
            suite: self.suite.name(),
            cases: &self.cases,
            passed: self.passed(),
            failed: self.failed(),
            agreement: self.all_passed(),
            elapsed_ms,
        })
        .expect("suite report serializes")
    }

    pub fn plain(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(if c.pass { "PASS " } else { "FAIL " });
            out.push_str(&c.case);
            if !c.detail.is_empty() {
                out.push_str(": ");
                out.push_str(&c.detail);
            }
            out.push('\n');
        }
        out.push_str(&format!("{}: {} passed, {} failed", self.suite.name(), self.passed(), self.failed()));
        out
    }
}

struct Cases(Vec<CaseResult>);

impl Cases {
    fn new() -> Self {
        Cases(Vec::new())
    }

    fn check(&mut self, case: String, pass: bool, detail: impl FnOnce() -> String) {
        let detail = if pass { String::new() } else { detail() };
        self.0.push(CaseResult { case, pass, detail });
    }

    fn equal<T: PartialEq + std::fmt::Display>(&mut self, case: String, x: T, y: T) {
        let pass = x == y;
        self.check(case, pass, || format!("{x} vs {y}"));
    }
}

pub fn run_suite(suite: Suite) -> Result<SuiteReport> {
    let cases = match suite {
        Suite::Pascal => pascal()?,
        Suite::OracleVsClosed => oracle_vs_closed()?,
        Suite::OracleVsRecursion => oracle_vs_recursion()?,
        Suite::RecursionVsClosed => recursion_vs_closed()?,
        Suite::Expand => expand()?,
        Suite::Lr => lr()?,
        Suite::Identities => identities()?,
        Suite::SigmaIndependence => sigma_independence()?,
        Suite::Bijection => bijection()?,
        Suite::Q1 => q1()?,
        Suite::GeneralT => general_t()?,
    };
    Ok(SuiteReport { suite, cases: cases.0 })
}

fn sigma_oracle(q: u32, n: usize) -> Result<Oracle> {
    let field = Field::of_order(q)?;
    let f = find_irreducible(&field, n, 0)?;
    Ok(Oracle::sigma(field, &f))
}

fn int(r: CountResult) -> BigInt {
    r.integer().expect("oracle counts are integers").clone()
}

fn pascal() -> Result<Cases> {
    let mut c = Cases::new();
    for n in 0..=12i64 {
        for k in 0..=n {
            let g = gaussian_binomial(n, k);
            let mut ok = g == gaussian_binomial(n, n - k)
                && g.has_nonnegative_coeffs()
                && g.evaluate_i64(1) == binomial(n, k)
                && g == gaussian_binomial_by_factorials(n, k)?;
            if k >= 1 {
                ok &= g == &gaussian_binomial(n - 1, k - 1) + &gaussian_binomial(n - 1, k).shift(k as usize);
            }
            c.check(format!("gauss({n},{k})"), ok, || g.to_string());
        }
    }
    Ok(c)
}

fn oracle_vs_closed() -> Result<Cases> {
    let mut c = Cases::new();
    for q in [2u32, 3] {
        for n in 1..=5 {
            let o = sigma_oracle(q, n)?;
            for label in FlagTupleLabel::all_valid(n, n) {
                let brute = int(o.count_flag_tuple(&label)?);
                let closed = theorem_alpha(&label, n)?.evaluate_i64(q as i64);
                c.equal(format!("q={q} N={n} {label}"), brute, closed);
            }
        }
    }
    Ok(c)
}

fn oracle_vs_recursion() -> Result<Cases> {
    let mut c = Cases::new();
    let mut engine = RecursionEngine::cyclic();
    for q in [2u32, 3] {
        for n in 1..=5 {
            let o = sigma_oracle(q, n)?;
            for label in FlagTupleLabel::all_valid(n, n) {
                let brute = int(o.count_flag_tuple(&label)?);
                let rec = engine.count(&label, n)?.evaluate_i64(q as i64);
                c.equal(format!("q={q} N={n} {label}"), brute, rec);
            }
        }
    }
    Ok(c)
}

fn recursion_vs_closed() -> Result<Cases> {
    let mut c = Cases::new();
    let mut engine = RecursionEngine::cyclic();
    for n in 1..=8 {
        for label in FlagTupleLabel::all_valid(n, 3) {
            let rec = engine.count(&label, n)?;
            let closed = theorem_alpha(&label, n)?;
            c.equal(format!("N={n} {label}"), rec, closed);
        }
    }
    Ok(c)
}

fn expand() -> Result<Cases> {
    let mut c = Cases::new();
    for q in [2u32, 3] {
        for n in 1..=5 {
            let o = sigma_oracle(q, n)?;
            for a in 0..n {
                for b in 0..a.max(1) {
                    let whole = o.count_bracket(&[Slot::dim(a), Slot::dim(b)])?;
                    let mut left = BigInt::from(0);
                    for i in b..=a.max(1) - 1 {
                        left += o.count_bracket(&[Slot::class(a, i), Slot::dim(b)])?;
                    }
                    let mut right = BigInt::from(0);
                    for j in 0..=b.saturating_sub(1) {
                        right += o.count_bracket(&[Slot::dim(a), Slot::class(b, j)])?;
                    }
                    let ok = whole == left && whole == right;
                    c.check(format!("q={q} N={n} [{a},{b}]"), ok, || format!("{whole} vs {left} and {right}"));
                }
            }
        }
    }
    Ok(c)
}

fn lr() -> Result<Cases> {
    let mut c = Cases::new();
    for n in 1..=7 {
        for label in FlagTupleLabel::all_valid(n, 2) {
            if label.rank() == 0 {
                continue;
            }
            let r = verify_lr(&label, n)?;
            c.check(format!("N={n} {label}"), r.holds(), || {
                format!("left {} right {} closed {}", r.left, r.right, r.closed)
            });
        }
    }
    Ok(c)
}

fn identities() -> Result<Cases> {
    let mut c = Cases::new();
    for (name, reports) in [("first", lemma_first_sweep(10)?), ("second", lemma_second_sweep(10)?)] {
        for r in reports {
            let (a, b, cc, d) = r.params;
            c.check(format!("{name} lemma A={a} B={b} C={cc} D={d}"), r.holds(), || {
                format!("{} vs {}", r.lhs, r.rhs)
            });
        }
    }
    Ok(c)
}

const SPLITTING_CASES: [(u32, usize, usize); 7] =
    [(2, 1, 2), (2, 2, 2), (2, 1, 3), (2, 3, 2), (2, 2, 3), (3, 1, 2), (3, 2, 2)];

fn sigma_independence() -> Result<Cases> {
    let mut c = Cases::new();
    for (q, m, n) in SPLITTING_CASES {
        let field = Field::of_order(q)?;
        let big_n = m * n;
        let formula = splitting_count_formula(m, n, big_n)?.evaluate_i64(q as i64);
        for (i, f) in irreducibles(&field, big_n).enumerate() {
            let count = int(Oracle::sigma(field.clone(), &f).count_splitting(m, n)?);
            c.equal(format!("q={q} m={m} n={n} modulus #{i} {f}"), count, formula.clone());
            if i == 0 {
                for (j, s) in generator_operators(&field, &f).into_iter().enumerate() {
                    let count = int(Oracle::with_operator(field.clone(), s)?.count_splitting(m, n)?);
                    c.equal(format!("q={q} m={m} n={n} generator #{j}"), count, formula.clone());
                }
            }
        }
    }
    Ok(c)
}

fn bijection() -> Result<Cases> {
    let mut c = Cases::new();
    for q in [2u32, 3] {
        for n in 3..=5 {
            let o = sigma_oracle(q, n)?;
            let qn = q_integer(n).evaluate_i64(q as i64);
            for k in 2..n {
                let r = o.check_bijection_phi(k)?;
                let ok = r.holds() && r.source_size == r.target_size && BigInt::from(r.target_size) == qn;
                c.check(format!("q={q} N={n} k={k}"), ok, || format!("{r:?}"));
            }
        }
    }
    Ok(c)
}

fn q1() -> Result<Cases> {
    let mut c = Cases::new();
    for m in 1..=12 {
        for n in 1..=12 / m {
            c.equal(format!("splitting m={m} n={n}"), count_splitting_subsets(m, n)?, n as u64);
        }
    }
    for n in 1..=12 {
        for a in 0..n {
            for b in 0..a.max(1) {
                let brute = BigInt::from(count_pair_class_sets(a, b, n)?);
                let (x, y) = pair_class_closed_forms(a, b, n)?;
                let ok = brute == x && brute == y;
                c.check(format!("pair ({a},{b}) N={n}"), ok, || format!("{brute} vs {x} and {y}"));
            }
        }
    }
    for n in 1..=10 {
        for label in FlagTupleLabel::all_valid(n, n) {
            let brute = BigInt::from(count_flag_subsets(&label, n)?);
            c.equal(format!("flag N={n} {label}"), brute, theorem_alpha(&label, n)?.evaluate_i64(1));
        }
    }
    Ok(c)
}

fn general_operators(field: &Field) -> Result<Vec<(&'static str, Matrix)>> {
    let rows: [(&str, [[u32; 4]; 4]); 4] = [
        ("two F_4 blocks", [[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 1]]),
        ("unipotent Jordan block", [[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]]),
        ("double swap", [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
        ("F_4 block plus identity", [[0, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]),
    ];
    rows.iter()
        .map(|(name, r)| {
            let v: Vec<Vec<u32>> = r.iter().map(|row| row.to_vec()).collect();
            Ok((*name, Matrix::from_rows(field, &v)?))
        })
        .collect()
}

fn general_t() -> Result<Cases> {
    let mut c = Cases::new();
    let f2 = Field::of_order(2)?;
    for (name, t) in general_operators(&f2)? {
        let o = Oracle::with_operator(f2.clone(), t)?;
        let bases = o.measure_bases(4)?;
        for label in FlagTupleLabel::all_weakly_valid(4, 4) {
            let brute = int(o.count_flag_tuple_general(&label)?);
            let rec = count_recursive_with_bases(&label, 4, &bases)?.evaluate_i64(2);
            c.equal(format!("{name} {label}"), brute, rec);
        }
    }
    for (m, n) in [(1, 4), (2, 2)] {
        let count = int(count_t_splitting(&f2, &Matrix::identity(4), m, n)?);
        c.equal(format!("identity m={m} n={n}"), count, BigInt::from(0));
    }
    Ok(c)
}
