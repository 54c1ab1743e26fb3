use num_bigint::BigInt;
use proptest::prelude::*;

use splitcount::closedform::{splitting_count_formula, theorem_alpha};
use splitcount::gflinalg::{enumerate_subspaces, find_irreducible, Field};
use splitcount::label::FlagTupleLabel;
use splitcount::oracle::Oracle;
use splitcount::qarith::gaussian_binomial;
use splitcount::recursion::count_recursive;

fn oracle(q: u32, n: usize) -> Oracle {
    let field = Field::of_order(q).unwrap();
    let f = find_irreducible(&field, n, 0).unwrap();
    Oracle::sigma(field, &f)
}

#[test]
fn subspace_enumeration_matches_gaussian_binomials() {
    for q in [2u32, 3] {
        let field = Field::of_order(q).unwrap();
        for n in 0..=6 {
            if q == 3 && n > 5 {
                continue;
            }
            for k in 0..=n {
                let listed = enumerate_subspaces(&field, n, k).count();
                let expected = gaussian_binomial(n as i64, k as i64).evaluate_i64(q as i64);
                assert_eq!(BigInt::from(listed), expected, "q={q} n={n} k={k}");
            }
        }
    }
}

#[test]
fn prime_power_fields_agree_with_the_formula() {
    for q in [4u32, 8, 9] {
        for n in 1..=3 {
            let o = oracle(q, n);
            for label in FlagTupleLabel::all_valid(n, n) {
                let brute = o.count_flag_tuple(&label).unwrap().integer().unwrap().clone();
                let alpha = theorem_alpha(&label, n).unwrap().evaluate_i64(q as i64);
                assert_eq!(brute, alpha, "q={q} N={n} {label}");
            }
        }
    }
    let brute = oracle(4, 2).count_splitting(1, 2).unwrap().integer().unwrap().clone();
    assert_eq!(brute, BigInt::from(5));
}

#[test]
fn splitting_counts_at_larger_n() {
    // splitting tuples with N > mn against the flag oracle
    for (m, n, big_n) in [(1, 2, 4), (2, 2, 5), (1, 3, 5), (2, 2, 6)] {
        let label = FlagTupleLabel::splitting(m, n);
        let brute = oracle(2, big_n).count_flag_tuple(&label).unwrap().integer().unwrap().clone();
        let formula = splitting_count_formula(m, n, big_n).unwrap().evaluate_i64(2);
        assert_eq!(brute, formula, "m={m} n={n} N={big_n}");
    }
}

fn label_strategy() -> impl Strategy<Value = (usize, FlagTupleLabel)> {
    (1usize..=12).prop_flat_map(|n| {
        let labels = FlagTupleLabel::all_valid(n, 4);
        (Just(n), prop::sample::select(labels))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recursion_and_formula_agree_symbolically((n, label) in label_strategy()) {
        prop_assert_eq!(count_recursive(&label, n).unwrap(), theorem_alpha(&label, n).unwrap());
    }

    #[test]
    fn formula_has_nonnegative_coefficients((n, label) in label_strategy()) {
        prop_assert!(theorem_alpha(&label, n).unwrap().has_nonnegative_coeffs());
    }
}
