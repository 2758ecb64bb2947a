use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use patlab::genfun::closed::evaluate;
use patlab::genfun::identities::printed_identity_check;
use patlab::genfun::{
    catalan, closed_coeff, reference_sequence, solve_catalog, ClosedForm, CoeffQuery, Params,
};
use patlab::{Monomial, TruncatedSeries, VarId};
use proptest::prelude::*;

fn ranks(w: &[u8]) -> Vec<u8> {
    let mut sorted = w.to_vec();
    sorted.sort_unstable();
    w.iter()
        .map(|v| sorted.iter().position(|s| s == v).unwrap() as u8 + 1)
        .collect()
}

fn digits(s: &str) -> Vec<u8> {
    s.bytes().map(|b| b - b'0').collect()
}

fn has_triple(w: &[u8], pat: &[u8]) -> bool {
    let n = w.len();
    (0..n).any(|i| (i + 1..n).any(|j| (j + 1..n).any(|k| ranks(&[w[i], w[j], w[k]]) == pat)))
}

fn windows(w: &[u8], pat: &[u8]) -> u8 {
    w.windows(pat.len()).filter(|win| ranks(win) == pat).count() as u8
}

fn perms(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n as u8);
            out.push(q);
        }
    }
    out
}

/// `(des, γ-match counts)` histogram over `S_n(λ)`.
fn histogram(avoid: &str, gamma: &[&str], n: usize) -> HashMap<(u8, Vec<u8>), i64> {
    let l = digits(avoid);
    let gs: Vec<Vec<u8>> = gamma.iter().map(|g| digits(g)).collect();
    let mut h = HashMap::new();
    for w in perms(n).into_iter().filter(|w| !has_triple(w, &l)) {
        let des = w.windows(2).filter(|p| p[0] > p[1]).count() as u8;
        let counts = gs.iter().map(|g| windows(&w, g)).collect();
        *h.entry((des, counts)).or_insert(0) += 1;
    }
    h
}

/// Asserts that slice `n` of `s` is the histogram with `y` for descents and
/// `vars[i]` for `gamma[i]`.
fn assert_slice(s: &TruncatedSeries, n: usize, avoid: &str, gamma: &[&str], vars: &[VarId]) {
    let h = histogram(avoid, gamma, n);
    let slice = s.slice(n);
    assert_eq!(slice.len(), h.len(), "slice {n}: {slice}");
    for ((des, counts), c) in h {
        let m = vars
            .iter()
            .zip(&counts)
            .fold(Monomial::one().with(VarId::Y, des), |m, (v, &e)| {
                m.with(*v, e)
            });
        assert_eq!(slice.coeff(&m), BigInt::from(c), "slice {n} at {m}");
    }
}

fn marginal(avoid: &str, gamma: &str, n: usize, k: u8) -> i64 {
    histogram(avoid, &[gamma], n)
        .into_iter()
        .filter(|((_, c), _)| c[0] == k)
        .map(|(_, v)| v)
        .sum()
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn family_pattern_123_1m2(m: usize) -> String {
    std::iter::once(1)
        .chain((2..=m).rev())
        .map(|d| char::from(b'0' + d as u8))
        .collect()
}

#[test]
fn thm5_at_y_one() {
    let s = solve_catalog("thm5", &Params::none(), 4)
        .unwrap()
        .into_main()
        .substitute_ints(&[(VarId::Y, 1)])
        .unwrap();
    assert_eq!(s.to_string(), "1 + t + 2*t^2 + (4+x)*t^3 + (8+6*x)*t^4");
}

#[test]
fn thm8_third_slice() {
    let s = solve_catalog("thm8", &Params::none(), 3)
        .unwrap()
        .into_main();
    let h = ["123", "213", "231", "321"];
    assert_slice(
        &s,
        3,
        "132",
        &h,
        &[VarId::X1, VarId::X2, VarId::X3, VarId::X4],
    );
    let printed = "x1 + x2*y + x3*y + x4*y^2 + y";
    let mut got: Vec<String> = s
        .slice(3)
        .to_string()
        .split(" + ")
        .map(String::from)
        .collect();
    let mut want: Vec<String> = printed.split(" + ").map(String::from).collect();
    got.sort();
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn single_statistic_systems_match_brute_force() {
    for (id, avoid, gamma) in [
        ("thm1", "123", "132"),
        ("thm2", "123", "231"),
        ("thm4", "132", "123"),
        ("thm5", "132", "231"),
        ("thm6", "132", "213"),
    ] {
        let s = solve_catalog(id, &Params::none(), 7).unwrap().into_main();
        for n in 0..=7 {
            assert_slice(&s, n, avoid, &[gamma], &[VarId::X]);
        }
    }
}

#[test]
fn family_slices_at_y_one() {
    let s = solve_catalog("fam_123_1m2", &Params::m(3), 3)
        .unwrap()
        .into_main()
        .substitute_ints(&[(VarId::Y, 1)])
        .unwrap();
    assert_eq!(s.slice(3).to_string(), "4 + x");
    for m in 2..=4usize {
        let s = solve_catalog("fam_123_1m2", &Params::m(m as i64), 7)
            .unwrap()
            .into_main();
        let g = family_pattern_123_1m2(m);
        for n in 0..=7 {
            for k in 0..=n as u8 {
                let m = Monomial::one().with(VarId::X, k);
                assert_eq!(
                    s.coeff(n, &m),
                    BigInt::from(marginal("123", &g, n, k)),
                    "{g} {n} {k}"
                );
            }
        }
    }
}

#[test]
fn closed_form_examples() {
    let q = |n, k| CoeffQuery::new(n, k, Params::none());
    assert_eq!(closed_coeff("thm1eq", &q(3, 1)).unwrap(), rational(1));
    assert_eq!(
        closed_coeff("thm1eq", &q(4, 1)).unwrap(),
        rational(marginal("123", "132", 4, 1))
    );
    assert_eq!(
        closed_coeff("thm4eq", &q(4, 1)).unwrap(),
        rational(marginal("132", "123", 4, 1))
    );
    assert_eq!(closed_coeff("thm5eq", &q(4, 1)).unwrap(), rational(4));
    assert_eq!(marginal("132", "231", 4, 1), 6);
    assert!(closed_coeff("thm1eq", &q(4, 0)).is_err());
    assert!(closed_coeff("thm1eq", &CoeffQuery::new(4, 1, Params::m(4))).is_err());
}

#[test]
fn derived_132_form_matches_brute_force() {
    for m in 2..=4usize {
        let g: String = (1..=m).map(|d| char::from(b'0' + d as u8)).collect();
        for n in 1..=7 {
            for k in 1..=n {
                let v =
                    evaluate(ClosedForm::Cf132_1mDerived, n as i64, k as i64, m as i64).unwrap();
                assert_eq!(
                    v,
                    rational(marginal("132", &g, n, k as u8)),
                    "m={m} n={n} k={k}"
                );
            }
        }
    }
}

#[test]
fn reference_sequences() {
    assert_eq!(catalan(4), BigInt::from(14));
    assert_eq!(
        reference_sequence("seq_123_231_x0", 5).unwrap(),
        BigInt::from(23)
    );
    assert_eq!(
        reference_sequence("seq_132_231_x0", 4).unwrap(),
        BigInt::from(8)
    );
    assert!(reference_sequence("seq_123_231_x0", 400).is_err());
    assert!(reference_sequence("unknown", 1).is_err());
}

#[test]
fn printed_identities() {
    for id in [
        "thm1_quadratic_y1",
        "thm1_quadratic_derived",
        "thm8_cleared",
    ] {
        assert!(
            printed_identity_check(id, &Params::none(), 8)
                .unwrap()
                .holds,
            "{id}"
        );
    }
    assert!(
        printed_identity_check("thm8_expansion", &Params::none(), 5)
            .unwrap()
            .holds
    );
    let v = printed_identity_check("thm7_expansion", &Params::none(), 4).unwrap();
    let w = v.witness.expect("mismatch");
    assert_eq!((w.n, w.expected.as_str(), w.actual.as_str()), (3, "5", "6"));
}

#[test]
fn domains_are_enforced() {
    assert!(solve_catalog("fam_132_a1m", &Params::ma(3, 1), 4).is_err());
    assert!(solve_catalog("fam_123_1m2", &Params::m(1), 4).is_err());
    assert!(solve_catalog("thm1", &Params::m(3), 4).is_err());
    assert!(solve_catalog("no_such", &Params::none(), 4).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lagrange_form_matches_brute_force(m in 2usize..5, n in 1usize..8, k in 1usize..8) {
        prop_assume!(k <= n);
        let g = family_pattern_123_1m2(m);
        let v = closed_coeff("cf_123_1m2", &CoeffQuery::new(n as i64, k as i64, Params::m(m as i64))).unwrap();
        prop_assert_eq!(v, rational(marginal("123", &g, n, k as u8)));
    }

    #[test]
    fn slice_sums_are_catalan(order in 0usize..9) {
        let s = solve_catalog("thm6", &Params::none(), order).unwrap().into_main();
        for n in 0..=order {
            prop_assert_eq!(s.slice(n).coefficient_sum(), catalan(n));
        }
    }
}
