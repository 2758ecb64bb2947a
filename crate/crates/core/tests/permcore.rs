use std::collections::BTreeSet;

use patlab::perm::{
    consecutive_count, consecutive_matches, contains_classical, descent_stats, enumerate_avoiders,
    phi_n, reduce, symmetry_transform,
};
use patlab::{Pattern, Permutation, Symmetry};
use proptest::prelude::*;

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

/// Ranks of `w` among themselves, 1-based.
fn ranks(w: &[u8]) -> Vec<u8> {
    let mut sorted = w.to_vec();
    sorted.sort_unstable();
    w.iter()
        .map(|v| sorted.iter().position(|s| s == v).unwrap() as u8 + 1)
        .collect()
}

fn naive_contains(w: &[u8], pat: &[u8]) -> bool {
    fn go(w: &[u8], pat: &[u8], start: usize, picked: &mut Vec<u8>) -> bool {
        if picked.len() == pat.len() {
            return ranks(picked) == pat;
        }
        (start..w.len()).any(|i| {
            picked.push(w[i]);
            let hit = go(w, pat, i + 1, picked);
            picked.pop();
            hit
        })
    }
    go(w, pat, 0, &mut Vec::new())
}

fn naive_windows(w: &[u8], pat: &[u8]) -> Vec<usize> {
    if pat.len() > w.len() {
        return Vec::new();
    }
    (0..=w.len() - pat.len())
        .filter(|&i| ranks(&w[i..i + pat.len()]) == pat)
        .map(|i| i + 1)
        .collect()
}

/// Lexicographic successor, for an independent walk through S_n.
fn next_perm(w: &mut [u8]) -> bool {
    let Some(i) = (1..w.len()).rev().find(|&i| w[i - 1] < w[i]) else {
        return false;
    };
    let j = (i..w.len()).rev().find(|&j| w[j] > w[i - 1]).unwrap();
    w.swap(i - 1, j);
    w[i..].reverse();
    true
}

fn every_perm(n: usize) -> Vec<Vec<u8>> {
    let mut w: Vec<u8> = (1..=n as u8).collect();
    let mut out = vec![w.clone()];
    while next_perm(&mut w) {
        out.push(w.clone());
    }
    out
}

fn catalan(n: u64) -> u64 {
    (0..n).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

fn arb_perm(max: usize) -> impl Strategy<Value = Vec<u8>> {
    (0..=max).prop_flat_map(|n| Just((1..=n as u8).collect::<Vec<u8>>()).prop_shuffle())
}

#[test]
fn reduction_examples() {
    assert_eq!(reduce(&[5, 1]).unwrap(), perm("21"));
    assert_eq!(reduce(&[2, 6, 3, 8]).unwrap(), perm("1324"));
    assert_eq!(reduce(&[1, 2, 3]).unwrap(), perm("123"));
    assert!(reduce(&[3, 3]).is_err());
}

#[test]
fn descent_examples() {
    assert_eq!(descent_stats(&perm("12345")).des, 0);
    let s = descent_stats(&perm("15324"));
    assert_eq!(s.descent_set, BTreeSet::from([2, 3]));
    assert_eq!((s.des, s.asc), (2, 2));
    assert_eq!(descent_stats(&perm("321")).des, 2);
}

#[test]
fn classical_versus_consecutive() {
    let p = perm("23541");
    let pat = Pattern::classical("132").unwrap();
    let window = Pattern::consecutive("132").unwrap();
    assert!(contains_classical(&p, &pat));
    // 354 is a 132 window.
    assert_eq!(consecutive_matches(&p, &window), vec![2]);
    let q = perm("1342");
    assert!(contains_classical(&q, &pat));
    assert_eq!(consecutive_count(&q, &window), 0);
    assert!(!contains_classical(&Permutation::empty(), &pat));
}

#[test]
fn consecutive_examples() {
    let p = perm("869743251");
    let g = Pattern::consecutive("132").unwrap();
    assert_eq!(consecutive_matches(&p, &g), vec![2]);
    let run = Pattern::consecutive("123").unwrap();
    assert_eq!(consecutive_matches(&perm("1234"), &run), vec![1, 2]);
}

#[test]
fn symmetry_examples() {
    let p = perm("15324");
    assert_eq!(symmetry_transform(&p, Symmetry::Reverse), perm("42351"));
    assert_eq!(symmetry_transform(&p, Symmetry::Complement), perm("51342"));
    assert_eq!(
        symmetry_transform(&p, Symmetry::ReverseComplement),
        perm("24315")
    );
}

#[test]
fn avoider_examples() {
    let l = Pattern::classical("123").unwrap();
    let three: BTreeSet<String> = enumerate_avoiders(3, &l)
        .unwrap()
        .map(|p| p.to_string())
        .collect();
    let expected: BTreeSet<String> = ["132", "213", "231", "312", "321"].map(String::from).into();
    assert_eq!(three, expected);
    assert_eq!(enumerate_avoiders(4, &l).unwrap().count(), 14);
    let zero: Vec<Permutation> = enumerate_avoiders(0, &l).unwrap().collect();
    assert_eq!(zero, vec![Permutation::empty()]);
    assert!(enumerate_avoiders(15, &l).is_err());
}

#[test]
fn phi_n_examples() {
    assert_eq!(phi_n(&perm("32415")).unwrap(), perm("53412"));
    assert_eq!(phi_n(&perm("1")).unwrap(), perm("1"));
    assert_eq!(phi_n(&perm("21")).unwrap(), perm("21"));
    assert!(phi_n(&perm("312")).is_err());
}

#[test]
fn avoiders_agree_with_filtered_walk() {
    for body in ["123", "132", "213", "231", "312", "321"] {
        let l = Pattern::classical(body).unwrap();
        let pat: Vec<u8> = body.bytes().map(|b| b - b'0').collect();
        for n in 0..=7 {
            let fast: BTreeSet<Vec<u8>> = enumerate_avoiders(n, &l)
                .unwrap()
                .map(|p| p.entries().to_vec())
                .collect();
            let slow: BTreeSet<Vec<u8>> = every_perm(n)
                .into_iter()
                .filter(|w| !naive_contains(w, &pat))
                .collect();
            assert_eq!(fast, slow, "{body} n={n}");
            assert_eq!(fast.len() as u64, catalan(n as u64));
        }
    }
}

#[test]
fn catalan_counts_to_twelve() {
    for body in ["123", "132", "213", "231", "312", "321"] {
        let l = Pattern::classical(body).unwrap();
        let n = 12;
        assert_eq!(
            enumerate_avoiders(n, &l).unwrap().count() as u64,
            catalan(n as u64)
        );
    }
    assert_eq!(catalan(12), 208012);
}

#[test]
fn phi_n_is_a_descent_preserving_bijection() {
    let from = Pattern::classical("312").unwrap();
    let to = Pattern::classical("213").unwrap();
    for n in 0..=8 {
        let mut images = BTreeSet::new();
        for p in enumerate_avoiders(n, &from).unwrap() {
            let q = phi_n(&p).unwrap();
            assert!(q.avoids(&to), "{p} -> {q}");
            assert_eq!(descent_stats(&p).descent_set, descent_stats(&q).descent_set);
            images.insert(q.entries().to_vec());
        }
        assert_eq!(images.len() as u64, catalan(n as u64));
    }
}

proptest! {
    #[test]
    fn classical_containment_matches_subsequence_search(w in arb_perm(8), pat in arb_perm(4)) {
        prop_assume!(!pat.is_empty());
        let p = Permutation::new(w.clone()).unwrap();
        let l = Pattern::new(Permutation::new(pat.clone()).unwrap(), patlab::PatternKind::Classical).unwrap();
        prop_assert_eq!(contains_classical(&p, &l), naive_contains(&w, &pat));
    }

    #[test]
    fn window_matches_agree_with_rank_scan(w in arb_perm(10), pat in arb_perm(5)) {
        prop_assume!(!pat.is_empty());
        let p = Permutation::new(w.clone()).unwrap();
        let g = Pattern::new(Permutation::new(pat.clone()).unwrap(), patlab::PatternKind::Consecutive).unwrap();
        let expected = naive_windows(&w, &pat);
        prop_assert_eq!(consecutive_count(&p, &g), expected.len());
        prop_assert_eq!(consecutive_matches(&p, &g), expected);
    }

    #[test]
    fn symmetries_are_involutions(w in arb_perm(10)) {
        let p = Permutation::new(w.clone()).unwrap();
        for k in [Symmetry::Reverse, Symmetry::Complement, Symmetry::ReverseComplement] {
            prop_assert_eq!(symmetry_transform(&symmetry_transform(&p, k), k), p.clone());
        }
        let rc = symmetry_transform(&symmetry_transform(&p, Symmetry::Reverse), Symmetry::Complement);
        prop_assert_eq!(symmetry_transform(&p, Symmetry::ReverseComplement), rc);
        let n = w.len() as u8;
        let complement: Vec<u8> = w.iter().map(|v| n + 1 - v).collect();
        prop_assert_eq!(symmetry_transform(&p, Symmetry::Complement).entries().to_vec(), complement);
    }

    #[test]
    fn descents_and_ascents_partition_adjacent_pairs(w in arb_perm(10)) {
        let s = descent_stats(&Permutation::new(w.clone()).unwrap());
        prop_assert_eq!(s.des + s.asc, w.len().saturating_sub(1));
        for i in 1..w.len() {
            prop_assert_eq!(s.descent_set.contains(&i), w[i - 1] > w[i]);
        }
    }

    #[test]
    fn reduction_is_rank_order(w in prop::collection::btree_set(1u64..1000, 0..9)
        .prop_map(|s| s.into_iter().collect::<Vec<u64>>())
        .prop_shuffle())
    {
        let r = reduce(&w).unwrap();
        let small: Vec<u8> = r.entries().to_vec();
        let mut order: Vec<usize> = (0..w.len()).collect();
        order.sort_by_key(|&i| w[i]);
        let mut expected = vec![0u8; w.len()];
        for (rank, i) in order.into_iter().enumerate() {
            expected[i] = rank as u8 + 1;
        }
        prop_assert_eq!(small, expected);
    }

    #[test]
    fn rendering_round_trips(w in arb_perm(12)) {
        let p = Permutation::new(w).unwrap();
        let back: Permutation = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }
}
