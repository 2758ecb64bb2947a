use std::collections::BTreeSet;

use patlab::dyck::{
    enumerate_paths, first_return, horizontal_segments, parse_path, path_pattern_count,
    pattern_path, peaks, phi_inverse, phi_map, psi_inverse, psi_map, PathVariant,
};
use patlab::perm::enumerate_avoiders;
use patlab::{DyckPath, Error, PathPattern, Pattern, Permutation};
use proptest::prelude::*;

const P: &str = "DDRDDRRRDDRDRDRRDR";

fn perm(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn pat(s: &str) -> PathPattern {
    s.parse().unwrap()
}

fn catalan(n: u64) -> u64 {
    (0..n).fold(1u64, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// Every prefix has at least as many D as R and the totals agree.
fn is_dyck(word: &str) -> bool {
    let mut h = 0i32;
    for c in word.chars() {
        h += if c == 'D' { 1 } else { -1 };
        if h < 0 {
            return false;
        }
    }
    h == 0
}

fn ltr_minima(w: &[u8]) -> usize {
    let mut best = u8::MAX;
    w.iter()
        .filter(|&&v| {
            let new = v < best;
            best = best.min(v);
            new
        })
        .count()
}

fn factor_count(word: &str, f: &str) -> usize {
    (0..=word.len().saturating_sub(f.len()))
        .filter(|&i| word.get(i..i + f.len()) == Some(f))
        .count()
}

#[test]
fn parsing_examples() {
    assert_eq!(parse_path("DR").unwrap().size(), 1);
    assert_eq!(parse_path(P).unwrap().size(), 9);
    match parse_path("RD") {
        Err(Error::InvalidPath { index, .. }) => assert_eq!(index, 1),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn path_statistics() {
    let p = parse_path(P).unwrap();
    assert_eq!(first_return(&p).unwrap(), 4);
    assert_eq!(first_return(&parse_path("DR").unwrap()).unwrap(), 1);
    assert_eq!(first_return(&parse_path("DDRR").unwrap()).unwrap(), 2);
    assert_eq!(horizontal_segments(&p), vec![1, 3, 1, 1, 2, 1]);
    assert_eq!(horizontal_segments(&parse_path("DDRR").unwrap()), vec![2]);
    assert_eq!(peaks(&p), 6);
    assert_eq!(peaks(&parse_path("DRDR").unwrap()), 2);
    assert!(first_return(&DyckPath::empty()).is_err());
}

#[test]
fn factor_counts() {
    let p = parse_path(P).unwrap();
    assert_eq!(path_pattern_count(&p, &pat("DRRR"), false), 1);
    assert_eq!(path_pattern_count(&p, &pat("DRRD"), false), 1);
    assert_eq!(
        path_pattern_count(&parse_path("DDRR").unwrap(), &pat("DRRD"), true),
        1
    );
    assert_eq!(
        path_pattern_count(&parse_path("DDRR").unwrap(), &pat("DRRD"), false),
        0
    );
}

#[test]
fn bijection_examples() {
    assert_eq!(phi_map(&perm("867943251")).unwrap().to_string(), P);
    assert_eq!(phi_map(&perm("1")).unwrap().to_string(), "DR");
    assert_eq!(phi_map(&perm("42351")).unwrap().to_string(), "DDRDDRRRDR");
    assert_eq!(psi_map(&perm("869743251")).unwrap().to_string(), P);
    assert_eq!(psi_map(&perm("1")).unwrap().to_string(), "DR");
    assert_eq!(psi_inverse(&parse_path(P).unwrap()), perm("869743251"));
    assert_eq!(phi_inverse(&parse_path(P).unwrap()), perm("867943251"));
    assert!(phi_map(&perm("132")).is_err());
    assert!(psi_map(&perm("123")).is_err());
}

#[test]
fn pattern_paths() {
    let g = Pattern::consecutive("42351").unwrap();
    assert_eq!(
        pattern_path(&g, PathVariant::PhiPrime).unwrap().to_string(),
        "RDDRRRDR"
    );
    assert_eq!(
        pattern_path(&g, PathVariant::PhiDoublePrime)
            .unwrap()
            .to_string(),
        "RDDRRRD"
    );
    let run = Pattern::consecutive("123").unwrap();
    assert_eq!(
        pattern_path(&run, PathVariant::PhiPrime)
            .unwrap()
            .to_string(),
        "RRR"
    );
}

#[test]
fn path_enumeration() {
    let two: BTreeSet<String> = enumerate_paths(2).unwrap().map(|d| d.to_string()).collect();
    assert_eq!(
        two,
        BTreeSet::from(["DDRR".to_string(), "DRDR".to_string()])
    );
    assert_eq!(enumerate_paths(3).unwrap().count(), 5);
    let zero: Vec<DyckPath> = enumerate_paths(0).unwrap().collect();
    assert_eq!(zero, vec![DyckPath::empty()]);
    for n in 0..=10 {
        let words: BTreeSet<String> = enumerate_paths(n).unwrap().map(|d| d.to_string()).collect();
        assert_eq!(words.len() as u64, catalan(n as u64));
        assert!(words.iter().all(|w| w.len() == 2 * n && is_dyck(w)));
    }
}

#[test]
fn bijections_round_trip_exhaustively() {
    for (body, map, inv) in [
        (
            "132",
            phi_map as fn(&Permutation) -> _,
            phi_inverse as fn(&DyckPath) -> Permutation,
        ),
        ("123", psi_map, psi_inverse),
    ] {
        let l = Pattern::classical(body).unwrap();
        for n in 0..=9 {
            let mut images = BTreeSet::new();
            for sigma in enumerate_avoiders(n, &l).unwrap() {
                let d = map(&sigma).unwrap();
                assert!(is_dyck(&d.to_string()));
                assert_eq!(inv(&d), sigma);
                images.insert(d.to_string());
            }
            assert_eq!(images.len() as u64, catalan(n as u64), "{body} n={n}");
        }
    }
}

#[test]
fn descents_transport() {
    let phi_class = Pattern::classical("132").unwrap();
    let psi_class = Pattern::classical("123").unwrap();
    for n in 0..=9 {
        for s in enumerate_avoiders(n, &phi_class).unwrap() {
            let w = phi_map(&s).unwrap().to_string();
            assert_eq!(s.des(), factor_count(&w, "RD"), "{s}");
            assert_eq!(peaks(&parse_path(&w).unwrap()), ltr_minima(s.entries()));
        }
        for s in enumerate_avoiders(n, &psi_class).unwrap() {
            let w = psi_map(&s).unwrap().to_string();
            assert_eq!(
                s.des(),
                factor_count(&w, "RD") + factor_count(&w, "RRR"),
                "{s}"
            );
        }
    }
}

fn arb_path(max: usize) -> impl Strategy<Value = String> {
    (0..=max)
        .prop_flat_map(|n| prop::collection::vec(any::<bool>(), 2 * n))
        .prop_map(|coins| {
            // Reflect a random walk at the axis, then close it.
            let n = coins.len() / 2;
            let (mut d, mut r) = (0, 0);
            let mut w = String::new();
            for up in coins {
                if d < n && (up || r == d) {
                    d += 1;
                    w.push('D');
                } else if r < d {
                    r += 1;
                    w.push('R');
                }
            }
            while r < d {
                r += 1;
                w.push('R');
            }
            w
        })
}

proptest! {
    #[test]
    fn random_paths_invert(w in arb_path(12)) {
        let d = parse_path(&w).unwrap();
        prop_assert_eq!(d.to_string(), w.clone());
        let s = phi_inverse(&d);
        prop_assert!(s.avoids(&Pattern::classical("132").unwrap()));
        prop_assert_eq!(phi_map(&s).unwrap(), d.clone());
        let s = psi_inverse(&d);
        prop_assert!(s.avoids(&Pattern::classical("123").unwrap()));
        prop_assert_eq!(psi_map(&s).unwrap(), d.clone());
        prop_assert_eq!(horizontal_segments(&d).iter().sum::<usize>(), d.size());
        prop_assert_eq!(peaks(&d), factor_count(&w, "DR"));
    }

    #[test]
    fn factor_count_matches_scan(w in arb_path(10), f in "[DR]{1,4}") {
        let d = parse_path(&w).unwrap();
        prop_assert_eq!(path_pattern_count(&d, &pat(&f), false), factor_count(&w, &f));
        let ext = format!("{w}D");
        prop_assert_eq!(path_pattern_count(&d, &pat(&f), true), factor_count(&ext, &f));
    }

    #[test]
    fn non_dyck_words_are_rejected(w in "[DR]{1,12}") {
        prop_assert_eq!(parse_path(&w).is_ok(), is_dyck(&w));
    }
}
