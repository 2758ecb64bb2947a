//! The individual conformance checks.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::oracle::{oracle_series, slice_poly};
use crate::dyck::{
    admissible_variant, enumerate_paths, path_pattern_count, pattern_path, phi_inverse, phi_map,
    psi_inverse, psi_map, DyckPath, PathPattern,
};
use crate::error::{invalid, Result};
use crate::genfun::closed::{coefficient_row, resolve, ClosedForm, ALIASES};
use crate::genfun::identities::{identity_trust, printed_identity_check};
use crate::genfun::sequences::{reference_sequence, stored_len};
use crate::genfun::{
    catalan, format_rational, solve_catalog, statistic, Domain, Params, Trust, Witness,
};
use crate::perm::{
    all_permutations, consecutive_count, enumerate_avoiders, phi_n, Pattern, PatternKind,
    Permutation, Symmetry,
};
use crate::poly::{Monomial, SparsePoly, TruncatedSeries, VarId};

/// Trust level and first failure of one evaluated check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub trust: Trust,
    pub witness: Option<Witness>,
}

fn hard(witness: Option<Witness>) -> Outcome {
    Outcome {
        trust: Trust::HardPass,
        witness,
    }
}

fn classical(p: &Permutation) -> Pattern {
    Pattern::new(p.clone(), PatternKind::Classical).expect("non-empty")
}

fn consecutive(p: &Permutation) -> Pattern {
    Pattern::new(p.clone(), PatternKind::Consecutive).expect("non-empty")
}

fn cpat(s: &str) -> Pattern {
    Pattern::consecutive(s).expect("valid literal")
}

fn lpat(s: &str) -> Pattern {
    Pattern::classical(s).expect("valid literal")
}

fn slice(lambda: &Pattern, gamma: &Pattern, n: usize) -> SparsePoly {
    (*slice_poly(lambda, std::slice::from_ref(gamma), n)).clone()
}

fn first_some<T>(iter: impl IntoIterator<Item = Option<T>>) -> Option<T> {
    iter.into_iter().flatten().next()
}

fn x_power(k: usize) -> String {
    Monomial::one().with(VarId::X, k as u8).to_string()
}

// ---------------------------------------------------------------- symmetries

fn sym_classwise(kind: Symmetry, n: usize) -> Result<Option<Witness>> {
    let s3 = all_permutations(3);
    for k in 0..=n {
        for l in &s3 {
            for g in &s3 {
                let (lambda, gamma) = (classical(l), consecutive(g));
                let base = slice(&lambda, &gamma, k);
                let image = slice(&lambda.transform(kind), &gamma.transform(kind), k);
                let expected = match kind {
                    Symmetry::ReverseComplement => base,
                    _ => base.y_reverse(k)?,
                };
                if let Some(w) = Witness::between_polys(k, &expected, &image) {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

fn sym_123_rc(n: usize) -> Option<Witness> {
    let l = lpat("123");
    let gammas: Vec<Permutation> = all_permutations(3)
        .into_iter()
        .chain(all_permutations(4))
        .collect();
    first_some((0..=n).flat_map(|k| {
        let l = &l;
        gammas.iter().map(move |g| {
            let g = consecutive(g);
            Witness::between_polys(
                k,
                &slice(l, &g, k),
                &slice(l, &g.transform(Symmetry::ReverseComplement), k),
            )
        })
    }))
}

/// `k⋯21` and `1k⋯32` for `k = 2..=4`.
fn phi_invariant_patterns() -> Vec<Pattern> {
    let mut out = Vec::new();
    for k in 2..=4u8 {
        let down: Vec<u8> = (1..=k).rev().collect();
        let mut head = vec![1];
        head.extend((2..=k).rev());
        for body in [down, head] {
            out.push(consecutive(&Permutation::new(body).expect("permutation")));
        }
    }
    out
}

fn sym_phi(n: usize) -> Option<Witness> {
    let (a, b) = (lpat("312"), lpat("213"));
    let pats = phi_invariant_patterns();
    first_some((0..=n).flat_map(|k| {
        let (a, b) = (&a, &b);
        pats.iter()
            .map(move |g| Witness::between_polys(k, &slice(b, g, k), &slice(a, g, k)))
    }))
}

fn increasing(k: u8) -> Permutation {
    Permutation::new((1..=k).collect()).expect("permutation")
}

fn sym_1321(n: usize) -> Result<Option<Witness>> {
    let l = lpat("132");
    for k in 0..=n {
        for len in 2..=4u8 {
            let up = increasing(len);
            let down = Permutation::new((1..=len).rev().collect()).expect("permutation");
            let mut head = vec![len];
            head.extend(1..len);
            let mut tail: Vec<u8> = (1..len).rev().collect();
            tail.push(len);
            let head = Permutation::new(head).expect("permutation");
            let tail = Permutation::new(tail).expect("permutation");
            for (lhs, rhs) in [(up, down), (head, tail)] {
                let expected = slice(&l, &consecutive(&rhs), k).y_reverse(k)?;
                let actual = slice(&l, &consecutive(&lhs), k);
                if let Some(w) = Witness::between_polys(k, &expected, &actual) {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// Per permutation: the five length-3 patterns other than λ share `n − 2`
/// windows; per slice: coefficient sum, degree bounds.
fn oracle_consistency(n: usize) -> Result<Option<Witness>> {
    let s3 = all_permutations(3);
    for k in 0..=n {
        for l in &s3 {
            let lambda = classical(l);
            let others: Vec<Pattern> = s3.iter().filter(|g| *g != l).map(consecutive).collect();
            let windows = k.saturating_sub(2);
            for sigma in enumerate_avoiders(k, &lambda)? {
                let total: usize = others.iter().map(|g| consecutive_count(&sigma, g)).sum();
                if total != windows {
                    return Ok(Some(Witness::new(
                        k,
                        format!("windows@{sigma}"),
                        windows,
                        total,
                    )));
                }
            }
            let tracked = &others[..4];
            let poly = slice_poly(&lambda, tracked, k);
            let count = poly.coefficient_sum();
            if count != catalan(k) {
                return Ok(Some(Witness::new(k, "sum", catalan(k), count)));
            }
            for (m, _) in poly.terms() {
                let des = m.degree(VarId::Y) as usize;
                if k > 0 && des > k - 1 {
                    return Ok(Some(Witness::new(k, m.to_string(), k - 1, des)));
                }
                let x_total: usize = (1..=4)
                    .map(|i| m.degree(VarId::tracked(i).expect("at most four")) as usize)
                    .sum();
                if x_total > windows {
                    return Ok(Some(Witness::new(k, m.to_string(), windows, x_total)));
                }
            }
        }
    }
    Ok(None)
}

// --------------------------------------------------------------- bijections

fn catalan_counts(n: usize) -> Result<Option<Witness>> {
    for k in 0..=n {
        for l in all_permutations(3) {
            let count = enumerate_avoiders(k, &classical(&l))?.count();
            if BigInt::from(count) != catalan(k) {
                return Ok(Some(Witness::new(
                    k,
                    format!("S_n({l})"),
                    catalan(k),
                    count,
                )));
            }
        }
    }
    Ok(None)
}

fn round_trip(
    n: usize,
    avoid: &str,
    map: fn(&Permutation) -> Result<DyckPath>,
    inverse: fn(&DyckPath) -> Permutation,
) -> Result<Option<Witness>> {
    let lambda = lpat(avoid);
    for k in 0..=n {
        let mut images = HashSet::new();
        for sigma in enumerate_avoiders(k, &lambda)? {
            let path = map(&sigma)?;
            let back = inverse(&path);
            if back != sigma {
                return Ok(Some(Witness::new(k, path.to_string(), &sigma, &back)));
            }
            images.insert(path);
        }
        for d in enumerate_paths(k)? {
            let sigma = inverse(&d);
            if !sigma.avoids(&lambda) {
                return Ok(Some(Witness::new(
                    k,
                    d.to_string(),
                    format!("avoids {avoid}"),
                    &sigma,
                )));
            }
            let again = map(&sigma)?;
            if again != d {
                return Ok(Some(Witness::new(k, sigma.to_string(), &d, &again)));
            }
        }
        if BigInt::from(images.len()) != catalan(k) {
            return Ok(Some(Witness::new(k, "images", catalan(k), images.len())));
        }
    }
    Ok(None)
}

fn descent_set(p: &Permutation) -> Vec<usize> {
    let w = p.entries();
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect()
}

fn fmt_set(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn bij_phin(n: usize) -> Result<Option<Witness>> {
    let (from, to) = (lpat("312"), lpat("213"));
    for k in 0..=n {
        let mut images = HashSet::new();
        for sigma in enumerate_avoiders(k, &from)? {
            let image = phi_n(&sigma)?;
            if !image.avoids(&to) {
                return Ok(Some(Witness::new(
                    k,
                    sigma.to_string(),
                    "avoids 213",
                    &image,
                )));
            }
            let (d0, d1) = (descent_set(&sigma), descent_set(&image));
            if d0 != d1 {
                return Ok(Some(Witness::new(
                    k,
                    format!("Des@{sigma}"),
                    fmt_set(&d0),
                    fmt_set(&d1),
                )));
            }
            images.insert(image);
        }
        if BigInt::from(images.len()) != catalan(k) {
            return Ok(Some(Witness::new(k, "images", catalan(k), images.len())));
        }
    }
    Ok(None)
}

fn path_pat(s: &str) -> PathPattern {
    s.parse().expect("valid literal")
}

type PermStat = Box<dyn Fn(&Permutation) -> usize>;

/// Per permutation: `stat(σ)` against a sum of path-pattern counts in `map(σ)`.
fn transport(
    n: usize,
    avoid: &str,
    map: fn(&Permutation) -> Result<DyckPath>,
    stats: Vec<(String, PermStat, Vec<PathPattern>)>,
) -> Result<Option<Witness>> {
    let lambda = lpat(avoid);
    for k in 0..=n {
        for sigma in enumerate_avoiders(k, &lambda)? {
            let path = map(&sigma)?;
            for (name, stat, pats) in &stats {
                let want = stat(&sigma);
                let got: usize = pats
                    .iter()
                    .map(|p| path_pattern_count(&path, p, false))
                    .sum();
                if want != got {
                    return Ok(Some(Witness::new(k, format!("{name}@{sigma}"), want, got)));
                }
            }
        }
    }
    Ok(None)
}

fn mch(gamma: &str) -> PermStat {
    let g = cpat(gamma);
    Box::new(move |s| consecutive_count(s, &g))
}

fn des() -> PermStat {
    Box::new(|s| s.des())
}

fn transport_psi(n: usize) -> Result<Option<Witness>> {
    transport(
        n,
        "123",
        psi_map,
        vec![
            ("132".into(), mch("132"), vec![path_pat("DRRR")]),
            ("231".into(), mch("231"), vec![path_pat("DRRD")]),
            ("des".into(), des(), vec![path_pat("RD"), path_pat("RRR")]),
        ],
    )
}

fn transport_phi(n: usize) -> Result<Option<Witness>> {
    transport(
        n,
        "132",
        phi_map,
        vec![
            ("des".into(), des(), vec![path_pat("RD")]),
            ("123".into(), mch("123"), vec![path_pat("RRR")]),
        ],
    )
}

/// Every admissible 132-avoiding γ with `2 ≤ |γ| ≤ 5`.
fn admissible_patterns() -> Vec<(Pattern, PathPattern)> {
    (2..=5)
        .flat_map(all_permutations)
        .filter_map(|p| {
            let g = consecutive(&p);
            let v = admissible_variant(&g)?;
            let path = pattern_path(&g, v).ok()?;
            Some((g, path))
        })
        .collect()
}

fn transport_general(n: usize) -> Result<Option<Witness>> {
    let stats = admissible_patterns()
        .into_iter()
        .map(|(g, path)| {
            let name = g.to_string();
            let stat: PermStat = Box::new(move |s| consecutive_count(s, &g));
            (name, stat, vec![path])
        })
        .collect();
    transport(n, "132", phi_map, stats)
}

// --------------------------------------------------------------- recursions

/// Trust of one recursion instance; degenerate parameters are downgraded.
fn rec_trust(id: &str, params: &Params) -> Result<Trust> {
    if id == "fam_123_2m31" && params.m == Some(2) {
        return Ok(Trust::ReportOnly);
    }
    Ok(crate::genfun::catalog::system_info(id)?.trust)
}

fn at_y1(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.substitute_ints(&[(VarId::Y, 1)])
}

fn rec(id: &str, params: &Params, n: usize) -> Result<Outcome> {
    let trust = rec_trust(id, params)?;
    let stat = statistic(id, params)?;
    let solved = solve_catalog(id, params, n)?.into_main();
    let solved = if stat.descents {
        solved
    } else {
        at_y1(&solved)?
    };
    let gammas: Vec<Vec<Pattern>> = if stat.tracked.len() == 1 {
        stat.tracked[0].iter().map(|g| vec![g.clone()]).collect()
    } else {
        vec![stat.tracked.iter().map(|alts| alts[0].clone()).collect()]
    };
    for gamma in gammas {
        let oracle = oracle_series(&stat.avoid, &gamma, &stat.vars, stat.descents, n)?;
        if let Some(w) = Witness::between(&oracle, &solved) {
            return Ok(Outcome {
                trust,
                witness: Some(w),
            });
        }
    }
    Ok(Outcome {
        trust,
        witness: None,
    })
}

/// `(check id, variable kept, target system)`; the other `x_i` are set to 1.
pub const SPECIALIZATIONS: [(&str, VarId, &str); 3] = [
    ("spec_thm8_thm4", VarId::X1, "thm4"),
    ("spec_thm8_thm5", VarId::X3, "thm5"),
    ("spec_thm8_thm6", VarId::X2, "thm6"),
];

fn specialization(keep: VarId, target: &str, n: usize) -> Result<Option<Witness>> {
    let full = solve_catalog("thm8", &Params::none(), n)?.into_main();
    let assignments: Vec<(VarId, SparsePoly)> = (1..=4)
        .map(|i| VarId::tracked(i).expect("at most four"))
        .map(|v| {
            let image = if v == keep {
                SparsePoly::var(VarId::X)
            } else {
                SparsePoly::one()
            };
            (v, image)
        })
        .collect();
    let special = full.substitute(&assignments)?;
    let expected = solve_catalog(target, &Params::none(), n)?.into_main();
    Ok(Witness::between(&expected, &special))
}

/// `(check id, family, m, target system)`: the family at `m` against that system at `y = 1`.
pub const FAMILY_CONSISTENCY: [(&str, &str, i64, &str); 4] = [
    ("fam_consistency_123_2m31", "fam_123_2m31", 3, "thm2"),
    ("fam_consistency_132_1m", "fam_132_1m", 3, "thm4"),
    ("fam_consistency_132_2m1", "fam_132_2m1", 3, "thm5"),
    ("fam_consistency_132_m1head", "fam_132_m1head", 3, "thm6"),
];

fn family_consistency(fam: &str, m: i64, thm: &str, n: usize) -> Result<Option<Witness>> {
    let expected = at_y1(&solve_catalog(thm, &Params::none(), n)?.into_main())?;
    let actual = solve_catalog(fam, &Params::m(m), n)?.into_main();
    Ok(Witness::between(&expected, &actual))
}

fn cross_a2m1_m1m1(n: usize) -> Result<Option<Witness>> {
    let expected = solve_catalog("fam_132_m1m1", &Params::m(4), n)?.into_main();
    let actual = solve_catalog("fam_132_a2m1", &Params::ma(4, 3), n)?.into_main();
    Ok(Witness::between(&expected, &actual))
}

/// Recursion instances whose slice sums must be Catalan numbers.
pub fn hard_recursions() -> Vec<(&'static str, Params)> {
    let mut out: Vec<(&'static str, Params)> = ["thm1", "thm2", "thm4", "thm5", "thm6", "thm8"]
        .into_iter()
        .map(|id| (id, Params::none()))
        .collect();
    out.extend((2..=5).map(|m| ("fam_123_1m2", Params::m(m))));
    for fam in [
        "fam_123_2m31",
        "fam_132_1m",
        "fam_132_m1head",
        "fam_132_2m1",
    ] {
        out.extend((3..=5).map(|m| (fam, Params::m(m))));
    }
    out
}

fn all_ones() -> Vec<(VarId, i64)> {
    let mut v = vec![(VarId::Y, 1), (VarId::X, 1)];
    v.extend((1..=4).map(|i| (VarId::tracked(i).expect("at most four"), 1)));
    v
}

fn row_sums(n: usize) -> Result<Option<Witness>> {
    for (id, params) in hard_recursions() {
        let solved = solve_catalog(id, &params, n)?.into_main();
        let counts = solved
            .substitute_ints(&all_ones())?
            .univariate()
            .ok_or_else(|| invalid("fully substituted series is univariate"))?;
        for (k, c) in counts.iter().enumerate() {
            if *c != catalan(k) {
                return Ok(Some(Witness::new(k, "sum", catalan(k), c)));
            }
        }
    }
    Ok(None)
}

// ------------------------------------------------------------- closed forms

/// Compares row `n` of a closed form (k = 1..=n, then the k = 0 complement)
/// against `[t^n x^k]` of `truth`.
fn compare_rows(
    cf: ClosedForm,
    m: i64,
    truth: &TruncatedSeries,
    n: usize,
) -> Result<Option<Witness>> {
    for row_n in 1..=n {
        let row = coefficient_row(cf, row_n as i64, m)?;
        let order = (1..=row_n).chain(std::iter::once(0));
        for k in order {
            let mono = Monomial::one().with(VarId::X, k as u8);
            let want = BigRational::from_integer(truth.coeff(row_n, &mono));
            if row[k] != want {
                return Ok(Some(Witness::new(
                    row_n,
                    x_power(k),
                    format_rational(&want),
                    format_rational(&row[k]),
                )));
            }
        }
    }
    Ok(None)
}

fn closed_form(id: &str, params: &Params) -> Result<(ClosedForm, i64)> {
    match id.strip_prefix("cf_") {
        Some(alias) if ALIASES.iter().any(|(a, _)| *a == alias) => resolve(alias, params),
        _ => resolve(id, params),
    }
}

fn cf(id: &str, params: &Params, n: usize) -> Result<Outcome> {
    let (form, m) = closed_form(id, params)?;
    let stat = statistic(form.family(), &Params::m(m))?;
    let gamma = &stat.tracked[0][..1];
    let oracle = oracle_series(&stat.avoid, gamma, &[VarId::X], false, n)?;
    Ok(Outcome {
        trust: form.trust(),
        witness: compare_rows(form, m, &oracle, n)?,
    })
}

fn lagrange(params: &Params, n: usize) -> Result<Option<Witness>> {
    let (form, m) = resolve("cf_123_1m2", params)?;
    let solved = solve_catalog(form.family(), &Params::m(m), n)?.into_main();
    compare_rows(form, m, &solved, n)
}

// ---------------------------------------------------------- identities, sequences

fn ident(id: &str, params: &Params, n: usize) -> Result<Outcome> {
    let trust = identity_trust(id)?;
    let verdict = printed_identity_check(id, params, n)?;
    Ok(Outcome {
        trust,
        witness: verdict.witness,
    })
}

/// `(check id, system, m, reference sequence, trust)`; series taken at `y = 1, x = 0`.
pub const SEQUENCES: [(&str, &str, Option<i64>, &str, Trust); 7] = [
    ("seq_motzkin_thm1", "thm1", None, "motzkin", Trust::HardPass),
    ("seq_motzkin_thm4", "thm4", None, "motzkin", Trust::HardPass),
    (
        "seq_motzkin_fam_123_1m2",
        "fam_123_1m2",
        Some(3),
        "motzkin",
        Trust::HardPass,
    ),
    (
        "seq_123_231_x0",
        "thm2",
        None,
        "seq_123_231_x0",
        Trust::HardPass,
    ),
    (
        "seq_132_213_x0",
        "thm6",
        None,
        "seq_132_213_x0",
        Trust::HardPass,
    ),
    (
        "seq_132_231_x0",
        "thm5",
        None,
        "seq_132_231_x0",
        Trust::HardPass,
    ),
    (
        "seq_123_321_x0",
        "thm3",
        None,
        "seq_123_321_x0",
        Trust::ReportOnly,
    ),
];

fn sequence(system: &str, m: Option<i64>, name: &str, n: usize) -> Result<Option<Witness>> {
    let upto = stored_len(name).map_or(n, |len| n.min(len - 1));
    let params = Params { m, a: None };
    let solved = solve_catalog(system, &params, upto)?.into_main();
    let terms = solved
        .substitute_ints(&[(VarId::Y, 1), (VarId::X, 0)])?
        .univariate()
        .ok_or_else(|| invalid("specialized series is univariate"))?;
    for (k, got) in terms.iter().enumerate() {
        let want = reference_sequence(name, k)?;
        if *got != want {
            return Ok(Some(Witness::new(k, "1", want, got)));
        }
    }
    Ok(None)
}

// ----------------------------------------------------------------- dispatch

fn no_params(id: &str, params: &Params) -> Result<()> {
    Domain::Fixed.check(id, params)
}

/// Evaluates check `id` with parameters over `n = 0..=n` (or `1..=n`).
pub fn evaluate(id: &str, params: &Params, n: usize) -> Result<Outcome> {
    if let Some(sys) = id.strip_prefix("rec_") {
        return rec(sys, params, n);
    }
    if let Some(ident_id) = id.strip_prefix("ident_") {
        return ident(ident_id, params, n);
    }
    if id == "lagrange_123_1m2" {
        return Ok(hard(lagrange(params, n)?));
    }
    if id.starts_with("cf_") {
        return cf(id, params, n);
    }
    if let Some((_, sys, m, name, trust)) = SEQUENCES.iter().find(|s| s.0 == id) {
        no_params(id, params)?;
        return Ok(Outcome {
            trust: *trust,
            witness: sequence(sys, *m, name, n)?,
        });
    }
    if let Some((_, keep, target)) = SPECIALIZATIONS.iter().find(|s| s.0 == id) {
        no_params(id, params)?;
        return Ok(hard(specialization(*keep, target, n)?));
    }
    if let Some((_, fam, m, thm)) = FAMILY_CONSISTENCY.iter().find(|s| s.0 == id) {
        no_params(id, params)?;
        return Ok(hard(family_consistency(fam, *m, thm, n)?));
    }
    no_params(id, params)?;
    let witness = match id {
        "sym_rc" => sym_classwise(Symmetry::ReverseComplement, n)?,
        "sym_r" => sym_classwise(Symmetry::Reverse, n)?,
        "sym_c" => sym_classwise(Symmetry::Complement, n)?,
        "sym_123_rc" => sym_123_rc(n),
        "sym_phi" => sym_phi(n),
        "sym_1321" => sym_1321(n)?,
        "oracle_consistency" => oracle_consistency(n)?,
        "catalan_counts" => catalan_counts(n)?,
        "bij_phi" => round_trip(n, "132", phi_map, phi_inverse)?,
        "bij_psi" => round_trip(n, "123", psi_map, psi_inverse)?,
        "bij_phin" => bij_phin(n)?,
        "transport_psi" => transport_psi(n)?,
        "transport_phi" => transport_phi(n)?,
        "transport_general" => transport_general(n)?,
        "cross_a2m1_m1m1" => cross_a2m1_m1m1(n)?,
        "row_sums" => row_sums(n)?,
        other => return Err(invalid(format!("unknown check `{other}`"))),
    };
    Ok(hard(witness))
}
