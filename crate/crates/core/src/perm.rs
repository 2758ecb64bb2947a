//! Permutations in one-line notation, classical and consecutive patterns.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::limits::Limits;

/// A permutation of `1..=n` stored in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    entries: Vec<u8>,
}

impl Permutation {
    /// Validates that `entries` is a rearrangement of `1..=n`.
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(invalid(format!(
                    "{entries:?} is not a permutation of 1..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u8>) -> Self {
        debug_assert!(Permutation::new(entries.clone()).is_ok());
        Permutation { entries }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u8).collect(),
        }
    }

    pub fn empty() -> Self {
        Permutation::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> u8 {
        self.entries[i - 1]
    }

    pub fn descent_stats(&self) -> DescentStats {
        descent_stats(self)
    }

    pub fn des(&self) -> usize {
        self.entries.windows(2).filter(|w| w[0] > w[1]).count()
    }

    pub fn contains(&self, pat: &Pattern) -> bool {
        match pat.kind {
            PatternKind::Classical => contains_classical(self, pat),
            PatternKind::Consecutive => consecutive_count(self, pat) > 0,
        }
    }

    pub fn avoids(&self, pat: &Pattern) -> bool {
        !self.contains(pat)
    }

    pub fn transform(&self, kind: Symmetry) -> Permutation {
        symmetry_transform(self, kind)
    }

    pub fn reverse(&self) -> Permutation {
        self.transform(Symmetry::Reverse)
    }

    pub fn complement(&self) -> Permutation {
        self.transform(Symmetry::Complement)
    }

    pub fn reverse_complement(&self) -> Permutation {
        self.transform(Symmetry::ReverseComplement)
    }

    /// Position (1-based) of the value `v`.
    pub fn position_of(&self, v: u8) -> Option<usize> {
        self.entries.iter().position(|&e| e == v).map(|i| i + 1)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for v in &self.entries {
                write!(f, "{v}")?;
            }
        } else {
            for (i, v) in self.entries.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts undelimited digits (n ≤ 9) or comma-separated entries.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::empty());
        }
        let values: Vec<u64> = if s.contains(',') {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u64>()
                        .map_err(|_| invalid(format!("bad permutation entry `{part}`")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(u64::from)
                        .ok_or_else(|| invalid(format!("bad permutation character `{c}`")))
                })
                .collect::<Result<_>>()?
        };
        if values.len() > u8::MAX as usize || values.iter().any(|&v| v > u8::MAX as u64) {
            return Err(invalid("permutation too long"));
        }
        Permutation::new(values.into_iter().map(|v| v as u8).collect())
    }
}

/// Replaces the i-th smallest letter of `word` by `i`.
pub fn reduce(word: &[u64]) -> Result<Permutation> {
    if word.len() > u8::MAX as usize {
        return Err(invalid("word too long to reduce"));
    }
    let mut sorted: Vec<u64> = word.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(invalid(format!("word {word:?} has repeated entries")));
    }
    let entries = word
        .iter()
        .map(|v| (sorted.binary_search(v).unwrap() + 1) as u8)
        .collect();
    Ok(Permutation { entries })
}

fn reduce_u8(word: &[u8]) -> Permutation {
    let mut idx: Vec<usize> = (0..word.len()).collect();
    idx.sort_unstable_by_key(|&i| word[i]);
    let mut entries = vec![0u8; word.len()];
    for (rank, &i) in idx.iter().enumerate() {
        entries[i] = rank as u8 + 1;
    }
    Permutation { entries }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentStats {
    /// 1-based positions `i` with `σ_i > σ_{i+1}`.
    pub descent_set: BTreeSet<usize>,
    pub des: usize,
    pub asc: usize,
}

pub fn descent_stats(p: &Permutation) -> DescentStats {
    let descent_set: BTreeSet<usize> = p
        .entries
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .collect();
    let des = descent_set.len();
    let asc = if p.is_empty() { 0 } else { p.len() - 1 - des };
    DescentStats {
        descent_set,
        des,
        asc,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternKind {
    Classical,
    Consecutive,
}

/// A pattern body together with how it is matched.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    body: Permutation,
    kind: PatternKind,
}

impl Pattern {
    pub fn new(body: Permutation, kind: PatternKind) -> Result<Self> {
        if body.is_empty() {
            return Err(invalid("pattern must have length at least 1"));
        }
        Ok(Pattern { body, kind })
    }

    pub fn classical(s: &str) -> Result<Self> {
        Pattern::new(s.parse()?, PatternKind::Classical)
    }

    pub fn consecutive(s: &str) -> Result<Self> {
        Pattern::new(s.parse()?, PatternKind::Consecutive)
    }

    pub fn body(&self) -> &Permutation {
        &self.body
    }

    pub fn kind(&self) -> PatternKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.body.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Same body, matched the other way.
    pub fn with_kind(&self, kind: PatternKind) -> Pattern {
        Pattern {
            body: self.body.clone(),
            kind,
        }
    }

    pub fn transform(&self, kind: Symmetry) -> Pattern {
        Pattern {
            body: self.body.transform(kind),
            kind: self.kind,
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.body.fmt(f)
    }
}

/// Whether some subsequence of `p` is order-isomorphic to `pat.body`.
pub fn contains_classical(p: &Permutation, pat: &Pattern) -> bool {
    let w = p.entries();
    match pat.body.entries() {
        [1] => !w.is_empty(),
        [1, 2, 3] => has_123(w),
        [3, 2, 1] => has_321(w),
        [1, 3, 2] => has_132(w.iter().copied()),
        [2, 3, 1] => has_132(w.iter().rev().copied()),
        [3, 1, 2] => {
            let n = w.len() as u8 + 1;
            has_132(w.iter().map(|&v| n - v))
        }
        [2, 1, 3] => {
            let n = w.len() as u8 + 1;
            has_132(w.iter().rev().map(|&v| n - v))
        }
        body => contains_word(w, body),
    }
}

fn has_123(w: &[u8]) -> bool {
    let n = w.len();
    if n < 3 {
        return false;
    }
    let mut suffix_max = vec![0u8; n];
    suffix_max[n - 1] = w[n - 1];
    for i in (0..n - 1).rev() {
        suffix_max[i] = suffix_max[i + 1].max(w[i]);
    }
    let mut prefix_min = w[0];
    for j in 1..n - 1 {
        if prefix_min < w[j] && w[j] < suffix_max[j + 1] {
            return true;
        }
        prefix_min = prefix_min.min(w[j]);
    }
    false
}

fn has_321(w: &[u8]) -> bool {
    let n = w.len() as u8 + 1;
    let c: Vec<u8> = w.iter().map(|&v| n - v).collect();
    has_123(&c)
}

/// Right-to-left stack scan for `i < j < k` with `w_i < w_k < w_j`.
fn has_132(w: impl DoubleEndedIterator<Item = u8>) -> bool {
    let mut stack: Vec<u8> = Vec::new();
    let mut third: u8 = 0;
    for v in w.rev() {
        if third != 0 && v < third {
            return true;
        }
        while let Some(&top) = stack.last() {
            if top < v {
                third = third.max(top);
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(v);
    }
    false
}

/// Generic subsequence search for an order-isomorphic copy of `body` in `w`.
fn contains_word(w: &[u8], body: &[u8]) -> bool {
    let mut chosen = Vec::with_capacity(body.len());
    search(w, body, 0, &mut chosen, false)
}

/// Whether `w` contains `body` with the final letter of `body` placed on the
/// final letter of `w`.
fn contains_ending_at_last(w: &[u8], body: &[u8]) -> bool {
    if body.len() > w.len() {
        return false;
    }
    if let [a, b, c] = *body {
        return ends_with_triple(w, a, b, c);
    }
    let mut chosen = Vec::with_capacity(body.len());
    search(w, body, 0, &mut chosen, true)
}

/// Length-3 case: some `i < j` before the last letter `v` with `w_i, w_j, v`
/// order-isomorphic to `abc`, found with running extrema of each side of `v`.
fn ends_with_triple(w: &[u8], a: u8, b: u8, c: u8) -> bool {
    let (&v, head) = w.split_last().expect("non-empty");
    let (lo_i, lo_j) = (a < c, b < c);
    let rising = a < b;
    // Extremum seen so far among letters on the side of `v` that `a` needs.
    let mut best: Option<u8> = None;
    for &x in head {
        let below = x < v;
        if below == lo_j {
            if let Some(e) = best {
                if (e < x) == rising {
                    return true;
                }
            }
        }
        if below == lo_i {
            best = Some(match best {
                None => x,
                Some(e) if rising => e.min(x),
                Some(e) => e.max(x),
            });
        }
    }
    false
}

fn search(w: &[u8], body: &[u8], start: usize, chosen: &mut Vec<u8>, anchor_last: bool) -> bool {
    let k = chosen.len();
    if k == body.len() {
        return true;
    }
    let remaining = body.len() - k;
    if w.len() < start + remaining {
        return false;
    }
    let range: Box<dyn Iterator<Item = usize>> = if anchor_last && remaining == 1 {
        Box::new(std::iter::once(w.len() - 1).filter(move |&i| i >= start))
    } else {
        Box::new(start..w.len() - remaining + 1)
    };
    for i in range {
        let v = w[i];
        let consistent = chosen
            .iter()
            .zip(body)
            .all(|(&c, &b)| (c < v) == (b < body[k]));
        if consistent {
            chosen.push(v);
            if search(w, body, i + 1, chosen, anchor_last) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Starting positions (1-based) of consecutive occurrences of `pat`.
pub fn consecutive_matches(p: &Permutation, pat: &Pattern) -> Vec<usize> {
    let order = sorted_positions(pat.body.entries());
    p.entries
        .windows(pat.len())
        .enumerate()
        .filter(|(_, win)| window_matches(win, &order))
        .map(|(i, _)| i + 1)
        .collect()
}

/// Number of consecutive occurrences, overlaps included.
pub fn consecutive_count(p: &Permutation, pat: &Pattern) -> usize {
    let order = sorted_positions(pat.body.entries());
    p.entries
        .windows(pat.len())
        .filter(|win| window_matches(win, &order))
        .count()
}

/// Precomputed matcher for repeated consecutive counting.
#[derive(Debug, Clone)]
pub struct WindowMatcher {
    order: Vec<usize>,
}

impl WindowMatcher {
    pub fn new(pat: &Pattern) -> Self {
        WindowMatcher {
            order: sorted_positions(pat.body.entries()),
        }
    }

    pub fn count(&self, w: &[u8]) -> usize {
        if self.order.len() > w.len() {
            return 0;
        }
        w.windows(self.order.len())
            .filter(|win| window_matches(win, &self.order))
            .count()
    }
}

/// Positions of the pattern sorted by value: `order[r]` holds the index of value `r+1`.
fn sorted_positions(body: &[u8]) -> Vec<usize> {
    let mut order = vec![0usize; body.len()];
    for (i, &v) in body.iter().enumerate() {
        order[v as usize - 1] = i;
    }
    order
}

fn window_matches(win: &[u8], order: &[usize]) -> bool {
    order.windows(2).all(|o| win[o[0]] < win[o[1]])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Reverse,
    Complement,
    ReverseComplement,
}

pub fn symmetry_transform(p: &Permutation, kind: Symmetry) -> Permutation {
    let n = p.len() as u8 + 1;
    let entries = match kind {
        Symmetry::Reverse => p.entries.iter().rev().copied().collect(),
        Symmetry::Complement => p.entries.iter().map(|&v| n - v).collect(),
        Symmetry::ReverseComplement => p.entries.iter().rev().map(|&v| n - v).collect(),
    };
    Permutation { entries }
}

/// Lazily enumerates `S_n(λ)` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Avoiders {
    n: usize,
    body: Vec<u8>,
    prefix: Vec<u8>,
    used: u64,
    next_candidate: Vec<u8>,
    done: bool,
}

/// Avoiders of a classical pattern, checked against the default (environment-aware) caps.
pub fn enumerate_avoiders(n: usize, forbidden: &Pattern) -> Result<Avoiders> {
    enumerate_avoiders_with(n, forbidden, &Limits::from_env())
}

pub fn enumerate_avoiders_with(n: usize, forbidden: &Pattern, limits: &Limits) -> Result<Avoiders> {
    limits.check_enumeration(n)?;
    if forbidden.kind != PatternKind::Classical {
        return Err(invalid("avoider enumeration needs a classical pattern"));
    }
    Ok(Avoiders::unchecked(n, forbidden))
}

impl Avoiders {
    pub(crate) fn unchecked(n: usize, forbidden: &Pattern) -> Self {
        Avoiders {
            n,
            body: forbidden.body.entries().to_vec(),
            prefix: Vec::with_capacity(n),
            used: 0,
            next_candidate: vec![1; n + 1],
            done: false,
        }
    }

    fn pop(&mut self) {
        if let Some(v) = self.prefix.pop() {
            self.used &= !(1u64 << v);
        }
    }
}

impl Iterator for Avoiders {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(Permutation::empty());
        }
        loop {
            let depth = self.prefix.len();
            if depth == self.n {
                let out = Permutation {
                    entries: self.prefix.clone(),
                };
                self.pop();
                return Some(out);
            }
            let mut v = self.next_candidate[depth];
            let mut accepted = false;
            while v as usize <= self.n {
                if self.used & (1u64 << v) == 0 {
                    self.prefix.push(v);
                    let bad = contains_ending_at_last(&self.prefix, &self.body);
                    self.prefix.pop();
                    if !bad {
                        accepted = true;
                        break;
                    }
                }
                v += 1;
            }
            if !accepted {
                if depth == 0 {
                    self.done = true;
                    return None;
                }
                self.pop();
                continue;
            }
            self.next_candidate[depth] = v + 1;
            self.prefix.push(v);
            self.used |= 1u64 << v;
            self.next_candidate[depth + 1] = 1;
        }
    }
}

/// All permutations of length `n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation {
            entries: cur.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// The map φₙ from 312-avoiders to 213-avoiders that keeps descent positions.
pub fn phi_n(p: &Permutation) -> Result<Permutation> {
    let p312 = Pattern::classical("312").expect("valid pattern");
    if contains_classical(p, &p312) {
        return Err(invalid(format!("{p} contains the classical pattern 312")));
    }
    Ok(Permutation {
        entries: phi_n_rec(p.entries()),
    })
}

fn phi_n_rec(w: &[u8]) -> Vec<u8> {
    let n = w.len();
    if n <= 1 {
        return w.to_vec();
    }
    let r = w.iter().position(|&v| v == 1).unwrap() + 1;
    let n8 = n as u8;
    let r8 = r as u8;
    let left: Vec<u8> = w[..r - 1].iter().map(|&v| v - 1).collect();
    let right: Vec<u8> = w[r..].iter().map(|&v| v - r8).collect();
    let mut out = Vec::with_capacity(n);
    out.extend(phi_n_rec(&left).into_iter().map(|v| v + n8 - r8 + 1));
    out.push(1);
    out.extend(phi_n_rec(&right).into_iter().map(|v| v + 1));
    out
}

/// Reduces a window of a permutation; used by tests and the oracle.
pub fn reduce_window(w: &[u8]) -> Permutation {
    reduce_u8(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&[5, 1]).unwrap(), p("21"));
        assert_eq!(reduce(&[2, 6, 3, 8]).unwrap(), p("1324"));
        assert_eq!(reduce(&[1, 2, 3]).unwrap(), p("123"));
        assert!(reduce(&[3, 3]).is_err());
    }

    #[test]
    fn descents() {
        let s = descent_stats(&p("15324"));
        assert_eq!(s.descent_set, BTreeSet::from([2, 3]));
        assert_eq!(s.des, 2);
        assert_eq!(s.asc, 2);
        assert_eq!(descent_stats(&p("12345")).des, 0);
        assert_eq!(descent_stats(&p("321")).des, 2);
        let e = descent_stats(&Permutation::empty());
        assert_eq!((e.des, e.asc), (0, 0));
    }

    #[test]
    fn classical_vs_consecutive() {
        let pat = Pattern::classical("132").unwrap();
        assert!(contains_classical(&p("23541"), &pat));
        let c = pat.with_kind(PatternKind::Consecutive);
        assert_eq!(consecutive_matches(&p("23541"), &c), vec![2]);
        assert_eq!(consecutive_count(&p("24531"), &c), 0);
        assert!(contains_classical(&p("24531"), &pat));
        assert!(!contains_classical(&Permutation::empty(), &pat));
        assert_eq!(consecutive_matches(&p("869743251"), &c), vec![2]);
        let inc = Pattern::consecutive("123").unwrap();
        assert_eq!(consecutive_matches(&p("1234"), &inc), vec![1, 2]);
    }

    #[test]
    fn fast_paths_agree_with_generic_search() {
        for body in ["123", "132", "213", "231", "312", "321"] {
            let pat = Pattern::classical(body).unwrap();
            for n in 0..=7 {
                for q in all_permutations(n) {
                    assert_eq!(
                        contains_classical(&q, &pat),
                        contains_word(q.entries(), pat.body().entries()),
                        "{q} vs {body}"
                    );
                }
            }
        }
    }

    #[test]
    fn symmetries() {
        let s = p("15324");
        assert_eq!(s.reverse(), p("42351"));
        assert_eq!(s.complement(), p("51342"));
        assert_eq!(s.reverse_complement(), p("24315"));
    }

    #[test]
    fn avoiders_small() {
        let pat = Pattern::classical("123").unwrap();
        let got: Vec<String> = enumerate_avoiders_with(3, &pat, &Limits::default())
            .unwrap()
            .map(|q| q.to_string())
            .collect();
        assert_eq!(got, ["132", "213", "231", "312", "321"]);
        assert_eq!(Avoiders::unchecked(4, &pat).count(), 14);
        let empty: Vec<_> = Avoiders::unchecked(0, &pat).collect();
        assert_eq!(empty, vec![Permutation::empty()]);
        let tight = Limits::default().lowered(Some(3));
        assert!(matches!(
            enumerate_avoiders_with(4, &pat, &tight),
            Err(Error::ResourceLimit {
                requested: 4,
                cap: 3
            })
        ));
    }

    #[test]
    fn avoiders_match_filtered_permutations() {
        for body in ["123", "132", "2143", "3412"] {
            let pat = Pattern::classical(body).unwrap();
            for n in 0..=7 {
                let want: Vec<_> = all_permutations(n)
                    .into_iter()
                    .filter(|q| !contains_word(q.entries(), pat.body().entries()))
                    .collect();
                let got: Vec<_> = Avoiders::unchecked(n, &pat).collect();
                assert_eq!(got, want, "{body} n={n}");
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_n(&p("32415")).unwrap(), p("53412"));
        assert_eq!(phi_n(&p("1")).unwrap(), p("1"));
        assert_eq!(phi_n(&p("21")).unwrap(), p("21"));
        assert!(phi_n(&p("312")).is_err());
    }

    #[test]
    fn rendering_round_trip() {
        let long: Permutation = "10,9,8,7,6,5,4,3,2,1".parse().unwrap();
        assert_eq!(long.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert_eq!(p("869743251").to_string(), "869743251");
        assert!("12a".parse::<Permutation>().is_err());
        assert!("113".parse::<Permutation>().is_err());
    }
}
