//! Dyck paths over the steps D and R, their statistics, and the bijections
//! Φ (on 132-avoiders) and Ψ (on 123-avoiders).

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::limits::Limits;
use crate::perm::{contains_classical, Pattern, PatternKind, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    D,
    R,
}

impl Step {
    fn from_char(c: char) -> Option<Step> {
        match c {
            'D' => Some(Step::D),
            'R' => Some(Step::R),
            _ => None,
        }
    }

    fn as_char(self) -> char {
        match self {
            Step::D => 'D',
            Step::R => 'R',
        }
    }
}

fn parse_steps(text: &str) -> Result<Vec<Step>> {
    text.chars()
        .enumerate()
        .map(|(i, c)| {
            Step::from_char(c).ok_or_else(|| Error::InvalidPath {
                index: i + 1,
                reason: format!("unexpected character `{c}`"),
            })
        })
        .collect()
}

fn write_steps(f: &mut fmt::Formatter<'_>, steps: &[Step]) -> fmt::Result {
    for s in steps {
        write!(f, "{}", s.as_char())?;
    }
    Ok(())
}

/// A validated Dyck path: equal numbers of D and R, and no prefix with more R than D.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    /// Validates a step word. Errors carry the 1-based index of the first bad step.
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height: i64 = 0;
        for (i, s) in steps.iter().enumerate() {
            height += if *s == Step::D { 1 } else { -1 };
            if height < 0 {
                return Err(Error::InvalidPath {
                    index: i + 1,
                    reason: "more R than D steps in this prefix".into(),
                });
            }
        }
        if height != 0 {
            return Err(Error::InvalidPath {
                index: steps.len(),
                reason: format!("{height} unmatched D steps at the end"),
            });
        }
        Ok(DyckPath { steps })
    }

    pub fn empty() -> Self {
        DyckPath::default()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of R steps.
    pub fn size(&self) -> usize {
        self.steps.len() / 2
    }

    pub fn first_return(&self) -> Result<usize> {
        first_return(self)
    }

    pub fn horizontal_segments(&self) -> Vec<usize> {
        horizontal_segments(self)
    }

    pub fn peaks(&self) -> usize {
        peaks(self)
    }

    pub fn count(&self, pat: &PathPattern) -> usize {
        path_pattern_count(self, pat, false)
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_steps(f, &self.steps)
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_path(s)
    }
}

pub fn parse_path(text: &str) -> Result<DyckPath> {
    DyckPath::new(parse_steps(text.trim())?)
}

/// A non-empty word over {D, R}, matched as a contiguous factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathPattern {
    steps: Vec<Step>,
}

impl PathPattern {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        if steps.is_empty() {
            return Err(invalid("path pattern must be non-empty"));
        }
        Ok(PathPattern { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }
}

impl fmt::Display for PathPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_steps(f, &self.steps)
    }
}

impl FromStr for PathPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PathPattern::new(parse_steps(s.trim())?)
    }
}

pub fn first_return(p: &DyckPath) -> Result<usize> {
    if p.steps.is_empty() {
        return Err(invalid("the empty path has no first return"));
    }
    let (mut d, mut r) = (0usize, 0usize);
    for s in &p.steps {
        match s {
            Step::D => d += 1,
            Step::R => r += 1,
        }
        if d == r {
            return Ok(r);
        }
    }
    unreachable!("a validated path returns to the diagonal")
}

/// Lengths of the maximal R-runs, in step order.
pub fn horizontal_segments(p: &DyckPath) -> Vec<usize> {
    p.steps
        .split(|s| *s == Step::D)
        .filter(|run| !run.is_empty())
        .map(|run| run.len())
        .collect()
}

pub fn peaks(p: &DyckPath) -> usize {
    p.steps
        .windows(2)
        .filter(|w| w[0] == Step::D && w[1] == Step::R)
        .count()
}

/// Overlapping factor occurrences of `pat`; `extended` appends one D first.
pub fn path_pattern_count(p: &DyckPath, pat: &PathPattern, extended: bool) -> usize {
    count_factor(&p.steps, &pat.steps, extended)
}

pub(crate) fn count_factor(word: &[Step], pat: &[Step], extended: bool) -> usize {
    let k = pat.len();
    let len = word.len() + usize::from(extended);
    if k > len {
        return 0;
    }
    let at = |i: usize| if i < word.len() { word[i] } else { Step::D };
    (0..=len - k)
        .filter(|&start| (0..k).all(|j| at(start + j) == pat[j]))
        .count()
}

/// Boundary of the shading: before column `i` emit one D for every drop of the
/// running minimum, then an R.
fn shading_path(p: &Permutation) -> DyckPath {
    let n = p.len();
    let mut steps = Vec::with_capacity(2 * n);
    let mut min = n as u8 + 1;
    for &v in p.entries() {
        if v < min {
            steps.extend(std::iter::repeat_n(Step::D, (min - v) as usize));
            min = v;
        }
        steps.push(Step::R);
    }
    DyckPath { steps }
}

/// Rebuilds a permutation from peaks; `fill` picks the value for a non-peak column.
fn unshade(d: &DyckPath, fill: impl Fn(&[bool], u8) -> u8) -> Permutation {
    let n = d.size();
    let mut used = vec![false; n + 2];
    let mut out = Vec::with_capacity(n);
    let mut depth = 0usize;
    let mut min = n as u8 + 1;
    let mut prev = None;
    for &s in &d.steps {
        match s {
            Step::D => depth += 1,
            Step::R => {
                let v = if prev == Some(Step::D) {
                    min = (n + 1 - depth) as u8;
                    min
                } else {
                    fill(&used, min)
                };
                used[v as usize] = true;
                out.push(v);
            }
        }
        prev = Some(s);
    }
    Permutation::from_vec_unchecked(out)
}

fn require_avoids(p: &Permutation, body: &str) -> Result<()> {
    let pat = Pattern::classical(body).expect("valid pattern");
    if contains_classical(p, &pat) {
        return Err(invalid(format!(
            "{p} contains the classical pattern {body}"
        )));
    }
    Ok(())
}

/// Φ: S_n(132) → Dyck paths.
pub fn phi_map(p: &Permutation) -> Result<DyckPath> {
    require_avoids(p, "132")?;
    Ok(shading_path(p))
}

/// Inverse of Φ: non-peak columns take the least unused value above the running minimum.
pub fn phi_inverse(d: &DyckPath) -> Permutation {
    unshade(d, |used, min| {
        (min as usize + 1..used.len())
            .find(|&v| !used[v])
            .expect("a Dyck path leaves a free value above the minimum") as u8
    })
}

/// Ψ: S_n(123) → Dyck paths.
pub fn psi_map(p: &Permutation) -> Result<DyckPath> {
    require_avoids(p, "123")?;
    Ok(shading_path(p))
}

/// Inverse of Ψ: non-peak columns take the largest unused value.
pub fn psi_inverse(d: &DyckPath) -> Permutation {
    unshade(d, |used, min| {
        let v = (1..used.len() - 1)
            .rev()
            .find(|&v| !used[v])
            .expect("a Dyck path leaves a free value");
        debug_assert!(v as u8 > min);
        v as u8
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathVariant {
    /// Φ′: Φ(γ) without its leading D-run.
    PhiPrime,
    /// Φ″: Φ′ without its final R.
    PhiDoublePrime,
}

/// The path pattern attached to a 132-avoiding consecutive pattern.
///
/// Both variants are defined for every 132-avoiding body; which one governs
/// the match count is decided by [`admissible_variant`].
pub fn pattern_path(gamma: &Pattern, variant: PathVariant) -> Result<PathPattern> {
    if gamma.kind() != PatternKind::Consecutive {
        return Err(invalid("pattern_path expects a consecutive pattern"));
    }
    let body = gamma.body();
    require_avoids(body, "132")?;
    let full = shading_path(body);
    let lead = body.len() + 1 - body.at(1) as usize;
    let mut steps = full.steps[lead..].to_vec();
    if variant == PathVariant::PhiDoublePrime {
        debug_assert_eq!(steps.last(), Some(&Step::R));
        steps.pop();
    }
    PathPattern::new(steps)
}

/// Case (a) when γ ends with its maximum, case (b) when it ends with `m 1`.
pub fn admissible_variant(gamma: &Pattern) -> Option<PathVariant> {
    let body = gamma.body();
    let m = body.len();
    if require_avoids(body, "132").is_err() {
        return None;
    }
    if body.at(m) as usize == m {
        Some(PathVariant::PhiPrime)
    } else if m >= 2 && body.at(m - 1) as usize == m && body.at(m) == 1 {
        Some(PathVariant::PhiDoublePrime)
    } else {
        None
    }
}

/// Lazily enumerates all Dyck paths of size `n`, lexicographic with D < R.
#[derive(Debug, Clone)]
pub struct DyckPaths {
    current: Option<Vec<Step>>,
}

pub fn enumerate_paths(n: usize) -> Result<DyckPaths> {
    enumerate_paths_with(n, &Limits::from_env())
}

pub fn enumerate_paths_with(n: usize, limits: &Limits) -> Result<DyckPaths> {
    limits.check_enumeration(n)?;
    let mut first = vec![Step::D; n];
    first.extend(std::iter::repeat_n(Step::R, n));
    Ok(DyckPaths {
        current: Some(first),
    })
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let cur = self.current.take()?;
        let out = DyckPath { steps: cur.clone() };
        self.current = successor(cur);
        Some(out)
    }
}

/// Next word in lexicographic order: flip the rightmost flippable D to R and
/// complete with all remaining D's followed by all remaining R's.
fn successor(mut w: Vec<Step>) -> Option<Vec<Step>> {
    let n = w.len() / 2;
    let mut d_before: Vec<usize> = Vec::with_capacity(w.len() + 1);
    let mut d = 0;
    for s in &w {
        d_before.push(d);
        if *s == Step::D {
            d += 1;
        }
    }
    for i in (0..w.len()).rev() {
        if w[i] != Step::D {
            continue;
        }
        let d = d_before[i];
        let r = i - d;
        if d > r {
            w[i] = Step::R;
            let rest_d = n - d;
            let rest_r = n - r - 1;
            w.truncate(i + 1);
            w.extend(std::iter::repeat_n(Step::D, rest_d));
            w.extend(std::iter::repeat_n(Step::R, rest_r));
            return Some(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Avoiders;

    const SAMPLE_PATH: &str = "DDRDDRRRDDRDRDRRDR";

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn parse_errors_name_first_bad_step() {
        assert_eq!(parse_path("DR").unwrap().size(), 1);
        assert_eq!(parse_path(SAMPLE_PATH).unwrap().size(), 9);
        assert!(matches!(
            parse_path("RD"),
            Err(Error::InvalidPath { index: 1, .. })
        ));
        assert!(matches!(
            parse_path("DDRRR"),
            Err(Error::InvalidPath { index: 5, .. })
        ));
        assert!(matches!(
            parse_path("DXR"),
            Err(Error::InvalidPath { index: 2, .. })
        ));
        assert!(parse_path("DDR").is_err());
    }

    #[test]
    fn statistics() {
        let p = parse_path(SAMPLE_PATH).unwrap();
        assert_eq!(p.first_return().unwrap(), 4);
        assert_eq!(p.horizontal_segments(), vec![1, 3, 1, 1, 2, 1]);
        assert_eq!(p.peaks(), 6);
        assert_eq!(p.count(&"DRRR".parse().unwrap()), 1);
        assert_eq!(p.count(&"DRRD".parse().unwrap()), 1);
        let small = parse_path("DDRR").unwrap();
        assert_eq!(small.first_return().unwrap(), 2);
        assert_eq!(
            path_pattern_count(&small, &"DRRD".parse().unwrap(), true),
            1
        );
        assert_eq!(
            path_pattern_count(&small, &"DRRD".parse().unwrap(), false),
            0
        );
        assert!(DyckPath::empty().first_return().is_err());
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(phi_map(&perm("867943251")).unwrap().to_string(), SAMPLE_PATH);
        assert_eq!(phi_map(&perm("1")).unwrap().to_string(), "DR");
        assert_eq!(phi_map(&perm("42351")).unwrap().to_string(), "DDRDDRRRDR");
        assert_eq!(psi_map(&perm("869743251")).unwrap().to_string(), SAMPLE_PATH);
        let d = parse_path(SAMPLE_PATH).unwrap();
        assert_eq!(psi_inverse(&d).to_string(), "869743251");
        assert_eq!(phi_inverse(&d).to_string(), "867943251");
        assert!(phi_map(&perm("132")).is_err());
        assert!(psi_map(&perm("123")).is_err());
    }

    #[test]
    fn round_trips_small() {
        let p132 = Pattern::classical("132").unwrap();
        let p123 = Pattern::classical("123").unwrap();
        for n in 0..=7 {
            for s in Avoiders::unchecked(n, &p132) {
                assert_eq!(phi_inverse(&phi_map(&s).unwrap()), s);
            }
            for s in Avoiders::unchecked(n, &p123) {
                assert_eq!(psi_inverse(&psi_map(&s).unwrap()), s);
            }
        }
    }

    #[test]
    fn reductions() {
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
        let inc = Pattern::consecutive("123").unwrap();
        assert_eq!(
            pattern_path(&inc, PathVariant::PhiPrime)
                .unwrap()
                .to_string(),
            "RRR"
        );
        assert_eq!(admissible_variant(&g), Some(PathVariant::PhiDoublePrime));
        assert_eq!(admissible_variant(&inc), Some(PathVariant::PhiPrime));
        assert_eq!(
            admissible_variant(&Pattern::consecutive("312").unwrap()),
            None
        );
        assert!(
            pattern_path(&Pattern::consecutive("132").unwrap(), PathVariant::PhiPrime).is_err()
        );
    }

    #[test]
    fn path_enumeration() {
        let l = Limits::default();
        let two: Vec<String> = enumerate_paths_with(2, &l)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(two, ["DDRR", "DRDR"]);
        assert_eq!(enumerate_paths_with(3, &l).unwrap().count(), 5);
        let zero: Vec<_> = enumerate_paths_with(0, &l).unwrap().collect();
        assert_eq!(zero, vec![DyckPath::empty()]);
        for n in 0..=8 {
            let all: Vec<_> = enumerate_paths_with(n, &l).unwrap().collect();
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            assert!(all
                .iter()
                .all(|p| DyckPath::new(p.steps().to_vec()).is_ok()));
        }
    }
}
