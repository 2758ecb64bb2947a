//! Recursion systems for consecutive-pattern distributions, solved as
//! truncated series.

use std::fmt;

use crate::error::{invalid, Result};
use crate::perm::{all_permutations, Pattern, PatternKind, Permutation};
use crate::poly::expr::{self, Env};
use crate::poly::{fixed_point_solve, Equation, TruncatedSeries, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntryKind {
    RecursionSystem,
    ClosedForm,
    PrintedIdentity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Trust {
    HardPass,
    ReportOnly,
}

impl Trust {
    pub fn is_hard(self) -> bool {
        self == Trust::HardPass
    }
}

/// Family parameters: `m` is the pattern length, `a` its first entry.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Params {
    pub m: Option<i64>,
    pub a: Option<i64>,
}

impl Params {
    pub fn none() -> Self {
        Params::default()
    }

    pub fn m(m: i64) -> Self {
        Params {
            m: Some(m),
            a: None,
        }
    }

    pub fn ma(m: i64, a: i64) -> Self {
        Params {
            m: Some(m),
            a: Some(a),
        }
    }

    pub(crate) fn env(&self, order: usize) -> Env {
        let mut env = Env::new(order);
        if let Some(m) = self.m {
            env = env.with_param("m", m);
        }
        if let Some(a) = self.a {
            env = env.with_param("a", a);
        }
        env
    }
}

impl fmt::Display for Params {
    /// `m=3,a=2`; empty when no parameter is set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(m) = self.m {
            parts.push(format!("m={m}"));
        }
        if let Some(a) = self.a {
            parts.push(format!("a={a}"));
        }
        f.write_str(&parts.join(","))
    }
}

/// Allowed parameter values of an entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Fixed,
    M {
        min: i64,
    },
    /// `m ≥ min_m` and `a_lo ≤ a ≤ m − a_hi_gap`.
    MA {
        min_m: i64,
        a_lo: i64,
        a_hi_gap: i64,
    },
}

impl Domain {
    pub fn check(&self, id: &str, p: &Params) -> Result<()> {
        match *self {
            Domain::Fixed => {
                if p.m.is_some() || p.a.is_some() {
                    return Err(invalid(format!("{id} takes no parameters")));
                }
            }
            Domain::M { min } => {
                let m = p.m.ok_or_else(|| invalid(format!("{id} needs --m")))?;
                if p.a.is_some() {
                    return Err(invalid(format!("{id} takes no parameter a")));
                }
                if m < min {
                    return Err(invalid(format!("{id} needs m >= {min}, got {m}")));
                }
                if m > 9 {
                    return Err(invalid(format!(
                        "{id}: m = {m} exceeds the pattern length limit 9"
                    )));
                }
            }
            Domain::MA {
                min_m,
                a_lo,
                a_hi_gap,
            } => {
                let m = p.m.ok_or_else(|| invalid(format!("{id} needs --m")))?;
                let a = p.a.ok_or_else(|| invalid(format!("{id} needs --a")))?;
                if m < min_m {
                    return Err(invalid(format!("{id} needs m >= {min_m}, got {m}")));
                }
                if m > 9 {
                    return Err(invalid(format!(
                        "{id}: m = {m} exceeds the pattern length limit 9"
                    )));
                }
                if a < a_lo || a > m - a_hi_gap {
                    return Err(invalid(format!(
                        "{id} needs {a_lo} <= a <= {}, got a = {a}",
                        m - a_hi_gap
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub kind: EntryKind,
    pub domain: Domain,
    /// Short description of the statistic or formula.
    pub anchor: &'static str,
    pub trust: Trust,
}

/// Equations `name = rhs`, solved in order; the last name is the result.
struct System {
    id: &'static str,
    anchor: &'static str,
    domain: Domain,
    trust: Trust,
    equations: &'static [(&'static str, &'static str)],
}

const SYSTEMS: &[System] = &[
    System {
        id: "thm1",
        anchor: "S_n(123): descents (y) and consecutive 132 (x)",
        domain: Domain::Fixed,
        trust: Trust::HardPass,
        equations: &[
            ("A1", "1 + t y A1 + t^2 y A1^2 + t^3 x y^2 A1^3/(1 - t y A1)"),
            ("A", "(A1 - 1)/y + 1"),
        ],
    },
    System {
        id: "thm2",
        anchor: "S_n(123): descents (y) and consecutive 231 (x)",
        domain: Domain::Fixed,
        trust: Trust::HardPass,
        equations: &[
            ("A1", "1 + t y A1 + t^2 x y A1^2 + t^3 y^2 A1^3/(1 - t y A1)"),
            ("A", "1 + (A1 - 1)/y + t^2 (1 - x) A1^2"),
        ],
    },
    System {
        id: "thm3",
        anchor: "S_n(123): descents (y) and consecutive 321 (x)",
        domain: Domain::Fixed,
        trust: Trust::ReportOnly,
        equations: &[
            ("A0", "1 + t x y A0 + t^2 y A0^2/(1 - t x y A0)"),
            (
                "A1",
                "1 + t y A0 + t^2 y A0 (A1 + (A1 - 1) t x y A0/(1 - t x y A0))/(1 - t x y)",
            ),
            (
                "A",
                "1 + t A1 + t^2 (A0 (A1 - 1) + A1) \
                 + t^3 y (A1 + (A1 - 1)(A0 + A0^2 - t x y A0^2)/(1 - t x y A0))/(1 - t x y)",
            ),
        ],
    },
    System {
        id: "thm4",
        anchor: "S_n(132): descents (y) and consecutive 123 (x)",
        domain: Domain::Fixed,
        trust: Trust::HardPass,
        equations: &[(
            "A",
            "1 + t (y (A - 1) + 1) + t^2 (y (A - 1) + 1)^2/(1 - t x (y (A - 1) + 1))",
        )],
    },
    System {
        id: "thm5",
        anchor: "S_n(132): descents (y) and consecutive 231 (x)",
        domain: Domain::Fixed,
        trust: Trust::HardPass,
        equations: &[("A", "1 + t (A + y (A - 1)) + t x y (A - 1)^2")],
    },
    System {
        id: "thm5_segments",
        anchor: "S_n(132), consecutive 231 via last-segment expansion",
        domain: Domain::Fixed,
        trust: Trust::ReportOnly,
        equations: &[
            ("A1", "1 + t y A1 + t^2 x y A1^2/(1 - t A1)"),
            ("A", "1 + t y A1/(1 - t A1)"),
        ],
    },
    System {
        id: "thm6",
        anchor: "S_n(132): descents (y) and consecutive 213 (x)",
        domain: Domain::Fixed,
        trust: Trust::HardPass,
        equations: &[(
            "A",
            "1 + t (y (A - 1) + 1) + t^2 (y (A - 1) + 1)(x y (A - 1) + 1)/(1 - t (y (A - 1) + 1))",
        )],
    },
    System {
        id: "thm7",
        anchor: "S_n(123): descents (y) and consecutive 132, 231, 321 (x1, x2, x3)",
        domain: Domain::Fixed,
        trust: Trust::ReportOnly,
        equations: &[
            (
                "A0",
                "1 + t x3 y A0 + t^2 x1 y A0^2 + t^3 x2 x3 y^2 A0^3/(1 - t x3 y A0)",
            ),
            (
                "A1",
                "1 + t y A0 + t^2 x2 y A0 A1 \
                 - t^3 x1 x3 y^3 A0 (A0 - A1 - A0 A1 + t x3 y A0 A1)/((1 - t x3 y)(1 - t x3 y A0))",
            ),
            (
                "A",
                "1 + t A1 + t^2 (A0 (A1 - 1) + A1) \
                 + t^3 x1 y (-A0 + A1 + (t x3 y + 1) A0 (A0 - A1 + A0 A1))/((1 - t x3 y)(1 - t x3 y A0))",
            ),
        ],
    },
    System {
        id: "thm7_segments",
        anchor: "S_n(123): thm7 statistic with segment weights summed from the contribution table",
        domain: Domain::Fixed,
        trust: Trust::ReportOnly,
        equations: &[
            (
                "A0",
                "1 + t x3 y A0 + t^2 x2 y A0^2 + t^3 x1 x3 y^2 A0^3/(1 - t x3 y A0)",
            ),
            (
                "A1",
                "1 + t y A0 + t^2 x2 y A0 A1 \
                 + t^2 x1 y A0 (A1 t x3 y/(1 - t x3 y) \
                 + (A1 - 1) t x3 y A0/((1 - t x3 y)(1 - t x3 y A0)))",
            ),
            (
                "A",
                "1 + t A1 + t^2 (A0 (A1 - 1) + A1) \
                 + t^3 x1 y (A1 + (A1 - 1)(A0 + A0^2/(1 - t x3 y A0)))/(1 - t x3 y)",
            ),
        ],
    },
    System {
        id: "thm8",
        anchor: "S_n(132): descents (y) and consecutive 123, 213, 231, 321 (x1..x4)",
        domain: Domain::Fixed,
        trust: Trust::HardPass,
        equations: &[
            (
                "A0",
                "1 + t x4 y A0 + t^2 x3 y A0 (x2 (A0 - 1) + 1)/(1 - t x1 A0)",
            ),
            (
                "A1",
                "1 + t y A0 + t^2 x3 y A0 (x2 (A1 - 1) + 1) \
                 + t^3 x1 x3 y A0 (A1 - x2 A0 + x2 A0 A1 - t x1 A0 + t x1 x2 A0 - t x1 x2 A0 A1)\
                 /((1 - t x1)(1 - t x1 A0))",
            ),
            (
                "A",
                "1 + t A1 + t^2 ((x2 (A0 - 1) + 1)(A1 - 1)/((1 - t x1)(1 - t x1 A0)) \
                 + (x2 (A1 - 1) + 1)/(1 - t x1))",
            ),
        ],
    },
    System {
        id: "fam_123_1m2",
        anchor: "S_n(123), consecutive 1 m (m-1) ... 2",
        domain: Domain::M { min: 2 },
        trust: Trust::HardPass,
        equations: &[("B", "(1 + (x - 1) t^m B^m)/(1 - t B)")],
    },
    System {
        id: "fam_123_2m31",
        anchor: "S_n(123), consecutive 2 m (m-1) ... 3 1",
        domain: Domain::M { min: 2 },
        trust: Trust::HardPass,
        equations: &[
            ("B1", "1/(1 - t B1) + (x - 1) t^(m-1) B1^(m-1)"),
            ("B", "1/(1 - t B1)"),
        ],
    },
    System {
        id: "fam_132_1m",
        anchor: "S_n(132), consecutive 1 2 ... m",
        domain: Domain::M { min: 2 },
        trust: Trust::HardPass,
        equations: &[(
            "B",
            "(1 - t^(m-1) B^(m-1))/(1 - t B) + t^(m-1) B^(m-1)/(1 - t x B)",
        )],
    },
    System {
        id: "fam_132_a1m",
        anchor: "S_n(132), consecutive a 1 2 ... (a-1)(a+1) ... m",
        domain: Domain::MA {
            min_m: 3,
            a_lo: 2,
            a_hi_gap: 1,
        },
        trust: Trust::ReportOnly,
        equations: &[("B", "(1 + t^(m-1) B^(m-a) (x - 1)(B - 1))/(1 - t B)")],
    },
    System {
        id: "fam_132_m1head",
        anchor: "S_n(132), consecutive g with g_1 = m-1 and g_m = m",
        domain: Domain::M { min: 3 },
        trust: Trust::HardPass,
        equations: &[("B", "(1 + t^(m-1) (x - 1)(B^2 - B))/(1 - t B)")],
    },
    System {
        id: "fam_132_2m1",
        anchor: "S_n(132), consecutive 2 3 ... m 1",
        domain: Domain::M { min: 2 },
        trust: Trust::HardPass,
        equations: &[
            ("B1", "(1 + (x - 1) t^(m-1) B1^(m-1))/(1 - t B1)"),
            ("B", "1/(1 - t B1)"),
        ],
    },
    System {
        id: "fam_132_a2m1",
        anchor: "S_n(132), consecutive a 2 3 ... (a-1)(a+1) ... m 1",
        domain: Domain::MA {
            min_m: 4,
            a_lo: 3,
            a_hi_gap: 1,
        },
        trust: Trust::ReportOnly,
        equations: &[
            ("B1", "1/(1 - t B1) + t^(m-2) B1^(m-a) (x - 1)(B1 - 1)"),
            ("B", "1/(1 - t B1)"),
        ],
    },
    System {
        id: "fam_132_m1m1",
        anchor: "S_n(132), consecutive g with g_1 = m-1, g_(m-1) = m, g_m = 1",
        domain: Domain::M { min: 4 },
        trust: Trust::ReportOnly,
        equations: &[
            ("B1", "1/(1 - t B1) + t^(m-2) (x - 1)(B1^2 - B1)"),
            ("B", "1/(1 - t B1)"),
        ],
    },
];

/// Identifiers of all recursion systems, in catalog order.
pub fn recursion_ids() -> impl Iterator<Item = &'static str> {
    SYSTEMS.iter().map(|s| s.id)
}

fn system(id: &str) -> Result<&'static System> {
    SYSTEMS
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| invalid(format!("unknown catalog id `{id}`")))
}

fn system_entry(s: &System) -> CatalogEntry {
    CatalogEntry {
        id: s.id,
        kind: EntryKind::RecursionSystem,
        domain: s.domain,
        anchor: s.anchor,
        trust: s.trust,
    }
}

/// The catalog entry of a recursion system.
pub fn system_info(id: &str) -> Result<CatalogEntry> {
    system(id).map(system_entry)
}

/// Every catalog entry: recursion systems, closed forms and printed identities.
pub fn entries() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = SYSTEMS.iter().map(system_entry).collect();
    out.extend(super::closed::entries());
    out.extend(super::identities::entries());
    out
}

pub fn entry(id: &str) -> Result<CatalogEntry> {
    entries()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| invalid(format!("unknown catalog id `{id}`")))
}

/// The defining equations of a recursion system as `(name, rhs)` pairs.
pub fn equations(id: &str) -> Result<&'static [(&'static str, &'static str)]> {
    Ok(system(id)?.equations)
}

/// Solved components of a system, in solving order.
#[derive(Debug, Clone)]
pub struct Solution {
    pub names: Vec<&'static str>,
    pub series: Vec<TruncatedSeries>,
}

impl Solution {
    /// The generating function itself (the last component).
    pub fn main(&self) -> &TruncatedSeries {
        self.series
            .last()
            .expect("systems have at least one equation")
    }

    pub fn get(&self, name: &str) -> Option<&TruncatedSeries> {
        self.names
            .iter()
            .position(|n| *n == name)
            .map(|i| &self.series[i])
    }

    /// An evaluation environment with every component bound.
    pub fn env(&self, params: &Params, order: usize) -> Env {
        let mut env = params.env(order);
        for (n, s) in self.names.iter().zip(&self.series) {
            env.bind(n, s.clone());
        }
        env
    }

    /// Every component under the same integer substitution.
    pub fn substitute_ints(&self, assignments: &[(VarId, i64)]) -> Result<Solution> {
        let series = self
            .series
            .iter()
            .map(|s| s.substitute_ints(assignments))
            .collect::<Result<_>>()?;
        Ok(Solution {
            names: self.names.clone(),
            series,
        })
    }

    pub fn into_main(mut self) -> TruncatedSeries {
        self.series
            .pop()
            .expect("systems have at least one equation")
    }
}

/// Solves a catalog system to `t^order`.
pub fn solve_catalog(id: &str, params: &Params, order: usize) -> Result<Solution> {
    let sys = system(id)?;
    sys.domain.check(id, params)?;
    let parsed = sys
        .equations
        .iter()
        .map(|(_, src)| expr::parse(src))
        .collect::<Result<Vec<_>>>()?;
    let names: Vec<&'static str> = sys.equations.iter().map(|(n, _)| *n).collect();
    let equations: Vec<Equation<'_>> = parsed
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let earlier = &names[..i];
            let name = names[i];
            Equation::new(
                name,
                move |prev: &[TruncatedSeries], cur: &TruncatedSeries| {
                    let mut env = params.env(cur.order());
                    for (n, s) in earlier.iter().zip(prev) {
                        env.bind(n, s.clone());
                    }
                    env.bind(name, cur.clone());
                    env.eval(e)
                },
            )
        })
        .collect();
    let series = fixed_point_solve(&equations, order)?;
    drop(equations);
    Ok(Solution { names, series })
}

/// What a recursion system counts, for comparison with brute force.
#[derive(Debug, Clone)]
pub struct Statistic {
    /// Classical pattern avoided.
    pub avoid: Pattern,
    /// Consecutive patterns; each list is one tracked statistic, every member
    /// of which is claimed to have the same distribution.
    pub tracked: Vec<Vec<Pattern>>,
    /// Variable carrying each tracked statistic.
    pub vars: Vec<VarId>,
    /// Whether `y` marks descents (families drop it).
    pub descents: bool,
}

fn cons(entries: Vec<u8>) -> Pattern {
    Pattern::new(
        Permutation::new(entries).expect("family patterns are permutations"),
        PatternKind::Consecutive,
    )
    .expect("non-empty")
}

fn cons_str(s: &str) -> Pattern {
    Pattern::consecutive(s).expect("valid literal")
}

/// `γ ∈ S_m(132)` satisfying `pred`.
fn avoiders_132_where(m: usize, pred: impl Fn(&[u8]) -> bool) -> Vec<Pattern> {
    let p132 = Pattern::classical("132").expect("literal");
    all_permutations(m)
        .into_iter()
        .filter(|p| p.avoids(&p132) && pred(p.entries()))
        .map(|p| Pattern::new(p, PatternKind::Consecutive).expect("non-empty"))
        .collect()
}

/// The consecutive patterns a family entry speaks about.
pub fn family_patterns(id: &str, params: &Params) -> Result<Vec<Pattern>> {
    system(id)?.domain.check(id, params)?;
    let m = params.m.unwrap_or(0) as u8;
    let a = params.a.unwrap_or(0) as u8;
    let pats = match id {
        "fam_123_1m2" => {
            let mut v = vec![1];
            v.extend((2..=m).rev());
            vec![cons(v)]
        }
        "fam_123_2m31" => {
            if m == 2 {
                vec![cons(vec![2, 1])]
            } else {
                let mut v = vec![2];
                v.extend((3..=m).rev());
                v.push(1);
                vec![cons(v)]
            }
        }
        "fam_132_1m" => vec![cons((1..=m).collect())],
        "fam_132_a1m" => {
            let mut v = vec![a];
            v.extend((1..=m).filter(|&i| i != a));
            vec![cons(v)]
        }
        "fam_132_m1head" => {
            let m = m as usize;
            avoiders_132_where(m, |g| g[0] as usize == m - 1 && g[m - 1] as usize == m)
        }
        "fam_132_2m1" => {
            let mut v: Vec<u8> = (2..=m).collect();
            v.push(1);
            vec![cons(v)]
        }
        "fam_132_a2m1" => {
            let mut v = vec![a];
            v.extend((2..=m).filter(|&i| i != a));
            v.push(1);
            vec![cons(v)]
        }
        "fam_132_m1m1" => {
            let m = m as usize;
            avoiders_132_where(m, |g| {
                g[0] as usize == m - 1 && g[m - 2] as usize == m && g[m - 1] == 1
            })
        }
        _ => return Err(invalid(format!("{id} is not a pattern family"))),
    };
    Ok(pats)
}

/// The permutation statistic a recursion system is meant to enumerate.
pub fn statistic(id: &str, params: &Params) -> Result<Statistic> {
    let single = |avoid: &str, gamma: &str| Statistic {
        avoid: Pattern::classical(avoid).expect("literal"),
        tracked: vec![vec![cons_str(gamma)]],
        vars: vec![VarId::X],
        descents: true,
    };
    let multi = |avoid: &str, gammas: &[&str]| Statistic {
        avoid: Pattern::classical(avoid).expect("literal"),
        tracked: gammas.iter().map(|g| vec![cons_str(g)]).collect(),
        vars: (1..=gammas.len())
            .map(|i| VarId::tracked(i).expect("at most four"))
            .collect(),
        descents: true,
    };
    system(id)?.domain.check(id, params)?;
    Ok(match id {
        "thm1" => single("123", "132"),
        "thm2" => single("123", "231"),
        "thm3" => single("123", "321"),
        "thm4" => single("132", "123"),
        "thm5" | "thm5_segments" => single("132", "231"),
        "thm6" => single("132", "213"),
        "thm7" | "thm7_segments" => multi("123", &["132", "231", "321"]),
        "thm8" => multi("132", &["123", "213", "231", "321"]),
        fam => {
            let avoid = if fam.starts_with("fam_123") {
                "123"
            } else {
                "132"
            };
            Statistic {
                avoid: Pattern::classical(avoid).expect("literal"),
                tracked: vec![family_patterns(fam, params)?],
                vars: vec![VarId::X],
                descents: false,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_system_parses() {
        for s in SYSTEMS {
            for (_, src) in s.equations {
                expr::parse(src).unwrap_or_else(|e| panic!("{}: {e}", s.id));
            }
        }
    }

    #[test]
    fn domains_reject_out_of_range() {
        assert!(solve_catalog("fam_132_a1m", &Params::ma(3, 1), 3).is_err());
        assert!(solve_catalog("fam_132_a1m", &Params::ma(3, 2), 3).is_ok());
        assert!(solve_catalog("fam_132_m1m1", &Params::m(3), 3).is_err());
        assert!(solve_catalog("thm1", &Params::m(3), 3).is_err());
        assert!(solve_catalog("nope", &Params::none(), 3).is_err());
    }

    #[test]
    fn family_pattern_shapes() {
        let show = |id: &str, p: Params| -> Vec<String> {
            family_patterns(id, &p)
                .unwrap()
                .iter()
                .map(|g| g.to_string())
                .collect()
        };
        assert_eq!(show("fam_123_1m2", Params::m(4)), ["1432"]);
        assert_eq!(show("fam_123_2m31", Params::m(4)), ["2431"]);
        assert_eq!(show("fam_132_a1m", Params::ma(4, 3)), ["3124"]);
        assert_eq!(show("fam_132_a2m1", Params::ma(4, 3)), ["3241"]);
        assert_eq!(show("fam_132_m1head", Params::m(4)), ["3124", "3214"]);
        assert_eq!(show("fam_132_m1m1", Params::m(5)), ["42351", "43251"]);
    }
}
