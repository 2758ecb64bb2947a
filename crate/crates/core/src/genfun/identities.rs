//! Closed equations and expansions stated for the solved series, checked
//! after clearing denominators.

use serde::{Deserialize, Serialize};

use super::catalog::{solve_catalog, CatalogEntry, Domain, EntryKind, Params, Solution, Trust};
use super::sequences::catalan;
use crate::error::{invalid, Result};
use crate::poly::expr::{self, Env};
use crate::poly::{SparsePoly, TruncatedSeries, VarId};

/// First coefficient at which two sides disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: usize,
    pub monomial: String,
    pub expected: String,
    pub actual: String,
}

impl Witness {
    pub fn new(
        n: usize,
        monomial: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        Witness {
            n,
            monomial: monomial.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    /// First differing coefficient of two series, `expected` first.
    pub fn between(expected: &TruncatedSeries, actual: &TruncatedSeries) -> Option<Witness> {
        let n = expected.first_difference(actual)?;
        Witness::between_polys(n, expected.slice(n), actual.slice(n))
    }

    pub fn between_polys(n: usize, expected: &SparsePoly, actual: &SparsePoly) -> Option<Witness> {
        let diff = expected - actual;
        let (m, _) = diff.terms().next()?;
        Some(Witness::new(
            n,
            m.to_string(),
            expected.coeff(m),
            actual.coeff(m),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn from_witness(witness: Option<Witness>) -> Self {
        Verdict {
            holds: witness.is_none(),
            witness,
        }
    }
}

enum Form {
    /// `lhs = rhs`, compared after cross-multiplying denominators.
    Equation(&'static str),
    /// An equation checked only after setting `y = 1` in the solution.
    EquationAtY1(&'static str),
    /// A printed truncated expansion of the main series.
    Expansion(&'static str),
}

struct Printed {
    id: &'static str,
    system: &'static str,
    trust: Trust,
    form: Form,
}

const THM1_QUADRATIC: &str = "A = 1 + t (y (A - 1) + 1)^2 + t^3 (x - 1) y^2 (y (A - 1) + 1)^3";

const THM2_QUARTIC: &str =
    "A = t^2 (y-1)^2 (y ((A-1)^2 x^2 y + x ((A-1)^3 y^3 + (A-1)^2 y^2 + (A-1) y + 2 A - 1) \
     - ((A-1) y + 1) (y ((A-2) (A-1) y + 2 A - 3) + 3)) + 1) + (A-1) y ((y-3) y + 3) + 1 \
     - t (y-1)^2 ((A-1) y + 1) (y (A (x+y-2) - x - y + 3) - 1)";

const THM3_RADICAL: &str =
    "(2 t y^2 (x^2 (-t) y + x + t)^3 (1 - A) - (2 (x-1)^2 t^6 y^3 (x^2 y - 1)^2 \
     + t^2 (-x^2 (2 x + 5) y^2 + (6 x + 2) y - 1) \
     + 2 t^4 y ((2 - 3 x) x^4 y^3 + (3 x^2 + 2 x - 2) x^2 y^2 - (3 x^2 + x - 1) y + 1) \
     + 2 (x-1) t^5 y^2 (x^5 y^3 - 3 x^4 y^2 + 4 x^2 y - x y - 1) \
     + 2 t^3 y (3 x^4 y^2 - x^3 y - 5 x^2 y + x + 2) + t (4 x y - 2) - 1))^2 \
     = (t (x y - 1) - 1)^4 (4 x^2 t^2 y^2 - 4 x t y - 4 t^2 y + 1)";

const THM4_RADICAL: &str = "(2 t y (x (t y - 1) - t y) A - (x t (2 t y^2 - 2 (t + 1) y + 1) - 2 t^2 (y - 1) y + t y - 1))^2 \
     = x^2 t^2 + 2 x t (t y - 1) + t^2 (y - 4) y - 2 t y + 1";

const THM5_RADICAL: &str = "(2 t x y A - (2 t x y - t y - t + 1))^2 \
     = -4 t^2 x y + t^2 y^2 + 2 t^2 y + t^2 - 2 t y - 2 t + 1";

const THM6_RADICAL: &str =
    "(2 t y ((x - 1) t y + 1) A - ((x - 1) t^2 y (2 y - 1) + t (y - 1) + 1))^2 \
     = t (2 y (x (t - 1) t - t^2 - 1) + t y^2 (-x t + t + 1)^2 + t - 2) + 1";

const THM7_RATIONAL: &str = "A = (x1 (x3^2 t y (A0^2 t^2 (x2 t^2 y^2 + y (3 x2 t + 2 x2 + t + 1) + 1) \
     + A0 ((x2 + 1) t^3 y + t^2 (2 x2 y + y + 2) + t + 1) + t + 1) + x2 t^2 (A0^2 (-t) y + A0 - 1) \
     + A0^2 x3^4 t^5 y^3 - A0 x3^3 t^2 y^2 (A0 (x2 + 1) t^3 y + t^2 (A0 (2 x2 y + y + 2) + 1) + t + 1) \
     + x3 (A0 x2 t^4 y (A0 - y) - A0 t^3 y (A0 x2 + x2 + 1) - A0 t^2 (x2 y + y + 1) - t - 1)) \
     + x2 (-A0^2 x3^4 t^5 y^3 - x3^2 t y (A0^2 (2 t - 1) t^2 y + A0 (t^3 y + t^2 (y + 2) + t + 1) + t + 1) \
     + x3 (t^2 (A0^2 (-y) + y + 1) + A0 (A0 + 1) t^3 y + t + 1) \
     + A0 x3^3 t^2 y^2 (A0 t^3 y + (A0 + 1) t^2 + t + 1) + (A0 - 1) t) \
     + x3 t (x3 t y - 1) (A0^2 x3 t y (x3 t y - 1) + A0 - 1) \
     + A0 x1^2 t^2 y (-A0 x2 t^2 + A0 x3^3 t^2 y^2 - (A0 + 1) x3^2 t y + x3) \
     + A0 x2^2 x3 t^3 y (A0 x3^2 t (t + 1) y^2 - x3 y (A0 t^2 y + 2 A0 t + A0 + t + 1) + (A0 + 1) t y + 1)) \
     / (x3 (x1 - x2) (A0 x3^2 t^2 y^2 (A0 t^2 y (x1 - x2) - 1) - (A0 + 1) x3 t y (A0 t^2 y (x1 - x2) - 1) \
     + A0 x1 t^2 y - 1))";

const THM7_EXPANSION: &str = "1 + t + t^2 (1 + y) + t^3 (x3 y^2 + x1 y + x2 y + 2 y + 1) \
     + t^4 (x3^2 y^3 + 2 x1 x3 y^2 + x2 x3 y^2 + 3 x1 y^2 + 2 x2 y^2 + 3 x3 y^2 + 3 x1 y + 5 x2 y + 3 y + 1) \
     + t^5 (x3^3 y^4 + 3 x1 x3^2 y^3 + x2 x3^2 y^3 + 13 x1 x3 y^3 + 5 x2 x3 y^3 + 4 x3^2 y^3 + 3 x1^2 y^2 \
     + 10 x1 x2 y^2 + 10 x1 x3 y^2 + 3 x2^2 y^2 + 7 x2 x3 y^2 + 12 x1 y^2 + 15 x2 y^2 + 6 x3 y^2 \
     + 6 x1 y + 16 x2 y + 4 y + 1)";

const THM8_CLEARED: &str =
    "A = 1 + t A1 + (A1 - 1 - t y A0 - t^2 x3 y A0 (x2 (A1 - 1) + 1))/(t x1 x3 y A0)";

const THM8_EXPANSION: &str = "1 + t + t^2 (y + 1) + t^3 (x1 + x2 y + x3 y + x4 y^2 + y) \
     + t^4 (x1^2 + x1 x2 y + x1 x3 y + 2 x1 y + x2 x3 y^2 + x2 x3 y + 2 x2 x4 y^2 + x3 x4 y^2 + x3 y^2 \
     + x3 y + x4^2 y^3 + x4 y^2) \
     + t^5 (x1^3 + x1^2 x2 y + x1^2 x3 y + 3 x1^2 y + x1 x2 x3 y^2 + 2 x1 x2 x3 y + 3 x1 x2 x4 y^2 \
     + x1 x3 x4 y^2 + 2 x1 x3 y^2 + 3 x1 x3 y + 3 x1 x4 y^2 + x2^2 x3 y^2 + x2 x3^2 y^2 + 3 x2 x3 x4 y^3 \
     + 2 x2 x3 x4 y^2 + 3 x2 x3 y^2 + 3 x2 x4^2 y^3 + x3^2 y^2 + x3 x4^2 y^3 + 2 x3 x4 y^3 + x3 x4 y^2 \
     + x3 y^2 + x4^3 y^4 + x4^2 y^3)";

const THM8_RADICAL: &str = "(2 x3 t y (-x1 x4 t + x3 t + x4) (x1 (-x4) t y + x1 + x2 x3 t y) A \
     - (2 x1^2 x3 x4^2 t^4 y^2 + 2 x1^2 x3 x4^2 t^3 y^2 - 2 x1^2 x3 x4 t^4 y^2 - 2 x1^2 x3 x4 t^3 y \
     - 2 x1^2 x3 x4 t^2 y + x1^2 x3 t^3 y - x1^2 x4 t^3 y + x1^2 t^2 \
     - 2 x1 x2 x3^2 x4 t^4 y^2 - 2 x1 x2 x3^2 x4 t^3 y^2 + x1 x2 x3^2 t^4 y^2 + x1 x2 x3 x4 t^4 y^2 \
     + x1 x2 x3 t^3 y - 2 x1 x3^2 x4 t^3 y^2 + x1 x3^2 t^4 y^2 + x1 x3^2 t^3 y + 2 x1 x3^2 t^2 y \
     - 2 x1 x3 x4^2 t^4 y^2 - 2 x1 x3 x4^2 t^3 y^2 - 2 x1 x3 x4^2 t^2 y^2 + x1 x3 x4 t^4 y^2 \
     + 3 x1 x3 x4 t^3 y^2 + 3 x1 x3 x4 t^3 y + 2 x1 x3 x4 t^2 y + 2 x1 x3 x4 t y - x1 x3 t^3 y \
     - 2 x1 x3 t^2 y - x1 x3 t^2 - x1 x4^2 t^3 y^2 + 3 x1 x4 t^2 y - 2 x1 t \
     + x2 x3^3 t^4 y^2 + 2 x2 x3^3 t^3 y^2 + x2 x3^2 x4 t^4 y^2 + 2 x2 x3^2 x4 t^3 y^2 \
     + 2 x2 x3^2 x4 t^2 y^2 - 2 x2 x3^2 t^4 y^2 - x2 x3^2 t^3 y^2 - x2 x3^2 t^3 y - x2 x3 x4 t^3 y^2 \
     - x2 x3 t^2 y - x3^3 t^4 y^2 + x3^2 x4 t^4 y^2 - x3^2 x4 t^3 y^2 - x3^2 t^3 y^2 - x3^2 t^3 y \
     + x3^2 t^2 y + x3 x4^2 t^3 y^2 + x3 x4 t^3 y^2 - x3 x4 t^2 y^2 - 2 x3 x4 t^2 y - x3 t^2 y \
     + x3 t y + x3 t + x4^2 t^2 y^2 - 2 x4 t y + 1))^2 \
     = ((x1 t - x3 t - 1) (x3 t y - x4 t y + 1))^2 \
     ((x1 t + t y ((x2 - 1) x3 t - x4) + 1)^2 - 4 t (x1 (-x4) t y + x1 + x2 x3 t y))";

const PRINTED: &[Printed] = &[
    Printed {
        id: "thm1_quadratic",
        system: "thm1",
        trust: Trust::ReportOnly,
        form: Form::Equation(THM1_QUADRATIC),
    },
    Printed {
        id: "thm1_quadratic_y1",
        system: "thm1",
        trust: Trust::HardPass,
        form: Form::EquationAtY1(THM1_QUADRATIC),
    },
    Printed {
        id: "thm1_quadratic_derived",
        system: "thm1",
        trust: Trust::HardPass,
        form: Form::Equation(
            "A = 1 + t (y (A - 1) + 1)^2 (1 + t - t y) + t^3 (x - 1) y (y (A - 1) + 1)^3",
        ),
    },
    Printed {
        id: "thm2_quartic",
        system: "thm2",
        trust: Trust::ReportOnly,
        form: Form::Equation(THM2_QUARTIC),
    },
    Printed {
        id: "thm3_a1_rational",
        system: "thm3",
        trust: Trust::ReportOnly,
        form: Form::Equation(
            "A1 = 1 + t y A0 + (A0 - A1)/(A0 - 1) t^2 y A0/(1 - t x y) \
             + (A1 - 1)/(A0 - 1) t^2 y A0^2/(1 - t x y A0)",
        ),
    },
    Printed {
        id: "thm3_a_rational",
        system: "thm3",
        trust: Trust::ReportOnly,
        form: Form::Equation(
            "A = 1 + t A1 + t^2 (A0 A1 - A0 + A1) + (A0 - A1)/(A0 - 1) t^3 y/(1 - t x y) \
             + (A1 - 1)/(A0 - 1) t^3 y A0^3/(1 - t x y A0)",
        ),
    },
    Printed {
        id: "thm3_radical",
        system: "thm3",
        trust: Trust::ReportOnly,
        form: Form::Equation(THM3_RADICAL),
    },
    Printed {
        id: "thm4_radical",
        system: "thm4",
        trust: Trust::ReportOnly,
        form: Form::Equation(THM4_RADICAL),
    },
    Printed {
        id: "thm5_radical",
        system: "thm5",
        trust: Trust::ReportOnly,
        form: Form::Equation(THM5_RADICAL),
    },
    Printed {
        id: "thm6_radical",
        system: "thm6",
        trust: Trust::ReportOnly,
        form: Form::Equation(THM6_RADICAL),
    },
    Printed {
        id: "thm7_rational",
        system: "thm7",
        trust: Trust::ReportOnly,
        form: Form::Equation(THM7_RATIONAL),
    },
    Printed {
        id: "thm7_rational_segments",
        system: "thm7_segments",
        trust: Trust::ReportOnly,
        form: Form::Equation(THM7_RATIONAL),
    },
    Printed {
        id: "thm7_expansion",
        system: "thm7",
        trust: Trust::ReportOnly,
        form: Form::Expansion(THM7_EXPANSION),
    },
    Printed {
        id: "thm8_cleared",
        system: "thm8",
        trust: Trust::HardPass,
        form: Form::Equation(THM8_CLEARED),
    },
    Printed {
        id: "thm8_expansion",
        system: "thm8",
        trust: Trust::HardPass,
        form: Form::Expansion(THM8_EXPANSION),
    },
    Printed {
        id: "thm8_radical",
        system: "thm8",
        trust: Trust::ReportOnly,
        form: Form::Equation(THM8_RADICAL),
    },
    Printed {
        id: "fam_123_2m31_closed",
        system: "fam_123_2m31",
        trust: Trust::ReportOnly,
        form: Form::Equation("B = t (B^(m+2) + (x - 1)(B - 1)^(m-1))/(B^(m-1) (B - 1))"),
    },
    Printed {
        id: "fam_132_2m1_closed",
        system: "fam_132_2m1",
        trust: Trust::ReportOnly,
        form: Form::Equation("B = t (B^(m-1) + (x - 1)(B - 1)^(m-1))/(B^(m-4) (B - 1))"),
    },
    Printed {
        id: "fam_132_a2m1_closed",
        system: "fam_132_a2m1",
        trust: Trust::ReportOnly,
        form: Form::Equation(
            "B = (t B^(m-a+2) + t^(a-2) (x - 1)(B - 1 - t B)(B - 1)^(m-a))/((B - 1) B^(m-a-1))",
        ),
    },
    Printed {
        id: "fam_132_m1m1_closed",
        system: "fam_132_m1m1",
        trust: Trust::ReportOnly,
        form: Form::Equation("B = t B^3/(B - 1) + t^(m-3) (x - 1)(B - 1 - t B)"),
    },
];

fn printed(id: &str) -> Result<&'static Printed> {
    PRINTED
        .iter()
        .find(|p| p.id == id)
        .ok_or_else(|| invalid(format!("unknown printed identity `{id}`")))
}

pub fn identity_ids() -> impl Iterator<Item = &'static str> {
    PRINTED.iter().map(|p| p.id)
}

/// The recursion system an identity is stated for.
pub fn identity_system(id: &str) -> Result<&'static str> {
    Ok(printed(id)?.system)
}

pub fn identity_trust(id: &str) -> Result<Trust> {
    Ok(printed(id)?.trust)
}

pub(crate) fn entries() -> Vec<CatalogEntry> {
    PRINTED
        .iter()
        .map(|p| {
            let sys =
                super::catalog::system_info(p.system).expect("identities name catalog systems");
            CatalogEntry {
                id: p.id,
                kind: EntryKind::PrintedIdentity,
                domain: sys.domain,
                anchor: p.system,
                trust: p.trust,
            }
        })
        .collect()
}

/// Degree of the highest `t` power in a printed expansion.
fn expansion_degree(p: &SparsePoly) -> usize {
    p.t_slices().keys().next_back().copied().unwrap_or(0) as usize
}

fn check_expansion(src: &str, solved: &TruncatedSeries, order: usize) -> Result<Verdict> {
    let poly = Env::new(crate::limits::MAX_ORDER)
        .eval(&expr::parse(src)?)?
        .to_poly();
    let upto = order.min(expansion_degree(&poly)).min(solved.order());
    let printed = TruncatedSeries::from_poly(&poly, upto);
    for n in 0..=upto {
        let (want, got) = (solved.slice(n), printed.slice(n));
        if want == got {
            continue;
        }
        let total = catalan(n);
        let printed_sum = got.coefficient_sum();
        if printed_sum != total {
            return Ok(Verdict::from_witness(Some(Witness::new(
                n,
                "sum",
                total,
                printed_sum,
            ))));
        }
        return Ok(Verdict::from_witness(Witness::between_polys(n, want, got)));
    }
    Ok(Verdict::from_witness(None))
}

fn check_equation(
    src: &str,
    solution: &Solution,
    params: &Params,
    order: usize,
    at: &[(VarId, i64)],
) -> Result<Verdict> {
    let (lhs, rhs) = expr::parse_equation(src)?;
    let solution = solution.substitute_ints(at)?;
    let env = solution.env(params, order);
    let residual = env.cleared_residual(&lhs, &rhs)?.substitute_ints(at)?;
    let zero = TruncatedSeries::zero(residual.order());
    Ok(Verdict::from_witness(Witness::between(&zero, &residual)))
}

/// Checks an identity against a given solution of its system.
pub fn check_with(id: &str, solution: &Solution, params: &Params, order: usize) -> Result<Verdict> {
    let p = printed(id)?;
    match p.form {
        Form::Equation(src) => check_equation(src, solution, params, order, &[]),
        Form::EquationAtY1(src) => check_equation(src, solution, params, order, &[(VarId::Y, 1)]),
        Form::Expansion(src) => check_expansion(src, solution.main(), order),
    }
}

/// `printed_identity_check(id, N)`: solves the system to `t^N` and clears the identity.
pub fn printed_identity_check(id: &str, params: &Params, order: usize) -> Result<Verdict> {
    let p = printed(id)?;
    let solution = solve_catalog(p.system, params, order)?;
    check_with(id, &solution, params, order)
}

/// Parameter domain of an identity (that of its system).
pub fn identity_domain(id: &str) -> Result<Domain> {
    Ok(super::catalog::system_info(printed(id)?.system)?.domain)
}
