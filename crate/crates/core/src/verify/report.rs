//! Check registry, results and the conformance report.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::checks::{evaluate, FAMILY_CONSISTENCY, SEQUENCES, SPECIALIZATIONS};
use crate::error::{invalid, Result};
use crate::genfun::identities::{identity_domain, identity_ids};
use crate::genfun::{Domain, Params, Trust, Witness};
use crate::limits::{Limits, DEFAULT_DISTRIBUTION_MAX};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnlyPass,
    ReportOnlyFail,
}

impl Status {
    fn from_outcome(trust: Trust, failed: bool) -> Status {
        match (trust, failed) {
            (Trust::HardPass, false) => Status::Pass,
            (Trust::HardPass, true) => Status::Fail,
            (Trust::ReportOnly, false) => Status::ReportOnlyPass,
            (Trust::ReportOnly, true) => Status::ReportOnlyFail,
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::ReportOnlyFail)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ReportOnlyPass => "report_only_pass",
            Status::ReportOnlyFail => "report_only_fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub params: String,
    /// Inclusive range of `n` examined; not part of the serialized schema.
    #[serde(skip)]
    pub n_range: (usize, usize),
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregate {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformanceReport {
    pub suite: Suite,
    pub n_max: usize,
    pub aggregate: Aggregate,
    pub checks: Vec<CheckResult>,
}

impl ConformanceReport {
    pub fn passed(&self) -> bool {
        self.aggregate == Aggregate::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<ConformanceReport> {
        serde_json::from_str(text).map_err(|e| invalid(format!("malformed report: {e}")))
    }

    pub fn get(&self, id: &str, params: &str) -> Option<&CheckResult> {
        self.checks
            .iter()
            .find(|c| c.id == id && c.params == params)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    Symmetries,
    Bijections,
    Recursions,
    ClosedForms,
    Identities,
    Sequences,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::All,
        Suite::Symmetries,
        Suite::Bijections,
        Suite::Recursions,
        Suite::ClosedForms,
        Suite::Identities,
        Suite::Sequences,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Symmetries => "symmetries",
            Suite::Bijections => "bijections",
            Suite::Recursions => "recursions",
            Suite::ClosedForms => "closed_forms",
            Suite::Identities => "identities",
            Suite::Sequences => "sequences",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| invalid(format!("unknown suite `{s}`")))
    }
}

/// One registered check instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSpec {
    pub id: String,
    pub params: Params,
    pub n: usize,
}

/// Coefficient range of the Lagrange-inversion check; it needs no enumeration.
pub const LAGRANGE_ORDER: usize = 14;

fn fixed(ids: &[&str], n: usize) -> Vec<CheckSpec> {
    ids.iter()
        .map(|id| CheckSpec {
            id: (*id).to_string(),
            params: Params::none(),
            n,
        })
        .collect()
}

fn with_params(id: &str, params: impl IntoIterator<Item = Params>, n: usize) -> Vec<CheckSpec> {
    params
        .into_iter()
        .map(|params| CheckSpec {
            id: id.to_string(),
            params,
            n,
        })
        .collect()
}

fn ms(range: std::ops::RangeInclusive<i64>) -> Vec<Params> {
    range.map(Params::m).collect()
}

/// Every recursion instance the harness solves.
pub fn recursion_instances() -> Vec<(&'static str, Vec<Params>)> {
    let none = || vec![Params::none()];
    vec![
        ("thm1", none()),
        ("thm2", none()),
        ("thm3", none()),
        ("thm4", none()),
        ("thm5", none()),
        ("thm5_segments", none()),
        ("thm6", none()),
        ("thm7", none()),
        ("thm7_segments", none()),
        ("thm8", none()),
        ("fam_123_1m2", ms(2..=5)),
        ("fam_123_2m31", ms(2..=5)),
        ("fam_132_1m", ms(2..=5)),
        (
            "fam_132_a1m",
            [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3), (5, 4)]
                .into_iter()
                .map(|(m, a)| Params::ma(m, a))
                .collect(),
        ),
        ("fam_132_m1head", ms(3..=5)),
        ("fam_132_2m1", ms(2..=5)),
        (
            "fam_132_a2m1",
            [(4, 3), (5, 3), (5, 4)]
                .into_iter()
                .map(|(m, a)| Params::ma(m, a))
                .collect(),
        ),
        ("fam_132_m1m1", ms(4..=6)),
    ]
}

fn identity_params(id: &str) -> Vec<Params> {
    match identity_domain(id).expect("registered identity") {
        Domain::Fixed => vec![Params::none()],
        Domain::M { min } => ms(min.max(3)..=5),
        Domain::MA { .. } => [(4, 3), (5, 3), (5, 4)]
            .into_iter()
            .map(|(m, a)| Params::ma(m, a))
            .filter(|p| {
                identity_domain(id)
                    .expect("registered")
                    .check(id, p)
                    .is_ok()
            })
            .collect(),
    }
}

/// The check instances of a suite, each examined up to `n_max`.
pub fn registry(suite: Suite, n_max: usize) -> Vec<CheckSpec> {
    let n = n_max;
    let mut out = Vec::new();
    let include = |s: Suite| suite == Suite::All || suite == s;
    if include(Suite::Symmetries) {
        out.extend(fixed(
            &[
                "sym_rc",
                "sym_r",
                "sym_c",
                "sym_123_rc",
                "sym_phi",
                "sym_1321",
                "oracle_consistency",
            ],
            n,
        ));
    }
    if include(Suite::Bijections) {
        out.extend(fixed(
            &[
                "catalan_counts",
                "bij_phi",
                "bij_psi",
                "bij_phin",
                "transport_psi",
                "transport_phi",
                "transport_general",
            ],
            n,
        ));
    }
    if include(Suite::Recursions) {
        for (id, params) in recursion_instances() {
            out.extend(with_params(&format!("rec_{id}"), params, n));
        }
        let derived: Vec<&str> = SPECIALIZATIONS
            .iter()
            .map(|s| s.0)
            .chain(FAMILY_CONSISTENCY.iter().map(|s| s.0))
            .chain(["cross_a2m1_m1m1", "row_sums"])
            .collect();
        out.extend(fixed(&derived, n));
    }
    if include(Suite::ClosedForms) {
        for id in [
            "cf_123_1m2",
            "cf_123_2m31",
            "cf_132_1m",
            "cf_132_1m_derived",
            "cf_132_2m1",
        ] {
            out.extend(with_params(id, ms(2..=4), n));
        }
        out.extend(fixed(
            &["cf_thm1eq", "cf_thm2eq", "cf_thm4eq", "cf_thm5eq"],
            n,
        ));
        out.extend(with_params("lagrange_123_1m2", ms(2..=4), LAGRANGE_ORDER));
    }
    if include(Suite::Identities) {
        for id in identity_ids() {
            out.extend(with_params(&format!("ident_{id}"), identity_params(id), n));
        }
    }
    if include(Suite::Sequences) {
        let ids: Vec<&str> = SEQUENCES.iter().map(|s| s.0).collect();
        out.extend(fixed(&ids, n));
    }
    out
}

fn lower_bound(id: &str) -> usize {
    if id.starts_with("cf_") || id.starts_with("lagrange_") {
        1
    } else {
        0
    }
}

/// `run_check(check_id, params)` over `n ≤ n`.
pub fn run_check(id: &str, params: &Params, n: usize) -> Result<CheckResult> {
    let outcome = evaluate(id, params, n)?;
    Ok(CheckResult {
        id: id.to_string(),
        params: params.to_string(),
        n_range: (lower_bound(id), n),
        status: Status::from_outcome(outcome.trust, outcome.witness.is_some()),
        witness: outcome.witness,
    })
}

/// A check that raised an error is recorded as failed, with the message.
fn run_spec(spec: &CheckSpec) -> CheckResult {
    run_check(&spec.id, &spec.params, spec.n).unwrap_or_else(|e| CheckResult {
        id: spec.id.clone(),
        params: spec.params.to_string(),
        n_range: (lower_bound(&spec.id), spec.n),
        status: Status::Fail,
        witness: Some(Witness::new(spec.n, "error", "no error", e)),
    })
}

/// Runs every check of `suite` concurrently; results are sorted by `(id, params)`.
pub fn run_suite(suite: Suite, n_max: usize) -> Result<ConformanceReport> {
    let cap = Limits::from_env()
        .distribution_max
        .min(DEFAULT_DISTRIBUTION_MAX);
    if n_max > cap {
        return Err(invalid(format!("n_max = {n_max} exceeds {cap}")));
    }
    let specs = registry(suite, n_max);
    let mut keyed: Vec<(CheckSpec, CheckResult)> = specs
        .into_par_iter()
        .map(|spec| {
            let result = run_spec(&spec);
            (spec, result)
        })
        .collect();
    keyed.sort_by(|(a, _), (b, _)| (&a.id, a.params).cmp(&(&b.id, b.params)));
    let checks: Vec<CheckResult> = keyed.into_iter().map(|(_, r)| r).collect();
    let aggregate = if checks.iter().any(|c| c.status == Status::Fail) {
        Aggregate::Fail
    } else {
        Aggregate::Pass
    };
    Ok(ConformanceReport {
        suite,
        n_max,
        aggregate,
        checks,
    })
}
