use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use patlab::dyck::{parse_path, phi_inverse, phi_map, psi_inverse, psi_map, DyckPath};
use patlab::genfun::catalog::recursion_ids;
use patlab::genfun::closed::{resolve, ClosedForm};
use patlab::genfun::{closed_coeff, format_rational, solve_catalog, statistic, CoeffQuery, Params};
use patlab::perm::{enumerate_avoiders, phi_n};
use patlab::verify::{
    brute_distribution, oracle_series, run_suite, ConformanceReport, Status, Suite,
};
use patlab::{Error, Pattern, Permutation, SparsePoly, TruncatedSeries, VarId};

#[derive(Parser)]
#[command(
    name = "patlab",
    version,
    about = "Consecutive-pattern statistics on 123- and 132-avoiding permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Map {
    Phi,
    Psi,
    Phin,
}

#[derive(Subcommand)]
enum Command {
    /// Joint distribution of descents and tracked consecutive patterns over S_n(λ).
    Dist {
        #[arg(long)]
        avoid: String,
        /// Comma-separated consecutive patterns, tracked by x1, x2, ...
        #[arg(long, value_delimiter = ',')]
        track: Vec<String>,
        #[arg(long)]
        n: usize,
        /// Substitutions `var=value`, applied to every slice.
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Solves a catalog recursion to a truncation order.
    Series {
        #[arg(long)]
        id: String,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long)]
        a: Option<i64>,
        #[arg(long, default_value_t = patlab::limits::DEFAULT_ORDER)]
        order: usize,
        /// Substitutions `var=value`, applied after solving.
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluates a closed-form coefficient exactly.
    Coeff {
        #[arg(long)]
        id: String,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Applies Φ, Ψ or φₙ (or an inverse).
    Bijection {
        #[arg(long, value_enum)]
        map: Map,
        #[arg(long, conflicts_with = "path")]
        perm: Option<String>,
        #[arg(long)]
        path: Option<String>,
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Runs a conformance suite and writes its report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        /// Report destination; the JSON goes to stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

/// A failure with its exit status.
enum Failure {
    Usage(String),
    Compute(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Compute(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Compute(m) | Failure::Io(m) => m,
        }
    }
}

/// Library errors caused by the caller's input are usage errors.
fn classify(e: Error) -> Failure {
    match e {
        Error::InvalidInput(_)
        | Error::InvalidPath { .. }
        | Error::ResourceLimit { .. }
        | Error::UnsupportedIndex(_)
        | Error::Range { .. }
        | Error::Parse { .. } => Failure::Usage(e.to_string()),
        Error::NonInvertible(_) | Error::NonContractive { .. } => Failure::Compute(e.to_string()),
    }
}

type Outcome = Result<String, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_sets(items: &[String]) -> Result<Vec<(VarId, i64)>, Failure> {
    items
        .iter()
        .filter(|s| !s.trim().is_empty())
        .map(|item| {
            let (var, value) = item
                .split_once('=')
                .ok_or_else(|| usage(format!("--set expects var=value, got `{item}`")))?;
            let var: VarId = var.trim().parse().map_err(classify)?;
            if var == VarId::T {
                return Err(usage("t cannot be substituted"));
            }
            let value = value
                .trim()
                .parse::<i64>()
                .map_err(|_| usage(format!("--set value must be an integer, got `{value}`")))?;
            Ok((var, value))
        })
        .collect()
}

fn pattern_arg(s: &str, classical: bool) -> Result<Pattern, Failure> {
    if s.len() > 9 || s.is_empty() || !s.chars().all(|c| c.is_ascii_digit()) {
        return Err(usage(format!(
            "pattern `{s}` must be a digit string of length 1..9"
        )));
    }
    let p = if classical {
        Pattern::classical(s)
    } else {
        Pattern::consecutive(s)
    };
    p.map_err(classify)
}

#[derive(Serialize)]
struct SliceRow {
    n: usize,
    poly: String,
}

fn csv_rows(slices: &[(usize, SparsePoly)]) -> String {
    let mut out = String::from("n,monomial,coefficient\n");
    for (n, poly) in slices {
        for (m, c) in poly.terms() {
            let _ = writeln!(out, "{n},{m},{c}");
        }
    }
    out
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn cmd_dist(avoid: &str, track: &[String], n: usize, set: &[String], format: Format) -> Outcome {
    let lambda = pattern_arg(avoid, true)?;
    if lambda.len() != 3 {
        return Err(usage("--avoid must be a pattern of length 3"));
    }
    let gamma: Vec<Pattern> = track
        .iter()
        .filter(|s| !s.is_empty())
        .map(|s| pattern_arg(s, false))
        .collect::<Result<_, _>>()?;
    if gamma.iter().any(|g| g.len() < 2) {
        return Err(usage("tracked patterns must have length at least 2"));
    }
    let sets = parse_sets(set)?;
    let mut slices = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let poly = brute_distribution(&lambda, &gamma, k)
            .map_err(classify)?
            .poly;
        let poly = TruncatedSeries::from_poly(&poly, 0)
            .substitute_ints(&sets)
            .map_err(classify)?
            .slice(0)
            .clone();
        slices.push((k, poly));
    }
    Ok(match format {
        Format::Text => slices.iter().map(|(k, p)| format!("{k}: {p}\n")).collect(),
        Format::Csv => csv_rows(&slices),
        Format::Json => {
            #[derive(Serialize)]
            struct Dist {
                avoid: String,
                tracked: Vec<String>,
                slices: Vec<SliceRow>,
            }
            to_json(&Dist {
                avoid: lambda.to_string(),
                tracked: gamma.iter().map(ToString::to_string).collect(),
                slices: slices
                    .iter()
                    .map(|(n, p)| SliceRow {
                        n: *n,
                        poly: p.to_string(),
                    })
                    .collect(),
            })
        }
    })
}

fn cmd_series(id: &str, params: Params, order: usize, set: &[String], format: Format) -> Outcome {
    if !recursion_ids().any(|r| r == id) {
        return Err(usage(format!("unknown recursion id `{id}`")));
    }
    if order > patlab::limits::MAX_ORDER {
        return Err(usage(format!(
            "--order {order} exceeds {}",
            patlab::limits::MAX_ORDER
        )));
    }
    let sets = parse_sets(set)?;
    let solved = solve_catalog(id, &params, order)
        .map_err(classify)?
        .into_main();
    let series = solved.substitute_ints(&sets).map_err(classify)?;
    let slices: Vec<(usize, SparsePoly)> = series.slices().iter().cloned().enumerate().collect();
    Ok(match format {
        Format::Text => format!("{series}\n"),
        Format::Csv => csv_rows(&slices),
        Format::Json => {
            #[derive(Serialize)]
            struct Series {
                id: String,
                params: String,
                order: usize,
                series: String,
                slices: Vec<SliceRow>,
            }
            to_json(&Series {
                id: id.to_string(),
                params: params.to_string(),
                order,
                series: series.to_string(),
                slices: slices
                    .iter()
                    .map(|(n, p)| SliceRow {
                        n: *n,
                        poly: p.to_string(),
                    })
                    .collect(),
            })
        }
    })
}

/// `[t^n x^k]` of the oracle for the family a closed form describes, when
/// it is cheap enough to enumerate.
fn oracle_coeff(form: ClosedForm, m: i64, n: i64, k: i64) -> Option<BigRational> {
    let limits = patlab::Limits::from_env();
    let n = usize::try_from(n).ok()?;
    limits.check_distribution(n).ok()?;
    let stat = statistic(form.family(), &Params::m(m)).ok()?;
    let series = oracle_series(&stat.avoid, &stat.tracked[0][..1], &[VarId::X], false, n).ok()?;
    let mono = patlab::Monomial::one().with(VarId::X, u8::try_from(k).ok()?);
    Some(BigRational::from_integer(series.coeff(n, &mono)))
}

fn cmd_coeff(id: &str, n: i64, k: i64, m: Option<i64>, format: Format) -> Outcome {
    let params = Params { m, a: None };
    let (form, m_value) = resolve(id, &params).map_err(classify)?;
    let value = closed_coeff(id, &CoeffQuery::new(n, k, params)).map_err(classify)?;
    if !form.trust().is_hard() {
        if let Some(truth) = oracle_coeff(form, m_value, n, k) {
            if truth != value {
                eprintln!(
                    "warning: {id} is report-only; brute force gives {} at n = {n}, k = {k}",
                    format_rational(&truth)
                );
            }
        }
    }
    let rendered = format_rational(&value);
    Ok(match format {
        Format::Text => format!("{rendered}\n"),
        Format::Csv => format!("id,n,k,value\n{id},{n},{k},{rendered}\n"),
        Format::Json => {
            #[derive(Serialize)]
            struct Coeff<'a> {
                id: &'a str,
                params: String,
                n: i64,
                k: i64,
                value: String,
            }
            to_json(&Coeff {
                id,
                params: params.to_string(),
                n,
                k,
                value: rendered,
            })
        }
    })
}

fn perm_arg(s: &str) -> Result<Permutation, Failure> {
    s.parse::<Permutation>().map_err(classify)
}

fn path_arg(s: &str) -> Result<DyckPath, Failure> {
    parse_path(s).map_err(classify)
}

/// φₙ⁻¹ by search: the map is a bijection S_n(312) → S_n(213).
fn phin_inverse(p: &Permutation) -> Result<Permutation, Failure> {
    if !p.avoids(&Pattern::classical("213").expect("literal")) {
        return Err(usage(format!("{p} contains the classical pattern 213")));
    }
    let from = Pattern::classical("312").expect("literal");
    for sigma in enumerate_avoiders(p.len(), &from).map_err(classify)? {
        if phi_n(&sigma).map_err(classify)? == *p {
            return Ok(sigma);
        }
    }
    Err(Failure::Compute(format!("no preimage found for {p}")))
}

fn cmd_bijection(
    map: Map,
    perm: Option<&str>,
    path: Option<&str>,
    inverse: bool,
    format: Format,
) -> Outcome {
    let (input, output) = match (map, inverse) {
        (Map::Phi | Map::Psi, false) => {
            let p = perm.ok_or_else(|| usage("--perm is required"))?;
            let sigma = perm_arg(p)?;
            let d = if map == Map::Phi {
                phi_map(&sigma)
            } else {
                psi_map(&sigma)
            }
            .map_err(classify)?;
            (sigma.to_string(), d.to_string())
        }
        (Map::Phi | Map::Psi, true) => {
            let w = path.ok_or_else(|| usage("--path is required with --inverse"))?;
            let d = path_arg(w)?;
            let sigma = if map == Map::Phi {
                phi_inverse(&d)
            } else {
                psi_inverse(&d)
            };
            (d.to_string(), sigma.to_string())
        }
        (Map::Phin, inv) => {
            let p = perm.ok_or_else(|| usage("--perm is required"))?;
            let sigma = perm_arg(p)?;
            let image = if inv {
                phin_inverse(&sigma)?
            } else {
                phi_n(&sigma).map_err(classify)?
            };
            (sigma.to_string(), image.to_string())
        }
    };
    Ok(match format {
        Format::Text => format!("{output}\n"),
        Format::Csv => format!("input,output\n{input},{output}\n"),
        Format::Json => {
            #[derive(Serialize)]
            struct Mapped {
                map: &'static str,
                inverse: bool,
                input: String,
                output: String,
            }
            let name = match map {
                Map::Phi => "phi",
                Map::Psi => "psi",
                Map::Phin => "phin",
            };
            to_json(&Mapped {
                map: name,
                inverse,
                input,
                output,
            })
        }
    })
}

/// Prints the summary; the exit status follows the aggregate.
fn cmd_verify(suite: &str, nmax: usize, report: Option<&PathBuf>) -> Result<(String, u8), Failure> {
    let suite: Suite = suite.parse().map_err(classify)?;
    let open_failure = |path: &PathBuf, e: std::io::Error| {
        Failure::Io(format!("cannot write {}: {e}", path.display()))
    };
    let mut file = report
        .map(|path| std::fs::File::create(path).map_err(|e| open_failure(path, e)))
        .transpose()?;
    let result = run_suite(suite, nmax).map_err(classify)?;
    let json = result.to_json();
    let mut out = String::new();
    match (report, file.as_mut()) {
        (Some(path), Some(file)) => {
            writeln!(file, "{json}").map_err(|e| open_failure(path, e))?;
            for c in &result.checks {
                if c.status != Status::Pass {
                    let _ = write!(out, "{}", c.id);
                    if !c.params.is_empty() {
                        let _ = write!(out, " [{}]", c.params);
                    }
                    let _ = write!(out, " {}", c.status);
                    if let Some(w) = &c.witness {
                        let _ = write!(
                            out,
                            " at n={} {}: expected {}, actual {}",
                            w.n, w.monomial, w.expected, w.actual
                        );
                    }
                    out.push('\n');
                }
            }
            let count = |st: Status| result.checks.iter().filter(|c| c.status == st).count();
            let _ = writeln!(
                out,
                "{suite} (n <= {nmax}): {} pass, {} fail, {} report-only; aggregate {}",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::ReportOnlyPass) + count(Status::ReportOnlyFail),
                if result.passed() { "pass" } else { "fail" }
            );
        }
        _ => out = format!("{json}\n"),
    }
    Ok((out, verify_status(&result)))
}

fn verify_status(report: &ConformanceReport) -> u8 {
    if report.passed() {
        0
    } else {
        1
    }
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let ok = |s: String| (s, 0);
    match cli.command {
        Command::Dist {
            avoid,
            track,
            n,
            set,
            format,
        } => cmd_dist(&avoid, &track, n, &set, format).map(ok),
        Command::Series {
            id,
            m,
            a,
            order,
            set,
            format,
        } => cmd_series(&id, Params { m, a }, order, &set, format).map(ok),
        Command::Coeff {
            id,
            n,
            k,
            m,
            format,
        } => cmd_coeff(&id, n, k, m, format).map(ok),
        Command::Bijection {
            map,
            perm,
            path,
            inverse,
            format,
        } => cmd_bijection(map, perm.as_deref(), path.as_deref(), inverse, format).map(ok),
        Command::Verify {
            suite,
            nmax,
            report,
        } => cmd_verify(&suite, nmax, report.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
