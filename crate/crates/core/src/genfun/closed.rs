//! Closed-form coefficient formulas for the single-pattern families,
//! evaluated verbatim with exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::catalog::{CatalogEntry, Domain, EntryKind, Params, Trust};
use super::sequences::catalan;
use crate::error::{invalid, Error, Result};
use crate::poly::{binomial, gen_binom, multinom};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClosedForm {
    /// `[t^n x^k]` of the family `fam_123_1m2` (multinomial sum, prefactor `1/k`).
    Cf123_1m2,
    /// `[t^n x^k]` of `fam_123_2m31` (generalized binomials).
    Cf123_2m31,
    /// `[t^n x^k]` of `fam_132_1m` (double sum, prefactor `1/(n+1)`).
    Cf132_1m,
    /// The same Lagrange extraction with `(1 - z^{m-1})^{n+1-i}` expanded
    /// binomially: factor `binom(n+1-i, j)` and sign `(-1)^j`.
    Cf132_1mDerived,
    /// `[t^n x^k]` of `fam_132_2m1` (generalized binomials).
    Cf132_2m1,
}

impl ClosedForm {
    pub fn id(self) -> &'static str {
        match self {
            ClosedForm::Cf123_1m2 => "cf_123_1m2",
            ClosedForm::Cf123_2m31 => "cf_123_2m31",
            ClosedForm::Cf132_1m => "cf_132_1m",
            ClosedForm::Cf132_1mDerived => "cf_132_1m_derived",
            ClosedForm::Cf132_2m1 => "cf_132_2m1",
        }
    }

    /// The recursion system whose coefficients the formula claims to give.
    pub fn family(self) -> &'static str {
        match self {
            ClosedForm::Cf123_1m2 => "fam_123_1m2",
            ClosedForm::Cf123_2m31 => "fam_123_2m31",
            ClosedForm::Cf132_1m | ClosedForm::Cf132_1mDerived => "fam_132_1m",
            ClosedForm::Cf132_2m1 => "fam_132_2m1",
        }
    }

    pub fn trust(self) -> Trust {
        match self {
            ClosedForm::Cf123_1m2 | ClosedForm::Cf132_1mDerived => Trust::HardPass,
            ClosedForm::Cf123_2m31 | ClosedForm::Cf132_1m | ClosedForm::Cf132_2m1 => {
                Trust::ReportOnly
            }
        }
    }

    fn min_m(self) -> i64 {
        2
    }

    pub const ALL: [ClosedForm; 5] = [
        ClosedForm::Cf123_1m2,
        ClosedForm::Cf123_2m31,
        ClosedForm::Cf132_1m,
        ClosedForm::Cf132_1mDerived,
        ClosedForm::Cf132_2m1,
    ];
}

/// Length-3 specializations of the families.
pub const ALIASES: [(&str, ClosedForm); 4] = [
    ("thm1eq", ClosedForm::Cf123_1m2),
    ("thm2eq", ClosedForm::Cf123_2m31),
    ("thm4eq", ClosedForm::Cf132_1m),
    ("thm5eq", ClosedForm::Cf132_2m1),
];

/// Resolves an id (family or alias) to a formula and its `m`.
pub fn resolve(id: &str, params: &Params) -> Result<(ClosedForm, i64)> {
    if let Some((_, cf)) = ALIASES.iter().find(|(a, _)| *a == id) {
        if params.m.is_some_and(|m| m != 3) || params.a.is_some() {
            return Err(invalid(format!("{id} fixes m = 3")));
        }
        return Ok((*cf, 3));
    }
    let cf = ClosedForm::ALL
        .into_iter()
        .find(|c| c.id() == id)
        .ok_or_else(|| invalid(format!("unknown closed form `{id}`")))?;
    Domain::M { min: cf.min_m() }.check(id, params)?;
    Ok((cf, params.m.expect("checked")))
}

pub(crate) fn entries() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = ClosedForm::ALL
        .iter()
        .map(|cf| CatalogEntry {
            id: cf.id(),
            kind: EntryKind::ClosedForm,
            domain: Domain::M { min: cf.min_m() },
            anchor: cf.family(),
            trust: cf.trust(),
        })
        .collect();
    out.extend(ALIASES.iter().map(|(alias, cf)| CatalogEntry {
        id: alias,
        kind: EntryKind::ClosedForm,
        domain: Domain::Fixed,
        anchor: cf.id(),
        trust: cf.trust(),
    }));
    out
}

/// Coefficient index `[t^n x^k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoeffQuery {
    pub n: i64,
    pub k: i64,
    pub params: Params,
}

impl CoeffQuery {
    pub fn new(n: i64, k: i64, params: Params) -> Self {
        CoeffQuery { n, k, params }
    }
}

fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn ratio(num: BigInt, den: i64) -> BigRational {
    BigRational::new(num, BigInt::from(den))
}

/// Evaluates a formula exactly as written.
pub fn evaluate(cf: ClosedForm, n: i64, k: i64, m: i64) -> Result<BigRational> {
    if n < 0 || k < 0 {
        return Err(invalid("coefficient indices must be non-negative"));
    }
    match cf {
        ClosedForm::Cf123_1m2 => {
            if k == 0 {
                return Err(Error::UnsupportedIndex(
                    "k = 0 is undefined for the 1/k prefactor; use C_n minus the k >= 1 coefficients"
                        .into(),
                ));
            }
            let mut s = BigInt::zero();
            for i in k..=n / m {
                s += sign(i - k) * multinom(2 * n - m * i, &[n - m * i, n + 1 - i, k - 1, i - k]);
            }
            Ok(ratio(s, k))
        }
        ClosedForm::Cf123_2m31 => {
            if n == 0 {
                return Err(Error::UnsupportedIndex(
                    "the 1/n prefactor needs n >= 1".into(),
                ));
            }
            let mut s = BigInt::zero();
            for i in 0..=(m * n - 1) / (m + 2) {
                s += sign(m * n + n + k + 1)
                    * binomial(n, i)
                    * gen_binom(m * n - m * i - 2 * n + i, m * n - 1)
                    * gen_binom(m * n - m * i - n + i, k);
            }
            Ok(ratio(s, n))
        }
        ClosedForm::Cf132_1m => {
            let mut s = BigInt::zero();
            for i in 0..=n / (m - 1) {
                for j in 0..=n + 1 - i {
                    s += sign(m * j - j)
                        * binomial(n + 1, i)
                        * binomial(i + k - 1, k)
                        * binomial(2 * n - m * i - m * j + j - k, n - i);
                }
            }
            Ok(ratio(s, n + 1))
        }
        ClosedForm::Cf132_1mDerived => {
            let mut s = BigInt::zero();
            for i in 0..=n / (m - 1) {
                for j in 0..=n + 1 - i {
                    s += sign(j)
                        * binomial(n + 1, i)
                        * binomial(n + 1 - i, j)
                        * binomial(i + k - 1, k)
                        * binomial(2 * n - m * i - m * j + j - k, n - i);
                }
            }
            Ok(ratio(s, n + 1))
        }
        ClosedForm::Cf132_2m1 => {
            if n == 0 {
                return Err(Error::UnsupportedIndex(
                    "the 1/n prefactor needs n >= 1".into(),
                ));
            }
            let mut s = BigInt::zero();
            for i in 0..=n - k {
                s += sign(m * k + k + i + n + 1) * gen_binom(m * i - i - n, n + 1 - m * k - k);
            }
            Ok(ratio(binomial(n, k) * s, n))
        }
    }
}

/// `closed_coeff(id, q)`: the verbatim formula value.
pub fn closed_coeff(id: &str, q: &CoeffQuery) -> Result<BigRational> {
    let (cf, m) = resolve(id, &q.params)?;
    evaluate(cf, q.n, q.k, m)
}

/// Row of values for `k = 1..=n`, with `k = 0` obtained as `C_n` minus their sum.
pub fn coefficient_row(cf: ClosedForm, n: i64, m: i64) -> Result<Vec<BigRational>> {
    let mut row = vec![BigRational::zero()];
    for k in 1..=n {
        row.push(evaluate(cf, n, k, m)?);
    }
    let total: BigRational = row.iter().sum();
    row[0] = BigRational::from_integer(catalan(n as usize)) - total;
    Ok(row)
}

/// `p` or `p/q` in lowest terms.
pub fn format_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        let (p, q) = (v.numer(), v.denom());
        if q.is_negative() {
            format!("{}/{}", -p, -q)
        } else {
            format!("{p}/{q}")
        }
    }
}
