//! Exact multivariate polynomials and t-truncated power series.

mod binom;
pub mod expr;
mod series;
mod solve;
mod sparse;

use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

pub use binom::{binomial, gen_binom, multinom};
pub use series::TruncatedSeries;
pub use solve::{fixed_point_solve, Equation};
pub use sparse::SparsePoly;

/// Variables in canonical key order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarId {
    T,
    Y,
    X,
    X1,
    X2,
    X3,
    X4,
}

impl VarId {
    pub const ALL: [VarId; 7] = [
        VarId::T,
        VarId::Y,
        VarId::X,
        VarId::X1,
        VarId::X2,
        VarId::X3,
        VarId::X4,
    ];

    /// The i-th tracked-pattern variable, `i` in 1..=4.
    pub fn tracked(i: usize) -> Option<VarId> {
        match i {
            1 => Some(VarId::X1),
            2 => Some(VarId::X2),
            3 => Some(VarId::X3),
            4 => Some(VarId::X4),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            VarId::T => "t",
            VarId::Y => "y",
            VarId::X => "x",
            VarId::X1 => "x1",
            VarId::X2 => "x2",
            VarId::X3 => "x3",
            VarId::X4 => "x4",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VarId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "t" => Ok(VarId::T),
            "y" => Ok(VarId::Y),
            "x" => Ok(VarId::X),
            "x1" | "x_1" => Ok(VarId::X1),
            "x2" | "x_2" => Ok(VarId::X2),
            "x3" | "x_3" => Ok(VarId::X3),
            "x4" | "x_4" => Ok(VarId::X4),
            other => Err(invalid(format!("unknown variable `{other}`"))),
        }
    }
}

/// Exponent vector indexed by [`VarId`]; the derived order is the canonical key order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    exps: [u8; 7],
}

/// Order in which variables are printed inside a monomial.
const PRINT_ORDER: [VarId; 7] = [
    VarId::X,
    VarId::X1,
    VarId::X2,
    VarId::X3,
    VarId::X4,
    VarId::Y,
    VarId::T,
];

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial::one().with(v, 1)
    }

    pub fn with(mut self, v: VarId, e: u8) -> Self {
        self.exps[v.index()] = e;
        self
    }

    pub fn degree(&self, v: VarId) -> u8 {
        self.exps[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps) {
            *e = e.checked_add(o).expect("monomial exponent overflow");
        }
        Monomial { exps }
    }

    /// `self / other` when every exponent stays non-negative.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps) {
            *e = e.checked_sub(o)?;
        }
        Some(Monomial { exps })
    }

    /// Drops the t exponent.
    pub fn without_t(mut self) -> Monomial {
        self.exps[VarId::T.index()] = 0;
        self
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in PRINT_ORDER {
            let e = self.degree(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses the rendering produced by `Display`, e.g. `x2*y^2` or `1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        let mut m = Monomial::one();
        for factor in s.split('*') {
            let (name, e) = match factor.split_once('^') {
                Some((name, e)) => (
                    name,
                    e.parse::<u8>()
                        .map_err(|_| invalid(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let v: VarId = name.parse()?;
            m = m.mul(&Monomial::var(v).with(v, e));
        }
        Ok(m)
    }
}
