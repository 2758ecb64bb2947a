use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::sparse::render_grouped;
use super::{Monomial, SparsePoly, VarId};
use crate::error::{invalid, Error, Result};

/// A power series in `t` known up to `t^order`; slice `k` holds the t-free
/// coefficient of `t^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    slices: Vec<SparsePoly>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            slices: vec![SparsePoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::constant(SparsePoly::one(), order)
    }

    /// A t-free polynomial viewed as a series.
    pub fn constant(c: SparsePoly, order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        s.slices[0] = c;
        s
    }

    pub fn t(order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        if order >= 1 {
            s.slices[1] = SparsePoly::one();
        }
        s
    }

    /// Truncates a polynomial that may contain `t`.
    pub fn from_poly(p: &SparsePoly, order: usize) -> Self {
        let mut s = TruncatedSeries::zero(order);
        for (k, slice) in p.t_slices() {
            if (k as usize) <= order {
                s.slices[k as usize] = slice;
            }
        }
        s
    }

    /// The series from explicit slices; `slices[k]` must be t-free.
    pub fn from_slices(mut slices: Vec<SparsePoly>, order: usize) -> Result<Self> {
        if slices.iter().any(|s| s.has_var(VarId::T)) {
            return Err(invalid("series slices must not contain t"));
        }
        slices.resize(order + 1, SparsePoly::zero());
        slices.truncate(order + 1);
        Ok(TruncatedSeries { order, slices })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn slice(&self, k: usize) -> &SparsePoly {
        &self.slices[k]
    }

    pub fn slices(&self) -> &[SparsePoly] {
        &self.slices
    }

    /// Coefficient of `t^k · m` where `m` is t-free.
    pub fn coeff(&self, k: usize, m: &Monomial) -> BigInt {
        self.slices.get(k).map(|s| s.coeff(m)).unwrap_or_default()
    }

    /// Flattens back into a polynomial containing `t`.
    pub fn to_poly(&self) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (k, s) in self.slices.iter().enumerate() {
            let tk = Monomial::var(VarId::T).with(VarId::T, k as u8);
            out = &out + &s.mul_monomial(&tk);
        }
        out
    }

    /// Drops coefficients above `order` (no effect when `order` is not smaller).
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TruncatedSeries {
            order,
            slices: self.slices[..=order].to_vec(),
        }
    }

    /// Claims zeros up to a larger order; valid for polynomials or as a solver seed.
    pub fn padded(&self, order: usize) -> Self {
        let mut slices = self.slices.clone();
        slices.resize(order + 1, SparsePoly::zero());
        slices.truncate(order + 1);
        TruncatedSeries { order, slices }
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(SparsePoly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        TruncatedSeries {
            order,
            slices: (0..=order)
                .map(|k| &self.slices[k] + &other.slices[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        TruncatedSeries {
            order,
            slices: (0..=order)
                .map(|k| &self.slices[k] - &other.slices[k])
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            order: self.order,
            slices: self.slices.iter().map(|s| -s).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        TruncatedSeries {
            order: self.order,
            slices: self.slices.iter().map(|s| s.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut slices = vec![SparsePoly::zero(); order + 1];
        for i in 0..=order {
            if self.slices[i].is_zero() {
                continue;
            }
            for j in 0..=order - i {
                if other.slices[j].is_zero() {
                    continue;
                }
                slices[i + j].absorb(&self.slices[i] * &other.slices[j]);
            }
        }
        TruncatedSeries { order, slices }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut slices = vec![SparsePoly::zero(); self.order + 1];
        for i in 0..=self.order {
            if i + k <= self.order {
                slices[i + k] = self.slices[i].clone();
            }
        }
        TruncatedSeries {
            order: self.order,
            slices,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = TruncatedSeries::one(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// `1/self`, defined when the constant slice is exactly `1` or `-1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.slices[0]
            .constant_value()
            .filter(|c| c.is_one() || (-c).is_one())
            .ok_or_else(|| {
                Error::NonInvertible(format!("constant term {} is not a unit", self.slices[0]))
            })?;
        let order = self.order;
        let mut inv: Vec<SparsePoly> = Vec::with_capacity(order + 1);
        inv.push(SparsePoly::constant(c0.clone()));
        for k in 1..=order {
            let mut acc = SparsePoly::zero();
            for i in 1..=k {
                if self.slices[i].is_zero() || inv[k - i].is_zero() {
                    continue;
                }
                acc.absorb(&self.slices[i] * &inv[k - i]);
            }
            inv.push((-&acc).scale(&c0));
        }
        Ok(TruncatedSeries { order, slices: inv })
    }

    /// `self / den` for a unit denominator.
    pub fn div_unit(&self, den: &Self) -> Result<Self> {
        let order = self.order.min(den.order);
        let den = den.truncate(order);
        Ok(self.truncate(order).mul(&den.inverse()?))
    }

    /// Exact division by a t-free monomial with coefficient ±1.
    pub fn div_monomial(&self, m: &Monomial, sign: &BigInt) -> Result<Self> {
        let slices = self
            .slices
            .iter()
            .map(|s| {
                s.div_monomial(m)
                    .map(|q| q.scale(sign))
                    .ok_or_else(|| Error::NonInvertible(format!("{s} is not divisible by {m}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries {
            order: self.order,
            slices,
        })
    }

    /// Division by a unit series or by a single t-free monomial.
    pub fn div(&self, den: &Self) -> Result<Self> {
        if let Some((m, c)) = single_term(den) {
            if !m.is_one() && (c.is_one() || (-&c).is_one()) {
                return self.truncate(den.order).div_monomial(&m, &c);
            }
        }
        self.div_unit(den)
    }

    /// Evaluates non-t variables; t may not be substituted.
    pub fn substitute(&self, assignments: &[(VarId, SparsePoly)]) -> Result<Self> {
        if assignments.iter().any(|(v, _)| *v == VarId::T) {
            return Err(invalid(
                "t is the truncation variable and cannot be substituted",
            ));
        }
        if assignments.iter().any(|(_, p)| p.has_var(VarId::T)) {
            return Err(invalid("substituted values must not contain t"));
        }
        Ok(TruncatedSeries {
            order: self.order,
            slices: self
                .slices
                .iter()
                .map(|s| s.substitute(assignments))
                .collect(),
        })
    }

    /// Same, with integer values.
    pub fn substitute_ints(&self, assignments: &[(VarId, i64)]) -> Result<Self> {
        let a: Vec<(VarId, SparsePoly)> = assignments
            .iter()
            .map(|(v, c)| (*v, SparsePoly::constant(*c)))
            .collect();
        self.substitute(&a)
    }

    /// First t-degree where the two series differ (up to the common order).
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let order = self.order.min(other.order);
        (0..=order).find(|&k| self.slices[k] != other.slices[k])
    }

    /// Agreement up to the common order.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    /// Coefficients of a series with only `t` (after substitution) as integers.
    pub fn univariate(&self) -> Option<Vec<BigInt>> {
        self.slices.iter().map(SparsePoly::constant_value).collect()
    }
}

fn single_term(s: &TruncatedSeries) -> Option<(Monomial, BigInt)> {
    let mut found = None;
    for (k, slice) in s.slices.iter().enumerate() {
        if slice.is_zero() {
            continue;
        }
        if k > 0 || slice.len() != 1 || found.is_some() {
            return None;
        }
        let (m, c) = slice.terms().next().unwrap();
        found = Some((*m, c.clone()));
    }
    found
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_grouped(
            self.slices
                .iter()
                .enumerate()
                .map(|(k, s)| (k as u8, s.clone())),
        ))
    }
}

impl Default for TruncatedSeries {
    fn default() -> Self {
        TruncatedSeries::zero(0)
    }
}
