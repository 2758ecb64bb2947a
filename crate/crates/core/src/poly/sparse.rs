use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Monomial, VarId};
use crate::error::{invalid, Result};

/// Polynomial with arbitrary-precision integer coefficients; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly::default()
    }

    pub fn one() -> Self {
        SparsePoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        SparsePoly::term(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        SparsePoly::term(Monomial::var(v), 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = SparsePoly::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = SparsePoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// In-place `self += other`.
    pub fn absorb(&mut self, other: SparsePoly) {
        if self.is_zero() {
            *self = other;
            return;
        }
        for (m, c) in other.terms {
            self.add_term(m, c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical key order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn degree(&self, v: VarId) -> u8 {
        self.terms.keys().map(|m| m.degree(v)).max().unwrap_or(0)
    }

    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scale(&self, c: &BigInt) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero();
        }
        SparsePoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> SparsePoly {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    /// Exact division by a single monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<SparsePoly> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(k.checked_div(m)?, v.clone());
        }
        Some(SparsePoly { terms })
    }

    /// Product keeping only monomials whose t-degree is at most `max_t`.
    pub fn mul_truncated(&self, other: &SparsePoly, max_t: Option<u8>) -> SparsePoly {
        if self.is_zero() || other.is_zero() {
            return SparsePoly::zero();
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.len().max(other.len()) * 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(limit) = max_t {
                    if ma.degree(VarId::T) + mb.degree(VarId::T) > limit {
                        continue;
                    }
                }
                let m = ma.mul(mb);
                match acc.get_mut(&m) {
                    Some(c) => *c += ca * cb,
                    None => {
                        acc.insert(m, ca * cb);
                    }
                }
            }
        }
        SparsePoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut result = SparsePoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces each assigned variable by a polynomial.
    pub fn substitute(&self, assignments: &[(VarId, SparsePoly)]) -> SparsePoly {
        if assignments.is_empty() {
            return self.clone();
        }
        let mut powers: HashMap<(VarId, u8), SparsePoly> = HashMap::new();
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let mut factor = SparsePoly::constant(c.clone());
            for (v, value) in assignments {
                let e = m.degree(*v);
                rest = rest.with(*v, 0);
                if e == 0 {
                    continue;
                }
                let pw = powers
                    .entry((*v, e))
                    .or_insert_with(|| value.pow(e as u32))
                    .clone();
                factor = &factor * &pw;
            }
            out.absorb(factor.mul_monomial(&rest));
        }
        out
    }

    /// Per-slice reflection `y^d ↦ y^{n-1-d}`.
    pub fn y_reverse(&self, n: usize) -> Result<SparsePoly> {
        if n == 0 {
            return Ok(self.clone());
        }
        let top = n - 1;
        let mut out = SparsePoly::zero();
        for (m, c) in &self.terms {
            let d = m.degree(VarId::Y) as usize;
            if d > top {
                return Err(invalid(format!(
                    "y-degree {d} exceeds n-1 = {top} in y_reverse"
                )));
            }
            out.add_term(m.with(VarId::Y, (top - d) as u8), c.clone());
        }
        Ok(out)
    }

    /// Splits off the t-grading: entry `k` is the coefficient of `t^k`.
    pub fn t_slices(&self) -> BTreeMap<u8, SparsePoly> {
        let mut out: BTreeMap<u8, SparsePoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree(VarId::T))
                .or_default()
                .terms
                .insert(m.without_t(), c.clone());
        }
        out
    }

    pub fn has_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.degree(v) > 0)
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;

    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let (big, small) = if self.len() >= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;

    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;

    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.mul_truncated(rhs, None)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Renders `terms` (already t-free) as a signed sum; `tight` drops the spaces.
pub(crate) fn render_sum<'a>(
    terms: impl Iterator<Item = (&'a Monomial, &'a BigInt)>,
    tight: bool,
) -> String {
    let mut s = String::new();
    for (i, (m, c)) in terms.enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else if tight {
            s.push(if neg { '-' } else { '+' });
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if m.is_one() {
            s.push_str(&mag.to_string());
        } else if mag.is_one() {
            s.push_str(&m.to_string());
        } else {
            s.push_str(&format!("{mag}*{m}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn t_power(k: u8) -> String {
    if k == 1 {
        "t".to_string()
    } else {
        format!("t^{k}")
    }
}

/// Series-style rendering grouped by t-degree, e.g. `1 + t + (4+x)*t^3`.
pub(crate) fn render_grouped(slices: impl Iterator<Item = (u8, SparsePoly)>) -> String {
    let mut s = String::new();
    for (k, slice) in slices {
        if slice.is_zero() {
            continue;
        }
        if k == 0 {
            s.push_str(&render_sum(slice.terms(), false));
            continue;
        }
        let (neg, body) = if slice.len() == 1 {
            let (m, c) = slice.terms().next().unwrap();
            let mag = c.abs();
            let body = match (m.is_one(), mag.is_one()) {
                (true, true) => t_power(k),
                (true, false) => format!("{mag}*{}", t_power(k)),
                (false, true) => format!("{m}*{}", t_power(k)),
                (false, false) => format!("{mag}*{m}*{}", t_power(k)),
            };
            (c.is_negative(), body)
        } else {
            (
                false,
                format!("({})*{}", render_sum(slice.terms(), true), t_power(k)),
            )
        };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        s.push_str(&body);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let slices = self.t_slices();
        if slices.keys().all(|&k| k == 0) {
            return f.write_str(&render_sum(self.terms(), false));
        }
        f.write_str(&render_grouped(slices.into_iter()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: VarId) -> SparsePoly {
        SparsePoly::var(x)
    }

    #[test]
    fn arithmetic() {
        let one = SparsePoly::one();
        let t = v(VarId::T);
        let p = (&one + &t) * (&one - &t);
        assert_eq!(p.to_string(), "1 - t^2");
        let q = &(&one + &t) * &v(VarId::Y);
        assert_eq!(
            q.pow(2).coeff(&Monomial::var(VarId::Y).with(VarId::Y, 2)),
            BigInt::from(1)
        );
    }

    #[test]
    fn rendering() {
        let t = v(VarId::T);
        let x = v(VarId::X);
        let c = |k: i64| SparsePoly::constant(k);
        let p = &(&(&c(1) + &t) + &(&c(2) * &t.pow(2))) + &(&(&c(4) + &x) * &t.pow(3));
        assert_eq!(p.to_string(), "1 + t + 2*t^2 + (4+x)*t^3");
        let q = &(&c(8) + &(&c(6) * &x)) * &t.pow(4);
        assert_eq!(q.to_string(), "(8+6*x)*t^4");
        let slice = &(&v(VarId::X1) + &(&v(VarId::X2) * &v(VarId::Y))) + &v(VarId::Y);
        assert_eq!(slice.to_string(), "x1 + y + x2*y");
        assert_eq!(SparsePoly::zero().to_string(), "0");
        assert_eq!((-&t).to_string(), "-t");
    }

    #[test]
    fn y_reverse_examples() {
        let y2 = v(VarId::Y).pow(2);
        assert!(y2.y_reverse(3).unwrap().is_one());
        assert_eq!(SparsePoly::one().y_reverse(3).unwrap(), y2);
        assert!(y2.y_reverse(2).is_err());
        assert_eq!(y2.y_reverse(0).unwrap(), y2);
    }

    #[test]
    fn substitution() {
        let x = v(VarId::X);
        let y = v(VarId::Y);
        let p = &(&x * &y) + &SparsePoly::constant(3);
        let r = p.substitute(&[(VarId::X, SparsePoly::zero())]);
        assert_eq!(r, SparsePoly::constant(3));
        let r = p.substitute(&[(VarId::Y, &x + &SparsePoly::one())]);
        assert_eq!(r.to_string(), "3 + x + x^2");
    }

    #[test]
    fn monomial_text_round_trip() {
        for s in ["1", "x", "x2*y^2", "x*x1*x4^3*y*t^2"] {
            let m: Monomial = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
        }
    }
}
