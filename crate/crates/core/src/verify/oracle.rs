//! Brute-force joint distributions over `S_n(λ)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::error::{invalid, Result};
use crate::limits::Limits;
use crate::perm::{Avoiders, Pattern, PatternKind, WindowMatcher};
use crate::poly::{Monomial, SparsePoly, TruncatedSeries, VarId};

/// The `t^n` coefficient of `Σ_σ y^des(σ) ∏ x_i^{γ_i-mch(σ)}` over `S_n(λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionSlice {
    pub n: usize,
    pub lambda: Pattern,
    pub tracked: Vec<Pattern>,
    /// Polynomial in `y` and `x1..x_s`.
    pub poly: SparsePoly,
}

type Key = (Vec<u8>, Vec<Vec<u8>>, usize);

fn cache() -> &'static RwLock<HashMap<Key, Arc<SparsePoly>>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, Arc<SparsePoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn validate(lambda: &Pattern, gamma: &[Pattern]) -> Result<()> {
    if lambda.kind() != PatternKind::Classical {
        return Err(invalid("the avoided pattern must be classical"));
    }
    if gamma.len() > 4 {
        return Err(invalid("at most four tracked patterns (x1..x4)"));
    }
    if gamma.iter().any(|g| g.kind() != PatternKind::Consecutive) {
        return Err(invalid("tracked patterns must be consecutive"));
    }
    Ok(())
}

fn compute(lambda: &Pattern, gamma: &[Pattern], n: usize) -> SparsePoly {
    let matchers: Vec<WindowMatcher> = gamma.iter().map(WindowMatcher::new).collect();
    let vars: Vec<VarId> = (1..=gamma.len())
        .map(|i| VarId::tracked(i).expect("at most four"))
        .collect();
    let mut counts: HashMap<Monomial, u64> = HashMap::new();
    for sigma in Avoiders::unchecked(n, lambda) {
        let w = sigma.entries();
        let des = w.windows(2).filter(|p| p[0] > p[1]).count();
        let mut m = Monomial::one().with(VarId::Y, des as u8);
        for (v, mt) in vars.iter().zip(&matchers) {
            m = m.with(*v, mt.count(w) as u8);
        }
        *counts.entry(m).or_insert(0) += 1;
    }
    SparsePoly::from_terms(counts.into_iter().map(|(m, c)| (m, BigInt::from(c))))
}

/// `brute_distribution(λ, Γ, n)` under the default caps.
pub fn brute_distribution(
    lambda: &Pattern,
    gamma: &[Pattern],
    n: usize,
) -> Result<DistributionSlice> {
    brute_distribution_with(lambda, gamma, n, &Limits::from_env())
}

pub fn brute_distribution_with(
    lambda: &Pattern,
    gamma: &[Pattern],
    n: usize,
    limits: &Limits,
) -> Result<DistributionSlice> {
    validate(lambda, gamma)?;
    limits.check_distribution(n)?;
    Ok(DistributionSlice {
        n,
        lambda: lambda.clone(),
        tracked: gamma.to_vec(),
        poly: (*slice_poly(lambda, gamma, n)).clone(),
    })
}

/// Cached polynomial of one slice; callers have validated the inputs.
pub(crate) fn slice_poly(lambda: &Pattern, gamma: &[Pattern], n: usize) -> Arc<SparsePoly> {
    let key: Key = (
        lambda.body().entries().to_vec(),
        gamma.iter().map(|g| g.body().entries().to_vec()).collect(),
        n,
    );
    if let Some(p) = cache().read().expect("cache lock").get(&key) {
        return Arc::clone(p);
    }
    let p = Arc::new(compute(lambda, gamma, n));
    cache()
        .write()
        .expect("cache lock")
        .entry(key)
        .or_insert(p)
        .clone()
}

/// The oracle as a series `Σ_{n ≤ order} slice_n t^n`, with `x_i` renamed to
/// `vars[i]` and `y` set to 1 unless `descents`.
pub fn oracle_series(
    lambda: &Pattern,
    gamma: &[Pattern],
    vars: &[VarId],
    descents: bool,
    order: usize,
) -> Result<TruncatedSeries> {
    validate(lambda, gamma)?;
    Limits::from_env().check_distribution(order)?;
    let mut renames: Vec<(VarId, SparsePoly)> = (1..=gamma.len())
        .zip(vars)
        .map(|(i, v)| {
            (
                VarId::tracked(i).expect("at most four"),
                SparsePoly::var(*v),
            )
        })
        .collect();
    if !descents {
        renames.push((VarId::Y, SparsePoly::one()));
    }
    let slices = (0..=order)
        .map(|n| slice_poly(lambda, gamma, n).substitute(&renames))
        .collect();
    TruncatedSeries::from_slices(slices, order)
}
