//! Enumeration and truncation caps.

use crate::error::{Error, Result};

/// Environment variable that may lower (never raise) the enumeration caps.
pub const NMAX_CAP_ENV: &str = "PATLAB_NMAX_CAP";

/// Default largest `n` for avoider and path enumeration.
pub const DEFAULT_ENUMERATION_MAX: usize = 14;
/// Default largest `n` for brute-force joint distributions.
pub const DEFAULT_DISTRIBUTION_MAX: usize = 12;
/// Default truncation order for solved series.
pub const DEFAULT_ORDER: usize = 10;
/// Hard cap on truncation order.
pub const MAX_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub enumeration_max: usize,
    pub distribution_max: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_max: DEFAULT_ENUMERATION_MAX,
            distribution_max: DEFAULT_DISTRIBUTION_MAX,
        }
    }
}

impl Limits {
    /// Defaults, lowered by `PATLAB_NMAX_CAP` when it is set to a smaller integer.
    pub fn from_env() -> Self {
        let cap = std::env::var(NMAX_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok());
        Limits::default().lowered(cap)
    }

    pub fn lowered(self, cap: Option<usize>) -> Self {
        match cap {
            Some(c) => Limits {
                enumeration_max: self.enumeration_max.min(c),
                distribution_max: self.distribution_max.min(c),
            },
            None => self,
        }
    }

    pub fn check_enumeration(&self, n: usize) -> Result<()> {
        if n > self.enumeration_max {
            return Err(Error::ResourceLimit {
                requested: n,
                cap: self.enumeration_max,
            });
        }
        Ok(())
    }

    pub fn check_distribution(&self, n: usize) -> Result<()> {
        if n > self.distribution_max {
            return Err(Error::ResourceLimit {
                requested: n,
                cap: self.distribution_max,
            });
        }
        Ok(())
    }
}
