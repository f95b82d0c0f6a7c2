//! Enumeration limits.
//!
//! Every exhaustive search in the crate (hom enumeration, subgroup lattices,
//! simplicial kernels, chain-map search) refuses to start when its search
//! space exceeds the active [`Budget`]. The process-wide budget comes from
//! `MOORE_KIT_BUDGET` when set, otherwise from [`Budget::default`].

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const ENV_VAR: &str = "MOORE_KIT_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest source order accepted by hom enumeration.
    pub max_order: usize,
    /// Largest number of candidate assignments a search may visit.
    pub max_candidates: u128,
    /// Largest group materialized by a simplicial-kernel extension.
    pub max_group: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_order: 24, max_candidates: 10_000_000, max_group: 100_000 }
    }
}

impl Budget {
    /// Parses `max_order[:max_candidates[:max_group]]`.
    pub fn parse(spec: &str) -> Result<Budget> {
        let mut budget = Budget::default();
        let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
        let bad = || Error::Document(format!("bad {ENV_VAR} value {spec:?}"));
        if parts.is_empty() || parts.len() > 3 {
            return Err(bad());
        }
        budget.max_order = parts[0].parse().map_err(|_| bad())?;
        if let Some(p) = parts.get(1) {
            budget.max_candidates = p.parse().map_err(|_| bad())?;
        }
        if let Some(p) = parts.get(2) {
            budget.max_group = p.parse().map_err(|_| bad())?;
        }
        Ok(budget)
    }

    pub fn check_candidates(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.max_candidates {
            return Err(Error::BudgetExceeded {
                what: what.to_string(),
                needed,
                limit: self.max_candidates,
            });
        }
        Ok(())
    }

    pub fn check_order(&self, what: &str, order: usize) -> Result<()> {
        if order > self.max_order {
            return Err(Error::BudgetExceeded {
                what: what.to_string(),
                needed: order as u128,
                limit: self.max_order as u128,
            });
        }
        Ok(())
    }
}

/// The process-wide budget.
pub fn current() -> &'static Budget {
    static CURRENT: OnceLock<Budget> = OnceLock::new();
    CURRENT.get_or_init(|| {
        std::env::var(ENV_VAR)
            .ok()
            .and_then(|v| Budget::parse(&v).ok())
            .unwrap_or_default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(Budget::parse("30").unwrap().max_order, 30);
        let b = Budget::parse("12:500:64").unwrap();
        assert_eq!((b.max_order, b.max_candidates, b.max_group), (12, 500, 64));
        assert!(Budget::parse("x").is_err());
        assert!(Budget::parse("1:2:3:4").is_err());
    }
}
