//! Work limits for the exhaustive operations.

use serde::Serialize;

use crate::error::{Error, Result};

pub const ENV_MAX_GRID_CELLS: &str = "SOREC_MAX_GRID_CELLS";
pub const ENV_MAX_SEQUENCE_TERMS: &str = "SOREC_MAX_SEQUENCE_TERMS";
pub const ENV_MAX_DEGREE: &str = "SOREC_MAX_DEGREE";

/// Upper bounds checked by every exhaustive operation before it starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WorkBudget {
    pub max_grid_cells: u64,
    pub max_sequence_terms: u64,
    pub max_degree: u64,
}

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget {
            max_grid_cells: 100_000_000,
            max_sequence_terms: 10_000,
            max_degree: 200,
        }
    }
}

impl WorkBudget {
    /// Defaults, overridden by any of the `SOREC_MAX_*` environment variables.
    pub fn from_env() -> Result<Self> {
        let mut budget = WorkBudget::default();
        for (var, slot) in [
            (ENV_MAX_GRID_CELLS, &mut budget.max_grid_cells),
            (ENV_MAX_SEQUENCE_TERMS, &mut budget.max_sequence_terms),
            (ENV_MAX_DEGREE, &mut budget.max_degree),
        ] {
            if let Ok(raw) = std::env::var(var) {
                *slot = match raw.trim().parse::<u64>() {
                    Ok(v) if v > 0 => v,
                    _ => {
                        return Err(Error::InvalidArgument(format!(
                            "{var} must be a positive integer, got {raw:?}"
                        )))
                    }
                };
            }
        }
        Ok(budget)
    }

    /// Checks a square grid of `side x side` cells.
    pub fn check_grid(&self, what: &'static str, side: u64) -> Result<()> {
        let cells = u128::from(side) * u128::from(side);
        check(what, cells, self.max_grid_cells)
    }

    /// Checks a linear scan of `len` cells against the grid allowance.
    pub fn check_cells(&self, what: &'static str, len: u64) -> Result<()> {
        check(what, u128::from(len), self.max_grid_cells)
    }

    pub fn check_terms(&self, what: &'static str, terms: u64) -> Result<()> {
        check(what, u128::from(terms), self.max_sequence_terms)
    }

    pub fn check_degree(&self, what: &'static str, degree: u64) -> Result<()> {
        check(what, u128::from(degree), self.max_degree)
    }
}

fn check(what: &'static str, requested: u128, limit: u64) -> Result<()> {
    if requested > u128::from(limit) {
        Err(Error::BudgetExceeded {
            what,
            requested,
            limit: u128::from(limit),
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_check_squares_the_side() {
        let budget = WorkBudget {
            max_grid_cells: 100,
            ..WorkBudget::default()
        };
        assert!(budget.check_grid("grid", 10).is_ok());
        assert!(matches!(
            budget.check_grid("grid", 11),
            Err(Error::BudgetExceeded { requested: 121, .. })
        ));
    }

    #[test]
    fn defaults() {
        let b = WorkBudget::default();
        assert_eq!(b.max_grid_cells, 100_000_000);
        assert_eq!(b.max_sequence_terms, 10_000);
        assert_eq!(b.max_degree, 200);
    }
}
