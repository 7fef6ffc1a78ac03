use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Resource ceiling for enumeration-heavy searches.
///
/// Exhaustive operations check the number of candidate sets against
/// `max_subsets` up front where the count is known, and meter elapsed wall
/// time as they run. Budgets are always explicit values; nothing in the crate
/// reads the environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of candidate subsets an operation may visit.
    pub max_subsets: u64,
    /// Wall-clock guard; `None` disables the time check.
    pub max_wall: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_subsets: 10_000_000,
            max_wall: Some(Duration::from_secs(600)),
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_subsets: u64::MAX,
            max_wall: None,
        }
    }

    pub fn with_max_subsets(self, max_subsets: u64) -> Self {
        Budget {
            max_subsets,
            ..self
        }
    }

    /// Errors out early when a search would visit more than `count` subsets.
    pub fn admit(&self, count: u64, what: &str) -> Result<()> {
        if count > self.max_subsets {
            return Err(Error::BudgetExceeded(format!(
                "{what} needs {count} subsets, budget allows {}",
                self.max_subsets
            )));
        }
        Ok(())
    }

    pub fn start(&self) -> BudgetMeter {
        BudgetMeter {
            budget: *self,
            started: Instant::now(),
            visited: 0,
        }
    }
}

/// Running meter for a single search. `charge` is called in batches from the
/// enumeration inner loops; the wall clock is only sampled once per batch.
#[derive(Debug, Clone)]
pub struct BudgetMeter {
    budget: Budget,
    started: Instant,
    visited: u64,
}

impl BudgetMeter {
    pub fn charge(&mut self, subsets: u64) -> Result<()> {
        self.visited = self.visited.saturating_add(subsets);
        if self.visited > self.budget.max_subsets {
            return Err(Error::BudgetExceeded(format!(
                "visited {} subsets, budget allows {}",
                self.visited, self.budget.max_subsets
            )));
        }
        if let Some(limit) = self.budget.max_wall {
            let elapsed = self.started.elapsed();
            if elapsed > limit {
                return Err(Error::BudgetExceeded(format!(
                    "ran for {:.1}s, wall guard is {:.1}s",
                    elapsed.as_secs_f64(),
                    limit.as_secs_f64()
                )));
            }
        }
        Ok(())
    }

    pub fn visited(&self) -> u64 {
        self.visited
    }
}

/// `C(n, k)` clamped to `cap`. Used to decide whether an exhaustive pass fits
/// a budget without overflowing on large edge counts.
pub(crate) fn binomial_capped(n: u64, k: u64, cap: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 {
            return cap.saturating_add(1);
        }
    }
    acc as u64
}

/// Sum of `C(n, j)` for `j <= k`, clamped to `cap`.
pub(crate) fn binomial_sum_capped(n: u64, k: u64, cap: u64) -> u64 {
    let mut total: u64 = 0;
    for j in 0..=k.min(n) {
        total = total.saturating_add(binomial_capped(n, j, cap));
        if total > cap {
            return cap.saturating_add(1);
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial_capped(4, 2, u64::MAX - 1), 6);
        assert_eq!(binomial_capped(12, 3, u64::MAX - 1), 220);
        assert_eq!(binomial_capped(32, 5, u64::MAX - 1), 201_376);
        assert_eq!(binomial_capped(5, 9, u64::MAX - 1), 0);
    }

    #[test]
    fn binomial_clamps_at_cap() {
        assert!(binomial_capped(5120, 500, 10_000_000) > 10_000_000);
    }

    #[test]
    fn binomial_sum_counts_all_sizes() {
        // 1 + 12 + 66 + 220
        assert_eq!(binomial_sum_capped(12, 3, u64::MAX - 1), 299);
    }

    #[test]
    fn meter_trips_on_subset_count() {
        let budget = Budget::default().with_max_subsets(10);
        let mut meter = budget.start();
        assert!(meter.charge(10).is_ok());
        assert!(meter.charge(1).is_err());
    }
}
