//! Report plumbing and the reproduction matrix behind the `hlnet` binary.

use hlnet_core::Budget;
use serde::Serialize;

pub mod reproduce;

/// Wrapper around every JSON report so results are self-describing: the
/// tool version, the graph spec, seeds, and budgets that produced them.
#[derive(Serialize)]
pub struct Envelope<T: Serialize> {
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub budget: BudgetEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
    pub report: T,
}

/// Budget limits echoed back in reports; `null` means unbounded.
#[derive(Serialize)]
pub struct BudgetEcho {
    pub max_subsets: Option<u64>,
    pub max_wall_seconds: Option<u64>,
}

impl From<&Budget> for BudgetEcho {
    fn from(b: &Budget) -> Self {
        BudgetEcho {
            max_subsets: (b.max_subsets != u64::MAX).then_some(b.max_subsets),
            max_wall_seconds: b.max_wall.map(|d| d.as_secs()),
        }
    }
}

impl<T: Serialize> Envelope<T> {
    pub fn new(report: T, budget: &Budget) -> Self {
        Envelope {
            version: env!("CARGO_PKG_VERSION"),
            graph: None,
            seed: None,
            budget: budget.into(),
            workers: None,
            report,
        }
    }

    pub fn graph(mut self, spec: impl Into<String>) -> Self {
        self.graph = Some(spec.into());
        self
    }

    pub fn seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = (workers > 0).then_some(workers);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_carries_version_spec_seed_and_budget() {
        let budget = Budget::default();
        let env = Envelope::new(7u32, &budget)
            .graph("qn:4")
            .seed(Some(11))
            .workers(2);
        let json: serde_json::Value = serde_json::to_value(&env).unwrap();
        assert_eq!(json["version"], env!("CARGO_PKG_VERSION"));
        assert_eq!(json["graph"], "qn:4");
        assert_eq!(json["seed"], 11);
        assert_eq!(json["budget"]["max_subsets"], 10_000_000);
        assert_eq!(json["budget"]["max_wall_seconds"], 600);
        assert_eq!(json["workers"], 2);
        assert_eq!(json["report"], 7);
    }

    #[test]
    fn optional_fields_are_omitted_not_null() {
        let env = Envelope::new((), &Budget::default());
        let json: serde_json::Value = serde_json::to_value(&env).unwrap();
        let obj = json.as_object().unwrap();
        assert!(!obj.contains_key("graph"));
        assert!(!obj.contains_key("seed"));
        assert!(!obj.contains_key("workers"));
    }

    #[test]
    fn unbounded_budget_echoes_null_limits() {
        let env = Envelope::new((), &Budget::unlimited());
        let json: serde_json::Value = serde_json::to_value(&env).unwrap();
        assert_eq!(json["budget"]["max_subsets"], serde_json::Value::Null);
        assert_eq!(json["budget"]["max_wall_seconds"], serde_json::Value::Null);
    }
}
