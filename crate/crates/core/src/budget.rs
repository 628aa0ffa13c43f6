//! Enumeration budgets.
//!
//! Completeness claims are only honest if exhaustion is explicit: every
//! enumeration spends against a budget and fails loudly instead of silently
//! truncating.

use std::cell::Cell;

use thiserror::Error;

/// Default number of candidate checks an enumeration may spend.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("enumeration budget exceeded: {spent} candidate checks (limit {limit}) in {context}")]
pub struct BudgetError {
    pub limit: u64,
    pub spent: u64,
    pub context: String,
}

/// A budget for one logical operation. Cheap to clone; each clone is independent.
#[derive(Debug, Clone)]
pub struct Budget {
    pub limit: u64,
    pub context: String,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            limit: DEFAULT_BUDGET,
            context: "enumeration".into(),
        }
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            context: "enumeration".into(),
        }
    }

    pub fn named(limit: u64, context: &str) -> Self {
        Budget {
            limit,
            context: context.into(),
        }
    }

    pub fn with_context(&self, context: &str) -> Self {
        Budget {
            limit: self.limit,
            context: context.into(),
        }
    }

    pub fn counter(&self) -> BudgetCounter {
        BudgetCounter {
            limit: self.limit,
            spent: Cell::new(0),
            context: self.context.clone(),
        }
    }
}

/// Running spend against a [`Budget`].
#[derive(Debug)]
pub struct BudgetCounter {
    limit: u64,
    spent: Cell<u64>,
    context: String,
}

impl BudgetCounter {
    pub fn spend(&self, amount: u64) -> Result<(), BudgetError> {
        let next = self.spent.get().saturating_add(amount);
        self.spent.set(next);
        if next > self.limit {
            Err(BudgetError {
                limit: self.limit,
                spent: next,
                context: self.context.clone(),
            })
        } else {
            Ok(())
        }
    }

    pub fn spent(&self) -> u64 {
        self.spent.get()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_trips() {
        let b = Budget::new(3);
        let c = b.counter();
        assert!(c.spend(2).is_ok());
        assert!(c.spend(1).is_ok());
        assert!(c.spend(1).is_err());
    }
}
