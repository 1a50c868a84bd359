//! Search budgets.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

/// Limits on a search. Node limits are deterministic; wall-clock limits are
/// not, so tests and reproducible runs should prefer `max_nodes`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_ms: Option<u64>,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        time_ms: None,
    };

    pub fn nodes(n: u64) -> Self {
        Budget {
            max_nodes: Some(n),
            time_ms: None,
        }
    }

    pub fn millis(ms: u64) -> Self {
        Budget {
            max_nodes: None,
            time_ms: Some(ms),
        }
    }

    pub(crate) fn start(self) -> Meter {
        Meter {
            max_nodes: self.max_nodes,
            deadline: self.time_ms.map(|ms| Instant::now() + Duration::from_millis(ms)),
            nodes: 0,
        }
    }
}

/// A running budget.
#[derive(Debug)]
pub(crate) struct Meter {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    pub nodes: u64,
}

impl Meter {
    /// Counts one node; false once the budget is spent.
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.max_nodes.is_some_and(|m| self.nodes > m) {
            return false;
        }
        // Clock reads are comparatively slow; sample every 256 nodes.
        if self.nodes & 0xff == 0 {
            if let Some(d) = self.deadline {
                return Instant::now() < d;
            }
        }
        true
    }
}
