use std::ops::ControlFlow;

use serde::Serialize;

use crate::bits::VertexSet;
use crate::budget::Budget;
use crate::cycle::{for_each_copy, CycleCopy};
use crate::hypergraph::Hypergraph3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddCopySearch {
    pub copy: Option<CycleCopy>,
    /// With `copy == None`: every copy was checked.
    pub exhaustive: bool,
    /// Copies examined.
    pub examined: u64,
}

/// A loose cycle meeting `a` in 1, 3 or 5 vertices, searched among copies
/// inside `within` (all vertices when `None`).
pub fn odd_intersection_copy(h: &Hypergraph3, a: &VertexSet, within: Option<&VertexSet>, budget: Budget) -> OddCopySearch {
    let all = VertexSet::full(h.n());
    let mut meter = budget.start();
    let mut hit = None;
    let mut stopped = false;
    for_each_copy(h, within.unwrap_or(&all), None, |c| {
        if !meter.tick() {
            stopped = true;
            return ControlFlow::Break(());
        }
        if c.vertices().iter().filter(|&&v| a.contains(v)).count() % 2 == 1 {
            hit = Some(c);
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    OddCopySearch {
        exhaustive: hit.is_none() && !stopped,
        copy: hit,
        examined: meter.nodes,
    }
}
