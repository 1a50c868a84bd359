use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{LatticeError, Partition};
use crate::bits::{iter_bits, VertexSet};
use crate::cycle::{is_cycle_copy, CycleCopy};
use crate::hypergraph::Hypergraph3;

/// Depth and witness threshold for reachability. Only depth 1 (5-sets) is
/// computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachParams {
    pub i: usize,
    pub threshold: u64,
}

impl Default for ReachParams {
    fn default() -> Self {
        ReachParams { i: 1, threshold: 1 }
    }
}

/// Reachable 5-sets found for a pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReachReport {
    /// Distinct 5-sets found, at most the cap.
    pub count: u64,
    /// True when the construction was exhausted below the cap.
    pub complete: bool,
    /// Up to eight sets, each with its verified copies for `x` and `y`.
    pub witnesses: Vec<([usize; 5], CycleCopy, CycleCopy)>,
}

const KEEP_WITNESSES: usize = 8;

/// 5-sets `S` such that both `S + x` and `S + y` span a loose cycle, built
/// as: a pair `{a, b}` in the common link of `x` and `y`, a vertex `u`, then
/// `v` in N(a, u) and `w` in N(b, u). The cycle has links `a, b, u` and
/// inners `x` (or `y`), `w`, `v`.
pub fn reachable_5sets(h: &Hypergraph3, x: usize, y: usize, cap: u64) -> Result<ReachReport, LatticeError> {
    reachable_5sets_avoiding(h, x, y, &VertexSet::empty(h.n()), cap)
}

/// As [`reachable_5sets`], with every vertex of `avoid` excluded from `S`.
pub(crate) fn reachable_5sets_avoiding(
    h: &Hypergraph3,
    x: usize,
    y: usize,
    avoid: &VertexSet,
    cap: u64,
) -> Result<ReachReport, LatticeError> {
    let n = h.n();
    for v in [x, y] {
        if v >= n {
            return Err(LatticeError::Vertex(v));
        }
    }
    if x == y {
        return Err(LatticeError::SameVertex);
    }
    let mut seen: HashSet<[usize; 5]> = HashSet::new();
    let mut witnesses = Vec::new();
    if cap == 0 {
        return Ok(ReachReport {
            count: 0,
            complete: false,
            witnesses,
        });
    }
    let mut avail = avoid.complement();
    avail.remove(x);
    avail.remove(y);
    for a in avail.iter() {
        let common: Vec<usize> = iter_bits(h.link(x, a))
            .filter(|&b| b > a && b != y && h.contains_edge(y, a, b))
            .collect();
        for b in common {
            for u in avail.iter().filter(|&u| u != a && u != b) {
                for v in h.link_within(a, u, &avail).filter(|&v| v != b) {
                    for w in h.link_within(b, u, &avail).filter(|&w| w != a && w != v) {
                        let mut s = [a, b, u, v, w];
                        s.sort_unstable();
                        if seen.contains(&s) {
                            continue;
                        }
                        let cx = CycleCopy::new([a, b, u], [x, w, v]);
                        let cy = CycleCopy::new([a, b, u], [y, w, v]);
                        if !(is_cycle_copy(h, &cx) && is_cycle_copy(h, &cy)) {
                            continue;
                        }
                        seen.insert(s);
                        if witnesses.len() < KEEP_WITNESSES {
                            witnesses.push((s, cx, cy));
                        }
                        if seen.len() as u64 >= cap {
                            return Ok(ReachReport {
                                count: cap,
                                complete: false,
                                witnesses,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(ReachReport {
        count: seen.len() as u64,
        complete: true,
        witnesses,
    })
}

/// Components of the pair graph `{xy : at least pair_threshold reachable
/// 5-sets}`, merged smallest-first down to three parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedPartition {
    pub partition: Partition,
    /// Per part, the fewest reachable 5-sets (capped at the threshold) over
    /// its vertex pairs; `None` for single-vertex parts.
    pub min_witnesses: Vec<Option<u64>>,
    /// Some part contains a pair below the threshold, so the partition is
    /// not a closedness witness even at depth 1.
    pub degenerate: bool,
    pub params: ReachParams,
}

pub fn closed_partition(h: &Hypergraph3, params: ReachParams) -> Result<ClosedPartition, LatticeError> {
    let n = h.n();
    let threshold = params.threshold.max(1);
    let mut counts = vec![0u64; n * n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while p[r] != r {
            r = p[r];
        }
        let mut c = v;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for x in 0..n {
        for y in x + 1..n {
            let c = reachable_5sets(h, x, y, threshold)?.count;
            counts[x * n + y] = c;
            counts[y * n + x] = c;
            if c >= threshold {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                parent[rx.max(ry)] = rx.min(ry);
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut root_index = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if root_index[r] == usize::MAX {
            root_index[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[root_index[r]].push(v);
    }
    while comps.len() > 3 {
        // Merge the two smallest; ties go to the component with the lowest
        // vertex.
        comps.sort_by_key(|c| (c.len(), c[0]));
        let a = comps.remove(0);
        comps[0].extend(a);
        comps[0].sort_unstable();
    }
    comps.sort_by_key(|c| c[0]);
    let min_witnesses: Vec<Option<u64>> = comps
        .iter()
        .map(|c| {
            c.iter()
                .enumerate()
                .flat_map(|(i, &x)| c[i + 1..].iter().map(move |&y| (x, y)))
                .map(|(x, y)| counts[x * n + y])
                .min()
        })
        .collect();
    let degenerate = min_witnesses.iter().any(|m| m.is_some_and(|m| m < threshold));
    let partition = if n == 0 {
        Partition::new(0, vec![Vec::new()])
    } else {
        Partition::new(n, comps)
    }
    .expect("components partition the vertices");
    Ok(ClosedPartition {
        partition,
        min_witnesses,
        degenerate,
        params: ReachParams { i: 1, threshold },
    })
}
