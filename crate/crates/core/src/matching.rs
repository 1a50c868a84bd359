//! Bipartite matching by augmenting paths, with a Hall-violation witness
//! when no left-perfect matching exists.

use serde::Serialize;

/// A left set whose neighbourhood is smaller than itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallViolation {
    pub left: Vec<usize>,
    pub neighbours: Vec<usize>,
}

/// Maximum matching of a bipartite graph given as left adjacency lists.
/// Returns `mate[l] = Some(r)`.
pub fn max_bipartite_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    let mut mate_r: Vec<Option<usize>> = vec![None; right];
    let mut mate_l: Vec<Option<usize>> = vec![None; adj.len()];
    for l in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(l, adj, &mut seen, &mut mate_l, &mut mate_r);
    }
    mate_l
}

fn augment(
    l: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    mate_l: &mut [Option<usize>],
    mate_r: &mut [Option<usize>],
) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        if mate_r[r].is_none_or(|l2| augment(l2, adj, seen, mate_l, mate_r)) {
            mate_r[r] = Some(l);
            mate_l[l] = Some(r);
            return true;
        }
    }
    false
}

/// A matching saturating every left vertex, or a Hall violation.
pub fn left_perfect_matching(adj: &[Vec<usize>], right: usize) -> Result<Vec<usize>, HallViolation> {
    let mate = max_bipartite_matching(adj, right);
    let Some(free) = mate.iter().position(Option::is_none) else {
        return Ok(mate.into_iter().map(|m| m.expect("saturated")).collect());
    };
    let mut mate_r = vec![None; right];
    for (l, m) in mate.iter().enumerate() {
        if let Some(r) = m {
            mate_r[*r] = Some(l);
        }
    }
    // Left vertices reachable from `free` by alternating paths: their
    // neighbourhood is exactly the reached right vertices, all matched.
    let mut left_seen = vec![false; adj.len()];
    let mut right_seen = vec![false; right];
    let mut stack = vec![free];
    left_seen[free] = true;
    while let Some(l) = stack.pop() {
        for &r in &adj[l] {
            if !right_seen[r] {
                right_seen[r] = true;
                let l2 = mate_r[r].expect("maximum matching leaves no augmenting path");
                if !left_seen[l2] {
                    left_seen[l2] = true;
                    stack.push(l2);
                }
            }
        }
    }
    Err(HallViolation {
        left: (0..adj.len()).filter(|&l| left_seen[l]).collect(),
        neighbours: (0..right).filter(|&r| right_seen[r]).collect(),
    })
}
