//! Independent checkers. They use only edge membership of the host.

use serde::Serialize;

use super::{Matching3, Tiling};
use crate::hypergraph::Hypergraph3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    /// The first violation found.
    pub diagnostic: Option<String>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            ok: true,
            diagnostic: None,
        }
    }

    fn fail(msg: String) -> Self {
        Verdict {
            ok: false,
            diagnostic: Some(msg),
        }
    }
}

pub fn verify_tiling(h: &Hypergraph3, t: &Tiling, require_perfect: bool) -> Verdict {
    let n = h.n();
    if t.n != n {
        return Verdict::fail(format!("tiling is for n = {} but host has n = {n}", t.n));
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (ci, c) in t.copies.iter().enumerate() {
        let [l1, l2, l3] = c.links;
        let [a, b, d] = c.inners;
        let verts = [l1, l2, l3, a, b, d];
        if let Some(&v) = verts.iter().find(|&&v| v >= n) {
            return Verdict::fail(format!("copy {ci}: vertex {v} out of range"));
        }
        for (i, &v) in verts.iter().enumerate() {
            if verts[..i].contains(&v) {
                return Verdict::fail(format!("copy {ci}: repeated vertex {v}"));
            }
        }
        for [x, y, z] in [[l1, a, l2], [l2, b, l3], [l3, d, l1]] {
            if !h.contains_edge(x, y, z) {
                return Verdict::fail(format!("copy {ci}: missing edge {{{x}, {y}, {z}}}"));
            }
        }
        for v in verts {
            if let Some(prev) = owner[v] {
                return Verdict::fail(format!("disjointness at {v}: copies {prev} and {ci}"));
            }
            owner[v] = Some(ci);
        }
    }
    if require_perfect {
        if let Some(v) = owner.iter().position(Option::is_none) {
            return Verdict::fail(format!("vertex {v} uncovered"));
        }
    }
    Verdict::pass()
}

/// Membership and disjointness; with `maximal`, also that no host edge fits
/// in the uncovered vertices.
pub fn verify_matching(h: &Hypergraph3, m: &Matching3, maximal: bool) -> Verdict {
    let n = h.n();
    let mut used = vec![false; n];
    for (i, &[a, b, c]) in m.edges.iter().enumerate() {
        if a >= n || b >= n || c >= n || a == b || b == c || a == c || !h.contains_edge(a, b, c) {
            return Verdict::fail(format!("edge {i} {{{a}, {b}, {c}}} not in host"));
        }
        for v in [a, b, c] {
            if used[v] {
                return Verdict::fail(format!("disjointness at {v}"));
            }
            used[v] = true;
        }
    }
    if maximal {
        if let Some(e) = h.edges().iter().find(|e| e.iter().all(|&v| !used[v])) {
            return Verdict::fail(format!("not maximal: {e:?} is uncovered"));
        }
    }
    Verdict::pass()
}
