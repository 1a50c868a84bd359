use serde::Serialize;

use crate::bits::VertexSet;
use crate::budget::Budget;
use crate::cycle::{is_cycle_copy, CycleCopy};
use crate::factor::{greedy_matching, max_matching3, MatchingMode, Tiling};
use crate::hypergraph::Hypergraph3;

use super::{Classification, ExtremalError};

/// The three balancing tilings and what they leave.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cover {
    /// One V0-vertex, one A'-vertex and four B'-vertices per copy.
    pub q1: Tiling,
    /// One A'-vertex and five B'-vertices per copy.
    pub q2: Tiling,
    /// Three A1- and three B1-vertices per copy.
    pub r: Tiling,
    pub a1: Vec<usize>,
    pub b1: Vec<usize>,
    pub a2: Vec<usize>,
    pub b2: Vec<usize>,
    pub s: usize,
}

fn missing(h: &Hypergraph3, u: usize, v: usize, set: &VertexSet) -> usize {
    let rest = set.len() - usize::from(set.contains(u)) - usize::from(set.contains(v));
    rest - h.pair_deg_into(u, v, set)
}

/// Covers V0 and balances sizes so that the remainder satisfies
/// `2|A2| = |B2|`.
pub fn cover_and_balance(h: &Hypergraph3, cls: &Classification) -> Result<Cover, ExtremalError> {
    let n = h.n();
    let aprime = VertexSet::from_slice(n, &cls.aprime);
    let bprime = VertexSet::from_slice(n, &cls.bprime);
    let q1 = cls.v0.len();
    let q2 = cls.q.max(0) as usize;
    let mut used = VertexSet::empty(n);

    // Matching M inside B' of size q2.
    let mut m_edges = greedy_matching(h, &bprime).edges;
    if m_edges.len() < q2 {
        let (sub, map) = h.induced(&bprime);
        let best = max_matching3(&sub, MatchingMode::Exact, Budget::nodes(1_000_000));
        m_edges = best.value.edges.iter().map(|e| [map[e[0]], map[e[1]], map[e[2]]]).collect();
    }
    if m_edges.len() < q2 {
        return Err(ExtremalError::Stuck {
            stage: "Q2",
            vertex: None,
            detail: format!("B' has a matching of only {} edges, need {q2}", m_edges.len()),
        });
    }
    m_edges.truncate(q2);
    for e in &m_edges {
        for &v in e {
            used.insert(v);
        }
    }

    // Matching M': one edge per V0-vertex w with two further B'-vertices.
    let mut m_prime = Vec::with_capacity(q1);
    for &w in &cls.v0 {
        let mut free = bprime.clone();
        free.difference_with(&used);
        let pick = free.iter().find_map(|a| h.link_within(w, a, &free).find(|&b| b > a).map(|b| [a, b]));
        let Some([a, b]) = pick else {
            return Err(ExtremalError::Stuck {
                stage: "Q1",
                vertex: Some(w),
                detail: "no edge with two free B'-vertices".into(),
            });
        };
        used.insert(w);
        used.insert(a);
        used.insert(b);
        m_prime.push([a, b, w]);
    }

    let mut q2_tiling = Tiling::empty(n);
    for e in m_edges {
        let rotations = [[e[0], e[1], e[2]], [e[1], e[2], e[0]], [e[2], e[0], e[1]]];
        let c = rotations
            .iter()
            .find_map(|&[u, v, w]| extend_edge(h, u, v, w, &aprime, &bprime, &used))
            .ok_or(ExtremalError::Stuck {
                stage: "Q2",
                vertex: Some(e[0]),
                detail: format!("edge {e:?} has no x, y in B' and z in A' to close a copy"),
            })?;
        mark(&mut used, &c);
        q2_tiling.copies.push(c);
    }
    let mut q1_tiling = Tiling::empty(n);
    for [u, v, w] in m_prime {
        let c = extend_edge(h, u, v, w, &aprime, &bprime, &used).ok_or(ExtremalError::Stuck {
            stage: "Q1",
            vertex: Some(w),
            detail: format!("edge {{{u}, {v}, {w}}} has no x, y in B' and z in A' to close a copy"),
        })?;
        mark(&mut used, &c);
        q1_tiling.copies.push(c);
    }

    let mut a1 = aprime.clone();
    a1.difference_with(&used);
    let mut b1 = bprime.clone();
    b1.difference_with(&used);
    let twice = 2 * a1.len() as i64 - b1.len() as i64;
    if twice < 0 || twice % 3 != 0 {
        return Err(ExtremalError::Bookkeeping(format!(
            "2|A1| - |B1| = {twice} is not a nonnegative multiple of 3"
        )));
    }
    let s = (twice / 3) as usize;

    let mut r_tiling = Tiling::empty(n);
    let mut a2 = a1.clone();
    let mut b2 = b1.clone();
    for _ in 0..s {
        let c = r_copy(h, &a2, &b2).ok_or(ExtremalError::Stuck {
            stage: "R",
            vertex: b2.first(),
            detail: "no three B1-vertices with common A1-neighbours".into(),
        })?;
        for v in c.vertices() {
            a2.remove(v);
            b2.remove(v);
        }
        r_tiling.copies.push(c);
    }
    if 2 * a2.len() != b2.len() {
        return Err(ExtremalError::Bookkeeping(format!(
            "after R: |A2| = {}, |B2| = {}",
            a2.len(),
            b2.len()
        )));
    }
    Ok(Cover {
        q1: q1_tiling,
        q2: q2_tiling,
        r: r_tiling,
        a1: a1.to_vec(),
        b1: b1.to_vec(),
        a2: a2.to_vec(),
        b2: b2.to_vec(),
        s,
    })
}

fn mark(used: &mut VertexSet, c: &CycleCopy) {
    for v in c.vertices() {
        used.insert(v);
    }
}

/// Closes edge `uvw` into a copy with `x, y` from B' and `z` from A' such
/// that `u x z` and `v y z` are edges: links `u, v, z`, inners `w, y, x`.
/// Partners are tried in order of fewest missing A'-extensions.
fn extend_edge(
    h: &Hypergraph3,
    u: usize,
    v: usize,
    w: usize,
    aprime: &VertexSet,
    bprime: &VertexSet,
    used: &VertexSet,
) -> Option<CycleCopy> {
    let mut free_b = bprime.clone();
    free_b.difference_with(used);
    let mut free_a = aprime.clone();
    free_a.difference_with(used);
    let ranked = |p: usize| {
        let mut c: Vec<usize> = free_b.iter().filter(|&x| x != u && x != v && x != w).collect();
        c.sort_by_key(|&x| (missing(h, p, x, aprime), x));
        c
    };
    let xs = ranked(u);
    let ys = ranked(v);
    for &x in &xs {
        for &y in ys.iter().filter(|&&y| y != x) {
            if let Some(z) = h.link_within(u, x, &free_a).find(|&z| h.contains_edge(v, y, z)) {
                let c = CycleCopy::new([u, v, z], [w, y, x]);
                debug_assert!(is_cycle_copy(h, &c));
                return Some(c);
            }
        }
    }
    None
}

/// Links `u, v, w` in B1 and inners `x` in N(uv), `z` in N(vw), `y` in
/// N(wu), all in A1.
fn r_copy(h: &Hypergraph3, a1: &VertexSet, b1: &VertexSet) -> Option<CycleCopy> {
    let bs = b1.to_vec();
    for &u in &bs {
        let mut vs: Vec<usize> = bs.iter().copied().filter(|&v| v != u).collect();
        vs.sort_by_key(|&v| (missing(h, u, v, a1), v));
        for &v in &vs {
            let mut ws: Vec<usize> = bs.iter().copied().filter(|&w| w != u && w != v).collect();
            ws.sort_by_key(|&w| (missing(h, u, w, a1) + missing(h, v, w, a1), w));
            for &w in &ws {
                // Three candidates per slot suffice for distinct picks.
                let nx: Vec<usize> = h.link_within(u, v, a1).take(3).collect();
                let nz: Vec<usize> = h.link_within(v, w, a1).take(3).collect();
                let ny: Vec<usize> = h.link_within(w, u, a1).take(3).collect();
                for &x in &nx {
                    for &z in nz.iter().filter(|&&z| z != x) {
                        if let Some(&y) = ny.iter().find(|&&y| y != x && y != z) {
                            return Some(CycleCopy::new([u, v, w], [x, z, y]));
                        }
                    }
                }
            }
        }
    }
    None
}
