//! Loose 6-cycles and complete 3-partite blocks K(2,2,2).
//!
//! A loose cycle on six vertices has three *links* `l1, l2, l3` and three
//! *inners*; its edges are `{l1, i12, l2}`, `{l2, i23, l3}` and
//! `{l3, i31, l1}`. Two copies are the same iff their edge sets agree, which
//! holds iff they have the same links with the same inner between each link
//! pair, so a copy is stored with its links sorted.

use std::ops::ControlFlow;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bits::{iter_bits, VertexSet};
use crate::budget::Budget;
use crate::hypergraph::{sort3, Hypergraph3, Triple};
use crate::lattice::{IndexVector, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycleCopy {
    pub links: [usize; 3],
    /// `inners[0]` sits between `links[0]` and `links[1]`, `inners[1]`
    /// between `links[1]` and `links[2]`, `inners[2]` between `links[2]` and
    /// `links[0]`.
    pub inners: [usize; 3],
}

impl CycleCopy {
    /// Canonical form of the copy with the given links and inners.
    pub fn new(links: [usize; 3], inners: [usize; 3]) -> Self {
        let between = |a: usize, b: usize| -> usize {
            (0..3)
                .find(|&k| {
                    let (x, y) = (links[k], links[(k + 1) % 3]);
                    (x == a && y == b) || (x == b && y == a)
                })
                .map(|k| inners[k])
                .expect("link pair")
        };
        let s = sort3(links);
        CycleCopy {
            links: s,
            inners: [between(s[0], s[1]), between(s[1], s[2]), between(s[2], s[0])],
        }
    }

    pub fn edges(&self) -> [Triple; 3] {
        let [l1, l2, l3] = self.links;
        let [a, b, c] = self.inners;
        [sort3([l1, a, l2]), sort3([l2, b, l3]), sort3([l3, c, l1])]
    }

    pub fn vertices(&self) -> [usize; 6] {
        let [l1, l2, l3] = self.links;
        let [a, b, c] = self.inners;
        [l1, l2, l3, a, b, c]
    }

    pub fn sorted_vertices(&self) -> [usize; 6] {
        let mut v = self.vertices();
        v.sort_unstable();
        v
    }

    pub fn has_distinct_vertices(&self) -> bool {
        let v = self.sorted_vertices();
        v.windows(2).all(|w| w[0] != w[1])
    }

    pub fn map(&self, f: impl Fn(usize) -> usize) -> CycleCopy {
        CycleCopy::new(self.links.map(&f), self.inners.map(&f))
    }
}

/// True iff the copy's vertices are distinct and all three pattern edges
/// are in `h`.
pub fn is_cycle_copy(h: &Hypergraph3, c: &CycleCopy) -> bool {
    c.has_distinct_vertices() && c.edges().iter().all(|e| h.contains_triple(e))
}

/// Result of a capped enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CopyEnumeration {
    pub copies: Vec<CycleCopy>,
    /// True iff every copy was visited, i.e. the cap was never hit.
    pub complete: bool,
}

/// Lists distinct copies in deterministic order (links ascending, then inners
/// by vertex id), optionally only those whose vertex set has the given index
/// vector. Stops after `cap` copies.
pub fn enumerate_copies(h: &Hypergraph3, filter: Option<(&Partition, &IndexVector)>, cap: usize) -> CopyEnumeration {
    enumerate_copies_within(h, &VertexSet::full(h.n()), filter, cap)
}

pub fn enumerate_copies_within(
    h: &Hypergraph3,
    within: &VertexSet,
    filter: Option<(&Partition, &IndexVector)>,
    cap: usize,
) -> CopyEnumeration {
    let mut copies = Vec::new();
    let complete = cap > 0
        && for_each_copy(h, within, filter, |c| {
            copies.push(c);
            if copies.len() >= cap {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
    // Hitting the cap exactly on the last copy still reports incomplete; a
    // caller wanting certainty asks for one more than it needs.
    CopyEnumeration { copies, complete }
}

/// Visits every copy inside `within`; returns false if `visit` broke early.
pub(crate) fn for_each_copy(
    h: &Hypergraph3,
    within: &VertexSet,
    filter: Option<(&Partition, &IndexVector)>,
    mut visit: impl FnMut(CycleCopy) -> ControlFlow<()>,
) -> bool {
    let verts = within.to_vec();
    let fits = |vs: &[usize]| match filter {
        None => true,
        Some((p, target)) => {
            let mut counts = vec![0usize; p.r()];
            for &v in vs {
                let k = p.part_of(v);
                counts[k] += 1;
                if counts[k] > target.coords()[k] {
                    return false;
                }
            }
            true
        }
    };
    for (i, &l1) in verts.iter().enumerate() {
        for (j, &l2) in verts.iter().enumerate().skip(i + 1) {
            if h.link_and_count(l1, l2, within.words()) == 0 {
                continue;
            }
            for &l3 in &verts[j + 1..] {
                if h.link_and_count(l2, l3, within.words()) == 0 || h.link_and_count(l3, l1, within.words()) == 0 {
                    continue;
                }
                if !fits(&[l1, l2, l3]) {
                    continue;
                }
                for a in h.link_within(l1, l2, within) {
                    if a == l3 {
                        continue;
                    }
                    for b in h.link_within(l2, l3, within) {
                        if b == l1 || b == a {
                            continue;
                        }
                        for c in h.link_within(l3, l1, within) {
                            if c == l2 || c == a || c == b {
                                continue;
                            }
                            let vs = [l1, l2, l3, a, b, c];
                            if !fits(&vs) {
                                continue;
                            }
                            if filter.is_some_and(|(p, t)| &p.index_vector(&vs) != t) {
                                continue;
                            }
                            if visit(CycleCopy {
                                links: [l1, l2, l3],
                                inners: [a, b, c],
                            })
                            .is_break()
                            {
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    true
}

/// Loose-cycle patterns on positions 0..6, as masks over the 20 position
/// triples, together with (links, inners) in positions.
struct Patterns {
    triple_index: [[[u8; 6]; 6]; 6],
    triples: [[usize; 3]; 20],
    cycles: Vec<(u32, [usize; 3], [usize; 3])>,
}

fn patterns() -> &'static Patterns {
    static P: OnceLock<Patterns> = OnceLock::new();
    P.get_or_init(|| {
        let mut triple_index = [[[u8::MAX; 6]; 6]; 6];
        let mut triples = [[0; 3]; 20];
        let mut k = 0;
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    for p in [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
                        triple_index[p[0]][p[1]][p[2]] = k as u8;
                    }
                    triples[k] = [a, b, c];
                    k += 1;
                }
            }
        }
        let mut cycles = Vec::with_capacity(120);
        for &links in &triples {
            let rest: Vec<usize> = (0..6).filter(|p| !links.contains(p)).collect();
            for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                let inners = [rest[perm[0]], rest[perm[1]], rest[perm[2]]];
                let [l1, l2, l3] = links;
                let mask = (1u32 << triple_index[l1][inners[0]][l2])
                    | (1 << triple_index[l2][inners[1]][l3])
                    | (1 << triple_index[l3][inners[2]][l1]);
                cycles.push((mask, links, inners));
            }
        }
        Patterns {
            triple_index,
            triples,
            cycles,
        }
    })
}

fn edge_mask(h: &Hypergraph3, six: &[usize; 6]) -> u32 {
    let p = patterns();
    let mut mask = 0u32;
    for (k, t) in p.triples.iter().enumerate() {
        if h.contains_edge(six[t[0]], six[t[1]], six[t[2]]) {
            mask |= 1 << k;
        }
    }
    mask
}

/// Some copy spanning exactly the six given vertices, if one exists.
pub fn cycle_on(h: &Hypergraph3, six: &[usize; 6]) -> Option<CycleCopy> {
    let mask = edge_mask(h, six);
    if mask.count_ones() < 3 {
        return None;
    }
    patterns()
        .cycles
        .iter()
        .find(|(m, _, _)| m & mask == *m)
        .map(|(_, l, i)| CycleCopy::new(l.map(|x| six[x]), i.map(|x| six[x])))
}

/// All distinct copies spanning exactly the six given vertices.
pub fn copies_on(h: &Hypergraph3, six: &[usize; 6]) -> Vec<CycleCopy> {
    let mask = edge_mask(h, six);
    patterns()
        .cycles
        .iter()
        .filter(|(m, _, _)| m & mask == *m)
        .map(|(_, l, i)| CycleCopy::new(l.map(|x| six[x]), i.map(|x| six[x])))
        .collect()
}

pub(crate) fn spans_cycle(h: &Hypergraph3, six: &[usize; 6]) -> bool {
    let mask = edge_mask(h, six);
    mask.count_ones() >= 3 && patterns().cycles.iter().any(|(m, _, _)| m & mask == *m)
}

#[allow(dead_code)]
pub(crate) fn triple_position(a: usize, b: usize, c: usize) -> usize {
    patterns().triple_index[a][b][c] as usize
}

/// K(2,2,2): three disjoint pairs with all eight cross triples present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct K332Copy {
    pub parts: [[usize; 2]; 3],
}

impl K332Copy {
    pub fn edges(&self) -> Vec<Triple> {
        let [p, q, r] = self.parts;
        let mut out = Vec::with_capacity(8);
        for &a in &p {
            for &b in &q {
                for &c in &r {
                    out.push(sort3([a, b, c]));
                }
            }
        }
        out
    }

    pub fn is_valid_in(&self, h: &Hypergraph3) -> bool {
        let mut vs: Vec<usize> = self.parts.iter().flatten().copied().collect();
        vs.sort_unstable();
        vs.dedup();
        vs.len() == 6 && self.edges().iter().all(|e| h.contains_triple(e))
    }

    /// A loose cycle on the same six vertices using only cross triples.
    pub fn spanning_cycle(&self) -> CycleCopy {
        let [[a1, a2], [b1, b2], [c1, c2]] = self.parts;
        CycleCopy::new([a1, b1, c1], [c2, a2, b2])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K332Search {
    pub copy: Option<K332Copy>,
    /// True when the search space was exhausted; a `None` copy is then a
    /// proof of absence.
    pub exhaustive: bool,
    /// Candidate (part, part) combinations examined.
    pub examined: u64,
}

fn part_pairs(h: &Hypergraph3) -> Vec<[usize; 2]> {
    // High-degree vertices first: dense regions are tried before sparse ones.
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(h.vertex_degree(v)), v));
    let mut pairs = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        if h.vertex_degree(a) < 4 {
            continue;
        }
        for &b in &order[i + 1..] {
            if h.vertex_degree(b) >= 4 {
                pairs.push([a, b]);
            }
        }
    }
    pairs
}

fn cross_link(h: &Hypergraph3, p: [usize; 2], q: [usize; 2]) -> Vec<u64> {
    let mut acc: Vec<u64> = h.link(p[0], q[0]).to_vec();
    for (x, y) in [(p[0], q[1]), (p[1], q[0]), (p[1], q[1])] {
        for (a, b) in acc.iter_mut().zip(h.link(x, y)) {
            *a &= b;
        }
    }
    acc
}

/// Searches for a K(2,2,2), trying pairs of high-degree vertices first.
/// Every vertex of a K(2,2,2) lies in at least four edges, so lower-degree
/// vertices are skipped without losing exhaustiveness.
pub fn find_k332(h: &Hypergraph3, budget: Budget) -> K332Search {
    let pairs = part_pairs(h);
    let mut meter = budget.start();
    for (i, &p) in pairs.iter().enumerate() {
        for &q in &pairs[i + 1..] {
            if q.contains(&p[0]) || q.contains(&p[1]) {
                continue;
            }
            if !meter.tick() {
                return K332Search {
                    copy: None,
                    exhaustive: false,
                    examined: meter.nodes,
                };
            }
            let common = cross_link(h, p, q);
            let mut third = iter_bits(&common);
            if let (Some(c1), Some(c2)) = (third.next(), third.next()) {
                return K332Search {
                    copy: Some(K332Copy { parts: [p, q, [c1, c2]] }),
                    exhaustive: false,
                    examined: meter.nodes,
                };
            }
        }
    }
    K332Search {
        copy: None,
        exhaustive: true,
        examined: meter.nodes,
    }
}

/// Exact number of distinct K(2,2,2) subgraphs (a 6-set with a split into
/// three pairs). Cost grows like n^4; meant for small hosts.
pub fn count_k332(h: &Hypergraph3) -> u64 {
    let n = h.n();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            pairs.push([a, b]);
        }
    }
    let mut total = 0u64;
    for (i, &p) in pairs.iter().enumerate() {
        for &q in &pairs[i + 1..] {
            if q.contains(&p[0]) || q.contains(&p[1]) {
                continue;
            }
            let common: Vec<usize> = iter_bits(&cross_link(h, p, q)).collect();
            // The third part must come after q in pair order.
            for (x, &c1) in common.iter().enumerate() {
                for &c2 in &common[x + 1..] {
                    if [c1, c2] > q {
                        total += 1;
                    }
                }
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{random_3graph, space_barrier};

    #[test]
    fn canonical_form_quotients_automorphisms() {
        let a = CycleCopy::new([0, 2, 4], [1, 3, 5]);
        let b = CycleCopy::new([4, 0, 2], [5, 1, 3]);
        let c = CycleCopy::new([2, 0, 4], [1, 5, 3]);
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.edges(), b.edges());
        assert_ne!(a, CycleCopy::new([0, 2, 4], [3, 1, 5]));
    }

    #[test]
    fn is_cycle_copy_examples() {
        let k6 = Hypergraph3::complete(6);
        assert!(is_cycle_copy(&k6, &CycleCopy::new([0, 2, 4], [1, 3, 5])));
        let two = Hypergraph3::new(6, [[0, 1, 2], [2, 3, 4]]).unwrap();
        assert!(!is_cycle_copy(&two, &CycleCopy::new([0, 2, 4], [1, 3, 5])));
        let bar = space_barrier(12).unwrap();
        let y = &bar.sets["Y"];
        assert!(is_cycle_copy(&bar.hypergraph, &CycleCopy::new([0, 1, 2], [y[0], y[1], y[2]])));
        assert!(!is_cycle_copy(&k6, &CycleCopy::new([0, 2, 4], [1, 3, 0])));
    }

    #[test]
    fn enumerate_examples() {
        let all = enumerate_copies(&Hypergraph3::complete(6), None, usize::MAX);
        assert!(all.complete);
        assert_eq!(all.copies.len(), 120);
        let bar = space_barrier(12).unwrap();
        let p = Partition::new(12, vec![bar.sets["X"].clone(), bar.sets["Y"].clone()]).unwrap();
        let none = enumerate_copies(&bar.hypergraph, Some((&p, &IndexVector::new(vec![0, 6]))), usize::MAX);
        assert!(none.complete && none.copies.is_empty());
        let halves = Partition::new(12, vec![(0..6).collect(), (6..12).collect()]).unwrap();
        let capped = enumerate_copies(&Hypergraph3::complete(12), Some((&halves, &IndexVector::new(vec![3, 3]))), 5);
        assert_eq!(capped.copies.len(), 5);
        assert!(!capped.complete);
        for c in &capped.copies {
            assert_eq!(halves.index_vector(&c.vertices()).coords(), &[3, 3]);
        }
    }

    #[test]
    fn enumerate_is_valid_and_distinct() {
        let h = random_3graph(9, 0.5, 4).unwrap().hypergraph;
        let e = enumerate_copies(&h, None, usize::MAX);
        let mut seen = std::collections::HashSet::new();
        for c in &e.copies {
            assert!(is_cycle_copy(&h, c));
            let mut edges = c.edges();
            edges.sort();
            assert!(seen.insert(edges));
            assert_eq!(*c, CycleCopy::new(c.links, c.inners));
        }
        // Every copy also appears among the copies on its own vertex set.
        for c in e.copies.iter().take(50) {
            assert!(copies_on(&h, &c.sorted_vertices()).contains(c));
        }
    }

    #[test]
    fn copies_on_complete_six_set() {
        let k6 = Hypergraph3::complete(6);
        assert_eq!(copies_on(&k6, &[0, 1, 2, 3, 4, 5]).len(), 120);
        assert!(cycle_on(&Hypergraph3::empty(6), &[0, 1, 2, 3, 4, 5]).is_none());
    }

    #[test]
    fn k332_examples() {
        let k6 = Hypergraph3::complete(6);
        let found = find_k332(&k6, Budget::UNLIMITED).copy.unwrap();
        assert!(found.is_valid_in(&k6));
        let none = find_k332(&Hypergraph3::empty(8), Budget::UNLIMITED);
        assert!(none.copy.is_none() && none.exhaustive);
        let h = random_3graph(30, 0.5, 1).unwrap().hypergraph;
        let found = find_k332(&h, Budget::nodes(1_000_000)).copy.unwrap();
        assert!(found.is_valid_in(&h));
        assert!(is_cycle_copy(&h, &found.spanning_cycle()));
        // 15 splits of a 6-set into three pairs.
        assert_eq!(count_k332(&k6), 15);
        assert_eq!(count_k332(&Hypergraph3::complete(7)), 7 * 15);
    }
}
