//! Immutable 3-uniform hypergraphs with link-neighbourhood indexes.
//!
//! Vertices are dense ids `0..n`. For every ordered pair `(u, v)` the
//! hypergraph keeps a bitset of the third vertices `w` with `{u, v, w}` an
//! edge, so codegree queries are a popcount and restricted degrees are a
//! masked popcount.

use serde::Serialize;
use thiserror::Error;

use crate::bits::{and_count, iter_bits, test_bit, words_for, VertexSet};

/// A vertex triple in increasing order.
pub type Triple = [usize; 3];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex([usize; 3]),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge([usize; 3]),
    #[error("degree query needs 1 or 2 distinct vertices, got {0:?}")]
    BadQuery(Vec<usize>),
    #[error("need at least {needed} vertices, hypergraph has {n}")]
    TooFewVertices { n: usize, needed: usize },
}

/// A minimum-degree value together with a set attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub value: usize,
    pub witness: Vec<usize>,
}

#[derive(Clone)]
pub struct Hypergraph3 {
    n: usize,
    words: usize,
    edges: Vec<Triple>,
    /// `links[(u * n + v) * words ..][..words]` is N(uv).
    links: Vec<u64>,
    vertex_degree: Vec<usize>,
}

impl PartialEq for Hypergraph3 {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph3 {}

impl std::fmt::Debug for Hypergraph3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Hypergraph3")
            .field("n", &self.n)
            .field("edges", &self.edges.len())
            .finish()
    }
}

pub(crate) fn sort3(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}

impl Hypergraph3 {
    /// Validates and indexes an edge list. Vertex order inside a triple is
    /// irrelevant; repeated vertices, out-of-range ids and duplicate edges
    /// are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = [usize; 3]>) -> Result<Self, HypergraphError> {
        let mut list = Vec::new();
        for e in edges {
            let t = sort3(e);
            if let Some(&v) = t.iter().find(|&&v| v >= n) {
                return Err(HypergraphError::VertexOutOfRange { vertex: v, n });
            }
            if t[0] == t[1] || t[1] == t[2] {
                return Err(HypergraphError::RepeatedVertex(e));
            }
            list.push(t);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(HypergraphError::DuplicateEdge(w[0]));
        }
        Ok(Self::from_sorted_unique(n, list))
    }

    fn from_sorted_unique(n: usize, edges: Vec<Triple>) -> Self {
        let words = words_for(n);
        let mut links = vec![0u64; n * n * words];
        let mut vertex_degree = vec![0; n];
        let mut set = |u: usize, v: usize, w: usize| {
            links[(u * n + v) * words + (w >> 6)] |= 1 << (w & 63);
        };
        for &[a, b, c] in &edges {
            set(a, b, c);
            set(b, a, c);
            set(a, c, b);
            set(c, a, b);
            set(b, c, a);
            set(c, b, a);
            vertex_degree[a] += 1;
            vertex_degree[b] += 1;
            vertex_degree[c] += 1;
        }
        Hypergraph3 {
            n,
            words,
            edges,
            links,
            vertex_degree,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_unique(n, Vec::new())
    }

    /// All `C(n, 3)` triples.
    pub fn complete(n: usize) -> Self {
        Self::from_triples_where(n, |_| true)
    }

    /// All triples satisfying `keep`, generated in lexicographic order.
    pub fn from_triples_where(n: usize, mut keep: impl FnMut(Triple) -> bool) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if keep([a, b, c]) {
                        edges.push([a, b, c]);
                    }
                }
            }
        }
        Self::from_sorted_unique(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted triples, in lexicographic order.
    pub fn edges(&self) -> &[Triple] {
        &self.edges
    }

    /// N(uv) as raw bitset words. `u == v` yields the empty set.
    pub(crate) fn link(&self, u: usize, v: usize) -> &[u64] {
        let at = (u * self.n + v) * self.words;
        &self.links[at..at + self.words]
    }

    /// N(uv) as a vertex list.
    pub fn link_vertices(&self, u: usize, v: usize) -> Vec<usize> {
        iter_bits(self.link(u, v)).collect()
    }

    pub fn contains_edge(&self, a: usize, b: usize, c: usize) -> bool {
        a < self.n && b < self.n && c < self.n && a != b && test_bit(self.link(a, b), c)
    }

    pub fn contains_triple(&self, t: &[usize; 3]) -> bool {
        self.contains_edge(t[0], t[1], t[2])
    }

    pub fn codegree(&self, u: usize, v: usize) -> usize {
        self.link(u, v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn vertex_degree(&self, v: usize) -> usize {
        self.vertex_degree[v]
    }

    fn check_query(&self, s: &[usize]) -> Result<(), HypergraphError> {
        if let Some(&v) = s.iter().find(|&&v| v >= self.n) {
            return Err(HypergraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        match s {
            [_] => Ok(()),
            [a, b] if a != b => Ok(()),
            _ => Err(HypergraphError::BadQuery(s.to_vec())),
        }
    }

    /// Number of edges containing `s`, for `|s|` in {1, 2}.
    pub fn degree(&self, s: &[usize]) -> Result<usize, HypergraphError> {
        self.check_query(s)?;
        Ok(match *s {
            [v] => self.vertex_degree[v],
            [u, v] => self.codegree(u, v),
            _ => unreachable!(),
        })
    }

    /// deg(S, T): for a pair, the extensions `w ∈ T`; for a single vertex
    /// `v`, the pairs `{a, b} ⊆ T ∖ {v}` with `{v, a, b}` an edge.
    pub fn deg_into(&self, s: &[usize], t: &VertexSet) -> Result<usize, HypergraphError> {
        self.check_query(s)?;
        Ok(match *s {
            [v] => self.vertex_deg_into(v, t),
            [u, v] => t.and_count_words(self.link(u, v)),
            _ => unreachable!(),
        })
    }

    pub(crate) fn vertex_deg_into(&self, v: usize, t: &VertexSet) -> usize {
        let twice: usize = t
            .iter()
            .filter(|&a| a != v)
            .map(|a| t.and_count_words(self.link(v, a)))
            .sum();
        twice / 2
    }

    pub(crate) fn pair_deg_into(&self, u: usize, v: usize, t: &VertexSet) -> usize {
        t.and_count_words(self.link(u, v))
    }

    /// The missing-edge count of `s` into `t`: `|T ∖ {u,v}| − deg(uv, T)` for
    /// a pair, `C(|T ∖ {v}|, 2) − deg(v, T)` for a vertex.
    pub fn complement_degree(&self, s: &[usize], t: &VertexSet) -> Result<usize, HypergraphError> {
        let deg = self.deg_into(s, t)?;
        let rest = t.len() - s.iter().filter(|&&v| t.contains(v)).count();
        let baseline = match s.len() {
            1 => rest * rest.saturating_sub(1) / 2,
            _ => rest,
        };
        Ok(baseline - deg)
    }

    /// Minimum codegree over all pairs, with the lexicographically first
    /// pair attaining it.
    pub fn min_codegree(&self) -> Result<DegreeReport, HypergraphError> {
        if self.n < 3 {
            return Err(HypergraphError::TooFewVertices { n: self.n, needed: 3 });
        }
        let mut best = DegreeReport {
            value: usize::MAX,
            witness: vec![],
        };
        for u in 0..self.n {
            for v in u + 1..self.n {
                let d = self.codegree(u, v);
                if d < best.value {
                    best = DegreeReport {
                        value: d,
                        witness: vec![u, v],
                    };
                }
            }
        }
        Ok(best)
    }

    pub fn min_vertex_degree(&self) -> Result<DegreeReport, HypergraphError> {
        (0..self.n)
            .map(|v| DegreeReport {
                value: self.vertex_degree[v],
                witness: vec![v],
            })
            .min_by_key(|r| r.value)
            .ok_or(HypergraphError::TooFewVertices { n: self.n, needed: 1 })
    }

    /// e(A_1, A_2, A_3): edges whose vertices can be assigned one to each
    /// listed set. With one set this is the induced count e(H[A]); with two
    /// sets `[A, B]` the last set is repeated, giving e(A, B, B).
    pub fn edge_counts(&self, parts: &[&VertexSet]) -> usize {
        let sets: [&VertexSet; 3] = match parts {
            [] => return 0,
            [a] => [a, a, a],
            [a, b] => [a, b, b],
            [a, b, c, ..] => [a, b, c],
        };
        const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        self.edges
            .iter()
            .filter(|e| {
                PERMS
                    .iter()
                    .any(|p| (0..3).all(|i| sets[i].contains(e[p[i]])))
            })
            .count()
    }

    /// e(H[A]).
    pub fn induced_edge_count(&self, set: &VertexSet) -> usize {
        let twice_deg: usize = set.iter().map(|v| self.vertex_deg_into(v, set)).sum();
        twice_deg / 3
    }

    /// The hypergraph with vertex `order[i]` renamed to `i`.
    pub(crate) fn relabel(&self, order: &[usize]) -> Hypergraph3 {
        let mut new_id = vec![0; self.n];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges: Vec<Triple> = self
            .edges
            .iter()
            .map(|e| sort3([new_id[e[0]], new_id[e[1]], new_id[e[2]]]))
            .collect();
        edges.sort_unstable();
        Self::from_sorted_unique(self.n, edges)
    }

    /// H[set] on vertices renamed `0..|set|` in increasing order of the
    /// original ids; returns the new-to-old map alongside.
    pub fn induced(&self, set: &VertexSet) -> (Hypergraph3, Vec<usize>) {
        let map = set.to_vec();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            new_id[v] = i;
        }
        let edges: Vec<Triple> = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|&v| set.contains(v)))
            .map(|e| [new_id[e[0]], new_id[e[1]], new_id[e[2]]])
            .collect();
        (Self::from_sorted_unique(map.len(), edges), map)
    }

    /// Number of third vertices inside `within` for pair `(u, v)`, with the
    /// bitset exposed to callers needing iteration.
    pub(crate) fn link_within<'a>(&'a self, u: usize, v: usize, within: &'a VertexSet) -> impl Iterator<Item = usize> + 'a {
        self.link(u, v)
            .iter()
            .zip(within.words())
            .enumerate()
            .flat_map(|(wi, (&a, &b))| {
                let mut rest = a & b;
                std::iter::from_fn(move || {
                    if rest == 0 {
                        None
                    } else {
                        let bit = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        Some(wi * 64 + bit)
                    }
                })
            })
    }

    pub(crate) fn link_and_count(&self, u: usize, v: usize, other: &[u64]) -> usize {
        and_count(self.link(u, v), other)
    }
}
