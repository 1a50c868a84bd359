//! C6-factors, maximum C6-tilings, t disjoint copies and 3-graph matchings.
//!
//! Every search is exact: a negative answer is returned only after the
//! search space is exhausted, and budget exhaustion is reported separately
//! as [`SearchOutcome::Indeterminate`].

mod search;
mod verify;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::VertexSet;
use crate::budget::Budget;
use crate::cycle::{cycle_on, CycleCopy};
use crate::hypergraph::{Hypergraph3, Triple};

pub use verify::{verify_matching, verify_tiling, Verdict};

use search::{Block, Packer, PackResult};

/// Vertex-disjoint loose 6-cycles in a host on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    pub n: usize,
    pub copies: Vec<CycleCopy>,
}

#[derive(Serialize, Deserialize)]
struct TilingJson {
    n: usize,
    #[serde(default)]
    perfect: bool,
    copies: Vec<CycleCopy>,
}

impl Serialize for Tiling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TilingJson {
            n: self.n,
            perfect: self.is_perfect(),
            copies: self.copies.clone(),
        }
        .serialize(s)
    }
}

/// The `perfect` field is recomputed, never trusted.
impl<'de> Deserialize<'de> for Tiling {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = TilingJson::deserialize(d)?;
        Ok(Tiling {
            n: raw.n,
            copies: raw.copies,
        })
    }
}

impl Tiling {
    pub fn empty(n: usize) -> Self {
        Tiling { n, copies: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.copies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.copies.is_empty()
    }

    /// Union of the copies' vertex sets. Panics on ids `>= n`.
    pub fn covered(&self) -> VertexSet {
        let mut s = VertexSet::empty(self.n);
        for c in &self.copies {
            for v in c.vertices() {
                s.insert(v);
            }
        }
        s
    }

    pub fn is_perfect(&self) -> bool {
        self.copies.len() * 6 == self.n
            && self.copies.iter().all(|c| c.vertices().iter().all(|&v| v < self.n))
            && self.covered().len() == self.n
    }

    /// Appends another tiling's copies.
    pub fn extend(&mut self, other: &Tiling) {
        self.copies.extend_from_slice(&other.copies);
    }

    /// Rewrites vertex ids through `map` (for lifting from an induced host).
    pub fn mapped(&self, n: usize, map: &[usize]) -> Tiling {
        Tiling {
            n,
            copies: self.copies.iter().map(|c| c.map(|v| map[v])).collect(),
        }
    }
}

/// Pairwise disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Matching3 {
    pub edges: Vec<Triple>,
}

impl Matching3 {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covered(&self, n: usize) -> VertexSet {
        VertexSet::from_slice(n, &self.edges.iter().flatten().copied().collect::<Vec<_>>())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AbsentReason {
    /// `n` is not a multiple of 6.
    Divisibility,
    /// The search space was exhausted.
    Exhaustive,
}

/// Three-way result of a budgeted exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// Proven absent.
    Absent(AbsentReason),
    /// The budget ran out after exploring `nodes` candidates.
    Indeterminate { nodes: u64 },
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_found(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, SearchOutcome::Absent(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("{t} disjoint copies need {} vertices, host has {n}", 6 * t)]
    TooManyCopies { t: usize, n: usize },
}

/// A maximum-size result with a flag telling whether maximality is proven.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Best<T> {
    pub value: T,
    /// False when the budget ran out; `value` is then a lower bound.
    pub optimal: bool,
    pub nodes: u64,
}

fn to_tiling(h: &Hypergraph3, blocks: Vec<Vec<usize>>) -> Tiling {
    Tiling {
        n: h.n(),
        copies: blocks
            .into_iter()
            .map(|b| {
                let six: [usize; 6] = b.try_into().expect("six vertices");
                cycle_on(h, &six).expect("packed block spans a cycle")
            })
            .collect(),
    }
}

/// A C6-factor of `h`, proven absence, or a budget stop.
pub fn find_factor(h: &Hypergraph3, budget: Budget) -> SearchOutcome<Tiling> {
    if h.n() % 6 != 0 {
        return SearchOutcome::Absent(AbsentReason::Divisibility);
    }
    find_tiling_of_size(h, h.n() / 6, budget)
}

/// Exactly `t` vertex-disjoint copies.
pub fn find_t_disjoint(h: &Hypergraph3, t: usize, budget: Budget) -> Result<SearchOutcome<Tiling>, FactorError> {
    if 6 * t > h.n() {
        return Err(FactorError::TooManyCopies { t, n: h.n() });
    }
    Ok(find_tiling_of_size(h, t, budget))
}

fn find_tiling_of_size(h: &Hypergraph3, t: usize, budget: Budget) -> SearchOutcome<Tiling> {
    let mut packer = Packer::new(h, Block::Cycle, budget);
    match packer.pack(t) {
        PackResult::Found(blocks) => SearchOutcome::Found(to_tiling(h, blocks)),
        PackResult::Fail => SearchOutcome::Absent(AbsentReason::Exhaustive),
        PackResult::OutOfBudget => SearchOutcome::Indeterminate { nodes: packer.nodes() },
    }
}

/// A maximum tiling, or the best found when the budget runs out.
pub fn max_tiling(h: &Hypergraph3, budget: Budget) -> Best<Tiling> {
    let mut packer = Packer::new(h, Block::Cycle, budget);
    let (blocks, optimal) = packer.maximize(h.n() / 6);
    Best {
        value: to_tiling(h, blocks),
        optimal,
        nodes: packer.nodes(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchingMode {
    /// First-fit over edges in lexicographic order; maximal, not maximum.
    Greedy,
    /// Exact branch and bound.
    Exact,
}

pub fn max_matching3(h: &Hypergraph3, mode: MatchingMode, budget: Budget) -> Best<Matching3> {
    match mode {
        MatchingMode::Greedy => Best {
            value: greedy_matching(h, &VertexSet::full(h.n())),
            optimal: false,
            nodes: h.edge_count() as u64,
        },
        MatchingMode::Exact => {
            let mut packer = Packer::new(h, Block::Edge, budget);
            let (blocks, optimal) = packer.maximize(h.n() / 3);
            Best {
                value: Matching3 {
                    edges: blocks.into_iter().map(|b| [b[0], b[1], b[2]]).collect(),
                },
                optimal,
                nodes: packer.nodes(),
            }
        }
    }
}

/// First-fit maximal matching among edges inside `within`.
pub(crate) fn greedy_matching(h: &Hypergraph3, within: &VertexSet) -> Matching3 {
    let mut free = within.clone();
    let mut edges = Vec::new();
    for &e in h.edges() {
        if e.iter().all(|&v| free.contains(v)) {
            for v in e {
                free.remove(v);
            }
            edges.push(e);
        }
    }
    Matching3 { edges }
}

#[cfg(test)]
mod tests;
