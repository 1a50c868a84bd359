//! Almost-perfect matchings by augmentation, or a sparse `floor(2n/3)`-set.
//!
//! Starting from a maximal matching `M` with uncovered set `U`, each round
//! picks `t = ceil(3 / gamma)` disjoint pairs `A_i` inside `U` of codegree at
//! least `n/3 - gamma n`, lets `D` be the matched vertices completing at
//! least three of the `A_i` to edges, and then either
//! - finds a matching edge with two vertices in `D` and splits it into two
//!   edges through distinct `A_i`, or
//! - finds an edge `e0` inside `V_D \ D` (`V_D` the matching edges meeting
//!   `D`) and swaps the edges it meets for `e0` plus one `A_i`-edge per
//!   `D`-vertex,
//!
//! each growing `M` by one. If neither applies, `V_D \ D` spans no edge and,
//! padded to `floor(2n/3)` vertices, is returned as a certificate.

use serde::Serialize;

use crate::bits::VertexSet;
use crate::budget::Budget;
use crate::factor::{greedy_matching, Matching3};
use crate::hypergraph::{sort3, Hypergraph3};

/// A `floor(2n/3)`-set spanning at most `bound` edges.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalCertificate {
    pub b: Vec<usize>,
    pub e_b: usize,
    pub bound: f64,
    /// True when built from the uncovered set because fewer than `t`
    /// suitable pairs existed, rather than from `V_D \ D`.
    pub fallback: bool,
}

impl ExtremalCertificate {
    /// Recomputes `e(B)` and checks size and bound.
    pub fn check(&self, h: &Hypergraph3) -> bool {
        let set = VertexSet::from_slice(h.n(), &self.b);
        set.len() == self.b.len()
            && self.b.len() == 2 * h.n() / 3
            && h.induced_edge_count(&set) == self.e_b
            && self.e_b as f64 <= self.bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum AlmostOutcome {
    Matching {
        matching: Matching3,
        uncovered: usize,
        augmentations: usize,
    },
    Certificate {
        certificate: ExtremalCertificate,
        augmentations: usize,
    },
    Indeterminate {
        reason: String,
        augmentations: usize,
    },
}

struct State<'a> {
    h: &'a Hypergraph3,
    edges: Vec<[usize; 3]>,
    owner: Vec<Option<usize>>,
}

impl<'a> State<'a> {
    fn new(h: &'a Hypergraph3, m: Matching3) -> Self {
        let mut s = State {
            h,
            edges: Vec::new(),
            owner: vec![None; h.n()],
        };
        for e in m.edges {
            s.push(e);
        }
        s
    }

    fn push(&mut self, e: [usize; 3]) {
        let i = self.edges.len();
        for v in e {
            debug_assert!(self.owner[v].is_none());
            self.owner[v] = Some(i);
        }
        self.edges.push(sort3(e));
    }

    /// Replaces the edges with the given indices by `new` edges.
    fn replace(&mut self, old: &[usize], new: &[[usize; 3]]) {
        let keep: Vec<[usize; 3]> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !old.contains(i))
            .map(|(_, e)| *e)
            .collect();
        self.edges.clear();
        self.owner.iter_mut().for_each(|o| *o = None);
        for e in keep.into_iter().chain(new.iter().copied()) {
            self.push(e);
        }
    }

    fn uncovered(&self) -> VertexSet {
        let mut u = VertexSet::empty(self.h.n());
        for (v, o) in self.owner.iter().enumerate() {
            if o.is_none() {
                u.insert(v);
            }
        }
        u
    }

    /// Adds edges inside the uncovered set until it spans none.
    fn extend_greedily(&mut self) {
        for e in greedy_matching(self.h, &self.uncovered()).edges {
            self.push(e);
        }
    }

    fn matching(&self) -> Matching3 {
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        Matching3 { edges }
    }
}

/// Pads `base` to `size` vertices, each time adding the vertex that closes
/// the fewest edges with the current set; drops the highest-degree vertices
/// when `base` is too large.
fn pad_to(h: &Hypergraph3, base: &VertexSet, size: usize) -> VertexSet {
    let mut b = base.clone();
    while b.len() > size {
        let worst = b.iter().max_by_key(|&v| (h.vertex_deg_into(v, &b), v)).expect("nonempty");
        b.remove(worst);
    }
    while b.len() < size {
        let best = (0..h.n())
            .filter(|&v| !b.contains(v))
            .min_by_key(|&v| (h.vertex_deg_into(v, &b), v))
            .expect("enough vertices");
        b.insert(best);
    }
    b
}

fn certificate(h: &Hypergraph3, base: &VertexSet, gamma: f64, fallback: bool) -> Result<ExtremalCertificate, String> {
    let n = h.n();
    let b = pad_to(h, base, 2 * n / 3);
    let e_b = h.induced_edge_count(&b);
    let bound = gamma * (n as f64).powi(3);
    if e_b as f64 > bound {
        return Err(format!("padded set spans {e_b} edges, above the bound {bound}"));
    }
    Ok(ExtremalCertificate {
        b: b.to_vec(),
        e_b,
        bound,
        fallback,
    })
}

/// Either a maximal matching leaving at most `alpha n` vertices uncovered,
/// a certificate that `H` is `gamma`-extremal, or a budget/fallback stop.
pub fn almost_perfect_matching(h: &Hypergraph3, gamma: f64, alpha: f64, budget: Budget) -> AlmostOutcome {
    let n = h.n();
    let t = (3.0 / gamma).ceil() as usize;
    let low = n as f64 / 3.0 - gamma * n as f64;
    let mut meter = budget.start();
    let mut st = State::new(h, greedy_matching(h, &VertexSet::full(n)));
    let mut augmentations = 0;

    loop {
        let u = st.uncovered();
        if u.len() as f64 <= alpha * n as f64 {
            return AlmostOutcome::Matching {
                uncovered: u.len(),
                matching: st.matching(),
                augmentations,
            };
        }
        if !meter.tick() {
            return AlmostOutcome::Indeterminate {
                reason: "budget exhausted".into(),
                augmentations,
            };
        }

        // Disjoint high-codegree pairs inside U.
        let mut pairs: Vec<[usize; 2]> = Vec::with_capacity(t);
        let mut free = u.clone();
        for a in u.iter() {
            if pairs.len() == t {
                break;
            }
            if !free.contains(a) {
                continue;
            }
            let found = free.iter().find(|&b| b > a && h.codegree(a, b) as f64 >= low);
            if let Some(b) = found {
                pairs.push([a, b]);
                free.remove(a);
                free.remove(b);
            }
        }
        if pairs.len() < t {
            return match certificate(h, &u, gamma, true) {
                Ok(certificate) => AlmostOutcome::Certificate {
                    certificate,
                    augmentations,
                },
                Err(why) => AlmostOutcome::Indeterminate {
                    reason: format!("only {} of {t} pairs available in U; {why}", pairs.len()),
                    augmentations,
                },
            };
        }

        // completions[v]: indices i with {v} + A_i an edge.
        let completions = |v: usize| -> Vec<usize> {
            pairs
                .iter()
                .enumerate()
                .filter(|(_, p)| h.contains_edge(v, p[0], p[1]))
                .map(|(i, _)| i)
                .collect()
        };
        let mut in_d = vec![false; n];
        let mut d_of_edge: Vec<Vec<usize>> = vec![Vec::new(); st.edges.len()];
        for (i, e) in st.edges.iter().enumerate() {
            for &v in e {
                if completions(v).len() >= 3 {
                    in_d[v] = true;
                    d_of_edge[i].push(v);
                }
            }
        }

        // Some matching edge with two D-vertices: split it.
        if let Some((i, xy)) = d_of_edge.iter().enumerate().find(|(_, d)| d.len() >= 2) {
            let (x, y) = (xy[0], xy[1]);
            let cx = completions(x);
            let cy = completions(y);
            let ax = cx[0];
            let ay = *cy.iter().find(|&&j| j != ax).expect("three completions");
            let new = [[x, pairs[ax][0], pairs[ax][1]], [y, pairs[ay][0], pairs[ay][1]]];
            st.replace(&[i], &new);
            st.extend_greedily();
            augmentations += 1;
            continue;
        }

        let mut rest = VertexSet::empty(n);
        for (i, e) in st.edges.iter().enumerate() {
            if !d_of_edge[i].is_empty() {
                for &v in e {
                    if !in_d[v] {
                        rest.insert(v);
                    }
                }
            }
        }
        let e0 = h
            .edges()
            .iter()
            .find(|e| e.iter().all(|&v| rest.contains(v)))
            .copied();
        match e0 {
            Some(e0) => {
                let mut hit: Vec<usize> = e0.iter().map(|&v| st.owner[v].expect("matched")).collect();
                hit.sort_unstable();
                hit.dedup();
                let mut used = vec![false; pairs.len()];
                let mut new = vec![e0];
                for &i in &hit {
                    let v = d_of_edge[i][0];
                    let j = completions(v)
                        .into_iter()
                        .find(|&j| !used[j])
                        .expect("at most three D-vertices, each with three completions");
                    used[j] = true;
                    new.push([v, pairs[j][0], pairs[j][1]]);
                }
                st.replace(&hit, &new);
                st.extend_greedily();
                augmentations += 1;
            }
            None => {
                return match certificate(h, &rest, gamma, false) {
                    Ok(certificate) => AlmostOutcome::Certificate {
                        certificate,
                        augmentations,
                    },
                    Err(why) => AlmostOutcome::Indeterminate {
                        reason: why,
                        augmentations,
                    },
                };
            }
        }
    }
}
