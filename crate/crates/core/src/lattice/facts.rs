//! Triangle-count lower bounds for dense graphs, checked by brute force.

use serde::Serialize;

/// A simple graph on at most 64 vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= 64, "SimpleGraph holds at most 64 vertices");
        SimpleGraph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges with one end in `a` and one in `b` (`a` and `b` disjoint).
    pub fn cross_edges(&self, a: &[usize], b: &[usize]) -> usize {
        a.iter().map(|&u| b.iter().filter(|&&v| self.has_edge(u, v)).count()).sum()
    }

    pub fn edges_within(&self, a: &[usize]) -> usize {
        a.iter()
            .enumerate()
            .map(|(i, &u)| a[i + 1..].iter().filter(|&&v| self.has_edge(u, v)).count())
            .sum()
    }

    /// Brute force over all vertex triples.
    pub fn triangle_count(&self) -> usize {
        let mut t = 0;
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    t += (v + 1..self.n).filter(|&w| self.has_edge(u, w) && self.has_edge(v, w)).count();
                }
            }
        }
        t
    }
}

/// A premise, the brute-force count, and the promised lower bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactCheck {
    pub premise: bool,
    pub count: usize,
    pub bound: f64,
}

impl FactCheck {
    /// True unless the premise holds and the count falls short.
    pub fn holds(&self) -> bool {
        !self.premise || self.count as f64 >= self.bound - 1e-9
    }
}

fn c2(n: usize) -> f64 {
    (n * n.saturating_sub(1)) as f64 / 2.0
}

fn c3(n: usize) -> f64 {
    (n * n.saturating_sub(1) * n.saturating_sub(2)) as f64 / 6.0
}

/// Density at least `1 - gamma` forces `(1 - 3 gamma) C(n, 3)` triangles.
pub fn dense_triangle_check(g: &SimpleGraph, gamma: f64) -> FactCheck {
    FactCheck {
        premise: g.edge_count() as f64 >= (1.0 - gamma) * c2(g.n()),
        count: g.triangle_count(),
        bound: (1.0 - 3.0 * gamma) * c3(g.n()),
    }
}

/// Three disjoint parts, each pair of parts at density at least
/// `1 - gamma`, force `(1 - 3 gamma) |V1||V2||V3|` transversal triangles.
pub fn tripartite_triangle_check(g: &SimpleGraph, parts: [&[usize]; 3], gamma: f64) -> FactCheck {
    let [a, b, c] = parts;
    let premise = [(a, b), (a, c), (b, c)]
        .iter()
        .all(|(x, y)| g.cross_edges(x, y) as f64 >= (1.0 - gamma) * (x.len() * y.len()) as f64);
    let mut count = 0;
    for &u in a {
        for &v in b {
            if !g.has_edge(u, v) {
                continue;
            }
            count += c.iter().filter(|&&w| g.has_edge(u, w) && g.has_edge(v, w)).count();
        }
    }
    FactCheck {
        premise,
        count,
        bound: (1.0 - 3.0 * gamma) * (a.len() * b.len() * c.len()) as f64,
    }
}

/// `V1` of density at least `1 - gamma` and size at least `gamma2 / gamma`,
/// with cross density at least `gamma2` to `V2`, forces
/// `(gamma2^2 - 2 gamma) C(|V1|, 2) |V2|` triangles with two vertices in
/// `V1` and one in `V2`.
pub fn split_triangle_check(g: &SimpleGraph, v1: &[usize], v2: &[usize], gamma: f64, gamma2: f64) -> FactCheck {
    let premise = v1.len() as f64 >= gamma2 / gamma
        && g.edges_within(v1) as f64 >= (1.0 - gamma) * c2(v1.len())
        && g.cross_edges(v1, v2) as f64 >= gamma2 * (v1.len() * v2.len()) as f64;
    let mut count = 0;
    for (i, &u) in v1.iter().enumerate() {
        for &v in &v1[i + 1..] {
            if g.has_edge(u, v) {
                count += v2.iter().filter(|&&w| g.has_edge(u, w) && g.has_edge(v, w)).count();
            }
        }
    }
    FactCheck {
        premise,
        count,
        bound: (gamma2 * gamma2 - 2.0 * gamma) * c2(v1.len()) * v2.len() as f64,
    }
}
