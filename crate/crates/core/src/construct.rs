//! Instance generators: the space barrier, covered extremal hosts, ideal-case
//! hosts for the X/Z splitting routine, and binomial random 3-graphs.
//!
//! All randomness comes from [`crate::rng`], so `params` plus the recorded
//! seed regenerate an instance exactly (see [`regenerate`]).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::VertexSet;
use crate::hypergraph::Hypergraph3;
use crate::rng::{self, chance, sample_distinct, shuffle};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstructError {
    #[error("n = {n} must be a multiple of 6 and at least {min}")]
    BadOrder { n: usize, min: usize },
    #[error("|X| = {x_size} is below n/3 = {floor}")]
    SmallX { x_size: usize, floor: usize },
    #[error("|X| = {x_size} exceeds n = {n}")]
    LargeX { x_size: usize, n: usize },
    #[error("{name} = {value} is outside {range}")]
    BadParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("generated instance violates its own bound: {0}")]
    SelfCheck(String),
}

/// Generator inputs, enough to rebuild the instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorParams {
    SpaceBarrier { n: usize },
    CoveredExtremal { n: usize, x_size: usize, noise: f64, seed: u64 },
    IdealCase { n: usize, rho: f64, seed: u64 },
    Random { n: usize, p: f64, seed: u64 },
}

/// A generated host with its named vertex sets and realized statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledInstance {
    #[serde(skip)]
    pub hypergraph: Hypergraph3,
    pub sets: BTreeMap<String, Vec<usize>>,
    pub params: GeneratorParams,
    pub realized: BTreeMap<String, f64>,
}

impl LabeledInstance {
    pub fn set(&self, name: &str) -> Option<VertexSet> {
        self.sets
            .get(name)
            .map(|v| VertexSet::from_slice(self.hypergraph.n(), v))
    }
}

pub fn regenerate(params: &GeneratorParams) -> Result<LabeledInstance, ConstructError> {
    match *params {
        GeneratorParams::SpaceBarrier { n } => space_barrier(n),
        GeneratorParams::CoveredExtremal { n, x_size, noise, seed } => covered_extremal(n, x_size, noise, seed),
        GeneratorParams::IdealCase { n, rho, seed } => ideal_case_instance(n, rho, seed),
        GeneratorParams::Random { n, p, seed } => random_3graph(n, p, seed),
    }
}

fn check_order(n: usize, min: usize) -> Result<(), ConstructError> {
    if n % 6 != 0 || n < min {
        return Err(ConstructError::BadOrder { n, min });
    }
    Ok(())
}

fn check_probability(name: &'static str, p: f64) -> Result<(), ConstructError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ConstructError::BadParameter {
            name,
            value: p,
            range: "[0, 1]",
        });
    }
    Ok(())
}

fn split_sets(n: usize, x_size: usize) -> BTreeMap<String, Vec<usize>> {
    BTreeMap::from([
        ("X".to_string(), (0..x_size).collect()),
        ("Y".to_string(), (x_size..n).collect()),
    ])
}

/// All triples meeting `X = {0, .., n/3 - 2}`. Codegree n/3 - 1, no factor.
pub fn space_barrier(n: usize) -> Result<LabeledInstance, ConstructError> {
    check_order(n, 12)?;
    let x = n / 3 - 1;
    Ok(LabeledInstance {
        hypergraph: Hypergraph3::from_triples_where(n, |t| t[0] < x),
        sets: split_sets(n, x),
        params: GeneratorParams::SpaceBarrier { n },
        realized: BTreeMap::new(),
    })
}

/// All triples meeting `X = {0, .., x_size - 1}`, plus each triple inside
/// `Y` independently with probability `noise`.
pub fn covered_extremal(n: usize, x_size: usize, noise: f64, seed: u64) -> Result<LabeledInstance, ConstructError> {
    check_order(n, 6)?;
    check_probability("noise", noise)?;
    if x_size < n / 3 {
        return Err(ConstructError::SmallX { x_size, floor: n / 3 });
    }
    if x_size > n {
        return Err(ConstructError::LargeX { x_size, n });
    }
    let mut r = rng::rng(seed);
    let hypergraph = Hypergraph3::from_triples_where(n, |t| t[0] < x_size || (noise > 0.0 && chance(&mut r, noise)));
    let y = VertexSet::from_slice(n, &(x_size..n).collect::<Vec<_>>());
    let e_y = hypergraph.induced_edge_count(&y) as f64;
    Ok(LabeledInstance {
        hypergraph,
        sets: split_sets(n, x_size),
        params: GeneratorParams::CoveredExtremal { n, x_size, noise, seed },
        realized: BTreeMap::from([("e_Y".to_string(), e_y)]),
    })
}

/// Each triple independently with probability `p`, in lexicographic order.
pub fn random_3graph(n: usize, p: f64, seed: u64) -> Result<LabeledInstance, ConstructError> {
    check_probability("p", p)?;
    let mut r = rng::rng(seed);
    Ok(LabeledInstance {
        hypergraph: Hypergraph3::from_triples_where(n, |_| chance(&mut r, p)),
        sets: BTreeMap::new(),
        params: GeneratorParams::Random { n, p, seed },
        realized: BTreeMap::new(),
    })
}

/// Host for the X/Z routine: `X = {0, .., n/3 - 1}`, `Z` the rest.
///
/// Starts from all triples meeting `X`. Every Z-vertex gets at most
/// `floor(rho |Z|)` bad partners; a bad pair may lose any number of its
/// X-extensions, a good pair at most `floor(rho |X|)`. No X-vertex loses more
/// than `floor(rho C(|Z|, 2))` Z-pairs. Realized worst cases are recorded
/// and re-checked by enumeration.
pub fn ideal_case_instance(n: usize, rho: f64, seed: u64) -> Result<LabeledInstance, ConstructError> {
    check_order(n, 6)?;
    if !(0.0..1.0).contains(&rho) {
        return Err(ConstructError::BadParameter {
            name: "rho",
            value: rho,
            range: "[0, 1)",
        });
    }
    let xs = n / 3;
    let zs = n - xs;
    let z_of = |i: usize| xs + i;
    let mut r = rng::rng(seed);

    let partner_cap = (rho * zs as f64).floor() as usize;
    let pair_cap = (rho * xs as f64).floor() as usize;
    let vertex_cap = (rho * (zs * (zs - 1) / 2) as f64).floor() as usize;

    // Bad pairs: a random graph on Z with maximum degree `partner_cap`.
    let mut bad_deg = vec![0usize; zs];
    let mut bad = vec![false; zs * zs];
    if partner_cap > 0 {
        let mut order: Vec<usize> = (0..zs).collect();
        shuffle(&mut r, &mut order);
        for &u in &order {
            let wanted = partner_cap - bad_deg[u].min(partner_cap);
            for v in sample_distinct(&mut r, zs, wanted + 1) {
                if bad_deg[u] >= partner_cap {
                    break;
                }
                if v != u && !bad[u * zs + v] && bad_deg[v] < partner_cap {
                    bad[u * zs + v] = true;
                    bad[v * zs + u] = true;
                    bad_deg[u] += 1;
                    bad_deg[v] += 1;
                }
            }
        }
    }

    let mut removed_per_x = vec![0usize; xs];
    let mut deleted = std::collections::HashSet::new();
    if vertex_cap > 0 {
        let mut pairs: Vec<(usize, usize)> = (0..zs).flat_map(|a| (a + 1..zs).map(move |b| (a, b))).collect();
        shuffle(&mut r, &mut pairs);
        for (a, b) in pairs {
            let cap = if bad[a * zs + b] { xs } else { pair_cap };
            if cap == 0 {
                continue;
            }
            let k = rng::below(&mut r, cap + 1);
            for x in sample_distinct(&mut r, xs, k) {
                if removed_per_x[x] < vertex_cap {
                    removed_per_x[x] += 1;
                    deleted.insert([x, z_of(a), z_of(b)]);
                }
            }
        }
    }
    let hypergraph = Hypergraph3::from_triples_where(n, |t| t[0] < xs && !deleted.contains(&t));

    // Self-check by enumeration.
    let z = VertexSet::from_slice(n, &(xs..n).collect::<Vec<_>>());
    let x = z.complement();
    let worst_vertex = (0..xs)
        .map(|v| hypergraph.complement_degree(&[v], &z).expect("vertex query"))
        .max()
        .unwrap_or(0);
    let mut worst_good_pair = 0;
    let mut worst_bad_count = 0;
    for u in xs..n {
        let mut bad_here = 0;
        for v in xs..n {
            if u == v {
                continue;
            }
            let miss = hypergraph.complement_degree(&[u, v], &x).expect("pair query");
            if miss as f64 > rho * xs as f64 {
                bad_here += 1;
            } else {
                worst_good_pair = worst_good_pair.max(miss);
            }
        }
        worst_bad_count = worst_bad_count.max(bad_here);
    }
    if worst_vertex as f64 > rho * (zs * (zs - 1) / 2) as f64 {
        return Err(ConstructError::SelfCheck(format!("X-vertex misses {worst_vertex} Z-pairs")));
    }
    if worst_bad_count as f64 > rho * zs as f64 {
        return Err(ConstructError::SelfCheck(format!("a Z-vertex has {worst_bad_count} bad partners")));
    }
    let zpairs = (zs * (zs - 1) / 2) as f64;
    Ok(LabeledInstance {
        hypergraph,
        sets: BTreeMap::from([("X".to_string(), (0..xs).collect()), ("Z".to_string(), (xs..n).collect())]),
        params: GeneratorParams::IdealCase { n, rho, seed },
        realized: BTreeMap::from([
            ("max_missing_z_pairs".to_string(), worst_vertex as f64),
            ("rho_vertex".to_string(), worst_vertex as f64 / zpairs),
            ("max_good_pair_missing".to_string(), worst_good_pair as f64),
            ("max_bad_partners".to_string(), worst_bad_count as f64),
            ("rho_partners".to_string(), worst_bad_count as f64 / zs as f64),
        ]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom3(n: usize) -> usize {
        n * n.saturating_sub(1) * n.saturating_sub(2) / 6
    }

    #[test]
    fn barrier_examples() {
        let b = space_barrier(12).unwrap();
        assert_eq!(b.sets["X"].len(), 3);
        assert_eq!(b.hypergraph.edge_count(), binom3(12) - binom3(9));
        assert_eq!(b.hypergraph.edge_count(), 136);
        assert_eq!(b.hypergraph.min_codegree().unwrap().value, 3);
        assert!(space_barrier(10).is_err());
        assert!(space_barrier(6).is_err());
    }

    #[test]
    fn barrier_edges_meet_x() {
        let b = space_barrier(18).unwrap();
        let x = b.set("X").unwrap();
        let by_enum = (0..18)
            .flat_map(|a| (a + 1..18).flat_map(move |b| (b + 1..18).map(move |c| [a, b, c])))
            .filter(|t| t.iter().any(|&v| x.contains(v)))
            .count();
        assert_eq!(b.hypergraph.edge_count(), by_enum);
    }

    #[test]
    fn covered_examples() {
        let c = covered_extremal(12, 4, 0.0, 0).unwrap();
        assert_eq!(c.hypergraph.min_codegree().unwrap().value, 4);
        assert_eq!(c.hypergraph.induced_edge_count(&c.set("Y").unwrap()), 0);
        assert!(matches!(covered_extremal(12, 3, 0.0, 0), Err(ConstructError::SmallX { .. })));
        for n in [18, 24, 30] {
            let c = covered_extremal(n, n / 3, 0.0, 0).unwrap();
            assert_eq!(c.hypergraph.min_codegree().unwrap().value, n / 3);
        }
        let noisy = covered_extremal(24, 8, 0.05, 3).unwrap();
        assert!(noisy.hypergraph.min_codegree().unwrap().value >= 8);
        assert_eq!(noisy, covered_extremal(24, 8, 0.05, 3).unwrap());
        assert!(noisy.realized["e_Y"] > 0.0);
    }

    #[test]
    fn random_examples() {
        assert_eq!(random_3graph(6, 1.0, 0).unwrap().hypergraph.edge_count(), 20);
        assert_eq!(random_3graph(6, 0.0, 0).unwrap().hypergraph.edge_count(), 0);
        let m = random_3graph(30, 0.5, 1).unwrap().hypergraph.edge_count() as f64;
        let mean = 0.5 * binom3(30) as f64;
        let sd = (binom3(30) as f64 * 0.25).sqrt();
        assert!((m - mean).abs() <= 5.0 * sd);
        assert!(random_3graph(6, 1.5, 0).is_err());
        assert_eq!(random_3graph(20, 0.3, 9).unwrap(), random_3graph(20, 0.3, 9).unwrap());
        assert_ne!(random_3graph(20, 0.3, 9).unwrap().hypergraph, random_3graph(20, 0.3, 10).unwrap().hypergraph);
    }

    #[test]
    fn ideal_examples() {
        let i = ideal_case_instance(12, 0.0, 0).unwrap();
        assert_eq!(i.realized["max_missing_z_pairs"], 0.0);
        assert_eq!(i.realized["max_good_pair_missing"], 0.0);
        assert_eq!(i.realized["max_bad_partners"], 0.0);
        let i = ideal_case_instance(48, 0.01, 7).unwrap();
        assert!(i.realized["max_missing_z_pairs"] <= 0.01 * (32.0 * 31.0 / 2.0));
        assert!(i.realized["max_good_pair_missing"] <= 0.01 * 16.0);
        assert!(ideal_case_instance(12, 1.0, 0).is_err());
    }

    #[test]
    fn ideal_with_real_deletions() {
        let i = ideal_case_instance(60, 0.2, 5).unwrap();
        let full = Hypergraph3::from_triples_where(60, |t| t[0] < 20).edge_count();
        assert!(i.hypergraph.edge_count() < full);
        assert!(i.realized["rho_vertex"] <= 0.2);
        assert!(i.realized["rho_partners"] <= 0.2);
        assert!(i.realized["max_good_pair_missing"] <= 4.0);
    }

    #[test]
    fn regenerate_reproduces() {
        for p in [
            GeneratorParams::SpaceBarrier { n: 12 },
            GeneratorParams::CoveredExtremal { n: 24, x_size: 8, noise: 0.1, seed: 2 },
            GeneratorParams::IdealCase { n: 30, rho: 0.3, seed: 4 },
            GeneratorParams::Random { n: 15, p: 0.4, seed: 8 },
        ] {
            let a = regenerate(&p).unwrap();
            assert_eq!(a, regenerate(&p).unwrap());
            let json = serde_json::to_string(&a.params).unwrap();
            assert_eq!(serde_json::from_str::<GeneratorParams>(&json).unwrap(), p);
        }
    }
}
