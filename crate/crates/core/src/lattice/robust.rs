use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{IndexVector, LatticeError, Partition};
use crate::bits::VertexSet;
use crate::budget::Budget;
use crate::cycle::{copies_on, for_each_copy};
use crate::hypergraph::Hypergraph3;
use crate::rng::{self, sample_distinct};

/// 6-sets drawn when exact arity-6 counting runs out of budget.
const SAMPLE_SIZE: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorCount {
    pub vec: IndexVector,
    pub count: u64,
}

/// Sampling statistics for one vector of an estimated arity-6 report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleEstimate {
    pub vec: IndexVector,
    pub estimate: f64,
    /// Standard error of `estimate`.
    pub std_error: f64,
    /// 95% Wilson interval for the fraction of 6-sets carrying at least one
    /// copy with this vector.
    pub wilson_low: f64,
    pub wilson_high: f64,
}

/// Counts of edges (arity 3) or loose cycles (arity 6) per index vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RobustReport {
    pub arity: usize,
    pub threshold: u64,
    pub exhaustive: bool,
    /// Sorted by vector. Exact when `exhaustive`, rounded estimates otherwise.
    pub counts: Vec<VectorCount>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampled: Option<Vec<SampleEstimate>>,
}

impl RobustReport {
    pub fn from_counts(arity: usize, threshold: u64, counts: impl IntoIterator<Item = (IndexVector, u64)>) -> Self {
        let map: BTreeMap<IndexVector, u64> = counts.into_iter().collect();
        RobustReport {
            arity,
            threshold,
            exhaustive: true,
            counts: map.into_iter().map(|(vec, count)| VectorCount { vec, count }).collect(),
            sampled: None,
        }
    }

    pub fn count(&self, v: &IndexVector) -> u64 {
        self.counts
            .binary_search_by(|c| c.vec.cmp(v))
            .map_or(0, |i| self.counts[i].count)
    }

    pub fn is_robust(&self, v: &IndexVector) -> bool {
        self.count(v) >= self.threshold
    }

    /// Vectors whose count reaches the threshold, in sorted order.
    pub fn robust(&self) -> Vec<IndexVector> {
        self.counts
            .iter()
            .filter(|c| c.count >= self.threshold)
            .map(|c| c.vec.clone())
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|c| c.count).sum()
    }
}

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn wilson(successes: usize, trials: usize) -> (f64, f64) {
    let z = 1.96f64;
    let n = trials as f64;
    let p = successes as f64 / n;
    let denom = 1.0 + z * z / n;
    let centre = (p + z * z / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Index-vector census of edges (arity 3, always exact) or loose cycles
/// (arity 6). Arity-6 counting enumerates copies until `budget` runs out,
/// then falls back to sampling uniform 6-sets with `seed`.
pub fn robust_vectors(
    h: &Hypergraph3,
    p: &Partition,
    arity: usize,
    threshold: u64,
    budget: Budget,
    seed: u64,
) -> Result<RobustReport, LatticeError> {
    match arity {
        3 => {
            let mut map: BTreeMap<IndexVector, u64> = BTreeMap::new();
            for e in h.edges() {
                *map.entry(p.index_vector(e)).or_default() += 1;
            }
            Ok(RobustReport::from_counts(3, threshold, map))
        }
        6 => {
            let mut map: BTreeMap<IndexVector, u64> = BTreeMap::new();
            let mut meter = budget.start();
            let complete = for_each_copy(h, &VertexSet::full(h.n()), None, |c| {
                if !meter.tick() {
                    return ControlFlow::Break(());
                }
                *map.entry(p.index_vector(&c.vertices())).or_default() += 1;
                ControlFlow::Continue(())
            });
            if complete {
                return Ok(RobustReport::from_counts(6, threshold, map));
            }
            Ok(sample_cycles(h, p, threshold, seed))
        }
        other => Err(LatticeError::Arity(other)),
    }
}

fn sample_cycles(h: &Hypergraph3, p: &Partition, threshold: u64, seed: u64) -> RobustReport {
    let mut r = rng::rng(seed);
    // Per vector: sum of copies, sum of squares, 6-sets with at least one.
    let mut stats: BTreeMap<IndexVector, (f64, f64, usize)> = BTreeMap::new();
    for _ in 0..SAMPLE_SIZE {
        let mut six: [usize; 6] = sample_distinct(&mut r, h.n(), 6).try_into().expect("n >= 6");
        six.sort_unstable();
        let copies = copies_on(h, &six);
        if copies.is_empty() {
            continue;
        }
        // All copies on one 6-set share its index vector.
        let k = copies.len() as f64;
        let e = stats.entry(p.index_vector(&six)).or_default();
        e.0 += k;
        e.1 += k * k;
        e.2 += 1;
    }
    let scale = binom(h.n(), 6);
    let n = SAMPLE_SIZE as f64;
    let mut counts = Vec::new();
    let mut sampled = Vec::new();
    for (vec, (sum, sq, hits)) in stats {
        let mean = sum / n;
        let var = (sq / n - mean * mean).max(0.0) * n / (n - 1.0);
        let (lo, hi) = wilson(hits, SAMPLE_SIZE);
        counts.push(VectorCount {
            vec: vec.clone(),
            count: (mean * scale).round() as u64,
        });
        sampled.push(SampleEstimate {
            vec,
            estimate: mean * scale,
            std_error: scale * (var / n).sqrt(),
            wilson_low: lo,
            wilson_high: hi,
        });
    }
    RobustReport {
        arity: 6,
        threshold,
        exhaustive: false,
        counts,
        sampled: Some(sampled),
    }
}

/// Two robust cycle vectors differing by `u_i - u_j`: `to = from + u_i - u_j`.
/// Part indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transferral {
    pub from: IndexVector,
    pub to: IndexVector,
    pub i: usize,
    pub j: usize,
}

/// The lexicographically first (v, i, j) with v and v + u_i - u_j robust.
pub fn find_transferral(report: &RobustReport) -> Result<Option<Transferral>, LatticeError> {
    if report.arity != 6 {
        return Err(LatticeError::NotCycleReport);
    }
    for v in report.robust() {
        let r = v.r();
        for i in 0..r {
            for j in (0..r).filter(|&j| j != i) {
                if let Some(w) = v.shifted(i, j) {
                    if report.is_robust(&w) {
                        return Ok(Some(Transferral { from: v, to: w, i, j }));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn check_vector(p: &Partition, v: &IndexVector, sum: usize) -> Result<(), LatticeError> {
    if v.r() != p.r() {
        return Err(LatticeError::Dimension { got: v.r(), want: p.r() });
    }
    if v.sum() != sum {
        return Err(LatticeError::VectorSum { got: v.sum(), want: sum });
    }
    Ok(())
}

/// Smallest part index `i` (0-based) with `v2 + u_i` carried by at least
/// `threshold` edges.
pub fn vector_completion(
    h: &Hypergraph3,
    p: &Partition,
    v2: &IndexVector,
    threshold: u64,
) -> Result<Option<usize>, LatticeError> {
    check_vector(p, v2, 2)?;
    let report = robust_vectors(h, p, 3, threshold, Budget::UNLIMITED, 0)?;
    Ok((0..p.r()).find(|&i| report.count(&v2.plus_unit(i)) >= threshold.max(1)))
}

/// Pairs `S` with `i_P(S) = vprime` and fewer than `gamma_abs` extensions
/// into part `k` (the good pairs).
pub fn good_pairs(
    h: &Hypergraph3,
    p: &Partition,
    vprime: &IndexVector,
    k: usize,
    gamma_abs: usize,
) -> Result<Vec<[usize; 2]>, LatticeError> {
    check_vector(p, vprime, 2)?;
    if k >= p.r() {
        return Err(LatticeError::PartIndex(k));
    }
    let target = p.part_set(k);
    let mut out = Vec::new();
    for u in 0..h.n() {
        for v in u + 1..h.n() {
            if &p.index_vector(&[u, v]) == vprime && h.pair_deg_into(u, v, &target) < gamma_abs {
                out.push([u, v]);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{covered_extremal, space_barrier};

    fn iv(c: &[usize]) -> IndexVector {
        IndexVector::new(c.to_vec())
    }

    fn halves(n: usize) -> Partition {
        Partition::new(n, vec![(0..n / 2).collect(), (n / 2..n).collect()]).unwrap()
    }

    fn xy(inst: &crate::construct::LabeledInstance) -> Partition {
        Partition::new(inst.hypergraph.n(), vec![inst.sets["X"].clone(), inst.sets["Y"].clone()]).unwrap()
    }

    #[test]
    fn edge_reports() {
        let bar = space_barrier(12).unwrap();
        let r = robust_vectors(&bar.hypergraph, &xy(&bar), 3, 10, Budget::UNLIMITED, 0).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.count(&iv(&[1, 2])), 108);
        assert_eq!(r.count(&iv(&[2, 1])), 27);
        assert_eq!(r.count(&iv(&[3, 0])), 1);
        assert_eq!(r.counts.len(), 3);
        assert_eq!(r.robust(), vec![iv(&[1, 2]), iv(&[2, 1])]);
        assert_eq!(r.total(), 136);

        let k12 = Hypergraph3::complete(12);
        let r = robust_vectors(&k12, &halves(12), 3, 1, Budget::UNLIMITED, 0).unwrap();
        assert_eq!(
            r.counts.iter().map(|c| (c.vec.coords().to_vec(), c.count)).collect::<Vec<_>>(),
            vec![(vec![0, 3], 20), (vec![1, 2], 90), (vec![2, 1], 90), (vec![3, 0], 20)]
        );
    }

    #[test]
    fn cycle_reports() {
        let r = robust_vectors(&Hypergraph3::empty(12), &halves(12), 6, 1, Budget::UNLIMITED, 0).unwrap();
        assert!(r.exhaustive && r.counts.is_empty());
        let k8 = Hypergraph3::complete(8);
        let r = robust_vectors(&k8, &halves(8), 6, 1, Budget::UNLIMITED, 0).unwrap();
        assert_eq!(r.total(), 28 * 120);
        assert_eq!(r.count(&iv(&[3, 3])), 16 * 120);
        assert!(robust_vectors(&k8, &halves(8), 4, 1, Budget::UNLIMITED, 0).is_err());
    }

    #[test]
    fn sampled_cycle_report() {
        let k12 = Hypergraph3::complete(12);
        let r = robust_vectors(&k12, &halves(12), 6, 1, Budget::nodes(100), 5).unwrap();
        assert!(!r.exhaustive);
        let est = r.sampled.as_ref().unwrap();
        // True count of (3,3) copies: C(6,3)^2 * 120 = 48000.
        let e33 = est.iter().find(|s| s.vec == iv(&[3, 3])).unwrap();
        assert!((e33.estimate - 48000.0).abs() <= 4.0 * e33.std_error + 1.0);
        let total: f64 = est.iter().map(|s| s.estimate).sum();
        assert!((total - 924.0 * 120.0).abs() < 1e-6);
    }

    #[test]
    fn transferral_examples() {
        let r = RobustReport::from_counts(6, 1, [(iv(&[2, 4]), 5), (iv(&[3, 3]), 5)]);
        let t = find_transferral(&r).unwrap().unwrap();
        assert_eq!((t.from, t.i, t.j), (iv(&[2, 4]), 0, 1));
        let r = RobustReport::from_counts(6, 1, [(iv(&[2, 2, 2]), 9)]);
        assert_eq!(find_transferral(&r).unwrap(), None);
        let r = RobustReport::from_counts(6, 1, [(iv(&[4, 2, 0]), 9), (iv(&[3, 2, 1]), 9)]);
        let t = find_transferral(&r).unwrap().unwrap();
        assert_eq!((t.i, t.j), (0, 2));
        // Below-threshold vectors do not count.
        let r = RobustReport::from_counts(6, 10, [(iv(&[2, 4]), 5), (iv(&[3, 3]), 50)]);
        assert_eq!(find_transferral(&r).unwrap(), None);
        let e = RobustReport::from_counts(3, 1, []);
        assert_eq!(find_transferral(&e), Err(LatticeError::NotCycleReport));
    }

    #[test]
    fn completion_examples() {
        let c = covered_extremal(12, 4, 0.0, 0).unwrap();
        assert_eq!(vector_completion(&c.hypergraph, &xy(&c), &iv(&[0, 2]), 10).unwrap(), Some(0));
        let rep = robust_vectors(&c.hypergraph, &xy(&c), 3, 1, Budget::UNLIMITED, 0).unwrap();
        assert_eq!(rep.count(&iv(&[1, 2])), 4 * 28);
        assert_eq!(rep.count(&iv(&[0, 3])), 0);
        let k12 = Hypergraph3::complete(12);
        assert_eq!(vector_completion(&k12, &halves(12), &iv(&[2, 0]), 1).unwrap(), Some(0));
        assert_eq!(vector_completion(&Hypergraph3::empty(12), &halves(12), &iv(&[1, 1]), 1).unwrap(), None);
        assert!(vector_completion(&k12, &halves(12), &iv(&[1, 2]), 1).is_err());
    }

    #[test]
    fn good_pair_examples() {
        let c = covered_extremal(12, 4, 0.0, 0).unwrap();
        assert_eq!(good_pairs(&c.hypergraph, &xy(&c), &iv(&[0, 2]), 1, 1).unwrap().len(), 28);
        let k12 = Hypergraph3::complete(12);
        assert!(good_pairs(&k12, &halves(12), &iv(&[0, 2]), 1, 1).unwrap().is_empty());
        assert_eq!(good_pairs(&k12, &halves(12), &iv(&[0, 2]), 1, 12).unwrap().len(), 15);
        assert!(good_pairs(&k12, &halves(12), &iv(&[0, 2]), 2, 1).is_err());
    }
}
