//! Absorbing sets at desk scale.
//!
//! An m-set `A` absorbs a 6-set `S` when both `H[A]` and `H[A + S]` have
//! C6-factors. [`absorbing_msets_for`] builds such sets directly: a copy `F`
//! with the same index vector as `S`, paired vertex by vertex with `S`, plus
//! for each pair `(x_i, y_i)` a set `T_i` such that `T_i + x_i` and
//! `T_i + y_i` both have factors. [`build_absorbing_family`] samples m-sets
//! at random, keeps a disjoint absorbing subfamily and adds the exceptional
//! odd-intersection copies that fix parity; [`absorb`] then swallows a
//! leftover set `U`.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::VertexSet;
use crate::budget::Budget;
use crate::cycle::{for_each_copy, CycleCopy};
use crate::factor::{find_factor, verify_tiling, SearchOutcome, Tiling};
use crate::hypergraph::Hypergraph3;
use crate::lattice::{odd_intersection_copy, reachable_5sets_avoiding, IndexVector, Partition};
use crate::rng::{sample_distinct, sub_rng};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AbsorbError {
    #[error("expected {expected} distinct vertices below n, got {got:?}")]
    BadSet { expected: &'static str, got: Vec<usize> },
    #[error("index vector {0} has an odd coordinate")]
    OddCoordinate(IndexVector),
    #[error("partition is on {got} vertices, host on {n}")]
    PartitionOrder { got: usize, n: usize },
    #[error("only partitions with at most 3 parts are supported, got {0}")]
    TooManyParts(usize),
    #[error("n = {n} is below 3m = {}", 3 * m)]
    TooSmall { n: usize, m: usize },
    #[error("bad configuration: {0}")]
    Config(String),
    #[error("no odd-intersection copy {name} found (exhaustive: {exhaustive})")]
    MissingExceptional { name: &'static str, exhaustive: bool },
    #[error("realized checks failed on all {} attempts; last: {:?}", .0.len(), .0.last())]
    RetriesExhausted(Vec<FamilyStats>),
    #[error("|U| = {0} is not a multiple of 6")]
    LeftoverSize(usize),
    #[error("U meets W at vertex {0}")]
    Overlap(usize),
    #[error("{needed} 6-sets to absorb but only {available} m-sets")]
    CapacityExceeded { needed: usize, available: usize },
    #[error("no subset of the exceptional copies makes U even; residues {0}")]
    ParityUnfixable(IndexVector),
    #[error("no unused m-set absorbs {0:?}")]
    NoAbsorber(Vec<usize>),
    #[error("assembled tiling failed verification: {0}")]
    Verification(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbsorbConfig {
    /// Reachability depth; `m = 36 t`.
    pub t: usize,
    /// Selection probability per m-set.
    pub p: f64,
    pub gamma1: f64,
    pub seed: u64,
    pub max_retries: usize,
    /// Cap on sampled m-sets; `None` means `n / m`.
    pub max_msets: Option<usize>,
    /// Budget for each factor search on a candidate.
    pub factor_budget: Budget,
    /// Budget for each exceptional-copy search.
    pub odd_budget: Budget,
}

impl AbsorbConfig {
    pub fn new(t: usize, seed: u64) -> Self {
        AbsorbConfig {
            t,
            p: 1e-6,
            gamma1: 1.0 / 3.0,
            seed,
            max_retries: 8,
            max_msets: None,
            factor_budget: Budget::nodes(200_000),
            odd_budget: Budget::nodes(2_000_000),
        }
    }

    pub fn m(&self) -> usize {
        36 * self.t
    }

    pub fn alpha(&self) -> f64 {
        self.gamma1 * self.gamma1
    }
}

/// One m-set built for a specific 6-set, with both factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbsorbingSet {
    pub vertices: Vec<usize>,
    pub factor: Tiling,
    pub factor_with_s: Tiling,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbsorbingSets {
    pub sets: Vec<AbsorbingSet>,
    /// Why the list is short, when it is.
    pub note: Option<String>,
}

/// Builds up to `cap` distinct absorbing m-sets for the 6-set `s`, trying
/// copies `F` in enumeration order until `budget` (counted in copies tried)
/// runs out.
pub fn absorbing_msets_for(
    h: &Hypergraph3,
    p: &Partition,
    s: &[usize],
    t: usize,
    cap: usize,
    budget: Budget,
) -> Result<AbsorbingSets, AbsorbError> {
    let n = h.n();
    if p.n() != n {
        return Err(AbsorbError::PartitionOrder { got: p.n(), n });
    }
    let s_set = checked_set(n, s, 6, "6")?;
    let target = p.index_vector(s);
    if !target.all_even() {
        return Err(AbsorbError::OddCoordinate(target));
    }
    if t == 0 {
        return Err(AbsorbError::Config("t must be positive".into()));
    }
    let m = 36 * t;
    if n < m + 6 {
        return Ok(AbsorbingSets {
            sets: Vec::new(),
            note: Some(format!("insufficient vertices: need m + 6 = {} but n = {n}", m + 6)),
        });
    }
    let mut ys = s.to_vec();
    ys.sort_unstable_by_key(|&v| (p.part_of(v), v));

    let mut sets = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut meter = budget.start();
    let mut stopped = false;
    let within = s_set.complement();
    if cap > 0 {
        for_each_copy(h, &within, Some((p, &target)), |f| {
            if !meter.tick() {
                stopped = true;
                return ControlFlow::Break(());
            }
            if let Some(a) = build_from_copy(h, p, &s_set, &ys, f, t) {
                if seen.insert(a.vertices.clone()) {
                    sets.push(a);
                }
            }
            if sets.len() >= cap {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
    }
    let note = if sets.len() >= cap {
        None
    } else if stopped {
        Some("budget exhausted".to_string())
    } else if sets.is_empty() {
        Some("no copy with a matching index vector extends to an absorbing set".to_string())
    } else {
        Some("construction exhausted".to_string())
    };
    Ok(AbsorbingSets { sets, note })
}

fn checked_set(n: usize, s: &[usize], size: usize, label: &'static str) -> Result<VertexSet, AbsorbError> {
    let bad = || AbsorbError::BadSet {
        expected: label,
        got: s.to_vec(),
    };
    if s.iter().any(|&v| v >= n) {
        return Err(bad());
    }
    let set = VertexSet::from_slice(n, s);
    if set.len() != s.len() || (size > 0 && s.len() != size) {
        return Err(bad());
    }
    Ok(set)
}

fn build_from_copy(
    h: &Hypergraph3,
    p: &Partition,
    s_set: &VertexSet,
    ys: &[usize],
    f: CycleCopy,
    t: usize,
) -> Option<AbsorbingSet> {
    let n = h.n();
    let mut xs = f.vertices().to_vec();
    xs.sort_unstable_by_key(|&v| (p.part_of(v), v));
    let mut used = s_set.clone();
    for &x in &xs {
        used.insert(x);
    }
    let mut with_x = Vec::new();
    let mut with_y = vec![f];
    for (&x, &y) in xs.iter().zip(ys) {
        let r = reachable_5sets_avoiding(h, x, y, &used, 1).ok()?;
        let (five, cx, cy) = r.witnesses.into_iter().next()?;
        for v in five {
            used.insert(v);
        }
        with_x.push(cx);
        with_y.push(cy);
        // Deeper sets: pad with copies shared by both factors.
        for _ in 1..t {
            let c = first_copy(h, &used.complement())?;
            for v in c.vertices() {
                used.insert(v);
            }
            with_x.push(c);
            with_y.push(c);
        }
    }
    let factor = Tiling { n, copies: with_x };
    let factor_with_s = Tiling { n, copies: with_y };
    let a = factor.covered();
    let mut a_s = a.clone();
    a_s.union_with(s_set);
    if !(verify_tiling(h, &factor, false).ok
        && verify_tiling(h, &factor_with_s, false).ok
        && factor_with_s.covered() == a_s
        && a.is_disjoint(s_set))
    {
        return None;
    }
    Some(AbsorbingSet {
        vertices: a.to_vec(),
        factor,
        factor_with_s,
    })
}

fn first_copy(h: &Hypergraph3, within: &VertexSet) -> Option<CycleCopy> {
    let mut hit = None;
    for_each_copy(h, within, None, |c| {
        hit = Some(c);
        ControlFlow::Break(())
    });
    hit
}

/// A sampled m-set that passed the absorbing test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaggedMSet {
    pub vertices: Vec<usize>,
    /// Even 6-set classes whose test representative it absorbed.
    pub classes: Vec<IndexVector>,
    /// A factor of `H[A]`.
    pub factor: Tiling,
}

/// Realized analogues of the selection bounds for one attempt.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyStats {
    pub attempt: usize,
    /// `round(p C(n, m))` before capping; may be infinite.
    pub expected: f64,
    pub sampled: usize,
    pub size_bound: f64,
    pub intersecting_pairs: usize,
    pub intersecting_bound: f64,
    pub dropped_intersecting: usize,
    pub dropped_non_absorbing: usize,
    pub kept: usize,
}

impl FamilyStats {
    fn within_bounds(&self) -> bool {
        self.sampled as f64 <= self.size_bound && self.intersecting_pairs as f64 <= self.intersecting_bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbsorbingFamily {
    pub partition: Partition,
    pub msets: Vec<TaggedMSet>,
    /// Empty for one part, `[F0]` for two, `[F1, F2]` for three.
    pub exceptional: Vec<CycleCopy>,
    pub w: Vec<usize>,
    /// A factor of `H[W]`.
    pub factor: Tiling,
    pub stats: FamilyStats,
    /// Per even class, how many m-sets carry its tag.
    pub capacity: Vec<(IndexVector, usize)>,
    pub m: usize,
    pub factor_budget: Budget,
}

/// All vectors with `r` even coordinates summing to 6.
pub fn even_classes(r: usize) -> Vec<IndexVector> {
    fn rec(r: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexVector>) {
        if cur.len() + 1 == r {
            cur.push(left);
            out.push(IndexVector::new(cur.clone()));
            cur.pop();
            return;
        }
        for c in (0..=left).rev().step_by(2) {
            cur.push(c);
            rec(r, left - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        rec(r, 6, &mut Vec::new(), &mut out);
    }
    out
}

fn ln_binom(n: usize, k: usize) -> f64 {
    (0..k).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum()
}

pub fn build_absorbing_family(h: &Hypergraph3, p: &Partition, cfg: &AbsorbConfig) -> Result<AbsorbingFamily, AbsorbError> {
    let n = h.n();
    if p.n() != n {
        return Err(AbsorbError::PartitionOrder { got: p.n(), n });
    }
    if p.r() > 3 {
        return Err(AbsorbError::TooManyParts(p.r()));
    }
    if cfg.t == 0 || !(0.0..=1.0).contains(&cfg.p) || cfg.gamma1 <= 0.0 {
        return Err(AbsorbError::Config(format!(
            "need t >= 1, p in [0, 1], gamma1 > 0; got t = {}, p = {}, gamma1 = {}",
            cfg.t, cfg.p, cfg.gamma1
        )));
    }
    let m = cfg.m();
    if n < 3 * m {
        return Err(AbsorbError::TooSmall { n, m });
    }
    let exceptional = exceptional_copies(h, p, cfg.odd_budget)?;
    let mut reserved = VertexSet::empty(n);
    for c in &exceptional {
        for v in c.vertices() {
            reserved.insert(v);
        }
    }
    let pool = reserved.complement().to_vec();
    let classes = even_classes(p.r());
    let expected = (cfg.p.ln() + ln_binom(n, m)).exp().round();
    let cap = cfg.max_msets.unwrap_or(n / m);
    let count = if expected.is_finite() { (expected as usize).min(cap) } else { cap };

    let mut history = Vec::new();
    for attempt in 0..cfg.max_retries.max(1) {
        let mut rng = sub_rng(cfg.seed, attempt as u64);
        let sampled: Vec<VertexSet> = (0..count)
            .map(|_| {
                let picks: Vec<usize> = sample_distinct(&mut rng, pool.len(), m).into_iter().map(|i| pool[i]).collect();
                VertexSet::from_slice(n, &picks)
            })
            .collect();
        let mut intersecting_pairs = 0;
        for i in 0..sampled.len() {
            for j in i + 1..sampled.len() {
                if !sampled[i].is_disjoint(&sampled[j]) {
                    intersecting_pairs += 1;
                }
            }
        }
        // Keep the earliest member of each intersecting pair.
        let mut disjoint: Vec<&VertexSet> = Vec::new();
        for a in &sampled {
            if disjoint.iter().all(|b| a.is_disjoint(b)) {
                disjoint.push(a);
            }
        }
        let mut w_all = reserved.clone();
        for a in &disjoint {
            w_all.union_with(a);
        }
        let outside = w_all.complement();
        let mut msets = Vec::new();
        for a in &disjoint {
            if let Some(tagged) = tag_mset(h, p, a, &outside, &classes, cfg.factor_budget) {
                msets.push(tagged);
            }
        }
        let stats = FamilyStats {
            attempt,
            expected,
            sampled: sampled.len(),
            size_bound: cfg.gamma1 * n as f64,
            intersecting_pairs,
            intersecting_bound: cfg.alpha() * n as f64 / 4.0,
            dropped_intersecting: sampled.len() - disjoint.len(),
            dropped_non_absorbing: disjoint.len() - msets.len(),
            kept: msets.len(),
        };
        log::debug!("absorbing family attempt {attempt}: {stats:?}");
        if !stats.within_bounds() {
            history.push(stats);
            continue;
        }
        let mut factor = Tiling {
            n,
            copies: exceptional.clone(),
        };
        let mut w = reserved.clone();
        for a in &msets {
            factor.extend(&a.factor);
            for &v in &a.vertices {
                w.insert(v);
            }
        }
        let capacity = classes
            .iter()
            .map(|c| (c.clone(), msets.iter().filter(|a| a.classes.contains(c)).count()))
            .collect();
        return Ok(AbsorbingFamily {
            partition: p.clone(),
            msets,
            exceptional,
            w: w.to_vec(),
            factor,
            stats,
            capacity,
            m,
            factor_budget: cfg.factor_budget,
        });
    }
    Err(AbsorbError::RetriesExhausted(history))
}

fn exceptional_copies(h: &Hypergraph3, p: &Partition, budget: Budget) -> Result<Vec<CycleCopy>, AbsorbError> {
    match p.r() {
        1 => Ok(Vec::new()),
        2 => {
            let r = odd_intersection_copy(h, &p.part_set(0), None, budget);
            match r.copy {
                Some(c) => Ok(vec![c]),
                None => Err(AbsorbError::MissingExceptional {
                    name: "F0",
                    exhaustive: r.exhaustive,
                }),
            }
        }
        _ => {
            let r1 = odd_intersection_copy(h, &p.part_set(0), None, budget);
            let f1 = r1.copy.ok_or(AbsorbError::MissingExceptional {
                name: "F1",
                exhaustive: r1.exhaustive,
            })?;
            let iv = p.index_vector(&f1.vertices());
            // F1 is odd on part 0 and on exactly one other part; F2 must be
            // odd on the remaining one.
            let j = if iv.coords()[1] % 2 == 0 { 1 } else { 2 };
            let mut rest = VertexSet::full(h.n());
            for v in f1.vertices() {
                rest.remove(v);
            }
            let r2 = odd_intersection_copy(h, &p.part_set(j), Some(&rest), budget);
            let f2 = r2.copy.ok_or(AbsorbError::MissingExceptional {
                name: "F2",
                exhaustive: r2.exhaustive,
            })?;
            Ok(vec![f1, f2])
        }
    }
}

/// Factor of `H[a]` plus the classes whose lowest-id representative in
/// `outside` it absorbs.
fn tag_mset(
    h: &Hypergraph3,
    p: &Partition,
    a: &VertexSet,
    outside: &VertexSet,
    classes: &[IndexVector],
    budget: Budget,
) -> Option<TaggedMSet> {
    let factor = factor_on(h, a, budget)?;
    let mut tags = Vec::new();
    for class in classes {
        let Some(rep) = representative(p, outside, class) else {
            continue;
        };
        let mut with = a.clone();
        for v in rep {
            with.insert(v);
        }
        if factor_on(h, &with, budget).is_some() {
            tags.push(class.clone());
        }
    }
    if tags.is_empty() {
        return None;
    }
    Some(TaggedMSet {
        vertices: a.to_vec(),
        classes: tags,
        factor,
    })
}

fn representative(p: &Partition, outside: &VertexSet, class: &IndexVector) -> Option<Vec<usize>> {
    let mut rep = Vec::new();
    for (i, &k) in class.coords().iter().enumerate() {
        let got: Vec<usize> = p.part(i).iter().copied().filter(|&v| outside.contains(v)).take(k).collect();
        if got.len() < k {
            return None;
        }
        rep.extend(got);
    }
    Some(rep)
}

/// A factor of `H[set]` in host ids, or `None` if absent or out of budget.
fn factor_on(h: &Hypergraph3, set: &VertexSet, budget: Budget) -> Option<Tiling> {
    let (sub, map) = h.induced(set);
    match find_factor(&sub, budget) {
        SearchOutcome::Found(t) => Some(t.mapped(h.n(), &map)),
        _ => None,
    }
}

/// A perfect tiling of `W + U`.
pub fn absorb(h: &Hypergraph3, fam: &AbsorbingFamily, u: &[usize]) -> Result<Tiling, AbsorbError> {
    let n = h.n();
    let u_set = checked_set(n, u, 0, "distinct")?;
    if u.len() % 6 != 0 {
        return Err(AbsorbError::LeftoverSize(u.len()));
    }
    let w = VertexSet::from_slice(n, &fam.w);
    if let Some(v) = u.iter().copied().find(|&v| w.contains(v)) {
        return Err(AbsorbError::Overlap(v));
    }
    let p = &fam.partition;

    // Parity: choose which exceptional copies are absorbed along with U.
    let k = fam.exceptional.len();
    let mut subsets: Vec<u32> = (0..1u32 << k).collect();
    subsets.sort_by_key(|s| s.count_ones());
    let mut chosen = None;
    for s in subsets {
        let mut left = u_set.clone();
        for (i, c) in fam.exceptional.iter().enumerate() {
            if s >> i & 1 == 1 {
                for v in c.vertices() {
                    left.insert(v);
                }
            }
        }
        if p.index_vector_of(&left).all_even() {
            chosen = Some((s, left));
            break;
        }
    }
    let Some((mask, left)) = chosen else {
        let residues = IndexVector::new(p.index_vector_of(&u_set).coords().iter().map(|c| c % 2).collect());
        return Err(AbsorbError::ParityUnfixable(residues));
    };

    // Pair vertices within parts, then group pairs into even 6-sets.
    let mut pairs = Vec::new();
    for i in 0..p.r() {
        let vs: Vec<usize> = p.part(i).iter().copied().filter(|&v| left.contains(v)).collect();
        pairs.extend(vs.chunks(2).map(|c| [c[0], c[1]]));
    }
    let sixes: Vec<Vec<usize>> = pairs.chunks(3).map(|c| c.iter().flatten().copied().collect()).collect();
    if sixes.len() > fam.msets.len() {
        return Err(AbsorbError::CapacityExceeded {
            needed: sixes.len(),
            available: fam.msets.len(),
        });
    }

    let mut used = vec![false; fam.msets.len()];
    let mut tiling = Tiling::empty(n);
    for s in &sixes {
        let class = p.index_vector(s);
        let mut order: Vec<usize> = (0..fam.msets.len()).filter(|&i| !used[i]).collect();
        order.sort_by_key(|&i| !fam.msets[i].classes.contains(&class));
        let mut done = false;
        for i in order {
            let mut with = VertexSet::from_slice(n, &fam.msets[i].vertices);
            for &v in s {
                with.insert(v);
            }
            if let Some(t) = factor_on(h, &with, fam.factor_budget) {
                used[i] = true;
                tiling.extend(&t);
                done = true;
                break;
            }
        }
        if !done {
            return Err(AbsorbError::NoAbsorber(s.clone()));
        }
    }
    for (i, a) in fam.msets.iter().enumerate() {
        if !used[i] {
            tiling.extend(&a.factor);
        }
    }
    for (i, c) in fam.exceptional.iter().enumerate() {
        if mask >> i & 1 == 0 {
            tiling.copies.push(*c);
        }
    }

    let mut target = w;
    target.union_with(&u_set);
    let v = verify_tiling(h, &tiling, false);
    if !v.ok {
        return Err(AbsorbError::Verification(v.diagnostic.unwrap_or_default()));
    }
    if tiling.covered() != target {
        return Err(AbsorbError::Verification("tiling does not cover exactly W + U".into()));
    }
    Ok(tiling)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_are_even() {
        assert_eq!(even_classes(1), vec![IndexVector::new(vec![6])]);
        assert_eq!(even_classes(2).len(), 4);
        let three = even_classes(3);
        assert_eq!(three.len(), 10);
        assert!(three.iter().all(|c| c.all_even() && c.sum() == 6));
    }

    #[test]
    fn msets_on_complete() {
        let h = Hypergraph3::complete(60);
        let p = Partition::trivial(60);
        let s = [3, 10, 17, 30, 41, 59];
        let r = absorbing_msets_for(&h, &p, &s, 1, 2, Budget::UNLIMITED).unwrap();
        assert_eq!(r.sets.len(), 2);
        for a in &r.sets {
            assert_eq!(a.vertices.len(), 36);
            assert!(a.vertices.iter().all(|v| !s.contains(v)));
            assert!(verify_tiling(&h, &a.factor, false).ok);
            assert!(verify_tiling(&h, &a.factor_with_s, false).ok);
            assert_eq!(a.factor_with_s.covered().len(), 42);
        }
    }

    #[test]
    fn msets_trivial_cases() {
        let r = absorbing_msets_for(&Hypergraph3::complete(12), &Partition::trivial(12), &[0, 1, 2, 3, 4, 5], 1, 1, Budget::UNLIMITED)
            .unwrap();
        assert!(r.sets.is_empty());
        assert!(r.note.unwrap().contains("insufficient vertices"));
        let r = absorbing_msets_for(&Hypergraph3::empty(60), &Partition::trivial(60), &[0, 1, 2, 3, 4, 5], 1, 1, Budget::UNLIMITED)
            .unwrap();
        assert!(r.sets.is_empty());
        let p = Partition::split(60, &(0..30).collect::<Vec<_>>()).unwrap();
        let err = absorbing_msets_for(&Hypergraph3::complete(60), &p, &[0, 1, 2, 30, 31, 32], 1, 1, Budget::UNLIMITED);
        assert!(matches!(err, Err(AbsorbError::OddCoordinate(_))));
    }

    #[test]
    fn family_round_trip_complete() {
        let h = Hypergraph3::complete(120);
        let p = Partition::trivial(120);
        let fam = build_absorbing_family(&h, &p, &AbsorbConfig::new(1, 5)).unwrap();
        assert!(!fam.msets.is_empty());
        assert!(verify_tiling(&h, &fam.factor, false).ok);
        assert_eq!(fam.factor.covered().to_vec(), fam.w);
        assert_eq!(absorb(&h, &fam, &[]).unwrap().covered().to_vec(), fam.w);
        let w = VertexSet::from_slice(120, &fam.w);
        let u: Vec<usize> = w.complement().iter().take(6).collect();
        let t = absorb(&h, &fam, &u).unwrap();
        assert_eq!(t.covered().len(), fam.w.len() + 6);
        assert!(matches!(absorb(&h, &fam, &u[..5]), Err(AbsorbError::LeftoverSize(5))));
    }

    #[test]
    fn family_preconditions() {
        let h = Hypergraph3::complete(60);
        let err = build_absorbing_family(&h, &Partition::trivial(60), &AbsorbConfig::new(1, 0));
        assert!(matches!(err, Err(AbsorbError::TooSmall { n: 60, m: 36 })));
        // Two parts with every edge inside one part: no odd copy exists.
        let two = Hypergraph3::from_triples_where(120, |t| t[2] < 60 || t[0] >= 60);
        let p = Partition::split(120, &(0..60).collect::<Vec<_>>()).unwrap();
        let mut cfg = AbsorbConfig::new(1, 0);
        cfg.odd_budget = Budget::nodes(5000);
        let err = build_absorbing_family(&two, &p, &cfg).unwrap_err();
        assert!(matches!(err, AbsorbError::MissingExceptional { name: "F0", .. }));
    }

    #[test]
    fn two_parts_use_exceptional_copy() {
        let h = Hypergraph3::complete(120);
        let p = Partition::split(120, &(0..60).collect::<Vec<_>>()).unwrap();
        let fam = build_absorbing_family(&h, &p, &AbsorbConfig::new(1, 2)).unwrap();
        assert_eq!(fam.exceptional.len(), 1);
        let w = VertexSet::from_slice(120, &fam.w);
        let free = w.complement();
        let even: Vec<usize> = free.iter().filter(|&v| v < 60).take(2).chain(free.iter().filter(|&v| v >= 60).take(4)).collect();
        let t = absorb(&h, &fam, &even).unwrap();
        assert_eq!(t.covered().len(), fam.w.len() + 6);
        assert!(t.copies.contains(&fam.exceptional[0]));
        // Odd on both parts: F0 joins U, giving two 6-sets for one m-set.
        let odd: Vec<usize> = free.iter().filter(|&v| v < 60).take(3).chain(free.iter().filter(|&v| v >= 60).take(3)).collect();
        match absorb(&h, &fam, &odd) {
            Err(AbsorbError::CapacityExceeded { needed: 2, available }) => assert_eq!(available, fam.msets.len()),
            Ok(t) => assert_eq!(t.covered().len(), fam.w.len() + 6),
            Err(e) => panic!("{e}"),
        }
    }
}
