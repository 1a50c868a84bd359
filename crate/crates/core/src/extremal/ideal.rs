use serde::Serialize;

use crate::bits::VertexSet;
use crate::cycle::{is_cycle_copy, CycleCopy};
use crate::factor::Tiling;
use crate::hypergraph::Hypergraph3;
use crate::matching::left_perfect_matching;
use crate::rng::{shuffle, sub_rng};

use super::ExtremalError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AttemptFailure {
    pub attempt: usize,
    pub stage: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealOutcome {
    pub tiling: Option<Tiling>,
    /// One entry per failed attempt.
    pub failures: Vec<AttemptFailure>,
    /// For the successful attempt, the chains `z1 z2 z3 z4` in copy order.
    pub chains: Vec<[usize; 4]>,
}

/// Tiles `X + Z` (with `|Z| = 2|X|`) by copies made of one X-pair and one
/// 4-chain of Z whose consecutive pairs are good.
///
/// A pair `uv` of Z is good when it misses at most `rho |X|` extensions into
/// X. Each attempt splits Z into four random quarters, takes perfect
/// matchings of good pairs between consecutive quarters, pairs X at random
/// and looks for a perfect matching between X-pairs and chains, where
/// `{x, x'}` fits chain `z1 z2 z3 z4` iff `x z1 z2`, `x' z2 z3` and
/// `x z3 z4` are edges. The copy has links `z2, z3, x` and inners
/// `x', z4, z1`.
pub fn ideal_factor(
    h: &Hypergraph3,
    x: &[usize],
    z: &[usize],
    rho: f64,
    seed: u64,
    max_attempts: usize,
) -> Result<IdealOutcome, ExtremalError> {
    let n = h.n();
    let xs = VertexSet::from_slice(n, x);
    let zs = VertexSet::from_slice(n, z);
    let sizes_ok = x.iter().chain(z).all(|&v| v < n) && xs.len() == x.len() && zs.len() == z.len();
    if !sizes_ok || !xs.is_disjoint(&zs) || z.len() != 2 * x.len() || x.len() % 2 != 0 {
        return Err(ExtremalError::IdealShape {
            x: x.len(),
            z: z.len(),
        });
    }
    let m = x.len() / 2;
    let mut outcome = IdealOutcome {
        tiling: None,
        failures: Vec::new(),
        chains: Vec::new(),
    };
    if m == 0 {
        outcome.tiling = Some(Tiling::empty(n));
        return Ok(outcome);
    }

    let zl = z.len();
    let limit = rho * x.len() as f64;
    let mut good = vec![false; zl * zl];
    for i in 0..zl {
        for j in i + 1..zl {
            let missing = x.len() - h.pair_deg_into(z[i], z[j], &xs);
            let g = missing as f64 <= limit;
            good[i * zl + j] = g;
            good[j * zl + i] = g;
        }
    }
    let isolated: Vec<usize> = (0..zl).filter(|&i| !(0..zl).any(|j| good[i * zl + j])).map(|i| z[i]).collect();

    for attempt in 0..max_attempts.max(1) {
        let fail = |stage: &str, detail: String| AttemptFailure {
            attempt,
            stage: stage.to_string(),
            detail,
        };
        if !isolated.is_empty() {
            outcome.failures.push(fail("G has isolated vertices", format!("{isolated:?}")));
            continue;
        }
        let mut rng = sub_rng(seed, attempt as u64);
        let mut order: Vec<usize> = (0..zl).collect();
        shuffle(&mut rng, &mut order);
        let quarters: Vec<&[usize]> = order.chunks(m).collect();
        let mut xp = x.to_vec();
        shuffle(&mut rng, &mut xp);

        // chain[k] holds Z-indices of the k-th chain built so far.
        let mut chains: Vec<Vec<usize>> = quarters[0].iter().map(|&i| vec![i]).collect();
        let mut stuck = None;
        for q in 0..3 {
            let (left, right) = (quarters[q], quarters[q + 1]);
            let adj: Vec<Vec<usize>> = chains
                .iter()
                .map(|c| {
                    let last = *c.last().expect("nonempty chain");
                    (0..m).filter(|&r| good[last * zl + right[r]]).collect()
                })
                .collect();
            debug_assert_eq!(left.len(), chains.len());
            match left_perfect_matching(&adj, m) {
                Ok(mate) => {
                    for (c, r) in chains.iter_mut().zip(mate) {
                        c.push(right[r]);
                    }
                }
                Err(v) => {
                    stuck = Some(fail(
                        &format!("no perfect matching M{} in G", q + 1),
                        format!("{} vertices of Z{} see only {} of Z{}", v.left.len(), q + 1, v.neighbours.len(), q + 2),
                    ));
                    break;
                }
            }
        }
        if let Some(f) = stuck {
            outcome.failures.push(f);
            continue;
        }
        let chains: Vec<[usize; 4]> = chains.iter().map(|c| [z[c[0]], z[c[1]], z[c[2]], z[c[3]]]).collect();
        let pairs: Vec<[usize; 2]> = xp.chunks(2).map(|p| [p[0], p[1]]).collect();
        let adj: Vec<Vec<usize>> = pairs
            .iter()
            .map(|&[a, b]| {
                (0..m)
                    .filter(|&i| {
                        let [z1, z2, z3, z4] = chains[i];
                        h.contains_edge(a, z1, z2) && h.contains_edge(b, z2, z3) && h.contains_edge(a, z3, z4)
                    })
                    .collect()
            })
            .collect();
        match left_perfect_matching(&adj, m) {
            Ok(mate) => {
                let mut tiling = Tiling::empty(n);
                let mut used = Vec::with_capacity(m);
                for (j, &i) in mate.iter().enumerate() {
                    let [a, b] = pairs[j];
                    let [z1, z2, z3, z4] = chains[i];
                    let c = CycleCopy::new([z2, z3, a], [b, z4, z1]);
                    debug_assert!(is_cycle_copy(h, &c));
                    tiling.copies.push(c);
                    used.push(chains[i]);
                }
                outcome.tiling = Some(tiling);
                outcome.chains = used;
                return Ok(outcome);
            }
            Err(v) => outcome.failures.push(fail(
                "Γ has no perfect matching",
                format!("{} X-pairs fit only {} chains", v.left.len(), v.neighbours.len()),
            )),
        }
    }
    Ok(outcome)
}
