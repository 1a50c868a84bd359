//! Constructive solver for hosts with codegree at least n/3 that have a
//! sparse set `B` of size 2n/3.
//!
//! The pipeline: pick `B` and hill-climb `e(B)` down by single swaps,
//! classify vertices by their degree into `B`, cover the unclassified
//! vertices and fix the size ratio with small tilings ([`cover_and_balance`]),
//! then tile the rest with [`ideal_factor`].

mod cover;
mod ideal;

use serde::Serialize;
use thiserror::Error;

use crate::almost::{almost_perfect_matching, AlmostOutcome};
use crate::bits::VertexSet;
use crate::budget::Budget;
use crate::factor::{verify_tiling, Tiling};
use crate::hypergraph::Hypergraph3;

pub use cover::{cover_and_balance, Cover};
pub use ideal::{ideal_factor, AttemptFailure, IdealOutcome};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtremalError {
    #[error("n = {0} is not a positive multiple of 6")]
    Order(usize),
    #[error("minimum codegree {min} (pair {witness:?}) is below n/3 = {need}")]
    Codegree { min: usize, need: usize, witness: Vec<usize> },
    #[error("B has {got} distinct vertices, expected 2n/3 = {want}")]
    BSize { got: usize, want: usize },
    #[error("eps = {eps} gives eps1 = {eps1}, which must lie in (0, 1/4)")]
    Eps { eps: f64, eps1: f64 },
    #[error("best B found has e(B) = {e_b} > eps n^3 = {bound}")]
    NotExtremal { e_b: usize, bound: f64 },
    #[error("stage {stage} stuck{}: {detail}", vertex.map(|v| format!(" at vertex {v}")).unwrap_or_default())]
    Stuck {
        stage: &'static str,
        vertex: Option<usize>,
        detail: String,
    },
    #[error("size bookkeeping failed: {0}")]
    Bookkeeping(String),
    #[error("ideal split needs disjoint X, Z with |Z| = 2|X| and |X| even; got |X| = {x}, |Z| = {z}")]
    IdealShape { x: usize, z: usize },
    #[error("ideal stage failed on all {} attempts; last stage: {}", .0.len(), .0.last().map(|f| f.stage.as_str()).unwrap_or("none"))]
    IdealFailed(Vec<AttemptFailure>),
    #[error("final tiling failed verification: {0}")]
    Verification(String),
}

fn binom2(k: usize) -> f64 {
    (k * k.saturating_sub(1) / 2) as f64
}

fn check_b(n: usize, b: &[usize]) -> Result<VertexSet, ExtremalError> {
    let want = 2 * n / 3;
    let set = VertexSet::from_slice(n, &b.iter().copied().filter(|&v| v < n).collect::<Vec<_>>());
    if set.len() != b.len() || b.len() != want || n % 3 != 0 {
        return Err(ExtremalError::BSize { got: set.len(), want });
    }
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimizedB {
    pub b: Vec<usize>,
    pub e_b: usize,
    pub swaps: usize,
    /// No single swap lowers `e(B)`; false if the budget stopped the climb.
    pub local_optimum: bool,
}

/// Steepest-descent swaps of one vertex in `B` for one outside until no
/// swap lowers `e(B)`. Each round counts one budget node.
pub fn minimize_eb(h: &Hypergraph3, b0: &[usize], budget: Budget) -> Result<MinimizedB, ExtremalError> {
    let n = h.n();
    let mut b = check_b(n, b0)?;
    let mut e = h.induced_edge_count(&b) as i64;
    let mut meter = budget.start();
    let mut swaps = 0;
    loop {
        if !meter.tick() {
            return Ok(MinimizedB {
                b: b.to_vec(),
                e_b: e as usize,
                swaps,
                local_optimum: false,
            });
        }
        let deg: Vec<i64> = (0..n).map(|v| h.vertex_deg_into(v, &b) as i64).collect();
        let a = b.complement();
        let mut best: Option<(i64, usize, usize)> = None;
        for v in b.iter() {
            for u in a.iter() {
                let delta = deg[u] - h.pair_deg_into(u, v, &b) as i64 - deg[v];
                if delta < 0 && best.is_none_or(|(d, _, _)| delta < d) {
                    best = Some((delta, u, v));
                }
            }
        }
        let Some((delta, u, v)) = best else {
            return Ok(MinimizedB {
                b: b.to_vec(),
                e_b: e as usize,
                swaps,
                local_optimum: true,
            });
        };
        b.remove(v);
        b.insert(u);
        e += delta;
        swaps += 1;
        debug_assert_eq!(e as usize, h.induced_edge_count(&b));
    }
}

/// Sizes of the four discrepancy sets and of `V0`, against their bounds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SizeDiagnostics {
    pub a_minus_aprime: usize,
    pub b_minus_bprime: usize,
    pub aprime_minus_a: usize,
    pub bprime_minus_b: usize,
    pub v0: usize,
    /// `eps1 |B| / 64`.
    pub discrepancy_bound: f64,
    /// `eps1 |B| / 32`.
    pub v0_bound: f64,
}

impl SizeDiagnostics {
    pub fn holds(&self) -> bool {
        let worst = self
            .a_minus_aprime
            .max(self.b_minus_bprime)
            .max(self.aprime_minus_a)
            .max(self.bprime_minus_b);
        worst as f64 <= self.discrepancy_bound && self.v0 as f64 <= self.v0_bound
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub b: Vec<usize>,
    /// Degree into B at least `(1 - eps1) C(|B|, 2)`.
    pub aprime: Vec<usize>,
    /// Degree into B at most `eps1 C(|B|, 2)`.
    pub bprime: Vec<usize>,
    pub v0: Vec<usize>,
    pub eps1: f64,
    pub q1: usize,
    /// `|B'| - 2n/3`.
    pub q: i64,
    pub diagnostics: SizeDiagnostics,
}

pub fn classify(h: &Hypergraph3, b: &[usize], eps1: f64) -> Result<Classification, ExtremalError> {
    let n = h.n();
    let bset = check_b(n, b)?;
    if !(eps1 > 0.0 && eps1 < 0.5) {
        return Err(ExtremalError::Eps { eps: f64::NAN, eps1 });
    }
    let full = binom2(bset.len());
    let (mut aprime, mut bprime, mut v0) = (Vec::new(), Vec::new(), Vec::new());
    for v in 0..n {
        let d = h.vertex_deg_into(v, &bset) as f64;
        if d >= (1.0 - eps1) * full {
            aprime.push(v);
        } else if d <= eps1 * full {
            bprime.push(v);
        } else {
            v0.push(v);
        }
    }
    let ap = VertexSet::from_slice(n, &aprime);
    let bp = VertexSet::from_slice(n, &bprime);
    let a = bset.complement();
    let outside = |s: &VertexSet, t: &VertexSet| s.iter().filter(|&v| !t.contains(v)).count();
    let diagnostics = SizeDiagnostics {
        a_minus_aprime: outside(&a, &ap),
        b_minus_bprime: outside(&bset, &bp),
        aprime_minus_a: outside(&ap, &a),
        bprime_minus_b: outside(&bp, &bset),
        v0: v0.len(),
        discrepancy_bound: eps1 * bset.len() as f64 / 64.0,
        v0_bound: eps1 * bset.len() as f64 / 32.0,
    };
    Ok(Classification {
        b: bset.to_vec(),
        q1: v0.len(),
        q: bprime.len() as i64 - (2 * n / 3) as i64,
        aprime,
        bprime,
        v0,
        eps1,
        diagnostics,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalOptions {
    pub eps: f64,
    pub seed: u64,
    pub max_attempts: usize,
    /// Starting `B`; when absent the 2n/3 lowest-degree vertices are tried,
    /// then the almost-matching certificate.
    pub b: Option<Vec<usize>>,
    pub minimize_budget: Budget,
    /// Reject `eps` whose `eps1 = 8 sqrt(24 eps)` is at least 1/4 instead
    /// of capping `eps1` at 1/4.
    pub strict_eps: bool,
}

impl Default for ExtremalOptions {
    fn default() -> Self {
        ExtremalOptions {
            eps: 1e-3,
            seed: 0,
            max_attempts: 64,
            b: None,
            minimize_budget: Budget::nodes(10_000),
            strict_eps: false,
        }
    }
}

/// Every stage's output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineTrace {
    pub b_source: String,
    pub b: MinimizedB,
    pub eps: f64,
    pub eps0: f64,
    pub eps1: f64,
    pub eps1_capped: bool,
    pub rho: f64,
    pub classification: Classification,
    pub q2: usize,
    pub s: usize,
    pub q1_tiling: Tiling,
    pub q2_tiling: Tiling,
    pub r_tiling: Tiling,
    pub s_tiling: Tiling,
    pub a1: Vec<usize>,
    pub b1: Vec<usize>,
    pub a2: Vec<usize>,
    pub b2: Vec<usize>,
    pub ideal_failures: Vec<AttemptFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalSolution {
    pub tiling: Tiling,
    pub trace: PipelineTrace,
}

/// `(eps0, eps1, capped, rho)` for a given `eps`.
pub fn constants(eps: f64, strict: bool) -> Result<(f64, f64, bool, f64), ExtremalError> {
    let eps0 = 24.0 * eps;
    let raw = 8.0 * eps0.sqrt();
    if !(eps > 0.0) || !raw.is_finite() || (strict && raw >= 0.25) {
        return Err(ExtremalError::Eps { eps, eps1: raw });
    }
    let capped = raw >= 0.25;
    let eps1 = if capped { 0.25 } else { raw };
    Ok((eps0, eps1, capped, 8.0 * eps1.sqrt()))
}

pub fn extremal_solve(h: &Hypergraph3, opts: &ExtremalOptions) -> Result<ExtremalSolution, ExtremalError> {
    let n = h.n();
    if n == 0 || n % 6 != 0 {
        return Err(ExtremalError::Order(n));
    }
    let report = h.min_codegree().expect("n >= 6");
    if report.value * 3 < n {
        return Err(ExtremalError::Codegree {
            min: report.value,
            need: n / 3,
            witness: report.witness,
        });
    }
    let (eps0, eps1, eps1_capped, rho) = constants(opts.eps, opts.strict_eps)?;
    let bound = opts.eps * (n as f64).powi(3);

    let mut best: Option<(String, MinimizedB)> = None;
    let sources: [&str; 2] = if opts.b.is_some() { ["caller", ""] } else { ["low-degree", "certificate"] };
    for source in sources.into_iter().filter(|s| !s.is_empty()) {
        let start = match source {
            "caller" => opts.b.clone().expect("caller set"),
            "low-degree" => {
                let mut order: Vec<usize> = (0..n).collect();
                order.sort_by_key(|&v| (h.vertex_degree(v), v));
                order.truncate(2 * n / 3);
                order
            }
            _ => match almost_perfect_matching(h, 0.1, 0.2, Budget::nodes(100_000)) {
                AlmostOutcome::Certificate { certificate, .. } => certificate.b,
                _ => continue,
            },
        };
        let min = minimize_eb(h, &start, opts.minimize_budget)?;
        log::debug!("B from {source}: e(B) = {} after {} swaps", min.e_b, min.swaps);
        let better = best.as_ref().is_none_or(|(_, b)| min.e_b < b.e_b);
        if better {
            best = Some((source.to_string(), min));
        }
        if best.as_ref().is_some_and(|(_, b)| b.e_b as f64 <= bound) {
            break;
        }
    }
    let (b_source, b) = best.expect("at least one source");
    if b.e_b as f64 > bound {
        return Err(ExtremalError::NotExtremal { e_b: b.e_b, bound });
    }

    let classification = classify(h, &b.b, eps1)?;
    let cover = cover_and_balance(h, &classification)?;
    let ideal = ideal_factor(h, &cover.a2, &cover.b2, rho, opts.seed, opts.max_attempts)?;
    let Some(s_tiling) = ideal.tiling else {
        return Err(ExtremalError::IdealFailed(ideal.failures));
    };

    let mut tiling = Tiling::empty(n);
    for part in [&cover.q1, &cover.q2, &cover.r, &s_tiling] {
        tiling.extend(part);
    }
    let verdict = verify_tiling(h, &tiling, true);
    if !verdict.ok {
        return Err(ExtremalError::Verification(verdict.diagnostic.unwrap_or_default()));
    }
    Ok(ExtremalSolution {
        tiling,
        trace: PipelineTrace {
            b_source,
            b,
            eps: opts.eps,
            eps0,
            eps1,
            eps1_capped,
            rho,
            q2: classification.q.max(0) as usize,
            s: cover.s,
            classification,
            q1_tiling: cover.q1,
            q2_tiling: cover.q2,
            r_tiling: cover.r,
            s_tiling,
            a1: cover.a1,
            b1: cover.b1,
            a2: cover.a2,
            b2: cover.b2,
            ideal_failures: ideal.failures,
        },
    })
}
