//! JSON-returning bindings behind `www/index.html`.
//!
//! Each call takes an `.h3` text (as produced by [`generate`]) so the page
//! holds no state on the Rust side. Searches use node budgets only, since
//! wall-clock budgets need a clock the browser target does not provide.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use loosetile::construct::{regenerate, GeneratorParams};
use loosetile::extremal::{extremal_solve as solve, ExtremalOptions};
use loosetile::factor::{find_factor as search, verify_tiling, AbsentReason};
use loosetile::io::{parse_h3, write_h3};
use loosetile::{Budget, Hypergraph3, SearchOutcome};

fn error(msg: impl ToString) -> String {
    json!({ "result": "error", "error": msg.to_string() }).to_string()
}

fn host(h3: &str) -> Result<Hypergraph3, String> {
    parse_h3(h3).map_err(|e| error(e))
}

/// Generates `family` (space-barrier, covered-extremal, ideal-case or
/// random) at order `n`. `param` is the noise, rho or edge probability,
/// ignored for the barrier. Returns `{h3, n, edges, min_codegree, sets}`.
#[wasm_bindgen]
pub fn generate(family: &str, n: usize, param: f64, seed: u64) -> String {
    let params = match family {
        "space-barrier" => GeneratorParams::SpaceBarrier { n },
        "covered-extremal" => GeneratorParams::CoveredExtremal {
            n,
            x_size: n / 3,
            noise: param,
            seed,
        },
        "ideal-case" => GeneratorParams::IdealCase { n, rho: param, seed },
        "random" => GeneratorParams::Random { n, p: param, seed },
        other => return error(format!("unknown family {other:?}")),
    };
    match regenerate(&params) {
        Ok(inst) => {
            let h = &inst.hypergraph;
            json!({
                "result": "ok",
                "h3": write_h3(h),
                "n": h.n(),
                "edges": h.edge_count(),
                "min_codegree": h.min_codegree().ok().map(|r| r.value),
                "sets": inst.sets,
            })
            .to_string()
        }
        Err(e) => error(e),
    }
}

/// Exact factor search with a node budget.
#[wasm_bindgen]
pub fn find_factor(h3: &str, max_nodes: u64) -> String {
    let h = match host(h3) {
        Ok(h) => h,
        Err(e) => return e,
    };
    let value: Value = match search(&h, Budget::nodes(max_nodes)) {
        SearchOutcome::Found(t) => {
            let ok = verify_tiling(&h, &t, true).ok;
            json!({ "result": "found", "verified": ok, "tiling": t })
        }
        SearchOutcome::Absent(reason) => json!({
            "result": "none",
            "exhaustive": true,
            "divisibility": reason == AbsentReason::Divisibility,
        }),
        SearchOutcome::Indeterminate { nodes } => json!({ "result": "unknown", "nodes": nodes }),
    };
    value.to_string()
}

/// Runs the extremal-case solver. On success the stages are returned
/// separately so the page can colour them.
#[wasm_bindgen]
pub fn extremal_solve(h3: &str, eps: f64, seed: u64) -> String {
    let h = match host(h3) {
        Ok(h) => h,
        Err(e) => return e,
    };
    let opts = ExtremalOptions {
        eps,
        seed,
        ..Default::default()
    };
    match solve(&h, &opts) {
        Ok(sol) => {
            let t = &sol.trace;
            json!({
                "result": "found",
                "verified": verify_tiling(&h, &sol.tiling, true).ok,
                "tiling": sol.tiling,
                "b": t.b.b,
                "e_b": t.b.e_b,
                "v0": t.classification.v0,
                "stages": {
                    "q1": t.q1_tiling.copies,
                    "q2": t.q2_tiling.copies,
                    "r": t.r_tiling.copies,
                    "ideal": t.s_tiling.copies,
                },
                "ideal_failures": t.ideal_failures.len(),
            })
            .to_string()
        }
        Err(e) => json!({ "result": "failed", "error": e.to_string() }).to_string(),
    }
}
