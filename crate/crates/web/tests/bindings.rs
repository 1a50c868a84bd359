use loosetile::factor::verify_tiling;
use loosetile::io::parse_h3;
use loosetile::Tiling;
use loosetile_web::{extremal_solve, find_factor, generate};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn generate_reports_the_barrier() {
    let g = parse(&generate("space-barrier", 12, 0.0, 0));
    assert_eq!(g["edges"], 136);
    assert_eq!(g["min_codegree"], 3);
    assert_eq!(g["sets"]["X"].as_array().unwrap().len(), 3);
    let f = parse(&find_factor(g["h3"].as_str().unwrap(), 1_000_000));
    assert_eq!(f["result"], "none");
    assert_eq!(f["exhaustive"], true);
    assert_eq!(parse(&generate("nope", 12, 0.0, 0))["result"], "error");
    assert_eq!(parse(&generate("space-barrier", 13, 0.0, 0))["result"], "error");
}

#[test]
fn solutions_verify_against_the_host() {
    let g = parse(&generate("covered-extremal", 24, 0.0, 1));
    let h3 = g["h3"].as_str().unwrap();
    let h = parse_h3(h3).unwrap();
    for out in [find_factor(h3, 1_000_000), extremal_solve(h3, 1e-3, 0)] {
        let v = parse(&out);
        assert_eq!(v["result"], "found");
        assert_eq!(v["verified"], true);
        let t: Tiling = serde_json::from_value(v["tiling"].clone()).unwrap();
        assert!(verify_tiling(&h, &t, true).ok);
    }
    let e = parse(&extremal_solve(h3, 1e-3, 0));
    let stages: usize = ["q1", "q2", "r", "ideal"].iter().map(|k| e["stages"][k].as_array().unwrap().len()).sum();
    assert_eq!(stages, 4);
}

#[test]
fn failures_are_json() {
    assert_eq!(parse(&find_factor("not an h3", 10))["result"], "error");
    let g = parse(&generate("space-barrier", 18, 0.0, 0));
    let e = parse(&extremal_solve(g["h3"].as_str().unwrap(), 1e-3, 0));
    assert_eq!(e["result"], "failed");
    assert_eq!(parse(&find_factor(g["h3"].as_str().unwrap(), 5))["result"], "unknown");
}
