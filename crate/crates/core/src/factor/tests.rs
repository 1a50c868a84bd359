use proptest::prelude::*;

use super::*;
use crate::construct::{covered_extremal, random_3graph, space_barrier};

/// Naive test: some ordering of the six vertices matches edges 123, 345, 561.
fn naive_spans(h: &Hypergraph3, six: &[usize]) -> bool {
    let mut perm = six.to_vec();
    let mut found = false;
    permute(&mut perm, 0, &mut |p| {
        found |= h.contains_edge(p[0], p[1], p[2]) && h.contains_edge(p[2], p[3], p[4]) && h.contains_edge(p[4], p[5], p[0]);
    });
    found
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Factor oracle for n = 12: some split into two 6-sets (vertex 0 on the
/// first side) where both sides span a loose cycle.
fn oracle12(h: &Hypergraph3) -> bool {
    assert_eq!(h.n(), 12);
    (0u32..1 << 12).filter(|m| m & 1 == 1 && m.count_ones() == 6).any(|m| {
        let a: Vec<usize> = (0..12).filter(|i| m >> i & 1 == 1).collect();
        let b: Vec<usize> = (0..12).filter(|i| m >> i & 1 == 0).collect();
        naive_spans(h, &a) && naive_spans(h, &b)
    })
}

fn ok(h: &Hypergraph3, t: &Tiling, perfect: bool) {
    let v = verify_tiling(h, t, perfect);
    assert!(v.ok, "{:?}", v.diagnostic);
}

#[test]
fn oracle_split_count() {
    let splits = (0u32..1 << 12).filter(|m| m & 1 == 1 && m.count_ones() == 6).count();
    assert_eq!(splits, 462);
}

#[test]
fn find_factor_examples() {
    let k12 = Hypergraph3::complete(12);
    let t = find_factor(&k12, Budget::UNLIMITED).found().unwrap();
    assert_eq!(t.len(), 2);
    ok(&k12, &t, true);

    let bar = space_barrier(12).unwrap().hypergraph;
    assert_eq!(find_factor(&bar, Budget::UNLIMITED), SearchOutcome::Absent(AbsentReason::Exhaustive));

    let cov = covered_extremal(12, 4, 0.0, 0).unwrap();
    let t = find_factor(&cov.hypergraph, Budget::UNLIMITED).found().unwrap();
    ok(&cov.hypergraph, &t, true);
    let x = cov.set("X").unwrap();
    for c in &t.copies {
        assert_eq!(c.vertices().iter().filter(|&&v| x.contains(v)).count(), 2);
    }

    assert_eq!(
        find_factor(&Hypergraph3::complete(13), Budget::UNLIMITED),
        SearchOutcome::Absent(AbsentReason::Divisibility)
    );
}

#[test]
fn budget_stop_is_indeterminate() {
    let bar = space_barrier(18).unwrap().hypergraph;
    match find_factor(&bar, Budget::nodes(1000)) {
        SearchOutcome::Indeterminate { nodes } => assert!(nodes > 1000),
        other => panic!("{other:?}"),
    }
}

#[test]
fn max_tiling_examples() {
    let k18 = Hypergraph3::complete(18);
    let b = max_tiling(&k18, Budget::UNLIMITED);
    assert_eq!((b.value.len(), b.optimal), (3, true));
    ok(&k18, &b.value, true);

    let bar = space_barrier(12).unwrap().hypergraph;
    let b = max_tiling(&bar, Budget::UNLIMITED);
    assert_eq!((b.value.len(), b.optimal), (1, true));
    ok(&bar, &b.value, false);

    let b = max_tiling(&Hypergraph3::empty(12), Budget::UNLIMITED);
    assert_eq!((b.value.len(), b.optimal), (0, true));
}

#[test]
fn t_disjoint_examples() {
    let k13 = Hypergraph3::complete(13);
    let t = find_t_disjoint(&k13, 2, Budget::UNLIMITED).unwrap().found().unwrap();
    assert_eq!(t.len(), 2);
    ok(&k13, &t, false);

    let single = Hypergraph3::new(12, [[0, 1, 2], [2, 3, 4], [4, 5, 0]]).unwrap();
    assert!(find_t_disjoint(&single, 2, Budget::UNLIMITED).unwrap().is_absent());
    assert!(find_t_disjoint(&single, 1, Budget::UNLIMITED).unwrap().is_found());
    assert_eq!(
        find_t_disjoint(&single, 3, Budget::UNLIMITED),
        Err(FactorError::TooManyCopies { t: 3, n: 12 })
    );
}

#[test]
fn barrier_plus_clique_two_copies() {
    // Barrier on 12 vertices with |X| = 3, plus a disjoint complete 6-set.
    let h = Hypergraph3::from_triples_where(18, |t| (t[0] < 3 && t[2] < 12) || t[0] >= 12);
    let t = find_t_disjoint(&h, 2, Budget::UNLIMITED).unwrap().found().unwrap();
    ok(&h, &t, false);
    assert!(find_t_disjoint(&h, 3, Budget::UNLIMITED).unwrap().is_absent());
}

#[test]
fn verify_diagnostics() {
    let k12 = Hypergraph3::complete(12);
    let shared = Tiling {
        n: 12,
        copies: vec![CycleCopy::new([0, 2, 4], [1, 3, 5]), CycleCopy::new([5, 7, 9], [6, 8, 10])],
    };
    let v = verify_tiling(&k12, &shared, false);
    assert!(!v.ok);
    assert!(v.diagnostic.unwrap().starts_with("disjointness at 5"));

    let sparse = Hypergraph3::new(12, [[0, 1, 2], [2, 3, 4]]).unwrap();
    let one = Tiling {
        n: 12,
        copies: vec![CycleCopy::new([0, 2, 4], [1, 3, 5])],
    };
    let v = verify_tiling(&sparse, &one, false);
    assert!(v.diagnostic.unwrap().contains("missing edge"));
    let v = verify_tiling(&k12, &one, true);
    assert!(v.diagnostic.unwrap().contains("uncovered"));
    assert!(verify_tiling(&k12, &one, false).ok);
}

#[test]
fn tiling_json() {
    let t = find_factor(&Hypergraph3::complete(12), Budget::UNLIMITED).found().unwrap();
    let json = serde_json::to_value(&t).unwrap();
    assert_eq!(json["perfect"], true);
    assert_eq!(json["n"], 12);
    assert_eq!(json["copies"][0]["links"].as_array().unwrap().len(), 3);
    let back: Tiling = serde_json::from_value(json).unwrap();
    assert_eq!(back, t);
}

#[test]
fn matching_examples() {
    let k11 = Hypergraph3::complete(11);
    let m = max_matching3(&k11, MatchingMode::Exact, Budget::UNLIMITED);
    assert_eq!((m.value.len(), m.optimal), (3, true));
    assert!(verify_matching(&k11, &m.value, true).ok);

    let bar = space_barrier(12).unwrap().hypergraph;
    let m = max_matching3(&bar, MatchingMode::Exact, Budget::UNLIMITED);
    assert_eq!((m.value.len(), m.optimal), (3, true));

    let e = Hypergraph3::empty(9);
    assert_eq!(max_matching3(&e, MatchingMode::Exact, Budget::UNLIMITED).value.len(), 0);
    assert_eq!(max_matching3(&e, MatchingMode::Greedy, Budget::UNLIMITED).value.len(), 0);

    let h = random_3graph(15, 0.1, 3).unwrap().hypergraph;
    let g = max_matching3(&h, MatchingMode::Greedy, Budget::UNLIMITED).value;
    assert!(verify_matching(&h, &g, true).ok);
    let x = max_matching3(&h, MatchingMode::Exact, Budget::UNLIMITED).value;
    assert!(x.len() >= g.len());
    assert!(verify_matching(&h, &x, true).ok);
}

#[test]
fn oracle_agreement_sample() {
    for seed in 0..30 {
        for p in [0.2, 0.4, 0.6] {
            let h = random_3graph(12, p, seed).unwrap().hypergraph;
            let got = find_factor(&h, Budget::UNLIMITED);
            assert!(!matches!(got, SearchOutcome::Indeterminate { .. }));
            assert_eq!(got.is_found(), oracle12(&h), "seed {seed} p {p}");
            if let SearchOutcome::Found(t) = got {
                ok(&h, &t, true);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn outputs_verify(seed in any::<u64>(), p in 0.05f64..0.6) {
        let h = random_3graph(13, p, seed).unwrap().hypergraph;
        let b = max_tiling(&h, Budget::UNLIMITED);
        prop_assert!(b.optimal);
        prop_assert!(verify_tiling(&h, &b.value, false).ok);
        for t in 0..=b.value.len() {
            let r = find_t_disjoint(&h, t, Budget::UNLIMITED).unwrap();
            prop_assert!(verify_tiling(&h, r.as_found().unwrap(), false).ok);
        }
        if b.value.len() < 2 {
            prop_assert!(find_t_disjoint(&h, b.value.len() + 1, Budget::UNLIMITED).unwrap().is_absent());
        }
    }

    #[test]
    fn adding_edges_keeps_factor(seed in any::<u64>(), p in 0.2f64..0.6, extra in 0usize..40) {
        let h = random_3graph(12, p, seed).unwrap().hypergraph;
        if let SearchOutcome::Found(_) = find_factor(&h, Budget::UNLIMITED) {
            let mut edges = h.edges().to_vec();
            let add = random_3graph(12, 0.5, seed ^ 0x9e37).unwrap().hypergraph;
            edges.extend(add.edges().iter().take(extra));
            edges.sort_unstable();
            edges.dedup();
            let bigger = Hypergraph3::new(12, edges).unwrap();
            prop_assert!(find_factor(&bigger, Budget::UNLIMITED).is_found());
        }
    }
}
