use loosetile::construct::{random_3graph, space_barrier};
use loosetile::cycle::{count_k332, cycle_on, enumerate_copies, find_k332, is_cycle_copy};
use loosetile::factor::{find_factor, max_tiling, verify_tiling};
use loosetile::{Budget, Hypergraph3, SearchOutcome};
use proptest::prelude::*;

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

/// Tries every ordering of the six vertices as a closed walk.
fn spans(h: &Hypergraph3, six: &[usize]) -> bool {
    let mut p = six.to_vec();
    let mut hit = false;
    permute(&mut p, 0, &mut |p| {
        hit |= h.contains_edge(p[0], p[1], p[2]) && h.contains_edge(p[2], p[3], p[4]) && h.contains_edge(p[4], p[5], p[0]);
    });
    hit
}

fn has_factor_12(h: &Hypergraph3) -> bool {
    (0u32..1 << 12).filter(|m| m & 1 == 1 && m.count_ones() == 6).any(|m| {
        let a: Vec<usize> = (0..12).filter(|i| m >> i & 1 == 1).collect();
        let b: Vec<usize> = (0..12).filter(|i| m >> i & 1 == 0).collect();
        spans(h, &a) && spans(h, &b)
    })
}

#[test]
fn sparse_hosts_agree_with_brute_force() {
    let mut absent = 0;
    for p in [0.05, 0.08, 0.1] {
        for seed in 0..60 {
            let h = random_3graph(12, p, seed).unwrap().hypergraph;
            let expect = has_factor_12(&h);
            match find_factor(&h, Budget::UNLIMITED) {
                SearchOutcome::Found(t) => {
                    assert!(expect, "p={p} seed={seed}");
                    assert!(verify_tiling(&h, &t, true).ok);
                }
                SearchOutcome::Absent(_) => {
                    assert!(!expect, "p={p} seed={seed}");
                    absent += 1;
                }
                SearchOutcome::Indeterminate { .. } => panic!("unlimited search stopped"),
            }
        }
    }
    assert!(absent > 0, "no factor-free instance exercised");
}

#[test]
fn barrier_copies_meet_x_twice() {
    for n in [12, 18] {
        let bar = space_barrier(n).unwrap();
        let h = &bar.hypergraph;
        let x = bar.set("X").unwrap();
        let y = &bar.sets["Y"];
        // Six-sets with at most one X-vertex never span a copy.
        let mut sixes = Vec::new();
        choose(y, 6, &mut Vec::new(), &mut sixes);
        let mut fives = Vec::new();
        choose(y, 5, &mut Vec::new(), &mut fives);
        for xv in x.iter() {
            for f in &fives {
                let mut s = f.clone();
                s.push(xv);
                sixes.push(s);
            }
        }
        for s in &sixes {
            let six: [usize; 6] = s.clone().try_into().unwrap();
            assert!(cycle_on(h, &six).is_none(), "n={n} {s:?}");
        }
        let t = max_tiling(h, Budget::nodes(2_000_000));
        assert!(t.value.len() <= (n / 3 - 1) / 2, "n={n}");
    }
    let bar = space_barrier(12).unwrap();
    let x = bar.set("X").unwrap();
    let all = enumerate_copies(&bar.hypergraph, None, usize::MAX);
    assert!(all.complete);
    for c in &all.copies {
        assert!(c.vertices().iter().filter(|&&v| x.contains(v)).count() >= 2);
    }
}

fn choose(from: &[usize], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
        out.push(cur.clone());
        return;
    }
    let start = cur.last().map_or(0, |&l| from.iter().position(|&v| v == l).unwrap() + 1);
    for i in start..from.len() {
        cur.push(from[i]);
        choose(from, k, cur, out);
        cur.pop();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn enumerated_copies_are_valid_and_distinct(n in 6usize..10, p in 0.2f64..0.7, seed in any::<u64>()) {
        let h = random_3graph(n, p, seed).unwrap().hypergraph;
        let e = enumerate_copies(&h, None, usize::MAX);
        let mut seen = std::collections::HashSet::new();
        for c in &e.copies {
            prop_assert!(is_cycle_copy(&h, c));
            let mut edges = c.edges();
            edges.sort();
            prop_assert!(seen.insert(edges));
        }
    }

    #[test]
    fn k332_search_matches_count(n in 6usize..11, p in 0.3f64..0.9, seed in any::<u64>()) {
        let h = random_3graph(n, p, seed).unwrap().hypergraph;
        let found = find_k332(&h, Budget::UNLIMITED);
        match found.copy {
            Some(k) => {
                prop_assert!(k.is_valid_in(&h));
                prop_assert!(is_cycle_copy(&h, &k.spanning_cycle()));
                prop_assert!(count_k332(&h) > 0);
            }
            None => {
                prop_assert!(found.exhaustive);
                prop_assert_eq!(count_k332(&h), 0);
            }
        }
    }
}
