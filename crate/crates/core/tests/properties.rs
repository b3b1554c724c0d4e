use proptest::prelude::*;

use c2k1::constructions::{blowup_cycle, random_maximal};
use c2k1::cycles::{creates_cycle_on_addition, exists_path_of_length, find_cycle_of_length, find_path_through_set};
use c2k1::graph::{d2, is_induced_complete_bipartite};
use c2k1::oracles::{enumerate_simple_paths, max_induced_complete_bipartite};
use c2k1::stability::{decompose, peel_min_degree, Outcome};
use c2k1::{Graph, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn addition_check_matches_cycle_search(g in graph(12), len in 3usize..=7) {
        for (u, v) in g.non_edges() {
            let predicted = creates_cycle_on_addition(&g, u, v, len).unwrap().is_some();
            let g2 = g.with_edge(u, v).unwrap();
            // When g is already C_len-free, any new C_len must run through (u, v).
            if find_cycle_of_length(&g, len).is_none() {
                prop_assert_eq!(predicted, find_cycle_of_length(&g2, len).is_some());
            }
        }
    }

    #[test]
    fn constrained_witness_is_an_unconstrained_path(g in graph(10), mask in any::<u16>(), len in 3usize..=6) {
        let n = g.order();
        let through = VertexSet::from_members(n, (0..n).filter(|v| mask >> v & 1 == 1)).unwrap();
        for u in 0..n {
            for v in 0..n {
                if u == v { continue; }
                if let Some(w) = find_path_through_set(&g, u, v, len, &through) {
                    prop_assert!(w.validate(&g).is_ok());
                    prop_assert_eq!(w.len(), len);
                    prop_assert!(through.contains(w.vertices[1]) && through.contains(w.vertices[len - 1]));
                    prop_assert!(exists_path_of_length(&g, u, v, len).is_some());
                }
            }
        }
    }

    #[test]
    fn enumeration_is_symmetric(g in graph(8), len in 1usize..=7) {
        let n = g.order();
        for u in 0..n {
            for v in u + 1..n {
                let forward = enumerate_simple_paths(&g, u, v, len).unwrap();
                let mut back: Vec<Vec<usize>> = enumerate_simple_paths(&g, v, u, len)
                    .unwrap()
                    .into_iter()
                    .map(|p| p.vertices.into_iter().rev().collect())
                    .collect();
                let mut fwd: Vec<Vec<usize>> = forward.into_iter().map(|p| p.vertices).collect();
                fwd.sort();
                back.sort();
                prop_assert_eq!(fwd, back);
            }
        }
    }

    #[test]
    fn induced_complete_bipartite_size(g in graph(10)) {
        let (size, sides) = max_induced_complete_bipartite(&g).unwrap();
        prop_assert!(size >= 2);
        prop_assert_eq!(sides.order(), size);
        prop_assert!(is_induced_complete_bipartite(&g, &sides));
        let whole = size == g.order();
        let n = g.order();
        let any_split = (0..1u32 << (n - 1)).any(|m| {
            let left = VertexSet::from_members(n, (0..n).filter(|v| m >> v & 1 == 1)).unwrap();
            let right = g.vertex_set().difference(&left);
            c2k1::Bipartition::new(left, right).is_ok_and(|b| is_induced_complete_bipartite(&g, &b))
        });
        prop_assert_eq!(whole, any_split);
    }

    #[test]
    fn peeling_invariants(g in graph(14), k in 2u64..=3) {
        let (survivor, removed, trace) = peel_min_degree(&g, k).unwrap();
        prop_assert!(trace.threshold_rule_holds());
        prop_assert!(trace.accounting_holds());
        prop_assert!(trace.replays_on(&g));
        prop_assert_eq!(removed.len() + survivor.order(), g.order());
        if let Some(d) = survivor.min_degree() {
            // Every survivor meets the stopping rule: 20k d >= (10k - 1) |survivor|.
            prop_assert!(20 * k as usize * d >= (10 * k as usize - 1) * survivor.order());
        }
    }

    #[test]
    fn decomposition_invariants(n in 10usize..=30, seed in any::<u64>()) {
        let g = random_maximal(n, 5, seed).unwrap();
        let r = decompose(&g, 2).unwrap();
        prop_assert!(r.peel_threshold_rule && r.peel_accounting);
        match &r.outcome {
            Outcome::Verified => {
                prop_assert!(r.partition_accounting && r.structural_fact);
                prop_assert!(is_induced_complete_bipartite(&g, r.final_sides.as_ref().unwrap()));
            }
            Outcome::Stuck { non_edge: (x, y) } => {
                prop_assert!(!g.has_edge(*x, *y));
                prop_assert!(find_path_through_set(&g, *x, *y, 4, &r.peel_trace.removed_set()).is_none());
            }
            Outcome::SurvivorNotBipartite { odd_cycle } => {
                let core = r.peel_trace.survivor_set();
                prop_assert!(odd_cycle.vertices.len() % 2 == 1);
                prop_assert!(odd_cycle.vertices.iter().all(|&v| core.contains(v)));
            }
        }
    }

    #[test]
    fn odd_blowup_d2_is_min_consecutive_product(sizes in proptest::collection::vec(1usize..=3, 5..=7)) {
        let m = sizes.len();
        let g = blowup_cycle(m, &sizes).unwrap();
        let d = d2(&g).unwrap();
        if m % 2 == 1 {
            let least = (0..m).map(|i| sizes[i] * sizes[(i + 1) % m]).min().unwrap();
            prop_assert_eq!(d, least);
        } else {
            prop_assert_eq!(d, 0);
        }
    }
}
