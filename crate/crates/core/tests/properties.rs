use arcpack::branchings::{
    check_root_vector, pack_in_branchings, roots_match, verify_in_branching_set, RootVector,
};
use arcpack::certificate::{verify, Certificate, Envelope, Subject};
use arcpack::oracle::{oracle_tree_packing, OracleBudget};
use arcpack::trees::{pack_spanning_trees, TreePackingOutcome};
use arcpack::Digraph;
use proptest::prelude::*;

fn multidigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Digraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 1..n), 0..=max_m).prop_map(move |pairs| {
            // second coordinate is an offset, so no loops
            let arcs: Vec<_> = pairs
                .into_iter()
                .map(|(u, off)| (u, (u + off) % n))
                .collect();
            Digraph::new(n, &arcs).unwrap()
        })
    })
}

fn with_roots(max_n: usize, max_m: usize) -> impl Strategy<Value = (Digraph, Vec<usize>)> {
    multidigraph(max_n, max_m).prop_flat_map(|d| {
        let n = d.vertex_count();
        (Just(d), prop::collection::vec(0..n, 1..=3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cut_degrees_balance(d in multidigraph(7, 20), mask in any::<u8>()) {
        let set: Vec<usize> = d.vertices().filter(|&v| mask >> v & 1 == 1).collect();
        prop_assume!(!set.is_empty());
        let c = d.degrees(&set).unwrap();
        let out: usize = set.iter().map(|&v| d.out_degree(v)).sum();
        let inn: usize = set.iter().map(|&v| d.in_degree(v)).sum();
        prop_assert_eq!(out, c.leaving + c.inside);
        prop_assert_eq!(inn, c.entering + c.inside);
        let all: usize = d.vertices().map(|v| d.out_degree(v)).sum();
        prop_assert_eq!(all, d.arc_count());
    }

    #[test]
    fn split_then_identify_restores(d in multidigraph(6, 14), pick in any::<usize>()) {
        let v = pick % d.vertex_count();
        let split = d.split_vertex(v).unwrap();
        prop_assert_eq!(split.digraph.arc_count(), d.arc_count());
        prop_assert_eq!(split.digraph.in_degree(split.plus), 0);
        prop_assert_eq!(split.digraph.out_degree(split.minus), 0);
        let back = split.digraph.identify_vertices(split.minus, split.plus).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn text_format_round_trips(d in multidigraph(8, 20)) {
        prop_assert_eq!(Digraph::parse_text(&d.to_text()).unwrap(), d);
    }

    #[test]
    fn tree_packing_agrees_with_partition_oracle(d in multidigraph(5, 10), k in 1usize..=3) {
        let outcome = pack_spanning_trees(&d, k).unwrap();
        let oracle = oracle_tree_packing(&d, k, &OracleBudget::default()).unwrap();
        prop_assert_eq!(outcome.is_packed(), oracle.is_none());
        let cert: Certificate = match &outcome {
            TreePackingOutcome::Packed(p) => p.into(),
            TreePackingOutcome::Infeasible(c) => c.into(),
        };
        let json = Envelope::new(cert).to_json();
        let back = Envelope::from_json(&json).unwrap();
        prop_assert!(verify(&back.certificate, &Subject::Digraph(&d)).is_ok());
    }

    #[test]
    fn in_branchings_are_reversed_out_branchings((d, roots) in with_roots(6, 16)) {
        let k = roots.len();
        let mut counts = vec![0; d.vertex_count()];
        for r in roots {
            counts[r] += 1;
        }
        let r = RootVector::new(counts, k).unwrap();
        let feasible = check_root_vector(&d.reverse(), &r).unwrap().is_feasible();
        match pack_in_branchings(&d, &r) {
            Ok(set) => {
                prop_assert!(feasible);
                prop_assert!(verify_in_branching_set(&d, &set));
                prop_assert!(roots_match(&set, &r));
            }
            Err(_) => prop_assert!(!feasible),
        }
    }
}
