use arcpack::enumerate::regular_digraphs;
use arcpack::oracle::{oracle_ham_pairs, oracle_inout_pair, HamMode, OracleBudget};
use arcpack::reductions::{
    assignment_to_path, ham_cycle_to_ham_path, ham_cycle_to_inout, k_expand, path_to_assignment,
    sat_to_instance, Cnf, Provenance, RootVariant,
};
use arcpack::Digraph;

fn hosts(max_n: usize) -> Vec<Digraph> {
    (2..=max_n)
        .flat_map(|n| regular_digraphs(n, 2))
        .filter(|d| d.is_k_arc_strong(2))
        .collect()
}

#[test]
fn small_hosts_exist_on_both_sides() {
    let b = OracleBudget::default();
    let all = hosts(4);
    let yes = all
        .iter()
        .filter(|d| {
            oracle_ham_pairs(d, HamMode::Cycles, None, &b)
                .unwrap()
                .is_some()
        })
        .count();
    assert!(yes > 0 && yes < all.len(), "{yes} of {}", all.len());
}

#[test]
fn ham_path_reduction_preserves_answers() {
    let b = OracleBudget::default();
    for (i, d) in hosts(4).iter().enumerate() {
        let host = oracle_ham_pairs(d, HamMode::Cycles, None, &b).unwrap();
        let inst = ham_cycle_to_ham_path(d, i % d.vertex_count()).unwrap();
        let pinned =
            oracle_ham_pairs(&inst.digraph, HamMode::Paths, Some(inst.endpoints), &b).unwrap();
        assert_eq!(
            host.is_some(),
            pinned.is_some(),
            "host #{i}: {:?}",
            d.arcs()
        );
        if let Some([c1, c2]) = host {
            inst.lift(d, c1.ids(), c2.ids()).unwrap();
        }
    }
}

#[test]
fn inout_reduction_preserves_answers() {
    let b = OracleBudget::default();
    for (i, d) in hosts(4).iter().enumerate() {
        let host = oracle_ham_pairs(d, HamMode::Cycles, None, &b).unwrap();
        for variant in [RootVariant::Same, RootVariant::Distinct] {
            let inst = ham_cycle_to_inout(d, 0, variant).unwrap();
            let pair = oracle_inout_pair(&inst.digraph, None, None, &b).unwrap();
            assert_eq!(host.is_some(), pair.is_some(), "host #{i} {variant:?}");
            if let Some([c1, c2]) = &host {
                inst.lift(d, c1.ids(), c2.ids()).unwrap();
            }
        }
    }
}

#[test]
fn expansion_keeps_regularity_and_strength() {
    for d in hosts(3) {
        for k in 3..=5 {
            let e = k_expand(&d, k).unwrap();
            assert_eq!(e.digraph.vertex_count(), 4 * d.vertex_count());
            assert!(e.digraph.is_k_regular(k));
            assert!(e.digraph.is_k_arc_strong(2));
        }
    }
}

#[test]
fn sat_assignments_round_trip() {
    let f = Cnf::from_signed(3, &[[1, 2, 3], [-1, -2, 3], [1, -2, -3]]).unwrap();
    let r = sat_to_instance(&f, Provenance::Sat).unwrap();
    for mask in 0..8u32 {
        let values: Vec<bool> = (0..3).map(|v| mask >> v & 1 == 1).collect();
        let path = assignment_to_path(&r, &values).unwrap();
        assert_eq!(path_to_assignment(&r, &path).unwrap(), values);
    }
}
