//! End-to-end acceptance suite: one line per criterion, non-zero exit if
//! any criterion fails.

mod common;

use std::panic;
use std::time::{Duration, Instant};

use arcpack::branchings::{
    check_root_vector, pack_out_branchings, roots_match, verify_branching_set, RootCheck,
    RootVector,
};
use arcpack::catalog::{
    bidirected_triangle, doubled_cycle3, doubled_digon, single_hamiltonian_quad,
};
use arcpack::enumerate::regular_digraphs;
use arcpack::mixed::{decide_equivalence, Equivalence};
use arcpack::oracle::{
    oracle_branching_with_connected_remainder, oracle_free_out_branchings, oracle_ham_pairs,
    oracle_inout_pair, oracle_remainder_path, oracle_remainder_paths_all, oracle_root_vector,
    oracle_sat, oracle_tree_families, oracle_tree_packing, search_eulerian_counterexample, HamMode,
    OracleBudget, Requirement, RootOracle,
};
use arcpack::reductions::{
    cycle_breaker, ham_cycle_to_ham_path, ham_cycle_to_inout, k_expand, path_to_assignment,
    sat_to_instance, verify_cycle_breaker, Cnf, Provenance, RootVariant,
};
use arcpack::trees::{
    pack_spanning_trees, tutte_deficiency, verify_tree_packing, TreePackingOutcome,
};
use arcpack::{ArcSet, Digraph};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn budget() -> OracleBudget {
    OracleBudget::new(256, 1024, Duration::from_secs(600)).unwrap()
}

/// Checks one free-root instance against both oracles; returns whether
/// branchings were constructed.
fn equivalence_case(d: &Digraph, tag: &str) -> Result<bool, String> {
    let b = budget();
    let decided = decide_equivalence(d).map_err(|e| format!("{tag}: {e}"))?;
    let branchings = oracle_free_out_branchings(d, 2, &b).map_err(|e| e.to_string())?;
    let trees = oracle_tree_packing(d, 2, &b).map_err(|e| e.to_string())?;
    ensure(decided.is_feasible() == branchings.is_some(), || {
        format!(
            "{tag}: pipeline {} vs branching oracle {}",
            decided.is_feasible(),
            branchings.is_some()
        )
    })?;
    ensure(decided.is_feasible() == trees.is_none(), || {
        format!("{tag}: pipeline disagrees with the partition oracle")
    })?;
    if let Equivalence::Feasible { branchings, trace } = &decided {
        ensure(verify_branching_set(d, branchings), || {
            format!("{tag}: invalid branchings")
        })?;
        ensure(roots_match(branchings, &trace.root_vector), || {
            format!("{tag}: roots differ from the derived root vector")
        })?;
    }
    Ok(decided.is_feasible())
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    let mut feasible = 0;
    for n in 2..=5 {
        for d in regular_digraphs(n, 2) {
            if !d.connectivity().weak {
                continue;
            }
            total += 1;
            feasible += equivalence_case(&d, &format!("n={n} {:?}", d.arcs()))? as usize;
        }
    }
    let exhaustive = total;
    let mut rng = common::rng(1);
    for i in 0..200 {
        let d = common::random_regular(6, 2, &mut rng);
        total += 1;
        feasible += equivalence_case(&d, &format!("random #{i}"))? as usize;
    }
    Ok(format!(
        "{total} digraphs ({exhaustive} connected with n<=5, 200 random n=6), {feasible} feasible, 100% agreement"
    ))
}

fn criterion_2_and_3() -> Result<(String, String), String> {
    let b = budget();
    let mut rng = common::rng(2);
    let mut feasible = 0;
    for i in 0..500 {
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(1..=3);
        let m = rng.gen_range(n - 1..=3 * n);
        let d = common::random_multidigraph(n, m, &mut rng);
        let r = RootVector::new(common::random_counts(n, k, &mut rng), k).unwrap();
        let fast = check_root_vector(&d, &r).map_err(|e| e.to_string())?;
        let slow = oracle_root_vector(&d, &r, &b).map_err(|e| e.to_string())?;
        ensure(fast.is_feasible() == (slow == RootOracle::Holds), || {
            format!("pair #{i}: checker {:?} vs oracle {:?}", fast, slow)
        })?;
        match fast {
            RootCheck::Violated { witness } => {
                let entering = d.degrees(&witness).unwrap().entering as i64;
                let bound = k as i64 - r.total_over(&witness) as i64;
                ensure(!witness.is_empty() && entering < bound, || {
                    format!("pair #{i}: witness {witness:?} has d^-={entering}, bound {bound}")
                })?;
            }
            RootCheck::Feasible => {
                feasible += 1;
                let set = pack_out_branchings(&d, &r).map_err(|e| format!("pair #{i}: {e}"))?;
                ensure(
                    verify_branching_set(&d, &set) && roots_match(&set, &r),
                    || format!("pair #{i}: constructed branchings fail verification"),
                )?;
            }
        }
    }
    Ok((
        format!(
            "500 random pairs, {feasible} feasible, {} violated with valid witnesses",
            500 - feasible
        ),
        format!("{feasible} feasible root vectors packed and verified"),
    ))
}

fn criterion_3() -> Outcome {
    // criterion 1 feasible cases are re-verified inside equivalence_case
    let (_, msg) = criterion_2_and_3()?;
    let mut count = 0;
    for n in 2..=4 {
        for d in regular_digraphs(n, 2) {
            if d.connectivity().weak && equivalence_case(&d, "re-run")? {
                count += 1;
            }
        }
    }
    Ok(format!(
        "{msg}; {count} free-root pipeline outputs with n<=4 re-verified"
    ))
}

fn criterion_4() -> Outcome {
    let b = budget();
    let mut rng = common::rng(4);
    let mut packed = 0;
    for i in 0..500 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(0..=12);
        let k = rng.gen_range(1..=3);
        let d = common::random_multidigraph(n, m, &mut rng);
        let outcome = pack_spanning_trees(&d, k).map_err(|e| e.to_string())?;
        let oracle = oracle_tree_packing(&d, k, &b).map_err(|e| e.to_string())?;
        let families = oracle_tree_families(&d, k, &b).map_err(|e| e.to_string())?;
        ensure(outcome.is_packed() == oracle.is_none(), || {
            format!(
                "multigraph #{i}: matroid union {} vs partition oracle",
                outcome.is_packed()
            )
        })?;
        ensure(families.is_some() == oracle.is_none(), || {
            format!("multigraph #{i}: the two oracles disagree")
        })?;
        match outcome {
            TreePackingOutcome::Packed(p) => {
                packed += 1;
                ensure(verify_tree_packing(&d, &p).unwrap(), || {
                    format!("multigraph #{i}: bad packing")
                })?;
            }
            TreePackingOutcome::Infeasible(c) => {
                let def = tutte_deficiency(&d, &c.partition, k).map_err(|e| e.to_string())?;
                ensure(def >= 1 && def == c.deficiency, || {
                    format!("multigraph #{i}: certificate deficiency {def}")
                })?;
            }
        }
    }
    Ok(format!(
        "500 random multigraphs, {packed} packed, all certificates deficient"
    ))
}

fn cnf_family() -> Vec<Cnf> {
    let signs = |mask: u32| -> [i64; 3] {
        [1i64, 2, 3].map(|v| if mask >> (v - 1) & 1 == 1 { -v } else { v })
    };
    let mut family = Vec::new();
    for a in 0..8 {
        family.push(Cnf::from_signed(3, &[signs(a)]).unwrap());
    }
    for a in 0..8 {
        for b in a + 1..8 {
            family.push(Cnf::from_signed(3, &[signs(a), signs(b)]).unwrap());
        }
    }
    for a in 0..8 {
        for b in a + 1..8 {
            for c in b + 1..8 {
                family.push(Cnf::from_signed(3, &[signs(a), signs(b), signs(c)]).unwrap());
            }
        }
    }
    for clause in [[1, -1, 2], [1, -1, -2], [1, 2, -2], [-1, 2, -2]] {
        family.push(Cnf::from_signed(2, &[clause]).unwrap());
    }
    // no formula with at most three clauses over three variables is
    // unsatisfiable, so the family adds the full 8-clause formula
    let full: Vec<[i64; 3]> = (0..8).map(signs).collect();
    family.push(Cnf::from_signed(3, &full).unwrap());
    let mut reversed = full.clone();
    reversed.reverse();
    family.push(Cnf::from_signed(3, &reversed).unwrap());
    let mut extended = full;
    extended.push([4, 1, -2]);
    family.push(Cnf::from_signed(4, &extended).unwrap());
    family
}

fn criterion_5() -> Outcome {
    let b = budget();
    let family = cnf_family();
    let mut unsat = 0;
    for (i, f) in family.iter().enumerate() {
        let sat = oracle_sat(f).map_err(|e| e.to_string())?.is_some();
        unsat += !sat as usize;
        let r = sat_to_instance(f, Provenance::Sat).map_err(|e| e.to_string())?;
        ensure(
            r.digraph.is_k_regular(2) && r.digraph.connectivity().strong,
            || format!("formula #{i}: instance not 2-regular and strong"),
        )?;
        for req in [
            Requirement::Connected,
            Requirement::Strong,
            Requirement::OutBranchingFromS,
        ] {
            let found =
                oracle_remainder_path(&r.digraph, r.s, r.t, req, &b).map_err(|e| e.to_string())?;
            ensure(found.is_some() == sat, || {
                format!(
                    "formula #{i}: sat={sat} but {req:?} oracle {}",
                    found.is_some()
                )
            })?;
        }
        if f.clauses().len() <= 2 {
            let all = oracle_remainder_paths_all(&r.digraph, r.s, r.t, Requirement::Connected, &b)
                .map_err(|e| e.to_string())?;
            for p in all {
                let decoded = path_to_assignment(&r, &p.into_iter().collect::<ArcSet>())
                    .map_err(|e| format!("formula #{i}: witness enters a clause gadget: {e}"))?;
                ensure(f.evaluate(&decoded), || {
                    format!("formula #{i}: witness decodes to a non-model")
                })?;
            }
        }
    }
    Ok(format!(
        "{} formulas ({unsat} unsatisfiable), SAT = P1 = P2 = P3 on all",
        family.len()
    ))
}

fn criterion_6() -> Outcome {
    let report = verify_cycle_breaker(&cycle_breaker()).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("{report:?}"))?;
    Ok("G1-G5 hold on the shipped gadget".into())
}

fn criterion_7() -> Outcome {
    let b = budget();
    let hosts = [
        ("bidirected triangle", bidirected_triangle()),
        ("doubled 3-cycle", doubled_cycle3()),
        ("single-Hamiltonian quad", single_hamiltonian_quad()),
    ];
    let mut lines = Vec::new();
    for (name, d) in hosts {
        let host = oracle_ham_pairs(&d, HamMode::Cycles, None, &b).map_err(|e| e.to_string())?;
        let path = ham_cycle_to_ham_path(&d, 0).map_err(|e| e.to_string())?;
        let free =
            oracle_ham_pairs(&path.digraph, HamMode::Paths, None, &b).map_err(|e| e.to_string())?;
        let pinned = oracle_ham_pairs(&path.digraph, HamMode::Paths, Some(path.endpoints), &b)
            .map_err(|e| e.to_string())?;
        ensure(
            host.is_some() == free.is_some() && host.is_some() == pinned.is_some(),
            || {
                format!(
                    "{name}: host {} vs paths {} / pinned {}",
                    host.is_some(),
                    free.is_some(),
                    pinned.is_some()
                )
            },
        )?;
        for variant in [RootVariant::Same, RootVariant::Distinct] {
            let inout = ham_cycle_to_inout(&d, 0, variant).map_err(|e| e.to_string())?;
            let pair =
                oracle_inout_pair(&inout.digraph, None, None, &b).map_err(|e| e.to_string())?;
            ensure(host.is_some() == pair.is_some(), || {
                format!(
                    "{name} {variant:?}: host {} vs in/out {}",
                    host.is_some(),
                    pair.is_some()
                )
            })?;
        }
        lines.push(format!(
            "{name}: {}",
            if host.is_some() { "yes" } else { "no" }
        ));
    }
    Ok(format!("answers preserved ({})", lines.join(", ")))
}

fn criterion_8() -> Outcome {
    let b = budget();
    let d = doubled_digon();
    let e = k_expand(&d, 3).map_err(|e| e.to_string())?;
    ensure(
        e.digraph.is_k_regular(3) && e.digraph.is_k_arc_strong(2),
        || "structure".into(),
    )?;
    let host = oracle_inout_pair(&d, None, None, &b).map_err(|e| e.to_string())?;
    let big = oracle_inout_pair(&e.digraph, None, None, &b).map_err(|e| e.to_string())?;
    ensure(host.is_some() == big.is_some(), || {
        format!("host {} vs expansion {}", host.is_some(), big.is_some())
    })?;
    Ok(format!(
        "{} vertices, {} arcs, 3-regular, 2-arc-strong, answer {} on both",
        e.digraph.vertex_count(),
        e.digraph.arc_count(),
        if host.is_some() { "yes" } else { "no" }
    ))
}

fn criterion_9() -> Outcome {
    let b = budget();
    let mut found = search_eulerian_counterexample(&b, 6, 1).map_err(|e| e.to_string())?;
    if found.is_none() {
        found = search_eulerian_counterexample(&b, 7, 1).map_err(|e| e.to_string())?;
    }
    let c = found.ok_or("no counterexample with n <= 7")?;
    let d = &c.digraph;
    ensure(d.is_eulerian_balanced(), || "not Eulerian".into())?;
    let mixed = oracle_branching_with_connected_remainder(d, &b).map_err(|e| e.to_string())?;
    ensure(mixed.is_some(), || {
        "no branching with connected remainder".into()
    })?;
    let two = oracle_free_out_branchings(d, 2, &b).map_err(|e| e.to_string())?;
    ensure(two.is_none(), || "two disjoint out-branchings exist".into())?;
    Ok(format!(
        "n={} arcs {:?}",
        d.vertex_count(),
        d.arcs()
            .iter()
            .map(|a| (a.tail, a.head))
            .collect::<Vec<_>>()
    ))
}

type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() {
    let criteria: [Criterion; 9] = [
        (
            "free-root equivalence on 2-regular digraphs",
            criterion_1,
            600,
        ),
        (
            "root-vector checker vs subset oracle",
            || criterion_2_and_3().map(|(a, _)| a),
            60,
        ),
        ("constructive soundness", criterion_3, 660),
        ("tree packing vs partition condition", criterion_4, 300),
        ("SAT reduction correctness", criterion_5, 600),
        ("Cycle Breaker certification", criterion_6, 60),
        ("Hamiltonian reductions preserve answers", criterion_7, 600),
        ("k-regular expansion", criterion_8, 300),
        ("Eulerian non-extension", criterion_9, 600),
    ];
    let filter = std::env::args().nth(1).filter(|a| !a.starts_with('-'));
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let id = i + 1;
        if filter.as_ref().is_some_and(|f| f != &id.to_string()) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let result = result.and_then(|msg| {
            if elapsed > Duration::from_secs(*limit) {
                Err(format!("{msg}; took {elapsed:.1?}, limit {limit}s"))
            } else {
                Ok(msg)
            }
        });
        match result {
            Ok(msg) => println!("criterion {id} PASS [{name}] {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id} FAIL [{name}] {msg} ({elapsed:.2?})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
