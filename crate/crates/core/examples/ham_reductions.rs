//! Two Hamiltonian cycles in a 2-regular host become two Hamiltonian paths
//! or an out/in-branching pair in the gadget instance.

use arcpack::catalog::{bidirected_triangle, single_hamiltonian_quad};
use arcpack::oracle::{oracle_ham_pairs, oracle_inout_pair, HamMode, OracleBudget};
use arcpack::reductions::{ham_cycle_to_ham_path, ham_cycle_to_inout, RootVariant};

fn main() -> arcpack::Result<()> {
    let budget = OracleBudget::default();
    for (name, host) in [
        ("bidirected triangle", bidirected_triangle()),
        ("single-Hamiltonian quad", single_hamiltonian_quad()),
    ] {
        let cycles = oracle_ham_pairs(&host, HamMode::Cycles, None, &budget)?;
        let paths = ham_cycle_to_ham_path(&host, 0)?;
        let found = oracle_ham_pairs(
            &paths.digraph,
            HamMode::Paths,
            Some(paths.endpoints),
            &budget,
        )?;
        let inout = ham_cycle_to_inout(&host, 0, RootVariant::Same)?;
        let pair = oracle_inout_pair(&inout.digraph, None, None, &budget)?;
        println!(
            "{name}: cycles {} / paths {} / in-out {}",
            cycles.is_some(),
            found.is_some(),
            pair.is_some()
        );
        if let Some([c1, c2]) = cycles {
            let [p, q] = paths.lift(&host, c1.ids(), c2.ids())?;
            println!("  lifted paths {:?} and {:?}", p.ids(), q.ids());
        }
    }
    Ok(())
}
