//! 3-SAT to an (s,t)-path whose removal leaves the rest connected.

use arcpack::oracle::{oracle_remainder_path, OracleBudget, Requirement};
use arcpack::reductions::{
    assignment_to_path, path_to_assignment, sat_to_instance, Cnf, Provenance,
};
use arcpack::ArcSet;

fn main() -> arcpack::Result<()> {
    let f = Cnf::parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 3 0\n")?;
    let r = sat_to_instance(&f, Provenance::Sat)?;
    println!(
        "{} vertices, {} arcs, s = {}, t = {}",
        r.digraph.vertex_count(),
        r.digraph.arc_count(),
        r.s,
        r.t
    );

    let path = assignment_to_path(&r, &[true, true, false])?;
    println!("path for (1, 1, 0): {:?}", path.ids());

    let budget = OracleBudget::default();
    if let Some(p) = oracle_remainder_path(&r.digraph, r.s, r.t, Requirement::Connected, &budget)? {
        let values = path_to_assignment(&r, &p.into_iter().collect::<ArcSet>())?;
        println!(
            "oracle path decodes to {values:?}, satisfies: {}",
            f.evaluate(&values)
        );
    }
    Ok(())
}
