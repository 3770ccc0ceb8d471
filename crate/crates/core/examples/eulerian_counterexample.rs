//! Smallest Eulerian digraph with a branching whose removal leaves it
//! connected but with no two arc-disjoint out-branchings.

use arcpack::oracle::{search_eulerian_counterexample, OracleBudget};

fn main() -> arcpack::Result<()> {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    match search_eulerian_counterexample(&OracleBudget::default(), 5, jobs)? {
        Some(c) => {
            let arcs: Vec<_> = c.digraph.arcs().iter().map(|a| (a.tail, a.head)).collect();
            println!("{} vertices, arcs {arcs:?}", c.digraph.vertex_count());
            println!("branching at {}: {:?}", c.branching_root, c.branching.ids());
        }
        None => println!("none up to 5 vertices"),
    }
    Ok(())
}
