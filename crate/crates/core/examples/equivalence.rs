//! Free-root out-branchings and mixed families in a k-regular digraph,
//! derived from a spanning tree packing.

use arcpack::catalog::bidirected_triangle;
use arcpack::mixed::{decide_equivalence, solve_mixed, Equivalence, MixedOutcome};
use arcpack::reductions::k_expand;

fn main() -> arcpack::Result<()> {
    let d = k_expand(&bidirected_triangle(), 3)?.digraph;
    println!(
        "{} vertices, 3-regular: {}",
        d.vertex_count(),
        d.is_k_regular(3)
    );
    if let Equivalence::Feasible { branchings, trace } = decide_equivalence(&d)? {
        println!("arcs missed by the trees: {:?}", trace.missing_arcs);
        println!("roots: {:?}", branchings.roots);
    }
    for l in 1..=3 {
        if let MixedOutcome::Solved(s) = solve_mixed(&d, l)? {
            println!(
                "l = {l}: {} branchings, {} trees",
                s.out_branchings.len(),
                s.trees.len()
            );
        }
    }
    Ok(())
}
