//! Raise a 2-regular 2-arc-strong digraph to k-regular.

use arcpack::catalog::doubled_digon;
use arcpack::oracle::{oracle_inout_pair, OracleBudget};
use arcpack::reductions::k_expand;

fn main() -> arcpack::Result<()> {
    let host = doubled_digon();
    let budget = OracleBudget::default();
    for k in 3..=5 {
        let e = k_expand(&host, k)?;
        println!(
            "k = {k}: {} vertices, {} arcs, 2-arc-strong {}",
            e.digraph.vertex_count(),
            e.digraph.arc_count(),
            e.digraph.is_k_arc_strong(2)
        );
    }
    let e = k_expand(&host, 3)?;
    println!(
        "in/out pair: host {}, expansion {}",
        oracle_inout_pair(&host, None, None, &budget)?.is_some(),
        oracle_inout_pair(&e.digraph, None, None, &budget)?.is_some()
    );
    Ok(())
}
