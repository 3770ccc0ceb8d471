//! Edge-disjoint spanning trees, or the partition that rules them out.

use arcpack::catalog::{bidirected_triangle, cycle3};
use arcpack::trees::{pack_spanning_trees, TreePackingOutcome};

fn main() -> arcpack::Result<()> {
    for (name, d) in [
        ("bidirected triangle", bidirected_triangle()),
        ("3-cycle", cycle3()),
    ] {
        match pack_spanning_trees(&d, 2)? {
            TreePackingOutcome::Packed(p) => {
                for (i, t) in p.trees.iter().enumerate() {
                    println!("{name}: tree {i} uses arcs {:?}", t.ids());
                }
            }
            TreePackingOutcome::Infeasible(c) => println!(
                "{name}: blocks {:?} fall short by {}",
                c.partition.blocks(),
                c.deficiency
            ),
        }
    }
    Ok(())
}
