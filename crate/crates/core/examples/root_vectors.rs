//! Out-branchings with prescribed roots, and the vertex set that blocks a
//! bad choice of roots.

use arcpack::branchings::{check_root_vector, pack_out_branchings, RootCheck, RootVector};
use arcpack::catalog::{bidirected_triangle, path3};

fn main() -> arcpack::Result<()> {
    let d = bidirected_triangle();
    let r = RootVector::from_pairs(3, &[(0, 1), (2, 1)], 2)?;
    let set = pack_out_branchings(&d, &r)?;
    for (root, b) in set.roots.iter().zip(&set.branchings) {
        println!("root {root}: arcs {:?}", b.ids());
    }

    let path = path3();
    let r = RootVector::from_pairs(3, &[(1, 1)], 1)?;
    if let RootCheck::Violated { witness } = check_root_vector(&path, &r)? {
        let cut = path.degrees(&witness)?;
        println!(
            "root at 1 fails on {witness:?}: {} arcs enter, 1 needed",
            cut.entering
        );
    }
    Ok(())
}
