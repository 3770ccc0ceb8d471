//! Check the gadget's properties by exhaustive search and print the report.

use arcpack::reductions::{
    cycle_breaker, double_cycle_breaker, verify_cycle_breaker, verify_double_gadget, RootVariant,
};

fn main() -> arcpack::Result<()> {
    let g = cycle_breaker();
    let report = verify_cycle_breaker(&g)?;
    println!("{:#?}", report);
    println!("passed: {}", report.passed());
    for variant in [RootVariant::Same, RootVariant::Distinct] {
        let dg = double_cycle_breaker(variant);
        println!(
            "double gadget {variant:?}: {} vertices, checks {}",
            dg.digraph.vertex_count(),
            if verify_double_gadget(&dg) {
                "pass"
            } else {
                "fail"
            }
        );
    }
    Ok(())
}
