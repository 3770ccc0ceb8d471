//! Certificates serialise to versioned JSON and re-check against their input.

use arcpack::catalog::cycle3;
use arcpack::certificate::{verify, Certificate, Envelope, Subject};
use arcpack::trees::{pack_spanning_trees, TreePackingOutcome};

fn main() -> arcpack::Result<()> {
    let d = cycle3();
    let cert: Certificate = match pack_spanning_trees(&d, 2)? {
        TreePackingOutcome::Packed(p) => (&p).into(),
        TreePackingOutcome::Infeasible(c) => (&c).into(),
    };
    let json = Envelope::new(cert).to_json();
    println!("{json}");
    let back = Envelope::from_json(&json)?;
    verify(&back.certificate, &Subject::Digraph(&d))?;
    println!("verified");
    Ok(())
}
