//! Gadget constructions: the Cycle Breaker, the Hamiltonian reductions,
//! k-regular expansion and the 3-SAT reduction.

pub mod expand;
pub mod gadget;
pub mod hamiltonian;
pub mod sat;

pub use expand::{k_expand, Expansion};
pub use gadget::{
    cycle_breaker, double_cycle_breaker, verify_cycle_breaker, verify_double_gadget, DoubleGadget,
    Gadget, GadgetReport, Ports, RootVariant,
};
pub use hamiltonian::{ham_cycle_to_ham_path, ham_cycle_to_inout, HamPathInstance, InOutInstance};
pub use sat::{
    assignment_to_path, path_to_assignment, sat_to_instance, Cnf, Literal, Provenance,
    ReductionInstance, VariableRoute,
};
