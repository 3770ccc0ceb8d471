//! Exhaustive deciders used as ground truth for the polynomial algorithms
//! and the reductions. Every oracle takes an explicit [`OracleBudget`] and
//! refuses, with [`Error::BudgetExceeded`], rather than run unbounded.

mod branchings;
mod counting;
mod paths;
mod query;

use std::time::{Duration, Instant};

use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub use branchings::{
    for_each_out_branching, oracle_branching_with_connected_remainder, oracle_free_out_branchings,
    oracle_inout_pair, oracle_root_vector, search_eulerian_counterexample, Counterexample,
    InOutPair, RootOracle,
};
pub use counting::{oracle_sat, oracle_tree_families, oracle_tree_packing};
pub use paths::{
    hamiltonian_cycles, hamiltonian_paths, oracle_ham_pairs, oracle_remainder_path,
    oracle_remainder_paths_all, HamMode, Requirement,
};
pub use query::{Answer, Query};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_arcs: usize,
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_vertices: 64,
            max_arcs: 256,
            time_limit: Duration::from_secs(120),
        }
    }
}

impl OracleBudget {
    pub fn new(max_vertices: usize, max_arcs: usize, time_limit: Duration) -> Result<Self> {
        if max_vertices == 0 || max_arcs == 0 || time_limit.is_zero() {
            return Err(Error::InvalidArgument(
                "oracle budget must be positive".into(),
            ));
        }
        Ok(OracleBudget {
            max_vertices,
            max_arcs,
            time_limit,
        })
    }

    /// Refuses `d` if it exceeds the size limits, otherwise starts the clock.
    pub fn admit(&self, d: &Digraph) -> Result<Deadline> {
        self.admit_size(d.vertex_count(), d.arc_count())
    }

    pub(crate) fn admit_size(&self, n: usize, m: usize) -> Result<Deadline> {
        if n > self.max_vertices {
            return Err(Error::BudgetExceeded(format!(
                "{n} vertices exceed the limit of {}",
                self.max_vertices
            )));
        }
        if m > self.max_arcs {
            return Err(Error::BudgetExceeded(format!(
                "{m} arcs exceed the limit of {}",
                self.max_arcs
            )));
        }
        Ok(self.start())
    }

    pub fn start(&self) -> Deadline {
        Deadline {
            end: Instant::now() + self.time_limit,
            limit: self.time_limit,
        }
    }
}

/// Wall-clock cut-off shared by the recursive searches.
#[derive(Debug, Clone, Copy)]
pub struct Deadline {
    end: Instant,
    limit: Duration,
}

impl Deadline {
    pub fn check(&self) -> Result<()> {
        if Instant::now() > self.end {
            Err(Error::BudgetExceeded(format!(
                "time limit of {:?} reached",
                self.limit
            )))
        } else {
            Ok(())
        }
    }
}

/// Refusal for oracles with a hard structural cap independent of the budget.
pub(crate) fn cap(what: &str, value: usize, limit: usize) -> Result<()> {
    if value > limit {
        Err(Error::BudgetExceeded(format!(
            "{what} = {value} exceeds the exhaustive limit of {limit}"
        )))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::complete;

    #[test]
    fn refusals() {
        let b = OracleBudget::new(3, 10, Duration::from_secs(1)).unwrap();
        assert!(b.admit(&complete(3)).is_ok());
        assert!(matches!(
            b.admit(&complete(4)),
            Err(Error::BudgetExceeded(_))
        ));
        let b = OracleBudget::new(10, 5, Duration::from_secs(1)).unwrap();
        assert!(b.admit(&complete(3)).is_err());
        assert!(OracleBudget::new(0, 5, Duration::from_secs(1)).is_err());
    }
}
