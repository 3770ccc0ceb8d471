//! Free-root branching packings in k-regular digraphs.
//!
//! In a k-regular digraph, k edge-disjoint spanning trees leave exactly k
//! arcs unused. Taking the heads of those arcs as roots gives a root vector
//! that always passes the branching condition, so the trees can be traded
//! for k arc-disjoint out-branchings. This makes the mixed problem (l
//! out-branchings plus k - l spanning trees) polynomial: all k branchings
//! are also spanning trees.

use crate::branchings::{
    check_root_vector, pack_out_branchings, verify_branching_set, BranchingSet, RootCheck,
    RootVector,
};
use crate::digraph::{ArcId, ArcSet, Digraph};
use crate::error::{Error, Result};
use crate::trees::{
    is_spanning_tree, pack_spanning_trees, verify_tree_packing, PartitionCertificate, TreePacking,
    TreePackingOutcome,
};

/// Audit record of the pipeline: the arcs left over by the tree packing and
/// the root vector read off them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineTrace {
    pub k: usize,
    pub missing_arcs: Vec<ArcId>,
    pub root_vector: RootVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equivalence {
    Feasible {
        branchings: BranchingSet,
        trace: PipelineTrace,
    },
    Infeasible(PartitionCertificate),
}

impl Equivalence {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Equivalence::Feasible { .. })
    }
}

/// `l` out-branchings and `k - l` spanning trees, pairwise arc-disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedSolution {
    pub out_branchings: BranchingSet,
    pub trees: Vec<ArcSet>,
    pub l: usize,
    pub k: usize,
    pub trace: PipelineTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixedOutcome {
    Solved(MixedSolution),
    Infeasible(PartitionCertificate),
}

/// Roots at the heads of the arcs missed by a k-tree packing of a
/// k-regular digraph.
pub fn derive_root_vector(d: &Digraph, packing: &TreePacking) -> Result<(RootVector, Vec<ArcId>)> {
    let k = packing.k();
    if k == 0 || !d.is_k_regular(k) {
        d.regular_degree()?;
        return Err(Error::InvalidArgument(format!(
            "digraph is not {k}-regular"
        )));
    }
    if !verify_tree_packing(d, packing)? {
        return Err(Error::InvalidArgument("invalid tree packing".into()));
    }
    let missing = packing.unused_arcs(d);
    let mut counts = vec![0; d.vertex_count()];
    for &a in &missing {
        counts[d.arc(a).head] += 1;
    }
    if missing.len() != k {
        return Err(Error::InternalDefect(format!(
            "{} unused arcs in a {k}-regular tree packing",
            missing.len()
        )));
    }
    Ok((RootVector::new(counts, k)?, missing))
}

/// Decides whether the k-regular digraph `d` (k inferred) has k arc-disjoint
/// out-branchings with free roots, constructing them or returning a
/// partition certificate against k spanning trees.
pub fn decide_equivalence(d: &Digraph) -> Result<Equivalence> {
    let k = d.regular_degree()?;
    if k == 0 {
        return Err(Error::InvalidArgument("digraph has no arcs".into()));
    }
    let packing = match pack_spanning_trees(d, k)? {
        TreePackingOutcome::Packed(p) => p,
        TreePackingOutcome::Infeasible(c) => return Ok(Equivalence::Infeasible(c)),
    };
    let (root_vector, missing_arcs) = derive_root_vector(d, &packing)?;
    if let RootCheck::Violated { witness } = check_root_vector(d, &root_vector)? {
        return Err(Error::InternalDefect(format!(
            "derived root vector violated on {witness:?}"
        )));
    }
    let branchings = pack_out_branchings(d, &root_vector)?;
    if !verify_branching_set(d, &branchings) {
        return Err(Error::InternalDefect(
            "constructed branchings failed verification".into(),
        ));
    }
    Ok(Equivalence::Feasible {
        branchings,
        trace: PipelineTrace {
            k,
            missing_arcs,
            root_vector,
        },
    })
}

/// Solves the mixed packing for `0 < l <= k`: the first `l` branchings are
/// reported as out-branchings, the rest as trees.
pub fn solve_mixed(d: &Digraph, l: usize) -> Result<MixedOutcome> {
    let k = d.regular_degree()?;
    if l == 0 || l > k {
        return Err(Error::InvalidArgument(format!("l = {l} outside 1..={k}")));
    }
    match decide_equivalence(d)? {
        Equivalence::Infeasible(c) => Ok(MixedOutcome::Infeasible(c)),
        Equivalence::Feasible { branchings, trace } => {
            let BranchingSet {
                mut branchings,
                mut roots,
            } = branchings;
            let trees = branchings.split_off(l);
            roots.truncate(l);
            Ok(MixedOutcome::Solved(MixedSolution {
                out_branchings: BranchingSet { branchings, roots },
                trees,
                l,
                k,
                trace,
            }))
        }
    }
}

/// Every invariant of a mixed solution against `d`.
pub fn verify_mixed(d: &Digraph, s: &MixedSolution) -> bool {
    if s.out_branchings.len() != s.l || s.trees.len() + s.l != s.k {
        return false;
    }
    if !verify_branching_set(d, &s.out_branchings) {
        return false;
    }
    if s.trees
        .iter()
        .any(|t| t.iter().any(|a| a >= d.arc_count()) || !is_spanning_tree(d, t.ids()))
    {
        return false;
    }
    let mut seen = vec![false; d.arc_count()];
    s.out_branchings
        .branchings
        .iter()
        .chain(&s.trees)
        .flat_map(ArcSet::iter)
        .all(|a| !std::mem::replace(&mut seen[a], true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;

    #[test]
    fn doubled_cycle_roots_at_zero() {
        let d = doubled_cycle3();
        let packing = TreePacking {
            trees: vec![
                ArcSet::new(vec![0, 1]).unwrap(),
                ArcSet::new(vec![3, 4]).unwrap(),
            ],
        };
        let (r, missing) = derive_root_vector(&d, &packing).unwrap();
        assert_eq!(missing, vec![2, 5]);
        assert_eq!(r.counts(), &[2, 0, 0]);
    }

    #[test]
    fn bidirected_triangle_roots_from_missing_heads() {
        // trees {0->1, 0->2} and {1->0, 2->0}; unused 1->2 and 2->1
        let d = bidirected_triangle();
        let packing = TreePacking {
            trees: vec![
                ArcSet::new(vec![0, 1]).unwrap(),
                ArcSet::new(vec![2, 4]).unwrap(),
            ],
        };
        let (r, missing) = derive_root_vector(&d, &packing).unwrap();
        assert_eq!(missing, vec![3, 5]);
        assert_eq!(r.counts(), &[0, 1, 1]);
    }

    #[test]
    fn one_regular_cycle() {
        let d = cycle3();
        let packing = TreePacking {
            trees: vec![ArcSet::new(vec![0, 1]).unwrap()],
        };
        let (r, _) = derive_root_vector(&d, &packing).unwrap();
        assert_eq!(r.counts(), &[1, 0, 0]);
    }

    #[test]
    fn derive_rejects_irregular_or_invalid() {
        let p = TreePacking {
            trees: vec![ArcSet::new(vec![0, 1]).unwrap()],
        };
        assert!(derive_root_vector(&path3(), &p).is_err());
        let bad = TreePacking {
            trees: vec![ArcSet::new(vec![0]).unwrap()],
        };
        assert!(derive_root_vector(&cycle3(), &bad).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let d = bidirected_triangle();
        match decide_equivalence(&d).unwrap() {
            Equivalence::Feasible { branchings, trace } => {
                assert_eq!(branchings.len(), 2);
                assert!(verify_branching_set(&d, &branchings));
                assert_eq!(trace.missing_arcs.len(), 2);
            }
            Equivalence::Infeasible(c) => panic!("unexpected {c:?}"),
        }
        let two = doubled_cycle3().disjoint_union(&doubled_cycle3());
        match decide_equivalence(&two).unwrap() {
            Equivalence::Infeasible(c) => assert_eq!(c.partition.crossing_arcs(), 0),
            other => panic!("unexpected {other:?}"),
        }
        match decide_equivalence(&doubled_cycle3()).unwrap() {
            // id-order packing leaves 1->2 and 2->0 unused
            Equivalence::Feasible { branchings, trace } => {
                assert_eq!(trace.missing_arcs, vec![4, 5]);
                assert_eq!(branchings.sorted_roots(), vec![0, 2]);
                assert!(verify_branching_set(&doubled_cycle3(), &branchings));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn irregular_input_names_a_vertex() {
        match decide_equivalence(&path3()) {
            Err(Error::NotRegular { vertex, .. }) => assert_eq!(vertex, 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn mixed_solutions() {
        let d = bidirected_triangle();
        match solve_mixed(&d, 1).unwrap() {
            MixedOutcome::Solved(s) => {
                assert_eq!((s.out_branchings.len(), s.trees.len()), (1, 1));
                assert!(verify_mixed(&d, &s));
            }
            other => panic!("unexpected {other:?}"),
        }
        match solve_mixed(&doubled_cycle3(), 2).unwrap() {
            MixedOutcome::Solved(s) => {
                assert_eq!(s.out_branchings.len(), 2);
                assert!(s.trees.is_empty());
                assert!(verify_mixed(&doubled_cycle3(), &s));
            }
            other => panic!("unexpected {other:?}"),
        }
        let two = doubled_cycle3().disjoint_union(&doubled_cycle3());
        assert!(matches!(
            solve_mixed(&two, 1).unwrap(),
            MixedOutcome::Infeasible(_)
        ));
        assert!(solve_mixed(&d, 0).is_err());
        assert!(solve_mixed(&d, 3).is_err());
    }
}
