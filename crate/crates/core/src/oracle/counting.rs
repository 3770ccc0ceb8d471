use super::{cap, Deadline, OracleBudget};
use crate::digraph::{ArcSet, Digraph, Partition};
use crate::enumerate::SetPartitions;
use crate::error::Result;
use crate::reductions::Cnf;
use crate::trees::{PartitionCertificate, TreePacking};

/// Largest vertex count for the partition scan.
pub const TREE_PARTITION_LIMIT: usize = 10;
/// Largest arc count for the tree-family enumeration.
pub const TREE_FAMILY_LIMIT: usize = 16;
pub const SAT_LIMIT: usize = 20;

/// Scans every partition of the vertex set for one crossed by fewer than
/// `k(t-1)` arcs. `None` means the tree-packing condition holds.
pub fn oracle_tree_packing(
    d: &Digraph,
    k: usize,
    budget: &OracleBudget,
) -> Result<Option<PartitionCertificate>> {
    let deadline = budget.admit(d)?;
    let n = d.vertex_count();
    cap("vertex count", n, TREE_PARTITION_LIMIT)?;
    let mut worst: Option<(i64, Vec<usize>)> = None;
    for (i, labels) in SetPartitions::new(n).enumerate() {
        if i % 4096 == 0 {
            deadline.check()?;
        }
        let t = labels.iter().max().map_or(0, |&b| b + 1) as i64;
        let crossing = d
            .arcs()
            .iter()
            .filter(|a| labels[a.tail] != labels[a.head])
            .count() as i64;
        let deficiency = k as i64 * (t - 1) - crossing;
        if deficiency >= 1 && worst.as_ref().is_none_or(|(w, _)| deficiency > *w) {
            worst = Some((deficiency, labels));
        }
    }
    match worst {
        None => Ok(None),
        Some((deficiency, labels)) => Ok(Some(PartitionCertificate {
            partition: Partition::from_labels(d, &labels)?,
            k,
            deficiency,
        })),
    }
}

/// Searches directly for `k` disjoint spanning trees by assigning each arc
/// to one tree or none.
pub fn oracle_tree_families(
    d: &Digraph,
    k: usize,
    budget: &OracleBudget,
) -> Result<Option<TreePacking>> {
    let deadline = budget.admit(d)?;
    cap("arc count", d.arc_count(), TREE_FAMILY_LIMIT)?;
    let n = d.vertex_count();
    if n == 0 || k == 0 {
        return Ok(None);
    }
    let mut search = FamilySearch {
        d,
        deadline,
        comps: vec![(0..n).collect(); k],
        trees: vec![Vec::new(); k],
        ticks: 0,
    };
    if search.assign(0)? {
        Ok(Some(TreePacking {
            trees: search
                .trees
                .into_iter()
                .map(|t| t.into_iter().collect::<ArcSet>())
                .collect(),
        }))
    } else {
        Ok(None)
    }
}

struct FamilySearch<'a> {
    d: &'a Digraph,
    deadline: Deadline,
    /// Component label of each vertex in each forest.
    comps: Vec<Vec<usize>>,
    trees: Vec<Vec<usize>>,
    ticks: u32,
}

impl FamilySearch<'_> {
    fn assign(&mut self, arc: usize) -> Result<bool> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(4096) {
            self.deadline.check()?;
        }
        let n = self.d.vertex_count();
        let missing: usize = self.trees.iter().map(|t| n - 1 - t.len()).sum();
        if missing == 0 {
            return Ok(true);
        }
        if self.d.arc_count() - arc < missing {
            return Ok(false);
        }
        let a = self.d.arc(arc);
        for j in 0..self.trees.len() {
            // trees are interchangeable: open them in order
            if j > 0 && self.trees[j - 1].is_empty() {
                break;
            }
            let (x, y) = (self.comps[j][a.tail], self.comps[j][a.head]);
            if x == y {
                continue;
            }
            let saved = self.comps[j].clone();
            for c in self.comps[j].iter_mut() {
                if *c == y {
                    *c = x;
                }
            }
            self.trees[j].push(arc);
            if self.assign(arc + 1)? {
                return Ok(true);
            }
            self.trees[j].pop();
            self.comps[j] = saved;
        }
        self.assign(arc + 1)
    }
}

/// A satisfying assignment, scanning assignments downward from all-true
/// with variable 0 as the lowest bit.
pub fn oracle_sat(f: &Cnf) -> Result<Option<Vec<bool>>> {
    let n = f.variable_count();
    cap("variable count", n, SAT_LIMIT)?;
    Ok((0..1u64 << n)
        .rev()
        .map(|mask| (0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .find(|a| f.evaluate(a)))
}
