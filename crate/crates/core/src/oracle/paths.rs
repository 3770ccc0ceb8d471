use std::cell::Cell;

use serde::{Deserialize, Serialize};

use super::{Deadline, OracleBudget};
use crate::digraph::{ArcId, ArcSet, Digraph, Direction, VertexId};
use crate::enumerate::{walk_simple_paths, Step, Walk};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum HamMode {
    Cycles,
    Paths,
}

/// Property the digraph must keep after deleting the path's arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Requirement {
    Connected,
    Strong,
    OutBranchingFromS,
}

impl Requirement {
    pub fn holds(self, d: &Digraph, removed: &[bool], s: VertexId) -> bool {
        match self {
            Requirement::Connected => d.is_weakly_connected_without(removed),
            Requirement::Strong => d.is_strongly_connected_without(removed),
            Requirement::OutBranchingFromS => d.reaches_all(s, removed, Direction::Forward),
        }
    }
}

/// Runs a path walk whose visitor may fail; the first error stops the walk.
fn guarded_walk(
    d: &Digraph,
    start: VertexId,
    deadline: &Deadline,
    mut visit: impl FnMut(&Walk) -> Step,
) -> Result<()> {
    let failure = Cell::new(None);
    let mut ticks = 0u32;
    walk_simple_paths(d, start, &mut |w| {
        ticks = ticks.wrapping_add(1);
        if ticks.is_multiple_of(1024) {
            if let Err(e) = deadline.check() {
                failure.set(Some(e));
                return Step::Stop;
            }
        }
        visit(w)
    });
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Every Hamiltonian cycle, each listed once (starting at vertex 0) and
/// distinguished by arc ids, so parallel arcs give distinct cycles.
pub fn hamiltonian_cycles(d: &Digraph, deadline: &Deadline) -> Result<Vec<ArcSet>> {
    let n = d.vertex_count();
    let mut found = Vec::new();
    if n < 2 {
        return Ok(found);
    }
    guarded_walk(d, 0, deadline, |w| {
        if w.len() < n {
            return Step::Descend;
        }
        for &a in d.out_arcs(w.last()) {
            if d.arc(a).head == 0 {
                found.push(w.arcs.iter().copied().chain([a]).collect());
            }
        }
        Step::Backtrack
    })?;
    Ok(found)
}

/// Every Hamiltonian path with its end vertices.
pub fn hamiltonian_paths(
    d: &Digraph,
    deadline: &Deadline,
) -> Result<Vec<(VertexId, VertexId, ArcSet)>> {
    let n = d.vertex_count();
    let mut found = Vec::new();
    for start in d.vertices() {
        guarded_walk(d, start, deadline, |w| {
            if w.len() < n {
                Step::Descend
            } else {
                found.push((start, w.last(), w.arcs.iter().copied().collect()));
                Step::Backtrack
            }
        })?;
    }
    Ok(found)
}

/// Two arc-disjoint Hamiltonian cycles or paths. With `endpoints`, the
/// first path runs between the first pair and the second between the
/// second pair.
pub fn oracle_ham_pairs(
    d: &Digraph,
    mode: HamMode,
    endpoints: Option<[(VertexId, VertexId); 2]>,
    budget: &OracleBudget,
) -> Result<Option<[ArcSet; 2]>> {
    let deadline = budget.admit(d)?;
    if let Some(ends) = endpoints {
        if mode == HamMode::Cycles {
            return Err(Error::InvalidArgument("cycles take no endpoints".into()));
        }
        for (u, v) in ends {
            d.check_vertex(u)?;
            d.check_vertex(v)?;
        }
    }
    let (first, second): (Vec<ArcSet>, Vec<ArcSet>) = match mode {
        HamMode::Cycles => {
            let all = hamiltonian_cycles(d, &deadline)?;
            (all.clone(), all)
        }
        HamMode::Paths => {
            let all = hamiltonian_paths(d, &deadline)?;
            let pick = |want: Option<(VertexId, VertexId)>| -> Vec<ArcSet> {
                all.iter()
                    .filter(|(u, v, _)| want.is_none_or(|w| w == (*u, *v)))
                    .map(|(_, _, p)| p.clone())
                    .collect()
            };
            (pick(endpoints.map(|e| e[0])), pick(endpoints.map(|e| e[1])))
        }
    };
    for (i, p) in first.iter().enumerate() {
        deadline.check()?;
        let later = if endpoints.is_none() { i + 1 } else { 0 };
        if let Some(q) = second[later.min(second.len())..]
            .iter()
            .find(|q| p.is_disjoint(q))
        {
            return Ok(Some([p.clone(), q.clone()]));
        }
    }
    Ok(None)
}

fn remainder_search(
    d: &Digraph,
    s: VertexId,
    t: VertexId,
    requirement: Requirement,
    budget: &OracleBudget,
    stop_at_first: bool,
) -> Result<Vec<Vec<ArcId>>> {
    let deadline = budget.admit(d)?;
    d.check_vertex(s)?;
    d.check_vertex(t)?;
    if s == t {
        return Err(Error::InvalidArgument("s and t must differ".into()));
    }
    let mut found = Vec::new();
    guarded_walk(d, s, &deadline, |w| {
        // deleting more arcs never restores the property
        if !requirement.holds(d, &w.arc_used, s) {
            return Step::Backtrack;
        }
        if w.last() != t {
            return Step::Descend;
        }
        found.push(w.arcs.clone());
        if stop_at_first {
            Step::Stop
        } else {
            Step::Backtrack
        }
    })?;
    Ok(found)
}

/// A directed `(s, t)`-path whose arc deletion keeps `requirement`.
pub fn oracle_remainder_path(
    d: &Digraph,
    s: VertexId,
    t: VertexId,
    requirement: Requirement,
    budget: &OracleBudget,
) -> Result<Option<Vec<ArcId>>> {
    Ok(remainder_search(d, s, t, requirement, budget, true)?
        .into_iter()
        .next())
}

/// Every such path, in enumeration order.
pub fn oracle_remainder_paths_all(
    d: &Digraph,
    s: VertexId,
    t: VertexId,
    requirement: Requirement,
    budget: &OracleBudget,
) -> Result<Vec<Vec<ArcId>>> {
    remainder_search(d, s, t, requirement, budget, false)
}
