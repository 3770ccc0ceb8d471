use std::collections::VecDeque;
use std::ops::ControlFlow;

use serde::Serialize;

use super::{cap, Deadline, OracleBudget};
use crate::branchings::{BranchingSet, RootVector};
use crate::digraph::{ArcId, ArcSet, Digraph, Direction, VertexId};
use crate::error::{Error, Result};

pub const ROOT_VECTOR_LIMIT: usize = 20;

/// Calls `visit` with every out-branching of `d - removed` rooted at
/// `root`. Branchings are built by choosing one entering arc per non-root
/// vertex, vertices and arcs in id order; `prune` sees the number of
/// unused, non-removed leaving arcs per vertex after every choice and may
/// cut the branch. Returns true if `visit` broke off.
pub fn for_each_out_branching(
    d: &Digraph,
    root: VertexId,
    removed: &[bool],
    deadline: &Deadline,
    prune: &mut dyn FnMut(&[usize]) -> bool,
    visit: &mut dyn FnMut(&[ArcId]) -> ControlFlow<()>,
) -> Result<bool> {
    d.check_vertex(root)?;
    if !d.reaches_all(root, removed, Direction::Forward) {
        return Ok(false);
    }
    let n = d.vertex_count();
    let order: Vec<VertexId> = d.vertices().filter(|&v| v != root).collect();
    let out_left = d
        .vertices()
        .map(|v| d.out_arcs(v).iter().filter(|&&a| !removed[a]).count())
        .collect();
    let mut e = Enumerator {
        d,
        root,
        removed,
        deadline,
        order,
        parent: vec![None; n],
        chosen: Vec::with_capacity(n),
        out_left,
        ticks: 0,
    };
    e.step(0, prune, visit)
}

struct Enumerator<'a> {
    d: &'a Digraph,
    root: VertexId,
    removed: &'a [bool],
    deadline: &'a Deadline,
    order: Vec<VertexId>,
    parent: Vec<Option<VertexId>>,
    chosen: Vec<ArcId>,
    out_left: Vec<usize>,
    ticks: u32,
}

impl Enumerator<'_> {
    fn closes_cycle(&self, tail: VertexId, v: VertexId) -> bool {
        let mut x = tail;
        loop {
            if x == v {
                return true;
            }
            if x == self.root {
                return false;
            }
            match self.parent[x] {
                Some(p) => x = p,
                None => return false,
            }
        }
    }

    fn step(
        &mut self,
        i: usize,
        prune: &mut dyn FnMut(&[usize]) -> bool,
        visit: &mut dyn FnMut(&[ArcId]) -> ControlFlow<()>,
    ) -> Result<bool> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(1024) {
            self.deadline.check()?;
        }
        if i == self.order.len() {
            return Ok(visit(&self.chosen).is_break());
        }
        let v = self.order[i];
        for &a in self.d.in_arcs(v) {
            if self.removed[a] {
                continue;
            }
            let tail = self.d.arc(a).tail;
            if self.closes_cycle(tail, v) {
                continue;
            }
            self.parent[v] = Some(tail);
            self.chosen.push(a);
            self.out_left[tail] -= 1;
            let stop = if prune(&self.out_left) {
                false
            } else {
                self.step(i + 1, prune, visit)?
            };
            self.out_left[tail] += 1;
            self.chosen.pop();
            self.parent[v] = None;
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Breadth-first branching of the non-removed arcs, first arc in id order
/// wins; `Backward` gives an in-branching.
fn bfs_branching(
    d: &Digraph,
    root: VertexId,
    removed: &[bool],
    direction: Direction,
) -> Vec<ArcId> {
    let mut seen = vec![false; d.vertex_count()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    let mut arcs = Vec::new();
    while let Some(v) = queue.pop_front() {
        let incident = match direction {
            Direction::Forward => d.out_arcs(v),
            Direction::Backward => d.in_arcs(v),
        };
        for &a in incident {
            let w = match direction {
                Direction::Forward => d.arc(a).head,
                Direction::Backward => d.arc(a).tail,
            };
            if !removed[a] && !seen[w] {
                seen[w] = true;
                arcs.push(a);
                queue.push_back(w);
            }
        }
    }
    arcs.sort_unstable();
    arcs
}

/// An out-branching and an in-branching with no common arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InOutPair {
    pub out_root: VertexId,
    pub out_branching: ArcSet,
    pub in_root: VertexId,
    pub in_branching: ArcSet,
}

/// Arc-disjoint out-branching rooted at `u` and in-branching rooted at `v`;
/// `None` for either root means any vertex. A vertex other than the
/// in-root whose leaving arcs are all used by the partial out-branching
/// cuts the search.
pub fn oracle_inout_pair(
    d: &Digraph,
    u: Option<VertexId>,
    v: Option<VertexId>,
    budget: &OracleBudget,
) -> Result<Option<InOutPair>> {
    let deadline = budget.admit(d)?;
    for x in u.into_iter().chain(v) {
        d.check_vertex(x)?;
    }
    let n = d.vertex_count();
    if n == 0 {
        return Ok(None);
    }
    let no_removal = vec![false; d.arc_count()];
    let out_roots: Vec<VertexId> = u.map_or_else(|| d.vertices().collect(), |u| vec![u]);
    for out_root in out_roots {
        let mut found = None;
        let mut prune = |out_left: &[usize]| {
            let mut dry = (0..n).filter(|&x| out_left[x] == 0);
            match v {
                Some(v) => dry.any(|x| x != v),
                None => dry.nth(1).is_some(),
            }
        };
        let mut visit = |b: &[ArcId]| {
            let mut removed = no_removal.clone();
            for &a in b {
                removed[a] = true;
            }
            let candidates: Vec<VertexId> = v.map_or_else(|| d.vertices().collect(), |v| vec![v]);
            for in_root in candidates {
                if d.reaches_all(in_root, &removed, Direction::Backward) {
                    found = Some(InOutPair {
                        out_root,
                        out_branching: b.iter().copied().collect(),
                        in_root,
                        in_branching: bfs_branching(d, in_root, &removed, Direction::Backward)
                            .into_iter()
                            .collect(),
                    });
                    return ControlFlow::Break(());
                }
            }
            ControlFlow::Continue(())
        };
        if n == 1 {
            // the empty out-branching; the single vertex is its own in-root
            let _ = visit(&[]);
        } else {
            for_each_out_branching(d, out_root, &no_removal, &deadline, &mut prune, &mut visit)?;
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// `k` pairwise arc-disjoint out-branchings with free roots, roots
/// listed in non-decreasing order.
pub fn oracle_free_out_branchings(
    d: &Digraph,
    k: usize,
    budget: &OracleBudget,
) -> Result<Option<BranchingSet>> {
    let deadline = budget.admit(d)?;
    let mut removed = vec![false; d.arc_count()];
    let mut acc = BranchingSet {
        branchings: Vec::new(),
        roots: Vec::new(),
    };
    if d.vertex_count() == 0 {
        return Ok(None);
    }
    if free_level(d, k, 0, &mut removed, &deadline, &mut acc)? {
        Ok(Some(acc))
    } else {
        Ok(None)
    }
}

fn free_level(
    d: &Digraph,
    k: usize,
    min_root: VertexId,
    removed: &mut [bool],
    deadline: &Deadline,
    acc: &mut BranchingSet,
) -> Result<bool> {
    if acc.branchings.len() == k {
        return Ok(true);
    }
    let last = acc.branchings.len() + 1 == k;
    for root in min_root..d.vertex_count() {
        if last {
            if d.reaches_all(root, removed, Direction::Forward) {
                acc.branchings.push(
                    bfs_branching(d, root, removed, Direction::Forward)
                        .into_iter()
                        .collect(),
                );
                acc.roots.push(root);
                return Ok(true);
            }
            continue;
        }
        let snapshot = removed.to_vec();
        let mut outcome: Result<bool> = Ok(false);
        for_each_out_branching(d, root, &snapshot, deadline, &mut |_| false, &mut |b| {
            let mut inner = snapshot.clone();
            for &a in b {
                inner[a] = true;
            }
            acc.branchings.push(b.iter().copied().collect());
            acc.roots.push(root);
            match free_level(d, k, root, &mut inner, deadline, acc) {
                Ok(true) => {
                    outcome = Ok(true);
                    return ControlFlow::Break(());
                }
                Ok(false) => {}
                Err(e) => {
                    outcome = Err(e);
                    return ControlFlow::Break(());
                }
            }
            acc.branchings.pop();
            acc.roots.pop();
            ControlFlow::Continue(())
        })?;
        if outcome? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootOracle {
    Holds,
    /// First violating set in subset-mask order.
    Violated(Vec<VertexId>),
}

/// Checks `d^-(X) >= k - r(X)` for every non-empty `X` directly.
pub fn oracle_root_vector(
    d: &Digraph,
    r: &RootVector,
    budget: &OracleBudget,
) -> Result<RootOracle> {
    let deadline = budget.admit(d)?;
    let n = d.vertex_count();
    cap("vertex count", n, ROOT_VECTOR_LIMIT)?;
    if r.counts().len() != n {
        return Err(Error::InvalidArgument(format!(
            "root vector covers {} vertices, digraph has {n}",
            r.counts().len()
        )));
    }
    let k = r.k() as i64;
    for mask in 1u64..(1 << n) {
        if mask % 4096 == 0 {
            deadline.check()?;
        }
        let inside = |v: VertexId| mask >> v & 1 == 1;
        let entering = d
            .arcs()
            .iter()
            .filter(|a| inside(a.head) && !inside(a.tail))
            .count() as i64;
        let rx: i64 = (0..n)
            .filter(|&v| inside(v))
            .map(|v| r.count(v) as i64)
            .sum();
        if entering < k - rx {
            return Ok(RootOracle::Violated(
                (0..n).filter(|&v| inside(v)).collect(),
            ));
        }
    }
    Ok(RootOracle::Holds)
}

/// An out-branching whose deletion leaves the digraph weakly connected.
pub fn oracle_branching_with_connected_remainder(
    d: &Digraph,
    budget: &OracleBudget,
) -> Result<Option<(VertexId, ArcSet)>> {
    let deadline = budget.admit(d)?;
    let none = vec![false; d.arc_count()];
    for root in d.vertices() {
        let mut found = None;
        for_each_out_branching(d, root, &none, &deadline, &mut |_| false, &mut |b| {
            let mut removed = none.clone();
            for &a in b {
                removed[a] = true;
            }
            if d.is_weakly_connected_without(&removed) {
                found = Some((root, b.iter().copied().collect()));
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// An Eulerian digraph with an out-branching whose removal leaves it
/// connected, yet without two arc-disjoint out-branchings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub digraph: Digraph,
    pub branching_root: VertexId,
    pub branching: ArcSet,
}

const SEARCH_BLOCK: u64 = 1 << 14;

/// Scans simple digraphs on `2..=max_n` vertices, arc subsets in mask
/// order over the lexicographic pair list, and returns the first
/// counterexample. `jobs > 1` splits each block of masks across threads
/// without changing which instance is found.
pub fn search_eulerian_counterexample(
    budget: &OracleBudget,
    max_n: usize,
    jobs: usize,
) -> Result<Option<Counterexample>> {
    let deadline = budget.start();
    for n in 2..=max_n {
        let pairs: Vec<(VertexId, VertexId)> = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        if pairs.len() >= 63 {
            return Err(Error::BudgetExceeded(format!(
                "{n} vertices is beyond the mask search"
            )));
        }
        if n > budget.max_vertices {
            return Err(Error::BudgetExceeded(format!(
                "{n} vertices exceed the limit of {}",
                budget.max_vertices
            )));
        }
        let total = 1u64 << pairs.len();
        let mut start = 1;
        while start < total {
            deadline.check()?;
            let end = (start + SEARCH_BLOCK).min(total);
            if let Some(hit) = scan_block(n, &pairs, start, end, jobs.max(1), budget)? {
                return Ok(Some(hit));
            }
            start = end;
        }
    }
    Ok(None)
}

fn scan_block(
    n: usize,
    pairs: &[(VertexId, VertexId)],
    start: u64,
    end: u64,
    jobs: usize,
    budget: &OracleBudget,
) -> Result<Option<Counterexample>> {
    if jobs == 1 {
        for mask in start..end {
            if let Some(c) = candidate(n, pairs, mask, budget)? {
                return Ok(Some(c));
            }
        }
        return Ok(None);
    }
    let chunk = (end - start).div_ceil(jobs as u64);
    let results: Vec<Result<Option<(u64, Counterexample)>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs as u64)
            .map(|j| {
                let lo = start + j * chunk;
                let hi = (lo + chunk).min(end);
                scope.spawn(move || {
                    for mask in lo..hi {
                        if let Some(c) = candidate(n, pairs, mask, budget)? {
                            return Ok(Some((mask, c)));
                        }
                    }
                    Ok(None)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    let mut best: Option<(u64, Counterexample)> = None;
    for r in results {
        if let Some((mask, c)) = r? {
            if best.as_ref().is_none_or(|(b, _)| mask < *b) {
                best = Some((mask, c));
            }
        }
    }
    Ok(best.map(|(_, c)| c))
}

fn candidate(
    n: usize,
    pairs: &[(VertexId, VertexId)],
    mask: u64,
    budget: &OracleBudget,
) -> Result<Option<Counterexample>> {
    let m = mask.count_ones() as usize;
    // a branching plus a connected remainder needs 2(n-1) arcs
    if m < 2 * (n - 1) {
        return Ok(None);
    }
    let arcs: Vec<_> = (0..pairs.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| pairs[i])
        .collect();
    let d = Digraph::new(n, &arcs)?;
    if !d.is_eulerian_balanced() || !d.connectivity().weak {
        return Ok(None);
    }
    let Some((branching_root, branching)) = oracle_branching_with_connected_remainder(&d, budget)?
    else {
        return Ok(None);
    };
    if oracle_free_out_branchings(&d, 2, budget)?.is_some() {
        return Ok(None);
    }
    Ok(Some(Counterexample {
        digraph: d,
        branching_root,
        branching,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branchings::{is_out_branching, verify_branching_set};
    use crate::catalog::*;

    fn budget() -> OracleBudget {
        OracleBudget::default()
    }

    fn count_branchings(d: &Digraph, root: VertexId) -> usize {
        let mut count = 0;
        let none = vec![false; d.arc_count()];
        for_each_out_branching(
            d,
            root,
            &none,
            &budget().start(),
            &mut |_| false,
            &mut |b| {
                assert!(is_out_branching(d, b, root));
                count += 1;
                ControlFlow::Continue(())
            },
        )
        .unwrap();
        count
    }

    #[test]
    fn branching_counts() {
        // spanning arborescences of the complete digraph: n^(n-2) per root
        assert_eq!(count_branchings(&complete(3), 0), 3);
        assert_eq!(count_branchings(&complete(4), 0), 16);
        assert_eq!(count_branchings(&cycle3(), 0), 1);
        assert_eq!(count_branchings(&path3(), 1), 0);
        assert_eq!(count_branchings(&doubled_cycle3(), 0), 4);
    }

    #[test]
    fn inout_examples() {
        let p = oracle_inout_pair(&bidirected_triangle(), None, None, &budget())
            .unwrap()
            .unwrap();
        assert!(p.out_branching.is_disjoint(&p.in_branching));
        assert!(oracle_inout_pair(&cycle3(), None, None, &budget())
            .unwrap()
            .is_none());
        let p = oracle_inout_pair(&doubled_cycle3(), Some(0), Some(0), &budget())
            .unwrap()
            .unwrap();
        let d = doubled_cycle3();
        assert!(is_out_branching(&d, p.out_branching.ids(), 0));
        assert!(is_out_branching(&d.reverse(), p.in_branching.ids(), 0));
    }

    #[test]
    fn free_roots() {
        let b = oracle_free_out_branchings(&bidirected_triangle(), 2, &budget())
            .unwrap()
            .unwrap();
        assert!(verify_branching_set(&bidirected_triangle(), &b));
        assert!(oracle_free_out_branchings(&cycle3(), 2, &budget())
            .unwrap()
            .is_none());
        let two = doubled_cycle3().disjoint_union(&doubled_cycle3());
        assert!(oracle_free_out_branchings(&two, 1, &budget())
            .unwrap()
            .is_none());
    }

    #[test]
    fn root_vector_examples() {
        let r = RootVector::from_pairs(3, &[(0, 1)], 1).unwrap();
        assert_eq!(
            oracle_root_vector(&cycle3(), &r, &budget()).unwrap(),
            RootOracle::Holds
        );
        let r = RootVector::from_pairs(3, &[(1, 1)], 1).unwrap();
        assert_eq!(
            oracle_root_vector(&path3(), &r, &budget()).unwrap(),
            RootOracle::Violated(vec![0])
        );
        let r = RootVector::from_pairs(3, &[(0, 1), (1, 1)], 2).unwrap();
        assert_eq!(
            oracle_root_vector(&doubled_cycle3(), &r, &budget()).unwrap(),
            RootOracle::Holds
        );
    }

    #[test]
    fn finds_eulerian_counterexample() {
        let c = search_eulerian_counterexample(&budget(), 5, 1)
            .unwrap()
            .unwrap();
        assert!(c.digraph.is_eulerian_balanced());
        assert!(is_out_branching(
            &c.digraph,
            c.branching.ids(),
            c.branching_root
        ));
        let parallel = search_eulerian_counterexample(&budget(), 5, 4)
            .unwrap()
            .unwrap();
        assert_eq!(parallel, c);
    }
}
