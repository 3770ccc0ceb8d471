//! Arc-disjoint out-branchings with prescribed root multiplicities.
//!
//! Feasibility of a root vector `r` is decided on the digraph augmented with
//! a super-root carrying `r(v)` parallel arcs to every `v`: `r` is feasible
//! exactly when every vertex receives `k` arc-disjoint paths from the
//! super-root. Construction follows Lovász's proof of Edmonds' branching
//! theorem, growing one arborescence at a time from the super-root and only
//! admitting arcs that keep the remaining cut condition intact.

use crate::digraph::{ArcId, ArcSet, Digraph, VertexId};
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;

/// Root multiplicities summing to `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootVector {
    counts: Vec<usize>,
    k: usize,
}

impl RootVector {
    /// Fails unless the counts sum to `k` and `k` is positive.
    pub fn new(counts: Vec<usize>, k: usize) -> Result<Self> {
        let total: usize = counts.iter().sum();
        if k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        if total != k {
            return Err(Error::InvalidArgument(format!(
                "root multiplicities sum to {total}, expected {k}"
            )));
        }
        Ok(Self { counts, k })
    }

    /// Sparse form: `(vertex, count)` pairs over `n` vertices.
    pub fn from_pairs(n: usize, pairs: &[(VertexId, usize)], k: usize) -> Result<Self> {
        let mut counts = vec![0; n];
        for &(v, c) in pairs {
            if v >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    vertex_count: n,
                });
            }
            counts[v] += c;
        }
        Self::new(counts, k)
    }

    /// Counts define `k` as their sum.
    pub fn from_counts(counts: Vec<usize>) -> Result<Self> {
        let k = counts.iter().sum();
        Self::new(counts, k)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn count(&self, v: VertexId) -> usize {
        self.counts[v]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total_over(&self, set: &[VertexId]) -> usize {
        set.iter().map(|&v| self.counts[v]).sum()
    }

    /// Roots with multiplicity, in vertex order.
    pub fn roots(&self) -> Vec<VertexId> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(v, &c)| std::iter::repeat_n(v, c))
            .collect()
    }

    fn check_len(&self, d: &Digraph) -> Result<()> {
        if self.counts.len() != d.vertex_count() {
            return Err(Error::InvalidArgument(format!(
                "root vector has {} entries for a digraph with {} vertices",
                self.counts.len(),
                d.vertex_count()
            )));
        }
        Ok(())
    }
}

/// Arc-disjoint branchings with their roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingSet {
    pub branchings: Vec<ArcSet>,
    pub roots: Vec<VertexId>,
}

impl BranchingSet {
    pub fn len(&self) -> usize {
        self.branchings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branchings.is_empty()
    }

    /// Root multiset, sorted.
    pub fn sorted_roots(&self) -> Vec<VertexId> {
        let mut r = self.roots.clone();
        r.sort_unstable();
        r
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootCheck {
    Feasible,
    /// Non-empty `X` with `d^-(X) < k - r(X)`.
    Violated {
        witness: Vec<VertexId>,
    },
}

impl RootCheck {
    pub fn is_feasible(&self) -> bool {
        matches!(self, RootCheck::Feasible)
    }
}

fn augmented_network(d: &Digraph, r: &RootVector) -> (FlowNetwork, usize) {
    let mut net = FlowNetwork::new(d.vertex_count());
    for arc in d.arcs() {
        net.add_arc(arc.tail, arc.head, 1);
    }
    let root = net.add_node();
    for v in d.vertices() {
        if r.count(v) > 0 {
            net.add_arc(root, v, r.count(v) as u32);
        }
    }
    (net, root)
}

/// Decides `d^-(X) >= k - r(X)` for every non-empty `X` through super-root
/// flows. On failure the witness is the smallest minimal sink side over all
/// vertices that receive fewer than `k` paths.
pub fn check_root_vector(d: &Digraph, r: &RootVector) -> Result<RootCheck> {
    r.check_len(d)?;
    let k = r.k();
    let (base, root) = augmented_network(d, r);
    let mut best: Option<Vec<VertexId>> = None;
    for v in d.vertices() {
        let mut net = base.clone();
        if (net.max_flow(root, v, k as u32) as usize) < k {
            let side = net.sink_side(v);
            let witness: Vec<VertexId> = d.vertices().filter(|&x| side[x]).collect();
            let entering = d.degrees(&witness)?.entering;
            if entering + r.total_over(&witness) >= k {
                return Err(Error::InternalDefect(format!(
                    "min-cut side {witness:?} does not violate the root condition"
                )));
            }
            if best.as_ref().is_none_or(|b| witness.len() < b.len()) {
                best = Some(witness);
            }
        }
    }
    Ok(match best {
        Some(witness) => RootCheck::Violated { witness },
        None => RootCheck::Feasible,
    })
}

/// `k` arc-disjoint out-branchings, vertex `v` rooting exactly `r(v)` of them.
pub fn pack_out_branchings(d: &Digraph, r: &RootVector) -> Result<BranchingSet> {
    if let RootCheck::Violated { witness } = check_root_vector(d, r)? {
        return Err(Error::RootVectorViolation { witness });
    }
    let n = d.vertex_count();
    let m = d.arc_count();
    let k = r.k();
    // Super-root arcs get ids m.. in vertex order.
    let mut root_arc_heads = Vec::with_capacity(k);
    for v in d.vertices() {
        root_arc_heads.extend(std::iter::repeat_n(v, r.count(v)));
    }
    let total_arcs = m + k;
    let tail_of = |a: ArcId| if a < m { Some(d.arc(a).tail) } else { None };
    let head_of = |a: ArcId| {
        if a < m {
            d.arc(a).head
        } else {
            root_arc_heads[a - m]
        }
    };

    let mut used = vec![false; total_arcs];
    let mut result = BranchingSet {
        branchings: Vec::with_capacity(k),
        roots: Vec::with_capacity(k),
    };
    for built in 0..k {
        let remaining = (k - built - 1) as u32;
        let mut covered = vec![false; n];
        let mut chosen: Vec<ArcId> = Vec::with_capacity(n);
        let mut covered_count = 0;
        while covered_count < n {
            let mut admitted = None;
            for a in 0..total_arcs {
                if used[a] {
                    continue;
                }
                let tail_ok = tail_of(a).is_none_or(|t| covered[t]);
                let y = head_of(a);
                if !tail_ok || covered[y] {
                    continue;
                }
                // Only cuts containing `y` lose an arc, so the flow to `y`
                // decides admissibility.
                used[a] = true;
                let ok = remaining == 0 || flow_to(d, &used, &root_arc_heads, y, remaining);
                if ok {
                    admitted = Some(a);
                    break;
                }
                used[a] = false;
            }
            let a = admitted.ok_or_else(|| {
                Error::InternalDefect("no admissible arc while growing an arborescence".into())
            })?;
            chosen.push(a);
            covered[head_of(a)] = true;
            covered_count += 1;
        }
        let root_arcs: Vec<ArcId> = chosen.iter().copied().filter(|&a| a >= m).collect();
        if root_arcs.len() != 1 {
            return Err(Error::InternalDefect(format!(
                "arborescence {built} uses {} super-root arcs",
                root_arcs.len()
            )));
        }
        result.roots.push(head_of(root_arcs[0]));
        result
            .branchings
            .push(chosen.into_iter().filter(|&a| a < m).collect());
    }
    Ok(result)
}

fn flow_to(
    d: &Digraph,
    used: &[bool],
    root_arc_heads: &[VertexId],
    y: VertexId,
    need: u32,
) -> bool {
    let m = d.arc_count();
    let mut net = FlowNetwork::new(d.vertex_count());
    for (id, arc) in d.arcs().iter().enumerate() {
        if !used[id] {
            net.add_arc(arc.tail, arc.head, 1);
        }
    }
    let root = net.add_node();
    for (i, &v) in root_arc_heads.iter().enumerate() {
        if !used[m + i] {
            net.add_arc(root, v, 1);
        }
    }
    net.max_flow(root, y, need) >= need
}

/// `k` arc-disjoint in-branchings, vertex `v` the sink of exactly `r(v)`.
/// A violation witness refers to the reversed digraph.
pub fn pack_in_branchings(d: &Digraph, r: &RootVector) -> Result<BranchingSet> {
    pack_out_branchings(&d.reverse(), r)
}

/// Every branching is an out-branching of `d` at its listed root and the
/// branchings are pairwise arc-disjoint.
pub fn verify_branching_set(d: &Digraph, set: &BranchingSet) -> bool {
    if set.branchings.len() != set.roots.len() {
        return false;
    }
    let mut seen = vec![false; d.arc_count()];
    for (b, &root) in set.branchings.iter().zip(&set.roots) {
        if !is_out_branching(d, b.ids(), root) {
            return false;
        }
        for a in b.iter() {
            if seen[a] {
                return false;
            }
            seen[a] = true;
        }
    }
    true
}

/// As [`verify_branching_set`] for in-branchings.
pub fn verify_in_branching_set(d: &Digraph, set: &BranchingSet) -> bool {
    verify_branching_set(&d.reverse(), set)
}

/// Root multiset of `set` equals the one encoded by `r`.
pub fn roots_match(set: &BranchingSet, r: &RootVector) -> bool {
    set.sorted_roots() == r.roots()
}

/// `arcs` is a spanning out-branching of `d` rooted at `root`.
pub fn is_out_branching(d: &Digraph, arcs: &[ArcId], root: VertexId) -> bool {
    let n = d.vertex_count();
    if root >= n || arcs.len() + 1 != n || arcs.iter().any(|&a| a >= d.arc_count()) {
        return false;
    }
    let mut parent_arc = vec![None; n];
    for &a in arcs {
        let head = d.arc(a).head;
        if head == root || parent_arc[head].is_some() {
            return false;
        }
        parent_arc[head] = Some(a);
    }
    // n-1 distinct heads, none the root: every other vertex has one parent.
    // Acyclic iff every vertex walks up to the root.
    let mut state = vec![0u8; n];
    state[root] = 2;
    for start in 0..n {
        let mut path = Vec::new();
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = d.arc(parent_arc[v].expect("non-root has a parent")).tail;
        }
        if state[v] == 1 {
            return false;
        }
        for u in path {
            state[u] = 2;
        }
    }
    true
}
