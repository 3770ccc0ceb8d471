//! Edge-disjoint spanning trees in the underlying multigraph.
//!
//! The packing is grown as a matroid union of `k` graphic matroids: arcs are
//! offered in id order and each one is inserted along a shortest augmenting
//! path in the exchange graph (Edmonds' matroid partition). When the union
//! cannot reach `k(n-1)` arcs, the elements reachable from the unplaced arcs
//! span the same vertex components in every forest; those components form a
//! partition crossed by fewer than `k(t-1)` arcs.

use std::collections::VecDeque;

use crate::digraph::{ArcId, ArcSet, Digraph, Partition, VertexId};
use crate::enumerate::SetPartitions;
use crate::error::{Error, Result};

/// `k` pairwise disjoint spanning trees of the underlying multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePacking {
    pub trees: Vec<ArcSet>,
}

impl TreePacking {
    pub fn k(&self) -> usize {
        self.trees.len()
    }

    /// Arcs of `d` not used by any tree.
    pub fn unused_arcs(&self, d: &Digraph) -> Vec<ArcId> {
        let mut used = vec![false; d.arc_count()];
        for a in self.trees.iter().flat_map(ArcSet::iter) {
            used[a] = true;
        }
        (0..d.arc_count()).filter(|&a| !used[a]).collect()
    }
}

/// A partition violating the tree-packing condition for `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCertificate {
    pub partition: Partition,
    pub k: usize,
    pub deficiency: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreePackingOutcome {
    Packed(TreePacking),
    Infeasible(PartitionCertificate),
}

impl TreePackingOutcome {
    pub fn is_packed(&self) -> bool {
        matches!(self, TreePackingOutcome::Packed(_))
    }
}

/// `k(t-1) - e_F`; positive values witness infeasibility.
pub fn tutte_deficiency(d: &Digraph, partition: &Partition, k: usize) -> Result<i64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    // Re-validate against `d`: the partition may have been built for another digraph.
    let p = Partition::new(d, partition.blocks().to_vec())?;
    let t = p.block_count() as i64;
    Ok(k as i64 * (t - 1) - p.crossing_arcs() as i64)
}

/// Packs `k` edge-disjoint spanning trees or certifies that none exist.
pub fn pack_spanning_trees(d: &Digraph, k: usize) -> Result<TreePackingOutcome> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if d.vertex_count() == 0 {
        return Err(Error::InvalidArgument("digraph has no vertices".into()));
    }
    let mut union = ForestUnion::new(d, k);
    let target = k * (d.vertex_count() - 1);
    for e in 0..d.arc_count() {
        if union.size == target {
            break;
        }
        union.insert(e);
    }
    if union.size == target {
        return Ok(TreePackingOutcome::Packed(union.into_packing()));
    }
    let certificate = union.certificate()?;
    Ok(TreePackingOutcome::Infeasible(certificate))
}

/// Checks every packing invariant against `d`. Out-of-range ids are errors.
pub fn verify_tree_packing(d: &Digraph, packing: &TreePacking) -> Result<bool> {
    for tree in &packing.trees {
        tree.check_against(d)?;
    }
    let n = d.vertex_count();
    let mut seen = vec![false; d.arc_count()];
    for tree in &packing.trees {
        if !is_spanning_tree(d, tree.ids()) {
            return Ok(false);
        }
        for a in tree.iter() {
            if seen[a] {
                return Ok(false);
            }
            seen[a] = true;
        }
    }
    Ok(n > 0)
}

/// `arcs` (as undirected edges) forms a spanning tree of `d`. Ids must be
/// in range.
pub fn is_spanning_tree(d: &Digraph, arcs: &[ArcId]) -> bool {
    let n = d.vertex_count();
    if n == 0 || arcs.len() != n - 1 {
        return false;
    }
    let mut dsu = Dsu::new(n);
    arcs.iter().all(|&a| {
        let arc = d.arc(a);
        dsu.union(arc.tail, arc.head)
    })
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Rooted view of one forest for component and path queries.
struct ForestIndex {
    component: Vec<usize>,
    parent_arc: Vec<Option<ArcId>>,
    parent: Vec<VertexId>,
    depth: Vec<usize>,
}

impl ForestIndex {
    fn build(d: &Digraph, owner: &[Option<usize>], forest: usize) -> Self {
        let n = d.vertex_count();
        let mut adj: Vec<Vec<(ArcId, VertexId)>> = vec![Vec::new(); n];
        for (a, o) in owner.iter().enumerate() {
            if *o == Some(forest) {
                let arc = d.arc(a);
                adj[arc.tail].push((a, arc.head));
                adj[arc.head].push((a, arc.tail));
            }
        }
        let mut index = Self {
            component: vec![usize::MAX; n],
            parent_arc: vec![None; n],
            parent: (0..n).collect(),
            depth: vec![0; n],
        };
        for root in 0..n {
            if index.component[root] != usize::MAX {
                continue;
            }
            index.component[root] = root;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &(a, w) in &adj[v] {
                    if index.component[w] == usize::MAX {
                        index.component[w] = root;
                        index.parent[w] = v;
                        index.parent_arc[w] = Some(a);
                        index.depth[w] = index.depth[v] + 1;
                        stack.push(w);
                    }
                }
            }
        }
        index
    }

    fn connected(&self, u: VertexId, v: VertexId) -> bool {
        self.component[u] == self.component[v]
    }

    /// Arcs on the forest path between `u` and `v` (same component).
    fn path(&self, mut u: VertexId, mut v: VertexId) -> Vec<ArcId> {
        let mut arcs = Vec::new();
        while self.depth[u] > self.depth[v] {
            arcs.extend(self.parent_arc[u]);
            u = self.parent[u];
        }
        while self.depth[v] > self.depth[u] {
            arcs.extend(self.parent_arc[v]);
            v = self.parent[v];
        }
        while u != v {
            arcs.extend(self.parent_arc[u]);
            arcs.extend(self.parent_arc[v]);
            u = self.parent[u];
            v = self.parent[v];
        }
        arcs.sort_unstable();
        arcs
    }
}

struct ForestUnion<'a> {
    d: &'a Digraph,
    k: usize,
    owner: Vec<Option<usize>>,
    size: usize,
}

enum Search {
    Augment {
        last: ArcId,
        forest: usize,
        pred: Vec<Option<ArcId>>,
    },
    Stuck {
        reached: Vec<bool>,
    },
}

impl<'a> ForestUnion<'a> {
    fn new(d: &'a Digraph, k: usize) -> Self {
        Self {
            d,
            k,
            owner: vec![None; d.arc_count()],
            size: 0,
        }
    }

    fn indexes(&self) -> Vec<ForestIndex> {
        (0..self.k)
            .map(|i| ForestIndex::build(self.d, &self.owner, i))
            .collect()
    }

    /// Breadth-first search in the exchange graph from `sources`. Forests are
    /// tried in index order and cycle elements in id order.
    fn search(&self, sources: &[ArcId]) -> Search {
        let indexes = self.indexes();
        let mut pred = vec![None; self.d.arc_count()];
        let mut reached = vec![false; self.d.arc_count()];
        let mut queue = VecDeque::new();
        for &s in sources {
            reached[s] = true;
            queue.push_back(s);
        }
        while let Some(x) = queue.pop_front() {
            let arc = self.d.arc(x);
            for (i, index) in indexes.iter().enumerate() {
                if self.owner[x] == Some(i) {
                    continue;
                }
                if !index.connected(arc.tail, arc.head) {
                    return Search::Augment {
                        last: x,
                        forest: i,
                        pred,
                    };
                }
                for y in index.path(arc.tail, arc.head) {
                    if !reached[y] {
                        reached[y] = true;
                        pred[y] = Some(x);
                        queue.push_back(y);
                    }
                }
            }
        }
        Search::Stuck { reached }
    }

    fn insert(&mut self, e: ArcId) -> bool {
        match self.search(&[e]) {
            Search::Augment { last, forest, pred } => {
                let mut current = last;
                let mut target = forest;
                loop {
                    let previous_owner = self.owner[current];
                    self.owner[current] = Some(target);
                    match pred[current] {
                        Some(p) => {
                            target = previous_owner.expect("exchanged element was owned");
                            current = p;
                        }
                        None => break,
                    }
                }
                self.size += 1;
                true
            }
            Search::Stuck { .. } => false,
        }
    }

    fn into_packing(self) -> TreePacking {
        let mut trees = vec![Vec::new(); self.k];
        for (a, o) in self.owner.iter().enumerate() {
            if let Some(i) = o {
                trees[*i].push(a);
            }
        }
        TreePacking {
            trees: trees.into_iter().map(ArcSet::from_sorted).collect(),
        }
    }

    fn certificate(&self) -> Result<PartitionCertificate> {
        let unplaced: Vec<ArcId> = (0..self.d.arc_count())
            .filter(|&a| self.owner[a].is_none())
            .collect();
        let candidate = match self.search(&unplaced) {
            Search::Stuck { reached } => {
                let mut dsu = Dsu::new(self.d.vertex_count());
                for (a, r) in reached.iter().enumerate() {
                    if *r {
                        let arc = self.d.arc(a);
                        dsu.union(arc.tail, arc.head);
                    }
                }
                let labels: Vec<usize> = self.d.vertices().map(|v| dsu.find(v)).collect();
                Some(Partition::from_labels(self.d, &labels)?)
            }
            Search::Augment { .. } => None,
        };
        if let Some(partition) = candidate {
            let deficiency = tutte_deficiency(self.d, &partition, self.k)?;
            if deficiency >= 1 {
                return Ok(PartitionCertificate {
                    partition,
                    k: self.k,
                    deficiency,
                });
            }
        }
        exhaustive_certificate(self.d, self.k)
    }
}

/// Scans every partition for one with positive deficiency. Only used when
/// the exchange-graph certificate fails its own check.
fn exhaustive_certificate(d: &Digraph, k: usize) -> Result<PartitionCertificate> {
    const LIMIT: usize = 10;
    if d.vertex_count() > LIMIT {
        return Err(Error::InternalDefect(
            "exchange-graph certificate failed its deficiency check".into(),
        ));
    }
    for labels in SetPartitions::new(d.vertex_count()) {
        let partition = Partition::from_labels(d, &labels)?;
        let deficiency = tutte_deficiency(d, &partition, k)?;
        if deficiency >= 1 {
            return Ok(PartitionCertificate {
                partition,
                k,
                deficiency,
            });
        }
    }
    Err(Error::InternalDefect(
        "tree packing failed but no deficient partition exists".into(),
    ))
}
