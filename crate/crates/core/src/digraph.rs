//! Loopless directed multigraphs with stable arc identities.
//!
//! Every arc keeps the id it was created with (its position in the input
//! list), so parallel copies stay distinguishable and every substructure in
//! this crate (paths, trees, branchings) is an [`ArcSet`] over those ids.
//! Undirected algorithms read an arc as an edge carrying the same id; the
//! underlying graph is never materialized separately.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{ArcDefect, Error, Result};
use crate::flow::FlowNetwork;

pub type VertexId = usize;
pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
}

/// Immutable loopless directed multigraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertex_count: usize,
    arcs: Vec<Arc>,
    labels: Option<Vec<String>>,
    out_arcs: Vec<Vec<ArcId>>,
    in_arcs: Vec<Vec<ArcId>>,
}

impl Digraph {
    /// Builds a digraph whose arc ids follow the order of `arc_list`.
    pub fn new(vertex_count: usize, arc_list: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut arcs = Vec::with_capacity(arc_list.len());
        for (index, &(tail, head)) in arc_list.iter().enumerate() {
            if tail >= vertex_count || head >= vertex_count {
                return Err(Error::InvalidArc {
                    index,
                    reason: ArcDefect::EndpointOutOfRange,
                });
            }
            if tail == head {
                return Err(Error::InvalidArc {
                    index,
                    reason: ArcDefect::SelfLoop,
                });
            }
            arcs.push(Arc { tail, head });
        }
        Ok(Self::from_valid_arcs(vertex_count, arcs))
    }

    fn from_valid_arcs(vertex_count: usize, arcs: Vec<Arc>) -> Self {
        let mut out_arcs = vec![Vec::new(); vertex_count];
        let mut in_arcs = vec![Vec::new(); vertex_count];
        for (id, arc) in arcs.iter().enumerate() {
            out_arcs[arc.tail].push(id);
            in_arcs[arc.head].push(id);
        }
        Self {
            vertex_count,
            arcs,
            labels: None,
            out_arcs,
            in_arcs,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::InvalidArgument(format!(
                "expected {} labels, got {}",
                self.vertex_count,
                labels.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> Arc {
        self.arcs[id]
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_count
    }

    /// Ids of arcs leaving `v`, in increasing order.
    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out_arcs[v]
    }

    /// Ids of arcs entering `v`, in increasing order.
    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.in_arcs[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_arcs[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_arcs[v].len()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            })
        }
    }

    pub fn check_arc(&self, a: ArcId) -> Result<()> {
        if a < self.arcs.len() {
            Ok(())
        } else {
            Err(Error::ArcOutOfRange {
                arc: a,
                arc_count: self.arcs.len(),
            })
        }
    }

    /// Arc counts for the cut around `set`.
    pub fn degrees(&self, set: &[VertexId]) -> Result<CutDegrees> {
        if set.is_empty() {
            return Err(Error::InvalidArgument(
                "vertex set must be non-empty".into(),
            ));
        }
        let member = self.membership(set)?;
        let mut cut = CutDegrees::default();
        for arc in &self.arcs {
            match (member[arc.tail], member[arc.head]) {
                (true, true) => cut.inside += 1,
                (false, true) => cut.entering += 1,
                (true, false) => cut.leaving += 1,
                (false, false) => {}
            }
        }
        Ok(cut)
    }

    pub(crate) fn membership(&self, set: &[VertexId]) -> Result<Vec<bool>> {
        let mut member = vec![false; self.vertex_count];
        for &v in set {
            self.check_vertex(v)?;
            member[v] = true;
        }
        Ok(member)
    }

    /// Every vertex has in-degree and out-degree exactly `k`.
    pub fn is_k_regular(&self, k: usize) -> bool {
        self.vertices()
            .all(|v| self.in_degree(v) == k && self.out_degree(v) == k)
    }

    /// The common degree when the digraph is regular, otherwise the first
    /// vertex that deviates from the degree of vertex 0.
    pub fn regular_degree(&self) -> Result<usize> {
        if self.vertex_count == 0 {
            return Err(Error::InvalidArgument("empty digraph".into()));
        }
        let k = self.out_degree(0);
        for v in self.vertices() {
            if self.in_degree(v) != k || self.out_degree(v) != k {
                return Err(Error::NotRegular {
                    vertex: v,
                    in_degree: self.in_degree(v),
                    out_degree: self.out_degree(v),
                    expected: k,
                });
            }
        }
        Ok(k)
    }

    pub fn is_eulerian_balanced(&self) -> bool {
        self.vertices()
            .all(|v| self.in_degree(v) == self.out_degree(v))
    }

    pub fn connectivity(&self) -> Connectivity {
        if self.vertex_count == 0 {
            return Connectivity {
                weak: true,
                strong: true,
            };
        }
        let all = vec![false; self.arcs.len()];
        Connectivity {
            weak: self.is_weakly_connected_without(&all),
            strong: self.reaches_all(0, &all, Direction::Forward)
                && self.reaches_all(0, &all, Direction::Backward),
        }
    }

    /// Weak connectivity of the digraph with the flagged arcs removed.
    pub fn is_weakly_connected_without(&self, removed: &[bool]) -> bool {
        self.weak_components_without(removed).1 <= 1
    }

    /// Component index per vertex (ignoring directions) and the component
    /// count, for the digraph with the flagged arcs removed.
    pub fn weak_components_without(&self, removed: &[bool]) -> (Vec<usize>, usize) {
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in self.vertices() {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                let out = self.out_arcs[v].iter().map(|&a| (a, self.arcs[a].head));
                let inn = self.in_arcs[v].iter().map(|&a| (a, self.arcs[a].tail));
                for (a, w) in out.chain(inn) {
                    if !removed[a] && comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    /// Vertices reachable from `root` along non-removed arcs in the given
    /// direction.
    pub fn reachable_without(
        &self,
        root: VertexId,
        removed: &[bool],
        direction: Direction,
    ) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            let arcs = match direction {
                Direction::Forward => &self.out_arcs[v],
                Direction::Backward => &self.in_arcs[v],
            };
            for &a in arcs {
                if removed[a] {
                    continue;
                }
                let w = match direction {
                    Direction::Forward => self.arcs[a].head,
                    Direction::Backward => self.arcs[a].tail,
                };
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn reaches_all(&self, root: VertexId, removed: &[bool], direction: Direction) -> bool {
        self.reachable_without(root, removed, direction)
            .into_iter()
            .all(|x| x)
    }

    /// Strong connectivity of the digraph with the flagged arcs removed.
    pub fn is_strongly_connected_without(&self, removed: &[bool]) -> bool {
        self.vertex_count == 0
            || (self.reaches_all(0, removed, Direction::Forward)
                && self.reaches_all(0, removed, Direction::Backward))
    }

    /// Decides whether every non-empty proper vertex subset has at least
    /// `k` leaving arcs. On failure the source side of a deficient minimum
    /// cut is returned.
    pub fn arc_strength(&self, k: usize) -> ArcStrength {
        if self.vertex_count < 2 || k == 0 {
            return ArcStrength::AtLeast;
        }
        let base = self.flow_network();
        let root = 0;
        for v in 1..self.vertex_count {
            for (s, t) in [(root, v), (v, root)] {
                let mut net = base.clone();
                let value = net.max_flow(s, t, k as u32);
                if (value as usize) < k {
                    let side = net.source_side(s);
                    let witness: Vec<VertexId> = self.vertices().filter(|&x| side[x]).collect();
                    return ArcStrength::Deficient { witness };
                }
            }
        }
        ArcStrength::AtLeast
    }

    pub fn is_k_arc_strong(&self, k: usize) -> bool {
        matches!(self.arc_strength(k), ArcStrength::AtLeast)
    }

    pub(crate) fn flow_network(&self) -> FlowNetwork {
        let mut net = FlowNetwork::new(self.vertex_count);
        for arc in &self.arcs {
            net.add_arc(arc.tail, arc.head, 1);
        }
        net
    }

    /// The digraph with every arc reversed; arc ids are unchanged.
    pub fn reverse(&self) -> Digraph {
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc {
                tail: a.head,
                head: a.tail,
            })
            .collect();
        let mut d = Self::from_valid_arcs(self.vertex_count, arcs);
        d.labels = self.labels.clone();
        d
    }

    /// Splits `v` into an in-part (keeps id `v`) and an out-part (new id
    /// `vertex_count`). Arc ids and order are unchanged and no arc joins the
    /// two parts.
    pub fn split_vertex(&self, v: VertexId) -> Result<SplitVertex> {
        self.check_vertex(v)?;
        let plus = self.vertex_count;
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc {
                tail: if a.tail == v { plus } else { a.tail },
                head: a.head,
            })
            .collect();
        let mut digraph = Self::from_valid_arcs(self.vertex_count + 1, arcs);
        if let Some(labels) = &self.labels {
            let mut labels = labels.clone();
            labels.push(format!("{}+", labels[v]));
            labels[v] = format!("{}-", labels[v]);
            digraph.labels = Some(labels);
        }
        Ok(SplitVertex {
            digraph,
            minus: v,
            plus,
        })
    }

    /// Merges `merged` into `kept`. Vertices above `merged` shift down by one;
    /// arc ids are unchanged.
    pub fn identify_vertices(&self, kept: VertexId, merged: VertexId) -> Result<Digraph> {
        self.check_vertex(kept)?;
        self.check_vertex(merged)?;
        if kept == merged {
            return Err(Error::InvalidArgument(
                "cannot identify a vertex with itself".into(),
            ));
        }
        let relabel = |x: VertexId| {
            let x = if x == merged { kept } else { x };
            if x > merged {
                x - 1
            } else {
                x
            }
        };
        let pairs: Vec<(VertexId, VertexId)> = self
            .arcs
            .iter()
            .map(|a| (relabel(a.tail), relabel(a.head)))
            .collect();
        Digraph::new(self.vertex_count - 1, &pairs)
    }

    /// Disjoint union; the vertices and arcs of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Digraph) -> Digraph {
        let shift = self.vertex_count;
        let arcs = self
            .arcs
            .iter()
            .copied()
            .chain(other.arcs.iter().map(|a| Arc {
                tail: a.tail + shift,
                head: a.head + shift,
            }))
            .collect();
        Self::from_valid_arcs(self.vertex_count + other.vertex_count, arcs)
    }

    /// Parses the line-oriented text format: `n m`, then `m` lines of
    /// `tail head`. Lines starting with `#` and blank lines are ignored.
    pub fn parse_text(text: &str) -> Result<Digraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing header `n m`".into(),
        })?;
        let (n, m) = parse_pair(header_line, header)?;
        let mut pairs = Vec::with_capacity(m);
        for (line, content) in lines {
            if pairs.len() == m {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the declared {m} arcs"),
                });
            }
            let (tail, head) = parse_pair(line, content)?;
            if tail >= n || head >= n || tail == head {
                let message = if tail == head {
                    "self-loop".to_string()
                } else {
                    format!("endpoint out of range for n = {n}")
                };
                return Err(Error::Parse { line, message });
            }
            pairs.push((tail, head));
        }
        if pairs.len() != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                message: format!("expected {m} arcs, found {}", pairs.len()),
            });
        }
        Digraph::new(n, &pairs)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count, self.arcs.len());
        for a in &self.arcs {
            let _ = writeln!(out, "{} {}", a.tail, a.head);
        }
        out
    }

    /// Graphviz rendering with arc ids as edge labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph D {\n");
        for v in self.vertices() {
            match self.label(v) {
                Some(l) => {
                    let _ = writeln!(out, "  {v} [label=\"{}\"];", l.replace('"', "\\\""));
                }
                None => {
                    let _ = writeln!(out, "  {v};");
                }
            }
        }
        for (id, a) in self.arcs.iter().enumerate() {
            let _ = writeln!(out, "  {} -> {} [label=\"{id}\"];", a.tail, a.head);
        }
        out.push_str("}\n");
        out
    }
}

fn parse_pair(line: usize, content: &str) -> Result<(usize, usize)> {
    let mut it = content.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse {
                line,
                message: format!("missing {what}"),
            })?
            .parse()
            .map_err(|e| Error::Parse {
                line,
                message: format!("bad {what}: {e}"),
            })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            message: "trailing fields".into(),
        });
    }
    Ok((a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CutDegrees {
    pub entering: usize,
    pub leaving: usize,
    pub inside: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Connectivity {
    pub weak: bool,
    pub strong: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArcStrength {
    AtLeast,
    /// A non-empty proper subset with too few leaving arcs.
    Deficient {
        witness: Vec<VertexId>,
    },
}

#[derive(Debug, Clone)]
pub struct SplitVertex {
    pub digraph: Digraph,
    pub minus: VertexId,
    pub plus: VertexId,
}

/// Sorted, duplicate-free set of arc ids.
#[derive(
    Debug,
    Clone,
    Default,
    PartialEq,
    Eq,
    Hash,
    PartialOrd,
    Ord,
    serde::Serialize,
    serde::Deserialize,
)]
#[serde(try_from = "Vec<ArcId>")]
pub struct ArcSet(Vec<ArcId>);

impl TryFrom<Vec<ArcId>> for ArcSet {
    type Error = Error;

    fn try_from(ids: Vec<ArcId>) -> Result<Self> {
        ArcSet::new(ids)
    }
}

impl ArcSet {
    /// Fails on duplicate ids.
    pub fn new(mut ids: Vec<ArcId>) -> Result<Self> {
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("arc {} listed twice", w[0])));
        }
        Ok(Self(ids))
    }

    pub(crate) fn from_sorted(ids: Vec<ArcId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        Self(ids)
    }

    pub fn ids(&self) -> &[ArcId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: ArcId) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = ArcId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_disjoint(&self, other: &ArcSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn check_against(&self, d: &Digraph) -> Result<()> {
        self.0.iter().try_for_each(|&a| d.check_arc(a))
    }

    /// Flag vector of length `arc_count`.
    pub fn mask(&self, arc_count: usize) -> Vec<bool> {
        let mut mask = vec![false; arc_count];
        for &a in &self.0 {
            mask[a] = true;
        }
        mask
    }
}

impl FromIterator<ArcId> for ArcSet {
    fn from_iter<I: IntoIterator<Item = ArcId>>(iter: I) -> Self {
        let mut ids: Vec<ArcId> = iter.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }
}

/// A partition of the vertex set with its crossing-arc count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<VertexId>>,
    crossing: usize,
}

impl Partition {
    pub fn new(d: &Digraph, blocks: Vec<Vec<VertexId>>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; d.vertex_count()];
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {i} is empty")));
            }
            for &v in block {
                d.check_vertex(v)
                    .map_err(|_| Error::InvalidPartition(format!("vertex {v} out of range")))?;
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {v} in two blocks")));
                }
                block_of[v] = i;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} not covered")));
        }
        if blocks.is_empty() {
            return Err(Error::InvalidPartition("no blocks".into()));
        }
        let crossing = d
            .arcs()
            .iter()
            .filter(|a| block_of[a.tail] != block_of[a.head])
            .count();
        Ok(Self { blocks, crossing })
    }

    /// Partition whose block of `v` is `labels[v]`; labels need not be dense.
    pub fn from_labels(d: &Digraph, labels: &[usize]) -> Result<Self> {
        let mut index = std::collections::BTreeMap::new();
        let mut blocks: Vec<Vec<VertexId>> = Vec::new();
        for (v, &l) in labels.iter().enumerate() {
            let b = *index.entry(l).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(v);
        }
        Self::new(d, blocks)
    }

    pub fn blocks(&self) -> &[Vec<VertexId>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn crossing_arcs(&self) -> usize {
        self.crossing
    }
}
