//! Versioned JSON payloads for every yes/no answer, and their verifiers.

use serde::{Deserialize, Serialize};

use crate::branchings::{is_out_branching, BranchingSet, RootVector};
use crate::digraph::{ArcId, ArcSet, Digraph, Partition, VertexId};
use crate::error::{Error, Result};
use crate::mixed::{MixedSolution, PipelineTrace};
use crate::oracle::{Answer, Counterexample, HamMode, InOutPair, OracleBudget, Query, Requirement};
use crate::reductions::gadget::is_hamiltonian_path;
use crate::reductions::Cnf;
use crate::trees::{is_spanning_tree, tutte_deficiency, PartitionCertificate, TreePacking};

pub const SCHEMA: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Out,
    In,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub missing_arcs: Vec<ArcId>,
    pub root_vector: Vec<usize>,
}

impl From<&PipelineTrace> for Trace {
    fn from(t: &PipelineTrace) -> Self {
        Trace {
            missing_arcs: t.missing_arcs.clone(),
            root_vector: t.root_vector.counts().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Trees {
        trees: Vec<ArcSet>,
    },
    Tutte {
        blocks: Vec<Vec<VertexId>>,
        k: usize,
        deficiency: i64,
    },
    Branchings {
        #[serde(default = "out")]
        orientation: Orientation,
        roots: Vec<VertexId>,
        branchings: Vec<ArcSet>,
    },
    RootvectorViolation {
        #[serde(default = "out")]
        orientation: Orientation,
        #[serde(rename = "X")]
        x: Vec<VertexId>,
        r: Vec<usize>,
        k: usize,
    },
    Equivalence {
        roots: Vec<VertexId>,
        branchings: Vec<ArcSet>,
        #[serde(rename = "pipeline-trace")]
        pipeline_trace: Trace,
    },
    Mixed {
        roots: Vec<VertexId>,
        branchings: Vec<ArcSet>,
        trees: Vec<ArcSet>,
        l: usize,
        k: usize,
        #[serde(rename = "pipeline-trace")]
        pipeline_trace: Trace,
    },
    HamPair {
        mode: HamMode,
        pair: [ArcSet; 2],
    },
    InoutPair {
        out_root: VertexId,
        out_branching: ArcSet,
        in_root: VertexId,
        in_branching: ArcSet,
    },
    RemainderPath {
        requirement: Requirement,
        s: VertexId,
        t: VertexId,
        path: Vec<ArcId>,
    },
    Assignment {
        values: Vec<bool>,
    },
    Counterexample {
        vertices: usize,
        arcs: Vec<(VertexId, VertexId)>,
        branching_root: VertexId,
        branching: ArcSet,
    },
    /// A search that found nothing (or, for partition and subset scans,
    /// found no violation); verified by running it again.
    Exhausted {
        query: Query,
    },
}

fn out() -> Orientation {
    Orientation::Out
}

/// A certificate with its schema version.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: String,
    #[serde(flatten)]
    pub certificate: Certificate,
}

impl Envelope {
    pub fn new(certificate: Certificate) -> Self {
        Envelope {
            schema: SCHEMA.into(),
            certificate,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    /// Parses and checks the schema version; unknown kinds are errors.
    pub fn from_json(text: &str) -> Result<Self> {
        let env: Envelope = serde_json::from_str(text)?;
        if env.schema != SCHEMA {
            return Err(Error::InvalidArgument(format!(
                "unsupported schema {:?}",
                env.schema
            )));
        }
        Ok(env)
    }
}

impl From<&TreePacking> for Certificate {
    fn from(p: &TreePacking) -> Self {
        Certificate::Trees {
            trees: p.trees.clone(),
        }
    }
}

impl From<&PartitionCertificate> for Certificate {
    fn from(c: &PartitionCertificate) -> Self {
        Certificate::Tutte {
            blocks: c.partition.blocks().to_vec(),
            k: c.k,
            deficiency: c.deficiency,
        }
    }
}

impl Certificate {
    pub fn branchings(set: &BranchingSet, orientation: Orientation) -> Self {
        Certificate::Branchings {
            orientation,
            roots: set.roots.clone(),
            branchings: set.branchings.clone(),
        }
    }

    /// For `Orientation::In` the set refers to the reversed digraph.
    pub fn violation(x: Vec<VertexId>, r: &RootVector, orientation: Orientation) -> Self {
        Certificate::RootvectorViolation {
            orientation,
            x,
            r: r.counts().to_vec(),
            k: r.k(),
        }
    }

    pub fn equivalence(set: &BranchingSet, trace: &PipelineTrace) -> Self {
        Certificate::Equivalence {
            roots: set.roots.clone(),
            branchings: set.branchings.clone(),
            pipeline_trace: trace.into(),
        }
    }

    pub fn mixed(s: &MixedSolution) -> Self {
        Certificate::Mixed {
            roots: s.out_branchings.roots.clone(),
            branchings: s.out_branchings.branchings.clone(),
            trees: s.trees.clone(),
            l: s.l,
            k: s.k,
            pipeline_trace: (&s.trace).into(),
        }
    }

    pub fn inout(p: &InOutPair) -> Self {
        Certificate::InoutPair {
            out_root: p.out_root,
            out_branching: p.out_branching.clone(),
            in_root: p.in_root,
            in_branching: p.in_branching.clone(),
        }
    }

    pub fn counterexample(c: &Counterexample) -> Self {
        Certificate::Counterexample {
            vertices: c.digraph.vertex_count(),
            arcs: c.digraph.arcs().iter().map(|a| (a.tail, a.head)).collect(),
            branching_root: c.branching_root,
            branching: c.branching.clone(),
        }
    }
}

/// The object a certificate is checked against.
pub enum Subject<'a> {
    Digraph(&'a Digraph),
    Formula(&'a Cnf),
    Standalone,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn pairwise_disjoint<'a>(d: &Digraph, sets: impl IntoIterator<Item = &'a ArcSet>) -> Result<()> {
    let mut seen = vec![false; d.arc_count()];
    for set in sets {
        set.check_against(d)?;
        for a in set.iter() {
            if std::mem::replace(&mut seen[a], true) {
                return Err(invalid(format!("arc {a} is used twice")));
            }
        }
    }
    Ok(())
}

fn check_branchings(
    d: &Digraph,
    roots: &[VertexId],
    branchings: &[ArcSet],
    orientation: Orientation,
) -> Result<()> {
    if roots.len() != branchings.len() {
        return Err(invalid("roots and branchings differ in number"));
    }
    pairwise_disjoint(d, branchings)?;
    let view = match orientation {
        Orientation::Out => d.clone(),
        Orientation::In => d.reverse(),
    };
    for (i, (b, &r)) in branchings.iter().zip(roots).enumerate() {
        if !is_out_branching(&view, b.ids(), r) {
            return Err(invalid(format!("branching {i} is not rooted at {r}")));
        }
    }
    Ok(())
}

fn check_trace(d: &Digraph, used: &[&ArcSet], trace: &Trace) -> Result<()> {
    let mut in_use = vec![false; d.arc_count()];
    for a in used.iter().flat_map(|s| s.iter()) {
        in_use[a] = true;
    }
    let missing: Vec<ArcId> = (0..d.arc_count()).filter(|&a| !in_use[a]).collect();
    if missing != trace.missing_arcs {
        return Err(invalid("pipeline trace lists the wrong missing arcs"));
    }
    let mut counts = vec![0; d.vertex_count()];
    for &a in &missing {
        counts[d.arc(a).head] += 1;
    }
    if counts != trace.root_vector {
        return Err(invalid(
            "pipeline trace root vector does not match the missing arcs",
        ));
    }
    Ok(())
}

fn digraph<'a>(subject: &Subject<'a>) -> Result<&'a Digraph> {
    match subject {
        Subject::Digraph(d) => Ok(d),
        _ => Err(invalid(
            "this certificate kind is checked against a digraph",
        )),
    }
}

/// Re-checks every claim of the certificate. Errors name the violated
/// invariant.
pub fn verify(cert: &Certificate, subject: &Subject) -> Result<()> {
    match cert {
        Certificate::Trees { trees } => {
            let d = digraph(subject)?;
            pairwise_disjoint(d, trees)?;
            for (i, t) in trees.iter().enumerate() {
                if !is_spanning_tree(d, t.ids()) {
                    return Err(invalid(format!("tree {i} is not a spanning tree")));
                }
            }
            Ok(())
        }
        Certificate::Tutte {
            blocks,
            k,
            deficiency,
        } => {
            let d = digraph(subject)?;
            let p = Partition::new(d, blocks.clone())?;
            let actual = tutte_deficiency(d, &p, *k)?;
            if actual != *deficiency {
                return Err(invalid(format!(
                    "deficiency is {actual}, certificate says {deficiency}"
                )));
            }
            if actual < 1 {
                return Err(invalid(format!(
                    "deficiency {actual} does not witness infeasibility"
                )));
            }
            Ok(())
        }
        Certificate::Branchings {
            orientation,
            roots,
            branchings,
        } => check_branchings(digraph(subject)?, roots, branchings, *orientation),
        Certificate::RootvectorViolation {
            orientation,
            x,
            r,
            k,
        } => {
            let d = &match orientation {
                Orientation::Out => digraph(subject)?.clone(),
                Orientation::In => digraph(subject)?.reverse(),
            };
            let r = RootVector::new(r.clone(), *k)?;
            if r.counts().len() != d.vertex_count() {
                return Err(invalid("root vector length differs from the vertex count"));
            }
            if x.is_empty() {
                return Err(invalid("violating set is empty"));
            }
            let entering = d.degrees(x)?.entering;
            if entering + r.total_over(x) >= *k {
                return Err(invalid(format!(
                    "set has {entering} entering arcs, enough for k - r(X)"
                )));
            }
            Ok(())
        }
        Certificate::Equivalence {
            roots,
            branchings,
            pipeline_trace,
        } => {
            let d = digraph(subject)?;
            let k = d.regular_degree()?;
            if branchings.len() != k {
                return Err(invalid(format!(
                    "{} branchings for a {k}-regular digraph",
                    branchings.len()
                )));
            }
            check_branchings(d, roots, branchings, Orientation::Out)?;
            check_roots(d, roots, pipeline_trace)
        }
        Certificate::Mixed {
            roots,
            branchings,
            trees,
            l,
            k,
            pipeline_trace,
        } => {
            let d = digraph(subject)?;
            if d.regular_degree()? != *k
                || branchings.len() != *l
                || branchings.len() + trees.len() != *k
            {
                return Err(invalid("structure counts do not match l and k"));
            }
            check_branchings(d, roots, branchings, Orientation::Out)?;
            pairwise_disjoint(d, branchings.iter().chain(trees))?;
            for (i, t) in trees.iter().enumerate() {
                if !is_spanning_tree(d, t.ids()) {
                    return Err(invalid(format!("tree {i} is not a spanning tree")));
                }
            }
            let used: Vec<&ArcSet> = branchings.iter().chain(trees).collect();
            check_trace(d, &used, pipeline_trace)
        }
        Certificate::HamPair { mode, pair } => {
            let d = digraph(subject)?;
            pairwise_disjoint(d, pair.iter())?;
            for (i, p) in pair.iter().enumerate() {
                let ok = match mode {
                    HamMode::Cycles => is_hamiltonian_cycle(d, p.ids()),
                    HamMode::Paths => path_ends(d, p.ids())
                        .is_some_and(|(u, v)| is_hamiltonian_path(d, p.ids(), u, v)),
                };
                if !ok {
                    return Err(invalid(format!("member {i} is not Hamiltonian")));
                }
            }
            Ok(())
        }
        Certificate::InoutPair {
            out_root,
            out_branching,
            in_root,
            in_branching,
        } => {
            let d = digraph(subject)?;
            pairwise_disjoint(d, [out_branching, in_branching])?;
            if !is_out_branching(d, out_branching.ids(), *out_root) {
                return Err(invalid("out-branching is invalid"));
            }
            if !is_out_branching(&d.reverse(), in_branching.ids(), *in_root) {
                return Err(invalid("in-branching is invalid"));
            }
            Ok(())
        }
        Certificate::RemainderPath {
            requirement,
            s,
            t,
            path,
        } => {
            let d = digraph(subject)?;
            d.check_vertex(*s)?;
            d.check_vertex(*t)?;
            let set = ArcSet::new(path.clone())?;
            set.check_against(d)?;
            let mut v = *s;
            let mut visited = vec![false; d.vertex_count()];
            visited[v] = true;
            for &a in path {
                let arc = d.arc(a);
                if arc.tail != v || std::mem::replace(&mut visited[arc.head], true) {
                    return Err(invalid(format!("arc {a} breaks the simple path")));
                }
                v = arc.head;
            }
            if v != *t {
                return Err(invalid("path does not end at t"));
            }
            if !requirement.holds(d, &set.mask(d.arc_count()), *s) {
                return Err(invalid(format!("remainder fails {requirement:?}")));
            }
            Ok(())
        }
        Certificate::Assignment { values } => match subject {
            Subject::Formula(f) => {
                if values.len() != f.variable_count() || !f.evaluate(values) {
                    Err(invalid("assignment does not satisfy the formula"))
                } else {
                    Ok(())
                }
            }
            _ => Err(invalid(
                "assignment certificates are checked against a formula",
            )),
        },
        Certificate::Exhausted { query } => {
            let again = query.run(subject, &OracleBudget::default(), 1)?;
            let settled = match query {
                // for these scans "no violation" is the positive answer
                Query::Trees { .. } | Query::RootVector { .. } => matches!(again, Answer::Yes(_)),
                _ => matches!(again, Answer::No(_)),
            };
            if settled {
                Ok(())
            } else {
                Err(invalid("re-running the search gives a different answer"))
            }
        }
        Certificate::Counterexample {
            vertices,
            arcs,
            branching_root,
            branching,
        } => {
            let d = Digraph::new(*vertices, arcs)?;
            if !d.is_eulerian_balanced() {
                return Err(invalid("digraph is not Eulerian"));
            }
            if !is_out_branching(&d, branching.ids(), *branching_root) {
                return Err(invalid("branching is invalid"));
            }
            if !d.is_weakly_connected_without(&branching.mask(d.arc_count())) {
                return Err(invalid("remainder is disconnected"));
            }
            if crate::oracle::oracle_free_out_branchings(&d, 2, &OracleBudget::default())?.is_some()
            {
                return Err(invalid("two arc-disjoint out-branchings exist"));
            }
            Ok(())
        }
    }
}

fn check_roots(d: &Digraph, roots: &[VertexId], trace: &Trace) -> Result<()> {
    let mut counts = vec![0; d.vertex_count()];
    for &r in roots {
        counts[r] += 1;
    }
    if counts != trace.root_vector {
        return Err(invalid("roots differ from the pipeline root vector"));
    }
    if trace.missing_arcs.len() != d.regular_degree()? {
        return Err(invalid(
            "pipeline trace has the wrong number of missing arcs",
        ));
    }
    let mut heads = vec![0; d.vertex_count()];
    for &a in &trace.missing_arcs {
        d.check_arc(a)?;
        heads[d.arc(a).head] += 1;
    }
    if heads != trace.root_vector {
        return Err(invalid(
            "pipeline root vector does not match the missing arcs",
        ));
    }
    Ok(())
}

fn path_ends(d: &Digraph, arcs: &[ArcId]) -> Option<(VertexId, VertexId)> {
    let n = d.vertex_count();
    let mut indeg = vec![0; n];
    let mut outdeg = vec![0; n];
    for &a in arcs {
        let arc = d.arc(a);
        outdeg[arc.tail] += 1;
        indeg[arc.head] += 1;
    }
    let start = (0..n).find(|&v| indeg[v] == 0)?;
    let end = (0..n).find(|&v| outdeg[v] == 0)?;
    Some((start, end))
}

fn is_hamiltonian_cycle(d: &Digraph, arcs: &[ArcId]) -> bool {
    let n = d.vertex_count();
    if n < 2 || arcs.len() != n {
        return false;
    }
    let mut next = vec![None; n];
    for &a in arcs {
        let arc = d.arc(a);
        if next[arc.tail].replace(arc.head).is_some() {
            return false;
        }
    }
    // n arcs with distinct tails: back at 0 after n steps iff one cycle
    let mut count = 0;
    let mut v = 0;
    loop {
        let Some(w) = next[v] else {
            return false;
        };
        v = w;
        count += 1;
        if v == 0 || count > n {
            break;
        }
    }
    v == 0 && count == n
}
