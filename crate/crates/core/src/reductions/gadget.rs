//! The Cycle Breaker gadget: a small digraph with a source port `s` and a
//! sink port `t` that has spanning `(s, t)`-paths, but removing the arcs of
//! any of them strands part of the gadget away from both ports.

use serde::Serialize;

use crate::digraph::{ArcId, ArcSet, Digraph, VertexId};
use crate::enumerate::hamiltonian_paths_between;
use crate::error::{Error, Result};

/// Largest gadget the exhaustive checks accept.
pub const MAX_GADGET_VERTICES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Ports {
    pub s: VertexId,
    pub t: VertexId,
    pub b: VertexId,
    pub c: VertexId,
    pub d: VertexId,
    pub e: VertexId,
}

/// A gadget with its two path fragments. Together with a virtual arc
/// `t -> s` standing for the host path, `fragment_p` is a Hamiltonian
/// `(d, e)`-path and `fragment_q` a Hamiltonian `(b, c)`-path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gadget {
    pub digraph: Digraph,
    pub ports: Ports,
    pub fragment_p: ArcSet,
    pub fragment_q: ArcSet,
}

const ARCS: [(VertexId, VertexId); 10] = [
    (0, 1),
    (0, 4),
    (1, 2),
    (1, 3),
    (2, 4),
    (2, 5),
    (3, 1),
    (3, 5),
    (4, 2),
    (4, 3),
];

/// The shipped gadget: ports `s = 0`, `t = 5`, internal vertices 1..=4.
/// Its two spanning `(s, t)`-paths are 0-1-2-4-3-5 and 0-4-3-1-2-5; each
/// leaves two internal vertices cut off from the ports.
pub fn cycle_breaker() -> Gadget {
    Gadget {
        digraph: Digraph::new(6, &ARCS).expect("gadget arcs are valid"),
        ports: Ports {
            s: 0,
            t: 5,
            b: 3,
            c: 4,
            d: 2,
            e: 1,
        },
        // 2-4-3-t ~ s-1
        fragment_p: ArcSet::new(vec![0, 4, 7, 9]).expect("distinct"),
        // 3-1-2-t ~ s-4
        fragment_q: ArcSet::new(vec![1, 2, 5, 6]).expect("distinct"),
    }
}

impl Gadget {
    pub fn internal_vertices(&self) -> Vec<VertexId> {
        self.digraph
            .vertices()
            .filter(|&v| v != self.ports.s && v != self.ports.t)
            .collect()
    }
}

/// Outcome of each gadget property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    /// Degrees: internal vertices 2-regular, `s` a pure source of
    /// out-degree 2, `t` a pure sink of in-degree 2.
    pub degrees: bool,
    /// Inserting into the bidirected triangle yields a 2-regular,
    /// 2-arc-strong digraph.
    pub insertion: bool,
    /// Every spanning `(s, t)`-path leaves a component containing neither
    /// port.
    pub breaks_every_path: bool,
    /// Fragments are disjoint, each covers every vertex and each closes to
    /// the required Hamiltonian path.
    pub fragments: bool,
    /// Some spanning `(s, t)`-path exists.
    pub traversable: bool,
    /// First failing vertex or reason, for diagnostics.
    pub notes: Vec<String>,
}

impl GadgetReport {
    pub fn passed(&self) -> bool {
        self.degrees
            && self.insertion
            && self.breaks_every_path
            && self.fragments
            && self.traversable
    }
}

pub fn verify_cycle_breaker(g: &Gadget) -> Result<GadgetReport> {
    let d = &g.digraph;
    let n = d.vertex_count();
    if n > MAX_GADGET_VERTICES {
        return Err(Error::BudgetExceeded(format!(
            "gadget has {n} vertices, exhaustive checks stop at {MAX_GADGET_VERTICES}"
        )));
    }
    let p = g.ports;
    for v in [p.s, p.t, p.b, p.c, p.d, p.e] {
        d.check_vertex(v)?;
    }
    g.fragment_p.check_against(d)?;
    g.fragment_q.check_against(d)?;
    let mut notes = Vec::new();

    let mut degrees = p.s != p.t;
    for v in d.vertices() {
        let want = if v == p.s {
            (0, 2)
        } else if v == p.t {
            (2, 0)
        } else {
            (2, 2)
        };
        if (d.in_degree(v), d.out_degree(v)) != want {
            notes.push(format!(
                "vertex {v}: in {} out {}, expected in {} out {}",
                d.in_degree(v),
                d.out_degree(v),
                want.0,
                want.1
            ));
            degrees = false;
        }
    }

    let insertion = degrees && {
        let host = crate::catalog::bidirected_triangle();
        let split = host.split_vertex(0)?;
        let placed = attach(
            &split.digraph,
            &g.digraph,
            &[(p.s, split.minus), (p.t, split.plus)],
        )?;
        let ok = placed.digraph.is_k_regular(2) && placed.digraph.is_k_arc_strong(2);
        if !ok {
            notes.push(
                "insertion into the bidirected triangle is not 2-regular and 2-arc-strong".into(),
            );
        }
        ok
    };

    let paths = hamiltonian_paths_between(d, p.s, p.t);
    let traversable = !paths.is_empty();
    if !traversable {
        notes.push("no spanning (s,t)-path".into());
    }
    let mut breaks_every_path = true;
    for path in &paths {
        let mut removed = vec![false; d.arc_count()];
        for &a in path {
            removed[a] = true;
        }
        let (comp, _) = d.weak_components_without(&removed);
        let stranded = d
            .vertices()
            .any(|v| comp[v] != comp[p.s] && comp[v] != comp[p.t]);
        if !stranded {
            notes.push(format!(
                "spanning path {path:?} leaves every vertex attached to a port"
            ));
            breaks_every_path = false;
        }
    }

    let mut fragments = g.fragment_p.is_disjoint(&g.fragment_q);
    if !fragments {
        notes.push("fragments share an arc".into());
    }
    let closed = {
        let mut arcs: Vec<_> = d.arcs().iter().map(|a| (a.tail, a.head)).collect();
        arcs.push((p.t, p.s));
        Digraph::new(n, &arcs)?
    };
    let virtual_arc = d.arc_count();
    for (name, frag, from, to) in [
        ("P", &g.fragment_p, p.d, p.e),
        ("Q", &g.fragment_q, p.b, p.c),
    ] {
        let mut arcs = frag.ids().to_vec();
        arcs.push(virtual_arc);
        if !is_hamiltonian_path(&closed, &arcs, from, to) {
            notes.push(format!(
                "fragment {name} does not close to a Hamiltonian ({from},{to})-path"
            ));
            fragments = false;
        }
    }

    Ok(GadgetReport {
        degrees,
        insertion,
        breaks_every_path,
        fragments,
        traversable,
        notes,
    })
}

/// `arcs` form a directed path from `from` to `to` through every vertex.
pub fn is_hamiltonian_path(d: &Digraph, arcs: &[ArcId], from: VertexId, to: VertexId) -> bool {
    let n = d.vertex_count();
    if arcs.len() + 1 != n || arcs.iter().any(|&a| a >= d.arc_count()) {
        return false;
    }
    let mut next = vec![None; n];
    let mut has_pred = vec![false; n];
    for &a in arcs {
        let arc = d.arc(a);
        if next[arc.tail].is_some() || has_pred[arc.head] {
            return false;
        }
        next[arc.tail] = Some(arc.head);
        has_pred[arc.head] = true;
    }
    if has_pred[from] {
        return false;
    }
    let mut v = from;
    let mut visited = 1;
    while let Some(w) = next[v] {
        v = w;
        visited += 1;
        if visited > n {
            return false;
        }
    }
    v == to && visited == n
}

/// A host with one or more gadgets glued in.
#[derive(Debug, Clone)]
pub(crate) struct Placement {
    pub digraph: Digraph,
    /// Gadget vertex -> host vertex.
    pub vertex_map: Vec<VertexId>,
    /// Id of gadget arc 0 in the result; gadget arcs keep their order.
    pub arc_offset: ArcId,
}

/// Appends a copy of the gadget digraph `g` to `host`, gluing the listed gadget vertices onto
/// existing host vertices and adding the others as fresh vertices.
pub(crate) fn attach(
    host: &Digraph,
    g: &Digraph,
    glue: &[(VertexId, VertexId)],
) -> Result<Placement> {
    let mut next = host.vertex_count();
    let vertex_map: Vec<VertexId> = g
        .vertices()
        .map(|v| match glue.iter().find(|(gv, _)| *gv == v) {
            Some(&(_, h)) => h,
            None => {
                next += 1;
                next - 1
            }
        })
        .collect();
    let mut arcs: Vec<_> = host.arcs().iter().map(|a| (a.tail, a.head)).collect();
    let arc_offset = arcs.len();
    arcs.extend(
        g.arcs()
            .iter()
            .map(|a| (vertex_map[a.tail], vertex_map[a.head])),
    );
    Ok(Placement {
        digraph: Digraph::new(next, &arcs)?,
        vertex_map,
        arc_offset,
    })
}

/// Which fragment pair a chained double gadget carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum RootVariant {
    /// Out- and in-branching share their root.
    Same,
    /// Out- and in-branching have different roots.
    Distinct,
}

/// Two copies `G`, `G'` of the gadget chained by identifying `t` with `s'`.
/// Layout: `s = 0`, `G` internal `1..=4`, `mid = 5`, `G'` internal `6..=9`,
/// `t' = 10`; arcs of `G` are `0..10`, arcs of `G'` are `10..20`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleGadget {
    pub digraph: Digraph,
    pub s: VertexId,
    pub mid: VertexId,
    pub t: VertexId,
    pub variant: RootVariant,
    /// With a virtual arc `t -> s`, an out-branching rooted at `out_root`.
    pub out_fragment: ArcSet,
    pub out_root: VertexId,
    /// With a virtual arc `t -> s`, an in-branching rooted at `in_root`.
    pub in_fragment: ArcSet,
    pub in_root: VertexId,
}

pub fn double_cycle_breaker(variant: RootVariant) -> DoubleGadget {
    let g = cycle_breaker();
    let first = g.digraph.arcs().iter().map(|a| (a.tail, a.head));
    let shift = |v: VertexId| if v == 0 { 5 } else { v + 5 };
    let second = g
        .digraph
        .arcs()
        .iter()
        .map(|a| (shift(a.tail), shift(a.head)));
    let arcs: Vec<_> = first.chain(second).collect();
    let set = |ids: &[ArcId]| ArcSet::new(ids.to_vec()).expect("distinct");
    let (out_fragment, out_root, in_fragment, in_root) = match variant {
        RootVariant::Same => (
            set(&[0, 2, 4, 9, 10, 11, 13, 15, 18]),
            5,
            set(&[1, 3, 5, 7, 8, 12, 14, 17, 19]),
            5,
        ),
        RootVariant::Distinct => (
            set(&[1, 3, 7, 8, 10, 11, 13, 15, 18]),
            1,
            set(&[0, 2, 5, 6, 9, 12, 14, 17, 19]),
            5,
        ),
    };
    DoubleGadget {
        digraph: Digraph::new(11, &arcs).expect("double gadget arcs are valid"),
        s: 0,
        mid: 5,
        t: 10,
        variant,
        out_fragment,
        out_root,
        in_fragment,
        in_root,
    }
}

/// Fragment contract of a double gadget.
pub fn verify_double_gadget(g: &DoubleGadget) -> bool {
    let d = &g.digraph;
    let mut arcs: Vec<_> = d.arcs().iter().map(|a| (a.tail, a.head)).collect();
    arcs.push((g.t, g.s));
    let Ok(closed) = Digraph::new(d.vertex_count(), &arcs) else {
        return false;
    };
    let virtual_arc = d.arc_count();
    let with_virtual = |f: &ArcSet| {
        let mut ids = f.ids().to_vec();
        ids.push(virtual_arc);
        ids
    };
    let roots_ok = match g.variant {
        RootVariant::Same => g.out_root == g.in_root,
        RootVariant::Distinct => g.out_root != g.in_root,
    };
    roots_ok
        && g.out_fragment.is_disjoint(&g.in_fragment)
        && g.out_fragment.check_against(d).is_ok()
        && g.in_fragment.check_against(d).is_ok()
        && crate::branchings::is_out_branching(&closed, &with_virtual(&g.out_fragment), g.out_root)
        && crate::branchings::is_out_branching(
            &closed.reverse(),
            &with_virtual(&g.in_fragment),
            g.in_root,
        )
}
