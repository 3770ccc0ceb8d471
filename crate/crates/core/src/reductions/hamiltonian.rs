//! Gluing Cycle Breaker gadgets into a split host vertex: two arc-disjoint
//! Hamiltonian cycles become two arc-disjoint Hamiltonian paths, or an
//! arc-disjoint out-branching and in-branching.

use serde::Serialize;

use super::gadget::{
    attach, cycle_breaker, double_cycle_breaker, is_hamiltonian_path, RootVariant,
};
use crate::branchings::is_out_branching;
use crate::digraph::{ArcId, ArcSet, Digraph, VertexId};
use crate::error::{Error, Result};

fn check_host(d: &Digraph, a: VertexId) -> Result<()> {
    d.check_vertex(a)?;
    if !d.is_k_regular(2) {
        d.regular_degree()?;
        return Err(Error::InvalidArgument("host must be 2-regular".into()));
    }
    if !d.is_k_arc_strong(2) {
        return Err(Error::InvalidArgument("host must be 2-arc-strong".into()));
    }
    Ok(())
}

fn check_output(d: &Digraph) -> Result<()> {
    if d.is_k_regular(2) && d.is_k_arc_strong(2) {
        Ok(())
    } else {
        Err(Error::InternalDefect(
            "gadget insertion lost 2-regularity or 2-arc-strength".into(),
        ))
    }
}

fn shift(set: &ArcSet, offset: ArcId) -> ArcSet {
    set.iter().map(|a| a + offset).collect()
}

/// Host with one gadget: `s` glued to `a_minus`, `t` to `a_plus`. Host arc
/// ids are unchanged.
#[derive(Debug, Clone, Serialize)]
pub struct HamPathInstance {
    #[serde(skip)]
    pub digraph: Digraph,
    pub split_vertex: VertexId,
    pub a_minus: VertexId,
    pub a_plus: VertexId,
    /// Gadget vertex -> instance vertex.
    pub gadget_vertices: Vec<VertexId>,
    pub gadget_arc_offset: ArcId,
    /// End vertices `(d, e)` and `(b, c)` of the two paths built from
    /// Hamiltonian cycles of the host.
    pub endpoints: [(VertexId, VertexId); 2],
    pub fragment_p: ArcSet,
    pub fragment_q: ArcSet,
}

pub fn ham_cycle_to_ham_path(d: &Digraph, a: VertexId) -> Result<HamPathInstance> {
    check_host(d, a)?;
    let g = cycle_breaker();
    let split = d.split_vertex(a)?;
    let placed = attach(
        &split.digraph,
        &g.digraph,
        &[(g.ports.s, split.minus), (g.ports.t, split.plus)],
    )?;
    check_output(&placed.digraph)?;
    let m = |v: VertexId| placed.vertex_map[v];
    Ok(HamPathInstance {
        split_vertex: a,
        a_minus: split.minus,
        a_plus: split.plus,
        endpoints: [(m(g.ports.d), m(g.ports.e)), (m(g.ports.b), m(g.ports.c))],
        fragment_p: shift(&g.fragment_p, placed.arc_offset),
        fragment_q: shift(&g.fragment_q, placed.arc_offset),
        gadget_arc_offset: placed.arc_offset,
        gadget_vertices: placed.vertex_map,
        digraph: placed.digraph,
    })
}

fn cycle_as_set(host: &Digraph, cycle: &[ArcId]) -> Result<ArcSet> {
    let set = ArcSet::new(cycle.to_vec())?;
    set.check_against(host)?;
    Ok(set)
}

fn union(a: &ArcSet, b: &ArcSet) -> ArcSet {
    a.iter().chain(b.iter()).collect()
}

impl HamPathInstance {
    /// Two arc-disjoint Hamiltonian paths built from two arc-disjoint
    /// Hamiltonian cycles of the host.
    pub fn lift(&self, host: &Digraph, c1: &[ArcId], c2: &[ArcId]) -> Result<[ArcSet; 2]> {
        let p1 = union(&cycle_as_set(host, c1)?, &self.fragment_p);
        let p2 = union(&cycle_as_set(host, c2)?, &self.fragment_q);
        let [(d, e), (b, c)] = self.endpoints;
        if !p1.is_disjoint(&p2)
            || !is_hamiltonian_path(&self.digraph, p1.ids(), d, e)
            || !is_hamiltonian_path(&self.digraph, p2.ids(), b, c)
        {
            return Err(Error::InvalidArgument(
                "cycles are not two arc-disjoint Hamiltonian cycles of the host".into(),
            ));
        }
        Ok([p1, p2])
    }
}

/// Host with two chained gadgets: `s` glued to `a_minus`, `t` to `s'` at
/// `mid`, `t'` to `a_plus`.
#[derive(Debug, Clone, Serialize)]
pub struct InOutInstance {
    #[serde(skip)]
    pub digraph: Digraph,
    pub split_vertex: VertexId,
    pub a_minus: VertexId,
    pub a_plus: VertexId,
    pub mid: VertexId,
    pub gadget_vertices: Vec<VertexId>,
    pub gadget_arc_offset: ArcId,
    pub variant: RootVariant,
    pub out_root: VertexId,
    pub in_root: VertexId,
    pub out_fragment: ArcSet,
    pub in_fragment: ArcSet,
}

pub fn ham_cycle_to_inout(d: &Digraph, a: VertexId, variant: RootVariant) -> Result<InOutInstance> {
    check_host(d, a)?;
    let g = double_cycle_breaker(variant);
    let split = d.split_vertex(a)?;
    let placed = attach(
        &split.digraph,
        &g.digraph,
        &[(g.s, split.minus), (g.t, split.plus)],
    )?;
    check_output(&placed.digraph)?;
    let m = |v: VertexId| placed.vertex_map[v];
    Ok(InOutInstance {
        split_vertex: a,
        a_minus: split.minus,
        a_plus: split.plus,
        mid: m(g.mid),
        variant,
        out_root: m(g.out_root),
        in_root: m(g.in_root),
        out_fragment: shift(&g.out_fragment, placed.arc_offset),
        in_fragment: shift(&g.in_fragment, placed.arc_offset),
        gadget_arc_offset: placed.arc_offset,
        gadget_vertices: placed.vertex_map,
        digraph: placed.digraph,
    })
}

impl InOutInstance {
    /// Out-branching and in-branching, arc-disjoint, built from two
    /// arc-disjoint Hamiltonian cycles of the host.
    pub fn lift(&self, host: &Digraph, c1: &[ArcId], c2: &[ArcId]) -> Result<[ArcSet; 2]> {
        let out = union(&cycle_as_set(host, c1)?, &self.out_fragment);
        let inb = union(&cycle_as_set(host, c2)?, &self.in_fragment);
        if !out.is_disjoint(&inb)
            || !is_out_branching(&self.digraph, out.ids(), self.out_root)
            || !is_out_branching(&self.digraph.reverse(), inb.ids(), self.in_root)
        {
            return Err(Error::InvalidArgument(
                "cycles are not two arc-disjoint Hamiltonian cycles of the host".into(),
            ));
        }
        Ok([out, inb])
    }
}
