//! Raising a 2-regular 2-arc-strong digraph to a k-regular one without
//! changing whether an arc-disjoint out-branching and in-branching exist.

use serde::Serialize;

use crate::digraph::{Digraph, VertexId};
use crate::error::{Error, Result};

/// Per original vertex `a`: `minus[a] = a` absorbs the entering arcs,
/// `plus[a]` emits the leaving arcs, and `b[a]`, `c[a]` form the attached
/// doubled digon.
#[derive(Debug, Clone, Serialize)]
pub struct Expansion {
    #[serde(skip)]
    pub digraph: Digraph,
    pub k: usize,
    pub minus: Vec<VertexId>,
    pub plus: Vec<VertexId>,
    pub b: Vec<VertexId>,
    pub c: Vec<VertexId>,
}

/// Vertex layout: `a`, then `n + a` for `a+`, `2n + a` for `b`, `3n + a`
/// for `c`. Original arcs keep their ids; each vertex then adds two
/// `a- -> a+` arcs, the digon `b c b c` and `k - 2` copies each of
/// `a- -> b`, `b -> a+`, `a+ -> c`, `c -> a-`.
pub fn k_expand(d: &Digraph, k: usize) -> Result<Expansion> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!(
            "k = {k}, expansion needs k >= 3"
        )));
    }
    if !d.is_k_regular(2) {
        d.regular_degree()?;
        return Err(Error::InvalidArgument("host must be 2-regular".into()));
    }
    if !d.is_k_arc_strong(2) {
        return Err(Error::InvalidArgument("host must be 2-arc-strong".into()));
    }
    let n = d.vertex_count();
    let minus: Vec<_> = (0..n).collect();
    let plus: Vec<_> = (0..n).map(|a| n + a).collect();
    let b: Vec<_> = (0..n).map(|a| 2 * n + a).collect();
    let c: Vec<_> = (0..n).map(|a| 3 * n + a).collect();
    let mut arcs: Vec<_> = d.arcs().iter().map(|x| (plus[x.tail], x.head)).collect();
    for a in 0..n {
        arcs.extend([(minus[a], plus[a]); 2]);
        arcs.extend([(b[a], c[a]), (b[a], c[a]), (c[a], b[a]), (c[a], b[a])]);
        for pair in [
            (minus[a], b[a]),
            (b[a], plus[a]),
            (plus[a], c[a]),
            (c[a], minus[a]),
        ] {
            arcs.extend(std::iter::repeat_n(pair, k - 2));
        }
    }
    let digraph = Digraph::new(4 * n, &arcs)?;
    if !digraph.is_k_regular(k) || !digraph.is_k_arc_strong(2) {
        return Err(Error::InternalDefect(format!(
            "expansion is not {k}-regular and 2-arc-strong"
        )));
    }
    Ok(Expansion {
        digraph,
        k,
        minus,
        plus,
        b,
        c,
    })
}
