//! Small named digraphs used throughout the examples and tests.

use crate::digraph::Digraph;

fn build(n: usize, arcs: &[(usize, usize)]) -> Digraph {
    Digraph::new(n, arcs).expect("catalog digraphs are valid")
}

/// Directed 3-cycle 0 -> 1 -> 2 -> 0.
pub fn cycle3() -> Digraph {
    build(3, &[(0, 1), (1, 2), (2, 0)])
}

/// Directed path 0 -> 1 -> 2.
pub fn path3() -> Digraph {
    build(3, &[(0, 1), (1, 2)])
}

/// Every arc of the directed 3-cycle twice; arcs 0..3 are the first copies.
pub fn doubled_cycle3() -> Digraph {
    build(3, &[(0, 1), (1, 2), (2, 0), (0, 1), (1, 2), (2, 0)])
}

/// Complete digraph on three vertices, arcs in lexicographic order.
pub fn bidirected_triangle() -> Digraph {
    complete(3)
}

/// Two vertices joined by two parallel arcs in each direction.
pub fn doubled_digon() -> Digraph {
    build(2, &[(0, 1), (0, 1), (1, 0), (1, 0)])
}

/// Complete digraph on `n` vertices, arcs in lexicographic order.
pub fn complete(n: usize) -> Digraph {
    let arcs: Vec<_> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    build(n, &arcs)
}

/// A 2-regular, 2-arc-strong digraph on four vertices with exactly one
/// Hamiltonian cycle, so it has no two arc-disjoint ones.
pub fn single_hamiltonian_quad() -> Digraph {
    build(
        4,
        &[
            (0, 1),
            (0, 2),
            (1, 2),
            (1, 3),
            (2, 3),
            (2, 0),
            (3, 0),
            (3, 1),
        ],
    )
}
