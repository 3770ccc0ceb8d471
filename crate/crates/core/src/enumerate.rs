//! Exhaustive enumeration helpers shared by the oracles and gadget checks.

use crate::digraph::{ArcId, Digraph, VertexId};

/// Set partitions of `0..n` as restricted growth strings: `labels[v]` is the
/// block of `v`, and block `b` first appears after blocks `0..b`.
pub struct SetPartitions {
    labels: Vec<usize>,
    maxima: Vec<usize>,
    done: bool,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        Self {
            labels: vec![0; n],
            maxima: vec![0; n],
            done: false,
        }
    }
}

impl Iterator for SetPartitions {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let current = self.labels.clone();
        // advance: rightmost position that can still grow
        let n = self.labels.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let prefix_max = self.maxima[i - 1];
            if self.labels[i] <= prefix_max {
                self.labels[i] += 1;
                self.maxima[i] = prefix_max.max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.maxima[j] = self.maxima[i];
                }
                break;
            }
        }
        Some(current)
    }
}

/// Non-empty subsets of `0..n` as bit masks, `n < 64`.
pub fn nonempty_subsets(n: usize) -> impl Iterator<Item = u64> {
    assert!(n < 64);
    1..(1u64 << n)
}

pub fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

/// What the visitor wants after seeing the current walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Descend,
    Backtrack,
    Stop,
}

/// The vertex-simple directed walk currently on the search stack.
#[derive(Debug)]
pub struct Walk {
    pub vertices: Vec<VertexId>,
    pub arcs: Vec<ArcId>,
    pub on_path: Vec<bool>,
    pub arc_used: Vec<bool>,
}

impl Walk {
    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("walk is never empty")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Depth-first enumeration of vertex-simple directed paths from `start`,
/// extending along out-arcs in id order. `visit` sees every path (the
/// single vertex first) and steers the search. Returns true if stopped.
pub fn walk_simple_paths(
    d: &Digraph,
    start: VertexId,
    visit: &mut impl FnMut(&Walk) -> Step,
) -> bool {
    let mut walk = Walk {
        vertices: vec![start],
        arcs: Vec::new(),
        on_path: vec![false; d.vertex_count()],
        arc_used: vec![false; d.arc_count()],
    };
    walk.on_path[start] = true;
    descend(d, &mut walk, visit)
}

fn descend(d: &Digraph, walk: &mut Walk, visit: &mut impl FnMut(&Walk) -> Step) -> bool {
    match visit(walk) {
        Step::Stop => return true,
        Step::Backtrack => return false,
        Step::Descend => {}
    }
    let v = walk.last();
    for &a in d.out_arcs(v) {
        let w = d.arc(a).head;
        if walk.on_path[w] {
            continue;
        }
        walk.vertices.push(w);
        walk.arcs.push(a);
        walk.on_path[w] = true;
        walk.arc_used[a] = true;
        let stopped = descend(d, walk, visit);
        walk.arc_used[a] = false;
        walk.on_path[w] = false;
        walk.arcs.pop();
        walk.vertices.pop();
        if stopped {
            return true;
        }
    }
    false
}

/// Every Hamiltonian `(s, t)`-path of `d`, as arc sequences.
pub fn hamiltonian_paths_between(d: &Digraph, s: VertexId, t: VertexId) -> Vec<Vec<ArcId>> {
    let n = d.vertex_count();
    let mut found = Vec::new();
    walk_simple_paths(d, s, &mut |w| {
        if w.last() == t {
            if w.len() == n {
                found.push(w.arcs.clone());
            }
            Step::Backtrack
        } else {
            Step::Descend
        }
    });
    found
}

/// Every labeled loopless k-regular multidigraph on `n` vertices, given by
/// its multiplicity matrix; arcs are listed in lexicographic order with
/// parallel copies adjacent.
pub fn regular_digraphs(n: usize, k: usize) -> Vec<Digraph> {
    let mut out = Vec::new();
    let mut matrix = vec![vec![0usize; n]; n];
    let mut col = vec![0usize; n];
    fill(n, k, 0, 0, 0, &mut matrix, &mut col, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill(
    n: usize,
    k: usize,
    row: usize,
    c: usize,
    row_sum: usize,
    matrix: &mut Vec<Vec<usize>>,
    col: &mut Vec<usize>,
    out: &mut Vec<Digraph>,
) {
    if row == n {
        let mut arcs = Vec::with_capacity(n * k);
        for (u, r) in matrix.iter().enumerate() {
            for (v, &mult) in r.iter().enumerate() {
                arcs.extend(std::iter::repeat_n((u, v), mult));
            }
        }
        out.push(Digraph::new(n, &arcs).expect("matrix has zero diagonal"));
        return;
    }
    if c == n {
        if row_sum == k {
            fill(n, k, row + 1, 0, 0, matrix, col, out);
        }
        return;
    }
    let max = if c == row {
        0
    } else {
        (k - row_sum).min(k - col[c])
    };
    for x in 0..=max {
        matrix[row][c] = x;
        col[c] += x;
        fill(n, k, row, c + 1, row_sum + x, matrix, col, out);
        col[c] -= x;
    }
    matrix[row][c] = 0;
}
