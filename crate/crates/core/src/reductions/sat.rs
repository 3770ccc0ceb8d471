//! 3-CNF formulas and their reduction to 2-regular digraphs in which an
//! `(s, t)`-path with a connected (equivalently strongly connected, or
//! out-branching-rooted-at-s) remainder exists iff the formula is
//! satisfiable.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::digraph::{ArcId, ArcSet, Digraph, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    /// Zero-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            negated: false,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, negated: true }
    }

    /// DIMACS form: 1-based, negative when negated.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn holds(self, assignment: &[bool]) -> bool {
        assignment[self.var] != self.negated
    }
}

/// A formula with exactly three distinct literals per clause in which every
/// variable occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    variable_count: usize,
    clauses: Vec<[Literal; 3]>,
}

impl Cnf {
    pub fn new(variable_count: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        let mut used = vec![false; variable_count];
        for (i, clause) in clauses.iter().enumerate() {
            for (h, lit) in clause.iter().enumerate() {
                if lit.var >= variable_count {
                    return Err(Error::InvalidArgument(format!(
                        "clause {i}: variable {} out of range",
                        lit.var + 1
                    )));
                }
                if clause[..h].contains(lit) {
                    return Err(Error::InvalidArgument(format!(
                        "clause {i}: duplicate literal {}",
                        lit.to_dimacs()
                    )));
                }
                used[lit.var] = true;
            }
        }
        if let Some(v) = used.iter().position(|&u| !u) {
            return Err(Error::InvalidArgument(format!(
                "variable {} occurs in no clause",
                v + 1
            )));
        }
        Ok(Cnf {
            variable_count,
            clauses,
        })
    }

    /// Builds from DIMACS-style signed 1-based literals.
    pub fn from_signed(variable_count: usize, clauses: &[[i64; 3]]) -> Result<Self> {
        let clauses = clauses
            .iter()
            .map(|c| {
                let mut out = [Literal::pos(0); 3];
                for (slot, &x) in out.iter_mut().zip(c) {
                    *slot = signed_literal(x)?;
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        Cnf::new(variable_count, clauses)
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.holds(assignment)))
    }

    /// Positive and negated occurrence counts per variable.
    pub fn occurrence_counts(&self) -> (Vec<usize>, Vec<usize>) {
        let mut p = vec![0; self.variable_count];
        let mut q = vec![0; self.variable_count];
        for lit in self.clauses.iter().flatten() {
            if lit.negated {
                q[lit.var] += 1;
            } else {
                p[lit.var] += 1;
            }
        }
        (p, q)
    }

    /// Parses DIMACS CNF. Comment lines start with `c`; clauses end with
    /// `0` and may span lines but must have exactly three literals.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<(i64, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            if line.starts_with('p') {
                let parts: Vec<_> = line.split_whitespace().collect();
                if header.is_some() {
                    return Err(parse_err("second problem line".into()));
                }
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(parse_err("expected `p cnf <vars> <clauses>`".into()));
                }
                let n = parts[2]
                    .parse()
                    .map_err(|_| parse_err("bad variable count".into()))?;
                let m = parts[3]
                    .parse()
                    .map_err(|_| parse_err("bad clause count".into()))?;
                header = Some((n, m));
                continue;
            }
            let Some((n, _)) = header else {
                return Err(parse_err("clause before problem line".into()));
            };
            for tok in line.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|_| parse_err(format!("bad literal `{tok}`")))?;
                if x == 0 {
                    if current.len() != 3 {
                        return Err(parse_err(format!(
                            "clause has {} literals, expected 3",
                            current.len()
                        )));
                    }
                    clauses.push([current[0].0, current[1].0, current[2].0]);
                    current.clear();
                } else {
                    if x.unsigned_abs() as usize > n {
                        return Err(parse_err(format!("literal {x} exceeds {n} variables")));
                    }
                    current.push((x, line_no));
                }
            }
        }
        let Some((n, m)) = header else {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: "missing problem line".into(),
            });
        };
        if let Some(&(_, line)) = current.first() {
            return Err(Error::Parse {
                line,
                message: "unterminated clause".into(),
            });
        }
        if clauses.len() != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("header declares {m} clauses, found {}", clauses.len()),
            });
        }
        Cnf::from_signed(n, &clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for c in &self.clauses {
            let _ = writeln!(
                out,
                "{} {} {} 0",
                c[0].to_dimacs(),
                c[1].to_dimacs(),
                c[2].to_dimacs()
            );
        }
        out
    }
}

fn signed_literal(x: i64) -> Result<Literal> {
    if x == 0 {
        return Err(Error::InvalidArgument("literal 0".into()));
    }
    let var = x.unsigned_abs() as usize - 1;
    Ok(Literal {
        var,
        negated: x < 0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Terminal gadgets `F1`, `F2`: the path problems.
    Sat,
    /// Only `F2` plus the arc `t -> s`: the cycle variant.
    SatCycle,
}

/// The two routes of a variable's chain gadget: through its positive
/// occurrences (`y`, taken when the variable is false) or its negated
/// ones (`z`, taken when true).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableRoute {
    pub y: ArcSet,
    pub z: ArcSet,
}

/// Serialized as the JSON sidecar of a reduced digraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionInstance {
    #[serde(skip, default = "empty_digraph")]
    pub digraph: Digraph,
    pub s: VertexId,
    pub t: VertexId,
    /// `literal_map[i][h]` is the occurrence vertex at clause `i`,
    /// position `h`.
    pub literal_map: Vec<[VertexId; 3]>,
    pub variable_routes: Vec<VariableRoute>,
    pub provenance: Provenance,
}

fn empty_digraph() -> Digraph {
    Digraph::new(0, &[]).expect("empty digraph")
}

/// Clause gadget: a bidirected triangle on `alpha, beta, gamma` minus the
/// arc `beta -> alpha`.
const CLAUSE_GADGET: [(usize, usize); 5] = [(0, 1), (1, 2), (2, 0), (0, 2), (2, 1)];

/// Vertex layout: chain vertices `0..=n` (`s = 0`, `t = n`), then the
/// occurrence vertices per variable (positive occurrences first, each in
/// clause order), then `alpha, beta, gamma` per clause position, then the
/// terminal gadgets. Arcs: the variable routes, then each clause position's
/// gadget and wiring, then the terminal part.
pub fn sat_to_instance(f: &Cnf, provenance: Provenance) -> Result<ReductionInstance> {
    let n = f.variable_count();
    let m = f.clauses().len();
    let s = 0;
    let t = n;
    let mut next = n + 1;
    let mut literal_map = vec![[0; 3]; m];
    let mut arcs: Vec<(VertexId, VertexId)> = Vec::new();
    let mut variable_routes = Vec::with_capacity(n);
    for var in 0..n {
        let mut sides = [Vec::new(), Vec::new()];
        for negated in [false, true] {
            let mut prev = var;
            let start = arcs.len();
            for (i, clause) in f.clauses().iter().enumerate() {
                for (h, lit) in clause.iter().enumerate() {
                    if *lit == (Literal { var, negated }) {
                        literal_map[i][h] = next;
                        arcs.push((prev, next));
                        prev = next;
                        next += 1;
                    }
                }
            }
            arcs.push((prev, var + 1));
            sides[negated as usize] = (start..arcs.len()).collect::<Vec<ArcId>>();
        }
        let [y, z] = sides;
        variable_routes.push(VariableRoute {
            y: ArcSet::new(y)?,
            z: ArcSet::new(z)?,
        });
    }
    let mut add_gadget = |arcs: &mut Vec<(VertexId, VertexId)>| {
        let base = next;
        next += 3;
        arcs.extend(CLAUSE_GADGET.iter().map(|&(x, y)| (base + x, base + y)));
        (base, base + 1)
    };
    for corners in &literal_map {
        for h in 0..3 {
            let (alpha, beta) = add_gadget(&mut arcs);
            arcs.push((corners[h], alpha));
            arcs.push((beta, corners[(h + 1) % 3]));
        }
    }
    match provenance {
        Provenance::Sat => {
            let (a1, b1) = add_gadget(&mut arcs);
            let (a2, b2) = add_gadget(&mut arcs);
            arcs.extend([(t, a1), (t, a2), (b1, s), (b2, s)]);
        }
        Provenance::SatCycle => {
            let (a2, b2) = add_gadget(&mut arcs);
            arcs.extend([(t, a2), (b2, s), (t, s)]);
        }
    }
    let digraph = Digraph::new(next, &arcs)?;
    if !digraph.is_k_regular(2) {
        return Err(Error::InternalDefect(
            "reduced digraph is not 2-regular".into(),
        ));
    }
    Ok(ReductionInstance {
        digraph,
        s,
        t,
        literal_map,
        variable_routes,
        provenance,
    })
}

/// Predicted vertex count of the path variant.
pub fn expected_vertex_count(f: &Cnf) -> usize {
    let (p, q) = f.occurrence_counts();
    f.variable_count()
        + 1
        + p.iter().sum::<usize>()
        + q.iter().sum::<usize>()
        + 9 * f.clauses().len()
        + 6
}

impl ReductionInstance {
    /// Arcs of all variable routes.
    pub fn chain_arcs(&self) -> ArcSet {
        self.variable_routes
            .iter()
            .flat_map(|r| r.y.iter().chain(r.z.iter()))
            .collect()
    }

    /// Attaches a digraph read back from disk to a sidecar.
    pub fn with_digraph(mut self, digraph: Digraph) -> Self {
        self.digraph = digraph;
        self
    }
}

/// The chain `(s, t)`-path routing variable `i` through its positive
/// occurrences iff `assignment[i]` is false.
pub fn assignment_to_path(r: &ReductionInstance, assignment: &[bool]) -> Result<ArcSet> {
    if assignment.len() != r.variable_routes.len() {
        return Err(Error::InvalidArgument(format!(
            "assignment has {} values for {} variables",
            assignment.len(),
            r.variable_routes.len()
        )));
    }
    Ok(r.variable_routes
        .iter()
        .zip(assignment)
        .flat_map(|(route, &value)| {
            if value {
                route.z.iter()
            } else {
                route.y.iter()
            }
        })
        .collect())
}

/// Inverse of [`assignment_to_path`].
pub fn path_to_assignment(r: &ReductionInstance, path: &ArcSet) -> Result<Vec<bool>> {
    let not_chain = || Error::InvalidArgument("not an (s,t)-path of the variable chain".into());
    let mut assignment = Vec::with_capacity(r.variable_routes.len());
    let mut used = 0;
    for route in &r.variable_routes {
        let has = |side: &ArcSet| side.iter().all(|a| path.contains(a));
        let misses = |side: &ArcSet| side.iter().all(|a| !path.contains(a));
        let value = if has(&route.y) && misses(&route.z) {
            used += route.y.len();
            false
        } else if has(&route.z) && misses(&route.y) {
            used += route.z.len();
            true
        } else {
            return Err(not_chain());
        };
        assignment.push(value);
    }
    if used != path.len() {
        return Err(not_chain());
    }
    Ok(assignment)
}
