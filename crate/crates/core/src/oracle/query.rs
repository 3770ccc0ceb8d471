use serde::{Deserialize, Serialize};

use super::{
    oracle_ham_pairs, oracle_inout_pair, oracle_remainder_path, oracle_root_vector, oracle_sat,
    oracle_tree_packing, search_eulerian_counterexample, HamMode, OracleBudget, Requirement,
    RootOracle,
};
use crate::branchings::RootVector;
use crate::certificate::{Certificate, Orientation, Subject};
use crate::digraph::{Digraph, VertexId};
use crate::error::{Error, Result};

/// One oracle question, serializable so that a "no" answer can name the
/// exhausted search and be re-run by the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "kebab-case")]
pub enum Query {
    HamPair {
        mode: HamMode,
        ends: Option<[(VertexId, VertexId); 2]>,
    },
    InoutPair {
        u: Option<VertexId>,
        v: Option<VertexId>,
    },
    RemainderPath {
        requirement: Requirement,
        s: VertexId,
        t: VertexId,
    },
    Trees {
        k: usize,
    },
    RootVector {
        r: Vec<usize>,
        k: usize,
    },
    Sat,
    Counterexample {
        max_n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Yes(Certificate),
    No(Certificate),
}

fn digraph<'a>(subject: &Subject<'a>) -> Result<&'a Digraph> {
    match subject {
        Subject::Digraph(d) => Ok(d),
        _ => Err(Error::InvalidArgument("this oracle reads a digraph".into())),
    }
}

impl Query {
    pub fn run(&self, subject: &Subject, budget: &OracleBudget, jobs: usize) -> Result<Answer> {
        let exhausted = || {
            Answer::No(Certificate::Exhausted {
                query: self.clone(),
            })
        };
        Ok(match self {
            Query::HamPair { mode, ends } => {
                match oracle_ham_pairs(digraph(subject)?, *mode, *ends, budget)? {
                    Some(pair) => Answer::Yes(Certificate::HamPair { mode: *mode, pair }),
                    None => exhausted(),
                }
            }
            Query::InoutPair { u, v } => {
                match oracle_inout_pair(digraph(subject)?, *u, *v, budget)? {
                    Some(p) => Answer::Yes(Certificate::inout(&p)),
                    None => exhausted(),
                }
            }
            Query::RemainderPath { requirement, s, t } => {
                match oracle_remainder_path(digraph(subject)?, *s, *t, *requirement, budget)? {
                    Some(path) => Answer::Yes(Certificate::RemainderPath {
                        requirement: *requirement,
                        s: *s,
                        t: *t,
                        path,
                    }),
                    None => exhausted(),
                }
            }
            Query::Trees { k } => {
                let d = digraph(subject)?;
                match oracle_tree_packing(d, *k, budget)? {
                    None => match super::oracle_tree_families(d, *k, budget) {
                        Ok(Some(p)) => Answer::Yes((&p).into()),
                        // the partition scan already settled feasibility
                        Ok(None) | Err(Error::BudgetExceeded(_)) => {
                            Answer::Yes(Certificate::Exhausted {
                                query: self.clone(),
                            })
                        }
                        Err(e) => return Err(e),
                    },
                    Some(c) => Answer::No((&c).into()),
                }
            }
            Query::RootVector { r, k } => {
                let d = digraph(subject)?;
                let rv = RootVector::new(r.clone(), *k)?;
                match oracle_root_vector(d, &rv, budget)? {
                    RootOracle::Holds => Answer::Yes(Certificate::Exhausted {
                        query: self.clone(),
                    }),
                    RootOracle::Violated(x) => {
                        Answer::No(Certificate::violation(x, &rv, Orientation::Out))
                    }
                }
            }
            Query::Sat => {
                let Subject::Formula(f) = subject else {
                    return Err(Error::InvalidArgument("sat reads a DIMACS formula".into()));
                };
                match oracle_sat(f)? {
                    Some(values) => Answer::Yes(Certificate::Assignment { values }),
                    None => exhausted(),
                }
            }
            Query::Counterexample { max_n } => {
                match search_eulerian_counterexample(budget, *max_n, jobs)? {
                    Some(c) => Answer::Yes(Certificate::counterexample(&c)),
                    None => exhausted(),
                }
            }
        })
    }
}
