//! The `arcpack` command line. Exit codes: 0 yes, 1 no (with a
//! certificate on stdout), 2 usage or input error, 3 oracle budget refusal.
//! Payloads go to stdout, diagnostics to stderr.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::branchings::{
    check_root_vector, pack_in_branchings, pack_out_branchings, RootCheck, RootVector,
};
use crate::certificate::{verify, Certificate, Envelope, Orientation, Subject, SCHEMA};
use crate::digraph::{Digraph, VertexId};
use crate::error::{Error, Result};
use crate::mixed::{decide_equivalence, solve_mixed, Equivalence, MixedOutcome};
use crate::oracle::{Answer, HamMode, OracleBudget, Query, Requirement};
use crate::reductions::{
    ham_cycle_to_ham_path, ham_cycle_to_inout, k_expand, sat_to_instance, Cnf, Provenance,
    RootVariant,
};
use crate::trees::{pack_spanning_trees, TreePackingOutcome};

#[derive(Debug, Parser)]
#[command(
    name = "arcpack",
    version,
    about = "Arc-disjoint branchings, tree packings and hardness gadgets"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Polynomial packings with certificates.
    #[command(subcommand)]
    Pack(PackCmd),
    /// Build a reduction instance; writes the digraph and a JSON sidecar.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Exhaustive deciders (exponential time, budgeted).
    Oracle {
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(subcommand)]
        problem: OracleCmd,
    },
    /// Re-check a certificate against its digraph or formula.
    Verify {
        certificate: PathBuf,
        input: Option<PathBuf>,
    },
    /// Graphviz rendering with arc ids as labels.
    ExportDot { input: PathBuf },
}

#[derive(Debug, Subcommand)]
enum PackCmd {
    /// k edge-disjoint spanning trees or a partition certificate.
    Trees {
        #[arg(short)]
        k: usize,
        input: PathBuf,
    },
    /// Arc-disjoint branchings with prescribed roots.
    Branchings {
        #[arg(short)]
        k: usize,
        /// Root multiplicities, e.g. `0:1,2:1`.
        #[arg(long, value_parser = parse_pairs, value_delimiter = ',')]
        roots: Vec<(usize, usize)>,
        /// Pack in-branchings instead of out-branchings.
        #[arg(long = "in")]
        inward: bool,
        input: PathBuf,
    },
    /// l out-branchings plus k-l spanning trees in a k-regular digraph.
    Mixed {
        #[arg(short)]
        l: usize,
        input: PathBuf,
    },
    /// k free-root out-branchings in a k-regular digraph.
    Equivalence { input: PathBuf },
}

#[derive(Debug, Subcommand)]
enum ReduceCmd {
    /// 3-SAT to the (s,t)-path problems; input is DIMACS.
    Sat(ReduceFile),
    /// Cycle variant of the SAT reduction.
    SatCycle(ReduceFile),
    /// Two Hamiltonian cycles to two Hamiltonian paths.
    HamPath {
        #[arg(long)]
        vertex: VertexId,
        #[command(flatten)]
        file: ReduceFile,
    },
    /// Two Hamiltonian cycles to an out- and in-branching pair.
    HamInout {
        #[arg(long)]
        vertex: VertexId,
        #[arg(long, value_enum, default_value = "same")]
        variant: RootVariant,
        #[command(flatten)]
        file: ReduceFile,
    },
    /// 2-regular to k-regular.
    KExpand {
        #[arg(short)]
        k: usize,
        #[command(flatten)]
        file: ReduceFile,
    },
}

#[derive(Debug, Args)]
struct ReduceFile {
    input: PathBuf,
    /// Output digraph; the sidecar goes next to it with a `.json` extension.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BudgetArgs {
    #[arg(long, global = true, default_value_t = 64)]
    max_vertices: usize,
    #[arg(long, global = true, default_value_t = 256)]
    max_arcs: usize,
    /// Seconds.
    #[arg(long, global = true, default_value_t = 120)]
    time_limit: u64,
    /// Worker threads for searches that split their work.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Subcommand)]
enum OracleCmd {
    HamPair {
        #[arg(long, value_enum)]
        mode: HamMode,
        /// Path end vertices, `d:e,b:c`.
        #[arg(long, value_parser = parse_pairs, value_delimiter = ',')]
        ends: Option<Vec<(usize, usize)>>,
        input: PathBuf,
    },
    InoutPair {
        #[arg(short)]
        u: Option<VertexId>,
        #[arg(short)]
        v: Option<VertexId>,
        input: PathBuf,
    },
    /// (s,t)-path with a connected remainder.
    P1(Endpoints),
    /// (s,t)-path with a strongly connected remainder.
    P2(Endpoints),
    /// (s,t)-path whose remainder has an out-branching rooted at s.
    P3(Endpoints),
    Trees {
        #[arg(short)]
        k: usize,
        input: PathBuf,
    },
    RootVector {
        #[arg(short)]
        k: usize,
        #[arg(long, value_parser = parse_pairs, value_delimiter = ',')]
        roots: Vec<(usize, usize)>,
        input: PathBuf,
    },
    Sat {
        input: PathBuf,
    },
    /// Eulerian digraph with a branching of connected remainder but no
    /// two disjoint out-branchings.
    Counterexample {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
}

#[derive(Debug, Args)]
struct Endpoints {
    #[arg(short)]
    s: VertexId,
    #[arg(short)]
    t: VertexId,
    input: PathBuf,
}

/// Exit code, stdout payload and stderr lines of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub payload: String,
    pub diagnostics: Vec<String>,
}

impl CommandOutcome {
    fn yes(cert: Certificate) -> Self {
        Self::with(0, Envelope::new(cert).to_json(), Vec::new())
    }

    fn no(cert: Certificate, why: impl Into<String>) -> Self {
        Self::with(1, Envelope::new(cert).to_json(), vec![why.into()])
    }

    fn with(exit_code: i32, payload: String, diagnostics: Vec<String>) -> Self {
        CommandOutcome {
            exit_code,
            payload,
            diagnostics,
        }
    }

    fn from_error(e: &Error) -> Self {
        let code = if matches!(e, Error::BudgetExceeded(_)) {
            3
        } else {
            2
        };
        Self::with(code, String::new(), vec![format!("error: {e}")])
    }
}

fn parse_pairs(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected `a:b`, got `{s}`"))?;
    let a = a
        .trim()
        .parse()
        .map_err(|_| format!("bad number in `{s}`"))?;
    let b = b
        .trim()
        .parse()
        .map_err(|_| format!("bad number in `{s}`"))?;
    Ok((a, b))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome::with(2, String::new(), vec![text])
            } else {
                CommandOutcome::with(0, text, Vec::new())
            };
        }
    };
    execute(cli).unwrap_or_else(|e| CommandOutcome::from_error(&e))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn read_digraph(path: &Path) -> Result<Digraph> {
    Digraph::parse_text(&read(path)?)
}

fn read_cnf(path: &Path) -> Result<Cnf> {
    Cnf::parse_dimacs(&read(path)?)
}

fn execute(cli: Cli) -> Result<CommandOutcome> {
    match cli.command {
        Command::Pack(cmd) => pack(cmd),
        Command::Reduce(cmd) => reduce(cmd),
        Command::Oracle { budget, problem } => oracle(budget, problem),
        Command::Verify { certificate, input } => verify_cmd(&certificate, input.as_deref()),
        Command::ExportDot { input } => Ok(CommandOutcome::with(
            0,
            read_digraph(&input)?.to_dot(),
            Vec::new(),
        )),
    }
}

fn pack(cmd: PackCmd) -> Result<CommandOutcome> {
    Ok(match cmd {
        PackCmd::Trees { k, input } => {
            let d = read_digraph(&input)?;
            match pack_spanning_trees(&d, k)? {
                TreePackingOutcome::Packed(p) => CommandOutcome::yes((&p).into()),
                TreePackingOutcome::Infeasible(c) => CommandOutcome::no(
                    (&c).into(),
                    format!(
                        "no {k} edge-disjoint spanning trees: deficiency {}",
                        c.deficiency
                    ),
                ),
            }
        }
        PackCmd::Branchings {
            k,
            roots,
            inward,
            input,
        } => {
            let d = read_digraph(&input)?;
            let r = RootVector::from_pairs(d.vertex_count(), &roots, k)?;
            let (view, orientation) = if inward {
                (d.reverse(), Orientation::In)
            } else {
                (d.clone(), Orientation::Out)
            };
            match check_root_vector(&view, &r)? {
                RootCheck::Violated { witness } => CommandOutcome::no(
                    Certificate::violation(witness.clone(), &r, orientation),
                    format!("root vector violated on {witness:?}"),
                ),
                RootCheck::Feasible => {
                    let set = if inward {
                        pack_in_branchings(&d, &r)?
                    } else {
                        pack_out_branchings(&d, &r)?
                    };
                    CommandOutcome::yes(Certificate::branchings(&set, orientation))
                }
            }
        }
        PackCmd::Mixed { l, input } => match solve_mixed(&read_digraph(&input)?, l)? {
            MixedOutcome::Solved(s) => CommandOutcome::yes(Certificate::mixed(&s)),
            MixedOutcome::Infeasible(c) => {
                CommandOutcome::no((&c).into(), "tree packing fails, so no mixed family exists")
            }
        },
        PackCmd::Equivalence { input } => match decide_equivalence(&read_digraph(&input)?)? {
            Equivalence::Feasible { branchings, trace } => {
                CommandOutcome::yes(Certificate::equivalence(&branchings, &trace))
            }
            Equivalence::Infeasible(c) => CommandOutcome::no(
                (&c).into(),
                "tree packing fails, so no free-root branchings exist",
            ),
        },
    })
}

fn output_paths(file: &ReduceFile, suffix: &str) -> (PathBuf, PathBuf) {
    let out = file.output.clone().unwrap_or_else(|| {
        let stem = file
            .input
            .file_stem()
            .map_or_else(|| "instance".into(), |s| s.to_string_lossy().to_string());
        file.input.with_file_name(format!("{stem}.{suffix}.dg"))
    });
    let sidecar = out.with_extension("json");
    (out, sidecar)
}

fn write_instance(
    file: &ReduceFile,
    kind: &str,
    d: &Digraph,
    mut sidecar: serde_json::Value,
) -> Result<CommandOutcome> {
    let (out, side) = output_paths(file, kind);
    fs::write(&out, d.to_text())?;
    if let Some(obj) = sidecar.as_object_mut() {
        obj.insert("schema".into(), SCHEMA.into());
        obj.insert("reduction".into(), kind.into());
    }
    fs::write(&side, serde_json::to_string_pretty(&sidecar)?)?;
    let degree = d.regular_degree().ok();
    let stats = json!({
        "schema": SCHEMA,
        "kind": "reduction",
        "reduction": kind,
        "vertices": d.vertex_count(),
        "arcs": d.arc_count(),
        "regular": degree.is_some(),
        "regular_degree": degree,
        "two_arc_strong": d.is_k_arc_strong(2),
        "output": out,
        "sidecar": side,
    });
    Ok(CommandOutcome::with(
        0,
        serde_json::to_string_pretty(&stats)?,
        Vec::new(),
    ))
}

fn reduce(cmd: ReduceCmd) -> Result<CommandOutcome> {
    match cmd {
        ReduceCmd::Sat(file) => {
            let r = sat_to_instance(&read_cnf(&file.input)?, Provenance::Sat)?;
            write_instance(&file, "sat", &r.digraph, serde_json::to_value(&r)?)
        }
        ReduceCmd::SatCycle(file) => {
            let r = sat_to_instance(&read_cnf(&file.input)?, Provenance::SatCycle)?;
            write_instance(&file, "sat-cycle", &r.digraph, serde_json::to_value(&r)?)
        }
        ReduceCmd::HamPath { vertex, file } => {
            let inst = ham_cycle_to_ham_path(&read_digraph(&file.input)?, vertex)?;
            write_instance(
                &file,
                "ham-path",
                &inst.digraph,
                serde_json::to_value(&inst)?,
            )
        }
        ReduceCmd::HamInout {
            vertex,
            variant,
            file,
        } => {
            let inst = ham_cycle_to_inout(&read_digraph(&file.input)?, vertex, variant)?;
            write_instance(
                &file,
                "ham-inout",
                &inst.digraph,
                serde_json::to_value(&inst)?,
            )
        }
        ReduceCmd::KExpand { k, file } => {
            let e = k_expand(&read_digraph(&file.input)?, k)?;
            write_instance(&file, "k-expand", &e.digraph, serde_json::to_value(&e)?)
        }
    }
}

fn oracle(b: BudgetArgs, problem: OracleCmd) -> Result<CommandOutcome> {
    let budget = OracleBudget::new(
        b.max_vertices,
        b.max_arcs,
        Duration::from_secs(b.time_limit),
    )?;
    let remainder = |e: Endpoints, requirement| {
        (
            Query::RemainderPath {
                requirement,
                s: e.s,
                t: e.t,
            },
            Some(e.input),
        )
    };
    let (query, input) = match problem {
        OracleCmd::HamPair { mode, ends, input } => {
            let ends = match ends.as_deref() {
                None => None,
                Some([a, b]) => Some([*a, *b]),
                Some(_) => return Err(Error::InvalidArgument("--ends takes two pairs".into())),
            };
            (Query::HamPair { mode, ends }, Some(input))
        }
        OracleCmd::InoutPair { u, v, input } => (Query::InoutPair { u, v }, Some(input)),
        OracleCmd::P1(e) => remainder(e, Requirement::Connected),
        OracleCmd::P2(e) => remainder(e, Requirement::Strong),
        OracleCmd::P3(e) => remainder(e, Requirement::OutBranchingFromS),
        OracleCmd::Trees { k, input } => (Query::Trees { k }, Some(input)),
        OracleCmd::RootVector { k, roots, input } => {
            let n = read_digraph(&input)?.vertex_count();
            let r = RootVector::from_pairs(n, &roots, k)?;
            (
                Query::RootVector {
                    r: r.counts().to_vec(),
                    k,
                },
                Some(input),
            )
        }
        OracleCmd::Sat { input } => (Query::Sat, Some(input)),
        OracleCmd::Counterexample { max_n } => (Query::Counterexample { max_n }, None),
    };
    let answer = match (&query, input) {
        (Query::Sat, Some(path)) => {
            let f = read_cnf(&path)?;
            query.run(&Subject::Formula(&f), &budget, b.jobs)?
        }
        (_, Some(path)) => {
            let d = read_digraph(&path)?;
            query.run(&Subject::Digraph(&d), &budget, b.jobs)?
        }
        (_, None) => query.run(&Subject::Standalone, &budget, b.jobs)?,
    };
    Ok(match answer {
        Answer::Yes(cert) => CommandOutcome::yes(cert),
        Answer::No(cert) => CommandOutcome::no(cert, "no: exhaustive search found no witness"),
    })
}

fn verify_cmd(certificate: &Path, input: Option<&Path>) -> Result<CommandOutcome> {
    let env = Envelope::from_json(&read(certificate)?)?;
    let cert = &env.certificate;
    let kind = serde_json::to_value(cert)?["kind"].clone();
    let needs_formula = matches!(
        cert,
        Certificate::Assignment { .. } | Certificate::Exhausted { query: Query::Sat }
    );
    let standalone = matches!(
        cert,
        Certificate::Counterexample { .. }
            | Certificate::Exhausted {
                query: Query::Counterexample { .. }
            }
    );
    let result = match (input, needs_formula, standalone) {
        (_, _, true) => verify(cert, &Subject::Standalone),
        (Some(path), true, _) => verify(cert, &Subject::Formula(&read_cnf(path)?)),
        (Some(path), false, _) => verify(cert, &Subject::Digraph(&read_digraph(path)?)),
        (None, _, _) => {
            return Err(Error::InvalidArgument(
                "this certificate needs an input file".into(),
            ))
        }
    };
    result?;
    let payload = json!({"schema": SCHEMA, "kind": "verified", "certificate": kind});
    Ok(CommandOutcome::with(
        0,
        serde_json::to_string_pretty(&payload)?,
        Vec::new(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_lists() {
        assert_eq!(parse_pairs("2:1"), Ok((2, 1)));
        assert!(parse_pairs("2").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        let out = run(["arcpack", "pack", "nonsense"]);
        assert_eq!(out.exit_code, 2);
        assert!(out.payload.is_empty());
        assert_eq!(run(["arcpack", "--help"]).exit_code, 0);
    }
}
