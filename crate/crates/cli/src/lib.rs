//! Command-line front end: argument parsing, dispatch, manifests and exit
//! codes.

pub mod construct;
pub mod manifest;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use xlab_core::decomposition::{decomposition_family, verify_report};
use xlab_core::extremal::{ex_oracle, ex_search, SearchOptions};
use xlab_core::graph6::{parse_graph6, to_graph6};
use xlab_core::spectral::{rho, spex_search, DEFAULT_TIE_TOL, DEFAULT_TOL};
use xlab_core::verify::{run_check, CheckId, VerifyParams};
use xlab_core::{embedding::is_family_free, parse_family, Error};

use construct::{build, Construction};
use manifest::{Payload, RunManifest, TOOL_VERSION};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;
pub const EXIT_INCOMPLETE: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "xlab", version, about = "Exact Turán-type and spectral extremal computations on small graphs")]
pub struct Cli {
    /// Worker threads; falls back to XLAB_THREADS, then to all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Zero all timings so reruns are byte-identical.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Write the manifest here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Oracle,
    Search,
}

#[derive(Debug, Serialize, Subcommand)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Decomposition family and the matching/star condition.
    Decompose {
        /// Family spec, e.g. "K3,C5" or "G(K3,K3)".
        #[arg(long)]
        family: String,
    },
    /// ex(n, family) and all extremal graphs.
    Ex {
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Family spec, e.g. "K3,C5" or "G(K3,K3)".
        #[arg(long)]
        family: String,
        /// Exhaustive edge-subset scan (n <= 7) or level-wise search (n <= 10).
        #[arg(long, value_enum, default_value = "search")]
        mode: Mode,
        /// Stop after this many search nodes and report the run as incomplete.
        #[arg(long)]
        node_budget: Option<u64>,
        /// graph6 file holding the frontier of an earlier incomplete run.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Write the frontier here when the run is incomplete.
        #[arg(long)]
        frontier_out: Option<PathBuf>,
    },
    /// spex(n, family) and all graphs attaining it.
    Spex {
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Family spec, e.g. "K3,C5" or "G(K3,K3)".
        #[arg(long)]
        family: String,
        /// Residual tolerance of the power iteration.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Radii within this distance of the maximum count as ties.
        #[arg(long, default_value_t = DEFAULT_TIE_TOL)]
        tie_tol: f64,
        /// Stop after this many search nodes and report the run as incomplete.
        #[arg(long)]
        node_budget: Option<u64>,
    },
    /// Run one of the structural checks.
    Verify(VerifyArgs),
    /// Build a named graph.
    Construct {
        #[command(subcommand)]
        which: Construction,
        /// Also write the graphs as graph6 lines.
        #[arg(long, global = true)]
        g6_out: Option<PathBuf>,
    },
    /// Re-check a manifest: schema, and every graph against its report.
    CheckManifest { path: PathBuf },
}

#[derive(Debug, Serialize, Args)]
pub struct VerifyArgs {
    /// One of 1.2, 1.3, 1.4, 1.5, L2.2, L3.3, L3.4, E5.1, E5.6, Ex6.
    #[arg(long)]
    pub id: String,
    /// Vertex range, `a..b` (inclusive) or a single value.
    #[arg(long)]
    pub n: Option<String>,
    /// Smallest vertex count.
    #[arg(long)]
    pub n_min: Option<usize>,
    /// Largest vertex count.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Numbers of parts, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub r: Option<Vec<usize>>,
    /// Number of forbidden copies.
    #[arg(long)]
    pub k: Option<usize>,
    /// Forbidden graph for the disjoint-copies checks; repeat for F1..Fk.
    #[arg(long = "F")]
    pub f: Vec<String>,
    /// Family spec; repeatable.
    #[arg(long)]
    pub family: Vec<String>,
    /// Number of random instances.
    #[arg(long)]
    pub cases: Option<usize>,
    /// Largest matching number in the bounded-edges sweep.
    #[arg(long)]
    pub nu_max: Option<usize>,
    /// Largest maximum degree in the bounded-edges sweep.
    #[arg(long)]
    pub delta_max: Option<usize>,
    /// Star size parameter of the counterexample family.
    #[arg(long)]
    pub s: Option<usize>,
    /// Node budget for each extremal search.
    #[arg(long)]
    pub node_budget: Option<u64>,
    /// Step budget for each embedding search.
    #[arg(long)]
    pub step_budget: Option<u64>,
}

/// Outcome of a command: the exit code and what to print.
pub struct Run {
    pub code: u8,
    pub stdout: Option<String>,
    pub stderr: Option<String>,
}

pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Graph6(_) | Error::FamilySpec(_) => EXIT_PARSE,
        Error::OverBudget { .. } | Error::BudgetExhausted(_) | Error::NoConvergence { .. } => EXIT_BUDGET,
        _ => EXIT_DOMAIN,
    }
}

fn parse_range(text: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::InvalidParameter(format!("bad range `{text}`, expected a..b or a single value"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (text, text),
    };
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

fn verify_params(args: &VerifyArgs, seed: Option<u64>) -> Result<VerifyParams, Error> {
    let (mut n_min, mut n_max) = (args.n_min, args.n_max);
    if let Some(text) = &args.n {
        let (a, b) = parse_range(text)?;
        n_min = Some(a);
        n_max = Some(b);
    }
    Ok(VerifyParams {
        n_min,
        n_max,
        r: args.r.clone(),
        k: args.k,
        f: (!args.f.is_empty()).then(|| args.f.clone()),
        families: (!args.family.is_empty()).then(|| args.family.clone()),
        cases: args.cases,
        nu_max: args.nu_max,
        delta_max: args.delta_max,
        s: args.s,
        seed,
        node_budget: args.node_budget,
        step_budget: args.step_budget,
    })
}

fn read_g6_lines(path: &PathBuf) -> Result<Vec<xlab_core::Graph>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidParameter(format!("cannot read {}: {e}", path.display())))?;
    text.lines().filter(|l| !l.trim().is_empty()).map(|l| parse_graph6(l.trim())).collect()
}

fn write_lines(path: &PathBuf, lines: &[String]) -> Result<(), Error> {
    let mut text = lines.join("\n");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", path.display())))
}

/// Payload and the exit code it implies.
fn execute(cli: &Cli) -> Result<(Payload, u8), Error> {
    Ok(match &cli.command {
        Command::Decompose { family } => {
            let fam = parse_family(family)?;
            (Payload::Decomposition(decomposition_family(&fam)?), EXIT_OK)
        }
        Command::Ex { n, family, mode, node_budget, resume, frontier_out } => {
            let fam = parse_family(family)?;
            let rep = match mode {
                Mode::Oracle => ex_oracle(*n, &fam)?,
                Mode::Search => {
                    let resume = resume.as_ref().map(read_g6_lines).transpose()?;
                    ex_search(*n, &fam, &SearchOptions { node_budget: *node_budget, resume })?
                }
            };
            if !rep.complete {
                if let Some(path) = frontier_out {
                    write_lines(path, &rep.extremal)?;
                }
            }
            let code = if rep.complete { EXIT_OK } else { EXIT_INCOMPLETE };
            (Payload::Extremal(rep), code)
        }
        Command::Spex { n, family, tol, tie_tol, node_budget } => {
            let fam = parse_family(family)?;
            let rep = spex_search(*n, &fam, *tol, *tie_tol, *node_budget)?;
            let code = if rep.complete { EXIT_OK } else { EXIT_INCOMPLETE };
            (Payload::Spex(rep), code)
        }
        Command::Verify(args) => {
            let id: CheckId =
                args.id.parse().map_err(|_| Error::FamilySpec(format!("unknown check id `{}`", args.id)))?;
            let rep = run_check(id, &verify_params(args, cli.seed)?)?;
            let code = if rep.has_failures() {
                EXIT_FAIL
            } else if !rep.is_complete() {
                EXIT_INCOMPLETE
            } else {
                EXIT_OK
            };
            (Payload::Verify(rep), code)
        }
        Command::Construct { which, g6_out } => {
            let rep = build(which)?;
            if let Some(path) = g6_out {
                write_lines(path, &rep.graphs.iter().map(|g| g.graph6.clone()).collect::<Vec<_>>())?;
            }
            (Payload::Construction(rep), EXIT_OK)
        }
        Command::CheckManifest { .. } => unreachable!("handled before dispatch"),
    })
}

/// Re-derive the claims of a manifest from its own contents.
pub fn check_manifest(manifest: &RunManifest) -> Result<bool, Error> {
    let family_of = |key: &str| -> Result<_, Error> {
        let spec = manifest.parameters[key]
            .as_str()
            .ok_or_else(|| Error::InvalidParameter("manifest parameters lack a family".into()))?;
        parse_family(spec)
    };
    match &manifest.payload {
        Payload::Decomposition(rep) => verify_report(&family_of("family")?, rep),
        Payload::Extremal(rep) => {
            let fam = family_of("family")?;
            if rep.complete {
                rep.verify(&fam)
            } else {
                Ok(rep.extremal.iter().all(|c| parse_graph6(c).is_ok()))
            }
        }
        Payload::Spex(rep) => {
            let fam = family_of("family")?;
            for (code, &value) in rep.spex_set.iter().zip(&rep.rhos) {
                let g = parse_graph6(code)?;
                if g.order() != rep.n || !is_family_free(&g, &fam)? || (rho(&g)? - value).abs() > 1e-9 {
                    return Ok(false);
                }
            }
            Ok(rep.spex_set.len() == rep.rhos.len())
        }
        Payload::Verify(rep) => Ok(rep.instances.len() == rep.counts.values().sum::<usize>()),
        Payload::Construction(rep) => {
            for g in &rep.graphs {
                let parsed = parse_graph6(&g.graph6)?;
                if parsed.order() != g.order || parsed.edge_count() != g.edges || to_graph6(&parsed) != g.graph6 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn configure_threads(cli: &Cli) -> Result<(), Error> {
    let threads = match cli.threads {
        Some(t) => Some(t),
        None => match std::env::var("XLAB_THREADS") {
            Ok(v) => Some(v.trim().parse().map_err(|_| Error::InvalidParameter(format!("XLAB_THREADS=`{v}`")))?),
            Err(_) => None,
        },
    };
    if let Some(t) = threads {
        // A second configuration in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    Ok(())
}

fn error_run(err: &Error) -> Run {
    let body = serde_json::json!({ "error": err.to_string(), "exit_code": exit_code_for(err) });
    Run { code: exit_code_for(err), stdout: None, stderr: Some(body.to_string()) }
}

pub fn run(cli: &Cli) -> Run {
    if let Err(e) = configure_threads(cli) {
        return error_run(&e);
    }
    if let Command::CheckManifest { path } = &cli.command {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => return error_run(&Error::InvalidParameter(format!("cannot read {}: {e}", path.display()))),
        };
        let manifest: RunManifest = match serde_json::from_str(&text) {
            Ok(m) => m,
            Err(e) => return error_run(&Error::FamilySpec(format!("manifest does not match the schema: {e}"))),
        };
        return match check_manifest(&manifest) {
            Ok(true) => Run { code: EXIT_OK, stdout: Some("{\"valid\":true}".into()), stderr: None },
            Ok(false) => Run { code: EXIT_FAIL, stdout: Some("{\"valid\":false}".into()), stderr: None },
            Err(e) => error_run(&e),
        };
    }
    let start = Instant::now();
    let (payload, code) = match execute(cli) {
        Ok(v) => v,
        Err(e) => return error_run(&e),
    };
    let exceptions = match &payload {
        Payload::Verify(rep) => rep.exceptions().into_iter().cloned().collect(),
        _ => Vec::new(),
    };
    let (command, parameters) = match serde_json::to_value(&cli.command).expect("arguments serialize") {
        serde_json::Value::Object(map) if map.len() == 1 => {
            let (name, params) = map.into_iter().next().expect("one entry");
            (name, params)
        }
        serde_json::Value::String(name) => (name, serde_json::Value::Null),
        other => (String::from("unknown"), other),
    };
    let mut parameters = parameters;
    if let serde_json::Value::Object(map) = &mut parameters {
        map.insert("seed".into(), serde_json::json!(cli.seed));
    }
    let mut manifest = RunManifest {
        command,
        parameters,
        tool_version: TOOL_VERSION.into(),
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        payload,
        exceptions,
    };
    if cli.deterministic {
        manifest.strip_timings();
    }
    let text = match manifest.to_validated_json() {
        Ok(t) => t,
        Err(msg) => {
            return Run { code: EXIT_FAIL, stdout: None, stderr: Some(serde_json::json!({ "error": msg }).to_string()) }
        }
    };
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            return error_run(&Error::InvalidParameter(format!("cannot write {}: {e}", path.display())));
        }
        return Run { code, stdout: None, stderr: None };
    }
    Run { code, stdout: Some(text), stderr: None }
}
