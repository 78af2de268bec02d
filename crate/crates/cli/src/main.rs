//! `hamlab` command-line front end.
//!
//! Reports go to stdout (or `--out`) as JSON and depend only on the arguments.
//! Run metadata such as wall time goes to stderr (or `--meta`) under a
//! `metadata` key.

mod commands;
mod instance;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use commands::{AnalyzeArgs, ConstructArgs, DeltaArgs, EngineCmd, McCmd, ParityFixArgs, SearchArgs, VerifyArgs};

#[derive(Parser, Debug)]
#[command(name = "hamlab", version, about = "Search and verify Hamilton (l,k-l)-cycles in k-uniform hypergraphs")]
struct Cli {
    /// Worker threads (HAMLAB_THREADS takes precedence).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write run metadata here instead of stderr.
    #[arg(long, global = true)]
    meta: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Materialize a hypergraph in the text format.
    Construct(ConstructArgs),
    /// Threshold delta(n,k,l) by formula or enumeration.
    Delta(DeltaArgs),
    /// Exact search for matchings, cycles, paths, connectors or parity pairs.
    Search(SearchArgs),
    /// Closeness, goodness and link-bigraph probes.
    Analyze(AnalyzeArgs),
    /// Monte Carlo experiments.
    #[command(subcommand)]
    Mc(McCmd),
    /// Parity repair path.
    ParityFix(ParityFixArgs),
    /// Partition planning and the k-partite path engine.
    #[command(subcommand)]
    Engine(EngineCmd),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

/// Exit codes.
pub const EXIT_FOUND: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NONE: u8 = 3;
pub const EXIT_UNKNOWN: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub msg: String,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, msg: msg.into() }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        Failure { code: EXIT_FAILED, msg: format!("{}: {e}", path.display()) }
    }
}

impl From<hamlab::Error> for Failure {
    fn from(e: hamlab::Error) -> Self {
        use hamlab::Error as E;
        let code = match &e {
            E::Size(_) | E::Precondition(_) | E::Parse { .. } | E::CaseIllDefined(_) | E::Unsupported(_) | E::BadEdge(_) => {
                EXIT_USAGE
            }
            E::BudgetExceeded { .. } => EXIT_UNKNOWN,
            E::ParityObstruction(_)
            | E::ParityInfeasible(_)
            | E::NoIntegralSolution(_)
            | E::HallFailure(_)
            | E::NoGadget { .. } => EXIT_NONE,
            _ => EXIT_FAILED,
        };
        Failure { code, msg: e.to_string() }
    }
}

/// A finished command: the deterministic report and its exit code.
pub struct Output {
    pub report: Report,
    pub code: u8,
}

pub enum Report {
    Json(Value),
    Text(String),
}

impl Output {
    pub fn json(report: Value, code: u8) -> Self {
        Output { report: Report::Json(report), code }
    }
}

fn thread_count(flag: Option<usize>) -> Result<usize, Failure> {
    match std::env::var("HAMLAB_THREADS") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::usage(format!("HAMLAB_THREADS={v:?} is not a number"))),
        Err(_) => Ok(flag.unwrap_or(0)),
    }
}

fn write(path: Option<&Path>, text: &str, stderr: bool) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::io(p, e)),
        None if stderr => {
            eprint!("{text}");
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let threads = thread_count(cli.threads)?;
    if threads > 0 {
        // fails only if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let parallel = rayon::current_num_threads() > 1;
    let name = format!("{:?}", cli.cmd).split(['(', ' ']).next().unwrap_or_default().to_lowercase();
    let start = Instant::now();
    let out = match cli.cmd {
        Cmd::Construct(a) => commands::construct(a)?,
        Cmd::Delta(a) => commands::delta(a)?,
        Cmd::Search(a) => commands::search(a, parallel)?,
        Cmd::Analyze(a) => commands::analyze(a)?,
        Cmd::Mc(c) => commands::mc(c, parallel)?,
        Cmd::ParityFix(a) => commands::parity_fix(a)?,
        Cmd::Engine(c) => commands::engine(c)?,
        Cmd::Verify(a) => commands::verify(a)?,
    };
    let text = match out.report {
        Report::Json(v) => serde_json::to_string_pretty(&v).expect("json") + "\n",
        Report::Text(t) => t,
    };
    write(cli.out.as_deref(), &text, false)?;
    let meta = json!({ "metadata": {
        "command": name,
        "elapsed_ms": start.elapsed().as_millis() as u64,
        "threads": rayon::current_num_threads(),
        "version": env!("CARGO_PKG_VERSION"),
        "exit_code": out.code,
    }});
    write(cli.meta.as_deref(), &(meta.to_string() + "\n"), true)?;
    Ok(out.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_FOUND });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            // definitive negatives and budget cut-offs are results, so they get a report too
            if f.code == EXIT_NONE || f.code == EXIT_UNKNOWN {
                let status = if f.code == EXIT_NONE { "none" } else { "unknown" };
                println!("{}", serde_json::to_string_pretty(&json!({ "status": status, "reason": f.msg })).expect("json"));
            }
            eprintln!("hamlab: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
