//! Subcommand arguments and handlers.

use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use hamlab::cycle::{validate_cycle, validate_matching, validate_path};
use hamlab::extremal::{delta_threshold, ThresholdMethod};
use hamlab::goodness::{closeness, goodness, link_bigraph_probe, ClosenessMode};
use hamlab::kpartite::{
    build_ham_path_kpartite, plan_partition, stability_ham_path, KPartiteRestriction, KPathConfig,
};
use hamlab::mc::{chernoff_experiment, fk_experiment, random_family, reservoir_build};
use hamlab::parity::{parity_fix as run_parity_fix, plant_wrong_parity_pair, ParityConfig};
use hamlab::search::{
    count_connectors, find_ham_cycle, find_ham_path, find_parity_pair, find_perfect_matching, parity_certificate,
    Outcome, SearchBudget,
};
use hamlab::verify::{run_suite, Scale, Suite};
use hamlab::{Hypergraph, Rational, VertexSet, DEFAULT_ENUM_BUDGET};
use serde_json::{json, Value};

use crate::instance::{parse_set, parse_spec, Source};
use crate::{Failure, Output, Report, EXIT_FAILED, EXIT_FOUND, EXIT_NONE, EXIT_UNKNOWN};

fn parse_ratio(s: &str) -> Result<Rational, String> {
    let (num, den) = s.split_once('/').unwrap_or((s, "1"));
    let num: i128 = num.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
    let den: i128 = den.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
    if den == 0 {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(num, den))
}

fn ratio_json(r: Rational) -> Value {
    json!({ "num": *r.numer() as i64, "den": *r.denom() as i64 })
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable report")
}

fn require_seed(seed: Option<u64>) -> Result<u64, Failure> {
    seed.ok_or_else(|| Failure::usage("this command is randomized and needs --seed"))
}

// ---------------------------------------------------------------- construct

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    seed: Option<u64>,
    /// Membership tests allowed while materializing.
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    budget: u64,
}

pub fn construct(a: ConstructArgs) -> Result<Output, Failure> {
    let inst = a.source.load(a.seed)?;
    Ok(Output { report: Report::Text(inst.graph.to_text(a.budget)?), code: EXIT_FOUND })
}

// ---------------------------------------------------------------- delta

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Method {
    Formula,
    Enumeration,
}

#[derive(Args, Debug)]
pub struct DeltaArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    ell: u32,
    #[arg(long, value_enum, default_value = "enumeration")]
    method: Method,
}

pub fn delta(a: DeltaArgs) -> Result<Output, Failure> {
    let method = match a.method {
        Method::Formula => ThresholdMethod::Formula,
        Method::Enumeration => ThresholdMethod::Enumeration,
    };
    match delta_threshold(a.n, a.k, a.ell, method) {
        Ok(r) => Ok(Output::json(
            json!({
                "n": r.n,
                "k": r.k,
                "ell": r.ell,
                "value_num": *r.value.numer() as i64,
                "value_den": *r.value.denom() as i64,
                "argmax": to_json(&r.argmax),
                "method": to_json(&r.method),
                "formula_case": r.formula_case,
            }),
            EXIT_FOUND,
        )),
        Err(hamlab::Error::CaseIllDefined(msg)) => Ok(Output::json(
            json!({ "n": a.n, "k": a.k, "ell": a.ell, "method": to_json(&method), "case": "ill-defined", "reason": msg }),
            EXIT_UNKNOWN,
        )),
        Err(e) => Err(e.into()),
    }
}

// ---------------------------------------------------------------- search

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum Mode {
    Pm,
    Cycle,
    Path,
    Connectors,
    ParityPair,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum)]
    mode: Mode,
    #[arg(long)]
    ell: Option<u32>,
    /// End ℓ-set for path and connector modes, e.g. `0,1`.
    #[arg(long)]
    left: Option<String>,
    /// End (k−ℓ)-set for path and connector modes.
    #[arg(long)]
    right: Option<String>,
    #[arg(long, default_value_t = 50_000_000)]
    budget_nodes: u64,
    /// Connector witnesses to include.
    #[arg(long, default_value_t = 3)]
    witnesses: usize,
    #[arg(long)]
    seed: Option<u64>,
}

fn status_code<T>(o: &Outcome<T>) -> u8 {
    match o {
        Outcome::Found(_) => EXIT_FOUND,
        Outcome::None => EXIT_NONE,
        Outcome::Unknown => EXIT_UNKNOWN,
    }
}

pub fn search(a: SearchArgs, parallel: bool) -> Result<Output, Failure> {
    let inst = a.source.load(a.seed)?;
    let h = &inst.graph;
    let budget = SearchBudget::nodes(a.budget_nodes).parallel(parallel);
    let ell = || a.ell.ok_or_else(|| Failure::usage(format!("--mode {:?} needs --ell", a.mode)));
    let ends = || -> Result<(VertexSet, VertexSet), Failure> {
        match (&a.left, &a.right) {
            (Some(l), Some(r)) => Ok((parse_set(l)?, parse_set(r)?)),
            _ => Err(Failure::usage("this mode needs --left and --right")),
        }
    };
    let mut report = json!({ "instance": inst.label, "n": h.n(), "k": h.k(), "mode": to_json_mode(a.mode) });
    let (status, nodes, witness, valid) = match a.mode {
        Mode::Pm => {
            let s = find_perfect_matching(h, &budget)?;
            let valid = s.outcome.found().map(|m| validate_matching(h, m, true).is_ok());
            (status_code(&s.outcome), s.nodes, to_json(&s.outcome.found()), valid)
        }
        Mode::Cycle => {
            let s = find_ham_cycle(h, ell()?, &budget)?;
            let valid = s.outcome.found().map(|c| validate_cycle(h, c, true).is_ok());
            (status_code(&s.outcome), s.nodes, to_json(&s.outcome.found()), valid)
        }
        Mode::Path => {
            let (l, r) = ends()?;
            let s = find_ham_path(h, ell()?, &l, &r, &budget)?;
            let valid = s.outcome.found().map(|p| validate_path(h, p).is_ok());
            (status_code(&s.outcome), s.nodes, to_json(&s.outcome.found()), valid)
        }
        Mode::ParityPair => {
            let spec = inst.spec.as_ref().ok_or_else(|| Failure::usage("parity-pair needs --extremal or --against"))?;
            let s = find_parity_pair(h, spec, ell()?, &budget)?;
            (status_code(&s.outcome), s.nodes, to_json(&s.outcome.found()), None)
        }
        Mode::Connectors => {
            let (l, r) = ends()?;
            let c = count_connectors(h, &l, &r, &budget, a.witnesses)?;
            let code = if c.complete { EXIT_FOUND } else { EXIT_UNKNOWN };
            report["count"] = json!(c.count as u64);
            report["complete"] = json!(c.complete);
            report["examined"] = json!(c.examined as u64);
            report["witnesses"] = to_json(&c.witnesses);
            return Ok(Output::json(report, code));
        }
    };
    let reason = match status {
        EXIT_FOUND if valid == Some(false) => return Err(Failure { code: EXIT_FAILED, msg: "witness failed validation".into() }),
        EXIT_FOUND => "witness found and validated".to_string(),
        EXIT_NONE => match &inst.spec {
            Some(spec) if a.mode != Mode::ParityPair && parity_certificate(h, spec, DEFAULT_ENUM_BUDGET).unwrap_or(false) => {
                "exhausted + parity certificate".to_string()
            }
            _ => "exhausted".to_string(),
        },
        _ => format!("node budget of {} exhausted", a.budget_nodes),
    };
    report["status"] = json!(match status {
        EXIT_FOUND => "found",
        EXIT_NONE => "none",
        _ => "unknown",
    });
    report["nodes"] = json!(nodes);
    report["reason"] = json!(reason);
    report["witness"] = witness;
    Ok(Output::json(report, status))
}

fn to_json_mode(m: Mode) -> Value {
    json!(m.to_possible_value().map(|v| v.get_name().to_string()))
}

// ---------------------------------------------------------------- analyze

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    source: Source,
    /// Distance to the nearest parity family.
    #[arg(long)]
    closeness: bool,
    /// Parity type for --closeness.
    #[arg(long, default_value_t = 1)]
    eta: u8,
    /// Scan every size of A, not only ⌈n/2⌉.
    #[arg(long)]
    widen: bool,
    /// Use local search instead of scanning all bipartitions.
    #[arg(long)]
    heuristic: bool,
    /// Goodness ratio of this vertex set, e.g. `0,1`.
    #[arg(long)]
    goodness: Option<String>,
    /// Degree and overlap profile of the link bigraph.
    #[arg(long)]
    probe: bool,
    #[arg(long)]
    ell: Option<u32>,
    #[arg(long, value_parser = parse_ratio, default_value = "1/10")]
    gamma: Rational,
    #[arg(long, default_value_t = DEFAULT_ENUM_BUDGET)]
    budget: u64,
    #[arg(long)]
    seed: Option<u64>,
}

pub fn analyze(a: AnalyzeArgs) -> Result<Output, Failure> {
    if !(a.closeness || a.goodness.is_some() || a.probe) {
        return Err(Failure::usage("give at least one of --closeness, --goodness, --probe"));
    }
    let inst = a.source.load(a.seed)?;
    let h = &inst.graph;
    let mut report = json!({ "instance": inst.label, "n": h.n(), "k": h.k() });
    if a.closeness {
        let mode = if a.heuristic { ClosenessMode::Heuristic } else { ClosenessMode::Exact };
        let seed = if a.heuristic { require_seed(a.seed)? } else { a.seed.unwrap_or(0) };
        report["closeness"] = to_json(&closeness(h, a.eta, mode, a.widen, seed, a.budget)?);
    }
    if let Some(s) = &a.goodness {
        let spec = inst.spec.as_ref().ok_or_else(|| Failure::usage("--goodness needs --extremal or --against"))?;
        report["goodness"] = to_json(&goodness(h, spec, &parse_set(s)?, a.budget)?);
    }
    if a.probe {
        let ell = a.ell.ok_or_else(|| Failure::usage("--probe needs --ell"))?;
        report["probe"] = to_json(&link_bigraph_probe(h, ell, a.gamma, a.budget)?);
        report["gamma"] = ratio_json(a.gamma);
    }
    Ok(Output::json(report, EXIT_FOUND))
}

// ---------------------------------------------------------------- mc

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ThetaFamily {
    Random,
    Complete,
}

#[derive(Subcommand, Debug)]
pub enum McCmd {
    /// Edges of a uniform t-matching that land in a fixed family.
    Fk {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, value_enum, default_value = "random")]
        theta_family: ThetaFamily,
        /// Edge probability of the random family.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Write per-trial counts as CSV.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Binomial tail against the two-sided Chernoff bound.
    Chernoff {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Random reservoir of disjoint 2k-sets and how well it connects end pairs.
    Reservoir {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        size: u32,
        #[arg(long, default_value_t = 1000)]
        pairs: u64,
        #[arg(long, default_value_t = 50_000_000)]
        budget_nodes: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
}

pub fn mc(c: McCmd, parallel: bool) -> Result<Output, Failure> {
    let report = match c {
        McCmd::Fk { m, k, t, theta_family, p, gamma, trials, seed, dump } => {
            let seed = require_seed(seed)?;
            let family = match theta_family {
                ThetaFamily::Random => random_family(m, k, p, seed)?,
                ThetaFamily::Complete => Hypergraph::complete(m, k)?,
            };
            let (r, etas) = fk_experiment(&family, t, gamma, trials, seed, DEFAULT_ENUM_BUDGET)?;
            if let Some(path) = dump {
                let mut f = std::io::BufWriter::new(std::fs::File::create(&path).map_err(|e| Failure::io(&path, e))?);
                let mut body = String::from("trial,eta\n");
                for (i, e) in etas.iter().enumerate() {
                    body.push_str(&format!("{i},{e}\n"));
                }
                f.write_all(body.as_bytes()).map_err(|e| Failure::io(&path, e))?;
            }
            to_json(&r)
        }
        McCmd::Chernoff { n, p, a, trials, seed } => to_json(&chernoff_experiment(n, p, a, trials, require_seed(seed)?)?),
        McCmd::Reservoir { source, ell, size, pairs, budget_nodes, seed } => {
            let seed = require_seed(seed)?;
            let inst = source.load(Some(seed))?;
            let budget = SearchBudget::nodes(budget_nodes).parallel(parallel);
            to_json(&reservoir_build(&inst.graph, ell, size, seed, pairs, &budget)?)
        }
    };
    Ok(Output::json(report, EXIT_FOUND))
}

// ---------------------------------------------------------------- parity-fix

#[derive(Args, Debug)]
pub struct ParityFixArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    ell: u32,
    /// Plant two wrong-parity edges meeting in ℓ vertices (extremal sources only).
    #[arg(long)]
    plant_pair: bool,
    #[arg(long, value_parser = parse_ratio)]
    eps_prime: Option<Rational>,
    #[arg(long, value_parser = parse_ratio)]
    relocate: Option<Rational>,
    #[arg(long, value_parser = parse_ratio)]
    split: Option<Rational>,
    #[arg(long)]
    seed: Option<u64>,
}

pub fn parity_fix(a: ParityFixArgs) -> Result<Output, Failure> {
    let inst = a.source.load(a.seed)?;
    let spec = inst.spec.clone().ok_or_else(|| Failure::usage("parity-fix needs --extremal or --against"))?;
    let h = if a.plant_pair {
        if a.source.extremal.is_none() {
            return Err(Failure::usage("--plant-pair needs --extremal"));
        }
        plant_wrong_parity_pair(&spec, a.ell, require_seed(a.seed)?)?
    } else {
        inst.graph
    };
    let mut cfg = ParityConfig::default();
    cfg.eps_prime = a.eps_prime.unwrap_or(cfg.eps_prime);
    cfg.relocate = a.relocate.unwrap_or(cfg.relocate);
    cfg.split = a.split.unwrap_or(cfg.split);
    let res = run_parity_fix(&h, &spec, a.ell, &cfg)?;
    let valid = validate_path(&h, &res.path).is_ok();
    if !valid {
        return Err(Failure { code: EXIT_FAILED, msg: "repair path failed validation".into() });
    }
    let report = json!({ "instance": inst.label, "ell": a.ell, "config": to_json(&cfg), "result": to_json(&res) });
    Ok(Output::json(report, EXIT_FOUND))
}

// ---------------------------------------------------------------- engine

#[derive(Args, Debug)]
pub struct EngineOpts {
    /// Part sizes below this are solved by exact search.
    #[arg(long, default_value_t = 12)]
    n0: usize,
    #[arg(long, value_parser = parse_ratio, default_value = "1/50")]
    alpha: Rational,
    #[arg(long, default_value_t = 5_000_000)]
    budget_nodes: u64,
}

impl EngineOpts {
    fn config(&self) -> KPathConfig {
        KPathConfig { n0: self.n0, alpha: self.alpha, budget: SearchBudget::nodes(self.budget_nodes), ..Default::default() }
    }
}

#[derive(Subcommand, Debug)]
pub enum EngineCmd {
    /// X/Y/E partition for a parity family with fixed ends.
    Plan {
        #[arg(long)]
        extremal: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Preferred number of A-parts.
        #[arg(long)]
        k1: Option<usize>,
    },
    /// Hamilton path in a complete or thinned k-partite box.
    Kpath {
        #[arg(long)]
        k: u32,
        /// Part size.
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        thin: Option<f64>,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        opts: EngineOpts,
    },
    /// Hamilton path with fixed ends near a parity family with f = 0.
    Stability {
        #[arg(long)]
        extremal: String,
        #[arg(long)]
        thin: Option<f64>,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        opts: EngineOpts,
    },
}

pub fn engine(c: EngineCmd) -> Result<Output, Failure> {
    let report = match c {
        EngineCmd::Plan { extremal, left, right, k1 } => {
            let spec = parse_spec(&extremal, None)?;
            to_json(&plan_partition(&spec, &parse_set(&left)?, &parse_set(&right)?, k1)?)
        }
        EngineCmd::Kpath { k, m, ell, thin, left, right, seed, opts } => {
            let seed = require_seed(seed)?;
            let f = match thin {
                Some(rate) => KPartiteRestriction::thinned(k, m, rate, seed)?,
                None => KPartiteRestriction::complete(k, m)?,
            };
            let first = |ps: &[VertexSet]| VertexSet::from_slice(&ps.iter().filter_map(|p| p.first()).collect::<Vec<_>>());
            let l = left.as_deref().map(parse_set).transpose()?.unwrap_or_else(|| first(&f.parts[..ell as usize]));
            let r = right.as_deref().map(parse_set).transpose()?.unwrap_or_else(|| first(&f.parts[ell as usize..]));
            let path = build_ham_path_kpartite(&f, ell, &l, &r, seed, &opts.config())?;
            json!({ "k": k, "m": m, "ell": ell, "thin": thin, "parts": to_json(&f.parts), "path": to_json(&path) })
        }
        EngineCmd::Stability { extremal, thin, ell, left, right, seed, opts } => {
            let seed = require_seed(seed)?;
            let spec = parse_spec(&extremal, None)?;
            let base = Hypergraph::extremal(&spec);
            let g = match thin {
                Some(rate) => base.thinned(rate, seed)?,
                None => base,
            };
            let rep = stability_ham_path(&g, &spec, ell, &parse_set(&left)?, &parse_set(&right)?, seed, &opts.config())?;
            json!({ "extremal": extremal, "thin": thin, "ell": ell, "report": to_json(&rep) })
        }
    };
    Ok(Output::json(report, EXIT_FOUND))
}

// ---------------------------------------------------------------- verify

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// thresholds | extremal-nonham | parity | engine | concentration
    suite: String,
    /// Required by the randomized suites.
    #[arg(long)]
    seed: Option<u64>,
    /// Smaller randomized grids.
    #[arg(long)]
    quick: bool,
}

pub fn verify(a: VerifyArgs) -> Result<Output, Failure> {
    let suite: Suite = a.suite.parse().map_err(|e: hamlab::Error| Failure::usage(e.to_string()))?;
    let randomized = matches!(suite, Suite::Parity | Suite::Engine | Suite::Concentration);
    let seed = if randomized { require_seed(a.seed)? } else { a.seed.unwrap_or(0) };
    let checks = run_suite(suite, seed, if a.quick { Scale::QUICK } else { Scale::FULL });
    let pass = checks.iter().all(|c| c.pass());
    let report = json!({ "suite": to_json(&suite), "seed": randomized.then_some(seed), "pass": pass, "checks": to_json(&checks) });
    Ok(Output::json(report, if pass { EXIT_FOUND } else { EXIT_FAILED }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_ratio("1/10").unwrap(), Rational::new(1, 10));
        assert_eq!(parse_ratio("3").unwrap(), Rational::from_integer(3));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("a/2").is_err());
    }
}
