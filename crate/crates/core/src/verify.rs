//! Named verification suites. Each check produces a matrix of labelled cells;
//! failures are recorded in the matrix rather than raised.

use std::str::FromStr;
use std::time::Instant;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::combin::{for_each_subset, subsets_of};
use crate::cycle::{validate_cycle, validate_path};
use crate::error::Error;
use crate::extremal::{delta_ell_extremal, delta_threshold, ExtremalSpec, ThresholdMethod};
use crate::goodness::{goodness, RootBound};
use crate::hypergraph::{Hypergraph, DEFAULT_ENUM_BUDGET};
use crate::kpartite::{
    build_ham_path_kpartite, greedy_tight_path, path_cover_tuple, stability_ham_path, KPartiteRestriction,
    KPathConfig,
};
use crate::mc::{fk_experiment, random_family};
use crate::parity::{parity_fix, plant_wrong_parity_pair, ParityConfig};
use crate::search::{count_connectors, find_ham_cycle, find_perfect_matching, parity_certificate, SearchBudget};
use crate::vset::VertexSet;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

impl Cell {
    fn new(label: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Cell { label: label.into(), pass, detail: detail.into() }
    }
}

/// Cells of one check. Timings are kept out of the serialized form so that
/// reports for the same seed compare byte for byte.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub cells: Vec<Cell>,
    #[serde(skip)]
    pub millis: u128,
}

impl Check {
    pub fn pass(&self) -> bool {
        !self.cells.is_empty() && self.cells.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.pass)
    }
}

fn timed(id: u8, name: &'static str, body: impl FnOnce() -> Vec<Cell>) -> Check {
    let start = Instant::now();
    let cells = body();
    Check { id, name, cells, millis: start.elapsed().as_millis() }
}

fn err_cell(label: String, e: Error) -> Cell {
    Cell::new(label, false, format!("error: {e}"))
}

/// Codegree formula against the enumeration oracle.
pub fn codegree_grid() -> Check {
    timed(1, "codegree formula vs enumeration", || {
        [(7u32, 21u32), (7, 35), (8, 48), (8, 56), (10, 50)]
            .into_iter()
            .map(|(k, n)| {
                let label = format!("k={k} n={n} ell={}", k - 1);
                let f = delta_threshold(n, k, k - 1, ThresholdMethod::Formula);
                let e = delta_threshold(n, k, k - 1, ThresholdMethod::Enumeration);
                match (f, e) {
                    (Ok(f), Ok(e)) => Cell::new(
                        label,
                        f.value == e.value,
                        format!("formula {} [{}], enumeration {}", f.value, f.formula_case.unwrap_or("-"), e.value),
                    ),
                    (Err(Error::CaseIllDefined(m)), _) => Cell::new(label, true, format!("ill-defined: {m}")),
                    (Err(x), _) | (_, Err(x)) => err_cell(label, x),
                }
            })
            .collect()
    })
}

fn hext_specs(n: u32, k: u32, want_f: u8) -> Vec<ExtremalSpec> {
    let mut out = Vec::new();
    for a in 0..=n {
        for eta in 0..2u8 {
            let spec = ExtremalSpec::with_prefix(n, k, a, eta).expect("valid prefix");
            if spec.f_parity().ok() == Some(want_f) {
                out.push(spec);
            }
        }
    }
    out
}

const SMALL_GRID: [(u32, u32); 4] = [(6, 3), (9, 3), (8, 4), (12, 4)];

/// No perfect matching and no Hamilton cycle in any `f = 1` family, by
/// exhaustion and by the parity certificate.
pub fn extremal_nonham() -> Check {
    timed(2, "extremal families are not Hamiltonian", || {
        let budget = SearchBudget::default();
        let mut cells = Vec::new();
        for (n, k) in SMALL_GRID {
            for spec in hext_specs(n, k, 1) {
                let h = Hypergraph::extremal(&spec);
                let tag = format!("n={n} k={k} a={} eta={}", spec.a.len(), spec.eta);
                let cert = parity_certificate(&h, &spec, DEFAULT_ENUM_BUDGET).unwrap_or(false);
                match find_perfect_matching(&h, &budget) {
                    Ok(s) => cells.push(Cell::new(
                        format!("{tag} matching"),
                        s.outcome.is_none() && cert,
                        format!("search {} ({} nodes), certificate {cert}", s.outcome.status(), s.nodes),
                    )),
                    Err(e) => cells.push(err_cell(format!("{tag} matching"), e)),
                }
                for ell in 1..k {
                    match find_ham_cycle(&h, ell, &budget) {
                        Ok(s) => cells.push(Cell::new(
                            format!("{tag} ell={ell} cycle"),
                            s.outcome.is_none() && cert,
                            format!("search {} ({} nodes), certificate {cert}", s.outcome.status(), s.nodes),
                        )),
                        Err(e) => cells.push(err_cell(format!("{tag} ell={ell} cycle"), e)),
                    }
                }
            }
        }
        cells
    })
}

/// `f = 0` families with `ℓ ≥ k/2`: a validated cycle, or a recorded exception.
///
/// Exceptions pass; their detail line starts with `exception:`.
pub fn parity_positive() -> Check {
    timed(3, "f = 0 families carry Hamilton cycles", || {
        let budget = SearchBudget::default();
        let mut cells = Vec::new();
        for (n, k) in SMALL_GRID {
            for spec in hext_specs(n, k, 0) {
                let h = Hypergraph::extremal(&spec);
                for ell in k.div_ceil(2)..k {
                    let label = format!("n={n} k={k} a={} eta={} ell={ell}", spec.a.len(), spec.eta);
                    match find_ham_cycle(&h, ell, &budget) {
                        Ok(s) => match s.outcome.found() {
                            Some(c) => {
                                let ok = validate_cycle(&h, c, true).is_ok();
                                cells.push(Cell::new(label, ok, format!("found, validated {ok}")));
                            }
                            None => cells.push(Cell::new(
                                label,
                                true,
                                format!("exception: search {} after {} nodes", s.outcome.status(), s.nodes),
                            )),
                        },
                        Err(e) => cells.push(err_cell(label, e)),
                    }
                }
            }
        }
        cells
    })
}

/// Closed-form `δ_ℓ` of the extremal families against direct enumeration.
pub fn closed_form_degrees() -> Check {
    timed(4, "closed-form minimum degree", || {
        let mut cells = Vec::new();
        for k in [3u32, 4] {
            for n in k..=12 {
                for ell in 1..k {
                    let mut bad = Vec::new();
                    for a in 0..=n {
                        for eta in 0..2u8 {
                            let spec = ExtremalSpec::with_prefix(n, k, a, eta).expect("valid prefix");
                            let direct = Hypergraph::extremal(&spec).min_ell_degree(ell, DEFAULT_ENUM_BUDGET);
                            let closed = delta_ell_extremal(a, n, k, ell, eta);
                            if direct.as_ref().ok() != closed.as_ref().ok() {
                                bad.push(format!("a={a} eta={eta}: {direct:?} vs {closed:?}"));
                            }
                        }
                    }
                    let detail = if bad.is_empty() { format!("{} specs agree", 2 * (n + 1)) } else { bad.join("; ") };
                    cells.push(Cell::new(format!("n={n} k={k} ell={ell}"), bad.is_empty(), detail));
                }
            }
        }
        cells
    })
}

/// Connector counts on complete and empty graphs.
pub fn connector_counts() -> Check {
    timed(5, "connector counts", || {
        let budget = SearchBudget::default();
        let l = VertexSet::from_slice(&[0, 1]);
        let r = VertexSet::from_slice(&[2]);
        let cases = [
            (Hypergraph::complete(9, 3), 1u128, "complete(9,3)"),
            (Hypergraph::complete(12, 3), 84, "complete(12,3)"),
            (Hypergraph::empty(12, 3), 0, "empty(12,3)"),
        ];
        cases
            .into_iter()
            .map(|(h, want, name)| match h.and_then(|h| count_connectors(&h, &l, &r, &budget, 0)) {
                Ok(c) => Cell::new(name, c.count == want && c.complete, format!("{} (expected {want})", c.count)),
                Err(e) => err_cell(name.to_string(), e),
            })
            .collect()
    })
}

/// Tail and mean of the number of matching edges that land in a random family.
pub fn fk_concentration(seed: u64, trials: u64) -> Check {
    timed(6, "concentration of uniform matchings", || {
        [(60u32, 3u32, 10u32, 2.0f64), (60, 3, 10, 3.0), (100, 4, 10, 2.0)]
            .into_iter()
            .map(|(m, k, t, gamma)| {
                let label = format!("m={m} k={k} t={t} gamma={gamma}");
                let run = random_family(m, k, 0.5, seed)
                    .and_then(|fam| fk_experiment(&fam, t, gamma, trials, seed, DEFAULT_ENUM_BUDGET));
                match run {
                    Ok((r, _)) => Cell::new(
                        label,
                        r.tail_within_bound && r.mean_within_4_sigma,
                        format!(
                            "theta {:.6}, tail {:.6} <= {:.6}, |mean - theta t| {:.6} (sigma {:.6})",
                            r.theta, r.empirical_tail, r.bound, r.expectation_check, r.sigma_hat
                        ),
                    ),
                    Err(e) => err_cell(label, e),
                }
            })
            .collect()
    })
}

/// The extremal family with `count` random edges deleted.
fn perturbed(spec: &ExtremalSpec, count: usize, seed: u64) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = Hypergraph::extremal(spec);
    let mut edges = b.edges(DEFAULT_ENUM_BUDGET).expect("small family");
    edges.shuffle(&mut rng);
    edges.truncate(count);
    b.materialize(DEFAULT_ENUM_BUDGET).and_then(|e| e.edited(Vec::new(), edges)).expect("small family")
}

/// Counting and restriction bounds for goodness on perturbed families.
///
/// Each instance deletes `⌊ε n^k⌋` family edges with `ε = 1/100`. The count
/// bound says at most `ε' n^j` of the `j`-sets fail to be `ε'`-good, with
/// `ε' = √(k^k ε)`. The restriction bound says a set's goodness ratio in
/// `H[U]` is at most its ratio in `H` divided by `c^{k-|S|}`, for `|U| ≥ cn`;
/// it is checked with `c = 9/10` and `|U| = 11`.
pub fn goodness_bounds(seed: u64, instances: u64) -> Check {
    timed(7, "goodness count and restriction bounds", || {
        let (n, k) = (12u32, 3u32);
        let eps = Rational::new(1, 100);
        let c = Rational::new(9, 10);
        let deleted = (eps * Rational::from_integer((n as i128).pow(k))).floor().to_integer() as usize;
        let bound = RootBound::eps_prime(eps, k);
        let mut cells = Vec::new();
        for i in 0..instances {
            let s = seed.wrapping_add(i);
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let spec = ExtremalSpec::with_prefix(n, k, 6, (i % 2) as u8).expect("valid");
            let h = perturbed(&spec, deleted, s);
            for j in 1..=2u32 {
                let mut bad = 0i128;
                for set in subsets_of(&VertexSet::range(n), j as usize) {
                    let g = goodness(&h, &spec, &set, DEFAULT_ENUM_BUDGET).expect("small");
                    if !bound.admits(g.alpha_star) {
                        bad += 1;
                    }
                }
                let limit = Rational::from_integer((n as i128).pow(j));
                let ok = bound.admits_scaled(Rational::from_integer(bad), limit);
                cells.push(Cell::new(
                    format!("seed={s} count j={j}"),
                    ok,
                    format!("{bad} sets not eps'-good, limit {:.3}", bound.to_f64() * (n as f64).powi(j as i32)),
                ));
            }
            // restriction to a random 11-set
            let all: Vec<u32> = (0..n).collect();
            let mut keep: Vec<u32> = all.choose_multiple(&mut rng, 11).copied().collect();
            keep.sort_unstable();
            let u = VertexSet::from_slice(&keep);
            let (sub, table) = h.restrict(&u).expect("subset");
            let sub_spec = spec.restrict(&u);
            let mut inverse = vec![u32::MAX; n as usize];
            for (i, &v) in table.iter().enumerate() {
                inverse[v as usize] = i as u32;
            }
            let mut worst: Option<String> = None;
            for j in 1..=2usize {
                for_each_subset::<()>(&keep, j, |s| {
                    let set = VertexSet::from_slice(s);
                    let outer = goodness(&h, &spec, &set, DEFAULT_ENUM_BUDGET).expect("small").alpha_star;
                    let inner = goodness(&sub, &sub_spec, &set.map(&inverse), DEFAULT_ENUM_BUDGET)
                        .expect("small")
                        .alpha_star;
                    let scale = (0..k as usize - j).fold(Rational::from_integer(1), |acc, _| acc * c);
                    if inner * scale > outer && worst.is_none() {
                        worst = Some(format!("{set}: {inner} in H[U] vs {outer} in H"));
                    }
                    std::ops::ControlFlow::Continue(())
                });
            }
            cells.push(Cell::new(
                format!("seed={s} restriction"),
                worst.is_none(),
                worst.unwrap_or_else(|| "all 1- and 2-subsets of U within bound".into()),
            ));
        }
        cells
    })
}

fn kpartite_ends(f: &KPartiteRestriction, ell: usize) -> (VertexSet, VertexSet) {
    let pick = |ps: &[VertexSet]| VertexSet::from_slice(&ps.iter().map(|p| p.first().unwrap()).collect::<Vec<_>>());
    (pick(&f.parts[..ell]), pick(&f.parts[ell..]))
}

/// Hamilton paths in complete and thinned k-partite boxes.
pub fn kpartite_paths(seed: u64, thinned_runs: u64) -> Check {
    timed(8, "k-partite Hamilton paths", || {
        let cfg = KPathConfig::default();
        let mut cells = Vec::new();
        for k in 2..=4u32 {
            for m in [4u32, 6, 8] {
                let f = KPartiteRestriction::complete(k, m).expect("valid");
                for ell in 1..k {
                    let (l, r) = kpartite_ends(&f, ell as usize);
                    let label = format!("complete k={k} m={m} ell={ell}");
                    cells.push(match build_ham_path_kpartite(&f, ell, &l, &r, seed, &cfg) {
                        Ok(p) => Cell::new(label, validate_path(&f.graph, &p).is_ok(), "validated"),
                        Err(e) => err_cell(label, e),
                    });
                }
            }
        }
        let mut ok = 0;
        let mut failures = Vec::new();
        for i in 0..thinned_runs {
            let s = seed.wrapping_add(i);
            let f = KPartiteRestriction::thinned(3, 24, 0.02, s).expect("valid");
            let (l, r) = kpartite_ends(&f, 1);
            match build_ham_path_kpartite(&f, 1, &l, &r, s, &cfg) {
                Ok(p) if validate_path(&f.graph, &p).is_ok() => ok += 1,
                Ok(_) => failures.push(format!("seed {s}: invalid path")),
                Err(e) => failures.push(format!("seed {s}: {e}")),
            }
        }
        cells.push(Cell::new(
            "thinned k=3 m=24 ell=1 rate=0.02",
            ok == thinned_runs,
            if failures.is_empty() { format!("{ok}/{thinned_runs} seeds") } else { failures.join("; ") },
        ));
        cells
    })
}

/// Greedy tight path length and path cover bounds on random half-density boxes.
pub fn tight_paths(seed: u64, path_runs: u64, cover_runs: u64) -> Check {
    timed(9, "tight paths and path covers", || {
        let mut cells = Vec::new();
        let mut short = Vec::new();
        for i in 0..path_runs {
            let s = seed.wrapping_add(i);
            let f = KPartiteRestriction::thinned(3, 20, 0.5, s).expect("valid");
            let density = f.edges().len() as f64 / 8000.0;
            match greedy_tight_path(&f, density.min(0.5)) {
                Ok(t) if t.is_valid(&f) && t.len() >= 10 && t.meets_target() => {}
                Ok(t) => short.push(format!("seed {s}: {} vertices", t.len())),
                Err(e) => short.push(format!("seed {s}: {e}")),
            }
        }
        cells.push(Cell::new(
            "tight path k=3 m=20 density 0.5",
            short.is_empty(),
            if short.is_empty() { format!("{path_runs} seeds, all >= 10 vertices") } else { short.join("; ") },
        ));
        for i in 0..cover_runs {
            let s = seed.wrapping_add(i);
            let f = KPartiteRestriction::thinned(3, 80, 0.5, s).expect("valid");
            let label = format!("cover seed={s} k=3 m=80 eps=0.1 d=0.5");
            cells.push(match path_cover_tuple(&f, 1, 0.1, 0.5) {
                Ok(c) => {
                    let valid = c.paths.iter().all(|p| validate_path(&f.graph, p).is_ok());
                    Cell::new(
                        label,
                        valid && c.within_bounds(),
                        format!(
                            "{} paths (<= {:.1}), {} uncovered (<= {:.1})",
                            c.paths.len(),
                            c.path_bound,
                            c.uncovered,
                            c.uncovered_bound
                        ),
                    )
                }
                Err(e) => err_cell(label, e),
            });
        }
        cells
    })
}

/// The standard end-to-end stability instance: n = 70, k = 7, ℓ = 4, |A| = 34, η = 1.
pub fn stability_instance() -> (ExtremalSpec, VertexSet, VertexSet) {
    let spec = ExtremalSpec::with_prefix(70, 7, 34, 1).expect("valid");
    let l = VertexSet::from_slice(&[0, 1, 2, 40]);
    let r = VertexSet::from_slice(&[41, 42, 43]);
    (spec, l, r)
}

/// Hamilton paths with prescribed ends in the implicit extremal family and thinned copies.
pub fn stability_pipeline(seed: u64, variants: u64) -> Check {
    timed(10, "stability pipeline at n=70", || {
        let (spec, l, r) = stability_instance();
        let cfg = KPathConfig::default();
        let base = Hypergraph::extremal(&spec);
        let mut graphs = vec![("extremal".to_string(), base.clone(), seed)];
        for i in 0..variants {
            let s = seed.wrapping_add(i);
            graphs.push((format!("thinned 0.5% seed={s}"), base.thinned(0.005, s).expect("valid"), s));
        }
        graphs
            .into_iter()
            .map(|(label, g, s)| match stability_ham_path(&g, &spec, 4, &l, &r, s, &cfg) {
                Ok(rep) => {
                    let ok = validate_path(&g, &rep.path).is_ok()
                        && rep.path.vertex_count() == 70
                        && rep.path.first() == Some(&l)
                        && rep.path.last() == Some(&r)
                        && !g.is_explicit();
                    Cell::new(
                        label,
                        ok,
                        format!(
                            "plan case {} x={} y={} |E|={}, {} round(s)",
                            rep.plan.shape.case_id, rep.plan.shape.x, rep.plan.shape.y, rep.plan.shape.e_len, rep.attempts
                        ),
                    )
                }
                Err(e) => err_cell(label, e),
            })
            .collect()
    })
}

/// Parity repair on planted wrong-parity pairs, and the obstruction without them.
pub fn parity_repair(seed: u64, planted: u64) -> Check {
    timed(11, "parity repair", || {
        let spec = ExtremalSpec::with_prefix(30, 5, 15, 1).expect("valid");
        let cfg = ParityConfig::default();
        let mut cells = Vec::new();
        for i in 0..planted {
            let s = seed.wrapping_add(i);
            let label = format!("planted seed={s}");
            let run = plant_wrong_parity_pair(&spec, 3, s).and_then(|h| parity_fix(&h, &spec, 3, &cfg).map(|r| (h, r)));
            cells.push(match run {
                Ok((h, res)) => {
                    let ok = validate_path(&h, &res.path).is_ok()
                        && res.residual.f == 0
                        && res.audit.wrong_parity_in_matching == 1;
                    Cell::new(
                        label,
                        ok,
                        format!(
                            "{}, residual f={}, wrong-parity edges {}",
                            res.case.tag(),
                            res.residual.f,
                            res.audit.wrong_parity_in_matching
                        ),
                    )
                }
                Err(e) => err_cell(label, e),
            });
        }
        for (a, eta) in [(15u32, 1u8), (14, 0), (13, 1)] {
            let spec = ExtremalSpec::with_prefix(30, 5, a, eta).expect("valid");
            let label = format!("unplanted a={a} eta={eta}");
            if spec.f_parity().ok() != Some(1) {
                continue;
            }
            let h = Hypergraph::extremal(&spec);
            cells.push(match parity_fix(&h, &spec, 3, &cfg) {
                Err(Error::ParityObstruction(m)) => Cell::new(label, true, format!("parity obstruction: {m}")),
                Err(e) => err_cell(label, e),
                Ok(r) => Cell::new(label, false, format!("unexpected repair ({})", r.case.tag())),
            });
        }
        cells
    })
}

/// Reruns every randomized check with the same seed and compares the JSON.
pub fn reproducibility(seed: u64, scale: Scale) -> Check {
    timed(12, "reproducibility", || {
        type Run = Box<dyn Fn() -> Check>;
        let runs: Vec<(&str, Run)> = vec![
            ("concentration", Box::new(move || fk_concentration(seed, scale.trials))),
            ("goodness", Box::new(move || goodness_bounds(seed, scale.goodness))),
            ("k-partite", Box::new(move || kpartite_paths(seed, scale.thinned))),
            ("tight paths", Box::new(move || tight_paths(seed, scale.paths, scale.covers))),
            ("stability", Box::new(move || stability_pipeline(seed, scale.variants))),
            ("parity", Box::new(move || parity_repair(seed, scale.planted))),
        ];
        runs.into_iter()
            .map(|(name, run)| {
                let a = serde_json::to_string(&run()).expect("serializable");
                let b = serde_json::to_string(&run()).expect("serializable");
                Cell::new(name, a == b, format!("{} bytes", a.len()))
            })
            .collect()
    })
}

/// Run sizes for the randomized checks.
#[derive(Clone, Copy, Debug)]
pub struct Scale {
    pub trials: u64,
    pub goodness: u64,
    pub thinned: u64,
    pub paths: u64,
    pub covers: u64,
    pub variants: u64,
    pub planted: u64,
}

impl Scale {
    pub const FULL: Scale =
        Scale { trials: 100_000, goodness: 20, thinned: 100, paths: 50, covers: 20, variants: 20, planted: 20 };
    pub const QUICK: Scale =
        Scale { trials: 10_000, goodness: 4, thinned: 10, paths: 10, covers: 3, variants: 3, planted: 4 };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Thresholds,
    ExtremalNonham,
    Parity,
    Engine,
    Concentration,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "thresholds" => Suite::Thresholds,
            "extremal-nonham" => Suite::ExtremalNonham,
            "parity" => Suite::Parity,
            "engine" => Suite::Engine,
            "concentration" => Suite::Concentration,
            other => return Err(Error::Precondition(format!("unknown suite {other:?}"))),
        })
    }
}

/// Runs every check that belongs to `suite`.
pub fn run_suite(suite: Suite, seed: u64, scale: Scale) -> Vec<Check> {
    match suite {
        Suite::Thresholds => vec![codegree_grid(), closed_form_degrees()],
        Suite::ExtremalNonham => vec![extremal_nonham(), parity_positive(), connector_counts()],
        Suite::Parity => vec![goodness_bounds(seed, scale.goodness), parity_repair(seed, scale.planted)],
        Suite::Engine => vec![
            kpartite_paths(seed, scale.thinned),
            tight_paths(seed, scale.paths, scale.covers),
            stability_pipeline(seed, scale.variants),
        ],
        Suite::Concentration => vec![fk_concentration(seed, scale.trials)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        for s in ["thresholds", "extremal-nonham", "parity", "engine", "concentration"] {
            assert!(s.parse::<Suite>().is_ok());
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn quick_checks_pass() {
        for c in [codegree_grid(), connector_counts(), goodness_bounds(1, 2), parity_repair(1, 2)] {
            assert!(c.pass(), "{}: {:?}", c.name, c.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn reports_omit_timings() {
        let c = connector_counts();
        let json = serde_json::to_string(&c).unwrap();
        assert!(!json.contains("millis"));
    }
}
