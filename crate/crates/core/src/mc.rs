//! Seeded Monte Carlo experiments: random matchings against a fixed k-set
//! family, binomial tails, and small random reservoirs of connectors.
//!
//! Every trial draws from its own ChaCha8 stream `(seed, trial)`, so results
//! do not depend on the number of worker threads.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::combin::{binom, for_each_subset};
use crate::cycle::Matching;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::search::{decide_connector, SearchBudget};
use crate::vset::VertexSet;

/// The generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A uniformly random set of `t` disjoint k-subsets of `0..m`.
pub fn sample_uniform_matching<R: Rng + ?Sized>(m: u32, k: u32, t: u32, rng: &mut R) -> Result<Matching> {
    let need = t as u64 * k as u64;
    if need > m as u64 {
        return Err(Error::Size(format!("a {t}-matching of {k}-sets needs m >= {need}, got {m}")));
    }
    let picked = index::sample(rng, m as usize, need as usize).into_vec();
    let edges = picked
        .chunks(k.max(1) as usize)
        .filter(|_| k > 0)
        .map(|c| c.iter().map(|&v| v as u32).collect())
        .collect();
    Ok(Matching::new(edges))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcentrationResult {
    pub m: u32,
    pub k: u32,
    pub t: u32,
    pub family_size: u128,
    pub theta: f64,
    pub gamma: f64,
    pub trials: u64,
    pub seed: u64,
    /// Fraction of trials with `|η − θt| ≥ 2γ√t`.
    pub empirical_tail: f64,
    /// `2·exp(−γ²/2)`.
    pub bound: f64,
    pub mean_eta: f64,
    /// `|mean(η) − θt|`.
    pub expectation_check: f64,
    /// Sample standard deviation of η.
    pub sigma_hat: f64,
    /// `expectation_check ≤ 4σ̂/√trials`.
    pub mean_within_4_sigma: bool,
    pub tail_within_bound: bool,
}

/// Counts how many blocks of a uniform `t`-matching land in `family`, over many trials.
///
/// Returns the summary and the per-trial counts η in trial order.
pub fn fk_experiment(family: &Hypergraph, t: u32, gamma: f64, trials: u64, seed: u64, budget: u64) -> Result<(ConcentrationResult, Vec<u32>)> {
    let (m, k) = (family.n(), family.k());
    if trials == 0 {
        return Err(Error::Precondition("at least one trial".into()));
    }
    if (t as u64) * (k as u64) > m as u64 {
        return Err(Error::Size(format!("a {t}-matching of {k}-sets needs m >= {}", t * k)));
    }
    let family_size = family.edge_count(budget)?;
    let theta = family_size as f64 / binom(m as i64, k as i64) as f64;
    let run = |trial: u64| -> u32 {
        let mut rng = trial_rng(seed, trial);
        let matching = sample_uniform_matching(m, k, t, &mut rng).expect("checked above");
        matching.edges.iter().filter(|e| family.contains_unchecked(e)).count() as u32
    };
    #[cfg(feature = "parallel")]
    let etas: Vec<u32> = {
        use rayon::prelude::*;
        (0..trials).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let etas: Vec<u32> = (0..trials).map(run).collect();

    let centre = theta * t as f64;
    let radius = 2.0 * gamma * (t as f64).sqrt();
    let tail = etas.iter().filter(|&&e| (e as f64 - centre).abs() >= radius).count();
    let mean = etas.iter().map(|&e| e as f64).sum::<f64>() / trials as f64;
    let var = if trials > 1 {
        etas.iter().map(|&e| (e as f64 - mean).powi(2)).sum::<f64>() / (trials - 1) as f64
    } else {
        0.0
    };
    let sigma_hat = var.sqrt();
    let empirical_tail = tail as f64 / trials as f64;
    let bound = 2.0 * (-gamma * gamma / 2.0).exp();
    let expectation_check = (mean - centre).abs();
    // a degenerate family gives σ̂ = 0; allow rounding noise there
    let slack = (4.0 * sigma_hat / (trials as f64).sqrt()).max(1e-9);
    Ok((
        ConcentrationResult {
            m,
            k,
            t,
            family_size,
            theta,
            gamma,
            trials,
            seed,
            empirical_tail,
            bound,
            mean_eta: mean,
            expectation_check,
            sigma_hat,
            mean_within_4_sigma: expectation_check <= slack,
            tail_within_bound: empirical_tail <= bound,
        },
        etas,
    ))
}

/// A seeded family containing each k-subset of `0..m` with probability `p`.
///
/// Stays implicit: membership is a hash test, so large `m` costs no memory.
pub fn random_family(m: u32, k: u32, p: f64, seed: u64) -> Result<Hypergraph> {
    Hypergraph::complete(m, k)?.thinned(1.0 - p, seed)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChernoffResult {
    pub n: u64,
    pub p: f64,
    pub a: f64,
    pub trials: u64,
    pub seed: u64,
    /// Fraction of draws with `|X − np| ≥ a·np`.
    pub empirical: f64,
    /// `2·exp(−a²np/3)`.
    pub bound: f64,
    pub slack: f64,
    pub holds: bool,
}

pub fn chernoff_experiment(n: u64, p: f64, a: f64, trials: u64, seed: u64) -> Result<ChernoffResult> {
    if trials == 0 || !(0.0..=1.0).contains(&p) || !(0.0..=1.5).contains(&a) {
        return Err(Error::Precondition(format!("need trials > 0, p in [0,1], a in [0,3/2]; got {trials}, {p}, {a}")));
    }
    let dist = Binomial::new(n, p).map_err(|e| Error::Precondition(e.to_string()))?;
    let np = n as f64 * p;
    let hit = |trial: u64| {
        let x = dist.sample(&mut trial_rng(seed, trial)) as f64;
        (x - np).abs() >= a * np
    };
    #[cfg(feature = "parallel")]
    let count = {
        use rayon::prelude::*;
        (0..trials).into_par_iter().filter(|&i| hit(i)).count()
    };
    #[cfg(not(feature = "parallel"))]
    let count = (0..trials).filter(|&i| hit(i)).count();
    let empirical = count as f64 / trials as f64;
    let bound = 2.0 * (-a * a * np / 3.0).exp();
    Ok(ChernoffResult { n, p, a, trials, seed, empirical, bound, slack: bound - empirical, holds: empirical <= bound })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReservoirReport {
    pub ell: u32,
    pub seed: u64,
    pub connectors: Vec<VertexSet>,
    /// Least number of reservoir members connecting an end pair outside the reservoir.
    pub min_coverage: u64,
    pub pairs_examined: u64,
    /// True when every end pair was scanned; false when pairs were sampled.
    pub exhaustive: bool,
}

/// Samples `m_target` disjoint 2k-sets and reports how well they connect end pairs.
///
/// End pairs are an ℓ-set `L` and a disjoint (k−ℓ)-set `R` avoiding the
/// reservoir. When there are more than `pair_samples` of them, that many are
/// drawn at random instead.
pub fn reservoir_build(
    h: &Hypergraph,
    ell: u32,
    m_target: u32,
    seed: u64,
    pair_samples: u64,
    budget: &SearchBudget,
) -> Result<ReservoirReport> {
    let (n, k) = (h.n(), h.k());
    if ell == 0 || ell >= k {
        return Err(Error::Size(format!("need 1 <= ell <= k-1, got {ell}")));
    }
    if (m_target as u64) * 2 * k as u64 > n as u64 {
        return Err(Error::Size(format!("{m_target} disjoint {}-sets do not fit in {n} vertices", 2 * k)));
    }
    let mut rng = trial_rng(seed, 0);
    let connectors = sample_uniform_matching(n, 2 * k, m_target, &mut rng)?.edges;
    let used = connectors.iter().fold(VertexSet::new(), |acc, c| acc.union(c));
    let free: Vec<u32> = h.vertices().difference(&used).to_vec();
    let total_pairs = binom(free.len() as i64, ell as i64) * binom(free.len() as i64 - ell as i64, (k - ell) as i64);
    let exhaustive = total_pairs <= pair_samples as u128;
    let mut pairs = Vec::new();
    if exhaustive {
        for_each_subset::<()>(&free, ell as usize, |l| {
            let l = VertexSet::from_slice(l);
            let rest: Vec<u32> = free.iter().copied().filter(|v| !l.contains(*v)).collect();
            for_each_subset::<()>(&rest, (k - ell) as usize, |r| {
                pairs.push((l.clone(), VertexSet::from_slice(r)));
                std::ops::ControlFlow::Continue(())
            });
            std::ops::ControlFlow::Continue(())
        });
    } else {
        for _ in 0..pair_samples {
            let mut pool = free.clone();
            pool.shuffle(&mut rng);
            pairs.push((VertexSet::from_slice(&pool[..ell as usize]), VertexSet::from_slice(&pool[ell as usize..k as usize])));
        }
    }
    let cost = pairs.len() as u128 * connectors.len() as u128;
    if cost > budget.max_nodes as u128 {
        return Err(Error::BudgetExceeded { limit: budget.max_nodes });
    }
    let coverage = |(l, r): &(VertexSet, VertexSet)| {
        connectors.iter().filter(|c| decide_connector(h, l, r, c).is_some()).count() as u64
    };
    #[cfg(feature = "parallel")]
    let min_coverage = {
        use rayon::prelude::*;
        pairs.par_iter().map(coverage).min()
    };
    #[cfg(not(feature = "parallel"))]
    let min_coverage = pairs.iter().map(coverage).min();
    Ok(ReservoirReport {
        ell,
        seed,
        connectors,
        min_coverage: min_coverage.unwrap_or(0),
        pairs_examined: pairs.len() as u64,
        exhaustive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::DEFAULT_ENUM_BUDGET as B;
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    use std::collections::HashMap;

    #[test]
    fn matching_shapes() {
        let mut rng = trial_rng(1, 0);
        let full = sample_uniform_matching(12, 3, 4, &mut rng).unwrap();
        assert_eq!(full.vertices(), VertexSet::range(12));
        assert!(sample_uniform_matching(12, 3, 0, &mut rng).unwrap().edges.is_empty());
        assert!(sample_uniform_matching(11, 3, 4, &mut rng).is_err());
        let m = sample_uniform_matching(20, 4, 3, &mut rng).unwrap();
        assert_eq!(m.edges.len(), 3);
        assert_eq!(m.vertices().len(), 12);
    }

    #[test]
    fn single_set_inclusion_probability() {
        let target = VertexSet::from_slice(&[1, 4, 6]);
        let trials = 1_000_000u64;
        let hits = (0..trials)
            .filter(|&i| sample_uniform_matching(8, 3, 1, &mut trial_rng(3, i)).unwrap().edges[0] == target)
            .count() as f64;
        let p = 1.0 / 56.0;
        let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
        assert!((hits - trials as f64 * p).abs() <= 3.0 * sigma, "{hits}");
    }

    #[test]
    fn matchings_are_uniform_by_chi_square() {
        // 2-matchings of pairs in 0..8: C(8,2)·C(6,2)/2 = 210 outcomes
        let trials = 1_000_000u64;
        let mut counts: HashMap<Vec<VertexSet>, u64> = HashMap::new();
        for i in 0..trials {
            *counts.entry(sample_uniform_matching(8, 2, 2, &mut trial_rng(11, i)).unwrap().edges).or_default() += 1;
        }
        assert_eq!(counts.len(), 210);
        let expected = trials as f64 / 210.0;
        let stat: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        let p_value = 1.0 - ChiSquared::new(209.0).unwrap().cdf(stat);
        assert!(p_value > 0.001, "chi2 = {stat}, p = {p_value}");
    }

    #[test]
    fn fk_trivial_families() {
        let all = Hypergraph::complete(12, 3).unwrap();
        let (r, etas) = fk_experiment(&all, 4, 1.0, 500, 2, B).unwrap();
        assert!(etas.iter().all(|&e| e == 4));
        assert_eq!(r.empirical_tail, 0.0);
        let none = Hypergraph::empty(12, 3).unwrap();
        let (r, etas) = fk_experiment(&none, 4, 1.0, 500, 2, B).unwrap();
        assert!(etas.iter().all(|&e| e == 0));
        assert_eq!((r.empirical_tail, r.theta), (0.0, 0.0));
        assert!(r.mean_within_4_sigma);
    }

    #[test]
    fn fk_random_half() {
        let g = random_family(60, 3, 0.5, 7).unwrap();
        let (r, _) = fk_experiment(&g, 10, 2.0, 20_000, 7, B).unwrap();
        assert!((r.theta - 0.5).abs() < 0.02);
        assert!(r.tail_within_bound && r.mean_within_4_sigma, "{r:?}");
        assert!(r.empirical_tail <= 0.2707);
    }

    #[test]
    fn fk_is_reproducible() {
        let g = random_family(30, 3, 0.4, 1).unwrap();
        let a = fk_experiment(&g, 5, 1.5, 2000, 9, B).unwrap();
        let b = fk_experiment(&g, 5, 1.5, 2000, 9, B).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.1, fk_experiment(&g, 5, 1.5, 2000, 10, B).unwrap().1);
    }

    #[test]
    fn chernoff_grid() {
        for (n, p, a) in [(100, 0.3, 0.5), (1000, 0.5, 0.2)] {
            let r = chernoff_experiment(n, p, a, 50_000, 5).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn reservoir_examples() {
        let budget = SearchBudget::default();
        let k12 = Hypergraph::complete(12, 3).unwrap();
        let r = reservoir_build(&k12, 2, 1, 4, 1_000_000, &budget).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.min_coverage, 1);
        assert_eq!(r.pairs_examined, 15 * 4);
        let empty = Hypergraph::empty(12, 3).unwrap();
        assert_eq!(reservoir_build(&empty, 2, 1, 4, 1_000_000, &budget).unwrap().min_coverage, 0);
        assert!(reservoir_build(&k12, 2, 3, 4, 1_000_000, &budget).is_err());
    }
}
