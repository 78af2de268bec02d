//! Hamilton paths in graphs close to a parity-type extremal family: plan two
//! monochromatic boxes, build a path in each, and splice them between the
//! prescribed ends.

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::kpath::{build_blocks, for_each_transversal, KPathConfig};
use super::plan::{assign_parts, e_sizes, plan_shape, PartitionPlan};
use super::Family;
use crate::cycle::{validate_path, SegPath};
use crate::error::{construction, Error, Result};
use crate::extremal::ExtremalSpec;
use crate::goodness::RootBound;
use crate::hypergraph::Hypergraph;
use crate::vset::VertexSet;
use crate::Rational;

#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    pub path: SegPath,
    pub plan: PartitionPlan,
    /// Rounds of E / bridge selection used.
    pub attempts: usize,
}

const ROUNDS: usize = 16;

/// A Hamilton (ℓ,k−ℓ)-path of `g` from `l` to `r`, for `g` close to the
/// family of `spec` with `f = 0`. Only membership queries touch `g`.
pub fn stability_ham_path(
    g: &Hypergraph,
    spec: &ExtremalSpec,
    ell: u32,
    l: &VertexSet,
    r: &VertexSet,
    seed: u64,
    cfg: &KPathConfig,
) -> Result<StabilityReport> {
    if spec.f_parity()? != 0 {
        return Err(Error::ParityObstruction(format!(
            "f = 1 for |A| = {}, eta = {}: no Hamilton path exists in the extremal family",
            spec.a.len(),
            spec.eta
        )));
    }
    if g.n() != spec.n || g.k() != spec.k {
        return Err(Error::Size("hypergraph and extremal spec disagree on (n, k)".into()));
    }
    if spec.k < 5 {
        return Err(Error::Unsupported(format!("the box splice needs k >= 5, got {}", spec.k)));
    }
    let (n, k, ell_u) = (spec.n as usize, spec.k as usize, ell as usize);
    if l.len() != ell_u || r.len() != k - ell_u || !l.is_disjoint(r) {
        return Err(Error::Size("ends must be disjoint of sizes ell and k - ell".into()));
    }
    if !spec.contains(&l.union(r)) {
        return Err(Error::Precondition("L ∪ R must lie in the extremal family".into()));
    }
    if n % k != 0 {
        return Err(Error::Size(format!("n={n} not divisible by k={k}")));
    }
    let m = n / k - 1;
    let lr = l.union(r);
    let a = spec.a.len() - spec.a.intersection_len(&lr);
    let shape = plan_shape(k, ell_u, m, a, spec.eta, spec.eta_of(l), None)
        .map_err(|e| construction("plan", e.to_string()))?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fam = |e: &VertexSet| g.contains(e);
    let bound = RootBound::alpha_prime(cfg.alpha, spec.k);
    let mut last_err = construction("plan", "no rounds attempted");
    for round in 0..ROUNDS {
        let plan = match choose_e(g, spec, l, r, &shape, &mut rng) {
            Ok(p) => p,
            Err(e) => {
                last_err = e;
                continue;
            }
        };
        match attempt(&fam, spec, l, r, &plan, bound, seed, round as u64, cfg, &mut rng) {
            Ok(blocks) => {
                let path = SegPath::new(ell, blocks);
                validate_path(g, &path).map_err(|v| construction("validate", format!("{v:?}")))?;
                if path.vertex_count() != n {
                    return Err(construction("validate", "spliced path is not spanning"));
                }
                return Ok(StabilityReport { path, plan, attempts: round + 1 });
            }
            Err(e) => last_err = e,
        }
    }
    Err(last_err)
}

/// Picks E's vertices so that its internal edges lie in `g`, then assigns parts.
fn choose_e(
    g: &Hypergraph,
    spec: &ExtremalSpec,
    l: &VertexSet,
    r: &VertexSet,
    shape: &super::PlanShape,
    rng: &mut ChaCha8Rng,
) -> Result<PartitionPlan> {
    if shape.e_len == 0 {
        return assign_parts(spec, l, r, shape, None);
    }
    let rest = VertexSet::range(spec.n).difference(&l.union(r));
    let a_pool = rest.intersection(&spec.a).to_vec();
    let b_pool = rest.difference(&spec.a).to_vec();
    let sizes = e_sizes(shape.k, shape.ell, shape.e_len);
    for _ in 0..256 {
        let a_pick: Vec<u32> = a_pool.choose_multiple(rng, shape.e_a).copied().collect();
        let b_pick: Vec<u32> = b_pool.choose_multiple(rng, shape.e_len - shape.e_a).copied().collect();
        let (mut ai, mut bi) = (0, 0);
        let mut blocks = Vec::new();
        for (sz, ca) in sizes.iter().zip(&shape.e_block_a) {
            let mut blk = VertexSet::from_slice(&a_pick[ai..ai + ca]);
            blk.union_with(&VertexSet::from_slice(&b_pick[bi..bi + sz - ca]));
            ai += ca;
            bi += sz - ca;
            blocks.push(blk);
        }
        if blocks.windows(2).all(|w| g.contains(&w[0].union(&w[1]))) {
            return assign_parts(spec, l, r, shape, Some(blocks));
        }
    }
    Err(construction("connecting path", "no E with all internal edges present"))
}

fn box_good(fam: &Family<'_>, parts: &[Vec<u32>], touched: &[usize], j: &VertexSet, bound: RootBound) -> bool {
    let others: Vec<Vec<u32>> =
        (0..parts.len()).filter(|i| !touched.contains(i)).map(|i| parts[i].clone()).collect();
    let (mut total, mut missing) = (0i128, 0i128);
    for_each_transversal::<()>(&others, |c| {
        total += 1;
        missing += i128::from(!fam(&c.union(j)));
        std::ops::ControlFlow::Continue(())
    });
    total == 0 || bound.admits(Rational::new(missing, total))
}

/// A transversal of `pools` passing `pred`, preferring box-good ones.
fn bridge(
    fam: &Family<'_>,
    parts: &[Vec<u32>],
    touched: &[usize],
    bound: RootBound,
    rng: &mut ChaCha8Rng,
    pred: impl Fn(&VertexSet) -> bool,
) -> Option<VertexSet> {
    let pools: Vec<Vec<u32>> = touched.iter().map(|&i| parts[i].clone()).collect();
    for _ in 0..256 {
        let c = VertexSet::from_slice(&pools.iter().map(|p| *p.choose(rng).unwrap()).collect::<Vec<_>>());
        if pred(&c) && box_good(fam, parts, touched, &c, bound) {
            return Some(c);
        }
    }
    for_each_transversal(&pools, |c| {
        if pred(c) { std::ops::ControlFlow::Break(c.clone()) } else { std::ops::ControlFlow::Continue(()) }
    })
}

#[allow(clippy::too_many_arguments)]
fn attempt(
    fam: &Family<'_>,
    spec: &ExtremalSpec,
    l: &VertexSet,
    r: &VertexSet,
    plan: &PartitionPlan,
    bound: RootBound,
    seed: u64,
    round: u64,
    cfg: &KPathConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<VertexSet>> {
    let ell = plan.shape.ell;
    let k = spec.k as usize;
    let xp: Vec<Vec<u32>> = plan.x_parts.iter().map(VertexSet::to_vec).collect();
    let yp: Vec<Vec<u32>> = plan.y_parts.iter().map(VertexSet::to_vec).collect();
    let lside: Vec<usize> = (0..ell).collect();
    let rside: Vec<usize> = (ell..k).collect();
    let fail = |what: &str| construction("bridge", format!("no {what}"));

    let r1 = bridge(fam, &xp, &rside, bound, rng, |c| fam(&l.union(c))).ok_or_else(|| fail("R1*"))?;
    let l2 = bridge(fam, &yp, &lside, bound, rng, |c| fam(&c.union(r))).ok_or_else(|| fail("L2*"))?;
    let (l1, r2) = match (plan.e_blocks.first(), plan.e_blocks.last()) {
        (Some(e_first), Some(e_last)) => {
            let l1 = bridge(fam, &xp, &lside, bound, rng, |c| fam(&c.union(e_first))).ok_or_else(|| fail("L1*"))?;
            let r2 = bridge(fam, &yp, &rside, bound, rng, |c| fam(&e_last.union(c))).ok_or_else(|| fail("R2*"))?;
            (l1, r2)
        }
        _ => {
            let mut found = None;
            for _ in 0..64 {
                let Some(l1) = bridge(fam, &xp, &lside, bound, rng, |_| true) else { break };
                if let Some(r2) = bridge(fam, &yp, &rside, bound, rng, |c| fam(&l1.union(c))) {
                    found = Some((l1, r2));
                    break;
                }
            }
            found.ok_or_else(|| fail("L1*, R2* pair"))?
        }
    };

    let mut rx = ChaCha8Rng::seed_from_u64(seed);
    rx.set_stream(2 * round + 1);
    let mut ry = ChaCha8Rng::seed_from_u64(seed);
    ry.set_stream(2 * round + 2);
    let build_x = || build_blocks(fam, &xp, ell, &l1, &r1, cfg, &mut rx);
    let build_y = || build_blocks(fam, &yp, ell, &l2, &r2, cfg, &mut ry);
    #[cfg(feature = "parallel")]
    let (px, py) = rayon::join(build_x, build_y);
    #[cfg(not(feature = "parallel"))]
    let (px, py) = {
        let (mut bx, mut by) = (build_x, build_y);
        (bx(), by())
    };
    let (px, py) = (px.map_err(|e| tag("X box", e))?, py.map_err(|e| tag("Y box", e))?);

    let mut seq = vec![l.clone()];
    seq.extend(px.into_iter().rev());
    seq.extend(plan.e_blocks.iter().cloned());
    seq.extend(py.into_iter().rev());
    seq.push(r.clone());
    Ok(seq)
}

fn tag(stage: &str, e: Error) -> Error {
    match e {
        Error::Construction { stage: s, msg } => construction(&format!("{stage}/{s}"), msg),
        other => construction(stage, other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (ExtremalSpec, VertexSet, VertexSet) {
        let spec = ExtremalSpec::with_prefix(70, 7, 34, 1).unwrap();
        assert_eq!(spec.f_parity().unwrap(), 0);
        // L has 3 A-vertices and R none: |A ∩ (L ∪ R)| = 3 is odd
        let l = VertexSet::from_slice(&[0, 1, 2, 40]);
        let r = VertexSet::from_slice(&[41, 42, 43]);
        assert!(spec.contains(&l.union(&r)));
        (spec, l, r)
    }

    #[test]
    fn implicit_extremal_family() {
        let (spec, l, r) = setup();
        let g = Hypergraph::extremal(&spec);
        let rep = stability_ham_path(&g, &spec, 4, &l, &r, 1, &KPathConfig::default()).unwrap();
        assert_eq!(rep.path.vertex_count(), 70);
        assert_eq!(rep.path.first(), Some(&l));
        assert_eq!(rep.path.last(), Some(&r));
        assert!(!g.is_explicit());
    }

    #[test]
    fn thinned_variants() {
        let (spec, l, r) = setup();
        for seed in 0..3 {
            let g = Hypergraph::extremal(&spec).thinned(0.005, seed).unwrap();
            let rep = stability_ham_path(&g, &spec, 4, &l, &r, seed, &KPathConfig::default()).unwrap();
            validate_path(&g, &rep.path).unwrap();
        }
    }

    #[test]
    fn odd_f_is_obstructed() {
        let spec = ExtremalSpec::with_prefix(70, 7, 35, 1).unwrap();
        assert_eq!(spec.f_parity().unwrap(), 1);
        let g = Hypergraph::extremal(&spec);
        let l = VertexSet::from_slice(&[0, 1, 2, 40]);
        let r = VertexSet::from_slice(&[41, 42, 43]);
        assert!(matches!(
            stability_ham_path(&g, &spec, 4, &l, &r, 0, &KPathConfig::default()),
            Err(Error::ParityObstruction(_))
        ));
    }
}
