//! Partition planning for the stability case: split `V \ (L ∪ R)` into two
//! monochromatic k-partite boxes plus an optional short connecting path.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::ExtremalSpec;
use crate::vset::VertexSet;

/// Sizes and colour pattern of a plan, before any vertex is assigned.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanShape {
    pub k: usize,
    pub ell: usize,
    pub m: usize,
    /// `|A \ (L ∪ R)|`.
    pub a: usize,
    pub eta: u8,
    pub eta_l: u8,
    pub k1: usize,
    pub s: usize,
    pub case_id: u8,
    /// Part size of the X box and the Y box.
    pub x: usize,
    pub y: usize,
    /// Number of X (resp. Y) parts inside A.
    pub px: usize,
    pub py: usize,
    /// Number of A-parts among the `k - ell` R-side parts of each box.
    pub rx_a: usize,
    pub ry_a: usize,
    /// Vertices on the connecting path E: 0, k or 2k.
    pub e_len: usize,
    pub e_a: usize,
    /// A-count of each E block in traversal order (R, L) or (R, L, R, L).
    pub e_block_a: Vec<usize>,
    /// True when the closed-form E-free sizes were used.
    pub closed_form: bool,
}

/// A fully assigned plan. Box parts are ordered `[L-side parts | R-side parts]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionPlan {
    pub shape: PlanShape,
    pub x_parts: Vec<VertexSet>,
    pub y_parts: Vec<VertexSet>,
    /// Blocks of E in traversal order; empty when E is.
    pub e_blocks: Vec<VertexSet>,
}

fn case_id(k1: usize, eta: u8, s: usize, m: usize) -> u8 {
    let even = (k1 + eta as usize) % 2 == 0;
    match (even, s % 4 == (2 * m) % 4, s % 4 == (3 * m) % 4) {
        (true, true, _) => 1,
        (true, false, _) => 2,
        (false, _, true) => 3,
        (false, _, false) => 4,
    }
}

/// Splits `a` A-vertices among blocks of the given sizes with prescribed parities.
fn split_blocks(a: usize, sizes: &[usize], parities: &[u8]) -> Option<Vec<usize>> {
    fn go(a: usize, sizes: &[usize], parities: &[u8], acc: &mut Vec<usize>) -> bool {
        let Some((&sz, rest)) = sizes.split_first() else { return a == 0 };
        for c in (0..=sz.min(a)).filter(|c| c % 2 == parities[0] as usize) {
            acc.push(c);
            if go(a - c, rest, &parities[1..], acc) {
                return true;
            }
            acc.pop();
        }
        false
    }
    let mut acc = Vec::new();
    go(a, sizes, parities, &mut acc).then_some(acc)
}

/// An R-side A-count `r` for a box with `p` A-parts: `r ≡ target`, the
/// remaining `p - r` A-parts fit on the L side.
fn r_side(p: usize, k: usize, ell: usize, target: u8) -> Option<usize> {
    (0..=p.min(k - ell)).find(|&r| r % 2 == target as usize && p - r <= ell)
}

/// Block sizes of E in traversal order.
pub(crate) fn e_sizes(k: usize, ell: usize, e_len: usize) -> Vec<usize> {
    match e_len / k {
        0 => vec![],
        1 => vec![k - ell, ell],
        _ => vec![k - ell, ell, k - ell, ell],
    }
}

/// Solves for a plan shape.
///
/// `m` is `|V \ (L ∪ R)| / k` and `a` the number of A-vertices there. With no
/// hint, `k1 = floor(a / m)`.
pub fn plan_shape(
    k: usize,
    ell: usize,
    m: usize,
    a: usize,
    eta: u8,
    eta_l: u8,
    k1_hint: Option<usize>,
) -> Result<PlanShape> {
    if k < 3 || ell == 0 || ell >= k || m == 0 || a > k * m {
        return Err(Error::Size(format!("k={k} ell={ell} m={m} a={a}")));
    }
    let k1 = k1_hint.unwrap_or(a / m);
    let s = a.checked_sub(k1 * m).ok_or_else(|| Error::Precondition(format!("k1={k1}: k1 * m exceeds a={a}")))?;
    if (eta as usize * m + a) % 2 != 0 {
        return Err(Error::ParityInfeasible(format!(
            "{a} A-vertices cannot be split into edges of A-parity {eta} over m={m}"
        )));
    }
    let case_id = case_id(k1, eta, s, m);
    let t_r = (eta + 2 - eta_l) % 2;

    // E-free closed forms for cases 1 and 3
    let closed = match case_id {
        1 if k1 >= 2 && 2 * m >= s => Some((k1 - 2, k1 + 2, (2 * m - s) / 4, (2 * m + s) / 4)),
        3 if k1 >= 1 => Some((k1 - 1, k1 + 3, (3 * m).saturating_sub(s) / 4, (m + s) / 4)),
        _ => None,
    };
    if let Some((px, py, x, y)) = closed {
        let balanced = px * x + py * y == a && x + y == m && x > 0 && y > 0 && py <= k;
        if balanced {
            if let (Some(rx_a), Some(ry_a)) = (r_side(px, k, ell, t_r), r_side(py, k, ell, t_r)) {
                return Ok(PlanShape {
                    k, ell, m, a, eta, eta_l, k1, s, case_id, x, y, px, py, rx_a, ry_a,
                    e_len: 0, e_a: 0, e_block_a: vec![], closed_form: true,
                });
            }
        }
    }

    // exact search over E length, E's A-count and the two colour patterns
    let mut best: Option<(PlanShape, (usize, usize))> = None;
    for e_blocks in 0..=2usize {
        let e_len = e_blocks * k;
        if e_len / k >= m {
            break;
        }
        let rest = m - e_blocks;
        let sizes = e_sizes(k, ell, e_len);
        let pars: Vec<u8> = (0..sizes.len()).map(|i| if i % 2 == 0 { t_r } else { eta_l }).collect();
        for e_a in 0..=e_len.min(a) {
            if e_len - e_a > k * m - a {
                continue;
            }
            let Some(e_block_a) = split_blocks(e_a, &sizes, &pars) else { continue };
            for px in (0..=k).filter(|p| p % 2 == eta as usize) {
                for py in (0..=k).filter(|p| p % 2 == eta as usize) {
                    let (Some(rx_a), Some(ry_a)) = (r_side(px, k, ell, t_r), r_side(py, k, ell, t_r)) else {
                        continue;
                    };
                    for x in 1..rest {
                        let y = rest - x;
                        if px * x + py * y + e_a != a {
                            continue;
                        }
                        let key = (x.min(y), usize::MAX - e_len);
                        if best.as_ref().is_some_and(|(_, b)| *b >= key) {
                            continue;
                        }
                        let shape = PlanShape {
                            k, ell, m, a, eta, eta_l, k1, s, case_id, x, y, px, py, rx_a, ry_a,
                            e_len, e_a, e_block_a: e_block_a.clone(), closed_form: false,
                        };
                        best = Some((shape, key));
                    }
                }
            }
        }
    }
    best.map(|(s, _)| s).ok_or_else(|| {
        Error::NoIntegralSolution(format!("k={k} m={m} a={a} eta={eta}: no balanced box sizes"))
    })
}

fn take(pool: &mut std::vec::IntoIter<u32>, count: usize) -> Result<VertexSet> {
    let vs: Vec<u32> = pool.by_ref().take(count).collect();
    if vs.len() < count {
        return Err(Error::Size("colour class exhausted while assigning parts".into()));
    }
    Ok(VertexSet::from_slice(&vs))
}

/// Assigns vertices to a shape. `e_blocks`, when given, fixes E; otherwise E
/// takes the lowest labels of each colour.
pub fn assign_parts(
    spec: &ExtremalSpec,
    l: &VertexSet,
    r: &VertexSet,
    shape: &PlanShape,
    e_blocks: Option<Vec<VertexSet>>,
) -> Result<PartitionPlan> {
    let used = l.union(r);
    let rest = VertexSet::range(spec.n).difference(&used);
    let a_rest = rest.intersection(&spec.a);
    let b_rest = rest.difference(&spec.a);

    let e_blocks = match e_blocks {
        Some(b) => b,
        None => {
            let mut a_pool = a_rest.to_vec().into_iter();
            let mut b_pool = b_rest.to_vec().into_iter();
            let sizes = e_sizes(shape.k, shape.ell, shape.e_len);
            let mut out = Vec::new();
            for (sz, ca) in sizes.iter().zip(&shape.e_block_a) {
                let mut blk = take(&mut a_pool, *ca)?;
                blk.union_with(&take(&mut b_pool, sz - ca)?);
                out.push(blk);
            }
            out
        }
    };
    let mut e_all = VertexSet::new();
    for b in &e_blocks {
        e_all.union_with(b);
    }
    let mut a_pool = a_rest.difference(&e_all).to_vec().into_iter();
    let mut b_pool = b_rest.difference(&e_all).to_vec().into_iter();
    let (k, ell) = (shape.k, shape.ell);
    let mut boxed = |size: usize, p: usize, r_a: usize| -> Result<Vec<VertexSet>> {
        let l_a = p - r_a;
        let mut parts = Vec::with_capacity(k);
        for i in 0..ell {
            parts.push(if i < l_a { take(&mut a_pool, size)? } else { take(&mut b_pool, size)? });
        }
        for i in 0..k - ell {
            parts.push(if i < r_a { take(&mut a_pool, size)? } else { take(&mut b_pool, size)? });
        }
        Ok(parts)
    };
    let x_parts = boxed(shape.x, shape.px, shape.rx_a)?;
    let y_parts = boxed(shape.y, shape.py, shape.ry_a)?;
    let plan = PartitionPlan { shape: shape.clone(), x_parts, y_parts, e_blocks };
    check_plan(spec, l, r, &plan)?;
    Ok(plan)
}

/// Solves and assigns in one step.
pub fn plan_partition(
    spec: &ExtremalSpec,
    l: &VertexSet,
    r: &VertexSet,
    k1_hint: Option<usize>,
) -> Result<PartitionPlan> {
    let (n, k) = (spec.n as usize, spec.k as usize);
    let ell = l.len();
    if ell == 0 || ell >= k || l.len() + r.len() != k || !l.is_disjoint(r) {
        return Err(Error::Size("L and R must be disjoint with |L| + |R| = k".into()));
    }
    if n % k != 0 {
        return Err(Error::Size(format!("n={n} not divisible by k={k}")));
    }
    let m = n / k - 1;
    let a = spec.a.len() - spec.a.intersection_len(&l.union(r));
    let shape = plan_shape(k, ell, m, a, spec.eta, spec.eta_of(l), k1_hint)?;
    assign_parts(spec, l, r, &shape, None)
}

/// Validates every plan invariant, including an edge-parity sample of 1000
/// box edges per box.
pub fn check_plan(spec: &ExtremalSpec, l: &VertexSet, r: &VertexSet, plan: &PartitionPlan) -> Result<()> {
    let bad = |msg: String| Err(Error::Precondition(format!("plan invariant: {msg}")));
    let sh = &plan.shape;
    let mut cover = l.union(r);
    let mut total = cover.len();
    for (parts, size) in [(&plan.x_parts, sh.x), (&plan.y_parts, sh.y)] {
        if parts.len() != sh.k {
            return bad(format!("{} parts", parts.len()));
        }
        for p in parts {
            if p.len() != size {
                return bad(format!("part of size {} (expected {size})", p.len()));
            }
            let ca = p.intersection_len(&spec.a);
            if ca != 0 && ca != p.len() {
                return bad("part mixes A and B".into());
            }
        }
    }
    for p in plan.x_parts.iter().chain(&plan.y_parts).chain(&plan.e_blocks) {
        total += p.len();
        cover.union_with(p);
    }
    if total != spec.n as usize || cover.len() != total {
        return bad("parts, E, L and R do not partition the vertex set".into());
    }
    let sizes = e_sizes(sh.k, sh.ell, sh.e_len);
    if plan.e_blocks.iter().map(VertexSet::len).ne(sizes.iter().copied()) {
        return bad("E block sizes".into());
    }
    let eta_l = spec.eta_of(l);
    // E follows an L-type block, which has the parity of L
    let mut prev = l.clone();
    for (i, b) in plan.e_blocks.iter().enumerate() {
        if !spec.contains(&prev.union(b)) {
            return bad(format!("E block {i} does not extend the path inside B"));
        }
        prev = b.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9);
    for parts in [&plan.x_parts, &plan.y_parts] {
        let pools: Vec<Vec<u32>> = parts.iter().map(VertexSet::to_vec).collect();
        for _ in 0..1000 {
            let e: Vec<u32> = pools.iter().map(|p| p[rng.random_range(0..p.len())]).collect();
            if !spec.contains(&VertexSet::from_slice(&e)) {
                return bad("sampled box edge outside B".into());
            }
        }
        let lside: Vec<u32> = pools[..sh.ell].iter().map(|p| p[0]).collect();
        let rside: Vec<u32> = pools[sh.ell..].iter().map(|p| p[0]).collect();
        if spec.eta_of(&VertexSet::from_slice(&lside)) != eta_l
            || !spec.contains(&l.union(&VertexSet::from_slice(&rside)))
        {
            return bad("box sides have the wrong parity".into());
        }
    }
    Ok(())
}
