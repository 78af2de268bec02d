//! Binomial coefficients and lexicographic subset enumeration.

use std::ops::ControlFlow;

use crate::vset::VertexSet;

/// `C(n, r)` with the empty-sum convention: zero when `r < 0` or `r > n`.
pub fn binom(n: i64, r: i64) -> u128 {
    if r < 0 || n < 0 || r > n {
        return 0;
    }
    let r = r.min(n - r) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Visits every `r`-subset of `items` (assumed sorted) in lexicographic order.
///
/// The visitor receives the chosen elements; returning `ControlFlow::Break`
/// stops the walk and the break value is handed back.
pub fn for_each_subset<B>(
    items: &[u32],
    r: usize,
    mut visit: impl FnMut(&[u32]) -> ControlFlow<B>,
) -> Option<B> {
    let n = items.len();
    if r > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut buf: Vec<u32> = idx.iter().map(|&i| items[i]).collect();
    loop {
        if let ControlFlow::Break(b) = visit(&buf) {
            return Some(b);
        }
        // advance to the next index combination
        let mut i = r;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != i + n - r {
                break;
            }
            if i == 0 {
                return None;
            }
        }
        idx[i] += 1;
        buf[i] = items[idx[i]];
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
            buf[j] = items[idx[j]];
        }
    }
}

/// Collects every `r`-subset of `pool` as vertex sets, lexicographically.
pub fn subsets_of(pool: &VertexSet, r: usize) -> Vec<VertexSet> {
    let items = pool.to_vec();
    let mut out = Vec::new();
    for_each_subset::<()>(&items, r, |s| {
        out.push(VertexSet::from_slice(s));
        ControlFlow::Continue(())
    });
    out
}

/// Iterates over the non-empty subsets of a small set.
pub fn nonempty_subsets(set: &VertexSet) -> impl Iterator<Item = VertexSet> + '_ {
    let members = set.to_vec();
    assert!(members.len() < 32, "subset expansion limited to 31 members");
    (1u32..(1 << members.len())).map(move |mask| {
        members
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| *v)
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(69, 6), 119_877_472);
        assert_eq!(binom(3, 4), 0);
        assert_eq!(binom(3, -1), 0);
        assert_eq!(binom(0, 0), 1);
        assert_eq!(binom(70, 7), 1_198_774_720);
    }

    #[test]
    fn subset_walk_is_lexicographic_and_complete() {
        let items = [1u32, 4, 6, 9, 10];
        for r in 0..=6 {
            let mut seen = Vec::new();
            for_each_subset::<()>(&items, r, |s| {
                seen.push(s.to_vec());
                ControlFlow::Continue(())
            });
            assert_eq!(seen.len() as u128, binom(5, r as i64));
            let mut sorted = seen.clone();
            sorted.sort();
            assert_eq!(seen, sorted);
        }
    }

    #[test]
    fn subset_walk_breaks_early() {
        let hit = for_each_subset(&[0, 1, 2, 3], 2, |s| {
            if s == [1, 3] {
                ControlFlow::Break(7)
            } else {
                ControlFlow::Continue(())
            }
        });
        assert_eq!(hit, Some(7));
    }

    #[test]
    fn nonempty_subset_count() {
        let s = VertexSet::from_slice(&[2, 5, 7]);
        assert_eq!(nonempty_subsets(&s).count(), 7);
    }
}
