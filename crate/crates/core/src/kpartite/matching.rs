//! Bipartite perfect matchings with Hall-deficiency certificates.

use std::collections::VecDeque;

use crate::error::{Error, HallWitness, Result};

/// A bipartite graph given by left-side adjacency lists into `0..right`.
#[derive(Debug, Clone)]
pub struct Bipartite {
    pub right: usize,
    pub adj: Vec<Vec<usize>>,
}

impl Bipartite {
    pub fn new(right: usize, adj: Vec<Vec<usize>>) -> Self {
        Bipartite { right, adj }
    }

    pub fn left(&self) -> usize {
        self.adj.len()
    }
}

/// Maximum matching by Hopcroft–Karp. Returns `mate[left] = Some(right)`.
///
/// Adjacency lists are scanned in their given order, so the result is
/// deterministic for a fixed input.
pub fn hopcroft_karp(g: &Bipartite) -> Vec<Option<usize>> {
    const INF: usize = usize::MAX;
    let n = g.left();
    let mut mate_l: Vec<Option<usize>> = vec![None; n];
    let mut mate_r: Vec<Option<usize>> = vec![None; g.right];
    let mut dist = vec![INF; n];

    loop {
        // layered BFS from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..n {
            if mate_l[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &g.adj[u] {
                match mate_r[v] {
                    None => found = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut progressed = false;
        for u in 0..n {
            if mate_l[u].is_none() && augment(u, g, &mut mate_l, &mut mate_r, &mut dist) {
                progressed = true;
            }
        }
        if !progressed {
            break;
        }
    }
    mate_l
}

fn augment(
    u: usize,
    g: &Bipartite,
    mate_l: &mut [Option<usize>],
    mate_r: &mut [Option<usize>],
    dist: &mut [usize],
) -> bool {
    for &v in &g.adj[u] {
        let ok = match mate_r[v] {
            None => true,
            Some(w) => dist[w] == dist[u].wrapping_add(1) && augment(w, g, mate_l, mate_r, dist),
        };
        if ok {
            mate_l[u] = Some(v);
            mate_r[v] = Some(u);
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// A perfect matching of the left side, or a Hall witness.
///
/// The witness is the set of left vertices reachable from an unmatched left
/// vertex by alternating paths; its neighbourhood is exactly the matched
/// partners, one fewer than its size.
pub fn left_perfect_matching(g: &Bipartite, name: &str) -> Result<Vec<usize>> {
    let mate = hopcroft_karp(g);
    let Some(free) = mate.iter().position(Option::is_none) else {
        return Ok(mate.into_iter().map(|m| m.expect("all matched")).collect());
    };
    let mut mate_r = vec![None; g.right];
    for (u, m) in mate.iter().enumerate() {
        if let Some(v) = m {
            mate_r[*v] = Some(u);
        }
    }
    let mut seen_l = vec![false; g.left()];
    let mut seen_r = vec![false; g.right];
    let mut queue = VecDeque::from([free]);
    seen_l[free] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &g.adj[u] {
            if seen_r[v] {
                continue;
            }
            seen_r[v] = true;
            // maximality guarantees every reached right vertex is matched
            if let Some(w) = mate_r[v] {
                if !seen_l[w] {
                    seen_l[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let deficient = (0..g.left()).filter(|&u| seen_l[u]).collect();
    let neighbours = (0..g.right).filter(|&v| seen_r[v]).collect();
    Err(Error::HallFailure(HallWitness { graph: name.to_string(), deficient, neighbours }))
}

/// Checks a claimed Hall witness against the graph.
pub fn witness_holds(g: &Bipartite, w: &HallWitness) -> bool {
    w.deficient.len() > w.neighbours.len()
        && w.deficient.iter().all(|&u| g.adj[u].iter().all(|v| w.neighbours.contains(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_matches() {
        let g = Bipartite::new(4, vec![(0..4).collect(); 4]);
        let m = left_perfect_matching(&g, "K").unwrap();
        let mut seen = m.clone();
        seen.sort();
        assert_eq!(seen, vec![0, 1, 2, 3]);
    }

    #[test]
    fn needs_augmenting_paths() {
        // greedy on list order would match 0-0 and strand vertex 1
        let g = Bipartite::new(3, vec![vec![0, 1], vec![0], vec![1, 2]]);
        let m = left_perfect_matching(&g, "G").unwrap();
        assert_eq!(m[1], 0);
        assert_eq!(m[0], 1);
        assert_eq!(m[2], 2);
    }

    #[test]
    fn deficiency_is_certified() {
        let g = Bipartite::new(3, vec![vec![0], vec![0], vec![0, 1, 2]]);
        let Err(Error::HallFailure(w)) = left_perfect_matching(&g, "G") else { panic!() };
        assert!(witness_holds(&g, &w));
        assert_eq!(w.neighbours, vec![0]);
    }

    #[test]
    fn isolated_vertex_witness() {
        let g = Bipartite::new(2, vec![vec![0, 1], vec![]]);
        let Err(Error::HallFailure(w)) = left_perfect_matching(&g, "G") else { panic!() };
        assert_eq!(w.deficient, vec![1]);
        assert!(w.neighbours.is_empty());
    }

    #[test]
    fn matches_brute_force_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.random_range(1..6usize);
            let adj: Vec<Vec<usize>> =
                (0..n).map(|_| (0..n).filter(|_| rng.random_bool(0.4)).collect()).collect();
            let g = Bipartite::new(n, adj.clone());
            // brute force over permutations
            let mut perm: Vec<usize> = (0..n).collect();
            let mut exists = false;
            permute(&mut perm, 0, &mut |p| {
                if (0..n).all(|u| adj[u].contains(&p[u])) {
                    exists = true;
                }
            });
            match left_perfect_matching(&g, "R") {
                Ok(m) => {
                    assert!(exists);
                    assert!((0..n).all(|u| adj[u].contains(&m[u])));
                }
                Err(Error::HallFailure(w)) => {
                    assert!(!exists);
                    assert!(witness_holds(&g, &w));
                }
                Err(e) => panic!("{e}"),
            }
        }
    }

    fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
        if i == p.len() {
            f(p);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            permute(p, i + 1, f);
            p.swap(i, j);
        }
    }
}
