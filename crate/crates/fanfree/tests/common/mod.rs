//! Shared helpers for the integration suites.
#![allow(dead_code)]

use fanfree::{subgraph_contains, Graph};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi G(n, p).
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid edge list")
}

/// Random connected graph: a uniform random recursive tree plus extra
/// edges with probability `p`.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    assert!(n >= 2);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !edges.contains(&(u, v)) && rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("valid edge list")
}

/// Isomorphism test that bypasses canonical labeling: two graphs with the
/// same order and size are isomorphic iff either embeds in the other as a
/// subgraph (the embedding is then a bijection using up every edge).
pub fn iso_by_containment(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.m() == h.m() && subgraph_contains(g, h).is_some()
}

/// Visits every m-subset of {0, …, k−1} in lexicographic order.
fn for_each_combination(k: usize, m: usize, f: &mut dyn FnMut(&[usize])) {
    if m > k {
        return;
    }
    let mut idx: Vec<usize> = (0..m).collect();
    loop {
        f(&idx);
        // advance to the next combination
        let mut i = m;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + k - m {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..m {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Brute-force enumeration oracle: one representative per isomorphism
/// class of graphs with exactly m edges and no isolated vertices, built by
/// scanning every labeled edge set on every feasible order and deduplicating
/// with `iso_by_containment`. Exponential; only usable for m <= 5.
pub fn brute_force_class_reps(m: usize) -> Vec<Graph> {
    assert!(m >= 1 && m <= 5, "oracle is exponential");
    let mut reps: Vec<(Vec<usize>, Graph)> = Vec::new();
    for n in 2..=(2 * m) {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                pairs.push((u, v));
            }
        }
        for_each_combination(pairs.len(), m, &mut |idx| {
            let mut deg = vec![0usize; n];
            for &i in idx {
                deg[pairs[i].0] += 1;
                deg[pairs[i].1] += 1;
            }
            if deg.iter().any(|&d| d == 0) {
                return;
            }
            let edges: Vec<(usize, usize)> = idx.iter().map(|&i| pairs[i]).collect();
            let g = Graph::from_edges(n, &edges).expect("valid edge list");
            let mut ds = deg;
            ds.sort_unstable();
            if !reps
                .iter()
                .any(|(d, h)| *d == ds && iso_by_containment(&g, h))
            {
                reps.push((ds, g));
            }
        });
    }
    reps.into_iter().map(|(_, g)| g).collect()
}
