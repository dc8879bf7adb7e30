//! Canonical labeling by color refinement plus backtracking over
//! individualized vertices, with orbit pruning from discovered automorphisms.
//!
//! Two graphs receive equal labels iff they are isomorphic. Labels are the
//! graph6 encoding of the canonically relabeled graph; they are opaque and
//! stable within a release only.

use crate::graph::Graph;
use crate::graph6::graph6_encode;

/// Canonical relabeling of `g`: returns the relabeled graph and the
/// permutation `perm` with `perm[old] = new`.
pub fn canonical_form(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (Graph::empty(0), Vec::new());
    }
    let mut search = Search {
        g,
        n,
        best: None,
        best_perm: Vec::new(),
        gens: Vec::new(),
    };
    let colors = refine(g, vec![0; n]);
    search.descend(colors, &mut Vec::new());
    let perm = search.best_perm;
    let mut out = Graph::empty(n);
    for (u, v) in g.edges() {
        out.add_edge(perm[u], perm[v]);
    }
    (out, perm)
}

/// Canonical label: equal for two graphs iff they are isomorphic.
pub fn canonical_label(g: &Graph) -> Vec<u8> {
    graph6_encode(&canonical_form(g).0).into_bytes()
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n() && g.m() == h.m() && canonical_label(g) == canonical_label(h)
}

/// Stable color refinement: repeatedly split color classes by the multiset
/// of neighbor colors. New color ids are assigned by sorted signature, so
/// the result is isomorphism-invariant.
fn refine(g: &Graph, mut colors: Vec<usize>) -> Vec<usize> {
    let n = g.n();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nc: Vec<usize> = g.row(v).iter().map(|w| colors[w]).collect();
                nc.sort_unstable();
                (colors[v], nc, v)
            })
            .collect();
        sigs.sort();
        let mut new_colors = vec![0; n];
        let mut classes = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                classes += 1;
            }
            new_colors[sigs[i].2] = classes;
        }
        let stable = new_colors.iter().zip(&colors).all(|(a, b)| a == b);
        colors = new_colors;
        if stable || classes + 1 == n {
            return colors;
        }
    }
}

fn count_classes(colors: &[usize]) -> usize {
    colors.iter().max().map_or(0, |m| m + 1)
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    best: Option<Vec<u64>>,
    best_perm: Vec<usize>,
    gens: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn descend(&mut self, colors: Vec<usize>, prefix: &mut Vec<usize>) {
        let n = self.n;
        if count_classes(&colors) == n {
            self.leaf(&colors);
            return;
        }
        // target cell: smallest non-singleton, ties by lowest color
        let mut cell_sizes = vec![0usize; count_classes(&colors)];
        for &c in &colors {
            cell_sizes[c] += 1;
        }
        let target = cell_sizes
            .iter()
            .enumerate()
            .filter(|(_, &s)| s > 1)
            .min_by_key(|(c, &s)| (s, *c))
            .map(|(c, _)| c)
            .expect("non-discrete partition has a non-singleton cell");
        let candidates: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if self.in_explored_orbit(v, &explored, prefix) {
                continue;
            }
            explored.push(v);
            // individualize v within its cell
            let mut next = colors.clone();
            for u in 0..n {
                if next[u] > target || (next[u] == target && u != v) {
                    next[u] += 1;
                }
            }
            let next = refine(self.g, next);
            prefix.push(v);
            self.descend(next, prefix);
            prefix.pop();
        }
    }

    /// True if some automorphism fixing every prefix vertex maps `v` into
    /// the orbit of an already explored candidate.
    fn in_explored_orbit(&self, v: usize, explored: &[usize], prefix: &[usize]) -> bool {
        if explored.is_empty() || self.gens.is_empty() {
            return false;
        }
        let applicable: Vec<&Vec<usize>> = self
            .gens
            .iter()
            .filter(|p| prefix.iter().all(|&x| p[x] == x))
            .collect();
        if applicable.is_empty() {
            return false;
        }
        // orbit of v under the applicable generators
        let mut orbit = vec![v];
        let mut seen = vec![false; self.n];
        seen[v] = true;
        let mut i = 0;
        while i < orbit.len() {
            let u = orbit[i];
            i += 1;
            for p in &applicable {
                let w = p[u];
                if !seen[w] {
                    seen[w] = true;
                    orbit.push(w);
                }
            }
        }
        explored.iter().any(|&e| seen[e])
    }

    fn leaf(&mut self, colors: &[usize]) {
        let n = self.n;
        let mut perm = vec![0usize; n]; // old -> new (= color, already 0..n-1)
        for v in 0..n {
            perm[v] = colors[v];
        }
        let s = self.adjacency_bits(&perm);
        match &self.best {
            None => {
                self.best = Some(s);
                self.best_perm = perm;
            }
            Some(best) => {
                if s < *best {
                    self.best = Some(s);
                    self.best_perm = perm;
                } else if s == *best {
                    // perm and best_perm induce the same labeled graph:
                    // a(u) = best_perm^{-1}(perm(u)) is an automorphism
                    let mut inv = vec![0usize; n];
                    for (old, &new) in self.best_perm.iter().enumerate() {
                        inv[new] = old;
                    }
                    let auto: Vec<usize> = (0..n).map(|u| inv[perm[u]]).collect();
                    if auto.iter().enumerate().any(|(u, &a)| a != u) {
                        self.gens.push(auto);
                    }
                }
            }
        }
    }

    /// Upper-triangle adjacency bits of the relabeled graph, packed row-major.
    fn adjacency_bits(&self, perm: &[usize]) -> Vec<u64> {
        let n = self.n;
        let nbits = n * (n - 1) / 2;
        let mut bits = vec![0u64; (nbits + 63) / 64];
        let mut inv = vec![0usize; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut idx = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.g.has_edge(inv[i], inv[j]) {
                    bits[idx >> 6] |= 1u64 << (63 - (idx & 63));
                }
                idx += 1;
            }
        }
        bits
    }
}
