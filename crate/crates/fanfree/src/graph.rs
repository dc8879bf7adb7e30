//! Simple undirected graphs with bitset adjacency rows, the named graph
//! families, and the edge-shift rewiring move.
//!
//! Vertex numbering of every constructor is fixed: path/cycle vertices are
//! consecutive starting at 0, an apex (fan, F3) comes last, and in joins the
//! left operand's vertices come first.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Simple undirected graph. Immutable through the public API: rewiring
/// operations return a new graph.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            m: 0,
            adj: (0..n).map(|_| VertexSet::new(n)).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Adjacency row of `v`. Panics on out-of-range (internal hot path);
    /// `neighbors` is the checked variant.
    #[inline]
    pub fn row(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> Result<&VertexSet> {
        if v >= self.n {
            return Err(Error::InvalidParameter(format!(
                "vertex {v} out of range for n={}",
                self.n
            )));
        }
        Ok(&self.adj[v])
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.m += 1;
        }
        self.debug_check();
    }

    pub(crate) fn remove_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if self.adj[u].contains(v) {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
            self.m -= 1;
        }
        self.debug_check();
    }

    #[inline]
    fn debug_check(&self) {
        #[cfg(debug_assertions)]
        {
            let mut total = 0;
            for u in 0..self.n {
                debug_assert!(!self.adj[u].contains(u), "self-loop at {u}");
                for v in self.adj[u].iter() {
                    debug_assert!(self.adj[v].contains(u), "asymmetric edge {u}-{v}");
                }
                total += self.adj[u].len();
            }
            debug_assert_eq!(total, 2 * self.m, "cached m out of sync");
        }
    }

    pub fn adding_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u >= self.n || v >= self.n || u == v {
            return Err(Error::InvalidParameter(format!("bad edge ({u},{v})")));
        }
        let mut g = self.clone();
        g.add_edge(u, v);
        Ok(g)
    }

    pub fn removing_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if u >= self.n || v >= self.n || !self.has_edge(u, v) {
            return Err(Error::InvalidParameter(format!("no edge ({u},{v})")));
        }
        let mut g = self.clone();
        g.remove_edge(u, v);
        Ok(g)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|r| r.len()).collect()
    }

    /// Induced subgraph `G[s]`. Returns the subgraph and the map from new
    /// vertex index to old.
    pub fn induced(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if s.universe() != self.n {
            return Err(Error::InvalidParameter(format!(
                "vertex set over {} vertices, graph has {}",
                s.universe(),
                self.n
            )));
        }
        let old: Vec<usize> = s.to_vec();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let mut g = Graph::empty(old.len());
        for (i, &v) in old.iter().enumerate() {
            for w in self.adj[v].intersection(s).iter() {
                if new_of[w] > i {
                    g.add_edge(i, new_of[w]);
                }
            }
        }
        Ok((g, old))
    }

    /// Connected components as vertex sets, ordered by minimum vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            let mut stack = vec![start];
            comp.insert(start);
            seen.insert(start);
            while let Some(v) = stack.pop() {
                for w in self.adj[v].iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Removes all degree-0 vertices and renumbers. Returns the stripped
    /// graph and the map from new index to old.
    pub fn strip_isolated(&self) -> (Graph, Vec<usize>) {
        let keep = VertexSet::from_iter(self.n, (0..self.n).filter(|&v| !self.adj[v].is_empty()));
        self.induced(&keep).expect("keep set is well-formed")
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|r| r.len()).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    /// Number of edges with both ends in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        s.iter()
            .map(|v| self.adj[v].intersection(s).len())
            .sum::<usize>()
            / 2
    }

    /// Number of edges with one end in `r` and the other in `s` (disjoint sets).
    pub fn edges_between(&self, r: &VertexSet, s: &VertexSet) -> usize {
        debug_assert!(r.is_disjoint(s));
        r.iter().map(|v| self.adj[v].intersection(s).len()).sum()
    }
}

/// Join `G ∨ H`: disjoint copies plus all edges between them. `g`'s vertices
/// come first.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let mut out = union(g, h);
    for u in 0..g.n {
        for v in 0..h.n {
            out.add_edge(u, g.n + v);
        }
    }
    out
}

/// Disjoint union `G ∪ H`; `g`'s vertices come first.
pub fn union(g: &Graph, h: &Graph) -> Graph {
    let mut out = Graph::empty(g.n + h.n);
    for (u, v) in g.edges() {
        out.add_edge(u, v);
    }
    for (u, v) in h.edges() {
        out.add_edge(g.n + u, g.n + v);
    }
    out
}

/// The named graph families.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FamilySpec {
    /// K_n
    Complete(usize),
    /// P_n, vertices 0..n consecutive along the path
    Path(usize),
    /// C_n
    Cycle(usize),
    /// K_{a,b}, first class 0..a, second a..a+b
    CompleteBipartite(usize, usize),
    /// Fan H_order = K_1 ∨ P_{order-1}; path vertices 0..order-1, apex last
    Fan(usize),
    /// K_k ∨ (m/k − (k−1)/2) K_1 of size exactly m; clique vertices first
    ExtremalJoin { k: usize, m: usize },
    /// 6-cycle 0..6 plus vertex 6 adjacent to the adjacent pair {0,1}
    C6Triangle,
    /// Three triangles sharing one vertex: K_1 ∨ 3K_2, pairs (0,1),(2,3),(4,5), apex 6
    F3,
}

pub fn build_family(spec: &FamilySpec) -> Result<Graph> {
    match *spec {
        FamilySpec::Complete(n) => {
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    g.add_edge(u, v);
                }
            }
            Ok(g)
        }
        FamilySpec::Path(n) => {
            if n < 1 {
                return Err(Error::InvalidParameter("path order must be >= 1".into()));
            }
            let mut g = Graph::empty(n);
            for v in 1..n {
                g.add_edge(v - 1, v);
            }
            Ok(g)
        }
        FamilySpec::Cycle(n) => {
            if n < 3 {
                return Err(Error::InvalidParameter("cycle order must be >= 3".into()));
            }
            let mut g = build_family(&FamilySpec::Path(n))?;
            g.add_edge(n - 1, 0);
            Ok(g)
        }
        FamilySpec::CompleteBipartite(a, b) => {
            if a < 1 || b < 1 {
                return Err(Error::InvalidParameter(
                    "bipartite classes must be nonempty".into(),
                ));
            }
            let mut g = Graph::empty(a + b);
            for u in 0..a {
                for v in 0..b {
                    g.add_edge(u, a + v);
                }
            }
            Ok(g)
        }
        FamilySpec::Fan(order) => {
            if order < 2 {
                return Err(Error::InvalidParameter(format!(
                    "fan order must be >= 2, got {order}"
                )));
            }
            let path = build_family(&FamilySpec::Path(order - 1))?;
            // path first, apex last
            Ok(join(&path, &Graph::empty(1)))
        }
        FamilySpec::ExtremalJoin { k, m } => build_extremal(k, m),
        FamilySpec::C6Triangle => {
            let mut g = build_family(&FamilySpec::Cycle(6))?;
            g = union(&g, &Graph::empty(1));
            g.add_edge(6, 0);
            g.add_edge(6, 1);
            Ok(g)
        }
        FamilySpec::F3 => {
            let k2 = build_family(&FamilySpec::Complete(2))?;
            let three = union(&union(&k2, &k2), &k2);
            Ok(join(&three, &Graph::empty(1)))
        }
    }
}

/// K_k ∨ s·K_1 with s = m/k − (k−1)/2, the conjectured extremal graph of
/// size m. Clique vertices 0..k, independent vertices after.
pub fn build_extremal(k: usize, m: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    // s = m/k - (k-1)/2 must be a positive integer: 2m - k(k-1) = 2ks
    let kk = (k * k).saturating_sub(k); // k(k-1)
    if 2 * m <= kk {
        return Err(Error::InvalidParameter(format!(
            "m/{k} - ({k}-1)/2 must be positive: m = {m} is too small"
        )));
    }
    let num = 2 * m - kk;
    if num % (2 * k) != 0 {
        return Err(Error::InvalidParameter(format!(
            "m/{k} - ({k}-1)/2 is not an integer for m = {m}"
        )));
    }
    let s = num / (2 * k);
    let clique = build_family(&FamilySpec::Complete(k))?;
    let g = join(&clique, &Graph::empty(s));
    debug_assert_eq!(g.m(), m);
    Ok(g)
}

/// The Kelmans edge shift: replace the edges {v w | w ∈ s} by {u w | w ∈ s}.
/// Requires u ≠ v, u ∉ s and s ⊆ N(v) \ N(u). Preserves the edge count.
pub fn kelmans_shift(g: &Graph, u: usize, v: usize, s: &VertexSet) -> Result<Graph> {
    if u >= g.n() || v >= g.n() {
        return Err(Error::Move(format!("vertex {} out of range", u.max(v))));
    }
    if u == v {
        return Err(Error::Move(format!("u and v must differ, both are {u}")));
    }
    if s.contains(u) {
        return Err(Error::Move(format!("shift set contains u = {u}")));
    }
    for w in s.iter() {
        if !g.has_edge(v, w) {
            return Err(Error::Move(format!("vertex {w} in shift set is not a neighbor of v = {v}")));
        }
        if g.has_edge(u, w) {
            return Err(Error::Move(format!("vertex {w} in shift set is already a neighbor of u = {u}")));
        }
    }
    let mut out = g.clone();
    for w in s.iter() {
        out.remove_edge(v, w);
        out.add_edge(u, w);
    }
    debug_assert_eq!(out.m(), g.m());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_examples() {
        // fan(3) = K1 ∨ P2 is a triangle
        let f3 = build_family(&FamilySpec::Fan(3)).unwrap();
        assert_eq!((f3.n(), f3.m()), (3, 3));
        // H7 has 7 vertices, 5 path edges + 6 apex edges
        let h7 = build_family(&FamilySpec::Fan(7)).unwrap();
        assert_eq!((h7.n(), h7.m()), (7, 11));
        assert_eq!(h7.degree(6).unwrap(), 6); // apex last
        // fan(t+1) has t+1 vertices and 2t-1 edges
        for t in 2..=30 {
            let f = build_family(&FamilySpec::Fan(t + 1)).unwrap();
            assert_eq!((f.n(), f.m()), (t + 1, 2 * t - 1));
        }
        assert!(build_family(&FamilySpec::Fan(1)).is_err());
    }

    #[test]
    fn f3_and_c6_triangle() {
        let f3 = build_family(&FamilySpec::F3).unwrap();
        assert_eq!((f3.n(), f3.m()), (7, 9));
        assert_eq!(f3.degree(6).unwrap(), 6);
        let c6d = build_family(&FamilySpec::C6Triangle).unwrap();
        assert_eq!((c6d.n(), c6d.m()), (7, 8));
    }

    #[test]
    fn extremal_join() {
        let g = build_extremal(3, 33).unwrap();
        assert_eq!((g.n(), g.m()), (13, 33));
        let g = build_extremal(2, 11).unwrap();
        assert_eq!((g.n(), g.m()), (7, 11));
        assert!(build_extremal(3, 7).is_err());
        assert!(build_extremal(3, 3).is_err()); // s = 0 not positive
    }

    #[test]
    fn join_union_sizes() {
        let k1 = build_family(&FamilySpec::Complete(1)).unwrap();
        let p2 = build_family(&FamilySpec::Path(2)).unwrap();
        let k3 = join(&k1, &p2);
        assert_eq!((k3.n(), k3.m()), (3, 3));
        let tri = build_family(&FamilySpec::Complete(3)).unwrap();
        let g = join(&tri, &Graph::empty(10));
        assert_eq!(g.m(), 33);
        let k2 = build_family(&FamilySpec::Complete(2)).unwrap();
        let two_k2 = union(&k2, &k2);
        assert_eq!((two_k2.n(), two_k2.m()), (4, 2));
        assert_eq!(two_k2.components().len(), 2);
    }

    #[test]
    fn kelmans_preserves_size() {
        // star K_{1,3}: center 0, leaves 1..4; shift the edge 0-1 from 0 to 1?
        // P4 example from the contract: a-b-c-d = 0-1-2-3, u=1, v=2, s={3}
        let p4 = build_family(&FamilySpec::Path(4)).unwrap();
        let s = VertexSet::from_iter(4, [3]);
        let g = kelmans_shift(&p4, 1, 2, &s).unwrap();
        assert_eq!(g.m(), 3);
        assert!(g.has_edge(1, 3) && !g.has_edge(2, 3));
        // precondition violations
        assert!(kelmans_shift(&p4, 2, 2, &s).is_err());
        let bad = VertexSet::from_iter(4, [0]); // 0 not adjacent to v=2
        assert!(kelmans_shift(&p4, 1, 2, &bad).is_err());
        let bad_u = VertexSet::from_iter(4, [1]);
        assert!(kelmans_shift(&p4, 1, 2, &bad_u).is_err());
    }

    #[test]
    fn structural_queries() {
        let h7 = build_family(&FamilySpec::Fan(7)).unwrap();
        assert_eq!(h7.degree(6).unwrap(), 6);
        assert!(h7.degree(7).is_err());
        let k3 = build_family(&FamilySpec::Complete(3)).unwrap();
        let noisy = union(&k3, &Graph::empty(5));
        let (stripped, map) = noisy.strip_isolated();
        assert_eq!((stripped.n(), stripped.m()), (3, 3));
        assert_eq!(map, vec![0, 1, 2]);
    }
}
