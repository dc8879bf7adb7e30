//! Isomorphism-free exhaustive generation of graphs of given size with no
//! isolated vertices, and exact extremal scans over the generated classes.
//!
//! Generation is canonical augmentation by edges: a child with m edges is
//! accepted from its (m−1)-edge parent only if deleting the child's
//! canonical edge (and stripping isolated vertices) reproduces that parent
//! up to isomorphism. Siblings are deduplicated per parent, so memory stays
//! flat in the number of classes.

use crate::canon::{canonical_form, canonical_label};
use crate::error::{Error, Result};
use crate::freeness::Forbidden;
use crate::graph::Graph;
use crate::graph6::graph6_encode;
use crate::spectral::{spectral_radius, CROSS_TOL};
use serde::Serialize;

/// Default feasibility cap on m (≈ 2·10⁵ classes); override with `force`.
pub const DEFAULT_CAP: usize = 13;

/// Calls `f` once per isomorphism class of graphs with exactly `m` edges,
/// no isolated vertices, at most `max_n` vertices (default 2m), satisfying
/// the hereditary predicate when given. Deterministic order. Returns the
/// class count.
pub fn enumerate_for_each(
    m: usize,
    max_n: Option<usize>,
    forbidden: Option<Forbidden>,
    force: bool,
    f: &mut dyn FnMut(&Graph),
) -> Result<usize> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be >= 1".into()));
    }
    if m > DEFAULT_CAP && !force {
        return Err(Error::Capacity {
            m,
            cap: DEFAULT_CAP,
        });
    }
    let max_n = max_n.unwrap_or(2 * m).min(2 * m);
    let root = Graph::empty(0);
    let root_label = canonical_label(&root);
    let mut count = 0;
    descend(&root, &root_label, m, max_n, forbidden.as_ref(), f, &mut count);
    Ok(count)
}

/// Collects the classes of `enumerate_for_each` into a vector.
pub fn enumerate_graphs(
    m: usize,
    max_n: Option<usize>,
    forbidden: Option<Forbidden>,
    force: bool,
) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    enumerate_for_each(m, max_n, forbidden, force, &mut |g| out.push(g.clone()))?;
    Ok(out)
}

fn descend(
    parent: &Graph,
    parent_label: &[u8],
    target_m: usize,
    max_n: usize,
    forbidden: Option<&Forbidden>,
    f: &mut dyn FnMut(&Graph),
    count: &mut usize,
) {
    if parent.m() == target_m {
        *count += 1;
        f(parent);
        return;
    }
    let parent_degs = sorted_degrees(parent);
    let mut accepted: Vec<(Vec<u8>, Graph)> = Vec::new();
    let mut try_child = |child: Graph, added: (usize, usize)| {
        debug_assert!(child.n() <= max_n);
        let (cform, perm) = canonical_form(&child);
        // canonical deletion edge: the lexicographically last edge of the
        // canonical form, pulled back through the labeling
        let canon_edge = cform
            .edges()
            .into_iter()
            .max()
            .expect("child has at least one edge");
        let mut inv = vec![0usize; child.n()];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let e_c = normalize(inv[canon_edge.0], inv[canon_edge.1]);
        let accept = if e_c == added {
            true
        } else {
            let mut reduced = child.clone();
            reduced = reduced.removing_edge(e_c.0, e_c.1).expect("edge exists");
            let (stripped, _) = reduced.strip_isolated();
            stripped.n() == parent.n()
                && sorted_degrees(&stripped) == parent_degs
                && canonical_label(&stripped) == parent_label
        };
        if !accept {
            return;
        }
        let label = graph6_encode(&cform).into_bytes();
        if accepted.iter().any(|(l, _)| *l == label) {
            return;
        }
        if let Some(fb) = forbidden {
            if !fb.is_free(&child) {
                return; // hereditary: the whole subtree stays non-free
            }
        }
        accepted.push((label, child));
    };
    let n = parent.n();
    // add an edge between two existing non-adjacent vertices
    for u in 0..n {
        for v in u + 1..n {
            if !parent.has_edge(u, v) {
                let child = parent.adding_edge(u, v).expect("valid vertices");
                try_child(child, (u, v));
            }
        }
    }
    // attach one new vertex
    if n + 1 <= max_n {
        for u in 0..n {
            let mut child = crate::graph::union(parent, &Graph::empty(1));
            child = child.adding_edge(u, n).expect("valid vertices");
            try_child(child, (u, n));
        }
    }
    // disjoint new K2
    if n + 2 <= max_n {
        let mut child = crate::graph::union(parent, &Graph::empty(2));
        child = child.adding_edge(n, n + 1).expect("valid vertices");
        try_child(child, (n, n + 1));
    }
    accepted.sort_by(|(a, _), (b, _)| a.cmp(b));
    for (label, child) in accepted {
        descend(&child, &label, target_m, max_n, forbidden, f, count);
    }
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable();
    d
}

fn normalize(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Summary statistics of the ρ distribution over scanned classes.
#[derive(Clone, Debug, Serialize)]
pub struct RhoHistogram {
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

/// Result of an exhaustive extremal scan at size m.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub m: usize,
    pub predicate: String,
    pub graph_count: usize,
    pub best_rho: f64,
    /// canonical graph6 of every class attaining the maximum (within 1e-9)
    pub argmax: Vec<String>,
    pub histogram: Option<RhoHistogram>,
}

/// Exhaustive maximum of ρ over all classes of size m satisfying the
/// predicate, with every attaining class listed.
pub fn extremal_scan(m: usize, forbidden: Option<Forbidden>, force: bool) -> Result<ScanReport> {
    let mut best_rho = f64::NEG_INFINITY;
    let mut argmax: Vec<(f64, String)> = Vec::new();
    let mut count = 0usize;
    let mut sum = 0.0;
    let mut min = f64::INFINITY;
    enumerate_for_each(m, None, forbidden, force, &mut |g| {
        let rho = spectral_radius(g).rho;
        count += 1;
        sum += rho;
        min = min.min(rho);
        if rho > best_rho {
            best_rho = rho;
        }
        if rho > best_rho - CROSS_TOL {
            argmax.push((rho, graph6_encode(&canonical_form(g).0)));
        }
    })?;
    argmax.retain(|(rho, _)| *rho >= best_rho - CROSS_TOL);
    let mut argmax: Vec<String> = argmax.into_iter().map(|(_, s)| s).collect();
    argmax.sort();
    argmax.dedup();
    Ok(ScanReport {
        m,
        predicate: forbidden.map_or("none".to_string(), |f| f.name()),
        graph_count: count,
        best_rho,
        argmax,
        histogram: (count > 0).then(|| RhoHistogram {
            count,
            min,
            max: best_rho,
            mean: sum / count as f64,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_extremal, build_family, FamilySpec};

    #[test]
    fn tiny_counts() {
        // m=1: K2 only; m=2: {P3, 2K2}; m=3: 5 classes
        assert_eq!(enumerate_graphs(1, None, None, false).unwrap().len(), 1);
        assert_eq!(enumerate_graphs(2, None, None, false).unwrap().len(), 2);
        assert_eq!(enumerate_graphs(3, None, None, false).unwrap().len(), 5);
    }

    #[test]
    fn class_invariants() {
        let graphs = enumerate_graphs(4, None, None, false).unwrap();
        let mut labels: Vec<Vec<u8>> = graphs.iter().map(canonical_label).collect();
        labels.sort();
        let before = labels.len();
        labels.dedup();
        assert_eq!(labels.len(), before, "duplicate isomorphism class yielded");
        for g in &graphs {
            assert_eq!(g.m(), 4);
            assert!(g.min_degree() >= 1);
        }
    }

    #[test]
    fn predicate_pushdown_equals_post_filter() {
        for m in 1..=6 {
            let pushed = enumerate_graphs(m, None, Some(Forbidden::Fan(3)), false).unwrap();
            let all = enumerate_graphs(m, None, None, false).unwrap();
            let filtered: Vec<&Graph> = all
                .iter()
                .filter(|g| Forbidden::Fan(3).is_free(g))
                .collect();
            assert_eq!(pushed.len(), filtered.len(), "m = {m}");
            let mut a: Vec<Vec<u8>> = pushed.iter().map(canonical_label).collect();
            let mut b: Vec<Vec<u8>> = filtered.iter().map(|g| canonical_label(g)).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn capacity_cap() {
        assert!(matches!(
            enumerate_for_each(14, None, None, false, &mut |_| {}),
            Err(Error::Capacity { m: 14, cap: 13 })
        ));
    }

    #[test]
    fn scan_m3_unconstrained() {
        let report = extremal_scan(3, None, false).unwrap();
        assert_eq!(report.graph_count, 5);
        assert!((report.best_rho - 2.0).abs() <= 1e-9);
        let k3 = build_family(&FamilySpec::Complete(3)).unwrap();
        assert_eq!(report.argmax, vec![graph6_encode(&canonical_form(&k3).0)]);
    }

    #[test]
    fn scan_triangle_free_m9() {
        let report = extremal_scan(9, Some(Forbidden::Fan(3)), false).unwrap();
        assert!((report.best_rho - 3.0).abs() <= 1e-9);
        let k33 = build_family(&FamilySpec::CompleteBipartite(3, 3)).unwrap();
        let k33_label = graph6_encode(&canonical_form(&k33).0);
        assert!(report.argmax.contains(&k33_label));
    }

    #[test]
    fn scan_monotone_under_constraints() {
        let free = extremal_scan(6, Some(Forbidden::Fan(5)), false).unwrap();
        let all = extremal_scan(6, None, false).unwrap();
        assert!(free.best_rho <= all.best_rho + 1e-12);
    }

    #[test]
    fn scan_h5_free_m9() {
        let report = extremal_scan(9, Some(Forbidden::Fan(5)), false).unwrap();
        let expected = (1.0 + 33.0f64.sqrt()) / 2.0;
        assert!((report.best_rho - expected).abs() <= 1e-9);
        let extremal = build_extremal(2, 9).unwrap();
        assert_eq!(
            report.argmax,
            vec![graph6_encode(&canonical_form(&extremal).0)]
        );
    }
}
