//! Forbidden-subgraph detection for fans H_t, C6^△ and F3, plus a generic
//! backtracking containment oracle used to cross-check the specialized
//! detectors.
//!
//! Containment is subgraph containment, not induced: a witness maps every
//! pattern edge to a host edge injectively.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{build_family, FamilySpec, Graph};
use serde::Serialize;

/// Injective map from pattern vertices to host vertices carrying every
/// pattern edge to a host edge.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub mapping: Vec<usize>,
}

/// Checks a witness against the pattern and host it claims to relate.
pub fn validate_witness(host: &Graph, pattern: &Graph, w: &Witness) -> bool {
    if w.mapping.len() != pattern.n() {
        return false;
    }
    let mut seen = vec![false; host.n()];
    for &v in &w.mapping {
        if v >= host.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    pattern
        .edges()
        .iter()
        .all(|&(a, b)| host.has_edge(w.mapping[a], w.mapping[b]))
}

/// First simple path on `t` vertices in deterministic DFS order, as a
/// witness mapping path positions to host vertices.
pub fn has_path_subgraph(g: &Graph, t: usize) -> Option<Witness> {
    if t == 0 {
        return Some(Witness { mapping: vec![] });
    }
    if t == 1 {
        return (g.n() > 0).then(|| Witness { mapping: vec![0] });
    }
    let n = g.n();
    let mut path = Vec::with_capacity(t);
    let mut visited = VertexSet::new(n);
    for start in 0..n {
        if g.row(start).is_empty() {
            continue;
        }
        path.push(start);
        visited.insert(start);
        if extend_path(g, &mut path, &mut visited, t) {
            return Some(Witness { mapping: path });
        }
        visited.remove(start);
        path.pop();
    }
    None
}

fn extend_path(g: &Graph, path: &mut Vec<usize>, visited: &mut VertexSet, t: usize) -> bool {
    if path.len() == t {
        return true;
    }
    let last = *path.last().expect("path is nonempty");
    for next in g.row(last).difference(visited).iter() {
        path.push(next);
        visited.insert(next);
        if extend_path(g, path, visited, t) {
            return true;
        }
        visited.remove(next);
        path.pop();
    }
    false
}

/// Fan detection: H_order ⊆ G iff some vertex's neighborhood graph contains
/// P_{order-1} as a subgraph. The witness maps fan vertices (path first,
/// apex last) into the host.
pub fn fan_witness(g: &Graph, order: usize) -> Option<Witness> {
    assert!(order >= 3, "fan detection needs order >= 3");
    let t = order - 1;
    for apex in 0..g.n() {
        if g.row(apex).len() < t {
            continue;
        }
        let (nbhd, map) = g.induced(g.row(apex)).expect("adjacency row is well-formed");
        if let Some(w) = has_path_subgraph(&nbhd, t) {
            let mut mapping: Vec<usize> = w.mapping.iter().map(|&v| map[v]).collect();
            mapping.push(apex);
            return Some(Witness { mapping });
        }
    }
    None
}

/// F3 detection: F3 ⊆ G iff some vertex's neighborhood graph has a matching
/// of size 3. Witness vertex order matches the F3 constructor (three pairs,
/// apex last).
pub fn f3_witness(g: &Graph) -> Option<Witness> {
    for apex in 0..g.n() {
        if g.row(apex).len() < 6 {
            continue;
        }
        let (nbhd, map) = g.induced(g.row(apex)).expect("adjacency row is well-formed");
        if let Some(pairs) = matching_of_size(&nbhd, 3) {
            let mut mapping = Vec::with_capacity(7);
            for (a, b) in pairs {
                mapping.push(map[a]);
                mapping.push(map[b]);
            }
            mapping.push(apex);
            return Some(Witness { mapping });
        }
    }
    None
}

fn matching_of_size(g: &Graph, k: usize) -> Option<Vec<(usize, usize)>> {
    fn rec(
        edges: &[(usize, usize)],
        from: usize,
        used: &mut VertexSet,
        acc: &mut Vec<(usize, usize)>,
        k: usize,
    ) -> bool {
        if acc.len() == k {
            return true;
        }
        for (i, &(a, b)) in edges.iter().enumerate().skip(from) {
            if used.contains(a) || used.contains(b) {
                continue;
            }
            used.insert(a);
            used.insert(b);
            acc.push((a, b));
            if rec(edges, i + 1, used, acc, k) {
                return true;
            }
            acc.pop();
            used.remove(a);
            used.remove(b);
        }
        false
    }
    let edges = g.edges();
    let mut used = VertexSet::new(g.n());
    let mut acc = Vec::new();
    rec(&edges, 0, &mut used, &mut acc, k).then_some(acc)
}

/// C6^△ detection via the generic containment oracle.
pub fn c6_triangle_witness(g: &Graph) -> Option<Witness> {
    let pattern = build_family(&FamilySpec::C6Triangle).expect("fixed family");
    subgraph_contains(g, &pattern)
}

/// Backtracking subgraph containment: first witness in deterministic search
/// order, pattern vertices matched in degree-descending connectivity order.
pub fn subgraph_contains(host: &Graph, pattern: &Graph) -> Option<Witness> {
    let pn = pattern.n();
    if pn == 0 {
        return Some(Witness { mapping: vec![] });
    }
    if pn > host.n() || pattern.m() > host.m() {
        return None;
    }
    // order: highest degree first, then prefer vertices adjacent to already
    // ordered ones so partial maps are constrained early
    let degs = pattern.degrees();
    let mut order: Vec<usize> = Vec::with_capacity(pn);
    let mut placed = vec![false; pn];
    for _ in 0..pn {
        let next = (0..pn)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let attached = order.iter().filter(|&&u| pattern.has_edge(u, v)).count();
                (attached, degs[v], std::cmp::Reverse(v))
            })
            .expect("unplaced vertex exists");
        placed[next] = true;
        order.push(next);
    }
    let mut mapping = vec![usize::MAX; pn];
    let mut used = VertexSet::new(host.n());
    fn rec(
        host: &Graph,
        pattern: &Graph,
        order: &[usize],
        degs: &[usize],
        depth: usize,
        mapping: &mut Vec<usize>,
        used: &mut VertexSet,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let pv = order[depth];
        'cand: for hv in 0..host.n() {
            if used.contains(hv) || host.row(hv).len() < degs[pv] {
                continue;
            }
            for &pu in &order[..depth] {
                if pattern.has_edge(pu, pv) && !host.has_edge(mapping[pu], hv) {
                    continue 'cand;
                }
            }
            mapping[pv] = hv;
            used.insert(hv);
            if rec(host, pattern, order, degs, depth + 1, mapping, used) {
                return true;
            }
            used.remove(hv);
            mapping[pv] = usize::MAX;
        }
        false
    }
    rec(host, pattern, &order, &degs, 0, &mut mapping, &mut used).then_some(Witness { mapping })
}

/// The forbidden-subgraph families of interest, as a CLI-facing predicate.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Forbidden {
    /// H_order = K_1 ∨ P_{order-1}
    Fan(usize),
    C6Triangle,
    F3,
}

impl Forbidden {
    pub fn parse(s: &str) -> Result<Forbidden> {
        if let Some(rest) = s.strip_prefix("fan:") {
            let order: usize = rest.parse().map_err(|_| {
                Error::InvalidParameter(format!("bad fan order in forbidden spec '{s}'"))
            })?;
            if order < 3 {
                return Err(Error::InvalidParameter(format!(
                    "fan order must be >= 3, got {order}"
                )));
            }
            return Ok(Forbidden::Fan(order));
        }
        match s {
            "c6d" => Ok(Forbidden::C6Triangle),
            "f3" => Ok(Forbidden::F3),
            _ => Err(Error::InvalidParameter(format!(
                "unknown forbidden spec '{s}' (expected fan:T, c6d or f3)"
            ))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Forbidden::Fan(order) => format!("fan:{order}"),
            Forbidden::C6Triangle => "c6d".to_string(),
            Forbidden::F3 => "f3".to_string(),
        }
    }

    /// Pattern graph of this family.
    pub fn pattern(&self) -> Graph {
        match self {
            Forbidden::Fan(order) => build_family(&FamilySpec::Fan(*order)).expect("order >= 3"),
            Forbidden::C6Triangle => build_family(&FamilySpec::C6Triangle).expect("fixed family"),
            Forbidden::F3 => build_family(&FamilySpec::F3).expect("fixed family"),
        }
    }

    pub fn witness(&self, g: &Graph) -> Option<Witness> {
        match self {
            Forbidden::Fan(order) => fan_witness(g, *order),
            Forbidden::C6Triangle => c6_triangle_witness(g),
            Forbidden::F3 => f3_witness(g),
        }
    }

    pub fn is_free(&self, g: &Graph) -> bool {
        self.witness(g).is_none()
    }

    /// The k of the conjectured bound (k−1+√(4m−k²+1))/2 for this family:
    /// fans H_{2k+1} / H_{2k+2} give k, and C6^△ / F3 inherit k = 3 from the
    /// fan H_7 they span.
    pub fn bound_k(&self) -> usize {
        match self {
            Forbidden::Fan(order) => (order - 1) / 2,
            Forbidden::C6Triangle | Forbidden::F3 => 3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_extremal, join, Graph};

    fn fan(order: usize) -> Graph {
        build_family(&FamilySpec::Fan(order)).unwrap()
    }

    #[test]
    fn path_detection() {
        let p6 = build_family(&FamilySpec::Path(6)).unwrap();
        let w = has_path_subgraph(&p6, 6).unwrap();
        assert!(validate_witness(&p6, &p6, &w));
        // K2 ∨ 4K1 has no P6 subgraph (longest path has 5 vertices)
        let k2 = build_family(&FamilySpec::Complete(2)).unwrap();
        let host = join(&k2, &Graph::empty(4));
        assert!(has_path_subgraph(&host, 6).is_none());
        assert!(has_path_subgraph(&host, 5).is_some());
        let c6 = build_family(&FamilySpec::Cycle(6)).unwrap();
        assert!(has_path_subgraph(&c6, 6).is_some());
    }

    #[test]
    fn fan_detection() {
        let extremal = build_extremal(3, 33).unwrap();
        assert!(fan_witness(&extremal, 7).is_none());
        let h7 = fan(7);
        let w = fan_witness(&h7, 7).unwrap();
        assert!(validate_witness(&h7, &h7, &w));
        let k7 = build_family(&FamilySpec::Complete(7)).unwrap();
        assert!(fan_witness(&k7, 7).is_some());
    }

    #[test]
    fn f3_detection() {
        let extremal = build_extremal(3, 33).unwrap();
        assert!(f3_witness(&extremal).is_none());
        let f3 = build_family(&FamilySpec::F3).unwrap();
        let w = f3_witness(&f3).unwrap();
        assert!(validate_witness(&f3, &f3, &w));
        let k7 = build_family(&FamilySpec::Complete(7)).unwrap();
        assert!(f3_witness(&k7).is_some());
    }

    #[test]
    fn c6_triangle_detection() {
        let extremal = build_extremal(3, 33).unwrap();
        assert!(c6_triangle_witness(&extremal).is_none());
        let h7 = fan(7);
        let pattern = build_family(&FamilySpec::C6Triangle).unwrap();
        let w = c6_triangle_witness(&h7).unwrap();
        assert!(validate_witness(&h7, &pattern, &w));
        // C7 has 7 edges < 8 = e(C6^△)
        let c7 = build_family(&FamilySpec::Cycle(7)).unwrap();
        assert!(c6_triangle_witness(&c7).is_none());
    }

    #[test]
    fn generic_containment() {
        let k3 = build_family(&FamilySpec::Complete(3)).unwrap();
        let p3 = build_family(&FamilySpec::Path(3)).unwrap();
        assert!(subgraph_contains(&k3, &p3).is_some());
        // C6^△ and F3 are spanning subgraphs of H7
        let h7 = fan(7);
        let f3 = build_family(&FamilySpec::F3).unwrap();
        let c6d = build_family(&FamilySpec::C6Triangle).unwrap();
        let wf = subgraph_contains(&h7, &f3).unwrap();
        assert!(validate_witness(&h7, &f3, &wf));
        let wc = subgraph_contains(&h7, &c6d).unwrap();
        assert!(validate_witness(&h7, &c6d, &wc));
        // and the P6 cross-check
        let k2 = build_family(&FamilySpec::Complete(2)).unwrap();
        let host = join(&k2, &Graph::empty(4));
        let p6 = build_family(&FamilySpec::Path(6)).unwrap();
        assert!(subgraph_contains(&host, &p6).is_none());
    }

    #[test]
    fn forbidden_parse() {
        assert_eq!(Forbidden::parse("fan:7").unwrap(), Forbidden::Fan(7));
        assert_eq!(Forbidden::parse("c6d").unwrap(), Forbidden::C6Triangle);
        assert_eq!(Forbidden::parse("f3").unwrap(), Forbidden::F3);
        assert!(Forbidden::parse("fan:2").is_err());
        assert!(Forbidden::parse("nope").is_err());
        assert_eq!(Forbidden::Fan(7).bound_k(), 3);
        assert_eq!(Forbidden::Fan(5).bound_k(), 2);
        assert_eq!(Forbidden::Fan(6).bound_k(), 2);
        assert_eq!(Forbidden::Fan(3).bound_k(), 1);
    }
}
