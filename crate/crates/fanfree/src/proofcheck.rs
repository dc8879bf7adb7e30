//! Executable checks of the proof machinery around the Perron-maximal
//! vertex: the neighborhood decomposition and its exact size identity, the
//! two eigenvector identities, the η-functional with its per-shape ceilings,
//! and the e(B) budget bound.

use crate::bitset::VertexSet;
use crate::canon::canonical_label;
use crate::error::{Error, Result};
use crate::freeness::has_path_subgraph;
use crate::graph::{build_family, join, union, FamilySpec, Graph};
use crate::graph6::graph6_encode;
use crate::spectral::PerronData;
use serde::Serialize;

const TIE_TOL: f64 = 1e-12;

/// One component of the subgraph induced on A₊.
#[derive(Clone, Debug)]
pub struct Component {
    pub graph: Graph,
    /// map from component vertex index to host vertex
    pub vertices: Vec<usize>,
}

/// The neighborhood decomposition around the Perron-maximal vertex u*:
/// A = N(u*), A₀ the A-vertices with no neighbor inside A, A₊ the rest,
/// B everything else, and Γ the components of G[A₊].
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub ustar: usize,
    pub a: VertexSet,
    pub a0: VertexSet,
    pub aplus: VertexSet,
    pub b: VertexSet,
    pub gamma: Vec<Component>,
    pub e_aplus: usize,
    pub e_ab: usize,
    pub e_b: usize,
}

/// Builds the decomposition. The size identity
/// m = |A| + e(A₊) + e(A,B) + e(B) is exact integer arithmetic and asserted.
pub fn decompose(g: &Graph, p: &PerronData) -> Result<Decomposition> {
    if !g.is_connected() || g.n() == 0 {
        return Err(Error::Contract(
            "decompose requires a nonempty connected graph".into(),
        ));
    }
    if p.x.len() != g.n() {
        return Err(Error::Contract("Perron data does not match the graph".into()));
    }
    let n = g.n();
    let xmax = p.x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let ustar = (0..n)
        .find(|&v| p.x[v] >= xmax - TIE_TOL)
        .expect("some vertex attains the maximum");
    let a = g.row(ustar).clone();
    let mut a0 = VertexSet::new(n);
    let mut aplus = VertexSet::new(n);
    for u in a.iter() {
        if g.row(u).intersection(&a).is_empty() {
            a0.insert(u);
        } else {
            aplus.insert(u);
        }
    }
    let mut b = VertexSet::full(n);
    b.remove(ustar);
    b = b.difference(&a);
    let e_aplus = g.edges_within(&aplus);
    let e_ab = g.edges_between(&a, &b);
    let e_b = g.edges_within(&b);
    let identity = a.len() + e_aplus + e_ab + e_b;
    if identity != g.m() {
        return Err(Error::Contract(format!(
            "size identity failed: {} + {} + {} + {} != {}",
            a.len(),
            e_aplus,
            e_ab,
            e_b,
            g.m()
        )));
    }
    let (ga, map) = g.induced(&aplus)?;
    let gamma = ga
        .components()
        .iter()
        .map(|comp| {
            let (graph, local) = ga.induced(comp).expect("component set is well-formed");
            Component {
                graph,
                vertices: local.iter().map(|&i| map[i]).collect(),
            }
        })
        .collect();
    Ok(Decomposition {
        ustar,
        a,
        a0,
        aplus,
        b,
        gamma,
        e_aplus,
        e_ab,
        e_b,
    })
}

/// η(H) = Σ_u (d_H(u) − 2)·r_u − e(H) over the vertices of `h`, where r_u is
/// the Perron ratio x_u / x_{u*} of the host.
pub fn eta(h: &Graph, ratios: &[f64]) -> Result<f64> {
    if ratios.len() != h.n() {
        return Err(Error::InvalidParameter(format!(
            "expected {} ratios, got {}",
            h.n(),
            ratios.len()
        )));
    }
    for &r in ratios {
        if !(r > 0.0 && r <= 1.0 + TIE_TOL) {
            return Err(Error::InvalidParameter(format!(
                "ratio {r} outside (0, 1]"
            )));
        }
    }
    let sum: f64 = (0..h.n())
        .map(|u| (h.row(u).len() as f64 - 2.0) * ratios[u])
        .sum();
    Ok(sum - h.m() as f64)
}

/// Residuals of the two eigen-identities at u*:
/// ρ·x_{u*} = Σ_{u∈A} x_u and
/// ρ²·x_{u*} = |A|·x_{u*} + Σ_{A₊} d_A(u)·x_u + Σ_B d_A(w)·x_w.
#[derive(Clone, Debug, Serialize)]
pub struct EigenIdentityReport {
    pub first_lhs: f64,
    pub first_rhs: f64,
    pub first_residual: f64,
    pub second_lhs: f64,
    pub second_rhs: f64,
    pub second_residual: f64,
    pub within_tolerance: bool,
}

pub const IDENTITY_TOL: f64 = 1e-8;

pub fn eigen_identities(g: &Graph, p: &PerronData, d: &Decomposition) -> EigenIdentityReport {
    let xs = p.x[d.ustar];
    let first_lhs = p.rho * xs;
    let first_rhs: f64 = d.a.iter().map(|u| p.x[u]).sum();
    let second_lhs = p.rho * p.rho * xs;
    let d_a = |v: usize| g.row(v).intersection(&d.a).len() as f64;
    let second_rhs = d.a.len() as f64 * xs
        + d.aplus.iter().map(|u| d_a(u) * p.x[u]).sum::<f64>()
        + d.b.iter().map(|w| d_a(w) * p.x[w]).sum::<f64>();
    let first_residual = (first_lhs - first_rhs).abs();
    let second_residual = (second_lhs - second_rhs).abs();
    EigenIdentityReport {
        first_lhs,
        first_rhs,
        first_residual,
        second_lhs,
        second_rhs,
        second_residual,
        within_tolerance: first_residual <= IDENTITY_TOL && second_residual <= IDENTITY_TOL,
    }
}

/// The e(B) budget check. Applies only when ρ² − 2ρ ≥ m − 3 (which the
/// extremal argument derives from ρ ≥ 1 + √(m−2)).
#[derive(Clone, Debug, Serialize)]
pub struct EbBoundReport {
    pub applicable: bool,
    pub rho_sq_minus_2rho: f64,
    pub m_minus_3: f64,
    pub e_b: usize,
    /// Σ_{A₊}(d_A(u)−2)·r_u − e(A₊) − 2Σ_{A₀} r_v + 3
    pub budget: Option<f64>,
    /// Σ_Γ η(H) − 2Σ_{A₀} r_v + 3 (equal to `budget` by construction)
    pub budget_via_eta: Option<f64>,
    pub holds: Option<bool>,
}

pub fn eb_bound_check(g: &Graph, p: &PerronData, d: &Decomposition) -> EbBoundReport {
    let rho_sq_minus_2rho = p.rho * p.rho - 2.0 * p.rho;
    let m_minus_3 = g.m() as f64 - 3.0;
    let applicable = rho_sq_minus_2rho >= m_minus_3 - 1e-9;
    if !applicable {
        return EbBoundReport {
            applicable,
            rho_sq_minus_2rho,
            m_minus_3,
            e_b: d.e_b,
            budget: None,
            budget_via_eta: None,
            holds: None,
        };
    }
    let xs = p.x[d.ustar];
    let ratio = |v: usize| p.x[v] / xs;
    let d_a = |v: usize| g.row(v).intersection(&d.a).len() as f64;
    let a0_term: f64 = 2.0 * d.a0.iter().map(ratio).sum::<f64>();
    let budget = d
        .aplus
        .iter()
        .map(|u| (d_a(u) - 2.0) * ratio(u))
        .sum::<f64>()
        - d.e_aplus as f64
        - a0_term
        + 3.0;
    let budget_via_eta = d
        .gamma
        .iter()
        .map(|c| {
            let ratios: Vec<f64> = c.vertices.iter().map(|&v| ratio(v)).collect();
            eta(&c.graph, &ratios).expect("Perron ratios are in (0,1]")
        })
        .sum::<f64>()
        - a0_term
        + 3.0;
    let holds = d.e_b as f64 <= budget + 1e-9;
    EbBoundReport {
        applicable,
        rho_sq_minus_2rho,
        m_minus_3,
        e_b: d.e_b,
        budget: Some(budget),
        budget_via_eta: Some(budget_via_eta),
        holds: Some(holds),
    }
}

/// Shape classes with dedicated η ceilings.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ShapeClass {
    K5,
    K5MinusE,
    K4,
    K5Minus2E,
    K2,
    Star,
    K1JoinK3PlusOnes,
    K2JoinOnes,
    Other,
}

/// Classifies a connected graph against the shape table by canonical label.
pub fn classify_component(h: &Graph) -> ShapeClass {
    let n = h.n();
    let label = canonical_label(h);
    let canon_of = |g: &Graph| canonical_label(g);
    let k = |n| build_family(&FamilySpec::Complete(n)).expect("valid order");
    if n == 5 {
        if label == canon_of(&k(5)) {
            return ShapeClass::K5;
        }
        let k5_minus_e = k(5).removing_edge(0, 1).expect("edge exists");
        if label == canon_of(&k5_minus_e) {
            return ShapeClass::K5MinusE;
        }
        // both ways of removing two edges from K5
        let adjacent = k5_minus_e.removing_edge(0, 2).expect("edge exists");
        let disjoint = k5_minus_e.removing_edge(2, 3).expect("edge exists");
        if label == canon_of(&adjacent) || label == canon_of(&disjoint) {
            return ShapeClass::K5Minus2E;
        }
    }
    if n == 4 && label == canon_of(&k(4)) {
        return ShapeClass::K4;
    }
    if n == 2 && label == canon_of(&k(2)) {
        return ShapeClass::K2;
    }
    if n >= 3 {
        let star = join(&Graph::empty(1), &Graph::empty(n - 1));
        if label == canon_of(&star) {
            return ShapeClass::Star;
        }
    }
    if n >= 5 {
        let core = union(&k(3), &Graph::empty(n - 4));
        let shape = join(&Graph::empty(1), &core);
        if label == canon_of(&shape) {
            return ShapeClass::K1JoinK3PlusOnes;
        }
    }
    if n >= 3 {
        let shape = join(&k(2), &Graph::empty(n - 2));
        if label == canon_of(&shape) {
            return ShapeClass::K2JoinOnes;
        }
    }
    ShapeClass::Other
}

/// Ceiling for η(H) from the shape table. `strict` marks the δ(H) = 1 cases,
/// where the inequality is strict.
pub fn eta_ceiling(class: ShapeClass, min_degree: usize) -> (f64, bool) {
    if min_degree >= 2 {
        match class {
            ShapeClass::K5 => (0.0, false),
            ShapeClass::K5MinusE => (-1.0, false),
            ShapeClass::K4 | ShapeClass::K5Minus2E => (-2.0, false),
            _ => (-3.0, false),
        }
    } else {
        match class {
            ShapeClass::K2 => (-1.0, true),
            ShapeClass::Star | ShapeClass::K1JoinK3PlusOnes => (-2.0, true),
            _ => (-3.0, true),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentEta {
    pub graph6: String,
    pub class: ShapeClass,
    pub min_degree: usize,
    pub eta: f64,
    pub ceiling: f64,
    pub strict: bool,
    pub satisfied: bool,
    /// when the ceiling is met with equality: whether all vertices of degree
    /// >= 3 have Perron ratio 1 (the stated necessary condition)
    pub equality_condition_met: Option<bool>,
}

/// Per-component η report. Applies only when G[A] is P6-free (the table's
/// hypothesis); otherwise `applicable` is false and no ceiling is asserted.
#[derive(Clone, Debug, Serialize)]
pub struct EtaReport {
    pub applicable: bool,
    pub components: Vec<ComponentEta>,
    pub all_satisfied: bool,
}

pub fn claim_ceilings(g: &Graph, p: &PerronData, d: &Decomposition) -> EtaReport {
    let (ga, _) = g.induced(&d.a).expect("A is well-formed");
    let applicable = has_path_subgraph(&ga, 6).is_none();
    if !applicable {
        return EtaReport {
            applicable,
            components: Vec::new(),
            all_satisfied: true,
        };
    }
    let xs = p.x[d.ustar];
    let mut components = Vec::new();
    let mut all_satisfied = true;
    for c in &d.gamma {
        let ratios: Vec<f64> = c.vertices.iter().map(|&v| p.x[v] / xs).collect();
        let eta_val = eta(&c.graph, &ratios).expect("Perron ratios are in (0,1]");
        let class = classify_component(&c.graph);
        let min_degree = c.graph.min_degree();
        let (ceiling, strict) = eta_ceiling(class, min_degree);
        let satisfied = if strict {
            eta_val < ceiling + TIE_TOL
        } else {
            eta_val <= ceiling + TIE_TOL
        };
        let equality_condition_met = if !strict && (eta_val - ceiling).abs() <= 1e-9 {
            Some(
                (0..c.graph.n())
                    .filter(|&u| c.graph.row(u).len() >= 3)
                    .all(|u| (ratios[u] - 1.0).abs() <= 1e-6),
            )
        } else {
            None
        };
        all_satisfied &= satisfied;
        components.push(ComponentEta {
            graph6: graph6_encode(&c.graph),
            class,
            min_degree,
            eta: eta_val,
            ceiling,
            strict,
            satisfied,
            equality_condition_met,
        });
    }
    EtaReport {
        applicable,
        components,
        all_satisfied,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_extremal, build_family, FamilySpec};
    use crate::spectral::spectral_radius;

    #[test]
    fn decompose_extremal() {
        let g = build_extremal(3, 33).unwrap();
        let p = spectral_radius(&g);
        let d = decompose(&g, &p).unwrap();
        // u* is a triangle vertex (they carry the max Perron entry)
        assert!(d.ustar < 3);
        assert_eq!(d.a.len(), 12);
        assert!(d.a0.is_empty());
        assert!(d.b.is_empty());
        assert_eq!(d.e_aplus, 21);
        assert_eq!(d.a.len() + d.e_aplus + d.e_ab + d.e_b, 33);
    }

    #[test]
    fn decompose_star_and_path() {
        let star = build_family(&FamilySpec::CompleteBipartite(1, 5)).unwrap();
        let p = spectral_radius(&star);
        let d = decompose(&star, &p).unwrap();
        assert_eq!(d.ustar, 0);
        assert_eq!(d.a0.len(), 5);
        assert!(d.aplus.is_empty() && d.b.is_empty());
        assert_eq!(d.a.len() + d.e_aplus + d.e_ab + d.e_b, 5);

        // P4 = 0-1-2-3: u* = 1 (tie with 2, lowest index), A = {0,2},
        // A0 = A, B = {3}, identity 3 = 2+0+1+0
        let p4 = build_family(&FamilySpec::Path(4)).unwrap();
        let p = spectral_radius(&p4);
        let d = decompose(&p4, &p).unwrap();
        assert_eq!(d.ustar, 1);
        assert_eq!(d.a.to_vec(), vec![0, 2]);
        assert_eq!(d.a0.to_vec(), vec![0, 2]);
        assert_eq!(d.b.to_vec(), vec![3]);
        assert_eq!((d.e_aplus, d.e_ab, d.e_b), (0, 1, 0));

        // disconnected input is a contract error
        let two = crate::graph::union(&p4, &p4);
        assert!(decompose(&two, &spectral_radius(&two)).is_err());
    }

    #[test]
    fn eta_examples() {
        let k5 = build_family(&FamilySpec::Complete(5)).unwrap();
        assert!((eta(&k5, &[1.0; 5]).unwrap() - 0.0).abs() < 1e-12);
        let k2 = build_family(&FamilySpec::Complete(2)).unwrap();
        assert!((eta(&k2, &[1.0, 1.0]).unwrap() + 3.0).abs() < 1e-12);
        let k4 = build_family(&FamilySpec::Complete(4)).unwrap();
        assert!((eta(&k4, &[1.0; 4]).unwrap() + 2.0).abs() < 1e-12);
        assert!((eta(&k4, &[0.5; 4]).unwrap() + 4.0).abs() < 1e-12);
        assert!(eta(&k4, &[0.5, 0.5, 0.5, 1.5]).is_err());
        assert!(eta(&k4, &[0.5; 3]).is_err());
    }

    #[test]
    fn eigen_identities_star() {
        let star = build_family(&FamilySpec::CompleteBipartite(1, 5)).unwrap();
        let p = spectral_radius(&star);
        let d = decompose(&star, &p).unwrap();
        let r = eigen_identities(&star, &p, &d);
        assert!(r.within_tolerance);
        // second identity degenerates to rho^2 = |A| = 5
        assert!((r.second_rhs - 5.0 * p.x[d.ustar]).abs() < 1e-9);
    }

    #[test]
    fn eb_bound_examples() {
        // equality case: rho^2 - 2 rho = 30 = m - 3
        let g = build_extremal(3, 33).unwrap();
        let p = spectral_radius(&g);
        let d = decompose(&g, &p).unwrap();
        let r = eb_bound_check(&g, &p, &d);
        assert!(r.applicable);
        assert_eq!(r.e_b, 0);
        assert!(r.holds.unwrap());
        assert!((r.budget.unwrap() - r.budget_via_eta.unwrap()).abs() < 1e-9);

        // P4 fails the precondition
        let p4 = build_family(&FamilySpec::Path(4)).unwrap();
        let p = spectral_radius(&p4);
        let d = decompose(&p4, &p).unwrap();
        let r = eb_bound_check(&p4, &p, &d);
        assert!(!r.applicable);

        // K2 ∨ 5K1 at m = 11: decide applicability numerically
        let g = build_extremal(2, 11).unwrap();
        let p = spectral_radius(&g);
        let d = decompose(&g, &p).unwrap();
        let r = eb_bound_check(&g, &p, &d);
        let expected = r.rho_sq_minus_2rho >= 8.0 - 1e-9;
        assert_eq!(r.applicable, expected);
        if r.applicable {
            assert!(r.holds.unwrap());
        }
    }

    #[test]
    fn classification_table() {
        let k = |n| build_family(&FamilySpec::Complete(n)).unwrap();
        assert_eq!(classify_component(&k(5)), ShapeClass::K5);
        assert_eq!(classify_component(&k(4)), ShapeClass::K4);
        assert_eq!(classify_component(&k(2)), ShapeClass::K2);
        let k5e = k(5).removing_edge(0, 1).unwrap();
        assert_eq!(classify_component(&k5e), ShapeClass::K5MinusE);
        assert_eq!(
            classify_component(&k5e.removing_edge(0, 2).unwrap()),
            ShapeClass::K5Minus2E
        );
        assert_eq!(
            classify_component(&k5e.removing_edge(2, 3).unwrap()),
            ShapeClass::K5Minus2E
        );
        let star = build_family(&FamilySpec::CompleteBipartite(1, 4)).unwrap();
        assert_eq!(classify_component(&star), ShapeClass::Star);
        let shape = join(&Graph::empty(1), &union(&k(3), &Graph::empty(2)));
        assert_eq!(classify_component(&shape), ShapeClass::K1JoinK3PlusOnes);
        let hub = join(&k(2), &Graph::empty(10));
        assert_eq!(classify_component(&hub), ShapeClass::K2JoinOnes);
        let p5 = build_family(&FamilySpec::Path(5)).unwrap();
        assert_eq!(classify_component(&p5), ShapeClass::Other);
        // K3 = K2 ∨ 1K1 lands in the join class; ceiling -3 is met exactly
        assert_eq!(classify_component(&k(3)), ShapeClass::K2JoinOnes);
    }

    #[test]
    fn claim_ceilings_on_extremal() {
        let g = build_extremal(3, 33).unwrap();
        let p = spectral_radius(&g);
        let d = decompose(&g, &p).unwrap();
        let r = claim_ceilings(&g, &p, &d);
        assert!(r.applicable);
        assert_eq!(r.components.len(), 1);
        let c = &r.components[0];
        assert_eq!(c.class, ShapeClass::K2JoinOnes);
        assert_eq!(c.ceiling, -3.0);
        assert!((c.eta + 3.0).abs() < 1e-8); // equality configuration
        assert!(c.satisfied);
        assert!(r.all_satisfied);
    }

    #[test]
    fn claim_ceilings_trivial_gamma() {
        // star: u* neighborhood induces independent vertices, Γ empty
        let star = build_family(&FamilySpec::CompleteBipartite(1, 3)).unwrap();
        let p = spectral_radius(&star);
        let d = decompose(&star, &p).unwrap();
        let r = claim_ceilings(&star, &p, &d);
        assert!(r.applicable);
        assert!(r.components.is_empty());
        assert!(r.all_satisfied);
    }
}
