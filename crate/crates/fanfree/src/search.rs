//! Stochastic local search for spectral-radius maximizers among H-free
//! graphs of fixed size, for sizes where exhaustion is out of reach.
//!
//! Graphs are kept on a fixed vertex pool of 2m vertices and may carry
//! isolated vertices internally; isolated vertices do not affect ρ or
//! freeness, and reported graphs are stripped. The move set is single-edge
//! relocation plus the Perron-improving edge shift; acceptance is strict
//! hill-climbing with a bounded plateau (annealing is available).

use crate::bitset::VertexSet;
use crate::canon::{canonical_form, canonical_label};
use crate::error::{Error, Result};
use crate::freeness::Forbidden;
use crate::graph::{build_extremal, kelmans_shift, Graph};
use crate::graph6::graph6_encode;
use crate::spectral::{closed_form_bound, spectral_radius, PerronData};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Bound-violation tolerance; exceeding the conjectured bound by more than
/// this is reported as a falsification.
pub const BOUND_TOL: f64 = 1e-8;

const IMPROVE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Serialize)]
pub enum Acceptance {
    HillClimb {
        plateau_tol: f64,
        plateau_cap: usize,
    },
    Anneal {
        initial_temperature: f64,
        cooling: f64,
    },
}

impl Default for Acceptance {
    fn default() -> Self {
        Acceptance::HillClimb {
            plateau_tol: IMPROVE_TOL,
            plateau_cap: 100,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub m: usize,
    pub forbidden: Option<Forbidden>,
    pub restarts: usize,
    pub max_steps: usize,
    pub seed: u64,
    pub relocation_weight: u32,
    pub kelmans_weight: u32,
    pub acceptance: Acceptance,
}

impl SearchConfig {
    pub fn new(m: usize, forbidden: Option<Forbidden>, restarts: usize, seed: u64) -> Self {
        SearchConfig {
            m,
            forbidden,
            restarts,
            max_steps: 2000,
            seed,
            relocation_weight: 1,
            kelmans_weight: 1,
            acceptance: Acceptance::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.restarts < 1 {
            return Err(Error::InvalidParameter("restarts must be >= 1".into()));
        }
        if self.relocation_weight == 0 && self.kelmans_weight == 0 {
            return Err(Error::InvalidParameter(
                "at least one move weight must be positive".into(),
            ));
        }
        if self.m < 1 {
            return Err(Error::InvalidParameter("m must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TracePoint {
    pub step: usize,
    pub rho: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundComparison {
    pub k: usize,
    pub bound: f64,
    pub best_rho: f64,
    pub exceeded: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchReport {
    pub m: usize,
    pub predicate: String,
    pub restarts: usize,
    pub seed: u64,
    /// canonical graph6 of the best graph found, isolated vertices stripped
    pub best_graph6: String,
    pub best_rho: f64,
    pub traces: Vec<Vec<TracePoint>>,
    pub bound_comparison: Option<BoundComparison>,
    /// whether the best graph is isomorphic to K_k ∨ sK_1 of size m, when
    /// that graph exists
    pub iso_to_extremal: Option<bool>,
}

/// Hill-climbing search over H-free graphs of size m. Restarts run in
/// parallel, each owning the RNG stream seeded `seed + index`; the merged
/// report is deterministic for a fixed config.
pub fn local_search(cfg: &SearchConfig) -> Result<SearchReport> {
    cfg.validate()?;
    let pool = 2 * cfg.m;
    let runs: Vec<(Graph, f64, Vec<TracePoint>)> = (0..cfg.restarts)
        .into_par_iter()
        .map(|i| run_restart(cfg, pool, cfg.seed.wrapping_add(i as u64)))
        .collect();
    let mut best: Option<(Graph, f64, Vec<u8>)> = None;
    let mut traces = Vec::with_capacity(cfg.restarts);
    for (g, rho, trace) in runs {
        traces.push(trace);
        let replace = match &best {
            None => true,
            Some((_, brho, blabel)) => {
                rho > *brho + IMPROVE_TOL
                    || (rho >= *brho - IMPROVE_TOL && canonical_label(&g) < *blabel)
            }
        };
        if replace {
            let label = canonical_label(&g);
            best = Some((g, rho, label));
        }
    }
    let (best_graph, best_rho, _) = best.expect("restarts >= 1");
    debug_assert_eq!(best_graph.m(), cfg.m);
    let bound_comparison = cfg.forbidden.as_ref().map(|fb| {
        let k = fb.bound_k();
        let bound = closed_form_bound(k, cfg.m).expect("discriminant is positive at these sizes");
        BoundComparison {
            k,
            bound,
            best_rho,
            exceeded: best_rho > bound + BOUND_TOL,
        }
    });
    let iso_to_extremal = cfg.forbidden.as_ref().and_then(|fb| {
        build_extremal(fb.bound_k(), cfg.m).ok().map(|ext| {
            canonical_label(&best_graph) == canonical_label(&ext)
        })
    });
    Ok(SearchReport {
        m: cfg.m,
        predicate: cfg.forbidden.map_or("none".to_string(), |f| f.name()),
        restarts: cfg.restarts,
        seed: cfg.seed,
        best_graph6: graph6_encode(&canonical_form(&best_graph).0),
        best_rho,
        traces,
        bound_comparison,
        iso_to_extremal,
    })
}

fn is_free(forbidden: Option<&Forbidden>, g: &Graph) -> bool {
    forbidden.map_or(true, |f| f.is_free(g))
}

fn random_free_graph(
    m: usize,
    pool: usize,
    forbidden: Option<&Forbidden>,
    rng: &mut ChaCha8Rng,
) -> Graph {
    let mut g = Graph::empty(pool);
    let mut attempts = 0usize;
    while g.m() < m {
        let u = rng.gen_range(0..pool);
        let v = rng.gen_range(0..pool);
        attempts += 1;
        assert!(
            attempts < 100_000,
            "could not build a random free graph of size {m}"
        );
        if u == v || g.has_edge(u, v) {
            continue;
        }
        let candidate = g.adding_edge(u, v).expect("valid vertices");
        if is_free(forbidden, &candidate) {
            g = candidate;
        }
    }
    g
}

fn run_restart(cfg: &SearchConfig, pool: usize, seed: u64) -> (Graph, f64, Vec<TracePoint>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forbidden = cfg.forbidden.as_ref();
    let mut current = random_free_graph(cfg.m, pool, forbidden, &mut rng);
    let mut perron = spectral_radius(&current);
    let mut best = (current.clone().strip_isolated().0, perron.rho);
    let mut trace = vec![TracePoint {
        step: 0,
        rho: perron.rho,
    }];
    let mut plateau_steps = 0usize;
    let mut temperature = match cfg.acceptance {
        Acceptance::Anneal {
            initial_temperature,
            ..
        } => initial_temperature,
        _ => 0.0,
    };
    let total_weight = cfg.relocation_weight + cfg.kelmans_weight;
    for step in 1..=cfg.max_steps {
        let proposal = if rng.gen_range(0..total_weight) < cfg.relocation_weight {
            propose_relocation(&current, &perron, &mut rng)
        } else {
            propose_kelmans(&current, &perron, &mut rng)
        };
        let Some(candidate) = proposal else { continue };
        debug_assert_eq!(candidate.m(), cfg.m);
        if !is_free(forbidden, &candidate) {
            continue;
        }
        let cand_perron = spectral_radius(&candidate);
        let delta = cand_perron.rho - perron.rho;
        let accept = match cfg.acceptance {
            Acceptance::HillClimb {
                plateau_tol,
                plateau_cap,
            } => {
                if delta > IMPROVE_TOL {
                    plateau_steps = 0;
                    true
                } else if delta.abs() <= plateau_tol && plateau_steps < plateau_cap {
                    plateau_steps += 1;
                    true
                } else {
                    false
                }
            }
            Acceptance::Anneal { cooling, .. } => {
                temperature *= cooling;
                delta > IMPROVE_TOL
                    || (temperature > 0.0 && rng.gen::<f64>() < (delta / temperature).exp())
            }
        };
        if accept {
            current = candidate;
            perron = cand_perron;
            if perron.rho > best.1 + IMPROVE_TOL {
                best = (current.strip_isolated().0, perron.rho);
                trace.push(TracePoint {
                    step,
                    rho: perron.rho,
                });
            }
        }
    }
    (best.0, best.1, trace)
}

fn propose_relocation(g: &Graph, p: &PerronData, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let edges = g.edges();
    // Perron-guided: drop the sampled edge of least x_u·x_v (smallest
    // Rayleigh loss) and add the sampled non-edge of greatest x_a·x_b
    // (largest Rayleigh gain). Sampling keeps restarts diverse.
    let (mut du, mut dv) = edges[rng.gen_range(0..edges.len())];
    for _ in 0..8 {
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        if p.x[u] * p.x[v] < p.x[du] * p.x[dv] {
            (du, dv) = (u, v);
        }
    }
    let n = g.n();
    let mut add: Option<(usize, usize)> = None;
    for _ in 0..64 {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b || g.has_edge(a, b) || (a, b) == (du, dv) || (b, a) == (du, dv) {
            continue;
        }
        if add.map_or(true, |(c, d)| p.x[a] * p.x[b] > p.x[c] * p.x[d]) {
            add = Some((a, b));
        }
    }
    let (a, b) = add?;
    let mut out = g.removing_edge(du, dv).expect("edge exists");
    out = out.adding_edge(a, b).expect("valid vertices");
    Some(out)
}

fn propose_kelmans(g: &Graph, p: &PerronData, rng: &mut ChaCha8Rng) -> Option<Graph> {
    let n = g.n();
    for _ in 0..32 {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        // shift toward the higher-Perron endpoint
        let (hi, lo) = if p.x[a] >= p.x[b] { (a, b) } else { (b, a) };
        let mut shift = g.row(lo).difference(g.row(hi));
        if shift.contains(hi) {
            shift.remove(hi);
        }
        if shift.is_empty() {
            continue;
        }
        return kelmans_shift(g, hi, lo, &shift).ok();
    }
    None
}

/// A single admissible move and the ρ it reaches.
#[derive(Clone, Debug, Serialize)]
pub struct MoveOutcome {
    pub description: String,
    pub rho: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalMaxCertificate {
    pub is_local_max: bool,
    pub rho: f64,
    /// best move found; improving when `is_local_max` is false
    pub best_move: Option<MoveOutcome>,
}

/// Exhaustive single-move scan: true iff no admissible edge relocation or
/// full edge shift (both preserving freeness and size, over the graph plus
/// one spare vertex) increases ρ by more than 1e-10.
pub fn is_local_max(g: &Graph, forbidden: Option<Forbidden>) -> Result<LocalMaxCertificate> {
    if g.min_degree() == 0 && g.n() > 0 {
        return Err(Error::InvalidParameter(
            "is_local_max expects a graph without isolated vertices".into(),
        ));
    }
    if !is_free(forbidden.as_ref(), g) {
        return Err(Error::InvalidParameter(
            "graph does not satisfy the freeness predicate".into(),
        ));
    }
    let base = spectral_radius(g);
    let host = crate::graph::union(g, &Graph::empty(1)); // spare vertex
    let n = host.n();
    let fb = forbidden.as_ref();
    let mut best: Option<MoveOutcome> = None;
    let mut consider = |candidate: &Graph, description: String| {
        let rho = spectral_radius(candidate).rho;
        if best.as_ref().map_or(true, |b| rho > b.rho) {
            best = Some(MoveOutcome { description, rho });
        }
    };
    // all single-edge relocations
    for (du, dv) in host.edges() {
        let removed = host.removing_edge(du, dv).expect("edge exists");
        for a in 0..n {
            for b in a + 1..n {
                if removed.has_edge(a, b) || (a, b) == (du, dv) {
                    continue;
                }
                let candidate = removed.adding_edge(a, b).expect("valid vertices");
                if !is_free(fb, &candidate) {
                    continue;
                }
                consider(
                    &candidate,
                    format!("relocate {du}-{dv} to {a}-{b}"),
                );
            }
        }
    }
    // full and singleton edge shifts for every ordered pair
    for hi in 0..n {
        for lo in 0..n {
            if hi == lo {
                continue;
            }
            let mut shift = host.row(lo).difference(host.row(hi));
            if shift.contains(hi) {
                shift.remove(hi);
            }
            if shift.is_empty() {
                continue;
            }
            let mut variants: Vec<(VertexSet, String)> = vec![(
                shift.clone(),
                format!("shift N({lo})\\N({hi}) from {lo} to {hi}"),
            )];
            for w in shift.iter() {
                variants.push((
                    VertexSet::from_iter(n, [w]),
                    format!("shift {{{w}}} from {lo} to {hi}"),
                ));
            }
            for (s, description) in variants {
                let candidate = kelmans_shift(&host, hi, lo, &s).expect("admissible shift");
                if !is_free(fb, &candidate) {
                    continue;
                }
                consider(&candidate, description);
            }
        }
    }
    let is_local_max = best
        .as_ref()
        .map_or(true, |b| b.rho <= base.rho + 1e-10);
    Ok(LocalMaxCertificate {
        is_local_max,
        rho: base.rho,
        best_move: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    #[test]
    fn config_validation() {
        let mut cfg = SearchConfig::new(5, None, 0, 1);
        assert!(cfg.validate().is_err());
        cfg.restarts = 1;
        cfg.relocation_weight = 0;
        cfg.kelmans_weight = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn search_is_reproducible() {
        let mut cfg = SearchConfig::new(9, Some(Forbidden::Fan(3)), 4, 42);
        cfg.max_steps = 300;
        let a = local_search(&cfg).unwrap();
        let b = local_search(&cfg).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn traces_are_monotone() {
        let mut cfg = SearchConfig::new(8, Some(Forbidden::Fan(5)), 4, 7);
        cfg.max_steps = 300;
        let report = local_search(&cfg).unwrap();
        for trace in &report.traces {
            for w in trace.windows(2) {
                assert!(w[1].rho > w[0].rho);
            }
        }
    }

    #[test]
    fn p4_is_not_a_local_max() {
        let p4 = build_family(&FamilySpec::Path(4)).unwrap();
        let cert = is_local_max(&p4, Some(Forbidden::Fan(7))).unwrap();
        assert!(!cert.is_local_max);
        let best = cert.best_move.unwrap();
        assert!(best.rho > cert.rho + 1e-10);
        assert!((best.rho - 2.0).abs() < 1e-9); // K3 is the 3-edge maximum
    }

    #[test]
    fn k33_is_local_max_under_triangle_freeness() {
        let k33 = build_family(&FamilySpec::CompleteBipartite(3, 3)).unwrap();
        let cert = is_local_max(&k33, Some(Forbidden::Fan(3))).unwrap();
        assert!(cert.is_local_max);
        assert!((cert.rho - 3.0).abs() <= 1e-9);
    }
}
