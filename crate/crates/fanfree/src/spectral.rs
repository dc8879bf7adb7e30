//! Spectral radius and Perron vector computation, equitable quotient
//! matrices, and the closed-form extremal bound.
//!
//! The solver is shifted power iteration (A + I, which keeps the dominant
//! eigenvalue simple on bipartite components) with Rayleigh-quotient
//! extraction, run until the eigen residual drops below 1e-12. If the
//! iteration cap is hit, graphs with at most 64 vertices fall back to a full
//! Jacobi eigendecomposition.

use crate::bitset::VertexSet;
use crate::canon::canonical_label;
use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::Serialize;

/// Internal solver tolerance on the eigen residual max|Ax - rho x|.
pub const SOLVER_TOL: f64 = 1e-12;
/// Tolerance for cross-check assertions between independent routes.
pub const CROSS_TOL: f64 = 1e-9;

const MAX_ITER: usize = 1_000_000;

/// Spectral radius with its Perron vector, normalized to unit max-norm.
#[derive(Clone, Debug, Serialize)]
pub struct PerronData {
    pub rho: f64,
    pub x: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Spectral radius of `g`. For disconnected graphs rho is the maximum over
/// components and `x` is supported on one achieving component (lowest
/// canonical label, then lowest vertex index, on ties), zero elsewhere.
pub fn spectral_radius(g: &Graph) -> PerronData {
    let n = g.n();
    if n == 0 {
        return PerronData {
            rho: 0.0,
            x: Vec::new(),
            residual: 0.0,
            iterations: 0,
        };
    }
    let comps = g.components();
    if comps.len() == 1 {
        return solve_connected(g);
    }
    let mut best: Option<(PerronData, Vec<u8>, usize, &VertexSet, Graph, Vec<usize>)> = None;
    for comp in &comps {
        let (sub, map) = g.induced(comp).expect("component set is well-formed");
        let p = solve_connected(&sub);
        let replace = match &best {
            None => true,
            Some((bp, blabel, bmin, ..)) => {
                if p.rho > bp.rho + SOLVER_TOL {
                    true
                } else if p.rho >= bp.rho - SOLVER_TOL {
                    let label = canonical_label(&sub);
                    label < *blabel
                        || (label == *blabel && comp.min().unwrap_or(usize::MAX) < *bmin)
                } else {
                    false
                }
            }
        };
        if replace {
            let label = canonical_label(&sub);
            let min = comp.min().unwrap_or(usize::MAX);
            best = Some((p, label, min, comp, sub, map));
        }
    }
    let (p, _, _, _, _, map) = best.expect("n >= 1 implies a component");
    let mut x = vec![0.0; n];
    for (i, &v) in map.iter().enumerate() {
        x[v] = p.x[i];
    }
    PerronData {
        rho: p.rho,
        x,
        residual: p.residual,
        iterations: p.iterations,
    }
}

fn apply_adjacency(g: &Graph, x: &[f64], out: &mut [f64]) {
    for v in 0..g.n() {
        let mut s = 0.0;
        for u in g.row(v).iter() {
            s += x[u];
        }
        out[v] = s;
    }
}

fn residual_of(ax: &[f64], x: &[f64], rho: f64) -> f64 {
    ax.iter()
        .zip(x)
        .map(|(a, b)| (a - rho * b).abs())
        .fold(0.0, f64::max)
}

fn solve_connected(g: &Graph) -> PerronData {
    let n = g.n();
    if g.m() == 0 {
        return PerronData {
            rho: 0.0,
            x: vec![1.0; n],
            residual: 0.0,
            iterations: 0,
        };
    }
    let mut x = vec![1.0; n];
    let mut ax = vec![0.0; n];
    let mut iterations = 0;
    let mut rho;
    let mut residual;
    let mut prev_rho = f64::NEG_INFINITY;
    loop {
        iterations += 1;
        apply_adjacency(g, &x, &mut ax);
        let num: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|a| a * a).sum();
        rho = num / den;
        residual = residual_of(&ax, &x, rho);
        // the absolute residual floor is rho·eps, so large graphs stop on
        // Rayleigh-quotient stagnation with a scale-aware residual guard
        let stagnant =
            (rho - prev_rho).abs() <= 1e-13 && residual <= SOLVER_TOL * (1.0 + rho) * 8.0;
        prev_rho = rho;
        if residual <= SOLVER_TOL || stagnant || iterations >= MAX_ITER {
            break;
        }
        // shifted step: y = (A + I) x, normalized to max 1
        let mut max = 0.0f64;
        for v in 0..n {
            ax[v] += x[v];
            max = max.max(ax[v]);
        }
        for v in 0..n {
            x[v] = ax[v] / max;
        }
    }
    if residual > SOLVER_TOL && n <= 64 {
        if let Some(p) = jacobi_perron(g) {
            return p;
        }
    }
    let max = x.iter().cloned().fold(0.0f64, f64::max);
    for v in x.iter_mut() {
        *v /= max;
    }
    apply_adjacency(g, &x, &mut ax);
    let num: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
    let den: f64 = x.iter().map(|a| a * a).sum();
    rho = num / den;
    residual = residual_of(&ax, &x, rho);
    PerronData {
        rho,
        x,
        residual,
        iterations,
    }
}

/// Full symmetric eigendecomposition fallback for small graphs.
fn jacobi_perron(g: &Graph) -> Option<PerronData> {
    let n = g.n();
    let mut a = vec![vec![0.0f64; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = 1.0;
        a[v][u] = 1.0;
    }
    let (vals, vecs) = jacobi_eigen(&mut a);
    let (k, &rho) = vals
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.partial_cmp(y.1).unwrap())?;
    let mut x: Vec<f64> = (0..n).map(|v| vecs[v][k]).collect();
    let max_abs = x.iter().cloned().map(f64::abs).fold(0.0f64, f64::max);
    let sign = x
        .iter()
        .cloned()
        .max_by(|p, q| p.abs().partial_cmp(&q.abs()).unwrap())?
        .signum();
    for v in x.iter_mut() {
        *v = *v * sign / max_abs;
    }
    let mut ax = vec![0.0; n];
    apply_adjacency(g, &x, &mut ax);
    let residual = residual_of(&ax, &x, rho);
    Some(PerronData {
        rho,
        x,
        residual,
        iterations: MAX_ITER,
    })
}

/// Cyclic Jacobi rotations on a symmetric matrix. Returns eigenvalues and
/// the matrix of eigenvectors (column k belongs to eigenvalue k).
fn jacobi_eigen(a: &mut [Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n];
    for i in 0..n {
        v[i][i] = 1.0;
    }
    for _sweep in 0..200 {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-28 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-16 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let vals = (0..n).map(|i| a[i][i]).collect();
    (vals, v)
}

/// Rayleigh quotient yᵀA y / yᵀy; always at most rho(G) up to round-off.
pub fn rayleigh_quotient(g: &Graph, y: &[f64]) -> Result<f64> {
    if y.len() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "vector length {} does not match n = {}",
            y.len(),
            g.n()
        )));
    }
    let den: f64 = y.iter().map(|a| a * a).sum();
    if den == 0.0 {
        return Err(Error::InvalidParameter("zero vector".into()));
    }
    let mut ay = vec![0.0; g.n()];
    apply_adjacency(g, y, &mut ay);
    let num: f64 = y.iter().zip(&ay).map(|(a, b)| a * b).sum();
    Ok(num / den)
}

/// Vertex partition with its quotient matrix and equitability certificate.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientMatrix {
    #[serde(skip)]
    pub partition: Vec<VertexSet>,
    pub matrix: Vec<Vec<f64>>,
    pub equitable: bool,
}

/// Quotient matrix of `g` under `partition`. Equitability is decided by an
/// exact integer check: every vertex of cell i must have the same number of
/// neighbors in cell j.
pub fn quotient_matrix(g: &Graph, partition: &[VertexSet]) -> Result<QuotientMatrix> {
    let n = g.n();
    let mut covered = VertexSet::new(n);
    for (i, cell) in partition.iter().enumerate() {
        if cell.universe() != n {
            return Err(Error::InvalidParameter(format!(
                "cell {i} is over {} vertices, graph has {n}",
                cell.universe()
            )));
        }
        if cell.is_empty() {
            return Err(Error::InvalidParameter(format!("cell {i} is empty")));
        }
        if !covered.is_disjoint(cell) {
            return Err(Error::InvalidParameter(format!("cell {i} overlaps an earlier cell")));
        }
        covered = covered.union(cell);
    }
    if covered.len() != n {
        return Err(Error::InvalidParameter(
            "partition does not cover the vertex set".into(),
        ));
    }
    let k = partition.len();
    let mut matrix = vec![vec![0.0f64; k]; k];
    let mut equitable = true;
    for (i, cell_i) in partition.iter().enumerate() {
        for (j, cell_j) in partition.iter().enumerate() {
            let mut counts = cell_i.iter().map(|v| g.row(v).intersection(cell_j).len());
            let first = counts.next().expect("cells are nonempty");
            let mut sum = first;
            let mut constant = true;
            for d in counts {
                constant &= d == first;
                sum += d;
            }
            if constant {
                matrix[i][j] = first as f64;
            } else {
                equitable = false;
                matrix[i][j] = sum as f64 / cell_i.len() as f64;
            }
        }
    }
    Ok(QuotientMatrix {
        partition: partition.to_vec(),
        matrix,
        equitable,
    })
}

/// Largest eigenvalue of an equitable quotient matrix; equals the spectral
/// radius of the underlying connected graph.
pub fn quotient_rho(q: &QuotientMatrix) -> Result<f64> {
    if !q.equitable {
        return Err(Error::Contract(
            "quotient_rho requires an equitable partition".into(),
        ));
    }
    let k = q.matrix.len();
    if k == 0 {
        return Ok(0.0);
    }
    // power iteration with unit shift; the quotient of an equitable partition
    // of a connected graph is nonnegative and irreducible
    let mut x = vec![1.0f64; k];
    let mut bx = vec![0.0f64; k];
    let mut rho = 0.0;
    for _ in 0..MAX_ITER {
        for i in 0..k {
            bx[i] = (0..k).map(|j| q.matrix[i][j] * x[j]).sum();
        }
        let num: f64 = x.iter().zip(&bx).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|a| a * a).sum();
        rho = num / den;
        let res = residual_of(&bx, &x, rho);
        if res <= SOLVER_TOL {
            break;
        }
        let mut max = 0.0f64;
        for i in 0..k {
            bx[i] += x[i];
            max = max.max(bx[i].abs());
        }
        for i in 0..k {
            x[i] = bx[i] / max;
        }
    }
    Ok(rho)
}

/// The conjectured ceiling (k−1+√(4m−k²+1))/2 for fan-free graphs.
pub fn closed_form_bound(k: usize, m: usize) -> Result<f64> {
    let disc = 4.0 * m as f64 - (k * k) as f64 + 1.0;
    if disc < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "negative discriminant 4m - k^2 + 1 for k = {k}, m = {m}"
        )));
    }
    let bound = ((k as f64 - 1.0) + disc.sqrt()) / 2.0;
    if k == 3 && m >= 2 {
        debug_assert!((bound - (1.0 + ((m - 2) as f64).sqrt())).abs() <= 1e-12);
    }
    Ok(bound)
}
