//! Spectral quantities: quadratic forms, the smallest nonzero normalized
//! Laplacian eigenvalue, measured spectral-approximation quality, relative
//! norms, and Loewner-order checks.
//!
//! The approximation factor sigma between two graphs is measured as the
//! extreme generalized eigenvalues of the Laplacian pencil restricted off the
//! common nullspace (per-component indicator vectors). If the two graphs have
//! different connected-component partitions, sigma is infinite.

use crate::eig::{pencil_eigenvalues, sym_eigenvalues, SymMatrix};
use crate::error::{Error, Result};
use crate::graph::{connected_components, DegreeContext, UnionFind, VertexSet, WeightedGraph};
use crate::rng::SplitMix64;

/// Vertex counts up to which eigensolves use the dense path.
pub const DENSE_THRESHOLD: usize = 2000;

/// How sigma / lambda2 were computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralMethod {
    ExactDense,
    IterativeEstimate,
}

/// Measured approximation quality of a pair of graphs.
#[derive(Clone, Debug)]
pub struct ApproximationReport {
    /// Smallest sigma with (1/sigma) x'L~x <= x'Lx <= sigma x'L~x; infinite
    /// when the component partitions differ.
    pub sigma: f64,
    pub pencil_min: f64,
    pub pencil_max: f64,
    /// Spectral norm of D^{-1/2} (L - L~) D^{-1/2}, D from the union support.
    pub rel_norm: f64,
    pub method: SpectralMethod,
}

/// Smallest nonzero normalized-Laplacian eigenvalue estimate.
#[derive(Clone, Debug)]
pub struct SpectralEstimate {
    pub lambda2: f64,
    pub residual: f64,
    pub disconnected: bool,
    pub method: SpectralMethod,
}

/// x' L_G x = sum over edges of w (x(u) - x(v))^2, in sorted edge order.
pub fn quadratic_form(g: &WeightedGraph, x: &[f64]) -> Result<f64> {
    if x.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: x.len(),
        });
    }
    let mut total = 0.0;
    for e in g.edges() {
        let d = x[e.u] - x[e.v];
        total += e.w * d * d;
    }
    Ok(total)
}

fn laplacian_dense(g: &WeightedGraph, verts: &[usize]) -> SymMatrix {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in verts.iter().enumerate() {
        pos[v] = i;
    }
    let mut m = SymMatrix::zeros(verts.len());
    for e in g.edges() {
        let (pu, pv) = (pos[e.u], pos[e.v]);
        if pu == usize::MAX || pv == usize::MAX {
            continue;
        }
        m.add(pu, pu, e.w);
        m.add(pv, pv, e.w);
        m.add(pu, pv, -e.w);
    }
    m
}

/// lambda2 of D^{-1/2} L_G D^{-1/2} with D from the context degrees.
/// Dense solve up to [`DENSE_THRESHOLD`] active vertices, power iteration
/// with deflation of D^{1/2} 1 above it. A disconnected graph reports
/// lambda2 = 0 with the flag set rather than an error.
pub fn normalized_lambda2(g: &WeightedGraph, ctx: &DegreeContext) -> Result<SpectralEstimate> {
    normalized_lambda2_with(g, ctx, DENSE_THRESHOLD)
}

pub fn normalized_lambda2_with(
    g: &WeightedGraph,
    ctx: &DegreeContext,
    dense_threshold: usize,
) -> Result<SpectralEstimate> {
    if ctx.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: ctx.len(),
        });
    }
    let active: Vec<usize> = (0..g.n()).filter(|&v| g.unweighted_degree(v) > 0).collect();
    for &v in &active {
        if ctx.degree(v) == 0 {
            return Err(Error::ZeroDegree { v });
        }
    }
    if active.len() < 2 {
        return Ok(SpectralEstimate {
            lambda2: 0.0,
            residual: 0.0,
            disconnected: false,
            method: SpectralMethod::ExactDense,
        });
    }
    let mut uf = UnionFind::new(g.n());
    for e in g.edges() {
        uf.union(e.u, e.v);
    }
    let root = uf.find(active[0]);
    if active.iter().any(|&v| uf.find(v) != root) {
        return Ok(SpectralEstimate {
            lambda2: 0.0,
            residual: 0.0,
            disconnected: true,
            method: SpectralMethod::ExactDense,
        });
    }

    if active.len() <= dense_threshold {
        let mut m = laplacian_dense(g, &active);
        let k = active.len();
        let inv_sqrt: Vec<f64> = active
            .iter()
            .map(|&v| 1.0 / (ctx.degree(v) as f64).sqrt())
            .collect();
        for i in 0..k {
            for j in i..k {
                let x = m.get(i, j) * inv_sqrt[i] * inv_sqrt[j];
                m.set(i, j, x);
            }
        }
        let vals = sym_eigenvalues(&m)?;
        Ok(SpectralEstimate {
            lambda2: vals[1].clamp(0.0, 2.0),
            residual: 0.0,
            disconnected: false,
            method: SpectralMethod::ExactDense,
        })
    } else {
        let (lambda2, residual) = lambda2_power_iteration(g, ctx, &active, 1);
        Ok(SpectralEstimate {
            lambda2: lambda2.clamp(0.0, 2.0),
            residual,
            disconnected: false,
            method: SpectralMethod::IterativeEstimate,
        })
    }
}

/// Power iteration for lambda2 on 2I - normalized Laplacian, deflating the
/// known nullvector D^{1/2} 1. Tolerance 1e-6, at most 10 n iterations.
fn lambda2_power_iteration(
    g: &WeightedGraph,
    ctx: &DegreeContext,
    active: &[usize],
    seed: u64,
) -> (f64, f64) {
    let k = active.len();
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in active.iter().enumerate() {
        pos[v] = i;
    }
    let sqrt_d: Vec<f64> = active
        .iter()
        .map(|&v| (ctx.degree(v) as f64).sqrt())
        .collect();
    let norm0 = sqrt_d.iter().map(|x| x * x).sum::<f64>().sqrt();
    let u0: Vec<f64> = sqrt_d.iter().map(|x| x / norm0).collect();
    let inv_sqrt: Vec<f64> = sqrt_d.iter().map(|x| 1.0 / x).collect();

    // y = normalized-Laplacian times x
    let apply = |x: &[f64], y: &mut [f64]| {
        for i in 0..k {
            y[i] = g.weighted_degree(active[i]) * inv_sqrt[i] * inv_sqrt[i] * x[i];
        }
        for e in g.edges() {
            let (pu, pv) = (pos[e.u], pos[e.v]);
            if pu == usize::MAX || pv == usize::MAX {
                continue;
            }
            y[pu] -= e.w * inv_sqrt[pu] * inv_sqrt[pv] * x[pv];
            y[pv] -= e.w * inv_sqrt[pu] * inv_sqrt[pv] * x[pu];
        }
    };

    let mut rng = SplitMix64::new(seed);
    let mut x: Vec<f64> = (0..k).map(|_| rng.next_f64() - 0.5).collect();
    let mut y = vec![0.0; k];
    let max_iters = 10 * k;
    let mut nu = 0.0;
    let mut residual = f64::INFINITY;
    for it in 0..max_iters {
        // deflate and normalize
        let dot: f64 = x.iter().zip(&u0).map(|(a, b)| a * b).sum();
        for i in 0..k {
            x[i] -= dot * u0[i];
        }
        let norm: f64 = x.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            x = (0..k).map(|_| rng.next_f64() - 0.5).collect();
            continue;
        }
        for a in x.iter_mut() {
            *a /= norm;
        }
        apply(&x, &mut y);
        // x' (2I - cal L) x maximized; nu = x' cal L x here.
        nu = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        if it % 4 == 3 || it + 1 == max_iters {
            residual = y
                .iter()
                .zip(&x)
                .map(|(yy, xx)| (yy - nu * xx) * (yy - nu * xx))
                .sum::<f64>()
                .sqrt();
            if residual <= 1e-6 {
                break;
            }
        }
        for i in 0..k {
            x[i] = 2.0 * x[i] - y[i];
        }
    }
    (nu.max(0.0), residual)
}

fn component_partition(g: &WeightedGraph) -> Vec<VertexSet> {
    connected_components(g, g.edges())
}

/// Orthonormal basis of the complement of per-component indicators: one
/// Helmert block per component, stored column-major.
fn indicator_complement_basis(n: usize, components: &[VertexSet]) -> Vec<Vec<f64>> {
    let mut cols = Vec::new();
    for comp in components {
        let ids: Vec<usize> = comp.iter().collect();
        for c in 1..ids.len() {
            let mut col = vec![0.0; n];
            let scale = 1.0 / ((c * (c + 1)) as f64).sqrt();
            for &v in ids.iter().take(c) {
                col[v] = scale;
            }
            col[ids[c]] = -(c as f64) * scale;
            cols.push(col);
        }
    }
    cols
}

/// Q' L Q where Q has the given columns.
fn project_laplacian(g: &WeightedGraph, cols: &[Vec<f64>]) -> SymMatrix {
    let k = cols.len();
    // X = L Q, per column via edges.
    let mut x = vec![vec![0.0f64; g.n()]; k];
    for (c, col) in cols.iter().enumerate() {
        let xc = &mut x[c];
        for e in g.edges() {
            let d = e.w * (col[e.u] - col[e.v]);
            xc[e.u] += d;
            xc[e.v] -= d;
        }
    }
    let mut m = SymMatrix::zeros(k);
    for i in 0..k {
        for j in i..k {
            let s: f64 = cols[i].iter().zip(&x[j]).map(|(a, b)| a * b).sum();
            m.set(i, j, s);
        }
    }
    m
}

/// Smallest sigma for which g_tilde is a sigma-spectral approximation of g,
/// via the generalized eigenvalues of (L_G, L_G~) off the common nullspace.
/// Infinite sigma (different component partitions) is a value, not an error.
pub fn sigma_approximation(g: &WeightedGraph, gt: &WeightedGraph) -> Result<ApproximationReport> {
    if g.n() != gt.n() {
        return Err(Error::VertexCountMismatch {
            left: g.n(),
            right: gt.n(),
        });
    }
    let rel_norm = relative_norm_union(g, gt)?;
    let comp_g = component_partition(g);
    let comp_gt = component_partition(gt);
    if comp_g != comp_gt {
        return Ok(ApproximationReport {
            sigma: f64::INFINITY,
            pencil_min: 0.0,
            pencil_max: f64::INFINITY,
            rel_norm,
            method: SpectralMethod::ExactDense,
        });
    }
    let cols = indicator_complement_basis(g.n(), &comp_gt);
    if cols.is_empty() {
        // Both graphs are edgeless: identical zero quadratic forms.
        return Ok(ApproximationReport {
            sigma: 1.0,
            pencil_min: 1.0,
            pencil_max: 1.0,
            rel_norm,
            method: SpectralMethod::ExactDense,
        });
    }
    let a = project_laplacian(g, &cols);
    let b = project_laplacian(gt, &cols);
    let vals = pencil_eigenvalues(&a, &b)?;
    let pencil_min = vals[0].max(1e-300);
    let pencil_max = *vals.last().unwrap();
    let sigma = pencil_max.max(1.0 / pencil_min).max(1.0);
    Ok(ApproximationReport {
        sigma,
        pencil_min,
        pencil_max,
        rel_norm,
        method: SpectralMethod::ExactDense,
    })
}

/// Spectral norm of D^{-1/2} (L_G - L_G~) D^{-1/2}.
pub fn relative_norm(g: &WeightedGraph, gt: &WeightedGraph, ctx: &DegreeContext) -> Result<f64> {
    if g.n() != gt.n() {
        return Err(Error::VertexCountMismatch {
            left: g.n(),
            right: gt.n(),
        });
    }
    if ctx.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: ctx.len(),
        });
    }
    let active: Vec<usize> = (0..g.n())
        .filter(|&v| g.unweighted_degree(v) > 0 || gt.unweighted_degree(v) > 0)
        .collect();
    for &v in &active {
        if ctx.degree(v) == 0 {
            return Err(Error::ZeroDegree { v });
        }
    }
    if active.is_empty() {
        return Ok(0.0);
    }
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in active.iter().enumerate() {
        pos[v] = i;
    }
    let inv_sqrt: Vec<f64> = active
        .iter()
        .map(|&v| 1.0 / (ctx.degree(v) as f64).sqrt())
        .collect();
    let mut m = SymMatrix::zeros(active.len());
    let mut add_edges = |edges: &[crate::graph::Edge], sign: f64| {
        for e in edges {
            let (pu, pv) = (pos[e.u], pos[e.v]);
            let w = sign * e.w;
            m.add(pu, pu, w * inv_sqrt[pu] * inv_sqrt[pu]);
            m.add(pv, pv, w * inv_sqrt[pv] * inv_sqrt[pv]);
            m.add(pu, pv, -w * inv_sqrt[pu] * inv_sqrt[pv]);
        }
    };
    add_edges(g.edges(), 1.0);
    add_edges(gt.edges(), -1.0);
    let vals = sym_eigenvalues(&m)?;
    Ok(vals[0].abs().max(vals.last().unwrap().abs()))
}

/// relative_norm with degrees taken from the union support of both graphs,
/// which is positive everywhere L - L~ can be nonzero.
fn relative_norm_union(g: &WeightedGraph, gt: &WeightedGraph) -> Result<f64> {
    let degrees: Vec<usize> = (0..g.n())
        .map(|v| {
            let d = g.unweighted_degree(v).max(gt.unweighted_degree(v));
            d.max(usize::from(d == 0))
        })
        .collect();
    relative_norm(g, gt, &DegreeContext::new(degrees))
}

/// Iterative estimate of the relative norm for graphs too large for the
/// dense path: power iteration on the difference matrix.
pub fn relative_norm_estimate(
    g: &WeightedGraph,
    gt: &WeightedGraph,
    ctx: &DegreeContext,
    iters: usize,
    seed: u64,
) -> Result<f64> {
    if g.n() != gt.n() {
        return Err(Error::VertexCountMismatch {
            left: g.n(),
            right: gt.n(),
        });
    }
    let n = g.n();
    let inv_sqrt: Vec<f64> = (0..n)
        .map(|v| {
            let d = ctx.degree(v);
            if d == 0 {
                0.0
            } else {
                1.0 / (d as f64).sqrt()
            }
        })
        .collect();
    let apply = |x: &[f64], y: &mut [f64]| {
        for yi in y.iter_mut() {
            *yi = 0.0;
        }
        for e in g.edges() {
            let (u, v) = (e.u, e.v);
            y[u] += e.w * inv_sqrt[u] * (inv_sqrt[u] * x[u] - inv_sqrt[v] * x[v]);
            y[v] += e.w * inv_sqrt[v] * (inv_sqrt[v] * x[v] - inv_sqrt[u] * x[u]);
        }
        for e in gt.edges() {
            let (u, v) = (e.u, e.v);
            y[u] -= e.w * inv_sqrt[u] * (inv_sqrt[u] * x[u] - inv_sqrt[v] * x[v]);
            y[v] -= e.w * inv_sqrt[v] * (inv_sqrt[v] * x[v] - inv_sqrt[u] * x[u]);
        }
    };
    let mut rng = SplitMix64::new(seed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
    let mut y = vec![0.0; n];
    let mut norm_est = 0.0;
    for _ in 0..iters.max(1) {
        let norm: f64 = x.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Ok(0.0);
        }
        for a in x.iter_mut() {
            *a /= norm;
        }
        // Square the operator so the estimate converges to |lambda|_max.
        apply(&x, &mut y);
        apply(&y, &mut x);
        norm_est = x.iter().map(|a| a * a).sum::<f64>().sqrt().sqrt();
    }
    Ok(norm_est)
}

/// Default tolerance for Loewner comparisons: eigensolve roundoff scales
/// with the matrix norm.
pub fn default_loewner_tol(g: &WeightedGraph, h: &WeightedGraph) -> f64 {
    let mut max_deg = 1.0f64;
    for v in 0..g.n() {
        max_deg = max_deg.max(g.weighted_degree(v));
    }
    for v in 0..h.n() {
        max_deg = max_deg.max(h.weighted_degree(v));
    }
    1e-8 * max_deg
}

/// True iff L_G is below L_H in the Loewner order, up to `tol`:
/// lambda_min(L_H - L_G) >= -tol. Dense check for test-oracle scales.
pub fn loewner_leq(g: &WeightedGraph, h: &WeightedGraph, tol: f64) -> Result<bool> {
    if g.n() != h.n() {
        return Err(Error::VertexCountMismatch {
            left: g.n(),
            right: h.n(),
        });
    }
    let verts: Vec<usize> = (0..g.n()).collect();
    let mut m = laplacian_dense(h, &verts);
    let mg = laplacian_dense(g, &verts);
    for i in 0..g.n() {
        for j in i..g.n() {
            let x = m.get(i, j) - mg.get(i, j);
            m.set(i, j, x);
        }
    }
    let vals = sym_eigenvalues(&m)?;
    Ok(vals[0] >= -tol)
}

/// Checks that a weight-1 edge (u, v) is dominated by `factor` times a u-v
/// path: (u,v) ≼ factor * F. With `factor = None` the path resistance sum
/// (1/w_1 + ... + 1/w_k) is used, which always holds.
pub fn path_domination_check(
    u: usize,
    v: usize,
    path_weights: &[f64],
    path_graph: &WeightedGraph,
    factor: Option<f64>,
) -> Result<bool> {
    let walk = path_walk(path_graph, u, v)?;
    if walk.len() != path_weights.len() {
        return Err(Error::MalformedPath(format!(
            "path has {} edges, expected {}",
            walk.len(),
            path_weights.len()
        )));
    }
    for (got, want) in walk.iter().zip(path_weights) {
        if got != want {
            return Err(Error::MalformedPath(format!(
                "path weight {got} does not match expected {want}"
            )));
        }
    }
    let factor = factor.unwrap_or_else(|| path_weights.iter().map(|w| 1.0 / w).sum());
    let edge = WeightedGraph::build(path_graph.n(), vec![(u, v, 1.0)])?;
    let scaled = path_graph.scaled(factor);
    let tol = default_loewner_tol(&edge, &scaled);
    loewner_leq(&edge, &scaled, tol)
}

/// Edge weights of `g` along the unique u-v path it must consist of.
fn path_walk(g: &WeightedGraph, u: usize, v: usize) -> Result<Vec<f64>> {
    if u == v {
        return Err(Error::MalformedPath("endpoints coincide".into()));
    }
    let mut weights = Vec::new();
    let mut prev = usize::MAX;
    let mut cur = u;
    let mut steps = 0;
    while cur != v {
        let next: Vec<(usize, f64)> = g
            .neighbors(cur)
            .iter()
            .copied()
            .filter(|&(x, _)| x != prev)
            .collect();
        if next.len() != 1 {
            return Err(Error::MalformedPath(format!(
                "vertex {cur} has {} onward edges",
                next.len()
            )));
        }
        weights.push(next[0].1);
        prev = cur;
        cur = next[0].0;
        steps += 1;
        if steps > g.n() {
            return Err(Error::MalformedPath("walk does not terminate".into()));
        }
    }
    if g.neighbors(v).len() != 1 || g.neighbors(u).len() != 1 {
        return Err(Error::MalformedPath("endpoints must have degree 1".into()));
    }
    if g.edge_count() != weights.len() {
        return Err(Error::MalformedPath(
            "graph has edges outside the path".into(),
        ));
    }
    Ok(weights)
}

/// If the measured relative norm is below lambda2, the measured sigma must
/// not exceed lambda / (lambda - eps); vacuously true otherwise.
pub fn norm_gap_sigma_bound_check(
    g: &WeightedGraph,
    gt: &WeightedGraph,
    ctx: &DegreeContext,
) -> Result<bool> {
    let est = normalized_lambda2(g, ctx)?;
    if est.disconnected {
        return Ok(true);
    }
    let lambda = est.lambda2;
    let eps_hat = relative_norm(g, gt, ctx)?;
    if eps_hat >= lambda {
        return Ok(true);
    }
    let sigma = sigma_approximation(g, gt)?.sigma;
    Ok(sigma <= lambda / (lambda - eps_hat) + 1e-6)
}

/// Independent certification that `sigma` bounds the form ratio on sampled
/// directions: used by tests to cross-check the pencil route.
pub fn sigma_certifies_random_vectors(
    g: &WeightedGraph,
    gt: &WeightedGraph,
    sigma: f64,
    samples: usize,
    seed: u64,
) -> Result<bool> {
    if g.n() != gt.n() {
        return Err(Error::VertexCountMismatch {
            left: g.n(),
            right: gt.n(),
        });
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..samples {
        let x: Vec<f64> = (0..g.n()).map(|_| rng.next_f64() - 0.5).collect();
        let qg = quadratic_form(g, &x)?;
        let qt = quadratic_form(gt, &x)?;
        let slack = 1e-9 * (qg.abs() + qt.abs() + 1.0);
        if qg > sigma * qt + slack || qt > sigma * qg + slack {
            return Ok(false);
        }
    }
    Ok(true)
}
