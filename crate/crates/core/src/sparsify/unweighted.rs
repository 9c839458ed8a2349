//! Unweighted sparsification: recursively partition into pieces certified to
//! sit inside high-conductance subgraphs, sample each piece, and recurse on
//! the boundary edges between pieces.

use crate::error::{Error, Result};
use crate::graph::{DegreeContext, Edge, VertexSet, WeightedGraph};
use crate::partition::{approx_cut, ContractConstants};
use crate::rng::derive_seed;
use crate::sampling::{calibrate_upsilon, sample_subgraph, SampleParams};
use crate::sparsify::{SparsifyConfig, SparsifyMode};

/// Sampled pieces of one partition-and-sample pass plus the edges between
/// their vertex sets.
#[derive(Clone, Debug)]
pub struct PieceList {
    /// (vertex set, reweighted sampled subgraph), disjoint vertex sets.
    pub pieces: Vec<(VertexSet, WeightedGraph)>,
    /// Exactly the input edges whose endpoints lie in different pieces.
    pub boundary: Vec<Edge>,
}

/// How pieces are sampled: the literal formulas, or an edge-budget
/// calibration that makes the intensity usable at small scale.
#[derive(Clone, Copy, Debug)]
pub enum SamplePlan {
    Paper,
    Practical {
        target_edges: usize,
        total_edges: usize,
    },
}

impl SamplePlan {
    fn params_for(
        &self,
        piece_edges: &[Edge],
        ctx: &DegreeContext,
        eps_hat: f64,
        p_hat: f64,
        lambda: f64,
    ) -> Result<SampleParams> {
        match *self {
            SamplePlan::Paper => SampleParams::paper(eps_hat, p_hat, lambda),
            SamplePlan::Practical {
                target_edges,
                total_edges,
            } => {
                let share = if total_edges == 0 {
                    0.0
                } else {
                    target_edges as f64 * piece_edges.len() as f64 / total_edges as f64
                };
                SampleParams::practical(calibrate_upsilon(piece_edges, ctx, share))
            }
        }
    }
}

/// One partition-and-sample pass over an unweighted graph: cut with
/// `approx_cut` at conductance `phi`; if the cut is empty sample the whole
/// graph, if it is small sample the large side and recurse into the cut,
/// otherwise recurse into both sides.
pub fn partition_and_sample(
    g: &WeightedGraph,
    phi: f64,
    eps_hat: f64,
    p_hat: f64,
    plan: SamplePlan,
    seed: u64,
) -> Result<PieceList> {
    if let Some(e) = g.edges().iter().find(|e| e.w != 1.0) {
        return Err(Error::NotUnweighted { w: e.w });
    }
    let mut out = PieceList {
        pieces: Vec::new(),
        boundary: Vec::new(),
    };
    let active = VertexSet::full(g.n());
    recurse(g, &active, phi, eps_hat, p_hat, plan, seed, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    host: &WeightedGraph,
    active: &VertexSet,
    phi: f64,
    eps_hat: f64,
    p_hat: f64,
    plan: SamplePlan,
    seed: u64,
    out: &mut PieceList,
) -> Result<()> {
    let g = host.induced_subgraph(active)?;
    let m = g.edge_count();
    if active.is_empty() {
        return Ok(());
    }
    if m == 0 {
        out.pieces
            .push((active.clone(), WeightedGraph::empty(host.n())));
        return Ok(());
    }
    let ctx = g.degrees();
    let consts = ContractConstants::default();
    let lambda = {
        let f2 = consts.f2(phi, m);
        (f2 * f2 / 2.0).clamp(f64::MIN_POSITIVE, 2.0)
    };
    let cut = approx_cut(&g, phi, p_hat, derive_seed(seed, 0))?;
    let d = cut.d;

    if d.is_empty() {
        let params = plan.params_for(g.edges(), &ctx, eps_hat, p_hat, lambda)?;
        let sampled = sample_subgraph(active, g.edges(), &ctx, &params, derive_seed(seed, 1))?;
        out.pieces.push((active.clone(), sampled.graph));
        return Ok(());
    }

    let rest = active.difference(&d);
    let in_d = d.membership(host.n());
    let crossing: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|e| in_d[e.u] != in_d[e.v])
        .copied()
        .collect();
    out.boundary.extend_from_slice(&crossing);

    if 29 * ctx.volume(&d) <= ctx.total_volume() {
        let g_rest = g.induced_subgraph(&rest)?;
        let params = plan.params_for(g_rest.edges(), &ctx, eps_hat, p_hat, lambda)?;
        // Degrees stay those of the graph handed to approx_cut.
        let sampled = sample_subgraph(&rest, g_rest.edges(), &ctx, &params, derive_seed(seed, 2))?;
        out.pieces.push((rest, sampled.graph));
        recurse(
            host,
            &d,
            phi,
            eps_hat,
            p_hat,
            plan,
            derive_seed(seed, 3),
            out,
        )
    } else {
        recurse(
            host,
            &rest,
            phi,
            eps_hat,
            p_hat,
            plan,
            derive_seed(seed, 4),
            out,
        )?;
        recurse(
            host,
            &d,
            phi,
            eps_hat,
            p_hat,
            plan,
            derive_seed(seed, 5),
            out,
        )
    }
}

/// Per-level instrumentation of the recursion on boundary graphs.
#[derive(Clone, Debug, Default)]
pub struct UnwtedStats {
    /// Number of partition-and-sample levels actually executed.
    pub depth: usize,
    /// Pieces per executed level.
    pub pieces_per_level: Vec<usize>,
    /// Boundary edges handed to the next level, per executed level.
    pub boundary_per_level: Vec<usize>,
}

pub struct UnwtedOutcome {
    pub graph: WeightedGraph,
    pub stats: UnwtedStats,
}

/// Full unweighted sparsification: below the density threshold the graph is
/// returned unchanged, otherwise one partition-and-sample pass plus a
/// recursive call on the boundary graph. The output edge set is always a
/// subset of the input edge set.
pub fn unwted_sparsify(g: &WeightedGraph, cfg: &SparsifyConfig) -> Result<UnwtedOutcome> {
    if let Some(e) = g.edges().iter().find(|e| e.w != 1.0) {
        return Err(Error::NotUnweighted { w: e.w });
    }
    cfg.validate_probabilities()?;
    let mut stats = UnwtedStats::default();
    let graph = sparsify_level(g, cfg, cfg.seed, &mut stats)?;
    Ok(UnwtedOutcome { graph, stats })
}

fn below_threshold(g: &WeightedGraph, cfg: &SparsifyConfig) -> Result<bool> {
    let n = g.n() as f64;
    let m = g.edge_count();
    let vol = 2.0 * m as f64;
    match cfg.mode {
        SparsifyMode::Paper => {
            let log_term = (n / cfg.fail_prob).log2().max(1.0);
            Ok(vol <= cfg.c3 * cfg.epsilon.powi(-2) * n * log_term.powi(30))
        }
        SparsifyMode::Practical => {
            let target = cfg.target_edges.ok_or_else(|| {
                Error::InvalidInput("practical mode requires a target edge count".into())
            })?;
            Ok(m <= target)
        }
    }
}

fn sparsify_level(
    g: &WeightedGraph,
    cfg: &SparsifyConfig,
    seed: u64,
    stats: &mut UnwtedStats,
) -> Result<WeightedGraph> {
    if below_threshold(g, cfg)? {
        return Ok(g.clone());
    }
    let n = g.n() as f64;
    let m = g.edge_count();
    let vol = 2.0 * m as f64;
    let log_29_28 = |x: f64| x.ln() / (29f64 / 28.0).ln();
    let phi = (1.0 / (2.0 * log_29_28(vol))).min(0.999);
    let p_hat = cfg.fail_prob / (6.0 * n * n.log2().max(1.0));
    let ln2 = std::f64::consts::LN_2;
    let eps_hat =
        cfg.epsilon * ln2 * ln2 / ((1.0 + 2.0 * log_29_28(n)) * (2.0 * n.log2().max(1.0)));

    let plan = match cfg.mode {
        SparsifyMode::Paper => SamplePlan::Paper,
        SparsifyMode::Practical => SamplePlan::Practical {
            target_edges: cfg.target_edges.expect("checked by below_threshold"),
            total_edges: m,
        },
    };
    let pieces = partition_and_sample(g, phi, eps_hat, p_hat, plan, derive_seed(seed, 1))?;
    // Each level removes at least half the edges.
    assert!(
        pieces.boundary.len() * 2 <= m,
        "boundary exceeded half the edges"
    );
    stats.depth += 1;
    stats.pieces_per_level.push(pieces.pieces.len());
    stats.boundary_per_level.push(pieces.boundary.len());

    let mut acc = WeightedGraph::empty(g.n());
    for (_, piece) in &pieces.pieces {
        acc = acc.graph_sum(piece)?;
    }
    let boundary_graph =
        WeightedGraph::build(g.n(), pieces.boundary.iter().map(|e| (e.u, e.v, e.w)))?;
    let sparsified_boundary = sparsify_level(&boundary_graph, cfg, derive_seed(seed, 2), stats)?;
    acc.graph_sum(&sparsified_boundary)
}
