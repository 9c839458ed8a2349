//! Graph sparsification algorithms behind a common registry.
//!
//! Four interchangeable variants, registered by name and selected at runtime
//! (see [`algorithm`] and [`auto_select`]):
//!
//! - `unweighted`: weight-1 graphs, partition-and-sample recursion
//! - `bounded`: integral weights via binary decomposition
//! - `weighted`: weights in (0, 1] via truncation, levels, and contraction
//! - `blowup-bounded`: `weighted` with degree buckets and random pullback,
//!   bounding per-vertex weight blow-up

pub mod levels;
pub mod unweighted;
pub mod weighted;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

pub use levels::{truncate_weights, LevelDecomposition};
pub use unweighted::{partition_and_sample, unwted_sparsify, PieceList, SamplePlan};
pub use weighted::{
    blow_up, bounded_sparsify, contract, greedy_subdivide, pullback, sparsify, sparsify2,
    BlowUpReport, ClusterMap, PullbackStrategy, WeightedStats,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SparsifyMode {
    /// Literal density thresholds and sampling intensities. At desk scale
    /// the thresholds exceed any input and sparsification is a no-op; the
    /// formulas are still evaluated as written.
    Paper,
    /// The density threshold and sampling intensity come from a target edge
    /// count.
    Practical,
}

impl SparsifyMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            SparsifyMode::Paper => "paper",
            SparsifyMode::Practical => "practical",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SparsifyConfig {
    pub epsilon: f64,
    pub fail_prob: f64,
    pub mode: SparsifyMode,
    /// Practical-mode edge budget.
    pub target_edges: Option<usize>,
    pub seed: u64,
    /// Density-threshold constant (paper mode).
    pub c3: f64,
    /// Failure-budget constant for the blow-up-bounded variant.
    pub c8: f64,
}

impl SparsifyConfig {
    pub fn paper(epsilon: f64, fail_prob: f64, seed: u64) -> SparsifyConfig {
        SparsifyConfig {
            epsilon,
            fail_prob,
            mode: SparsifyMode::Paper,
            target_edges: None,
            seed,
            c3: 1.0,
            c8: 1.0,
        }
    }

    pub fn practical(
        epsilon: f64,
        fail_prob: f64,
        target_edges: usize,
        seed: u64,
    ) -> SparsifyConfig {
        SparsifyConfig {
            epsilon,
            fail_prob,
            mode: SparsifyMode::Practical,
            target_edges: Some(target_edges),
            seed,
            c3: 1.0,
            c8: 1.0,
        }
    }

    pub fn with_fail_prob(&self, fail_prob: f64) -> SparsifyConfig {
        SparsifyConfig {
            fail_prob,
            ..self.clone()
        }
    }

    pub fn with_epsilon(&self, epsilon: f64) -> SparsifyConfig {
        SparsifyConfig {
            epsilon,
            ..self.clone()
        }
    }

    pub fn with_seed(&self, seed: u64) -> SparsifyConfig {
        SparsifyConfig {
            seed,
            ..self.clone()
        }
    }

    pub(crate) fn validate_probabilities(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::EpsilonOutOfRange {
                eps: self.epsilon,
                lo: 0.0,
                hi: 1.0,
            });
        }
        if !(self.fail_prob > 0.0 && self.fail_prob < 0.5) {
            return Err(Error::BadParameter {
                name: "fail_prob",
                value: self.fail_prob,
                range: "(0, 1/2)",
            });
        }
        Ok(())
    }
}

/// Result of a registry run: the sparsifier plus machine-readable counters.
pub struct SparsifyOutcome {
    pub graph: WeightedGraph,
    pub counters: BTreeMap<String, u64>,
    pub blow_up: Option<BlowUpReport>,
}

/// An interchangeable sparsification strategy.
pub trait SparsifyAlgorithm: Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    /// Whether the weight domain of `g` fits this strategy.
    fn accepts(&self, g: &WeightedGraph) -> bool;
    fn run(&self, g: &WeightedGraph, cfg: &SparsifyConfig) -> Result<SparsifyOutcome>;
}

struct Unweighted;
struct Bounded;
struct Weighted;
struct BlowupBounded;

static ALGORITHMS: [&dyn SparsifyAlgorithm; 4] = [&Unweighted, &Bounded, &Weighted, &BlowupBounded];

pub fn algorithms() -> &'static [&'static dyn SparsifyAlgorithm] {
    &ALGORITHMS
}

pub fn algorithm(name: &str) -> Option<&'static dyn SparsifyAlgorithm> {
    ALGORITHMS.iter().copied().find(|a| a.name() == name)
}

/// Picks the variant matching the weight domain: all-1 weights go to
/// `unweighted`, other integral weights to `bounded`, anything else to
/// `weighted` (the caller is responsible for scaling weights into (0, 1]).
pub fn auto_select(g: &WeightedGraph) -> &'static dyn SparsifyAlgorithm {
    if g.is_unweighted() {
        &Unweighted
    } else if g.has_integral_weights() {
        &Bounded
    } else {
        &Weighted
    }
}

impl SparsifyAlgorithm for Unweighted {
    fn name(&self) -> &'static str {
        "unweighted"
    }
    fn summary(&self) -> &'static str {
        "partition into high-conductance pieces, sample each, recurse on boundary"
    }
    fn accepts(&self, g: &WeightedGraph) -> bool {
        g.is_unweighted()
    }
    fn run(&self, g: &WeightedGraph, cfg: &SparsifyConfig) -> Result<SparsifyOutcome> {
        let out = unwted_sparsify(g, cfg)?;
        let mut counters = BTreeMap::new();
        counters.insert("recursion_depth".into(), out.stats.depth as u64);
        counters.insert(
            "pieces".into(),
            out.stats.pieces_per_level.iter().sum::<usize>() as u64,
        );
        Ok(SparsifyOutcome {
            graph: out.graph,
            counters,
            blow_up: None,
        })
    }
}

impl SparsifyAlgorithm for Bounded {
    fn name(&self) -> &'static str {
        "bounded"
    }
    fn summary(&self) -> &'static str {
        "binary weight decomposition; each bit level sparsified as unweighted"
    }
    fn accepts(&self, g: &WeightedGraph) -> bool {
        g.has_integral_weights()
    }
    fn run(&self, g: &WeightedGraph, cfg: &SparsifyConfig) -> Result<SparsifyOutcome> {
        let out = weighted::bounded_sparsify(g, cfg)?;
        let mut counters = BTreeMap::new();
        counters.insert("bits".into(), out.bits as u64);
        counters.insert("recursion_depth".into(), out.max_depth as u64);
        Ok(SparsifyOutcome {
            graph: out.graph,
            counters,
            blow_up: None,
        })
    }
}

fn weighted_counters(stats: &WeightedStats) -> BTreeMap<String, u64> {
    let mut counters = BTreeMap::new();
    counters.insert("levels".into(), stats.levels as u64);
    counters.insert("sum_k".into(), stats.sum_k as u64);
    counters.insert("l_shift".into(), stats.l_shift as u64);
    counters
}

impl SparsifyAlgorithm for Weighted {
    fn name(&self) -> &'static str {
        "weighted"
    }
    fn summary(&self) -> &'static str {
        "truncate weights, contract heavy prefixes per level, sparsify, pull back"
    }
    fn accepts(&self, g: &WeightedGraph) -> bool {
        g.max_weight() <= 1.0
    }
    fn run(&self, g: &WeightedGraph, cfg: &SparsifyConfig) -> Result<SparsifyOutcome> {
        let (graph, stats) = weighted::sparsify(g, cfg)?;
        Ok(SparsifyOutcome {
            graph,
            counters: weighted_counters(&stats),
            blow_up: None,
        })
    }
}

impl SparsifyAlgorithm for BlowupBounded {
    fn name(&self) -> &'static str {
        "blowup-bounded"
    }
    fn summary(&self) -> &'static str {
        "weighted variant with degree-bucketed clusters and random pullback"
    }
    fn accepts(&self, g: &WeightedGraph) -> bool {
        g.max_weight() <= 1.0
    }
    fn run(&self, g: &WeightedGraph, cfg: &SparsifyConfig) -> Result<SparsifyOutcome> {
        let (graph, report, stats) = weighted::sparsify2(g, cfg)?;
        Ok(SparsifyOutcome {
            graph,
            counters: weighted_counters(&stats),
            blow_up: Some(report),
        })
    }
}
