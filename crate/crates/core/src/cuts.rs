//! Conductance under a degree context, sweep cuts, and exponential-time exact
//! oracles for sparsest cuts and maximum-volume sparse cuts.
//!
//! Conductance is combinatorial here: the boundary is an edge *count* and
//! volumes are integer degree sums, so all oracle comparisons are exact
//! rational arithmetic (u128 cross-multiplication). Conventions: the empty
//! set has conductance 1, and the minimum conductance of a singleton vertex
//! set is 1.

use crate::error::{Error, Result};
use crate::graph::{boundary_edges, Decomposition, DegreeContext, VertexSet, WeightedGraph};

/// Largest vertex-set size accepted by the exhaustive oracles.
pub const ENUMERATION_BOUND: usize = 20;

/// An exact nonnegative rational, used for conductance thresholds so that
/// grid values like 3/10 compare exactly against rational conductances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Ratio {
        assert!(den > 0);
        Ratio { num, den }
    }

    pub fn one() -> Ratio {
        Ratio { num: 1, den: 1 }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Nearest rational with the given denominator; good enough for CLI
    /// thresholds where the caller supplies a float.
    pub fn from_f64(x: f64, den: u64) -> Ratio {
        let num = (x * den as f64).round().max(0.0) as u64;
        Ratio { num, den }
    }
}

/// conductance(b1/m1) <= conductance(b2/m2), where a zero denominator means
/// the conventional value 1.
fn ratio_leq(b1: u64, m1: u64, b2: u64, m2: u64) -> bool {
    let (n1, d1) = if m1 == 0 { (1, 1) } else { (b1, m1) };
    let (n2, d2) = if m2 == 0 { (1, 1) } else { (b2, m2) };
    (n1 as u128) * (d2 as u128) <= (n2 as u128) * (d1 as u128)
}

fn ratio_lt(b1: u64, m1: u64, b2: u64, m2: u64) -> bool {
    !ratio_leq(b2, m2, b1, m1)
}

/// A vertex subset with its exact conductance data.
#[derive(Clone, Debug)]
pub struct Cut {
    pub s: VertexSet,
    pub conductance: f64,
    pub vol_s: u64,
    pub vol_complement: u64,
    pub boundary_count: u64,
}

impl Cut {
    fn from_parts(s: VertexSet, boundary: u64, vol_s: u64, vol_complement: u64) -> Cut {
        let min_vol = vol_s.min(vol_complement);
        let conductance = if s.is_empty() || min_vol == 0 {
            1.0
        } else {
            boundary as f64 / min_vol as f64
        };
        Cut {
            s,
            conductance,
            vol_s,
            vol_complement,
            boundary_count: boundary,
        }
    }

    pub fn empty() -> Cut {
        Cut {
            s: VertexSet::empty(),
            conductance: 1.0,
            vol_s: 0,
            vol_complement: 0,
            boundary_count: 0,
        }
    }

    pub fn min_vol(&self) -> u64 {
        self.vol_s.min(self.vol_complement)
    }

    /// Exact rational comparison against another cut's conductance.
    pub fn leq_cut(&self, other: &Cut) -> bool {
        ratio_leq(
            self.boundary_count,
            self.eff_min_vol(),
            other.boundary_count,
            other.eff_min_vol(),
        )
    }

    pub fn lt_cut(&self, other: &Cut) -> bool {
        ratio_lt(
            self.boundary_count,
            self.eff_min_vol(),
            other.boundary_count,
            other.eff_min_vol(),
        )
    }

    fn eff_min_vol(&self) -> u64 {
        if self.s.is_empty() {
            0 // treated as the conventional value 1 by ratio_leq
        } else {
            self.min_vol()
        }
    }

    /// conductance <= num/den, exactly.
    pub fn leq_ratio(&self, bound: Ratio) -> bool {
        let mv = self.eff_min_vol();
        if mv == 0 {
            return bound.den <= bound.num;
        }
        (self.boundary_count as u128) * (bound.den as u128) <= (bound.num as u128) * (mv as u128)
    }

    /// conductance >= num/den, exactly.
    pub fn geq_ratio(&self, bound: Ratio) -> bool {
        let mv = self.eff_min_vol();
        if mv == 0 {
            return bound.num <= bound.den;
        }
        (self.boundary_count as u128) * (bound.den as u128) >= (bound.num as u128) * (mv as u128)
    }

    /// conductance <= bound, with the float comparison done the same way
    /// everywhere (boundary <= bound * min_vol).
    pub fn leq_f64(&self, bound: f64) -> bool {
        let mv = self.eff_min_vol();
        if mv == 0 {
            return 1.0 <= bound;
        }
        self.boundary_count as f64 <= bound * mv as f64
    }
}

/// phi'_B(S) for S ⊆ B, measured with the external degree context.
pub fn conductance(
    g: &WeightedGraph,
    s: &VertexSet,
    b: &VertexSet,
    ctx: &DegreeContext,
) -> Result<Cut> {
    if !s.is_subset_of(b) {
        return Err(Error::NotASubset);
    }
    if !b.valid_for(g.n()) {
        return Err(Error::BadVertexSet { n: g.n() });
    }
    if s.is_empty() {
        return Ok(Cut::empty());
    }
    let boundary = boundary_edges(g, s, b)?.len() as u64;
    let vol_s = ctx.volume(s);
    let vol_rest = ctx.volume(b) - vol_s;
    Ok(Cut::from_parts(s.clone(), boundary, vol_s, vol_rest))
}

/// Sweep over all of V by the given ordering values.
pub fn sweep_cut(g: &WeightedGraph, ordering: &[f64], ctx: &DegreeContext) -> Result<Cut> {
    if ordering.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: ordering.len(),
        });
    }
    sweep_cut_within(g, &VertexSet::full(g.n()), ordering, ctx)
}

/// Sweep restricted to B: sorts B by `(ordering[v], v)`, scans every prefix
/// with vol(prefix) <= vol(B)/2, and returns the best prefix by exact
/// conductance (ties resolved by keeping the earliest, i.e. smallest-volume,
/// lexicographically-least prefix). Returns the empty cut when no prefix
/// satisfies the volume cap.
pub fn sweep_cut_within(
    g: &WeightedGraph,
    b: &VertexSet,
    ordering: &[f64],
    ctx: &DegreeContext,
) -> Result<Cut> {
    if ordering.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: ordering.len(),
        });
    }
    if !b.valid_for(g.n()) {
        return Err(Error::BadVertexSet { n: g.n() });
    }
    let vol_b = ctx.volume(b);
    let mut order: Vec<usize> = b.iter().collect();
    order.sort_by(|&x, &y| {
        ordering[x]
            .partial_cmp(&ordering[y])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.cmp(&y))
    });

    let in_b = b.membership(g.n());
    let mut in_prefix = vec![false; g.n()];
    let mut boundary: u64 = 0;
    let mut vol: u64 = 0;
    let mut best: Option<(u64, u64, usize)> = None; // (boundary, vol, prefix length)

    for (k, &v) in order.iter().enumerate() {
        for &(u, _) in g.neighbors(v) {
            if !in_b[u] {
                continue;
            }
            if in_prefix[u] {
                boundary -= 1;
            } else {
                boundary += 1;
            }
        }
        in_prefix[v] = true;
        vol += ctx.degree(v) as u64;
        if 2 * vol > vol_b {
            continue;
        }
        let min_vol = vol.min(vol_b - vol);
        let better = match best {
            None => true,
            Some((bb, bv, _)) => ratio_lt(boundary, min_vol, bb, bv.min(vol_b - bv)),
        };
        if better {
            best = Some((boundary, vol, k + 1));
        }
    }

    match best {
        None => Ok(Cut::empty()),
        Some((bd, vol_s, len)) => {
            let ids = VertexSet::from_unsorted(order[..len].to_vec());
            Ok(Cut::from_parts(ids, bd, vol_s, vol_b - vol_s))
        }
    }
}

fn check_enumeration_size(b: &VertexSet) -> Result<()> {
    if b.len() > ENUMERATION_BOUND {
        return Err(Error::TooLargeForEnumeration {
            max: ENUMERATION_BOUND,
            got: b.len(),
        });
    }
    Ok(())
}

/// Local edge list of G restricted to B, as index pairs into `b.ids()`.
fn local_edges(g: &WeightedGraph, b: &VertexSet) -> Vec<(usize, usize)> {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, v) in b.iter().enumerate() {
        pos[v] = i;
    }
    g.edges()
        .iter()
        .filter(|e| pos[e.u] != usize::MAX && pos[e.v] != usize::MAX)
        .map(|e| (pos[e.u], pos[e.v]))
        .collect()
}

fn mask_to_set(b: &VertexSet, mask: u32) -> VertexSet {
    let ids = b
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, v)| v)
        .collect();
    VertexSet::from_sorted(ids).expect("ascending by construction")
}

/// Exact minimum of phi'_B over all nonempty proper subsets of B, by
/// exhaustive enumeration. Ties break to smaller volume, then to the
/// lexicographically least vertex list. For |B| <= 1 returns the
/// conventional value 1 on an empty set.
pub fn exact_sparsest_cut(g: &WeightedGraph, b: &VertexSet, ctx: &DegreeContext) -> Result<Cut> {
    check_enumeration_size(b)?;
    if !b.valid_for(g.n()) {
        return Err(Error::BadVertexSet { n: g.n() });
    }
    let k = b.len();
    if k <= 1 {
        return Ok(Cut::empty());
    }
    let edges = local_edges(g, b);
    let degs: Vec<u64> = b.iter().map(|v| ctx.degree(v) as u64).collect();
    let vol_b: u64 = degs.iter().sum();

    let mut best: Option<(u64, u64, u32)> = None; // (boundary, vol_s, mask)
    for mask in 1..((1u32 << k) - 1) {
        let mut boundary = 0u64;
        for &(a, c) in &edges {
            if (mask >> a & 1) != (mask >> c & 1) {
                boundary += 1;
            }
        }
        let mut vol_s = 0u64;
        for (i, d) in degs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                vol_s += d;
            }
        }
        let min_vol = vol_s.min(vol_b - vol_s);
        let candidate = (boundary, vol_s, mask);
        let better = match best {
            None => true,
            Some((bb, bv, bmask)) => {
                let bmin = bv.min(vol_b - bv);
                if ratio_lt(boundary, min_vol, bb, bmin) {
                    true
                } else if ratio_lt(bb, bmin, boundary, min_vol) {
                    false
                } else if vol_s != bv {
                    vol_s < bv
                } else {
                    let cur = mask_to_set(b, mask);
                    let old = mask_to_set(b, bmask);
                    cur.ids() < old.ids()
                }
            }
        };
        if better {
            best = Some(candidate);
        }
    }
    let (bd, vol_s, mask) = best.expect("k >= 2 enumerates at least one cut");
    Ok(Cut::from_parts(
        mask_to_set(b, mask),
        bd,
        vol_s,
        vol_b - vol_s,
    ))
}

/// The set S ⊆ B maximizing vol(S) among those with vol(S) <= vol(B)/2 and
/// phi'_B(S) <= phi, or `None` when no nonempty S qualifies. Volume ties
/// break to the lexicographically least vertex list.
pub fn max_volume_sparse_cut(
    g: &WeightedGraph,
    b: &VertexSet,
    ctx: &DegreeContext,
    phi: Ratio,
) -> Result<Option<Cut>> {
    check_enumeration_size(b)?;
    if !b.valid_for(g.n()) {
        return Err(Error::BadVertexSet { n: g.n() });
    }
    let k = b.len();
    if k == 0 {
        return Ok(None);
    }
    let edges = local_edges(g, b);
    let degs: Vec<u64> = b.iter().map(|v| ctx.degree(v) as u64).collect();
    let vol_b: u64 = degs.iter().sum();

    let mut best: Option<(u64, u64, u32)> = None;
    for mask in 1..((1u32 << k) - 1) {
        let mut vol_s = 0u64;
        for (i, d) in degs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                vol_s += d;
            }
        }
        if 2 * vol_s > vol_b {
            continue;
        }
        let mut boundary = 0u64;
        for &(a, c) in &edges {
            if (mask >> a & 1) != (mask >> c & 1) {
                boundary += 1;
            }
        }
        // phi'_B(S) <= phi, exactly; vol 0 means the conventional value 1.
        let qualifies = if vol_s == 0 {
            phi.den <= phi.num
        } else {
            (boundary as u128) * (phi.den as u128) <= (phi.num as u128) * (vol_s as u128)
        };
        if !qualifies {
            continue;
        }
        let better = match best {
            None => true,
            Some((_, bv, bmask)) => {
                if vol_s != bv {
                    vol_s > bv
                } else {
                    let cur = mask_to_set(b, mask);
                    let old = mask_to_set(b, bmask);
                    cur.ids() < old.ids()
                }
            }
        };
        if better {
            best = Some((boundary, vol_s, mask));
        }
    }
    Ok(best
        .map(|(bd, vol_s, mask)| Cut::from_parts(mask_to_set(b, mask), bd, vol_s, vol_b - vol_s)))
}

/// Exact decomposition by repeatedly splitting off maximum-volume sparse
/// cuts until every part has minimum conductance at least `phi`.
/// Exponential-time; intended for graphs with at most [`ENUMERATION_BOUND`]
/// vertices.
pub fn ideal_decomp(g: &WeightedGraph, ctx: &DegreeContext, phi: Ratio) -> Result<Decomposition> {
    fn rec(
        g: &WeightedGraph,
        ctx: &DegreeContext,
        b: &VertexSet,
        phi: Ratio,
        parts: &mut Vec<VertexSet>,
    ) -> Result<()> {
        if b.is_empty() {
            return Ok(());
        }
        let sparsest = exact_sparsest_cut(g, b, ctx)?;
        if sparsest.geq_ratio(phi) {
            parts.push(b.clone());
            return Ok(());
        }
        let s = match max_volume_sparse_cut(g, b, ctx, phi)? {
            Some(cut) => cut,
            None => {
                parts.push(b.clone());
                return Ok(());
            }
        };
        let rest = b.difference(&s.s);
        if 4 * s.vol_s <= ctx.volume(b) {
            parts.push(rest);
            rec(g, ctx, &s.s, phi, parts)?;
        } else {
            rec(g, ctx, &rest, phi, parts)?;
            rec(g, ctx, &s.s, phi, parts)?;
        }
        Ok(())
    }

    let b = VertexSet::full(g.n());
    check_enumeration_size(&b)?;
    let mut parts = Vec::new();
    rec(g, ctx, &b, phi, &mut parts)?;

    let mut owner = vec![usize::MAX; g.n()];
    for (i, part) in parts.iter().enumerate() {
        for v in part.iter() {
            owner[v] = i;
        }
    }
    let boundary = g
        .edges()
        .iter()
        .filter(|e| owner[e.u] != owner[e.v])
        .copied()
        .collect();
    Ok(Decomposition { parts, boundary })
}
