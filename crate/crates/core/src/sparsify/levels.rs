//! Weight truncation to dyadic rationals and the weight-1 level graphs.
//!
//! Every edge weight w in (0, 1] is truncated to z = q 2^{-r} where r is the
//! unique exponent with Q <= 2^r w < 2Q and q = floor(2^r w). All arithmetic
//! on (q, r) pairs is exact integer work on the f64 bit pattern, so the
//! sandwich z <= w <= (1 + 1/Q) z and the reconstruction of the truncated
//! graph from its levels are exact statements, not tolerance checks.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Truncation data for one edge: z = q * 2^{-r}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeTrunc {
    pub r: i32,
    pub q: u64,
}

#[derive(Clone, Debug)]
pub struct LevelDecomposition {
    /// Indexed like the source graph's canonical edge list.
    pub per_edge: Vec<EdgeTrunc>,
    /// (level index i, weight-1 graph G^i), ascending in i.
    pub levels: Vec<(u32, WeightedGraph)>,
    /// Q = ceil(6 / eps).
    pub q_cap: u64,
    n: usize,
}

/// w = mantissa * 2^exp with the mantissa odd (trailing zeros stripped).
/// Requires w positive and finite.
pub fn decode_f64(w: f64) -> (u64, i32) {
    debug_assert!(w > 0.0 && w.is_finite());
    let bits = w.to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i32;
    let frac = bits & ((1u64 << 52) - 1);
    let (m, e) = if exp_field == 0 {
        (frac, -1074)
    } else {
        (frac | (1 << 52), exp_field - 1075)
    };
    let tz = m.trailing_zeros();
    (m >> tz, e + tz as i32)
}

/// Compares a * 2^shift against b, exactly. Operands must stay well inside
/// u128 after shifting, which holds for every call in this module.
fn cmp_shifted(a: u128, shift: i32, b: u128) -> std::cmp::Ordering {
    if shift >= 0 {
        debug_assert!(shift < 120 && a.leading_zeros() as i32 > shift);
        (a << shift).cmp(&b)
    } else {
        let s = -shift;
        debug_assert!(s < 120 && b.leading_zeros() as i32 > s);
        a.cmp(&(b << s))
    }
}

/// The unique r with Q <= 2^r w < 2Q, on the exact bit pattern of w.
fn exponent_for(m: u64, e: i32, q_cap: u64) -> i32 {
    // Float guess, then exact adjustment by at most a couple of steps.
    let w = m as f64 * 2f64.powi(e.clamp(-1000, 1000));
    let mut r = if e.abs() <= 900 {
        (q_cap as f64 / w).log2().ceil() as i32
    } else {
        // Subnormal-adjacent inputs: derive from exponents directly.
        (q_cap as f64).log2().ceil() as i32 - e - 53
    };
    for _ in 0..200 {
        if cmp_shifted(m as u128, e + r, q_cap as u128) == std::cmp::Ordering::Less {
            r += 1;
        } else if cmp_shifted(m as u128, e + r, 2 * q_cap as u128) != std::cmp::Ordering::Less {
            r -= 1;
        } else {
            return r;
        }
    }
    unreachable!("exponent search did not converge");
}

/// q = floor(m * 2^{e+r}); the caller guarantees the product is in [Q, 2Q).
fn floor_scaled(m: u64, shift: i32) -> u64 {
    if shift >= 0 {
        m << shift
    } else {
        m >> (-shift).min(63)
    }
}

/// Exact x * 2^e for |e| beyond `powi` range; staged power-of-two scaling.
pub fn ldexp(x: f64, e: i32) -> f64 {
    let mut x = x;
    let mut e = e;
    while e < -900 {
        x *= 2f64.powi(-900);
        e += 900;
    }
    while e > 900 {
        x *= 2f64.powi(900);
        e -= 900;
    }
    x * 2f64.powi(e)
}

impl LevelDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// z_e as an f64 (exactly representable by construction).
    pub fn z_value(&self, edge_idx: usize) -> f64 {
        let t = self.per_edge[edge_idx];
        ldexp(t.q as f64, -t.r)
    }

    /// Number of level graphs the edge appears in.
    pub fn level_multiplicity(&self, edge_idx: usize) -> u32 {
        self.per_edge[edge_idx].q.count_ones()
    }

    /// The truncated graph with weights z_e on the same support as `g`.
    pub fn truncated_graph(&self, g: &WeightedGraph) -> WeightedGraph {
        let edges: Vec<(usize, usize, f64)> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| (e.u, e.v, self.z_value(i)))
            .collect();
        WeightedGraph::build(self.n, edges).expect("weights stay positive")
    }

    /// Exact per-edge sandwich: z <= w <= (1 + 1/Q) z for every edge of `g`.
    pub fn sandwich_holds(&self, g: &WeightedGraph) -> bool {
        let q_cap = self.q_cap as u128;
        g.edges().iter().enumerate().all(|(i, e)| {
            let (m, ex) = decode_f64(e.w);
            let t = self.per_edge[i];
            // z <= w: q <= m 2^{ex + r}
            let lower = cmp_shifted(m as u128, ex + t.r, t.q as u128) != std::cmp::Ordering::Less;
            // w Q <= (Q + 1) q: m Q 2^{ex + r} <= (Q+1) q
            let upper = cmp_shifted(m as u128 * q_cap, ex + t.r, (q_cap + 1) * t.q as u128)
                != std::cmp::Ordering::Greater;
            lower && upper
        })
    }

    /// Exact reconstruction: sum over levels of 2^{-i} G^i equals the
    /// truncated graph, verified in integer arithmetic per edge.
    pub fn reconstructs_exactly(&self, g: &WeightedGraph) -> bool {
        let mut acc: Vec<u64> = vec![0; g.edge_count()];
        for (i, level) in &self.levels {
            for e in level.edges() {
                let idx = g.edge_index(e.u, e.v).expect("level edges come from g");
                let t = self.per_edge[idx];
                let j = t.r - *i as i32;
                if !(0..64).contains(&j) {
                    return false;
                }
                acc[idx] += 1u64 << j;
            }
        }
        acc.iter().zip(&self.per_edge).all(|(sum, t)| *sum == t.q)
    }
}

/// Truncates every weight of `g` (weights must lie in (0, 1]) and builds the
/// weight-1 level graphs. `eps` must lie in (0, 1/2]; the full weighted
/// sparsifier additionally restricts it to (1/n, 1/3).
pub fn truncate_weights(g: &WeightedGraph, eps: f64) -> Result<LevelDecomposition> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::EpsilonOutOfRange {
            eps,
            lo: 0.0,
            hi: 0.5,
        });
    }
    let q_cap = (6.0 / eps).ceil() as u64;
    let mut per_edge = Vec::with_capacity(g.edge_count());
    let mut level_edges: std::collections::BTreeMap<u32, Vec<(usize, usize, f64)>> =
        std::collections::BTreeMap::new();
    for e in g.edges() {
        if !(e.w > 0.0 && e.w <= 1.0) {
            return Err(Error::WeightOutOfRange { w: e.w });
        }
        let (m, ex) = decode_f64(e.w);
        let r = exponent_for(m, ex, q_cap);
        let q = floor_scaled(m, ex + r);
        debug_assert!(q >= q_cap && q < 2 * q_cap, "Q <= q < 2Q");
        per_edge.push(EdgeTrunc { r, q });
        for j in 0..64 {
            if q >> j & 1 == 1 {
                let i = r - j;
                debug_assert!(i >= 0, "levels are nonnegative for weights <= 1");
                level_edges
                    .entry(i as u32)
                    .or_default()
                    .push((e.u, e.v, 1.0));
            }
        }
    }
    let levels = level_edges
        .into_iter()
        .map(|(i, edges)| Ok((i, WeightedGraph::build(g.n(), edges)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelDecomposition {
        per_edge,
        levels,
        q_cap,
        n: g.n(),
    })
}

/// G = sum over bits of 2^i G_i for a graph with integral weights: G_i holds
/// the edges whose weight has bit i set.
pub fn bit_decompose(g: &WeightedGraph) -> Result<(u32, Vec<WeightedGraph>)> {
    let mut max_w: u64 = 0;
    for e in g.edges() {
        if e.w < 1.0 || e.w.fract() != 0.0 || e.w > 9.0e15 {
            return Err(Error::NotIntegral { w: e.w });
        }
        max_w = max_w.max(e.w as u64);
    }
    let bits = if max_w == 0 {
        1
    } else {
        64 - max_w.leading_zeros()
    };
    let mut per_bit: Vec<Vec<(usize, usize, f64)>> = vec![Vec::new(); bits as usize];
    for e in g.edges() {
        let w = e.w as u64;
        for (i, bucket) in per_bit.iter_mut().enumerate() {
            if w >> i & 1 == 1 {
                bucket.push((e.u, e.v, 1.0));
            }
        }
    }
    let graphs = per_bit
        .into_iter()
        .map(|edges| WeightedGraph::build(g.n(), edges))
        .collect::<Result<Vec<_>>>()?;
    Ok((bits, graphs))
}
