//! Spectral radius and Perron vectors by shifted power iteration, spectral
//! extremal search, and numeric checks on complete multipartite graphs and
//! Turán graphs with a few embedded edges.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{turan_plus_edges, EmbedShape, Partition};
use crate::embedding::{family_free_through_edge, is_family_free};
use crate::enumerate::LevelWalk;
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::{bits, complete_multipartite, turan, Graph};
use crate::graph6::to_graph6;

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_TIE_TOL: f64 = 1e-9;
pub const MAX_ITERATIONS: usize = 1_000_000;
pub const SPEX_MAX_N: usize = 9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralReport {
    pub rho: f64,
    /// Unit, nonnegative; zero outside the component attaining `rho`.
    pub perron: Vec<f64>,
    /// `‖A·x − ρ·x‖∞`.
    pub residual: f64,
    pub iterations: usize,
}

fn multiply(g: &Graph, x: &[f64], out: &mut [f64]) {
    for (v, o) in out.iter_mut().enumerate() {
        *o = bits(g.neighbors(v)).map(|w| x[w]).sum();
    }
}

fn residual(g: &Graph, x: &[f64], rho: f64) -> f64 {
    let mut ax = vec![0.0; x.len()];
    multiply(g, x, &mut ax);
    ax.iter().zip(x).map(|(a, b)| (a - rho * b).abs()).fold(0.0, f64::max)
}

/// Power iteration on `A + I` restricted to the vertices of `mask`.
fn component_radius(g: &Graph, mask: u64, tol: f64) -> Result<SpectralReport> {
    let n = g.order();
    let size = mask.count_ones() as f64;
    let mut x: Vec<f64> = (0..n).map(|v| if mask >> v & 1 == 1 { 1.0 / size.sqrt() } else { 0.0 }).collect();
    let mut ax = vec![0.0; n];
    let mut last = f64::INFINITY;
    for iteration in 0..MAX_ITERATIONS {
        multiply(g, &x, &mut ax);
        let rho: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let res = ax.iter().zip(&x).map(|(a, b)| (a - rho * b).abs()).fold(0.0, f64::max);
        last = res;
        if res <= tol {
            return Ok(SpectralReport { rho, perron: x, residual: res, iterations: iteration });
        }
        let mut norm = 0.0;
        for (xi, ai) in x.iter_mut().zip(&ax) {
            *xi += ai;
            norm += *xi * *xi;
        }
        let norm = norm.sqrt();
        x.iter_mut().for_each(|xi| *xi /= norm);
    }
    Err(Error::NoConvergence { iterations: MAX_ITERATIONS, residual: last, tol })
}

/// Dominant adjacency eigenvalue with a certified residual. Disconnected
/// graphs take the largest component value; its vector is zero-extended.
pub fn spectral_radius(g: &Graph, tol: f64) -> Result<SpectralReport> {
    if g.order() == 0 {
        return Err(Error::InvalidParameter("spectral radius of the empty vertex set".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let mut best: Option<SpectralReport> = None;
    let mut iterations = 0;
    for comp in g.components() {
        let rep = component_radius(g, comp, tol)?;
        iterations += rep.iterations;
        if best.as_ref().is_none_or(|b| rep.rho > b.rho) {
            best = Some(rep);
        }
    }
    let mut rep = best.expect("at least one component");
    rep.iterations = iterations;
    rep.residual = residual(g, &rep.perron, rep.rho);
    if rep.residual > tol {
        return Err(Error::NoConvergence { iterations, residual: rep.residual, tol });
    }
    Ok(rep)
}

/// `ρ(g)` at the default tolerance.
pub fn rho(g: &Graph) -> Result<f64> {
    Ok(spectral_radius(g, DEFAULT_TOL)?.rho)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpexReport {
    pub n: usize,
    pub family: String,
    pub rho_star: f64,
    /// Canonical graph6 of every graph within `tie_tol` of `rho_star`.
    pub spex_set: Vec<String>,
    pub rhos: Vec<f64>,
    /// More than one graph attains the maximum within tolerance.
    pub ties: bool,
    pub method: String,
    pub nodes_explored: u64,
    pub evaluated: usize,
    pub elapsed_ms: f64,
    pub complete: bool,
}

/// Largest spectral radius over `𝓗`-free graphs on `n` vertices, with every
/// graph attaining it. Levels whose edge count `m` has `√(2m)` below the
/// incumbent are skipped, since `ρ ≤ √(2m)`.
pub fn spex_search(
    n: usize,
    family: &GraphFamily,
    tol: f64,
    tie_tol: f64,
    node_budget: Option<u64>,
) -> Result<SpexReport> {
    if n > SPEX_MAX_N {
        return Err(Error::OverBudget { what: "spex search order", size: n, max: SPEX_MAX_N });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("spex needs n >= 1".into()));
    }
    let start = Instant::now();
    let empty = Graph::empty(n)?;
    if !is_family_free(&empty, family)? {
        return Err(Error::InvalidParameter(format!("no {}-free graph on {n} vertices", family.name())));
    }
    let walk = LevelWalk { max_edges: None, keep_all: true, node_budget };
    let out = walk.run(vec![empty], |g, e| family_free_through_edge(g, family, e).expect("members validated"));

    let mut incumbent = f64::NEG_INFINITY;
    let mut pool: Vec<(f64, &Graph)> = Vec::new();
    let mut evaluated = 0;
    for (m, graphs) in out.levels.iter().rev() {
        if graphs.is_empty() {
            continue;
        }
        if ((2 * m) as f64).sqrt() < incumbent - tie_tol {
            break;
        }
        let values: Vec<f64> = graphs.par_iter().map(|g| rho_with(g, tol)).collect::<Result<_>>()?;
        evaluated += graphs.len();
        for (value, g) in values.into_iter().zip(graphs) {
            incumbent = incumbent.max(value);
            if value >= incumbent - tie_tol {
                pool.push((value, g));
            }
        }
    }
    let mut best: Vec<(String, f64)> =
        pool.into_iter().filter(|(v, _)| *v >= incumbent - tie_tol).map(|(v, g)| (to_graph6(g), v)).collect();
    best.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(SpexReport {
        n,
        family: family.name().to_string(),
        rho_star: incumbent,
        ties: best.len() > 1,
        spex_set: best.iter().map(|(c, _)| c.clone()).collect(),
        rhos: best.iter().map(|(_, v)| *v).collect(),
        method: "level-walk".into(),
        nodes_explored: out.nodes,
        evaluated,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        complete: out.complete,
    })
}

fn rho_with(g: &Graph, tol: f64) -> Result<f64> {
    Ok(spectral_radius(g, tol)?.rho)
}

/// `|xᵀy(ρ′−ρ) − xᵀ(A′−A)y|` for Perron vectors `x` of `g` and `y` of `h`.
/// Vanishes identically, so this measures numerical error only.
pub fn eigen_identity_residual(g: &Graph, h: &Graph) -> Result<f64> {
    if g.order() != h.order() {
        return Err(Error::InvalidParameter(format!("orders differ: {} vs {}", g.order(), h.order())));
    }
    if !g.is_connected() || !h.is_connected() {
        return Err(Error::Disconnected);
    }
    let a = spectral_radius(g, DEFAULT_TOL)?;
    let b = spectral_radius(h, DEFAULT_TOL)?;
    let (x, y) = (&a.perron, &b.perron);
    let xy: f64 = x.iter().zip(y).map(|(p, q)| p * q).sum();
    let mut cross = 0.0;
    for (u, &xu) in x.iter().enumerate() {
        let diff = h.neighbors(u) ^ g.neighbors(u);
        for v in bits(diff) {
            let sign = if h.has_edge(u, v) { 1.0 } else { -1.0 };
            cross += sign * xu * y[v];
        }
    }
    Ok((xy * (b.rho - a.rho) - cross).abs())
}

/// Positive solution of `Σ nᵢ/(ρ + nᵢ) = 1`, the spectral radius of the
/// complete multipartite graph with part sizes `nᵢ`. Independent of power
/// iteration.
pub fn multipartite_radius_secular(parts: &[usize]) -> f64 {
    let f = |rho: f64| parts.iter().map(|&p| p as f64 / (rho + p as f64)).sum::<f64>() - 1.0;
    let n: usize = parts.iter().sum();
    if parts.len() <= 1 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0f64, n as f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapEntry {
    pub part_sizes: Vec<usize>,
    pub rho: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapReport {
    pub n: usize,
    pub r: usize,
    pub rho_turan: f64,
    pub entries: Vec<GapEntry>,
    /// Smallest `gap · n` seen, an empirical constant.
    pub min_gap_times_n: Option<f64>,
}

impl GapReport {
    pub fn all_positive(&self) -> bool {
        self.entries.iter().all(|e| e.gap > 0.0)
    }
}

/// Partitions of `n` into exactly `r` positive parts, nonincreasing.
fn partitions(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = cap.min(left - (parts - 1));
        let lo = left.div_ceil(parts);
        for p in (lo..=hi).rev() {
            cur.push(p);
            rec(left - p, parts - 1, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r >= 1 && r <= n {
        rec(n, r, n, &mut Vec::new(), &mut out);
    }
    out
}

/// `ρ(T(n,r)) − ρ(K)` for every complete `r`-partite `K` on `n` vertices
/// whose largest and smallest parts differ by at least 2.
pub fn multipartite_gap_check(n: usize, r: usize) -> Result<GapReport> {
    if n > 20 {
        return Err(Error::OverBudget { what: "multipartite gap order", size: n, max: 20 });
    }
    if r == 0 || r > n {
        return Err(Error::InvalidParameter(format!("need 1 <= r <= n, got n = {n}, r = {r}")));
    }
    let rho_turan = rho(&turan(n, r)?)?;
    let mut entries = Vec::new();
    for parts in partitions(n, r) {
        if parts[0] - parts[r - 1] < 2 {
            continue;
        }
        let value = rho(&complete_multipartite(&parts)?)?;
        entries.push(GapEntry { part_sizes: parts, rho: value, gap: rho_turan - value });
    }
    let min_gap_times_n = entries.iter().map(|e| e.gap * n as f64).reduce(f64::min);
    Ok(GapReport { n, r, rho_turan, entries, min_gap_times_n })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionGap {
    pub part: usize,
    pub shape: EmbedShape,
    pub rho_difference: f64,
    pub bound: f64,
    pub holds: bool,
}

/// `ρ(G*) − ρ(T(n,r)) ≥ 2α₁/n − 6α₁/n²` for `G*` = `T(n,r)` plus `α₁` edges
/// in one part. A star is placed in every part that can hold it; parts too
/// small for the star get a triangle when `α₁ = 3`.
pub fn construction_gap_check(n: usize, r: usize, alpha1: usize) -> Result<Vec<ConstructionGap>> {
    if n > 30 {
        return Err(Error::OverBudget { what: "construction gap order", size: n, max: 30 });
    }
    let base = rho(&turan(n, r)?)?;
    let nf = n as f64;
    let bound = 2.0 * alpha1 as f64 / nf - 6.0 * alpha1 as f64 / (nf * nf);
    let sizes = crate::graph::turan_part_sizes(n, r)?;
    let mut out = Vec::new();
    for (part, &size) in sizes.iter().enumerate() {
        let shape = if alpha1 == 0 || size > alpha1 {
            EmbedShape::Star
        } else if alpha1 == 3 && size >= 3 {
            EmbedShape::Triangle
        } else {
            continue;
        };
        let (g, _) = turan_plus_edges(n, r, alpha1, &shape, part)?;
        let diff = rho(&g)? - base;
        // Equality cases (α₁ = 0) are compared with a rounding allowance.
        let holds = diff >= bound - 1e-12;
        out.push(ConstructionGap { part, shape, rho_difference: diff, bound, holds });
    }
    if out.is_empty() {
        return Err(Error::InvalidParameter(format!("no part of T({n},{r}) can hold {alpha1} embedded edges")));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartSumRow {
    pub part: usize,
    pub embedded_edges: usize,
    pub lower: f64,
    /// `Σ_{v ∉ Vᵢ} x_v`.
    pub outside_sum: f64,
    pub upper: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartSumReport {
    pub rho: f64,
    pub rows: Vec<PartSumRow>,
    pub holds: bool,
}

/// For `G*` = complete multipartite on `partition` plus `k − 1` edges inside
/// parts, checks for every part `i`
/// `ρ·x_V / (ρ + |Vᵢ| + 2e(Hᵢ)/(ρ−k+1)) ≤ x_{V∖Vᵢ} ≤ ρ·x_V / (ρ + |Vᵢ| + 2e(Hᵢ)/ρ)`.
pub fn perron_part_sum_bounds(gstar: &Graph, partition: &Partition, k: usize) -> Result<PartSumReport> {
    if partition.order() != gstar.order() {
        return Err(Error::BadPartition(format!(
            "partition covers {} vertices, graph has {}",
            partition.order(),
            gstar.order()
        )));
    }
    let (inside, missing) = partition.edit_counts(gstar);
    if missing != 0 {
        return Err(Error::BadPartition(format!("{missing} cross edges are missing")));
    }
    if k == 0 || inside != k - 1 {
        return Err(Error::BadPartition(format!("{inside} embedded edges, expected k - 1 = {}", k.saturating_sub(1))));
    }
    if !gstar.is_connected() {
        return Err(Error::Disconnected);
    }
    let rep = spectral_radius(gstar, DEFAULT_TOL)?;
    let rho = rep.rho;
    if rho <= (k - 1) as f64 {
        return Err(Error::InvalidParameter(format!("ρ = {rho} does not exceed k - 1 = {}", k - 1)));
    }
    let x = &rep.perron;
    let total: f64 = x.iter().sum();
    let slack = 1e-10 * rho * total;
    let mut rows = Vec::new();
    for part in 0..partition.parts() {
        let mask = partition.mask(part);
        let e = gstar.edges_within(mask) as f64;
        let size = partition.sizes()[part] as f64;
        let outside: f64 = (0..gstar.order()).filter(|&v| mask >> v & 1 == 0).map(|v| x[v]).sum();
        let lower = rho * total / (rho + size + 2.0 * e / (rho - (k - 1) as f64));
        let upper = rho * total / (rho + size + 2.0 * e / rho);
        let holds = lower <= outside + slack && outside <= upper + slack;
        rows.push(PartSumRow { part, embedded_edges: e as usize, lower, outside_sum: outside, upper, holds });
    }
    let holds = rows.iter().all(|r| r.holds);
    Ok(PartSumReport { rho, rows, holds })
}
