//! Exact scalar invariants and the two closed-form edge counts used throughout.

mod chromatic;
mod matching;

pub use chromatic::{chromatic_number, clique_number, color_critical_edge, is_color_critical, CHROMATIC_MAX_VERTICES};
pub use matching::{matching_number, maximum_matching};

use serde::{Deserialize, Serialize};

use crate::enumerate::LevelWalk;
use crate::error::{Error, Result};
use crate::graph::{turan_part_sizes, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBundle {
    pub chi: usize,
    pub nu: usize,
    pub delta_max: usize,
    pub edge_count: usize,
}

impl InvariantBundle {
    pub fn of(g: &Graph) -> Result<InvariantBundle> {
        Ok(InvariantBundle {
            chi: chromatic_number(g)?,
            nu: matching_number(g),
            delta_max: max_degree(g),
            edge_count: g.edge_count(),
        })
    }
}

pub fn max_degree(g: &Graph) -> usize {
    (0..g.order()).map(|v| g.degree(v)).max().unwrap_or(0)
}

/// Chvátal–Hanson: the largest edge count of a graph with matching number at
/// most `nu` and maximum degree at most `delta`.
pub fn chvatal_hanson(nu: usize, delta: usize) -> Result<usize> {
    if nu == 0 || delta == 0 {
        return Err(Error::InvalidParameter(format!("chvatal_hanson needs positive arguments, got ({nu}, {delta})")));
    }
    Ok(nu * delta + (delta / 2) * (nu / delta.div_ceil(2)))
}

/// `e(T(n, r))` from the part sizes alone.
pub fn turan_edge_count(n: usize, r: usize) -> Result<usize> {
    let parts = turan_part_sizes(n, r)?;
    Ok(n * (n - 1) / 2 - parts.iter().map(|p| p * p.saturating_sub(1) / 2).sum::<usize>())
}

/// Largest `e(G)` over graphs on `vertices` vertices with `ν(G) <= nu` and
/// `Δ(G) <= delta`, found by walking the degree- and matching-bounded graphs
/// up to isomorphism. Independent of [`chvatal_hanson`].
pub fn bounded_edges_by_search(nu: usize, delta: usize, vertices: usize) -> usize {
    let walk = LevelWalk { max_edges: None, keep_all: false, node_budget: None };
    let start = Graph::empty(vertices).expect("vertex count within cap");
    let out =
        walk.run(vec![start], |g, (u, v)| g.degree(u) <= delta && g.degree(v) <= delta && matching_number(g) <= nu);
    out.top().0
}
