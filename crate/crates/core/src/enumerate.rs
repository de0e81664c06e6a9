//! Level-by-level generation of graphs up to isomorphism under a property
//! closed under edge deletion.
//!
//! Level `m` holds the canonical forms of all `n`-vertex graphs with `m`
//! edges that satisfy the property. Because the property is hereditary,
//! every member of level `m + 1` arises from some member of level `m` by
//! adding one edge, so extending each member of a level by each of its
//! non-edges and deduplicating canonical forms yields the next level exactly.

use rayon::prelude::*;

use crate::canon::canonical_form;
use crate::graph::{bits, Edge, Graph};

/// Outcome of a level walk.
#[derive(Debug, Clone)]
pub struct Levels {
    /// `(edge_count, graphs)` for every level reached, ascending. When the
    /// walk was asked to keep only the frontier this holds just the last level.
    pub levels: Vec<(usize, Vec<Graph>)>,
    /// Children generated (before deduplication), summed over levels.
    pub nodes: u64,
    /// False when the node budget stopped the walk before the levels ran out.
    pub complete: bool,
}

impl Levels {
    /// Highest non-empty level.
    pub fn top(&self) -> (usize, &[Graph]) {
        self.levels.iter().rev().find(|(_, gs)| !gs.is_empty()).map(|(m, gs)| (*m, gs.as_slice())).unwrap_or((0, &[]))
    }
}

#[derive(Debug, Clone)]
pub struct LevelWalk {
    /// Stop after this many edges.
    pub max_edges: Option<usize>,
    pub keep_all: bool,
    pub node_budget: Option<u64>,
}

impl Default for LevelWalk {
    fn default() -> Self {
        LevelWalk { max_edges: None, keep_all: true, node_budget: None }
    }
}

impl LevelWalk {
    /// Walk upward from `start` (a set of canonical graphs sharing one edge
    /// count). `accept(child, added)` decides whether `child`, obtained by
    /// adding `added`, still has the property.
    pub fn run<F>(&self, start: Vec<Graph>, accept: F) -> Levels
    where
        F: Fn(&Graph, Edge) -> bool + Sync,
    {
        let Some(first) = start.first() else {
            return Levels { levels: Vec::new(), nodes: 0, complete: true };
        };
        let mut m = first.edge_count();
        let mut current = start;
        current.sort_unstable();
        current.dedup();
        let mut levels = Vec::new();
        let mut nodes = 0u64;
        let mut complete = true;
        loop {
            if self.max_edges.is_some_and(|cap| m >= cap) {
                break;
            }
            if self.node_budget.is_some_and(|b| nodes >= b) {
                complete = false;
                break;
            }
            let produced: Vec<(u64, Vec<Graph>)> = current
                .par_iter()
                .map(|g| {
                    let mut count = 0u64;
                    let mut out = Vec::new();
                    for (u, v) in non_edges(g) {
                        count += 1;
                        let child = g.with_edge(u, v).expect("non-edge");
                        if accept(&child, (u, v)) {
                            out.push(canonical_form(&child));
                        }
                    }
                    (count, out)
                })
                .collect();
            nodes += produced.iter().map(|(c, _)| c).sum::<u64>();
            let mut next: Vec<Graph> = produced.into_iter().flat_map(|(_, gs)| gs).collect();
            next.par_sort_unstable();
            next.dedup();
            if next.is_empty() {
                break;
            }
            if self.keep_all {
                levels.push((m, std::mem::take(&mut current)));
            }
            current = next;
            m += 1;
        }
        levels.push((m, current));
        Levels { levels, nodes, complete }
    }
}

pub fn non_edges(g: &Graph) -> impl Iterator<Item = Edge> + '_ {
    let full = g.vertex_mask();
    (0..g.order()).flat_map(move |u| {
        let above = full & !((2u64 << u) - 1);
        bits(!g.neighbors(u) & above).map(move |v| (u, v))
    })
}

/// All graphs on `n` vertices with at most `max_edges` edges, up to
/// isomorphism, grouped by edge count.
pub fn all_graphs(n: usize, max_edges: usize) -> Vec<(usize, Vec<Graph>)> {
    let walk = LevelWalk { max_edges: Some(max_edges), keep_all: true, node_budget: None };
    walk.run(vec![Graph::empty(n).expect("n <= 64")], |_, _| true).levels
}
