//! Subgraph containment (not necessarily induced), family-freeness and
//! edge-disjoint packing.
//!
//! Pattern vertices are matched in a connectivity-first order starting from
//! the highest degree; the candidate set for each vertex is the intersection
//! of the neighbourhoods of its already-mapped pattern neighbours, filtered by
//! degree. Pattern vertices that are twins (equal open or closed
//! neighbourhoods) are interchangeable, so their images are forced to increase.

use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::{bits, low_mask, Edge, EdgeList, Graph};

pub const PATTERN_MAX_VERTICES: usize = 16;

/// `embedding[p]` is the host vertex that pattern vertex `p` maps to.
pub type Embedding = Vec<usize>;

/// Result of a bounded search: a witness, a proof of absence, or neither.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Search<T> {
    Found(T),
    Absent,
    Exhausted,
}

impl<T> Search<T> {
    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }

    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// Step counter shared by one logical search. Each candidate assignment
/// costs one step.
#[derive(Debug, Clone)]
pub struct StepBudget {
    limit: Option<u64>,
    used: u64,
}

impl StepBudget {
    pub fn unlimited() -> StepBudget {
        StepBudget { limit: None, used: 0 }
    }

    pub fn new(steps: u64) -> StepBudget {
        StepBudget { limit: Some(steps), used: 0 }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    #[inline]
    fn tick(&mut self) -> bool {
        self.used += 1;
        self.limit.is_none_or(|l| self.used <= l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
    Exhausted,
}

struct Matcher {
    order: Vec<usize>,
    /// Earlier positions whose pattern vertex is adjacent to `order[i]`.
    back: Vec<Vec<usize>>,
    /// Earlier position of a twin whose image must be smaller.
    twin_prev: Vec<Option<usize>>,
    need_degree: Vec<usize>,
}

impl Matcher {
    /// `anchors` are placed first, in the given order, and excluded from the
    /// twin ordering.
    fn new(pattern: &Graph, anchors: &[usize]) -> Matcher {
        let n = pattern.order();
        let mut order: Vec<usize> = anchors.to_vec();
        let mut placed = anchors.iter().fold(0u64, |m, &a| m | 1 << a);
        while order.len() < n {
            let next = (0..n)
                .filter(|&v| placed >> v & 1 == 0)
                .max_by_key(|&v| {
                    ((pattern.neighbors(v) & placed).count_ones(), pattern.degree(v), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex remains");
            order.push(next);
            placed |= 1 << next;
        }
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| bits(pattern.neighbors(v)).map(|w| position[w]).filter(|&j| j < i).collect())
            .collect();

        let anchored = anchors.iter().fold(0u64, |m, &a| m | 1 << a);
        let twin_prev = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                if anchored >> v & 1 == 1 {
                    return None;
                }
                (0..i).rev().find(|&j| {
                    let w = order[j];
                    anchored >> w & 1 == 0 && are_twins(pattern, v, w)
                })
            })
            .collect();
        let need_degree = order.iter().map(|&v| pattern.degree(v)).collect();
        Matcher { order, back, twin_prev, need_degree }
    }

    fn run(
        &self,
        host: &[u64],
        fixed: &[usize],
        budget: &mut StepBudget,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Flow {
        let n = host.len();
        let mut degree_at_least = [0u64; PATTERN_MAX_VERTICES + 1];
        for (d, slot) in degree_at_least.iter_mut().enumerate() {
            *slot = (0..n).filter(|&h| host[h].count_ones() as usize >= d).fold(0u64, |m, h| m | 1 << h);
        }
        let mut images = Vec::with_capacity(self.order.len());
        let mut used = 0u64;
        for (i, &h) in fixed.iter().enumerate() {
            if !budget.tick() {
                return Flow::Exhausted;
            }
            if h >= n
                || used >> h & 1 == 1
                || (host[h].count_ones() as usize) < self.need_degree[i]
                || self.back[i].iter().any(|&j| host[images[j]] >> h & 1 == 0)
            {
                return Flow::Continue;
            }
            images.push(h);
            used |= 1 << h;
        }
        self.extend(host, low_mask(n), &degree_at_least, &mut images, used, budget, visit)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        host: &[u64],
        all: u64,
        degree_at_least: &[u64],
        images: &mut Vec<usize>,
        used: u64,
        budget: &mut StepBudget,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Flow {
        let depth = images.len();
        if depth == self.order.len() {
            let mut embedding = vec![0; depth];
            for (i, &p) in self.order.iter().enumerate() {
                embedding[p] = images[i];
            }
            return match visit(&embedding) {
                ControlFlow::Continue(()) => Flow::Continue,
                ControlFlow::Break(()) => Flow::Stop,
            };
        }
        let mut candidates = all & !used & degree_at_least[self.need_degree[depth]];
        for &j in &self.back[depth] {
            candidates &= host[images[j]];
        }
        if let Some(j) = self.twin_prev[depth] {
            candidates &= !low_mask(images[j] + 1);
        }
        for h in bits(candidates) {
            if !budget.tick() {
                return Flow::Exhausted;
            }
            images.push(h);
            let flow = self.extend(host, all, degree_at_least, images, used | 1 << h, budget, visit);
            images.pop();
            if flow != Flow::Continue {
                return flow;
            }
        }
        Flow::Continue
    }
}

fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    let mu = g.neighbors(u) & !(1 << v);
    let mv = g.neighbors(v) & !(1 << u);
    mu == mv
}

fn check_sizes(host: &Graph, pattern: &Graph) -> Result<()> {
    if pattern.order() > PATTERN_MAX_VERTICES {
        return Err(Error::OverBudget { what: "pattern order", size: pattern.order(), max: PATTERN_MAX_VERTICES });
    }
    if pattern.order() > host.order() {
        return Err(Error::PatternLargerThanHost { pattern: pattern.order(), host: host.order() });
    }
    Ok(())
}

/// Bounded containment search.
pub fn contains_subgraph(host: &Graph, pattern: &Graph, budget: &mut StepBudget) -> Result<Search<Embedding>> {
    check_sizes(host, pattern)?;
    let matcher = Matcher::new(pattern, &[]);
    Ok(first_embedding(&matcher, host.rows(), &[], budget))
}

/// Unbounded containment search.
pub fn find_embedding(host: &Graph, pattern: &Graph) -> Result<Option<Embedding>> {
    let mut budget = StepBudget::unlimited();
    Ok(contains_subgraph(host, pattern, &mut budget)?.found())
}

/// Containment restricted to embeddings whose image uses the host edge `edge`.
pub fn contains_subgraph_through_edge(
    host: &Graph,
    pattern: &Graph,
    edge: Edge,
    budget: &mut StepBudget,
) -> Result<Search<Embedding>> {
    check_sizes(host, pattern)?;
    if !host.has_edge(edge.0, edge.1) {
        return Err(Error::InvalidParameter(format!("{edge:?} is not a host edge")));
    }
    let mut exhausted = false;
    for (a, b) in pattern.edges() {
        let matcher = Matcher::new(pattern, &[a, b]);
        for fixed in [[edge.0, edge.1], [edge.1, edge.0]] {
            match first_embedding(&matcher, host.rows(), &fixed, budget) {
                Search::Found(e) => return Ok(Search::Found(e)),
                Search::Exhausted => exhausted = true,
                Search::Absent => {}
            }
            if exhausted {
                return Ok(Search::Exhausted);
            }
        }
    }
    Ok(Search::Absent)
}

fn first_embedding(matcher: &Matcher, host: &[u64], fixed: &[usize], budget: &mut StepBudget) -> Search<Embedding> {
    let mut found = None;
    let flow = matcher.run(host, fixed, budget, &mut |e| {
        found = Some(e.to_vec());
        ControlFlow::Break(())
    });
    match (flow, found) {
        (_, Some(e)) => Search::Found(e),
        (Flow::Exhausted, None) => Search::Exhausted,
        _ => Search::Absent,
    }
}

/// Visit every embedding (up to the twin symmetry breaking). Returns false if
/// the budget ran out before the enumeration finished.
pub fn for_each_embedding(
    host: &Graph,
    pattern: &Graph,
    budget: &mut StepBudget,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) -> Result<bool> {
    check_sizes(host, pattern)?;
    let matcher = Matcher::new(pattern, &[]);
    Ok(matcher.run(host.rows(), &[], budget, &mut visit) != Flow::Exhausted)
}

/// Edge preservation and injectivity, checked bit by bit.
pub fn verify_embedding(host: &Graph, pattern: &Graph, embedding: &[usize]) -> bool {
    if embedding.len() != pattern.order() {
        return false;
    }
    let mut seen = 0u64;
    for &h in embedding {
        if h >= host.order() || seen >> h & 1 == 1 {
            return false;
        }
        seen |= 1 << h;
    }
    pattern.edges().iter().all(|&(a, b)| host.has_edge(embedding[a], embedding[b]))
}

/// Which member (by index) embeds, with its embedding. Members with more
/// vertices than the host cannot embed and are skipped.
pub fn family_search(
    host: &Graph,
    family: &GraphFamily,
    budget: &mut StepBudget,
) -> Result<Search<(usize, Embedding)>> {
    for (i, member) in family.members().iter().enumerate() {
        if member.order() > host.order() {
            continue;
        }
        match contains_subgraph(host, member, budget)? {
            Search::Found(e) => return Ok(Search::Found((i, e))),
            Search::Exhausted => return Ok(Search::Exhausted),
            Search::Absent => {}
        }
    }
    Ok(Search::Absent)
}

pub fn is_family_free(host: &Graph, family: &GraphFamily) -> Result<bool> {
    let mut budget = StepBudget::unlimited();
    Ok(family_search(host, family, &mut budget)? == Search::Absent)
}

/// Freeness of `host` given that `host - edge` is already known to be free.
pub(crate) fn family_free_through_edge(host: &Graph, family: &GraphFamily, edge: Edge) -> Result<bool> {
    let mut budget = StepBudget::unlimited();
    for member in family.members() {
        if member.order() > host.order() {
            continue;
        }
        if contains_subgraph_through_edge(host, member, edge, &mut budget)?.is_found() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One embedded copy inside a [`PackingWitness`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackedCopy {
    pub vertex_map: Embedding,
    /// Host edges used by this copy, sorted.
    pub edges: EdgeList,
}

/// Pairwise edge-disjoint copies; `copies[i]` embeds `patterns[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PackingWitness {
    pub copies: Vec<PackedCopy>,
}

impl PackingWitness {
    pub fn verify(&self, host: &Graph, patterns: &[Graph]) -> bool {
        if self.copies.len() != patterns.len() {
            return false;
        }
        let mut seen: HashSet<Edge> = HashSet::new();
        for (copy, pattern) in self.copies.iter().zip(patterns) {
            if !verify_embedding(host, pattern, &copy.vertex_map) {
                return false;
            }
            if copy.edges != image_edges(pattern, &copy.vertex_map) {
                return false;
            }
            for &e in &copy.edges {
                if !seen.insert(e) {
                    return false;
                }
            }
        }
        true
    }
}

fn image_edges(pattern: &Graph, map: &[usize]) -> EdgeList {
    let mut edges: EdgeList = pattern
        .edges()
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (map[a], map[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    edges
}

/// Pairwise edge-disjoint embeddings of every pattern, or absence.
///
/// Copies are placed one pattern at a time, removing used host edges.
/// Isomorphic patterns are grouped and their copies must have strictly
/// increasing edge signatures, which removes the permutation blow-up.
pub fn find_edge_disjoint(host: &Graph, patterns: &[Graph], budget: &mut StepBudget) -> Result<Search<PackingWitness>> {
    for p in patterns {
        if p.order() > PATTERN_MAX_VERTICES {
            return Err(Error::OverBudget { what: "pattern order", size: p.order(), max: PATTERN_MAX_VERTICES });
        }
    }
    let needed: usize = patterns.iter().map(Graph::edge_count).sum();
    if needed > host.edge_count() || patterns.iter().any(|p| p.order() > host.order()) {
        return Ok(Search::Absent);
    }
    if patterns.is_empty() {
        return Ok(Search::Found(PackingWitness { copies: Vec::new() }));
    }

    // Group isomorphic patterns, keeping first-occurrence order.
    let forms: Vec<Graph> = patterns.iter().map(canonical_form).collect();
    let mut sequence: Vec<usize> = Vec::with_capacity(patterns.len());
    let mut placed = vec![false; patterns.len()];
    for i in 0..patterns.len() {
        if placed[i] {
            continue;
        }
        for j in i..patterns.len() {
            if !placed[j] && forms[j] == forms[i] {
                placed[j] = true;
                sequence.push(j);
            }
        }
    }
    let same_as_prev: Vec<bool> =
        (0..sequence.len()).map(|k| k > 0 && forms[sequence[k]] == forms[sequence[k - 1]]).collect();
    let matchers: Vec<Matcher> = patterns.iter().map(|p| Matcher::new(p, &[])).collect();

    let mut packer =
        Packer { patterns, matchers: &matchers, sequence: &sequence, same_as_prev: &same_as_prev, chosen: Vec::new() };
    let mut rows = host.rows().to_vec();
    match packer.place(&mut rows, 0, budget) {
        Flow::Stop => {
            let mut copies = vec![None; patterns.len()];
            for (k, (map, edges)) in packer.chosen.into_iter().enumerate() {
                copies[sequence[k]] = Some(PackedCopy { vertex_map: map, edges });
            }
            let witness = PackingWitness { copies: copies.into_iter().map(|c| c.expect("all placed")).collect() };
            debug_assert!(witness.verify(host, patterns));
            Ok(Search::Found(witness))
        }
        Flow::Exhausted => Ok(Search::Exhausted),
        Flow::Continue => Ok(Search::Absent),
    }
}

struct Packer<'a> {
    patterns: &'a [Graph],
    matchers: &'a [Matcher],
    sequence: &'a [usize],
    same_as_prev: &'a [bool],
    chosen: Vec<(Embedding, EdgeList)>,
}

impl Packer<'_> {
    fn place(&mut self, rows: &mut Vec<u64>, k: usize, budget: &mut StepBudget) -> Flow {
        if k == self.sequence.len() {
            return Flow::Stop;
        }
        let remaining: usize = self.sequence[k..].iter().map(|&i| self.patterns[i].edge_count()).sum();
        let available = rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2;
        if remaining > available {
            return Flow::Continue;
        }
        let index = self.sequence[k];
        let pattern = &self.patterns[index];
        let floor = if self.same_as_prev[k] { self.chosen.last().map(|(_, e)| e.clone()) } else { None };

        // Collect distinct edge images first; the host rows change below.
        let mut images: Vec<(EdgeList, Embedding)> = Vec::new();
        let mut seen: HashSet<EdgeList> = HashSet::new();
        let flow = self.matchers[index].run(rows, &[], budget, &mut |map| {
            let edges = image_edges(pattern, map);
            if floor.as_ref().is_none_or(|f| edges > *f) && seen.insert(edges.clone()) {
                images.push((edges, map.to_vec()));
            }
            ControlFlow::Continue(())
        });
        if flow == Flow::Exhausted {
            return Flow::Exhausted;
        }
        images.sort();
        for (edges, map) in images {
            for &(u, v) in &edges {
                rows[u] &= !(1 << v);
                rows[v] &= !(1 << u);
            }
            self.chosen.push((map, edges));
            let flow = self.place(rows, k + 1, budget);
            if flow == Flow::Stop {
                return flow;
            }
            let (_, edges) = self.chosen.pop().expect("pushed above");
            for &(u, v) in &edges {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
            if flow == Flow::Exhausted {
                return flow;
            }
        }
        Flow::Continue
    }
}

/// Largest `k` such that `k` edge-disjoint copies of `pattern` fit in `host`.
pub fn max_edge_disjoint_copies(host: &Graph, pattern: &Graph, budget: &mut StepBudget) -> Result<usize> {
    if pattern.edge_count() == 0 {
        return Err(Error::InvalidParameter("pattern has no edges".into()));
    }
    if pattern.order() > host.order() {
        return Ok(0);
    }
    // Greedy lower bound.
    let mut rest = host.clone();
    let mut lo = 0;
    loop {
        match contains_subgraph(&rest, pattern, budget)? {
            Search::Found(map) => {
                lo += 1;
                let mut rows = rest.rows().to_vec();
                for (u, v) in image_edges(pattern, &map) {
                    rows[u] &= !(1 << v);
                    rows[v] &= !(1 << u);
                }
                rest = Graph::from_rows_unchecked(rows);
            }
            Search::Absent => break,
            Search::Exhausted => return Err(Error::BudgetExhausted("max_edge_disjoint_copies")),
        }
    }
    let mut hi = host.edge_count() / pattern.edge_count();
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        let copies = vec![pattern.clone(); mid];
        match find_edge_disjoint(host, &copies, budget)? {
            Search::Found(_) => lo = mid,
            Search::Absent => hi = mid - 1,
            Search::Exhausted => return Err(Error::BudgetExhausted("max_edge_disjoint_copies")),
        }
    }
    Ok(lo)
}
