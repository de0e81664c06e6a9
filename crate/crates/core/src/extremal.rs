//! Exact Turán numbers `ex(n, 𝓗)` with their extremal sets, and the edit
//! distance to a balanced complete multipartite graph.
//!
//! Two independent routes compute `ex`: a labeled scan over every edge subset
//! (descending edge count, `n <= 7`) and a level walk over `𝓗`-free graphs up
//! to isomorphism (`n <= 10`). Freeness is closed under edge deletion, so the
//! walk's highest non-empty level is exactly the extremal set.

use std::collections::BTreeSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canon::canonical_form;
use crate::constructions::Partition;
use crate::embedding::{family_free_through_edge, is_family_free};
use crate::enumerate::LevelWalk;
use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::{low_mask, turan_part_sizes, Graph};
use crate::graph6::to_graph6;

pub const ORACLE_MAX_N: usize = 7;
pub const SEARCH_MAX_N: usize = 10;
pub const EDIT_DISTANCE_MAX_N: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    Pruned,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtremalReport {
    pub n: usize,
    pub family: String,
    /// `ex(n, 𝓗)`, or the best value reached when `complete` is false.
    pub value: usize,
    /// Canonical graph6 of every extremal graph, sorted.
    pub extremal: Vec<String>,
    pub method: Method,
    pub nodes_explored: u64,
    pub elapsed_ms: f64,
    pub complete: bool,
    /// SHA-256 over the frontier graph6 lines when the search stopped early.
    pub frontier_hash: Option<String>,
}

impl ExtremalReport {
    /// Re-verify every listed graph: `n` vertices, `value` edges, `𝓗`-free,
    /// canonical and distinct.
    pub fn verify(&self, family: &GraphFamily) -> Result<bool> {
        let mut seen = BTreeSet::new();
        for code in &self.extremal {
            let g = crate::graph6::parse_graph6(code)?;
            if g.order() != self.n
                || g.edge_count() != self.value
                || canonical_form(&g) != g
                || !seen.insert(code.clone())
                || !is_family_free(&g, family)?
            {
                return Ok(false);
            }
        }
        Ok(!self.extremal.is_empty())
    }
}

/// Options for [`ex_search`].
#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Stop after generating this many children.
    pub node_budget: Option<u64>,
    /// Continue from a previously reported frontier instead of `E_n`.
    pub resume: Option<Vec<Graph>>,
}

fn check_start(n: usize, family: &GraphFamily) -> Result<Graph> {
    let empty = Graph::empty(n)?;
    if !is_family_free(&empty, family)? {
        return Err(Error::InvalidParameter(format!(
            "no {}-free graph on {n} vertices: an edgeless member fits",
            family.name()
        )));
    }
    Ok(empty)
}

fn encode_sorted(graphs: &[Graph]) -> Vec<String> {
    let mut codes: Vec<String> = graphs.iter().map(to_graph6).collect();
    codes.sort();
    codes.dedup();
    codes
}

pub fn frontier_hash(codes: &[String]) -> String {
    let mut hasher = Sha256::new();
    for c in codes {
        hasher.update(c.as_bytes());
        hasher.update(b"\n");
    }
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Visit every `m`-subset of `0..bits` as a mask, in increasing order.
fn combinations(bits: usize, m: usize, mut visit: impl FnMut(u64)) {
    if m > bits {
        return;
    }
    if m == 0 {
        visit(0);
        return;
    }
    let limit = 1u64 << bits;
    let mut x = low_mask(m);
    while x < limit {
        visit(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
}

/// Exhaustive labeled scan: edge counts from `C(n,2)` down, stopping at the
/// first count with a free graph.
pub fn ex_oracle(n: usize, family: &GraphFamily) -> Result<ExtremalReport> {
    if n > ORACLE_MAX_N {
        return Err(Error::OverBudget { what: "ex oracle order", size: n, max: ORACLE_MAX_N });
    }
    let start = Instant::now();
    check_start(n, family)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    let build = |mask: u64| -> Graph {
        let mut rows = vec![0u64; n];
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
        }
        Graph::from_rows_unchecked(rows)
    };
    const CHUNK: usize = 1 << 15;
    let mut nodes = 0u64;
    for m in (0..=pairs.len()).rev() {
        let mut found: BTreeSet<Graph> = BTreeSet::new();
        let mut chunk = Vec::with_capacity(CHUNK);
        let flush = |chunk: &mut Vec<u64>, found: &mut BTreeSet<Graph>| -> Result<()> {
            let free: Vec<Graph> = chunk
                .par_iter()
                .map(|&mask| {
                    let g = build(mask);
                    Ok(is_family_free(&g, family)?.then(|| canonical_form(&g)))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            found.extend(free);
            chunk.clear();
            Ok(())
        };
        let mut failure = None;
        combinations(pairs.len(), m, |mask| {
            if failure.is_some() {
                return;
            }
            nodes += 1;
            chunk.push(mask);
            if chunk.len() == CHUNK {
                if let Err(e) = flush(&mut chunk, &mut found) {
                    failure = Some(e);
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        flush(&mut chunk, &mut found)?;
        if !found.is_empty() {
            let graphs: Vec<Graph> = found.into_iter().collect();
            return Ok(ExtremalReport {
                n,
                family: family.name().to_string(),
                value: m,
                extremal: encode_sorted(&graphs),
                method: Method::Exhaustive,
                nodes_explored: nodes,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                complete: true,
                frontier_hash: None,
            });
        }
    }
    unreachable!("the edgeless graph is free")
}

/// Level walk over `𝓗`-free graphs up to isomorphism; each added edge is
/// checked only for copies through that edge.
pub fn ex_search(n: usize, family: &GraphFamily, options: &SearchOptions) -> Result<ExtremalReport> {
    if n > SEARCH_MAX_N {
        return Err(Error::OverBudget { what: "ex search order", size: n, max: SEARCH_MAX_N });
    }
    let start_time = Instant::now();
    let empty = check_start(n, family)?;
    let start = match &options.resume {
        Some(frontier) if !frontier.is_empty() => {
            let m = frontier[0].edge_count();
            for g in frontier {
                if g.order() != n || g.edge_count() != m || !is_family_free(g, family)? {
                    return Err(Error::InvalidParameter("resume frontier is inconsistent".into()));
                }
            }
            frontier.iter().map(canonical_form).collect()
        }
        _ => vec![empty],
    };
    let walk = LevelWalk { max_edges: None, keep_all: false, node_budget: options.node_budget };
    let out = walk.run(start, |g, e| family_free_through_edge(g, family, e).expect("members validated"));
    let (value, top) = out.top();
    let extremal = encode_sorted(top);
    let frontier_hash = (!out.complete).then(|| frontier_hash(&extremal));
    Ok(ExtremalReport {
        n,
        family: family.name().to_string(),
        value,
        extremal,
        method: Method::Pruned,
        nodes_explored: out.nodes,
        elapsed_ms: start_time.elapsed().as_secs_f64() * 1e3,
        complete: out.complete,
        frontier_hash,
    })
}

/// `α1` edges of `g` inside parts and `α2` missing cross edges, for the best
/// balanced `r`-partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EditDistance {
    pub alpha1: usize,
    pub alpha2: usize,
    pub partition: Partition,
}

impl EditDistance {
    pub fn verify(&self, g: &Graph) -> bool {
        self.partition.order() == g.order() && self.partition.edit_counts(g) == (self.alpha1, self.alpha2)
    }
}

/// Minimizes `α1 + α2` over balanced partitions. For fixed `g` this sum is
/// `e(T) - e(g) + 2·α1`, so it suffices to minimize the in-part edges.
pub fn turan_edit_distance(g: &Graph, r: usize) -> Result<EditDistance> {
    let n = g.order();
    if r < 2 {
        return Err(Error::InvalidParameter(format!("edit distance needs r >= 2, got {r}")));
    }
    if n > EDIT_DISTANCE_MAX_N {
        return Err(Error::OverBudget { what: "edit distance order", size: n, max: EDIT_DISTANCE_MAX_N });
    }
    let sizes = turan_part_sizes(n, r)?;
    let ceil = sizes[0];
    let floor = sizes[r - 1];
    let big_allowed = if ceil == floor { r } else { sizes.iter().filter(|&&s| s == ceil).count() };

    struct Scan<'a> {
        g: &'a Graph,
        r: usize,
        ceil: usize,
        floor: usize,
        big_allowed: usize,
        masks: Vec<u64>,
        assign: Vec<usize>,
        best: usize,
        best_assign: Vec<usize>,
    }
    impl Scan<'_> {
        fn go(&mut self, v: usize, opened: usize, cost: usize) {
            let n = self.g.order();
            if cost >= self.best {
                return;
            }
            if v == n {
                if opened == self.r {
                    self.best = cost;
                    self.best_assign = self.assign.clone();
                }
                return;
            }
            let remaining = n - v;
            let need: usize =
                self.masks[..opened].iter().map(|m| self.floor.saturating_sub(m.count_ones() as usize)).sum::<usize>()
                    + (self.r - opened) * self.floor;
            if need > remaining {
                return;
            }
            let big = self.masks[..opened].iter().filter(|m| m.count_ones() as usize == self.ceil).count();
            for c in 0..(opened + 1).min(self.r) {
                let size = self.masks[c].count_ones() as usize;
                if size == self.ceil || (size + 1 == self.ceil && self.ceil > self.floor && big == self.big_allowed) {
                    continue;
                }
                let add = (self.g.neighbors(v) & self.masks[c]).count_ones() as usize;
                self.masks[c] |= 1 << v;
                self.assign[v] = c;
                self.go(v + 1, opened.max(c + 1), cost + add);
                self.masks[c] &= !(1 << v);
            }
        }
    }
    let mut scan = Scan {
        g,
        r,
        ceil,
        floor,
        big_allowed,
        masks: vec![0; r],
        assign: vec![0; n],
        best: usize::MAX,
        best_assign: Vec::new(),
    };
    scan.go(0, 0, 0);
    if scan.best == usize::MAX {
        return Err(Error::InvalidParameter(format!("no balanced {r}-partition of {n} vertices")));
    }
    let partition = Partition::normalized(&scan.best_assign, r)?;
    let (alpha1, alpha2) = partition.edit_counts(g);
    Ok(EditDistance { alpha1, alpha2, partition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{turan_plus_edges, EmbedShape};
    use crate::family::parse_family;
    use crate::graph::{complete_multipartite, standard_graph, turan, StandardKind};
    use crate::invariants::turan_edge_count;

    fn code(g: &Graph) -> String {
        to_graph6(&canonical_form(g))
    }

    #[test]
    fn combination_counts() {
        for (bits, m, expect) in [(5, 2, 10), (6, 0, 1), (6, 6, 1), (21, 3, 1330), (4, 5, 0)] {
            let mut count = 0;
            combinations(bits, m, |_| count += 1);
            assert_eq!(count, expect);
        }
    }

    #[test]
    fn oracle_examples() {
        let k3 = parse_family("K3").unwrap();
        let rep = ex_oracle(7, &k3).unwrap();
        assert_eq!(rep.value, 12);
        assert_eq!(rep.extremal, vec![code(&complete_multipartite(&[3, 4]).unwrap())]);
        let rep = ex_oracle(5, &k3).unwrap();
        assert_eq!(rep.value, 6);
        assert_eq!(rep.extremal, vec![code(&complete_multipartite(&[2, 3]).unwrap())]);
        let rep = ex_oracle(3, &k3).unwrap();
        assert_eq!(rep.value, 2);
        assert_eq!(rep.extremal, vec![code(&standard_graph(StandardKind::Path, 3).unwrap())]);
        assert!(rep.verify(&k3).unwrap());
        assert!(ex_oracle(8, &k3).is_err());
    }

    #[test]
    fn two_triangles_at_six() {
        let fam = parse_family("G(K3,K3)").unwrap();
        let rep = ex_oracle(6, &fam).unwrap();
        assert_eq!(rep.value, 10);
        let (g, _) = turan_plus_edges(6, 2, 1, &EmbedShape::Star, 0).unwrap();
        assert!(rep.extremal.contains(&code(&g)));
        assert_eq!(ex_search(6, &fam, &SearchOptions::default()).unwrap().extremal, rep.extremal);
    }

    #[test]
    fn search_matches_oracle_small() {
        for spec in ["K3", "K4", "C5", "W5", "G(K3,K3)", "C4"] {
            let fam = parse_family(spec).unwrap();
            for n in 1..=6 {
                let a = ex_oracle(n, &fam).unwrap();
                let b = ex_search(n, &fam, &SearchOptions::default()).unwrap();
                assert_eq!((a.value, &a.extremal), (b.value, &b.extremal), "{spec} n={n}");
                assert!(b.verify(&fam).unwrap());
            }
        }
    }

    #[test]
    fn search_triangle_eight() {
        let rep = ex_search(8, &parse_family("K3").unwrap(), &SearchOptions::default()).unwrap();
        assert_eq!(rep.value, 16);
        assert_eq!(rep.extremal, vec![code(&turan(8, 2).unwrap())]);
        assert!(rep.complete);
    }

    #[test]
    fn budget_and_resume() {
        let fam = parse_family("K3").unwrap();
        let opts = SearchOptions { node_budget: Some(30), resume: None };
        let partial = ex_search(7, &fam, &opts).unwrap();
        assert!(!partial.complete);
        assert!(partial.frontier_hash.is_some());
        let frontier: Vec<Graph> = partial.extremal.iter().map(|c| crate::graph6::parse_graph6(c).unwrap()).collect();
        let resumed = ex_search(7, &fam, &SearchOptions { node_budget: None, resume: Some(frontier) }).unwrap();
        assert!(resumed.complete);
        assert_eq!(resumed.value, 12);
    }

    #[test]
    fn unsatisfiable_family() {
        assert!(ex_oracle(4, &parse_family("E3").unwrap()).is_err());
        assert!(ex_search(4, &parse_family("E3").unwrap(), &SearchOptions::default()).is_err());
    }

    #[test]
    fn edit_distance_examples() {
        let (g, _) = turan_plus_edges(8, 2, 1, &EmbedShape::Star, 0).unwrap();
        let d = turan_edit_distance(&g, 2).unwrap();
        assert_eq!((d.alpha1, d.alpha2), (1, 0));
        assert!(d.verify(&g));
        let d = turan_edit_distance(&turan(9, 3).unwrap(), 3).unwrap();
        assert_eq!((d.alpha1, d.alpha2), (0, 0));
        // C5 against K_{3,2}: one edge must sit inside a part, and then
        // α1 - α2 = e(C5) - e(T) = -1.
        let c5 = standard_graph(StandardKind::Cycle, 5).unwrap();
        let d = turan_edit_distance(&c5, 2).unwrap();
        assert_eq!((d.alpha1, d.alpha2), (1, 2));
        assert!(turan_edit_distance(&c5, 1).is_err());
        assert!(turan_edit_distance(&Graph::empty(17).unwrap(), 2).is_err());
    }

    /// Exhaustive oracle over all r^n labelings with balanced class sizes.
    fn brute_alpha1(g: &Graph, r: usize) -> usize {
        let n = g.order();
        let sizes = turan_part_sizes(n, r).unwrap();
        let mut best = usize::MAX;
        for code in 0..r.pow(n as u32) {
            let mut c = code;
            let mut class = vec![0; n];
            for x in class.iter_mut() {
                *x = c % r;
                c /= r;
            }
            let mut counts = vec![0; r];
            for &x in &class {
                counts[x] += 1;
            }
            counts.sort_by(|a, b| b.cmp(a));
            if counts != sizes {
                continue;
            }
            let inside = g.edges().iter().filter(|&&(u, v)| class[u] == class[v]).count();
            best = best.min(inside);
        }
        best
    }

    #[test]
    fn edit_distance_agrees_with_exhaustive_labelings() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..60 {
            let n = rng.gen_range(3..=8);
            let r = rng.gen_range(2..=3.min(n));
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.6) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::with_edges(n, &edges).unwrap();
            let d = turan_edit_distance(&g, r).unwrap();
            assert!(d.verify(&g));
            assert_eq!(d.alpha1, brute_alpha1(&g, r), "{g:?} r={r}");
            assert_eq!(
                d.alpha1 as isize - d.alpha2 as isize,
                g.edge_count() as isize - turan_edge_count(n, r).unwrap() as isize
            );
        }
    }
}
