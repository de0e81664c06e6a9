//! Small undirected simple graphs stored as one adjacency word per vertex.
//!
//! Every constructor returns a fresh value; a [`Graph`] is never mutated in
//! place once built, so values can be shared freely between search workers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard vertex cap: a neighbourhood must fit one machine word.
pub const MAX_VERTICES: usize = 64;

/// An edge `(u, v)` with `u < v` once normalised.
pub type Edge = (usize, usize);

/// Ordered list of edges, each with `u < v`.
pub type EdgeList = Vec<Edge>;

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate over the set bits of a word, lowest first.
#[inline]
pub fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let b = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(b)
        }
    })
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// Named families accepted by [`standard_graph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardKind {
    Complete,
    Empty,
    Cycle,
    Path,
    Star,
    Matching,
    Wheel,
}

impl Graph {
    /// The edgeless graph `E_n`.
    pub fn empty(n: usize) -> Result<Graph> {
        check_order(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn with_edges(n: usize, edges: &[Edge]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::VertexOutOfRange { vertex: u, n });
            }
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            if g.adj[u] >> v & 1 == 1 {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Build from raw adjacency rows, validating symmetry, loops and stray bits.
    pub fn from_rows(rows: Vec<u64>) -> Result<Graph> {
        let n = rows.len();
        check_order(n)?;
        let stray = !low_mask(n);
        for (i, &row) in rows.iter().enumerate() {
            if row & stray != 0 {
                return Err(Error::InvalidParameter(format!("row {i} has bits beyond vertex {n}")));
            }
            if row >> i & 1 == 1 {
                return Err(Error::Loop(i));
            }
            for j in bits(row) {
                if rows[j] >> i & 1 == 0 {
                    return Err(Error::InvalidParameter(format!("adjacency not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    /// Caller guarantees the rows already satisfy every invariant.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Graph {
        debug_assert!(Graph::from_rows(rows.clone()).is_ok());
        Graph { n: rows.len(), adj: rows }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Mask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn edges(&self) -> EdgeList {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Number of edges with both endpoints in `mask`.
    pub fn edges_within(&self, mask: u64) -> usize {
        bits(mask).map(|v| (self.adj[v] & mask).count_ones() as usize).sum::<usize>() / 2
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        let mut adj = self.adj.clone();
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
        Ok(Graph { n: self.n, adj })
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(Error::InvalidParameter(format!("({u}, {v}) is not an edge")));
        }
        let mut adj = self.adj.clone();
        adj[u] &= !(1 << v);
        adj[v] &= !(1 << u);
        Ok(Graph { n: self.n, adj })
    }

    /// Add every listed edge; pairs already present are rejected.
    pub fn with_added_edges(&self, edges: &[Edge]) -> Result<Graph> {
        let mut adj = self.adj.clone();
        for &(u, v) in edges {
            self.check_pair(u, v)?;
            if adj[u] >> v & 1 == 1 {
                return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(Graph { n: self.n, adj })
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::Loop(u));
        }
        Ok(())
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter("permutation length mismatch".into()));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::InvalidParameter("not a permutation".into()));
            }
            seen |= 1 << p;
        }
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            let mut row = 0u64;
            for v in bits(self.adj[u]) {
                row |= 1 << perm[v];
            }
            adj[perm[u]] = row;
        }
        Ok(Graph { n: self.n, adj })
    }

    /// Subgraph induced by the vertices in `mask`, relabelled in increasing order.
    pub fn induced(&self, mask: u64) -> Graph {
        let keep: Vec<usize> = bits(mask & self.vertex_mask()).collect();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adj = keep.iter().map(|&v| bits(self.adj[v] & mask).fold(0u64, |row, w| row | 1 << index[w])).collect();
        Graph { n: keep.len(), adj }
    }

    /// Drop isolated vertices.
    pub fn strip_isolated(&self) -> Graph {
        let keep = (0..self.n).filter(|&v| self.adj[v] != 0).fold(0u64, |m, v| m | 1 << v);
        self.induced(keep)
    }

    pub fn isolated_count(&self) -> usize {
        self.adj.iter().filter(|&&r| r == 0).count()
    }

    /// Connected components as vertex masks, ordered by least vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let next = bits(frontier).fold(0u64, |m, v| m | self.adj[v]) & !comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Whether every edge of `self` is an edge of `other` (same vertex set).
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a & !b == 0)
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertex_mask();
        let adj = (0..self.n).map(|v| !self.adj[v] & full & !(1 << v)).collect();
        Graph { n: self.n, adj }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::TooManyVertices { n, max: MAX_VERTICES })
    } else {
        Ok(())
    }
}

pub fn complete(n: usize) -> Result<Graph> {
    check_order(n)?;
    let full = low_mask(n);
    Ok(Graph { n, adj: (0..n).map(|v| full & !(1 << v)).collect() })
}

/// Complete multipartite graph; part `i` occupies a consecutive block of vertices.
pub fn complete_multipartite(part_sizes: &[usize]) -> Result<Graph> {
    let n: usize = part_sizes.iter().sum();
    check_order(n)?;
    if part_sizes.contains(&0) {
        return Err(Error::InvalidParameter("part sizes must be positive".into()));
    }
    let full = low_mask(n);
    let mut adj = Vec::with_capacity(n);
    let mut start = 0;
    for &size in part_sizes {
        let block = low_mask(size) << start;
        adj.extend(std::iter::repeat_n(full & !block, size));
        start += size;
    }
    Ok(Graph { n, adj })
}

/// Part sizes of `T(n, r)`: as equal as possible, larger parts first.
pub fn turan_part_sizes(n: usize, r: usize) -> Result<Vec<usize>> {
    if r < 1 || r > n {
        return Err(Error::InvalidParameter(format!("Turán graph needs 1 <= r <= n, got n={n}, r={r}")));
    }
    let (q, extra) = (n / r, n % r);
    Ok((0..r).map(|i| q + usize::from(i < extra)).collect())
}

pub fn turan(n: usize, r: usize) -> Result<Graph> {
    complete_multipartite(&turan_part_sizes(n, r)?)
}

pub fn standard_graph(kind: StandardKind, n: usize) -> Result<Graph> {
    let min = match kind {
        StandardKind::Cycle => 3,
        StandardKind::Wheel => 4,
        StandardKind::Star | StandardKind::Path => 1,
        _ => 0,
    };
    if n < min {
        return Err(Error::InvalidParameter(format!("{kind:?} needs at least {min} vertices, got {n}")));
    }
    check_order(n)?;
    let edges: EdgeList = match kind {
        StandardKind::Complete => return complete(n),
        StandardKind::Empty => Vec::new(),
        StandardKind::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        StandardKind::Path => (1..n).map(|i| (i - 1, i)).collect(),
        StandardKind::Star => (1..n).map(|i| (0, i)).collect(),
        StandardKind::Matching => {
            if n % 2 == 1 {
                return Err(Error::InvalidParameter(format!("matching needs an even order, got {n}")));
            }
            (0..n / 2).map(|i| (2 * i, 2 * i + 1)).collect()
        }
        StandardKind::Wheel => {
            let rim = standard_graph(StandardKind::Cycle, n - 1)?;
            return join(&complete(1)?, &rim);
        }
    };
    Graph::with_edges(n, &edges)
}

pub fn join(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.n + h.n;
    check_order(n)?;
    let g_mask = low_mask(g.n);
    let h_mask = low_mask(h.n) << g.n;
    let adj = g.adj.iter().map(|&row| row | h_mask).chain(h.adj.iter().map(|&row| row << g.n | g_mask)).collect();
    Ok(Graph { n, adj })
}

pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Graph> {
    let n = g.n + h.n;
    check_order(n)?;
    let adj = g.adj.iter().copied().chain(h.adj.iter().map(|&row| row << g.n)).collect();
    Ok(Graph { n, adj })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_well_formed(g: &Graph) {
        assert!(Graph::from_rows(g.rows().to_vec()).is_ok(), "{g:?}");
    }

    #[test]
    fn with_edges_examples() {
        let k3 = Graph::with_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3, complete(3).unwrap());
        let e2 = Graph::with_edges(2, &[]).unwrap();
        assert_eq!(e2.edge_count(), 0);
        let m4 = Graph::with_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(m4, standard_graph(StandardKind::Matching, 4).unwrap());
    }

    #[test]
    fn with_edges_errors() {
        assert_eq!(Graph::with_edges(3, &[(0, 3)]), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::with_edges(3, &[(1, 1)]), Err(Error::Loop(1)));
        assert_eq!(Graph::with_edges(3, &[(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert!(matches!(Graph::empty(65), Err(Error::TooManyVertices { .. })));
    }

    #[test]
    fn multipartite_and_turan() {
        assert_eq!(complete_multipartite(&[3, 4]).unwrap().edge_count(), 12);
        assert_eq!(complete_multipartite(&[2, 2, 2]).unwrap().edge_count(), 12);
        assert_eq!(complete_multipartite(&[7]).unwrap().edge_count(), 0);
        assert_eq!(turan(7, 2).unwrap(), complete_multipartite(&[4, 3]).unwrap());
        assert_eq!(turan_part_sizes(10, 3).unwrap(), vec![4, 3, 3]);
        assert_eq!(turan(10, 3).unwrap().edge_count(), 33);
        assert_eq!(turan(5, 5).unwrap(), complete(5).unwrap());
        assert!(turan(3, 4).is_err());
        assert!(turan(3, 0).is_err());
        assert!(complete_multipartite(&[40, 25]).is_err());
    }

    #[test]
    fn standard_graphs() {
        let s4 = standard_graph(StandardKind::Star, 4).unwrap();
        assert_eq!((s4.edge_count(), s4.degree(0)), (3, 3));
        assert_eq!(standard_graph(StandardKind::Matching, 4).unwrap().edge_count(), 2);
        let w5 = standard_graph(StandardKind::Wheel, 5).unwrap();
        assert_eq!(w5.edge_count(), 8);
        assert_eq!(w5, join(&complete(1).unwrap(), &standard_graph(StandardKind::Cycle, 4).unwrap()).unwrap());
        assert!(standard_graph(StandardKind::Cycle, 2).is_err());
        assert!(standard_graph(StandardKind::Wheel, 3).is_err());
        assert!(standard_graph(StandardKind::Matching, 5).is_err());
        for kind in [
            StandardKind::Complete,
            StandardKind::Empty,
            StandardKind::Cycle,
            StandardKind::Path,
            StandardKind::Star,
            StandardKind::Wheel,
        ] {
            assert_well_formed(&standard_graph(kind, 9).unwrap());
        }
    }

    #[test]
    fn join_and_union() {
        let k1 = complete(1).unwrap();
        let c4 = standard_graph(StandardKind::Cycle, 4).unwrap();
        assert_eq!(join(&k1, &c4).unwrap().edge_count(), 8);
        let e3 = Graph::empty(3).unwrap();
        let e4 = Graph::empty(4).unwrap();
        assert_eq!(join(&e3, &e4).unwrap(), complete_multipartite(&[3, 4]).unwrap());

        // (K2 ∪ E3) + T(3,1): 1 internal edge plus 5·3 cross edges.
        let k2 = complete(2).unwrap();
        let host = join(&disjoint_union(&k2, &e3).unwrap(), &turan(3, 1).unwrap()).unwrap();
        assert_eq!(host.edge_count(), 16);

        let k3 = complete(3).unwrap();
        let two = disjoint_union(&k3, &k3).unwrap();
        assert_eq!((two.order(), two.edge_count()), (6, 6));
        assert_eq!(disjoint_union(&k3, &Graph::empty(0).unwrap()).unwrap(), k3);
        let m2 = standard_graph(StandardKind::Matching, 2).unwrap();
        assert_eq!(disjoint_union(&m2, &m2).unwrap(), standard_graph(StandardKind::Matching, 4).unwrap());
        assert!(join(&Graph::empty(40).unwrap(), &Graph::empty(30).unwrap()).is_err());
    }

    #[test]
    fn structural_helpers() {
        let g = Graph::with_edges(6, &[(0, 1), (1, 2), (4, 5)]).unwrap();
        assert_eq!(g.components(), vec![0b111, 0b1000, 0b110000]);
        assert!(!g.is_connected());
        assert_eq!(g.strip_isolated().order(), 5);
        assert_eq!(g.induced(0b110).edges(), vec![(0, 1)]);
        assert_eq!(g.edges_within(0b111), 2);
        let p = g.permute(&[5, 4, 3, 2, 1, 0]).unwrap();
        assert_eq!(p.edges(), vec![(0, 1), (3, 4), (4, 5)]);
        assert_eq!(g.complement().edge_count(), 15 - 3);
    }
}
