//! Explicit extremal-type graphs: Turán graphs with small graphs embedded in
//! a part, the cone over a Turán graph, and the edge-removal counterexample.
//!
//! Embedded shapes always sit on the lowest-indexed vertices of their part,
//! so outputs are reproducible.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::GraphFamily;
use crate::graph::{complete, complete_multipartite, join, turan, turan_part_sizes, Edge, EdgeList, Graph};

/// Vertex-to-class assignment with class sizes nonincreasing in class index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    classes: Vec<usize>,
    sizes: Vec<usize>,
}

impl Partition {
    /// Consecutive blocks of the given sizes.
    pub fn from_sizes(sizes: &[usize]) -> Result<Partition> {
        let classes = sizes.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();
        Partition::new(classes, sizes.len())
    }

    /// Validate `classes[v] < r`, every class nonempty and sizes
    /// nonincreasing.
    pub fn new(classes: Vec<usize>, r: usize) -> Result<Partition> {
        let mut sizes = vec![0; r];
        for &c in &classes {
            if c >= r {
                return Err(Error::BadPartition(format!("class {c} out of range for {r} classes")));
            }
            sizes[c] += 1;
        }
        if sizes.contains(&0) {
            return Err(Error::BadPartition("empty class".into()));
        }
        if sizes.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadPartition(format!("class sizes {sizes:?} are not nonincreasing")));
        }
        Ok(Partition { classes, sizes })
    }

    /// Relabel arbitrary class ids `0..r` so sizes become nonincreasing;
    /// equal sizes keep the order of their smallest vertex.
    pub(crate) fn normalized(classes: &[usize], r: usize) -> Result<Partition> {
        let mut sizes = vec![0usize; r];
        let mut first = vec![usize::MAX; r];
        for (v, &c) in classes.iter().enumerate() {
            sizes[c] += 1;
            first[c] = first[c].min(v);
        }
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by_key(|&c| (std::cmp::Reverse(sizes[c]), first[c]));
        let mut rename = vec![0; r];
        for (new, &old) in order.iter().enumerate() {
            rename[old] = new;
        }
        Partition::new(classes.iter().map(|&c| rename[c]).collect(), r)
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn parts(&self) -> usize {
        self.sizes.len()
    }

    pub fn order(&self) -> usize {
        self.classes.len()
    }

    /// Vertex mask of class `i`.
    pub fn mask(&self, i: usize) -> u64 {
        self.classes.iter().enumerate().filter(|&(_, &c)| c == i).fold(0, |m, (v, _)| m | 1 << v)
    }

    /// Vertices of class `i`, ascending.
    pub fn members(&self, i: usize) -> Vec<usize> {
        (0..self.classes.len()).filter(|&v| self.classes[v] == i).collect()
    }

    /// Edges of `g` inside classes, and complete-multipartite edges missing
    /// from `g`.
    pub fn edit_counts(&self, g: &Graph) -> (usize, usize) {
        let inside: usize = (0..self.parts()).map(|i| g.edges_within(self.mask(i))).sum();
        let n = self.order();
        let cross_total = n * n.saturating_sub(1) / 2 - self.sizes.iter().map(|s| s * (s - 1) / 2).sum::<usize>();
        let cross_present = g.edge_count() - inside;
        (inside, cross_total - cross_present)
    }
}

/// Shape of the graph embedded into one Turán part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedShape {
    /// `K_{1,m}` centred at the first vertex of the part.
    Star,
    /// `K_3`; requires exactly three edges.
    Triangle,
    /// `m` disjoint edges.
    Matching,
    /// Edges given in part-local indices.
    Explicit(EdgeList),
}

fn shape_edges(shape: &EmbedShape, m: usize) -> Result<(EdgeList, usize)> {
    Ok(match shape {
        EmbedShape::Star => ((1..=m).map(|i| (0, i)).collect(), if m == 0 { 0 } else { m + 1 }),
        EmbedShape::Triangle => {
            if m != 3 {
                return Err(Error::InvalidParameter(format!("a triangle has 3 edges, {m} requested")));
            }
            (vec![(0, 1), (1, 2), (0, 2)], 3)
        }
        EmbedShape::Matching => ((0..m).map(|i| (2 * i, 2 * i + 1)).collect(), 2 * m),
        EmbedShape::Explicit(edges) => {
            if edges.len() != m {
                return Err(Error::InvalidParameter(format!("{} explicit edges, {m} requested", edges.len())));
            }
            let span = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
            (edges.clone(), span)
        }
    })
}

/// `T(n, r)` with `m` edges of `shape` embedded in part `target_part`
/// (parts are indexed larger first).
pub fn turan_plus_edges(
    n: usize,
    r: usize,
    m: usize,
    shape: &EmbedShape,
    target_part: usize,
) -> Result<(Graph, Partition)> {
    let sizes = turan_part_sizes(n, r)?;
    let partition = Partition::from_sizes(&sizes)?;
    let Some(&size) = sizes.get(target_part) else {
        return Err(Error::InvalidParameter(format!("part {target_part} out of range for r = {r}")));
    };
    let (local, span) = shape_edges(shape, m)?;
    if span > size {
        return Err(Error::InvalidParameter(format!("shape needs {span} vertices but part {target_part} has {size}")));
    }
    let offset: usize = sizes[..target_part].iter().sum();
    let edges: Vec<Edge> = local.iter().map(|&(u, v)| (offset + u, offset + v)).collect();
    Ok((turan(n, r)?.with_added_edges(&edges)?, partition))
}

/// Index of the first part of size `⌊n/r⌋`.
pub fn smallest_part(n: usize, r: usize) -> Result<usize> {
    let sizes = turan_part_sizes(n, r)?;
    Ok(sizes.iter().position(|&s| s == n / r).expect("some part has the floor size"))
}

/// `T(n, r)` plus a triangle (`k = 4`) or a star with `k - 1` edges,
/// embedded in a smallest part.
pub fn spex_construction(n: usize, r: usize, k: usize) -> Result<(Graph, Partition)> {
    if k == 4 {
        turan_plus_edges(n, r, 3, &EmbedShape::Triangle, smallest_part(n, r)?)
    } else {
        spex_construction_star_variant(n, r, k)
    }
}

/// The star placement for every `k`, including `k = 4` where it is not the
/// spectral extremal choice. Kept for comparisons.
pub fn spex_construction_star_variant(n: usize, r: usize, k: usize) -> Result<(Graph, Partition)> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    turan_plus_edges(n, r, k - 1, &EmbedShape::Star, smallest_part(n, r)?)
}

/// `T(n, r)` plus a maximum matching inside a largest part.
pub fn turan_plus_matching(n: usize, r: usize) -> Result<Graph> {
    let sizes = turan_part_sizes(n, r)?;
    Ok(turan_plus_edges(n, r, sizes[0] / 2, &EmbedShape::Matching, 0)?.0)
}

/// `K_1 + T(n - 1, r)`.
pub fn cone_over_turan(n: usize, r: usize) -> Result<Graph> {
    if n < r + 1 {
        return Err(Error::InvalidParameter(format!("cone over T(n-1, r) needs n >= r + 1, got n = {n}, r = {r}")));
    }
    join(&complete(1)?, &turan(n - 1, r)?)
}

/// `K_{2s,2s}` with extra edges inside its sides (side A is `0..2s`, side B
/// is `2s..4s`, both in local indices).
fn bipartite_plus(s: usize, in_a: &[Edge], in_b: &[Edge]) -> Result<Graph> {
    let base = complete_multipartite(&[2 * s, 2 * s])?;
    let shifted: Vec<Edge> = in_b.iter().map(|&(u, v)| (u + 2 * s, v + 2 * s)).collect();
    base.with_added_edges(&[in_a, &shifted].concat())
}

/// `{H1, H2, H3}`: `K_{2s,2s}` plus two disjoint edges in one side, plus
/// `K_{1,s+2}` in one side, plus `K_{1,s}` in each side.
pub fn counterexample_family(s: usize) -> Result<GraphFamily> {
    if s < 3 {
        return Err(Error::InvalidParameter(format!("s must be at least 3, got {s}")));
    }
    let star = |m: usize| -> EdgeList { (1..=m).map(|i| (0, i)).collect() };
    let h1 = bipartite_plus(s, &[(0, 1), (2, 3)], &[])?;
    let h2 = bipartite_plus(s, &star(s + 2), &[])?;
    let h3 = bipartite_plus(s, &star(s), &star(s))?;
    GraphFamily::new(format!("counterexample(s={s})"), vec![h1, h2, h3])
}

/// `T(n, 2)` minus the cross edge `uv` (`u = 0`, `v = n/2`), plus `K_{1,s+1}`
/// centred at `u` inside its part and at `v` inside its part.
pub fn counterexample_witness(n: usize, s: usize) -> Result<Graph> {
    if s < 3 {
        return Err(Error::InvalidParameter(format!("s must be at least 3, got {s}")));
    }
    if n % 2 == 1 || n < 4 * s + 4 {
        return Err(Error::InvalidParameter(format!("witness needs even n >= 4s + 4, got n = {n}, s = {s}")));
    }
    let (u, v) = (0, n / 2);
    let mut added: EdgeList = (1..=s + 1).map(|i| (u, u + i)).collect();
    added.extend((1..=s + 1).map(|i| (v, v + i)));
    turan(n, 2)?.without_edge(u, v)?.with_added_edges(&added)
}

/// The natural bipartition of [`counterexample_witness`].
pub fn counterexample_partition(n: usize) -> Result<Partition> {
    Partition::from_sizes(&turan_part_sizes(n, 2)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::graph::{standard_graph, StandardKind};
    use crate::invariants::{chromatic_number, turan_edge_count};

    #[test]
    fn turan_plus_examples() {
        let (g, p) = turan_plus_edges(8, 2, 1, &EmbedShape::Star, 0).unwrap();
        assert_eq!(g.edge_count(), 17);
        assert_eq!(p.edit_counts(&g), (1, 0));
        let (g, _) = turan_plus_edges(9, 2, 3, &EmbedShape::Triangle, 0).unwrap();
        assert_eq!(g.edge_count(), 23);
        assert!(turan_plus_edges(9, 2, 2, &EmbedShape::Triangle, 0).is_err());
        assert!(turan_plus_edges(6, 2, 3, &EmbedShape::Star, 0).is_err());
        assert!(turan_plus_edges(6, 2, 1, &EmbedShape::Star, 2).is_err());
        let (g, p) = turan_plus_edges(7, 2, 1, &EmbedShape::Star, 1).unwrap();
        assert_eq!(p.sizes(), &[4, 3]);
        assert!(g.has_edge(4, 5));
        let explicit = EmbedShape::Explicit(vec![(0, 2), (1, 3)]);
        let (g, p) = turan_plus_edges(10, 3, 2, &explicit, 0).unwrap();
        assert_eq!(p.edit_counts(&g), (2, 0));
    }

    #[test]
    fn spex_shapes() {
        let (g, p) = spex_construction(9, 2, 4).unwrap();
        assert_eq!(g.edge_count(), 20 + 3);
        assert_eq!(g.edges_within(p.mask(1)), 3);
        assert!(g.has_edge(5, 6) && g.has_edge(6, 7) && g.has_edge(5, 7));
        let (g, p) = spex_construction(9, 2, 3).unwrap();
        assert_eq!(g.edges_within(p.mask(1)), 2);
        assert!(g.has_edge(5, 6) && g.has_edge(5, 7));
        assert_eq!(spex_construction(10, 2, 1).unwrap().0, turan(10, 2).unwrap());
        // Divisible case picks the first part.
        let (g, _) = spex_construction(8, 2, 2).unwrap();
        assert!(g.has_edge(0, 1));
        for (n, r, k) in [(9, 3, 3), (15, 3, 5), (10, 2, 4)] {
            assert_eq!(spex_construction(n, r, k).unwrap().0.edge_count(), turan_edge_count(n, r).unwrap() + k - 1);
        }
        assert!(spex_construction(6, 2, 4).is_ok());
        assert!(spex_construction(5, 2, 4).is_err());
        assert!(spex_construction(5, 2, 5).is_err());
    }

    #[test]
    fn matching_and_cone() {
        assert_eq!(turan_plus_matching(7, 2).unwrap().edge_count(), 14);
        assert_eq!(turan_plus_matching(9, 3).unwrap().edge_count(), 28);
        assert_eq!(turan_plus_matching(4, 2).unwrap().edge_count(), 5);
        assert_eq!(cone_over_turan(7, 2).unwrap().edge_count(), 15);
        assert!(is_isomorphic(&cone_over_turan(5, 2).unwrap(), &standard_graph(StandardKind::Wheel, 5).unwrap()));
        assert_eq!(cone_over_turan(4, 3).unwrap(), complete(4).unwrap());
        assert!(cone_over_turan(3, 3).is_err());
    }

    #[test]
    fn counterexample() {
        let fam = counterexample_family(3).unwrap();
        let mut edges: Vec<usize> = fam.members().iter().map(Graph::edge_count).collect();
        edges.sort();
        assert_eq!(edges, vec![38, 41, 42]);
        // Stars in both sides force two colours per side, so H3 needs four;
        // the family still has chromatic number 3 through H1 and H2.
        assert_eq!(fam.chi(), 3);
        let mut chis: Vec<(usize, usize)> =
            fam.members().iter().map(|h| (h.edge_count(), chromatic_number(h).unwrap())).collect();
        chis.sort();
        assert_eq!(chis, vec![(38, 3), (41, 3), (42, 4)]);
        let g = counterexample_witness(16, 3).unwrap();
        assert_eq!(g.edge_count(), 71);
        assert_eq!(g.edge_count(), turan_edge_count(16, 2).unwrap() + 7);
        let p = counterexample_partition(16).unwrap();
        assert_eq!(p.edit_counts(&g), (8, 1));
        assert!(counterexample_witness(15, 3).is_err());
        assert!(counterexample_witness(14, 3).is_err());
        assert!(counterexample_family(2).is_err());
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![0, 1, 1], 2).is_err());
        assert!(Partition::new(vec![0, 0, 2], 3).is_err());
        assert!(Partition::new(vec![0, 0, 5], 2).is_err());
        let p = Partition::normalized(&[1, 0, 1, 1], 2).unwrap();
        assert_eq!(p.classes(), &[0, 1, 0, 0]);
        assert_eq!(p.sizes(), &[3, 1]);
        assert_eq!(p.members(1), vec![1]);
    }
}
