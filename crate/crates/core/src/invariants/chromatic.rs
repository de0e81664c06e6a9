use crate::error::{Error, Result};
use crate::graph::{bits, Edge, Graph};

/// Exact colouring routines refuse graphs above this order.
pub const CHROMATIC_MAX_VERTICES: usize = 16;

fn check_budget(g: &Graph) -> Result<()> {
    if g.order() > CHROMATIC_MAX_VERTICES {
        return Err(Error::OverBudget { what: "chromatic number", size: g.order(), max: CHROMATIC_MAX_VERTICES });
    }
    Ok(())
}

/// Least `r` admitting a proper `r`-colouring.
///
/// Searches upward from the clique number and stops at the greedy bound.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    check_budget(g)?;
    Ok(chromatic_unchecked(g))
}

pub(crate) fn chromatic_unchecked(g: &Graph) -> usize {
    if g.order() == 0 {
        return 0;
    }
    if g.edge_count() == 0 {
        return 1;
    }
    let lower = clique_number(g);
    let upper = greedy_colours(g);
    (lower..upper).find(|&k| is_colourable(g, k)).unwrap_or(upper)
}

/// An edge whose removal lowers the chromatic number, if any.
pub fn color_critical_edge(g: &Graph) -> Result<Option<Edge>> {
    check_budget(g)?;
    if g.edge_count() == 0 {
        return Err(Error::InvalidParameter("colour-criticality of an edgeless graph".into()));
    }
    let chi = chromatic_unchecked(g);
    Ok(g.edges().into_iter().find(|&(u, v)| {
        let h = g.without_edge(u, v).expect("edge exists");
        is_colourable(&h, chi - 1)
    }))
}

pub fn is_color_critical(g: &Graph) -> Result<bool> {
    color_critical_edge(g).map(|e| e.is_some())
}

pub fn clique_number(g: &Graph) -> usize {
    fn grow(g: &Graph, size: usize, candidates: u64, best: &mut usize) {
        if candidates == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + candidates.count_ones() as usize <= *best {
            return;
        }
        let mut rest = candidates;
        while rest != 0 {
            if size + rest.count_ones() as usize <= *best {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow(g, size + 1, rest & g.neighbors(v), best);
        }
    }
    let mut best = 0;
    grow(g, 0, g.vertex_mask(), &mut best);
    best
}

/// DSatur colour count.
fn greedy_colours(g: &Graph) -> usize {
    let n = g.order();
    let mut colour = vec![usize::MAX; n];
    let mut used = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colour[v] == usize::MAX)
            .max_by_key(|&v| {
                let seen =
                    bits(g.neighbors(v)).filter(|&w| colour[w] != usize::MAX).fold(0u64, |m, w| m | 1 << colour[w]);
                (seen.count_ones(), g.degree(v), std::cmp::Reverse(v))
            })
            .expect("uncoloured vertex remains");
        let seen = bits(g.neighbors(v)).filter(|&w| colour[w] != usize::MAX).fold(0u64, |m, w| m | 1 << colour[w]);
        let c = (!seen).trailing_zeros() as usize;
        colour[v] = c;
        used = used.max(c + 1);
    }
    used
}

/// Backtracking `k`-colouring over colour-class masks, highest degree first.
pub(crate) fn is_colourable(g: &Graph, k: usize) -> bool {
    let n = g.order();
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut classes = vec![0u64; k];

    fn place(g: &Graph, order: &[usize], idx: usize, classes: &mut [u64], opened: usize) -> bool {
        let Some(&v) = order.get(idx) else {
            return true;
        };
        let limit = (opened + 1).min(classes.len());
        for c in 0..limit {
            if classes[c] & g.neighbors(v) == 0 {
                classes[c] |= 1 << v;
                if place(g, order, idx + 1, classes, opened.max(c + 1)) {
                    return true;
                }
                classes[c] &= !(1 << v);
            }
        }
        false
    }
    place(g, &order, 0, &mut classes, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, standard_graph, turan, StandardKind};

    fn bowtie() -> Graph {
        Graph::with_edges(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap()
    }

    /// Exhaustive `k`-colouring oracle over all assignments.
    fn brute_colourable(g: &Graph, k: usize) -> bool {
        let n = g.order();
        let total = k.pow(n as u32);
        (0..total).any(|mut code| {
            let mut col = vec![0; n];
            for c in col.iter_mut() {
                *c = code % k;
                code /= k;
            }
            g.edges().iter().all(|&(u, v)| col[u] != col[v])
        })
    }

    #[test]
    fn examples() {
        assert_eq!(chromatic_number(&standard_graph(StandardKind::Cycle, 5).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&turan(9, 3).unwrap()).unwrap(), 3);
        let b = bowtie();
        assert!(!brute_colourable(&b, 2));
        assert!(brute_colourable(&b, 3));
        assert_eq!(chromatic_number(&b).unwrap(), 3);
        assert_eq!(chromatic_number(&Graph::empty(4).unwrap()).unwrap(), 1);
        assert_eq!(chromatic_number(&Graph::empty(0).unwrap()).unwrap(), 0);
    }

    #[test]
    fn turan_graphs_have_r_colours() {
        for n in 1..=12 {
            for r in 1..=n {
                assert_eq!(chromatic_number(&turan(n, r).unwrap()).unwrap(), r, "T({n},{r})");
            }
        }
    }

    #[test]
    fn criticality() {
        assert!(is_color_critical(&complete(4).unwrap()).unwrap());
        assert!(is_color_critical(&standard_graph(StandardKind::Cycle, 5).unwrap()).unwrap());
        assert!(!is_color_critical(&bowtie()).unwrap());
        // Witness edges really drop the chromatic number.
        for g in [complete(5).unwrap(), standard_graph(StandardKind::Wheel, 6).unwrap()] {
            let (u, v) = color_critical_edge(&g).unwrap().unwrap();
            let chi = chromatic_number(&g).unwrap();
            assert_eq!(chromatic_number(&g.without_edge(u, v).unwrap()).unwrap(), chi - 1);
        }
        assert!(is_color_critical(&Graph::empty(3).unwrap()).is_err());
        assert!(chromatic_number(&Graph::empty(17).unwrap()).is_err());
    }

    #[test]
    fn agrees_with_exhaustive_colouring() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=7);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::with_edges(n, &edges).unwrap();
            let chi = chromatic_number(&g).unwrap();
            assert!(brute_colourable(&g, chi), "{g:?}");
            assert!(chi == 1 || !brute_colourable(&g, chi - 1), "{g:?}");
        }
    }
}
