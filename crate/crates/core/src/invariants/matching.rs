//! Maximum cardinality matching via Edmonds' blossom shrinking.

use crate::graph::{bits, Graph};

const NONE: usize = usize::MAX;

/// `mate[v]` is the partner of `v` in a maximum matching, or `None`.
pub fn maximum_matching(g: &Graph) -> Vec<Option<usize>> {
    let n = g.order();
    let mut b = Blossom {
        g,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: std::collections::VecDeque::with_capacity(n),
    };
    // Greedy seed.
    for u in 0..n {
        if b.mate[u] == NONE {
            if let Some(v) = bits(g.neighbors(u)).find(|&v| b.mate[v] == NONE) {
                b.mate[u] = v;
                b.mate[v] = u;
            }
        }
    }
    for root in 0..n {
        if b.mate[root] == NONE {
            if let Some(end) = b.find_augmenting_path(root) {
                b.augment(end);
            }
        }
    }
    b.mate.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

/// Matching number ν(g).
pub fn matching_number(g: &Graph) -> usize {
    maximum_matching(g).iter().filter(|m| m.is_some()).count() / 2
}

struct Blossom<'a> {
    g: &'a Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: std::collections::VecDeque<usize>,
}

impl Blossom<'_> {
    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.order()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, root_base: usize, mut child: usize) {
        while self.base[v] != root_base {
            let m = self.mate[v];
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = child;
            child = m;
            v = self.parent[m];
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.order();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for to in bits(self.g.neighbors(v)) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, standard_graph, StandardKind};
    use rand::{Rng, SeedableRng};

    /// Largest matching by exhaustive edge-subset recursion.
    fn brute_matching(g: &Graph) -> usize {
        fn rec(edges: &[(usize, usize)], used: u64) -> usize {
            match edges.split_first() {
                None => 0,
                Some((&(u, v), rest)) => {
                    let skip = rec(rest, used);
                    if used >> u & 1 == 0 && used >> v & 1 == 0 {
                        skip.max(1 + rec(rest, used | 1 << u | 1 << v))
                    } else {
                        skip
                    }
                }
            }
        }
        rec(&g.edges(), 0)
    }

    #[test]
    fn examples() {
        assert_eq!(matching_number(&standard_graph(StandardKind::Path, 5).unwrap()), 2);
        assert_eq!(matching_number(&complete(7).unwrap()), 3);
        assert_eq!(matching_number(&standard_graph(StandardKind::Cycle, 9).unwrap()), 4);
        assert_eq!(matching_number(&Graph::empty(5).unwrap()), 0);
    }

    #[test]
    fn needs_blossom_contraction() {
        // Triangle with a pendant path: greedy from vertex 0 must be repaired.
        let g = Graph::with_edges(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (1, 5)]).unwrap();
        assert_eq!(matching_number(&g), 3);
    }

    #[test]
    fn matching_is_valid_and_agrees_with_enumeration() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let n = rng.gen_range(1..=8);
            let p = rng.gen_range(0.1..0.8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::with_edges(n, &edges).unwrap();
            let mate = maximum_matching(&g);
            for (v, m) in mate.iter().enumerate() {
                if let Some(w) = *m {
                    assert!(g.has_edge(v, w));
                    assert_eq!(mate[w], Some(v));
                }
            }
            assert_eq!(matching_number(&g), brute_matching(&g), "{g:?}");
        }
    }
}
