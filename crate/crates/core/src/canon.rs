//! Canonical labelling by equitable refinement plus individualisation.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualise each vertex of the first non-singleton cell,
//! recurse. Leaves are compared by their relabelled adjacency rows and the
//! largest wins. Automorphisms discovered at leaves prune siblings that lie in
//! the same orbit of the pointwise stabiliser of the current prefix.

use crate::graph::{bits, Graph};

/// Canonical representative of the isomorphism class of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    canonical_labeling(g).0
}

/// Canonical graph together with `lab`, where `lab[i]` is the original vertex
/// placed at position `i`.
pub fn canonical_labeling(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.order();
    if n == 0 {
        return (g.clone(), Vec::new());
    }
    let mut search = Search { adj: g.rows(), n, first: None, best: None, autos: Vec::new() };
    let mut prefix = Vec::with_capacity(n);
    search.descend(initial_cells(g), &mut prefix);
    let (rows, lab) = search.best.expect("search visits at least one leaf");
    (Graph::from_rows_unchecked(rows), lab)
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.edge_count() == h.edge_count()
        && {
            let mut dg = g.degrees();
            let mut dh = h.degrees();
            dg.sort_unstable();
            dh.sort_unstable();
            dg == dh
        }
        && canonical_form(g) == canonical_form(h)
}

/// Cells by ascending degree.
fn initial_cells(g: &Graph) -> Vec<u64> {
    let mut by_degree = [0u64; 65];
    for v in 0..g.order() {
        by_degree[g.degree(v)] |= 1 << v;
    }
    by_degree.into_iter().filter(|&c| c != 0).collect()
}

/// Refine to the coarsest equitable partition finer than `cells`.
fn refine(adj: &[u64], cells: &mut Vec<u64>) {
    let mut buckets = [0u64; 65];
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < cells.len() {
            let splitter = cells[i];
            let mut next: Vec<u64> = Vec::with_capacity(cells.len() + 4);
            let mut split = false;
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut hi = 0;
                let mut lo = 64;
                for v in bits(cell) {
                    let k = (adj[v] & splitter).count_ones() as usize;
                    buckets[k] |= 1 << v;
                    hi = hi.max(k);
                    lo = lo.min(k);
                }
                if lo != hi {
                    split = true;
                }
                for bucket in &mut buckets[lo..=hi] {
                    if *bucket != 0 {
                        next.push(*bucket);
                        *bucket = 0;
                    }
                }
            }
            if split {
                *cells = next;
                changed = true;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<(Vec<u64>, Vec<usize>)>,
    best: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<u64>, prefix: &mut Vec<usize>) {
        refine(self.adj, &mut cells);
        let Some(t) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = cells[t];
        let mut explored: Vec<usize> = Vec::new();
        for v in bits(cell) {
            if !explored.is_empty() && self.in_explored_orbit(v, &explored, prefix) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1 << v);
            child.push(cell & !(1 << v));
            child.extend_from_slice(&cells[t + 1..]);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = [0usize; 64];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let rows: Vec<u64> = lab.iter().map(|&v| bits(self.adj[v]).fold(0u64, |r, w| r | 1 << pos[w])).collect();

        let Some((first_rows, first_lab)) = &self.first else {
            self.first = Some((rows.clone(), lab.clone()));
            self.best = Some((rows, lab));
            return;
        };
        if rows == *first_rows {
            let auto = compose(first_lab, &lab, self.n);
            self.autos.push(auto);
            return;
        }
        let (best_rows, best_lab) = self.best.as_ref().expect("set with first");
        match rows.cmp(best_rows) {
            std::cmp::Ordering::Equal => {
                let auto = compose(best_lab, &lab, self.n);
                self.autos.push(auto);
            }
            std::cmp::Ordering::Greater => self.best = Some((rows, lab)),
            std::cmp::Ordering::Less => {}
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the
    /// automorphisms found so far that fix `prefix` pointwise.
    fn in_explored_orbit(&self, v: usize, explored: &[usize], prefix: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        let mut any = false;
        for auto in &self.autos {
            if prefix.iter().any(|&p| auto[p] != p) {
                continue;
            }
            any = true;
            for (a, &b) in auto.iter().enumerate() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == rv)
    }
}

/// The automorphism sending `lab_a[i]` to `lab_b[i]`.
fn compose(lab_a: &[usize], lab_b: &[usize], n: usize) -> Vec<usize> {
    let mut auto = vec![0; n];
    for (&a, &b) in lab_a.iter().zip(lab_b) {
        auto[a] = b;
    }
    auto
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}
