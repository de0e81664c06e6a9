use proptest::prelude::*;

use xlab_core::canon::{canonical_form, is_isomorphic};
use xlab_core::embedding::{contains_subgraph, is_family_free, verify_embedding, Search, StepBudget};
use xlab_core::extremal::turan_edit_distance;
use xlab_core::graph::{standard_graph, turan, StandardKind};
use xlab_core::graph6::{parse_graph6, to_graph6};
use xlab_core::invariants::{chromatic_number, matching_number, max_degree};
use xlab_core::spectral::{eigen_identity_residual, spectral_radius, DEFAULT_TOL};
use xlab_core::{parse_family, Graph};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::with_edges(n, &edges).unwrap()
        })
    })
}

/// A random spanning tree on `n` vertices plus random extra edges.
fn connected_on(n: usize) -> impl Strategy<Value = Graph> {
    let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
    (parents, proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)).prop_map(move |(parents, extra)| {
        let mut g = Graph::empty(n).unwrap();
        for (i, &p) in parents.iter().enumerate() {
            g = g.with_edge(p, i + 1).unwrap();
        }
        let mut i = 0;
        for u in 0..n {
            for v in u + 1..n {
                if extra[i] && !g.has_edge(u, v) {
                    g = g.with_edge(u, v).unwrap();
                }
                i += 1;
            }
        }
        g
    })
}

fn connected(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(connected_on)
}

fn connected_pair(max_n: usize) -> impl Strategy<Value = (Graph, Graph)> {
    (2..=max_n).prop_flat_map(|n| (connected_on(n), connected_on(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn spectral_report_bounds(g in graph(10)) {
        let rep = spectral_radius(&g, DEFAULT_TOL).unwrap();
        let n = g.order() as f64;
        let e = g.edge_count() as f64;
        prop_assert!(rep.residual <= DEFAULT_TOL);
        prop_assert!(rep.rho >= 2.0 * e / n - 1e-9);
        prop_assert!(rep.rho <= max_degree(&g) as f64 + 1e-9);
        prop_assert!(rep.rho <= (2.0 * e).sqrt() + 1e-9);
        prop_assert!(rep.perron.iter().all(|&x| x >= -1e-12));
    }

    #[test]
    fn adding_an_edge_raises_rho(g in connected(9), pick in any::<prop::sample::Index>()) {
        let gaps: Vec<(usize, usize)> = (0..g.order())
            .flat_map(|u| (u + 1..g.order()).map(move |v| (u, v)))
            .filter(|&(u, v)| !g.has_edge(u, v))
            .collect();
        prop_assume!(!gaps.is_empty());
        let (u, v) = gaps[pick.index(gaps.len())];
        let h = g.with_edge(u, v).unwrap();
        let a = spectral_radius(&g, DEFAULT_TOL).unwrap().rho;
        let b = spectral_radius(&h, DEFAULT_TOL).unwrap().rho;
        prop_assert!(b > a + 1e-10);
    }

    #[test]
    fn eigen_identity_vanishes((g, h) in connected_pair(10)) {
        prop_assert!(eigen_identity_residual(&g, &h).unwrap() <= 1e-8);
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(9), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permute(&perm).unwrap();
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(is_isomorphic(&g, &h));
        prop_assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn found_embeddings_are_valid(host in graph(9), pattern in graph(5)) {
        prop_assume!(pattern.order() <= host.order());
        if let Search::Found(e) = contains_subgraph(&host, &pattern, &mut StepBudget::unlimited()).unwrap() {
            prop_assert!(verify_embedding(&host, &pattern, &e));
        }
    }

    #[test]
    fn freeness_survives_edge_deletion(g in graph(8)) {
        let fam = parse_family("K3,C5").unwrap();
        if is_family_free(&g, &fam).unwrap() {
            for (u, v) in g.edges() {
                prop_assert!(is_family_free(&g.without_edge(u, v).unwrap(), &fam).unwrap());
            }
        }
    }

    #[test]
    fn edit_distance_is_consistent(g in graph(10), r in 2usize..=3) {
        prop_assume!(g.order() >= r);
        let d = turan_edit_distance(&g, r).unwrap();
        prop_assert!(d.verify(&g));
        let t = xlab_core::invariants::turan_edge_count(g.order(), r).unwrap();
        prop_assert_eq!(d.alpha1 + t, d.alpha2 + g.edge_count());
    }

    #[test]
    fn matching_bounded_by_half_order(g in graph(12)) {
        let nu = matching_number(&g);
        prop_assert!(2 * nu <= g.order());
        prop_assert!(nu <= g.edge_count());
    }
}

#[test]
fn turan_graphs_have_chromatic_number_r() {
    for n in 1..=12 {
        for r in 1..=n {
            assert_eq!(chromatic_number(&turan(n, r).unwrap()).unwrap(), r, "T({n},{r})");
        }
    }
}

#[test]
fn odd_cycles_need_three_colours() {
    for n in (3..=15).step_by(2) {
        assert_eq!(chromatic_number(&standard_graph(StandardKind::Cycle, n).unwrap()).unwrap(), 3);
    }
}
