use xlab_core::canon::canonical_form;
use xlab_core::constructions::{
    counterexample_family, counterexample_partition, counterexample_witness, spex_construction,
    spex_construction_star_variant, turan_plus_edges, EmbedShape,
};
use xlab_core::embedding::is_family_free;
use xlab_core::extremal::{ex_search, turan_edit_distance, SearchOptions};
use xlab_core::graph::{turan, turan_part_sizes};
use xlab_core::graph6::to_graph6;
use xlab_core::invariants::{chromatic_number, turan_edge_count};
use xlab_core::spectral::rho;
use xlab_core::verify::{run_check, CheckId, Outcome, VerifyParams};
use xlab_core::{parse_family, GraphFamily};

fn search(n: usize, fam: &GraphFamily) -> xlab_core::extremal::ExtremalReport {
    let rep = ex_search(n, fam, &SearchOptions::default()).unwrap();
    assert!(rep.complete);
    assert!(rep.verify(fam).unwrap());
    rep
}

#[test]
fn k4_at_nine() {
    let rep = search(9, &parse_family("K4").unwrap());
    assert_eq!(rep.value, 27);
    assert_eq!(rep.extremal, vec![to_graph6(&canonical_form(&turan(9, 3).unwrap()))]);
}

#[test]
fn two_triangles_at_seven() {
    let rep = search(7, &parse_family("G(K3,K3)").unwrap());
    assert_eq!(rep.value, turan_edge_count(7, 2).unwrap() + 1);
}

#[test]
fn ex_is_monotone_in_n() {
    for spec in ["K3", "C5", "G(K3,K3)", "W5"] {
        let fam = parse_family(spec).unwrap();
        let values: Vec<usize> = (1..=8).map(|n| search(n, &fam).value).collect();
        assert!(values.windows(2).all(|w| w[0] <= w[1]), "{spec}: {values:?}");
    }
}

/// `T(n, r)` with `k − 1` edges in its parts avoids `𝔾(F1..Fk)` for
/// color-critical `Fi` of chromatic number `r + 1`.
#[test]
fn embedded_edges_keep_disjoint_copies_out() {
    let cases: [(&str, usize, usize); 5] =
        [("G(K3,K3)", 2, 2), ("G(K3,K3,K3)", 2, 3), ("G(C5,K3)", 2, 2), ("G(K4,K4)", 3, 2), ("G(K3,C5,K3)", 2, 3)];
    for (spec, r, k) in cases {
        let fam = parse_family(spec).unwrap();
        for n in (2 * r).max(4)..=10 {
            let sizes = turan_part_sizes(n, r).unwrap();
            let mut shapes = vec![EmbedShape::Star, EmbedShape::Matching];
            if k == 4 {
                shapes.push(EmbedShape::Triangle);
            }
            // One edge in each of the first k − 1 parts, where possible.
            if k - 1 <= r && sizes[..k - 1].iter().all(|&s| s >= 2) {
                let mut offset = 0;
                let mut edges = Vec::new();
                for &s in &sizes[..k - 1] {
                    edges.push((offset, offset + 1));
                    offset += s;
                }
                let g = turan(n, r).unwrap().with_added_edges(&edges).unwrap();
                assert!(is_family_free(&g, &fam).unwrap(), "{spec} n={n} spread");
            }
            for shape in &shapes {
                for part in 0..r {
                    if let Ok((g, _)) = turan_plus_edges(n, r, k - 1, shape, part) {
                        assert!(is_family_free(&g, &fam).unwrap(), "{spec} n={n} {shape:?} part {part}");
                    }
                }
            }
        }
    }
}

#[test]
fn construction_lower_bound_is_attained_by_search() {
    let fam = parse_family("G(K3,K3,K3)").unwrap();
    for n in 6..=8 {
        let rep = search(n, &fam);
        assert!(rep.value >= turan_edge_count(n, 2).unwrap() + 2, "n={n}");
    }
}

#[test]
fn spex_constructions_are_free_with_expected_size() {
    for (spec, r, k) in [("G(K3,K3)", 2, 2), ("G(K3,K3,K3)", 2, 3), ("G(K3,K3,K3,K3)", 2, 4), ("G(K4,K4)", 3, 2)] {
        let fam = parse_family(spec).unwrap();
        for n in 7..=10 {
            let Ok((g, _)) = spex_construction(n, r, k) else { continue };
            assert_eq!(g.edge_count(), turan_edge_count(n, r).unwrap() + k - 1);
            assert!(is_family_free(&g, &fam).unwrap(), "{spec} n={n}");
        }
    }
}

#[test]
fn triangle_beats_star_for_three_edges() {
    for (n, r) in [(9, 2), (10, 2), (12, 3), (13, 3)] {
        let tri = rho(&spex_construction(n, r, 4).unwrap().0).unwrap();
        let star = rho(&spex_construction_star_variant(n, r, 4).unwrap().0).unwrap();
        assert!(tri > star + 1e-9, "n={n} r={r}: {tri} vs {star}");
    }
}

#[test]
fn embedded_edges_invert_under_edit_distance() {
    for r in [2, 3] {
        for n in 8..=12 {
            for m in 0..=3 {
                let Ok((g, p)) = turan_plus_edges(n, r, m, &EmbedShape::Star, 0) else { continue };
                let d = turan_edit_distance(&g, r).unwrap();
                assert_eq!((d.alpha1, d.alpha2), (m, 0), "n={n} r={r} m={m}");
                assert!(d.verify(&g));
                assert_eq!(p.edit_counts(&g), (m, 0));
            }
        }
    }
}

#[test]
fn counterexample_structure() {
    let fam = counterexample_family(3).unwrap();
    assert_eq!(fam.chi(), 3);
    let g = counterexample_witness(16, 3).unwrap();
    assert!(is_family_free(&g, &fam).unwrap());
    let d = turan_edit_distance(&g, 2).unwrap();
    assert!(d.alpha2 >= 1);
    let p = counterexample_partition(16).unwrap();
    for i in 0..2 {
        let part = g.induced(p.mask(i)).strip_isolated();
        assert_eq!(part.edge_count(), 4);
        assert!((0..part.order()).any(|v| part.degree(v) == 4));
    }
    for h in fam.members() {
        assert!(chromatic_number(h).unwrap() >= 3);
    }
}

fn no_hard_failures(id: CheckId, params: VerifyParams) -> xlab_core::verify::VerifyReport {
    let rep = run_check(id, &params).unwrap();
    assert!(!rep.has_failures(), "{id}: {:?}", rep.counts);
    assert!(rep.is_complete(), "{id}: {:?}", rep.counts);
    rep
}

#[test]
fn disjoint_copies_ex_desk_check() {
    let rep = no_hard_failures(
        CheckId::DisjointCopiesEx,
        VerifyParams { n_min: Some(6), n_max: Some(9), f: Some(vec!["K3".into()]), k: Some(2), ..Default::default() },
    );
    for inst in rep.exceptions() {
        assert!(inst.detail["extremal"].is_array());
    }
}

#[test]
fn spex_inside_ex_desk_check() {
    let rep = no_hard_failures(
        CheckId::SpexInEx,
        VerifyParams {
            n_min: Some(4),
            n_max: Some(8),
            families: Some(vec!["K3".into(), "C5".into(), "G(K3,K3)".into()]),
            ..Default::default()
        },
    );
    assert!(rep.count(Outcome::Pass) > 0);
}

#[test]
fn spex_construction_desk_check() {
    no_hard_failures(
        CheckId::DisjointCopiesSpex,
        VerifyParams { n_min: Some(6), n_max: Some(8), ..Default::default() },
    );
}

#[test]
fn equivalence_desk_check_has_no_hard_failures() {
    no_hard_failures(CheckId::Equivalence, VerifyParams { n_max: Some(7), ..Default::default() });
}
