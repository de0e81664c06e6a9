//! The decomposition family: minimal graphs `M` such that some member of the
//! family embeds in `(M ∪ E_φ) + T((r-1)φ, r-1)`, where `χ = r + 1` and `φ` is
//! the largest member order.
//!
//! "Minimal" is taken in the subgraph order after stripping isolated vertices.
//! Since the host only grows when `M` gains edges, `M` is minimal exactly when
//! it qualifies and no single-edge deletion does.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::embedding::{find_embedding, verify_embedding, Embedding};
use crate::enumerate::all_graphs;
use crate::error::{Error, Result};
use crate::family::{FamilySummary, GraphFamily};
use crate::graph::{disjoint_union, join, turan, Graph, MAX_VERTICES};
use crate::graph6::{parse_graph6, to_graph6};

/// Largest member order accepted.
pub const DECOMPOSITION_MAX_PHI: usize = 8;

/// A member of the family embedded in the host built from `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MembershipWitness {
    pub m: String,
    pub member: String,
    pub embedding: Embedding,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompositionReport {
    pub family: FamilySummary,
    pub r: usize,
    pub phi: usize,
    /// Canonical graph6 of each minimal graph, isolated vertices stripped.
    pub family_m: Vec<String>,
    pub witnesses: Vec<MembershipWitness>,
    pub nu_star: Option<usize>,
    pub delta_star: Option<usize>,
    pub condition_ii: bool,
    pub candidates_checked: usize,
}

/// `(M ∪ E_φ) + T((r-1)φ, r-1)` with `M` padded to `φ` vertices.
pub fn decomposition_host(m: &Graph, phi: usize, r: usize) -> Result<Graph> {
    if m.order() > phi {
        return Err(Error::InvalidParameter(format!("M has {} vertices, more than φ = {phi}", m.order())));
    }
    let total = 2 * phi + (r - 1) * phi;
    if total > MAX_VERTICES {
        return Err(Error::OverBudget { what: "decomposition host", size: total, max: MAX_VERTICES });
    }
    let padded = disjoint_union(m, &Graph::empty(2 * phi - m.order())?)?;
    join(&padded, &turan((r - 1) * phi, r - 1)?)
}

fn embed_any(family: &GraphFamily, host: &Graph) -> Result<Option<(usize, Embedding)>> {
    for (i, h) in family.members().iter().enumerate() {
        if h.order() <= host.order() {
            if let Some(e) = find_embedding(host, h)? {
                return Ok(Some((i, e)));
            }
        }
    }
    Ok(None)
}

fn check_domain(family: &GraphFamily) -> Result<usize> {
    if family.chi() <= 2 {
        return Err(Error::ChromaticTooSmall(family.chi()));
    }
    if family.phi() > DECOMPOSITION_MAX_PHI {
        return Err(Error::OverBudget {
            what: "decomposition family φ",
            size: family.phi(),
            max: DECOMPOSITION_MAX_PHI,
        });
    }
    Ok(family.chi() - 1)
}

pub fn decomposition_family(family: &GraphFamily) -> Result<DecompositionReport> {
    let r = check_domain(family)?;
    let phi = family.phi();
    decomposition_host(&Graph::empty(0)?, phi, r)?;

    let candidates: Vec<Graph> = all_graphs(phi, family.max_member_edges())
        .into_iter()
        .flat_map(|(m, gs)| if m == 0 { Vec::new() } else { gs })
        .collect();
    let checked = candidates.len();

    let qualifies =
        |m: &Graph| -> Result<Option<(usize, Embedding)>> { embed_any(family, &decomposition_host(m, phi, r)?) };
    let found: Vec<Option<(String, String, Embedding)>> = candidates
        .par_iter()
        .map(|m| -> Result<Option<(String, String, Embedding)>> {
            if qualifies(m)?.is_none() {
                return Ok(None);
            }
            for (u, v) in m.edges() {
                if qualifies(&m.without_edge(u, v)?)?.is_some() {
                    return Ok(None);
                }
            }
            // Witness against the stripped labelling that gets reported.
            let stripped = canonical_form(&m.strip_isolated());
            let (i, e) = qualifies(&stripped)?.expect("isolated vertices do not change the host");
            Ok(Some((to_graph6(&stripped), to_graph6(&family.members()[i]), e)))
        })
        .collect::<Result<_>>()?;
    let minimal: BTreeSet<(String, String, Embedding)> = found.into_iter().flatten().collect();
    // Padded candidates are distinct up to isomorphism, so stripped forms are too.
    let family_m: Vec<String> = minimal.iter().map(|(m, _, _)| m.clone()).collect();
    let witnesses =
        minimal.into_iter().map(|(m, member, embedding)| MembershipWitness { m, member, embedding }).collect();
    let graphs: Vec<Graph> = family_m.iter().map(|s| parse_graph6(s)).collect::<Result<_>>()?;
    let (nu_star, delta_star, condition_ii) = condition_from_members(&graphs, phi);
    Ok(DecompositionReport {
        family: family.summary(),
        r,
        phi,
        family_m,
        witnesses,
        nu_star,
        delta_star,
        condition_ii,
        candidates_checked: checked,
    })
}

fn is_perfect_matching(g: &Graph) -> bool {
    g.order() > 0 && (0..g.order()).all(|v| g.degree(v) == 1)
}

fn is_star(g: &Graph) -> bool {
    let e = g.edge_count();
    e >= 1 && g.order() == e + 1 && (0..g.order()).any(|v| g.degree(v) == e)
}

/// Least `ν` with `M_{2ν}` a member, least `Δ` with `S_{Δ+1}` a member, and
/// whether both exist with `ν <= ⌊φ/2⌋`, `Δ <= φ`.
pub fn condition_from_members(members: &[Graph], phi: usize) -> (Option<usize>, Option<usize>, bool) {
    let nu = members.iter().filter(|m| is_perfect_matching(m)).map(Graph::edge_count).min();
    let delta = members.iter().filter(|m| is_star(m)).map(Graph::edge_count).min();
    let verdict = matches!((nu, delta), (Some(n), Some(d)) if n <= phi / 2 && d <= phi);
    (nu, delta, verdict)
}

/// `(nu_star, delta_star, verdict)` for a family.
pub fn condition_ii(family: &GraphFamily) -> Result<(Option<usize>, Option<usize>, bool)> {
    let report = decomposition_family(family)?;
    Ok((report.nu_star, report.delta_star, report.condition_ii))
}

/// Independent re-check of a report: every witness embeds, every member is
/// edge-minimal, isolated-vertex free, and the set is an antichain.
pub fn verify_report(family: &GraphFamily, report: &DecompositionReport) -> Result<bool> {
    let r = check_domain(family)?;
    let phi = family.phi();
    if report.r != r || report.phi != phi || report.witnesses.len() != report.family_m.len() {
        return Ok(false);
    }
    let members: Vec<Graph> = report.family_m.iter().map(|s| parse_graph6(s)).collect::<Result<_>>()?;
    for (m, w) in members.iter().zip(&report.witnesses) {
        if m.isolated_count() > 0 || to_graph6(m) != w.m {
            return Ok(false);
        }
        let host = decomposition_host(m, phi, r)?;
        let h = parse_graph6(&w.member)?;
        if !family.members().contains(&h) || !verify_embedding(&host, &h, &w.embedding) {
            return Ok(false);
        }
        for (u, v) in m.edges() {
            let smaller = m.without_edge(u, v)?.strip_isolated();
            if embed_any(family, &decomposition_host(&smaller, phi, r)?)?.is_some() {
                return Ok(false);
            }
        }
    }
    for (i, a) in members.iter().enumerate() {
        for (j, b) in members.iter().enumerate() {
            if i != j && a.order() <= b.order() && find_embedding(b, a)?.is_some() {
                return Ok(false);
            }
        }
    }
    let expected = condition_from_members(&members, phi);
    Ok((report.nu_star, report.delta_star, report.condition_ii) == expected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::parse_family;
    use crate::graph::{complete, standard_graph, StandardKind};

    fn g6(g: &Graph) -> String {
        to_graph6(&canonical_form(g))
    }

    #[test]
    fn host_edge_count() {
        let h = decomposition_host(&complete(2).unwrap(), 3, 2).unwrap();
        // K2 plus four isolated vertices joined to E3.
        assert_eq!(h.edge_count(), 1 + 6 * 3);
        assert_eq!(h.order(), 9);
    }

    #[test]
    fn triangle_and_c5() {
        for spec in ["K3", "C5"] {
            let fam = parse_family(spec).unwrap();
            let rep = decomposition_family(&fam).unwrap();
            assert_eq!(rep.family_m, vec![g6(&complete(2).unwrap())], "{spec}");
            assert_eq!((rep.nu_star, rep.delta_star, rep.condition_ii), (Some(1), Some(1), true));
            assert!(verify_report(&fam, &rep).unwrap());
        }
    }

    #[test]
    fn two_triangles() {
        let fam = parse_family("G(K3,K3)").unwrap();
        let rep = decomposition_family(&fam).unwrap();
        let mut expected = vec![
            g6(&standard_graph(StandardKind::Path, 3).unwrap()),
            g6(&standard_graph(StandardKind::Matching, 4).unwrap()),
        ];
        expected.sort();
        assert_eq!(rep.family_m, expected);
        assert_eq!((rep.nu_star, rep.delta_star, rep.condition_ii), (Some(2), Some(2), true));
        assert!(verify_report(&fam, &rep).unwrap());
    }

    #[test]
    fn odd_wheel_fails_matching_part() {
        let fam = parse_family("W5").unwrap();
        let rep = decomposition_family(&fam).unwrap();
        assert_eq!(rep.family_m, vec![g6(&standard_graph(StandardKind::Path, 3).unwrap())]);
        assert_eq!(rep.nu_star, None);
        assert!(!rep.condition_ii);
        assert!(verify_report(&fam, &rep).unwrap());
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(decomposition_family(&parse_family("K2").unwrap()), Err(Error::ChromaticTooSmall(2))));
        assert!(matches!(decomposition_family(&parse_family("K9").unwrap()), Err(Error::OverBudget { .. })));
    }

    #[test]
    fn tampered_report_fails_verification() {
        let fam = parse_family("K3").unwrap();
        let mut rep = decomposition_family(&fam).unwrap();
        rep.family_m = vec![g6(&standard_graph(StandardKind::Path, 3).unwrap())];
        rep.witnesses[0].m = rep.family_m[0].clone();
        assert!(!verify_report(&fam, &rep).unwrap());
    }
}
