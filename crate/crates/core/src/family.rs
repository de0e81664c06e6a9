//! Finite forbidden families, the edge-disjoint union family 𝔾(F1,…,Fk), and
//! a small text language for naming families.
//!
//! Grammar (whitespace ignored, top level is a comma-separated list whose
//! member sets are united):
//!
//! ```text
//! item  := name | name '(' args ')' | '@' path | 'g6:' graph6 | graph6
//! name  := K<n> | C<n> | P<n> | S<n> | W<n> | M<n> | E<n> | bowtie
//! call  := join(a, b) | union(a, b) | T(n, r) | K(a, b, ...) | G(F1, ..., Fk)
//! ```
//!
//! `@path` reads one graph6 string per non-empty line.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{
    complete, complete_multipartite, disjoint_union, join, standard_graph, turan, Graph, StandardKind, MAX_VERTICES,
};
use crate::graph6::{parse_graph6, to_graph6};
use crate::invariants::chromatic_number;

/// Members are stored in canonical form, sorted and pairwise non-isomorphic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFamily {
    name: String,
    members: Vec<Graph>,
    chi: usize,
    phi: usize,
}

impl GraphFamily {
    pub fn new(name: impl Into<String>, members: Vec<Graph>) -> Result<GraphFamily> {
        if members.is_empty() {
            return Err(Error::FamilySpec("a family needs at least one member".into()));
        }
        let set: BTreeSet<Graph> = members.iter().map(canonical_form).collect();
        let members: Vec<Graph> = set.into_iter().collect();
        let mut chi = usize::MAX;
        for m in &members {
            chi = chi.min(chromatic_number(m)?);
        }
        let phi = members.iter().map(Graph::order).max().unwrap_or(0);
        Ok(GraphFamily { name: name.into(), members, chi, phi })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn members(&self) -> &[Graph] {
        &self.members
    }

    /// Smallest member chromatic number.
    pub fn chi(&self) -> usize {
        self.chi
    }

    /// Largest member order.
    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn max_member_edges(&self) -> usize {
        self.members.iter().map(Graph::edge_count).max().unwrap_or(0)
    }

    pub fn summary(&self) -> FamilySummary {
        FamilySummary {
            name: self.name.clone(),
            members: self.members.iter().map(to_graph6).collect(),
            chi: self.chi,
            phi: self.phi,
        }
    }
}

/// Serializable view of a family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySummary {
    pub name: String,
    pub members: Vec<String>,
    pub chi: usize,
    pub phi: usize,
}

/// Every graph that is the union of pairwise edge-disjoint copies of
/// `parts[0], …, parts[k-1]`, with no isolated vertices, up to isomorphism.
pub fn edge_disjoint_unions(parts: &[Graph]) -> Result<Vec<Graph>> {
    let Some((first, rest)) = parts.split_first() else {
        return Err(Error::FamilySpec("G() needs at least one graph".into()));
    };
    let total: usize = parts.iter().map(Graph::order).sum();
    if total > MAX_VERTICES {
        return Err(Error::TooManyVertices { n: total, max: MAX_VERTICES });
    }
    let mut current: BTreeSet<Graph> = BTreeSet::new();
    current.insert(canonical_form(&first.strip_isolated()));
    for f in rest {
        let f = f.strip_isolated();
        let mut next = BTreeSet::new();
        for g in &current {
            place_copy(g, &f, &mut next);
        }
        current = next;
    }
    Ok(current.into_iter().collect())
}

/// All ways of adding an edge-disjoint copy of `f` to `g`, using any mix of
/// existing and fresh vertices.
fn place_copy(g: &Graph, f: &Graph, out: &mut BTreeSet<Graph>) {
    let m = g.order();
    let slots = m + f.order();
    let mut rows = g.rows().to_vec();
    rows.resize(slots, 0);
    let host = Graph::from_rows_unchecked(rows);

    fn assign(host: &Graph, f: &Graph, m: usize, map: &mut Vec<usize>, used: u64, out: &mut BTreeSet<Graph>) {
        let i = map.len();
        if i == f.order() {
            let mut rows = host.rows().to_vec();
            for (a, b) in f.edges() {
                rows[map[a]] |= 1 << map[b];
                rows[map[b]] |= 1 << map[a];
            }
            let g = Graph::from_rows_unchecked(rows).strip_isolated();
            out.insert(canonical_form(&g));
            return;
        }
        // Fresh vertices are interchangeable: only the lowest unused one is tried.
        let fresh = (m..host.order()).find(|&v| used >> v & 1 == 0);
        let targets = (0..m).filter(|&v| used >> v & 1 == 0).chain(fresh);
        for v in targets.collect::<Vec<_>>() {
            let clash = map.iter().enumerate().any(|(j, &w)| f.has_edge(i, j) && host.has_edge(v, w));
            if clash {
                continue;
            }
            map.push(v);
            assign(host, f, m, map, used | 1 << v, out);
            map.pop();
        }
    }
    assign(&host, f, m, &mut Vec::new(), 0, out);
}

/// Parse a family description (see the module docs).
pub fn parse_family(spec: &str) -> Result<GraphFamily> {
    let text: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::FamilySpec("empty family spec".into()));
    }
    let mut members = Vec::new();
    for item in split_top(&text)? {
        members.extend(parse_item(item)?);
    }
    GraphFamily::new(spec.trim(), members)
}

/// Parse a description that must denote a single graph.
pub fn parse_graph(spec: &str) -> Result<Graph> {
    let text: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let mut members = parse_item(&text)?;
    if members.len() != 1 {
        return Err(Error::FamilySpec(format!("`{spec}` denotes {} graphs, expected one", members.len())));
    }
    Ok(members.pop().expect("one member"))
}

fn split_top(text: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::FamilySpec(format!("unbalanced `)` in `{text}`")));
                }
            }
            ',' if depth == 0 => {
                parts.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::FamilySpec(format!("unbalanced `(` in `{text}`")));
    }
    parts.push(&text[start..]);
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::FamilySpec(format!("empty item in `{text}`")));
    }
    Ok(parts)
}

fn parse_item(item: &str) -> Result<Vec<Graph>> {
    if let Some(path) = item.strip_prefix('@').filter(|p| !p.is_empty()) {
        let body =
            std::fs::read_to_string(path).map_err(|e| Error::FamilySpec(format!("cannot read `{path}`: {e}")))?;
        let graphs =
            body.lines().map(str::trim).filter(|l| !l.is_empty()).map(parse_graph6).collect::<Result<Vec<_>>>()?;
        if graphs.is_empty() {
            return Err(Error::FamilySpec(format!("`{path}` holds no graphs")));
        }
        return Ok(graphs);
    }
    if let Some(code) = item.strip_prefix("g6:") {
        return Ok(vec![parse_graph6(code)?]);
    }
    if let Some(open) = item.find('(') {
        if !item.ends_with(')') {
            return Err(Error::FamilySpec(format!("trailing text after `)` in `{item}`")));
        }
        let head = &item[..open];
        let args = split_top(&item[open + 1..item.len() - 1])?;
        return parse_call(head, &args);
    }
    if item == "bowtie" {
        let k2 = complete(2)?;
        return Ok(vec![join(&complete(1)?, &disjoint_union(&k2, &k2)?)?]);
    }
    if let Some(g) = parse_named(item)? {
        return Ok(vec![g]);
    }
    parse_graph6(item)
        .map(|g| vec![g])
        .map_err(|_| Error::FamilySpec(format!("`{item}` is neither a builtin name nor graph6")))
}

fn parse_named(item: &str) -> Result<Option<Graph>> {
    let mut chars = item.chars();
    let Some(letter) = chars.next() else {
        return Ok(None);
    };
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(None);
    }
    let n: usize = digits.parse().map_err(|_| Error::FamilySpec(format!("bad size in `{item}`")))?;
    let kind = match letter {
        'K' => StandardKind::Complete,
        'E' => StandardKind::Empty,
        'C' => StandardKind::Cycle,
        'P' => StandardKind::Path,
        'S' => StandardKind::Star,
        'M' => StandardKind::Matching,
        'W' => StandardKind::Wheel,
        _ => return Ok(None),
    };
    standard_graph(kind, n).map(Some)
}

fn parse_call(head: &str, args: &[&str]) -> Result<Vec<Graph>> {
    let numbers = || -> Result<Vec<usize>> {
        args.iter()
            .map(|a| a.parse::<usize>().map_err(|_| Error::FamilySpec(format!("`{a}` is not a number"))))
            .collect()
    };
    match head {
        "join" | "union" => {
            if args.len() != 2 {
                return Err(Error::FamilySpec(format!("{head} takes two graphs")));
            }
            let a = parse_graph(args[0])?;
            let b = parse_graph(args[1])?;
            Ok(vec![if head == "join" { join(&a, &b)? } else { disjoint_union(&a, &b)? }])
        }
        "T" => match numbers()?.as_slice() {
            [n, r] => Ok(vec![turan(*n, *r)?]),
            _ => Err(Error::FamilySpec("T takes (n, r)".into())),
        },
        "K" => Ok(vec![complete_multipartite(&numbers()?)?]),
        "G" => {
            let parts = args.iter().map(|a| parse_graph(a)).collect::<Result<Vec<_>>>()?;
            edge_disjoint_unions(&parts)
        }
        _ => Err(Error::FamilySpec(format!("unknown combinator `{head}`"))),
    }
}
