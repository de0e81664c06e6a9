//! Named constructions addressable from the command line.

use clap::{Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use xlab_core::constructions::{
    cone_over_turan, counterexample_family, counterexample_partition, counterexample_witness, spex_construction,
    spex_construction_star_variant, turan_plus_edges, turan_plus_matching, EmbedShape, Partition,
};
use xlab_core::graph::turan;
use xlab_core::graph6::to_graph6;
use xlab_core::{Error, Graph, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ShapeArg {
    Star,
    Triangle,
    Matching,
    Explicit,
}

#[derive(Debug, Clone, Serialize, Subcommand)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// T(n, r).
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// T(n, r) with m edges of a shape embedded in one part.
    TuranPlus {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "star")]
        shape: ShapeArg,
        /// Part-local edges for the explicit shape, e.g. "0-1,2-3".
        #[arg(long)]
        edges: Option<String>,
        /// Part index, larger parts first.
        #[arg(long, default_value_t = 0)]
        part: usize,
    },
    /// T(n, r) plus a triangle (k = 4) or a star with k - 1 edges in a smallest part.
    Spex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        /// Use the star for k = 4 as well (not extremal; for comparisons).
        #[arg(long)]
        star_variant: bool,
    },
    /// T(n, r) plus a maximum matching in a largest part.
    Matching {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// K1 + T(n - 1, r).
    Cone {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// The three graphs K_{2s,2s} plus edges inside the sides.
    CounterexampleFamily {
        #[arg(long, default_value_t = 3)]
        s: usize,
    },
    /// T(n, 2) minus a cross edge plus a star at each of its ends.
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuiltGraph {
    pub graph6: String,
    pub order: usize,
    pub edges: usize,
    pub partition: Option<Partition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionReport {
    pub name: String,
    pub graphs: Vec<BuiltGraph>,
}

fn built(g: &Graph, partition: Option<Partition>) -> BuiltGraph {
    BuiltGraph { graph6: to_graph6(g), order: g.order(), edges: g.edge_count(), partition }
}

fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once('-')
                .ok_or_else(|| Error::InvalidParameter(format!("edge `{pair}` is not of the form u-v")))?;
            let parse = |s: &str| {
                s.trim().parse::<usize>().map_err(|_| Error::InvalidParameter(format!("bad vertex `{s}` in `{pair}`")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

pub fn build(c: &Construction) -> Result<ConstructionReport> {
    let (name, graphs) = match c {
        Construction::Turan { n, r } => (format!("T({n},{r})"), vec![built(&turan(*n, *r)?, None)]),
        Construction::TuranPlus { n, r, m, shape, edges, part } => {
            let shape = match shape {
                ShapeArg::Star => EmbedShape::Star,
                ShapeArg::Triangle => EmbedShape::Triangle,
                ShapeArg::Matching => EmbedShape::Matching,
                ShapeArg::Explicit => {
                    let text = edges
                        .as_deref()
                        .ok_or_else(|| Error::InvalidParameter("the explicit shape needs --edges".into()))?;
                    EmbedShape::Explicit(parse_edges(text)?)
                }
            };
            let (g, p) = turan_plus_edges(*n, *r, *m, &shape, *part)?;
            (format!("T({n},{r}) + {m} edges in part {part}"), vec![built(&g, Some(p))])
        }
        Construction::Spex { n, r, k, star_variant } => {
            let (g, p) = if *star_variant {
                spex_construction_star_variant(*n, *r, *k)?
            } else {
                spex_construction(*n, *r, *k)?
            };
            (format!("spex construction n={n} r={r} k={k}"), vec![built(&g, Some(p))])
        }
        Construction::Matching { n, r } => {
            (format!("T({n},{r}) + matching"), vec![built(&turan_plus_matching(*n, *r)?, None)])
        }
        Construction::Cone { n, r } => {
            (format!("K1 + T({},{r})", n.saturating_sub(1)), vec![built(&cone_over_turan(*n, *r)?, None)])
        }
        Construction::CounterexampleFamily { s } => {
            let fam = counterexample_family(*s)?;
            (fam.name().to_string(), fam.members().iter().map(|g| built(g, None)).collect())
        }
        Construction::Counterexample { n, s } => {
            let g = counterexample_witness(*n, *s)?;
            (format!("counterexample witness n={n} s={s}"), vec![built(&g, Some(counterexample_partition(*n)?))])
        }
    };
    Ok(ConstructionReport { name, graphs })
}
