//! graph6 encoding (McKay). Short form is emitted; the long `~` header is
//! accepted on input.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    debug_assert!(n < 63);
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((63 + n as u8) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b} outside the printable range 63..=126")));
    }
    let (n, payload) = match bytes {
        [] => return Err(Error::Graph6("empty input".into())),
        [126, 126, rest @ ..] => (read_size(rest, 6)?, &rest[6..]),
        [126, rest @ ..] => (read_size(rest, 3)?, &rest[3..]),
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    if payload.len() < expected {
        return Err(Error::Graph6(format!(
            "truncated payload: {} bytes for {n} vertices, expected {expected}",
            payload.len()
        )));
    }
    if payload.len() > expected {
        return Err(Error::Graph6(format!("{} trailing bytes after payload", payload.len() - expected)));
    }
    let bit = |k: usize| (payload[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut rows = vec![0u64; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    if (k..expected * 6).any(bit) {
        return Err(Error::Graph6("nonzero padding bits".into()));
    }
    Graph::from_rows(rows)
}

fn read_size(rest: &[u8], width: usize) -> Result<usize> {
    if rest.len() < width {
        return Err(Error::Graph6("truncated size header".into()));
    }
    let n = rest[..width].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
    if n < 63 {
        return Err(Error::Graph6(format!("long-form header used for n = {n} < 63")));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;
    use proptest::prelude::*;

    // Expected strings cross-checked with networkx.to_graph6_bytes.
    #[test]
    fn reference_strings() {
        assert_eq!(parse_graph6("Bw").unwrap(), complete(3).unwrap());
        assert_eq!(parse_graph6("A_").unwrap(), complete(2).unwrap());
        assert_eq!(to_graph6(&complete(3).unwrap()), "Bw");
        assert_eq!(to_graph6(&complete(2).unwrap()), "A_");
        assert_eq!(to_graph6(&Graph::empty(0).unwrap()), "?");
        assert_eq!(to_graph6(&Graph::empty(1).unwrap()), "@");
        let p4 = Graph::with_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(to_graph6(&p4), "Ch");
        let k5 = complete(5).unwrap();
        assert_eq!(to_graph6(&k5), "D~{");
        assert_eq!(parse_graph6(">>graph6<<D~{\n").unwrap(), k5);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_graph6(""), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("B"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("Bx"), Err(Error::Graph6(_)))); // padding bit set
        assert!(matches!(parse_graph6("Bw?"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6("B\u{7f}"), Err(Error::Graph6(_))));
        assert!(matches!(parse_graph6(" w"), Err(Error::Graph6(_))));
    }

    #[test]
    fn long_form_accepted() {
        // n = 63 via the `~` header, edgeless.
        let mut s = String::from("~??~");
        s.push_str(&"?".repeat((63 * 62 / 2usize).div_ceil(6)));
        let g = parse_graph6(&s).unwrap();
        assert_eq!((g.order(), g.edge_count()), (63, 0));
        // n = 65 is over the vertex cap.
        let mut s = String::from("~?@@");
        s.push_str(&"?".repeat((65 * 64 / 2usize).div_ceil(6)));
        assert!(matches!(parse_graph6(&s), Err(Error::TooManyVertices { .. })));
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..=16, mask in proptest::collection::vec(any::<bool>(), 120)) {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if mask[k] { edges.push((i, j)); }
                    k += 1;
                }
            }
            let g = Graph::with_edges(n, &edges).unwrap();
            let s = to_graph6(&g);
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
            prop_assert_eq!(to_graph6(&parse_graph6(&s).unwrap()), s);
        }
    }
}
