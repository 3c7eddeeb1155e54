//! Text codecs: graph6 (short form, `n <= 62`) and a plain edge list.
//!
//! graph6 packs the upper triangle column by column (`x(0,1), x(0,2),
//! x(1,2), x(0,3), …`) into 6-bit groups, each stored as `value + 63`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order representable by the short size field.
pub const GRAPH6_MAX_ORDER: usize = 62;

const HEADER: &str = ">>graph6<<";

/// Decodes one graph6 line. A `>>graph6<<` header and trailing whitespace
/// are accepted.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let body = line.trim_end_matches(['\n', '\r']);
    let (offset, body) = match body.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, body),
    };
    let bytes = body.as_bytes();
    let Some(&first) = bytes.first() else {
        return Err(Error::parse(offset, "empty graph6 string"));
    };
    if first == b'~' {
        return Err(Error::parse(
            offset,
            "long-form size field (n > 62) is not supported",
        ));
    }
    if !(63..=126).contains(&first) {
        return Err(Error::parse(offset, format!("invalid size byte 0x{first:02x}")));
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let want = nbits.div_ceil(6);
    let payload = &bytes[1..];
    if payload.len() != want {
        return Err(Error::parse(
            offset + 1,
            format!("expected {want} payload bytes for n={n}, found {}", payload.len()),
        ));
    }

    let mut rows = vec![0u64; n];
    let mut k = 0usize;
    for (i, &b) in payload.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(offset + 1 + i, format!("invalid payload byte 0x{b:02x}")));
        }
        let chunk = b - 63;
        for shift in (0..6).rev() {
            let set = (chunk >> shift) & 1 == 1;
            if k < nbits {
                if set {
                    let (u, v) = pair_of_index(k);
                    rows[u] |= 1 << v;
                    rows[v] |= 1 << u;
                }
            } else if set {
                return Err(Error::parse(offset + 1 + i, "nonzero padding bits"));
            }
            k += 1;
        }
    }
    Graph::from_rows(rows)
}

/// Column-major upper-triangle index to `(row, column)`.
fn pair_of_index(k: usize) -> (usize, usize) {
    let mut v = 1;
    let mut start = 0;
    while start + v <= k {
        start += v;
        v += 1;
    }
    (k - start, v)
}

/// Encodes a graph of order at most 62 as graph6 (no header, no newline).
pub fn emit_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::TooLarge {
            n,
            max: GRAPH6_MAX_ORDER,
        });
    }
    let mut out = String::with_capacity(1 + (n * n) / 12 + 1);
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        acc <<= 6 - filled;
        out.push((acc + 63) as char);
    }
    Ok(out)
}

/// Parses the edge-list format: one `u v` pair per line, 0-indexed; `#`
/// starts a comment. A `# order N` comment fixes the order, otherwise it is
/// one more than the largest endpoint.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut order: Option<usize> = None;
    let mut offset = 0usize;
    for line in text.split_inclusive('\n') {
        let (content, comment) = match line.find('#') {
            Some(i) => (&line[..i], Some(&line[i + 1..])),
            None => (line, None),
        };
        if let Some(c) = comment {
            let mut words = c.split_whitespace();
            if words.next() == Some("order") {
                let n = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| Error::parse(offset, "malformed '# order' directive"))?;
                order = Some(n);
            }
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match fields.as_slice() {
            [] => {}
            [a, b] => {
                let u = a
                    .parse::<usize>()
                    .map_err(|_| Error::parse(offset, format!("bad vertex '{a}'")))?;
                let v = b
                    .parse::<usize>()
                    .map_err(|_| Error::parse(offset, format!("bad vertex '{b}'")))?;
                edges.push((u, v));
            }
            _ => return Err(Error::parse(offset, "expected exactly two vertices per line")),
        }
        offset += line.len();
    }
    let implied = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    let n = match order {
        Some(n) if n < implied => {
            return Err(Error::input(format!("edge endpoint {} exceeds declared order {n}", implied - 1)))
        }
        Some(n) => n,
        None => implied,
    };
    Graph::build(n, &edges)
}

/// Writes the edge-list format, with an `# order N` header line.
pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("# order {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        // Reference strings from the graph6 format description.
        assert_eq!(emit_graph6(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(emit_graph6(&Graph::empty(1)).unwrap(), "@");
        assert_eq!(emit_graph6(&Graph::complete(2)).unwrap(), "A_");
        assert_eq!(emit_graph6(&Graph::complete(4)).unwrap(), "C~");
        assert_eq!(emit_graph6(&Graph::complete(5)).unwrap(), "D~{");
        assert_eq!(emit_graph6(&Graph::cycle(5)).unwrap(), "Dhc");
        assert_eq!(emit_graph6(&Graph::petersen()).unwrap().len(), 9);
    }

    #[test]
    fn parse_short_example() {
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(emit_graph6(&g).unwrap(), "D?{");
        // ? = 000000, { = 111100: x(0,4), x(1,4), x(2,4), x(3,4)
        assert_eq!(g, Graph::star(4).relabel(&[4, 0, 1, 2, 3]).unwrap());
    }

    #[test]
    fn header_and_newline_accepted() {
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), Graph::complete(4));
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_graph6(""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_graph6("~?@?"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("C~~"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_graph6("C "), Err(Error::Parse { offset: 1, .. })));
        // K2 with a padding bit set
        assert!(matches!(parse_graph6("A`"), Err(Error::Parse { .. })));
        assert!(emit_graph6(&Graph::empty(63)).is_err());
    }

    #[test]
    fn edge_list_format() {
        let text = "# a triangle with a pendant\n0 1\n1 2 # inline\n2 0\n\n2 3\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 4));
        let g2 = parse_edge_list("# order 6\n0 1\n").unwrap();
        assert_eq!(g2.n(), 6);
        assert_eq!(parse_edge_list(&emit_edge_list(&g2)).unwrap(), g2);
        assert!(parse_edge_list("0 1 2\n").is_err());
        assert!(parse_edge_list("0 x\n").is_err());
        assert!(parse_edge_list("# order 2\n0 5\n").is_err());
        assert!(matches!(parse_edge_list("1 1\n"), Err(Error::Loop(1))));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..=20).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for v in 1..n {
                    for u in 0..v {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::build(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph()) {
            let s = emit_graph6(&g).unwrap();
            let back = parse_graph6(&s).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(emit_graph6(&back).unwrap(), s);
        }

        #[test]
        fn edge_list_round_trip(g in arb_graph()) {
            prop_assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
        }
    }
}
