//! Plain-text edge lists: a header line `n m`, then `m` lines `u v`
//! (0-indexed, whitespace separated).

use super::{Graph, GraphError};

fn malformed(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Malformed { line, message: message.into() }
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize), GraphError> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, GraphError> {
        let tok = fields.next().ok_or_else(|| malformed(line_no, format!("missing {what}")))?;
        tok.parse().map_err(|_| malformed(line_no, format!("{what} `{tok}` is not a non-negative integer")))
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if fields.next().is_some() {
        return Err(malformed(line_no, "expected exactly two fields"));
    }
    Ok((a, b))
}

/// Parses the edge-list format. Blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or_else(|| malformed(1, "missing header `n m`"))?;
    let (n, m) = parse_pair(hline, header)?;
    let mut g = Graph::empty(n);
    let mut read = 0usize;
    for (line_no, line) in lines {
        let (u, v) = parse_pair(line_no, line)?;
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::OutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::Loop(u));
        }
        if !g.add_edge(u, v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        read += 1;
    }
    if read != m {
        return Err(malformed(hline, format!("header declares {m} edges, found {read}")));
    }
    Ok(g)
}

/// Canonical serialization: edges as `u v` with `u < v`, sorted.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators::path;
    use proptest::prelude::*;

    #[test]
    fn parses_path() {
        assert_eq!(parse_edge_list("3 2\n0 1\n1 2").unwrap(), path(3));
    }

    #[test]
    fn rejects_bad_lines() {
        assert_eq!(parse_edge_list("2 1\n0 0"), Err(GraphError::Loop(0)));
        assert_eq!(parse_edge_list("3 2\n0 1\n1 0"), Err(GraphError::DuplicateEdge(1, 0)));
        assert_eq!(parse_edge_list("3 1\n0 3"), Err(GraphError::OutOfRange { vertex: 3, n: 3 }));
        assert!(matches!(parse_edge_list("3 1\n0 x"), Err(GraphError::Malformed { line: 2, .. })));
        assert!(matches!(parse_edge_list("3 2\n0 1"), Err(GraphError::Malformed { .. })));
        assert!(matches!(parse_edge_list(""), Err(GraphError::Malformed { .. })));
        assert!(matches!(parse_edge_list("3 1\n0 1 2"), Err(GraphError::Malformed { .. })));
    }

    proptest! {
        #[test]
        fn round_trip_is_identity(n in 1usize..16, raw in proptest::collection::vec((0usize..16, 0usize..16), 0..40)) {
            let mut edges: Vec<(usize, usize)> = raw
                .into_iter()
                .map(|(a, b)| (a % n, b % n))
                .filter(|(a, b)| a != b)
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            let g = Graph::from_edges(n, edges).unwrap();
            let text = serialize_edge_list(&g);
            let back = parse_edge_list(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(serialize_edge_list(&back), text);
        }
    }
}
