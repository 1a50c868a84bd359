//! Text formats: `.h3` hypergraphs and `.part` partitions.
//!
//! ```text
//! # comment lines are ignored anywhere
//! h3 <n> <m>
//! <a> <b> <c>        (m lines, 0 <= a < b < c < n)
//! ```
//!
//! ```text
//! part <n> <r>
//! <ids of part 1>    (r lines, together a partition of 0..n)
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use crate::hypergraph::{Hypergraph3, HypergraphError};
use crate::lattice::{Partition, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header, expected `{0}`")]
    Header(&'static str),
    #[error("expected {expected} records, found {found}")]
    Count { expected: usize, found: usize },
    #[error("malformed record: {0}")]
    Record(String),
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("repeated vertex in edge")]
    RepeatedVertex,
    #[error("duplicate edge {0:?}")]
    DuplicateEdge([usize; 3]),
    #[error("invalid partition: {0}")]
    Partition(PartitionError),
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    tag: &'static str,
    expect: &'static str,
) -> Result<(usize, usize, usize), ParseError> {
    let (line, text) = lines.next().ok_or(ParseError {
        line: 1,
        kind: ParseErrorKind::Header(expect),
    })?;
    let bad = || ParseError {
        line,
        kind: ParseErrorKind::Header(expect),
    };
    let toks: Vec<&str> = text.split_whitespace().collect();
    match toks.as_slice() {
        [t, a, b] if *t == tag => Ok((line, a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

/// Parses `.h3` text. Errors carry the 1-based line number.
pub fn parse_h3(text: &str) -> Result<Hypergraph3, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, n, m) = parse_header(&mut lines, "h3", "h3 <n> <m>")?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut last_line = header_line;
    for (line, rec) in lines {
        last_line = line;
        let err = |kind| ParseError { line, kind };
        let nums: Result<Vec<usize>, _> = rec.split_whitespace().map(str::parse).collect();
        let nums = nums.map_err(|_| err(ParseErrorKind::Record(rec.to_string())))?;
        let [a, b, c]: [usize; 3] = nums
            .try_into()
            .map_err(|_| err(ParseErrorKind::Record(rec.to_string())))?;
        if let Some(&v) = [a, b, c].iter().find(|&&v| v >= n) {
            return Err(err(ParseErrorKind::VertexOutOfRange { vertex: v, n }));
        }
        let mut t = [a, b, c];
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return Err(err(ParseErrorKind::RepeatedVertex));
        }
        if !seen.insert(t) {
            return Err(err(ParseErrorKind::DuplicateEdge(t)));
        }
        edges.push(t);
    }
    if edges.len() != m {
        return Err(ParseError {
            line: last_line,
            kind: ParseErrorKind::Count {
                expected: m,
                found: edges.len(),
            },
        });
    }
    Hypergraph3::new(n, edges).map_err(|e| ParseError {
        line: header_line,
        kind: match e {
            HypergraphError::DuplicateEdge(t) => ParseErrorKind::DuplicateEdge(t),
            other => ParseErrorKind::Record(other.to_string()),
        },
    })
}

/// Serializes to `.h3` text with edges in lexicographic order.
pub fn write_h3(h: &Hypergraph3) -> String {
    let mut out = String::with_capacity(16 + h.edge_count() * 12);
    let _ = writeln!(out, "h3 {} {}", h.n(), h.edge_count());
    for [a, b, c] in h.edges() {
        let _ = writeln!(out, "{a} {b} {c}");
    }
    out
}

pub fn parse_part(text: &str) -> Result<Partition, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, n, r) = parse_header(&mut lines, "part", "part <n> <r>")?;
    let mut parts = Vec::with_capacity(r);
    let mut last_line = header_line;
    for (line, rec) in lines {
        last_line = line;
        let ids: Result<Vec<usize>, _> = rec.split_whitespace().map(str::parse).collect();
        let ids = ids.map_err(|_| ParseError {
            line,
            kind: ParseErrorKind::Record(rec.to_string()),
        })?;
        if let Some(&v) = ids.iter().find(|&&v| v >= n) {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::VertexOutOfRange { vertex: v, n },
            });
        }
        parts.push(ids);
    }
    if parts.len() != r {
        return Err(ParseError {
            line: last_line,
            kind: ParseErrorKind::Count {
                expected: r,
                found: parts.len(),
            },
        });
    }
    Partition::new(n, parts).map_err(|e| ParseError {
        line: last_line,
        kind: ParseErrorKind::Partition(e),
    })
}

pub fn write_part(p: &Partition) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "part {} {}", p.n(), p.r());
    for part in p.parts() {
        let ids: Vec<String> = part.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", ids.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{random_3graph, space_barrier};
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let h = parse_h3("h3 6 1\n0 1 2").unwrap();
        assert_eq!(h.n(), 6);
        assert_eq!(h.edges(), &[[0, 1, 2]]);
        let e = parse_h3("h3 6 1\n0 1 6").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::VertexOutOfRange { vertex: 6, n: 6 }));
    }

    #[test]
    fn serialize_barrier() {
        let text = write_h3(&space_barrier(12).unwrap().hypergraph);
        assert_eq!(text.lines().count(), 1 + 136);
        assert!(text.starts_with("h3 12 136\n"));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = parse_h3("# c\nh3 x 1\n").unwrap_err();
        assert_eq!((e.line, &e.kind), (2, &ParseErrorKind::Header("h3 <n> <m>")));
        let e = parse_h3("h3 6 2\n0 1 2\n# dup\n2 1 0\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(matches!(e.kind, ParseErrorKind::DuplicateEdge([0, 1, 2])));
        let e = parse_h3("h3 6 2\n0 1 2\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Count { expected: 2, found: 1 }));
        let e = parse_h3("h3 6 1\n0 1\n").unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Record(_)));
        let e = parse_h3("h3 6 1\n0 3 3\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::RepeatedVertex);
        assert!(parse_h3("").is_err());
    }

    #[test]
    fn partition_format() {
        let p = parse_part("part 5 2\n0 1\n2 3 4\n").unwrap();
        assert_eq!(p.r(), 2);
        assert_eq!(write_part(&p), "part 5 2\n0 1\n2 3 4\n");
        assert!(parse_part("part 5 2\n0 1\n2 3\n").is_err());
        assert!(parse_part("part 5 2\n0 1 2\n2 3 4\n").is_err());
        assert!(parse_part("part 5 1\n0 1 2 3 9\n").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn round_trip(seed in any::<u64>(), n in 3usize..=30, p in 0.0f64..0.3) {
            let h = random_3graph(n, p, seed).unwrap().hypergraph;
            let text = write_h3(&h);
            let back = parse_h3(&text).unwrap();
            prop_assert_eq!(&back, &h);
            prop_assert_eq!(write_h3(&back), text);
        }
    }
}
