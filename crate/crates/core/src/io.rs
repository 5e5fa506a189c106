//! Text formats: edge lists, clique build files, partition files and DOT.
//!
//! Edge list: optional header `n <count>`, then one `u v` pair per line.
//! Build file: `K <size>` then `K <size> @ <attach>` lines. Partition file:
//! one class per line, space-separated ids, line order is class order. All
//! formats use 0-based ids; `#` starts a comment.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lab::{BuildSequence, BuildStep};
use crate::resolver::VertexPartition;

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_id(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| Error::Parse { line, msg: format!("invalid vertex id `{token}`") })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared = None;
    let mut edges = Vec::new();
    for (idx, (line, tokens)) in content_lines(text).enumerate() {
        if tokens[0] == "n" {
            if idx != 0 {
                return Err(Error::Parse { line, msg: "header `n <count>` must come first".into() });
            }
            match tokens[..] {
                [_, count] => {
                    declared = Some(count.parse().map_err(|_| Error::Parse {
                        line,
                        msg: format!("invalid vertex count `{count}`"),
                    })?)
                }
                _ => return Err(Error::Parse { line, msg: "expected `n <count>`".into() }),
            }
            continue;
        }
        match tokens[..] {
            [u, v] => edges.push((parse_id(u, line)?, parse_id(v, line)?)),
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("expected two vertex ids, found {} tokens", tokens.len()),
                })
            }
        }
    }
    let n = match declared {
        Some(n) => n,
        None => edges.iter().map(|&(u, v)| u.max(v) + 1).max().ok_or(Error::Parse {
            line: 0,
            msg: "no edges and no `n <count>` header".into(),
        })?,
    };
    Graph::from_edges(n, &edges)
}

pub fn parse_build_sequence(text: &str) -> Result<BuildSequence> {
    let mut steps = Vec::new();
    for (line, tokens) in content_lines(text) {
        let size = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse { line, msg: format!("invalid block size `{s}`") })
        };
        let step = match tokens[..] {
            ["K", s] => BuildStep { size: size(s)?, attach: None },
            ["K", s, "@", a] => BuildStep { size: size(s)?, attach: Some(parse_id(a, line)?) },
            _ => return Err(Error::Parse { line, msg: "expected `K <size>` or `K <size> @ <attach>`".into() }),
        };
        steps.push(step);
    }
    let seq = BuildSequence { steps };
    seq.validate()?;
    Ok(seq)
}

/// Parses either format, choosing the build format when the first content
/// line starts with `K`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    match content_lines(text).next() {
        Some((_, tokens)) if tokens[0] == "K" => parse_build_sequence(text)?.to_graph(),
        _ => parse_edge_list(text),
    }
}

pub fn parse_partition(text: &str, n: usize) -> Result<VertexPartition> {
    let mut classes = Vec::new();
    for (line, tokens) in content_lines(text) {
        classes.push(tokens.iter().map(|t| parse_id(t, line)).collect::<Result<Vec<_>>>()?);
    }
    VertexPartition::new(classes, n)
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn format_partition(pi: &VertexPartition) -> String {
    let mut out = String::new();
    for class in pi.classes() {
        let ids: Vec<String> = class.iter().map(ToString::to_string).collect();
        writeln!(out, "{}", ids.join(" ")).unwrap();
    }
    out
}

const PALETTE: [&str; 12] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33",
    "#a65628", "#f781bf", "#999999", "#66c2a5", "#fc8d62", "#8da0cb",
];

/// DOT rendering; with a partition, vertices are filled by class index.
pub fn to_dot(g: &Graph, partition: Option<&VertexPartition>) -> Result<String> {
    let class_of = match partition {
        Some(p) if p.n() != g.n() => {
            return Err(Error::InvalidPartition(format!("partition covers {} vertices, graph has {}", p.n(), g.n())))
        }
        Some(p) => Some(p.class_of()),
        None => None,
    };
    let mut out = String::from("graph G {\n");
    if let Some(class_of) = &class_of {
        out.push_str("  node [style=filled];\n");
        for (v, &c) in class_of.iter().enumerate() {
            writeln!(out, "  {v} [fillcolor=\"{}\", class={c}];", PALETTE[c % PALETTE.len()]).unwrap();
        }
    } else {
        for v in 0..g.n() {
            writeln!(out, "  {v};").unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures;

    #[test]
    fn edge_list_with_header_and_comments() {
        let g = parse_edge_list("# double star\nn 6\n0 1\n0 2 # leaf\n0 3\n\n1 4\n1 5\n").unwrap();
        assert_eq!(g, fixtures::double_star());
        let g = parse_edge_list("0 1\n1 2\n").unwrap();
        assert_eq!(g, fixtures::path(3));
    }

    #[test]
    fn edge_list_errors() {
        assert_eq!(
            parse_edge_list("0 1\n0 x\n"),
            Err(Error::Parse { line: 2, msg: "invalid vertex id `x`".into() })
        );
        assert!(matches!(parse_edge_list("0 1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1\nn 3\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { .. })));
        assert_eq!(parse_edge_list("n 2\n0 5\n"), Err(Error::OutOfRange { vertex: 5, n: 2 }));
    }

    #[test]
    fn build_files() {
        let g = parse_graph("K 3\nK 3 @ 2\n").unwrap();
        assert_eq!(g, fixtures::bowtie());
        assert!(matches!(parse_graph("K 3\n"), Err(Error::InvalidRange(_))));
        assert!(matches!(parse_graph("K 3\nK 2 @ 7\n"), Err(Error::InvalidRange(_))));
        assert!(matches!(parse_graph("K 3\nK two @ 0\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn partitions() {
        let p = parse_partition("0\n1 2 3 4\n", 5).unwrap();
        assert_eq!(p.classes(), &[vec![0], vec![1, 2, 3, 4]]);
        assert_eq!(format_partition(&p), "0\n1 2 3 4\n");
        assert!(matches!(parse_partition("0\n1 2 4\n", 5), Err(Error::InvalidPartition(_))));
        assert!(matches!(parse_partition("0 a\n", 2), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn dot_output() {
        let g = fixtures::path(3);
        let p = VertexPartition::new(vec![vec![0], vec![1, 2]], 3).unwrap();
        let dot = to_dot(&g, Some(&p)).unwrap();
        assert!(dot.starts_with("graph G {"));
        assert!(dot.contains("0 -- 1;") && dot.contains("1 -- 2;"));
        assert!(dot.contains("2 [fillcolor=\"#377eb8\", class=1];"));
        assert!(!to_dot(&g, None).unwrap().contains("fillcolor"));
    }

    #[test]
    fn edge_list_round_trip() {
        let g = fixtures::cat32();
        assert_eq!(parse_edge_list(&format_edge_list(&g)).unwrap(), g);
    }
}
