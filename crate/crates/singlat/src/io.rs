//! The plumbing-graph file format.
//!
//! A graph file is line-oriented plain text. `#` starts a comment that
//! runs to the end of the line; blank lines are ignored. The directives
//! are:
//!
//! ```text
//! version 1            # optional, only version 1 exists
//! v <id> <euler>       # a vertex with its Euler number
//! e <id> <id>          # an edge between two declared vertices
//! ```
//!
//! Ids are arbitrary (distinct) signed integers; edges may reference
//! vertices declared later in the file. Parse errors carry the offending
//! line number; whole-graph errors (disconnectedness, cycles) do not
//! belong to a single line and are reported as plain input errors.

use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;

fn parse_int(token: &str, what: &str, line: usize) -> Result<i64> {
    token.parse::<i64>().map_err(|_| Error::Parse {
        line,
        msg: format!("expected an integer {what}, found `{token}`"),
    })
}

/// Parses the textual format into a validated tree.
pub fn parse(text: &str) -> Result<PlumbingGraph> {
    let mut vertices: Vec<(i64, i64)> = Vec::new();
    let mut seen_ids: HashMap<i64, usize> = HashMap::new();
    let mut edges: Vec<(i64, i64)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    let mut seen_edges: HashMap<(i64, i64), usize> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "version" => {
                if tokens.len() != 2 || tokens[1] != "1" {
                    return Err(Error::Parse {
                        line,
                        msg: format!("unsupported version declaration `{content}`"),
                    });
                }
            }
            "v" => {
                if tokens.len() != 3 {
                    return Err(Error::Parse {
                        line,
                        msg: "vertex lines take exactly two fields: `v <id> <euler>`".into(),
                    });
                }
                let id = parse_int(tokens[1], "vertex id", line)?;
                let euler = parse_int(tokens[2], "Euler number", line)?;
                if let Some(first) = seen_ids.insert(id, line) {
                    return Err(Error::Parse {
                        line,
                        msg: format!("vertex id {id} already declared on line {first}"),
                    });
                }
                vertices.push((id, euler));
            }
            "e" => {
                if tokens.len() != 3 {
                    return Err(Error::Parse {
                        line,
                        msg: "edge lines take exactly two fields: `e <id> <id>`".into(),
                    });
                }
                let a = parse_int(tokens[1], "vertex id", line)?;
                let b = parse_int(tokens[2], "vertex id", line)?;
                if a == b {
                    return Err(Error::Parse {
                        line,
                        msg: format!("self-loop at vertex {a}"),
                    });
                }
                let key = (a.min(b), a.max(b));
                if let Some(first) = seen_edges.insert(key, line) {
                    return Err(Error::Parse {
                        line,
                        msg: format!(
                            "edge between {a} and {b} already declared on line {first}"
                        ),
                    });
                }
                edges.push((a, b));
                edge_lines.push(line);
            }
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown directive `{other}`"),
                });
            }
        }
    }

    for (&(a, b), &line) in edges.iter().zip(&edge_lines) {
        for id in [a, b] {
            if !seen_ids.contains_key(&id) {
                return Err(Error::Parse {
                    line,
                    msg: format!("edge references undeclared vertex {id}"),
                });
            }
        }
    }

    PlumbingGraph::new(&vertices, &edges)
}

/// Reads and parses a graph file from disk.
pub fn parse_file(path: &Path) -> Result<PlumbingGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| Error::input(format!("cannot read {}: {err}", path.display())))?;
    parse(&text)
}

/// Writes a graph back to the textual format; `parse` of the output
/// reconstructs a structurally equal graph.
pub fn serialize(g: &PlumbingGraph) -> String {
    let mut out = String::from("version 1\n");
    for v in 0..g.len() {
        out.push_str(&format!("v {} {}\n", g.id(v), g.euler(v)));
    }
    for &(u, v) in g.edges() {
        let (a, b) = (g.id(u), g.id(v));
        out.push_str(&format!("e {} {}\n", a.min(b), a.max(b)));
    }
    out
}

/// Writes a graph to disk in the textual format.
pub fn write_file(path: &Path, g: &PlumbingGraph) -> Result<()> {
    std::fs::write(path, serialize(g))
        .map_err(|err| Error::input(format!("cannot write {}: {err}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# a star
version 1
v 10 -2
v 20 -3   # center
v 30 -3
e 20 10
e 20 30
";

    #[test]
    fn parses_vertices_edges_and_comments() {
        let g = parse(SAMPLE).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.euler(g.index_of(20).unwrap()), -3);
        assert_eq!(g.degree(g.index_of(20).unwrap()), 2);
    }

    #[test]
    fn round_trips_through_serialize() {
        let g = parse(SAMPLE).unwrap();
        let again = parse(&serialize(&g)).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn reports_the_offending_line() {
        let text = "v 1 -2\nv 1 -3\n";
        match parse(text) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains("already declared on line 1"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_directives() {
        for (text, expect) in [
            ("w 1 -2", "unknown directive"),
            ("v 1", "exactly two fields"),
            ("v 1 x", "expected an integer"),
            ("e 1 1", "self-loop"),
            ("version 2", "unsupported version"),
        ] {
            match parse(text) {
                Err(Error::Parse { line: 1, msg }) => {
                    assert!(msg.contains(expect), "`{msg}` missing `{expect}`");
                }
                other => panic!("expected a line-1 parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_edges_to_undeclared_vertices() {
        let text = "v 1 -2\nv 2 -2\ne 1 3\n";
        match parse(text) {
            Err(Error::Parse { line: 3, msg }) => {
                assert!(msg.contains("undeclared vertex 3"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicate_edges() {
        let text = "v 1 -2\nv 2 -2\ne 1 2\ne 2 1\n";
        match parse(text) {
            Err(Error::Parse { line: 4, msg }) => {
                assert!(msg.contains("already declared on line 3"));
            }
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_forests_and_cycles() {
        // Two components.
        assert!(parse("v 1 -2\nv 2 -2\n").is_err());
        // A triangle is not a tree (and duplicates are caught first
        // anyway, so use three distinct edges).
        assert!(parse("v 1 -2\nv 2 -2\nv 3 -2\ne 1 2\ne 2 3\ne 3 1\n").is_err());
    }
}
