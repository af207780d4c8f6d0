//! The graph file format.
//!
//! ```text
//! # comments run to the end of the line
//! vertex E0 -1
//! vertex E1 -2
//! edge E0 E1
//! ```
//!
//! or a single line `seifert b=-2 legs=3/1,3/1,3/1`. Vertices keep their
//! declaration order.

use plumbsw_core::graph::seifert_to_graph;
use plumbsw_core::PlumbingGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Graph(#[from] plumbsw_core::Error),
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in content.char_indices().chain(core::iter::once((content.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { text: &content[s..i], column: content[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, column, message: message.into() }
}

fn int<T: core::str::FromStr>(tok: &Token, line: usize, what: &str) -> Result<T, ParseError> {
    tok.text.parse().map_err(|_| syntax(line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

pub fn parse_graph(text: &str) -> Result<PlumbingGraph, ParseError> {
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut seifert = None;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        if seifert.is_some() {
            return Err(syntax(line, head.column, "nothing may follow a `seifert` line"));
        }
        let arity = |n: usize| -> Result<(), ParseError> {
            match toks.get(n) {
                Some(extra) => Err(syntax(line, extra.column, format!("unexpected `{}`", extra.text))),
                None if toks.len() < n => {
                    let end = raw.split('#').next().unwrap_or("").trim_end().chars().count() + 1;
                    Err(syntax(line, end, format!("`{}` takes {} argument(s)", head.text, n - 1)))
                }
                None => Ok(()),
            }
        };
        match head.text {
            "vertex" => {
                arity(3)?;
                vertices.push((toks[1].text.to_string(), int::<i64>(&toks[2], line, "an integer euler number")?));
            }
            "edge" => {
                arity(3)?;
                edges.push((toks[1].text.to_string(), toks[2].text.to_string()));
            }
            "seifert" => {
                if !vertices.is_empty() || !edges.is_empty() {
                    return Err(syntax(line, head.column, "`seifert` cannot be mixed with `vertex`/`edge` lines"));
                }
                arity(3)?;
                seifert = Some(parse_seifert(&toks[1], &toks[2], line)?);
            }
            other => return Err(syntax(line, head.column, format!("unknown directive `{other}`"))),
        }
    }
    if let Some((b, legs)) = seifert {
        return Ok(seifert_to_graph(b, &legs)?);
    }
    if vertices.is_empty() {
        return Err(syntax(last_line.max(1), 1, "no vertices declared"));
    }
    Ok(PlumbingGraph::new(vertices, edges)?)
}

fn parse_seifert(b: &Token, legs: &Token, line: usize) -> Result<(i64, Vec<(i128, i128)>), ParseError> {
    let value = |tok: &Token, key: &str| -> Result<(), ParseError> {
        if tok.text.starts_with(&format!("{key}=")) {
            Ok(())
        } else {
            Err(syntax(line, tok.column, format!("expected `{key}=...`, found `{}`", tok.text)))
        }
    };
    value(b, "b")?;
    value(legs, "legs")?;
    let b_val = Token { text: &b.text[2..], column: b.column + 2 };
    let b_int = int::<i64>(&b_val, line, "an integer central decoration")?;
    let mut out = Vec::new();
    let mut col = legs.column + 5;
    for item in legs.text[5..].split(',') {
        let malformed = || syntax(line, col, format!("expected a leg `alpha/omega`, found `{item}`"));
        let (a, w) = item.split_once('/').ok_or_else(malformed)?;
        out.push((a.parse().map_err(|_| malformed())?, w.parse().map_err(|_| malformed())?));
        col += item.chars().count() + 1;
    }
    Ok((b_int, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use plumbsw_core::Error;

    #[test]
    fn single_vertex() {
        let g = parse_graph("vertex a -2\n").unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.euler(0), -2);
    }

    #[test]
    fn star_with_comments() {
        let text = "# trefoil\nvertex E0 -1   # centre\nvertex E1 -2\nvertex E2 -3\nvertex E3 -7\n\nedge E0 E1\nedge E0 E2\nedge E0 E3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.ids(), ["E0", "E1", "E2", "E3"]);
        assert_eq!(g.nodes(), vec![0]);
    }

    #[test]
    fn seifert_line() {
        let g = parse_graph("seifert b=-2 legs=3/1,3/1,3/1").unwrap();
        assert_eq!(g, seifert_to_graph(-2, &[(3, 1), (3, 1), (3, 1)]).unwrap());
        let g = parse_graph("seifert b=-1 legs=7/3").unwrap();
        assert_eq!((1..g.len()).map(|v| g.euler(v)).collect::<Vec<_>>(), vec![-3, -2, -2]);
    }

    #[test]
    fn positions_of_syntax_errors() {
        let at = |text: &str| match parse_graph(text) {
            Err(ParseError::Syntax { line, column, .. }) => (line, column),
            other => panic!("{other:?}"),
        };
        assert_eq!(at("vertex a -2\nvertx b -2\n"), (2, 1));
        assert_eq!(at("vertex a x2"), (1, 10));
        assert_eq!(at("  vertex a"), (1, 11));
        assert_eq!(at("vertex a -2 extra"), (1, 13));
        assert_eq!(at("seifert b=-2 legs=3/1,3-1"), (1, 23));
        assert_eq!(at("seifert b=-2 lg=3/1"), (1, 14));
        assert_eq!(at("vertex a -2\nseifert b=-2 legs=3/1"), (2, 1));
        assert_eq!(at("# nothing\n"), (1, 1));
    }

    #[test]
    fn graph_errors() {
        assert_eq!(parse_graph("vertex a 0"), Err(ParseError::Graph(Error::NotNegativeDefinite { size: 1, det: 0 })));
        assert_eq!(parse_graph("vertex a -2\nvertex a -2"), Err(ParseError::Graph(Error::DuplicateVertex("a".into()))));
        assert_eq!(parse_graph("vertex a -2\nedge a b"), Err(ParseError::Graph(Error::UnknownVertex("b".into()))));
        assert_eq!(parse_graph("vertex a -2\nvertex b -2"), Err(ParseError::Graph(Error::Disconnected)));
        assert!(matches!(
            parse_graph("vertex a -2\nvertex b -2\nvertex c -2\nedge a b\nedge b c\nedge c a"),
            Err(ParseError::Graph(Error::Cyclic(..)))
        ));
        assert_eq!(
            parse_graph("seifert b=-2 legs=3/3"),
            Err(ParseError::Graph(Error::InvalidSeifertPair { alpha: 3, omega: 3 }))
        );
    }
}
