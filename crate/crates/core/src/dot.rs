//! Reading the undirected, attribute-free DOT subset and quoting identifiers
//! for DOT output.
//!
//! Accepted input: `[strict] graph [name] { stmt* }` where a statement is a
//! chain `a -- b -- c` or a lone vertex `a`, optionally ended by `;`.
//! Identifiers are `[A-Za-z0-9_.]+` or double-quoted strings. `//` and `#`
//! start line comments.

use crate::error::{Error, Result};
use crate::graph::SimplicialGraph;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Id(String),
    LBrace,
    RBrace,
    Semi,
    EdgeOp,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Self { chars: text.chars().peekable(), line: 1, column: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Parse { line, column, message: message.into() }
    }

    fn tokens(mut self) -> Result<Vec<(Token, usize, usize)>> {
        let mut out = Vec::new();
        while let Some(&c) = self.chars.peek() {
            let (line, column) = (self.line, self.column);
            match c {
                c if c.is_whitespace() || c == ',' => {
                    self.bump();
                }
                '#' => self.skip_line(),
                '/' => {
                    self.bump();
                    if self.chars.peek() == Some(&'/') {
                        self.skip_line();
                    } else {
                        return Err(self.error(line, column, "unexpected `/`"));
                    }
                }
                '{' => {
                    self.bump();
                    out.push((Token::LBrace, line, column));
                }
                '}' => {
                    self.bump();
                    out.push((Token::RBrace, line, column));
                }
                ';' => {
                    self.bump();
                    out.push((Token::Semi, line, column));
                }
                '-' => {
                    self.bump();
                    match self.bump() {
                        Some('-') => out.push((Token::EdgeOp, line, column)),
                        Some('>') => return Err(self.error(line, column, "directed edges are not supported")),
                        _ => return Err(self.error(line, column, "expected `--`")),
                    }
                }
                '"' => {
                    self.bump();
                    let mut id = String::new();
                    loop {
                        match self.bump() {
                            Some('"') => break,
                            Some('\\') => match self.bump() {
                                Some(e) => id.push(e),
                                None => return Err(self.error(line, column, "unterminated string")),
                            },
                            Some(ch) => id.push(ch),
                            None => return Err(self.error(line, column, "unterminated string")),
                        }
                    }
                    out.push((Token::Id(id), line, column));
                }
                c if is_id_char(c) => {
                    let mut id = String::new();
                    while let Some(&ch) = self.chars.peek() {
                        if !is_id_char(ch) {
                            break;
                        }
                        id.push(ch);
                        self.bump();
                    }
                    out.push((Token::Id(id), line, column));
                }
                '[' => return Err(self.error(line, column, "attributes are not supported")),
                other => return Err(self.error(line, column, format!("unexpected character `{other}`"))),
            }
        }
        Ok(out)
    }

    fn skip_line(&mut self) {
        while let Some(c) = self.bump() {
            if c == '\n' {
                break;
            }
        }
    }
}

fn is_id_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '.'
}

pub(crate) fn parse_graph(text: &str) -> Result<SimplicialGraph> {
    let tokens = Lexer::new(text).tokens()?;
    let end = {
        let lines = text.split('\n').count();
        let column = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (lines, column)
    };
    let mut pos = 0;
    let at = |pos: usize| tokens.get(pos).map_or(end, |&(_, l, c)| (l, c));
    let fail = |pos: usize, message: &str| {
        let (line, column) = at(pos);
        Error::Parse { line, column, message: message.to_owned() }
    };

    if matches!(tokens.get(pos), Some((Token::Id(k), ..)) if k == "strict") {
        pos += 1;
    }
    match tokens.get(pos) {
        Some((Token::Id(k), ..)) if k == "graph" => pos += 1,
        Some((Token::Id(k), ..)) if k == "digraph" => return Err(fail(pos, "directed graphs are not supported")),
        _ => return Err(fail(pos, "expected `graph`")),
    }
    if matches!(tokens.get(pos), Some((Token::Id(_), ..))) {
        pos += 1;
    }
    if !matches!(tokens.get(pos), Some((Token::LBrace, ..))) {
        return Err(fail(pos, "expected `{`"));
    }
    pos += 1;

    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    loop {
        match tokens.get(pos) {
            Some((Token::RBrace, ..)) => {
                pos += 1;
                break;
            }
            Some((Token::Semi, ..)) => pos += 1,
            Some((Token::Id(first), ..)) => {
                pos += 1;
                let mut chain = vec![first.clone()];
                while matches!(tokens.get(pos), Some((Token::EdgeOp, ..))) {
                    pos += 1;
                    match tokens.get(pos) {
                        Some((Token::Id(next), ..)) => {
                            chain.push(next.clone());
                            pos += 1;
                        }
                        _ => return Err(fail(pos, "expected a vertex after `--`")),
                    }
                }
                for name in &chain {
                    if !vertices.contains(name) {
                        vertices.push(name.clone());
                    }
                }
                edges.extend(chain.windows(2).map(|w| (w[0].clone(), w[1].clone())));
            }
            _ => return Err(fail(pos, "expected a statement or `}`")),
        }
    }
    if pos != tokens.len() {
        return Err(fail(pos, "trailing input after the graph body"));
    }
    SimplicialGraph::new(&vertices, &edges)
}

/// Quotes `id` unless it is a plain DOT identifier.
pub(crate) fn quote_id(id: &str) -> String {
    if !id.is_empty() && id.chars().all(is_id_char) {
        id.to_owned()
    } else {
        format!("\"{}\"", id.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_chains_and_isolated_vertices() {
        let g = SimplicialGraph::parse("graph G {\n  a -- b -- c;\n  c -- d\n  e;\n}\n").unwrap();
        assert_eq!(
            g.to_json(),
            r#"{"vertices":["a","b","c","d","e"],"edges":[["a","b"],["b","c"],["c","d"]]}"#
        );
    }

    #[test]
    fn dot_round_trip() {
        let g = SimplicialGraph::parse(r#"strict graph { "x y" -- b; z }"#).unwrap();
        assert_eq!(SimplicialGraph::parse(&g.to_dot()).unwrap(), g);
    }

    #[test]
    fn rejects_unsupported_dot() {
        for text in ["digraph { a -> b }", "graph { a -> b }", "graph { a [color=red] }", "graph { a -- }", "graph { a"] {
            assert!(matches!(SimplicialGraph::parse(text), Err(Error::Parse { .. })), "{text}");
        }
        assert!(matches!(SimplicialGraph::parse("graph { a -- a }"), Err(Error::Validation(_))));
    }

    #[test]
    fn reports_position() {
        match SimplicialGraph::parse("graph {\n a -- b;\n  c -> d\n}") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (3, 5)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
