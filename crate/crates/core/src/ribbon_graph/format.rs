//! Line-oriented graph file format.
//!
//! ```text
//! # comment
//! vertex u: B A C      # darts in counterclockwise order
//! edge A A'
//! base B               # optional, defaults to the first declared dart
//! ```

use std::fmt::Write as _;

use super::{GraphError, RibbonGraph};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

/// Splits a comment-stripped line into whitespace separated tokens with
/// their 1-based character columns.
fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                tokens.push(Token {
                    text: &line[b..byte],
                    column: c + 1,
                });
            }
        } else if start.is_none() {
            start = Some((byte, col));
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &line[b..],
            column: c + 1,
        });
    }
    tokens
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> GraphError {
    GraphError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn check_name(tok: &Token<'_>, line: usize, what: &str) -> Result<String, GraphError> {
    if tok.text.contains(':') {
        return Err(syntax(
            line,
            tok.column,
            format!("invalid {what} name `{}`", tok.text),
        ));
    }
    Ok(tok.text.to_string())
}

pub fn parse_graph(text: &str) -> Result<RibbonGraph, GraphError> {
    let mut vertices: Vec<(String, Vec<String>)> = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut declared = std::collections::HashMap::new();
    let mut paired = std::collections::HashMap::new();
    let mut base: Option<(String, usize, usize)> = None;

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(line);
        let Some(keyword) = tokens.first() else {
            continue;
        };
        match keyword.text {
            "vertex" => {
                let Some(name_tok) = tokens.get(1) else {
                    return Err(syntax(lineno, keyword.column + 6, "expected vertex name"));
                };
                // accept both `u:` and `u :`
                let (vname, darts_from) = if let Some(stripped) = name_tok.text.strip_suffix(':') {
                    (stripped, 2)
                } else if tokens.get(2).map(|t| t.text) == Some(":") {
                    (name_tok.text, 3)
                } else {
                    return Err(syntax(
                        lineno,
                        name_tok.column + name_tok.text.chars().count(),
                        "expected `:` after vertex name",
                    ));
                };
                if vname.is_empty() || vname.contains(':') {
                    return Err(syntax(lineno, name_tok.column, "invalid vertex name"));
                }
                let mut darts = Vec::new();
                for tok in &tokens[darts_from..] {
                    let name = check_name(tok, lineno, "dart")?;
                    if let Some((l, c)) = declared.insert(name.clone(), (lineno, tok.column)) {
                        return Err(syntax(
                            lineno,
                            tok.column,
                            format!("dart `{name}` already declared at line {l}, column {c}"),
                        ));
                    }
                    darts.push(name);
                }
                vertices.push((vname.to_string(), darts));
            }
            "edge" => {
                if tokens.len() != 3 {
                    let column = tokens.get(3).map_or(keyword.column, |t| t.column);
                    return Err(syntax(lineno, column, "`edge` takes exactly two darts"));
                }
                let (a, b) = (&tokens[1], &tokens[2]);
                let na = check_name(a, lineno, "dart")?;
                let nb = check_name(b, lineno, "dart")?;
                if na == nb {
                    return Err(syntax(
                        lineno,
                        b.column,
                        format!("edge pairs `{na}` with itself"),
                    ));
                }
                for tok in [a, b] {
                    if let Some(prev) = paired.insert(tok.text.to_string(), lineno) {
                        return Err(syntax(
                            lineno,
                            tok.column,
                            format!("dart `{}` already paired at line {prev}", tok.text),
                        ));
                    }
                }
                edges.push((na, nb));
            }
            "base" => {
                if tokens.len() != 2 {
                    return Err(syntax(
                        lineno,
                        keyword.column,
                        "`base` takes exactly one dart",
                    ));
                }
                if base.is_some() {
                    return Err(syntax(lineno, keyword.column, "duplicate `base` statement"));
                }
                base = Some((
                    check_name(&tokens[1], lineno, "dart")?,
                    lineno,
                    tokens[1].column,
                ));
            }
            other => {
                return Err(syntax(
                    lineno,
                    keyword.column,
                    format!("unknown statement `{other}`"),
                ));
            }
        }
    }

    // report unknown darts with their position before structural checks
    for (lineno, raw) in text.lines().enumerate() {
        let tokens = tokenize(raw.split('#').next().unwrap_or(""));
        if tokens.first().map(|t| t.text) == Some("edge") {
            for tok in &tokens[1..] {
                if !declared.contains_key(tok.text) {
                    return Err(syntax(
                        lineno + 1,
                        tok.column,
                        format!("unknown dart `{}`", tok.text),
                    ));
                }
            }
        }
    }
    if let Some((name, l, c)) = &base {
        if !declared.contains_key(name) {
            return Err(syntax(*l, *c, format!("unknown dart `{name}`")));
        }
    }

    RibbonGraph::from_parts(vertices, edges, base.as_ref().map(|(n, _, _)| n.as_str()))
}

/// Writes `g` back in the file format. Darts and edges keep their order, so
/// `parse_graph(serialize_graph(g))` has identical permutation tables.
pub fn serialize_graph(g: &RibbonGraph) -> String {
    let mut out = String::new();
    for (v, cycle) in g.vertex_cycles().iter().enumerate() {
        let _ = writeln!(
            out,
            "vertex {}: {} {} {}",
            g.vertex_name(v),
            g.dart_name(cycle[0]),
            g.dart_name(cycle[1]),
            g.dart_name(cycle[2])
        );
    }
    for &[a, b] in g.edge_pairs() {
        let _ = writeln!(out, "edge {} {}", g.dart_name(a), g.dart_name(b));
    }
    let _ = writeln!(out, "base {}", g.dart_name(g.base()));
    out
}
