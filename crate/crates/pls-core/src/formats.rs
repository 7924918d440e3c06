//! Text and structured file formats.
//!
//! Text formats (symbols and coordinates 1-based, `#` starts a comment
//! line):
//!
//! - `.pls`: first line the order `n`, then `n` lines of `n` tokens, each a
//!   decimal symbol or `.` for an empty cell.
//! - `.fw`: first line `r s t`, then `r` row lists and `s` column lists,
//!   one per line as space-separated symbols, a bare `-` for an empty list.
//! - `.hg`: first line the vertex count `u`, then `u` lines of four 0-based
//!   vertex indices.
//!
//! The same three objects also serialize to JSON mirroring the same fields;
//! `read_*_path`/`write_*_path` pick the representation by file extension
//! (`.json` versus anything else).

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::framework::Framework;
use crate::reduction::Hypergraph;
use crate::square::PartialLatinSquare;
use crate::symbols::{Symbol, SymbolSet};

/// A malformed input, with the 1-based line it was found on.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Data lines with their 1-based positions; comments and blank lines are
/// skipped.
fn data_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_count(lines: &[(usize, &str)], what: &str) -> Result<usize, ParseError> {
    let &(line, text) = lines
        .first()
        .ok_or_else(|| ParseError::new(1, format!("missing {what} line")))?;
    text.parse::<usize>()
        .map_err(|_| ParseError::new(line, format!("expected {what}, found {text:?}")))
}

pub fn parse_pls(text: &str) -> Result<PartialLatinSquare, ParseError> {
    let lines = data_lines(text);
    let n = parse_count(&lines, "the order n")?;
    if n == 0 {
        return Err(ParseError::new(lines[0].0, "order 0 is not a latin square"));
    }
    let rows = &lines[1..];
    if rows.len() != n {
        let line = rows.last().map(|&(l, _)| l).unwrap_or(lines[0].0);
        return Err(ParseError::new(
            line,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    let mut square = PartialLatinSquare::new_empty(n);
    for (r, &(line, text)) in rows.iter().enumerate() {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        if tokens.len() != n {
            return Err(ParseError::new(
                line,
                format!("expected {n} cells in row {}, found {}", r + 1, tokens.len()),
            ));
        }
        for (c, token) in tokens.iter().enumerate() {
            if *token == "." {
                continue;
            }
            let value: u16 = token.parse().map_err(|_| {
                ParseError::new(line, format!("cell ({},{}): bad token {token:?}", r + 1, c + 1))
            })?;
            if value == 0 || usize::from(value) > n {
                return Err(ParseError::new(
                    line,
                    format!("cell ({},{}): symbol {value} out of range 1..={n}", r + 1, c + 1),
                ));
            }
            square.set(r, c, Some(Symbol::new(value)));
        }
    }
    Ok(square)
}

pub fn serialize_pls(square: &PartialLatinSquare) -> String {
    let n = square.order();
    let mut out = String::new();
    out.push_str(&n.to_string());
    out.push('\n');
    for row in 0..n {
        for col in 0..n {
            if col > 0 {
                out.push(' ');
            }
            match square.get(row, col) {
                Some(s) => out.push_str(&s.value().to_string()),
                None => out.push('.'),
            }
        }
        out.push('\n');
    }
    out
}

fn parse_symbol_list(line: usize, text: &str, t: usize) -> Result<SymbolSet, ParseError> {
    if text == "-" {
        return Ok(SymbolSet::new());
    }
    let mut set = SymbolSet::new();
    for token in text.split_whitespace() {
        let value: u16 = token
            .parse()
            .map_err(|_| ParseError::new(line, format!("bad symbol {token:?}")))?;
        if value == 0 || usize::from(value) > t {
            return Err(ParseError::new(
                line,
                format!("symbol {value} out of range 1..={t}"),
            ));
        }
        set.insert(Symbol::new(value));
    }
    Ok(set)
}

pub fn parse_framework(text: &str) -> Result<Framework, ParseError> {
    let lines = data_lines(text);
    let &(line, header) = lines
        .first()
        .ok_or_else(|| ParseError::new(1, "missing header line \"r s t\""))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(ParseError::new(line, "expected header \"r s t\""));
    }
    let parse_field = |text: &str, what: &str| -> Result<usize, ParseError> {
        text.parse()
            .map_err(|_| ParseError::new(line, format!("bad {what}: {text:?}")))
    };
    let r = parse_field(fields[0], "r")?;
    let s = parse_field(fields[1], "s")?;
    let t = parse_field(fields[2], "t")?;
    if t == 0 {
        return Err(ParseError::new(line, "symbol universe t must be positive"));
    }
    let lists = &lines[1..];
    if lists.len() != r + s {
        let last = lists.last().map(|&(l, _)| l).unwrap_or(line);
        return Err(ParseError::new(
            last,
            format!("expected {r} row lists and {s} column lists, found {}", lists.len()),
        ));
    }
    let row_lists = lists[..r]
        .iter()
        .map(|&(l, text)| parse_symbol_list(l, text, t))
        .collect::<Result<Vec<_>, _>>()?;
    let col_lists = lists[r..]
        .iter()
        .map(|&(l, text)| parse_symbol_list(l, text, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Framework::new(r, s, t, row_lists, col_lists))
}

pub fn serialize_framework(framework: &Framework) -> String {
    let mut out = format!("{} {} {}\n", framework.r, framework.s, framework.t);
    for list in framework.row_lists.iter().chain(&framework.col_lists) {
        if list.is_empty() {
            out.push('-');
        } else {
            let symbols: Vec<String> = list.iter().map(|s| s.value().to_string()).collect();
            out.push_str(&symbols.join(" "));
        }
        out.push('\n');
    }
    out
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let lines = data_lines(text);
    let u = parse_count(&lines, "the vertex count u")?;
    let rows = &lines[1..];
    if rows.len() != u {
        let last = rows.last().map(|&(l, _)| l).unwrap_or(lines[0].0);
        return Err(ParseError::new(
            last,
            format!("expected {u} edges, found {}", rows.len()),
        ));
    }
    let mut edges = Vec::with_capacity(u);
    for &(line, text) in rows {
        let vertices: Vec<usize> = text
            .split_whitespace()
            .map(|token| {
                token
                    .parse()
                    .map_err(|_| ParseError::new(line, format!("bad vertex index {token:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if vertices.len() != 4 {
            return Err(ParseError::new(
                line,
                format!("expected 4 vertices per edge, found {}", vertices.len()),
            ));
        }
        edges.push([vertices[0], vertices[1], vertices[2], vertices[3]]);
    }
    Ok(Hypergraph::new(u, edges))
}

pub fn serialize_hypergraph(h: &Hypergraph) -> String {
    let mut out = format!("{}\n", h.u);
    for edge in &h.edges {
        let fields: Vec<String> = edge.iter().map(|v| v.to_string()).collect();
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    out
}

// JSON mirrors of the same fields.

#[derive(Serialize, Deserialize)]
struct PlsJson {
    n: usize,
    grid: Vec<Vec<Option<u16>>>,
}

#[derive(Serialize, Deserialize)]
struct FrameworkJson {
    r: usize,
    s: usize,
    t: usize,
    row_lists: Vec<Vec<u16>>,
    col_lists: Vec<Vec<u16>>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    u: usize,
    edges: Vec<[usize; 4]>,
}

pub fn pls_to_json(square: &PartialLatinSquare) -> String {
    let n = square.order();
    let grid = (0..n)
        .map(|r| (0..n).map(|c| square.get(r, c).map(|s| s.value())).collect())
        .collect();
    serde_json::to_string_pretty(&PlsJson { n, grid }).expect("serialization cannot fail")
}

pub fn pls_from_json(text: &str) -> Result<PartialLatinSquare, ParseError> {
    let data: PlsJson =
        serde_json::from_str(text).map_err(|e| ParseError::new(e.line(), e.to_string()))?;
    if data.n == 0 {
        return Err(ParseError::new(1, "order 0 is not a latin square"));
    }
    if data.grid.len() != data.n || data.grid.iter().any(|row| row.len() != data.n) {
        return Err(ParseError::new(1, format!("grid is not {0} by {0}", data.n)));
    }
    for row in &data.grid {
        for &cell in row {
            if let Some(v) = cell {
                if v == 0 || usize::from(v) > data.n {
                    return Err(ParseError::new(
                        1,
                        format!("symbol {v} out of range 1..={}", data.n),
                    ));
                }
            }
        }
    }
    Ok(PartialLatinSquare::from_rows(data.n, &data.grid))
}

pub fn framework_to_json(framework: &Framework) -> String {
    let lists = |lists: &[SymbolSet]| -> Vec<Vec<u16>> {
        lists
            .iter()
            .map(|l| l.iter().map(|s| s.value()).collect())
            .collect()
    };
    serde_json::to_string_pretty(&FrameworkJson {
        r: framework.r,
        s: framework.s,
        t: framework.t,
        row_lists: lists(&framework.row_lists),
        col_lists: lists(&framework.col_lists),
    })
    .expect("serialization cannot fail")
}

pub fn framework_from_json(text: &str) -> Result<Framework, ParseError> {
    let data: FrameworkJson =
        serde_json::from_str(text).map_err(|e| ParseError::new(e.line(), e.to_string()))?;
    if data.t == 0 {
        return Err(ParseError::new(1, "symbol universe t must be positive"));
    }
    if data.row_lists.len() != data.r || data.col_lists.len() != data.s {
        return Err(ParseError::new(1, "list counts do not match r and s"));
    }
    let to_sets = |lists: Vec<Vec<u16>>| -> Result<Vec<SymbolSet>, ParseError> {
        lists
            .into_iter()
            .map(|l| {
                l.into_iter()
                    .map(|v| {
                        if v == 0 || usize::from(v) > data.t {
                            Err(ParseError::new(
                                1,
                                format!("symbol {v} out of range 1..={}", data.t),
                            ))
                        } else {
                            Ok(Symbol::new(v))
                        }
                    })
                    .collect()
            })
            .collect()
    };
    Ok(Framework::new(
        data.r,
        data.s,
        data.t,
        to_sets(data.row_lists)?,
        to_sets(data.col_lists)?,
    ))
}

pub fn hypergraph_to_json(h: &Hypergraph) -> String {
    serde_json::to_string_pretty(&HypergraphJson {
        u: h.u,
        edges: h.edges.clone(),
    })
    .expect("serialization cannot fail")
}

pub fn hypergraph_from_json(text: &str) -> Result<Hypergraph, ParseError> {
    let data: HypergraphJson =
        serde_json::from_str(text).map_err(|e| ParseError::new(e.line(), e.to_string()))?;
    Ok(Hypergraph::new(data.u, data.edges))
}

fn is_json_path(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Reads a square from a path, picking text or JSON by extension.
pub fn read_pls_str(text: &str, json: bool) -> Result<PartialLatinSquare, ParseError> {
    if json {
        pls_from_json(text)
    } else {
        parse_pls(text)
    }
}

pub fn read_pls_path(path: &Path) -> Result<PartialLatinSquare, std::io::Error> {
    let text = std::fs::read_to_string(path)?;
    read_pls_str(&text, is_json_path(path)).map_err(io_invalid)
}

pub fn read_framework_path(path: &Path) -> Result<Framework, std::io::Error> {
    let text = std::fs::read_to_string(path)?;
    if is_json_path(path) {
        framework_from_json(&text).map_err(io_invalid)
    } else {
        parse_framework(&text).map_err(io_invalid)
    }
}

pub fn read_hypergraph_path(path: &Path) -> Result<Hypergraph, std::io::Error> {
    let text = std::fs::read_to_string(path)?;
    if is_json_path(path) {
        hypergraph_from_json(&text).map_err(io_invalid)
    } else {
        parse_hypergraph(&text).map_err(io_invalid)
    }
}

fn io_invalid(e: ParseError) -> std::io::Error {
    std::io::Error::new(std::io::ErrorKind::InvalidData, e.to_string())
}
