//! JSON input documents, composition expressions and presentation export.
//!
//! A document is one JSON object with a `kind` tag:
//!
//! ```json
//! {"kind": "cube", "dim": 3}
//! {"kind": "simplex", "dim": 2}
//! {"kind": "globe", "dim": 4}
//! {"kind": "graph", "vertices": ["a", "b"],
//!  "edges": [{"name": "u", "source": "a", "target": "b"}]}
//! {"kind": "semicubical", "cells": [{"name": "x", "dim": 1, "minus": ["a"], "plus": ["b"]}]}
//! {"kind": "presentation", "generators": [
//!   {"name": "a", "dim": 0}, {"name": "b", "dim": 0},
//!   {"name": "u", "dim": 1, "source": "a", "target": "b"}]}
//! ```
//!
//! Expressions are generator names, `x *p y` (left associative, all levels
//! at the same precedence), parentheses, and boundaries `s<p>(e)` / `t<p>(e)`.
//! `R(w)` names a generator verbatim, for cube faces such as `R(-0+)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::build::{build, BuildOptions, PresentedGenerator, Scheme, SemiCubicalCell};
use super::{ElemId, OmegaCat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Name(String),
    Compose(Box<Expr>, usize, Box<Expr>),
    Boundary { minus: bool, level: usize, inner: Box<Expr> },
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(n) if is_identifier(n) => write!(f, "{n}"),
            Expr::Name(n) => write!(f, "R({n})"),
            Expr::Compose(a, p, b) => {
                let paren = |e: &Expr| matches!(e, Expr::Compose(..));
                if paren(a) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                write!(f, " *{p} ")?;
                if paren(b) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
            Expr::Boundary { minus, level, inner } => {
                write!(f, "{}{level}({inner})", if *minus { 's' } else { 't' })
            }
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

/// Parses a composition expression. Errors carry the 1-based column.
pub fn parse_expression(text: &str) -> Result<Expr> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = lx.expr()?;
    lx.skip_ws();
    if lx.pos < lx.src.len() {
        return Err(lx.error("unexpected trailing input"));
    }
    Ok(e)
}

impl Lexer<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a level number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("level number too large"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.term()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let p = self.number()?;
            let right = self.term()?;
            left = Expr::Compose(Box::new(left), p, Box::new(right));
        }
        Ok(left)
    }

    fn term(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if is_ident_start(c) => {
                let start = self.pos;
                while self.pos < self.src.len() && is_ident_char(self.src[self.pos]) {
                    self.pos += 1;
                }
                let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if word == "R" && self.src.get(self.pos) == Some(&b'(') {
                    let open = self.pos + 1;
                    let Some(len) = self.src[open..].iter().position(|&b| b == b')') else {
                        return Err(self.error("expected ')'"));
                    };
                    self.pos = open + len + 1;
                    let raw = std::str::from_utf8(&self.src[open..open + len]).unwrap().trim();
                    return Ok(Expr::Name(raw.to_string()));
                }
                let boundary = word.len() > 1
                    && (word.starts_with('s') || word.starts_with('t'))
                    && word[1..].bytes().all(|b| b.is_ascii_digit())
                    && self.src.get(self.pos) == Some(&b'(');
                if boundary {
                    let level = word[1..]
                        .parse()
                        .map_err(|_| self.error("level number too large"))?;
                    self.pos += 1;
                    let inner = self.expr()?;
                    if self.peek() != Some(b')') {
                        return Err(self.error("expected ')'"));
                    }
                    self.pos += 1;
                    Ok(Expr::Boundary {
                        minus: word.starts_with('s'),
                        level,
                        inner: Box::new(inner),
                    })
                } else {
                    Ok(Expr::Name(word.to_string()))
                }
            }
            Some(_) => Err(self.error("expected a name, '(' or a boundary")),
            None => Err(self.error("unexpected end of expression")),
        }
    }
}

fn is_ident_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' || c == b'.'
}

fn is_identifier(s: &str) -> bool {
    let b = s.as_bytes();
    !b.is_empty() && is_ident_start(b[0]) && b.iter().all(|&c| is_ident_char(c))
}

/// Evaluates an expression against the named indecomposables of `cat`.
pub(crate) fn eval_expr(cat: &OmegaCat, e: &Expr) -> Result<ElemId> {
    match e {
        Expr::Name(n) => cat
            .find(n)
            .ok_or_else(|| Error::input(format!("unknown generator {n}"))),
        Expr::Compose(a, p, b) => {
            let (a, b) = (eval_expr(cat, a)?, eval_expr(cat, b)?);
            cat.compose(a, *p, b)
        }
        Expr::Boundary { minus, level, inner } => {
            Ok(cat.boundary(eval_expr(cat, inner)?, *level, *minus))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawEdge {
    name: String,
    source: String,
    target: String,
}

#[derive(Serialize, Deserialize)]
struct RawCell {
    name: String,
    dim: usize,
    #[serde(default)]
    minus: Vec<String>,
    #[serde(default)]
    plus: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct RawGenerator {
    name: String,
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<String>,
    /// Free-form display label, ignored on input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawDocument {
    Cube {
        name: Option<String>,
        dim: usize,
    },
    Simplex {
        name: Option<String>,
        dim: usize,
    },
    Globe {
        name: Option<String>,
        dim: usize,
    },
    Graph {
        name: Option<String>,
        vertices: Vec<String>,
        edges: Vec<RawEdge>,
    },
    Semicubical {
        name: Option<String>,
        cells: Vec<RawCell>,
    },
    Presentation {
        #[serde(skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        generators: Vec<RawGenerator>,
    },
}

#[derive(Deserialize)]
struct DimDoc {
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    name: Option<String>,
    dim: usize,
}

#[derive(Deserialize)]
struct GraphDoc {
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    name: Option<String>,
    vertices: Vec<String>,
    edges: Vec<RawEdge>,
}

#[derive(Deserialize)]
struct CellsDoc {
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    name: Option<String>,
    cells: Vec<RawCell>,
}

#[derive(Deserialize)]
struct PresentationDoc {
    #[allow(dead_code)]
    kind: String,
    #[serde(default)]
    name: Option<String>,
    generators: Vec<RawGenerator>,
}

/// A parsed input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub name: String,
    pub scheme: Scheme,
    text: String,
}

impl Document {
    /// Builds the category, reporting input errors at the offending name.
    pub fn build(&self, opts: BuildOptions) -> Result<OmegaCat> {
        let mut cat = build(&self.scheme, opts).map_err(|e| self.locate_error(e))?;
        cat.set_name(self.name.clone());
        Ok(cat)
    }

    fn names(&self) -> Vec<String> {
        match &self.scheme {
            Scheme::Graph { vertices, edges } => vertices
                .iter()
                .cloned()
                .chain(edges.iter().map(|e| e.0.clone()))
                .collect(),
            Scheme::SemiCubical(cells) => cells.iter().map(|c| c.name.clone()).collect(),
            Scheme::Presentation(g) => g.iter().map(|g| g.name.clone()).collect(),
            _ => Vec::new(),
        }
    }

    fn locate_error(&self, e: Error) -> Error {
        let message = match &e {
            Error::Input(m) | Error::Unsupported(m) | Error::CyclicSkeleton(m) => m.clone(),
            Error::Composition { .. } => e.to_string(),
            _ => return e,
        };
        let mut names = self.names();
        names.sort_by_key(|n| std::cmp::Reverse(n.len()));
        for n in names {
            let mentioned = message
                .split(|c: char| !(c.is_alphanumeric() || "_'.".contains(c)))
                .any(|w| w == n);
            if mentioned {
                if let Some((line, column)) = locate_name(&self.text, &n) {
                    return Error::Parse {
                        line,
                        column,
                        message: e.to_string(),
                    };
                }
            }
        }
        e
    }
}

/// Line and column of the first `"name": "<n>"` entry, else of the first `"<n>"`.
fn locate_name(text: &str, n: &str) -> Option<(usize, usize)> {
    let quoted = format!("\"{n}\"");
    let mut best = None;
    let mut from = 0;
    while let Some(off) = text[from..].find(&quoted) {
        let at = from + off;
        let before = text[..at].trim_end();
        if before.ends_with(':') && before[..before.len() - 1].trim_end().ends_with("\"name\"") {
            best = Some(at);
            break;
        }
        if best.is_none() {
            best = Some(at);
        }
        from = at + quoted.len();
    }
    best.map(|at| line_col(text, at))
}

fn line_col(text: &str, at: usize) -> (usize, usize) {
    let line = text[..at].matches('\n').count() + 1;
    let column = at - text[..at].rfind('\n').map(|i| i + 1).unwrap_or(0) + 1;
    (line, column)
}

/// Parses a JSON document. Syntax and schema errors report line and column.
pub fn parse_document(text: &str) -> Result<Document> {
    let located = |e: serde_json::Error| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    };
    let value: serde_json::Value = serde_json::from_str(text).map_err(located)?;
    let kind = value
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| Error::Parse {
            line: 1,
            column: 1,
            message: "document needs a string field \"kind\"".into(),
        })?;
    // typed re-parse of the text keeps line/column information for schema errors
    let raw = match kind {
        "cube" | "simplex" | "globe" => {
            let d: DimDoc = serde_json::from_str(text).map_err(located)?;
            match kind {
                "cube" => RawDocument::Cube { name: d.name, dim: d.dim },
                "simplex" => RawDocument::Simplex { name: d.name, dim: d.dim },
                _ => RawDocument::Globe { name: d.name, dim: d.dim },
            }
        }
        "graph" => {
            let d: GraphDoc = serde_json::from_str(text).map_err(located)?;
            RawDocument::Graph {
                name: d.name,
                vertices: d.vertices,
                edges: d.edges,
            }
        }
        "semicubical" => {
            let d: CellsDoc = serde_json::from_str(text).map_err(located)?;
            RawDocument::Semicubical {
                name: d.name,
                cells: d.cells,
            }
        }
        "presentation" => {
            let d: PresentationDoc = serde_json::from_str(text).map_err(located)?;
            RawDocument::Presentation {
                name: d.name,
                generators: d.generators,
            }
        }
        other => {
            let (line, column) = locate_name(text, other).unwrap_or((1, 1));
            return Err(Error::Parse {
                line,
                column,
                message: format!("unknown kind {other:?}"),
            });
        }
    };
    let expr = |src: &str, owner: &str| -> Result<Expr> {
        parse_expression(src).map_err(|e| match e {
            Error::Parse { column, message, .. } => {
                let (line, col) = locate_name(text, owner).unwrap_or((1, 1));
                let within = text
                    .find(&format!("\"{src}\""))
                    .map(|at| line_col(text, at + 1 + column - 1));
                let (line, column) = within.unwrap_or((line, col));
                Error::Parse {
                    line,
                    column,
                    message: format!("in expression {src:?} of {owner}: {message}"),
                }
            }
            other => other,
        })
    };
    let (name, scheme) = match raw {
        RawDocument::Cube { name, dim } => (name, Scheme::Cube(dim)),
        RawDocument::Simplex { name, dim } => (name, Scheme::Simplex(dim)),
        RawDocument::Globe { name, dim } => (name, Scheme::Globe(dim)),
        RawDocument::Graph {
            name,
            vertices,
            edges,
        } => (
            name,
            Scheme::Graph {
                vertices,
                edges: edges
                    .into_iter()
                    .map(|e| (e.name, e.source, e.target))
                    .collect(),
            },
        ),
        RawDocument::Semicubical { name, cells } => (
            name,
            Scheme::SemiCubical(
                cells
                    .into_iter()
                    .map(|c| SemiCubicalCell {
                        name: c.name,
                        dim: c.dim,
                        minus: c.minus,
                        plus: c.plus,
                    })
                    .collect(),
            ),
        ),
        RawDocument::Presentation { name, generators } => {
            let mut gens = Vec::with_capacity(generators.len());
            for g in generators {
                if !is_identifier(&g.name) {
                    let (line, column) = locate_name(text, &g.name).unwrap_or((1, 1));
                    return Err(Error::Parse {
                        line,
                        column,
                        message: format!("generator name {:?} is not an identifier", g.name),
                    });
                }
                let source = g.source.as_deref().map(|s| expr(s, &g.name)).transpose()?;
                let target = g.target.as_deref().map(|s| expr(s, &g.name)).transpose()?;
                gens.push(PresentedGenerator {
                    name: g.name,
                    dim: g.dim,
                    source,
                    target,
                });
            }
            (name, Scheme::Presentation(gens))
        }
    };
    let name = name.unwrap_or_else(|| scheme.default_name());
    Ok(Document {
        name,
        scheme,
        text: text.to_string(),
    })
}

/// Writes `cat` as a presentation document on its indecomposables.
pub fn export_presentation(cat: &OmegaCat) -> String {
    let gens = cat.indecomposables();
    let mut export_name = std::collections::HashMap::new();
    let mut used = std::collections::HashSet::new();
    for &g in &gens {
        let base = cat
            .generator_name(g)
            .filter(|n| is_identifier(n) && !is_boundary_word(n))
            .map(str::to_string)
            .unwrap_or_else(|| format!("g{g}"));
        let mut n = base.clone();
        let mut k = 1;
        while !used.insert(n.clone()) {
            n = format!("{base}_{k}");
            k += 1;
        }
        export_name.insert(g, n);
    }
    fn expr_of(
        cat: &OmegaCat,
        x: ElemId,
        names: &std::collections::HashMap<ElemId, String>,
    ) -> Expr {
        match cat.decomposition(x) {
            None => Expr::Name(names[&x].clone()),
            Some((a, p, b)) => Expr::Compose(
                Box::new(expr_of(cat, a, names)),
                p,
                Box::new(expr_of(cat, b, names)),
            ),
        }
    }
    let generators = gens
        .iter()
        .map(|&g| {
            let d = cat.dim(g);
            let (source, target) = if d == 0 {
                (None, None)
            } else {
                (
                    Some(expr_of(cat, cat.src(g, d - 1), &export_name).to_string()),
                    Some(expr_of(cat, cat.tgt(g, d - 1), &export_name).to_string()),
                )
            };
            RawGenerator {
                name: export_name[&g].clone(),
                dim: d,
                source,
                target,
                label: Some(cat.label(g)),
            }
        })
        .collect();
    let doc = RawDocument::Presentation {
        name: Some(cat.name().to_string()),
        generators,
    };
    serde_json::to_string_pretty(&doc).expect("presentation serializes")
}

fn is_boundary_word(n: &str) -> bool {
    n.len() > 1 && (n.starts_with('s') || n.starts_with('t')) && n[1..].bytes().all(|b| b.is_ascii_digit())
}

/// Convenience: parse and build in one step.
pub fn load(text: &str, opts: BuildOptions) -> Result<OmegaCat> {
    parse_document(text)?.build(opts)
}
