//! Plain-text file formats. All files speak 1-based vertex labels; lines
//! starting with `#` are comments.
//!
//! * labeling: `n`, then `n(n-1)/2` lines `u v s` with `u < v` and `s` one
//!   of `+1`/`-1`, lexicographic by `(u, v)`.
//! * forest or subgraph: `n m`, then `m` lines `u v` with `u < v`.
//! * embedding: `n`, then one line of `n` integers; position `u` holds the
//!   image of forest vertex `u`.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::forest::SimpleEdgeGraph;
use crate::graph::{EdgeLabeling, Embedding, SpanningForest};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn malformed(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::MalformedInput(format!("line {line}: {msg}"))
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| malformed(line, format!("expected an integer, found {tok:?}")))
}

fn one_based(line: usize, v: usize, n: usize) -> Result<usize> {
    if v == 0 || v > n {
        return Err(malformed(line, format!("vertex {v} out of range 1..={n}")));
    }
    Ok(v - 1)
}

pub fn parse_labeling(text: &str) -> Result<EdgeLabeling> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedInput("empty labeling file".into()))?;
    let n: usize = parse_num(ln, header)?;
    let mut triples = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [u, v, s] = toks[..] else {
            return Err(malformed(ln, "expected `u v s`"));
        };
        let u = one_based(ln, parse_num(ln, u)?, n)?;
        let v = one_based(ln, parse_num(ln, v)?, n)?;
        let s: i64 = match s {
            "+1" | "1" => 1,
            "-1" => -1,
            other => return Err(malformed(ln, format!("label {other:?} is not +1 or -1"))),
        };
        triples.push((u, v, s));
    }
    EdgeLabeling::from_triples(n, triples)
}

/// `comments` are written as leading `#` lines.
pub fn write_labeling(labeling: &EdgeLabeling, comments: &[String]) -> String {
    let mut out = String::with_capacity(labeling.edge_count() * 10 + 16);
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{}", labeling.n());
    for (u, v, s) in labeling.triples() {
        let _ = writeln!(out, "{} {} {}", u + 1, v + 1, if s > 0 { "+1" } else { "-1" });
    }
    out
}

fn parse_edge_list(text: &str) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedInput("empty graph file".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = toks[..] else {
        return Err(malformed(ln, "expected `n m`"));
    };
    let n: usize = parse_num(ln, n)?;
    let m: usize = parse_num(ln, m)?;
    let mut edges = Vec::with_capacity(m);
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let [u, v] = toks[..] else {
            return Err(malformed(ln, "expected `u v`"));
        };
        let u = one_based(ln, parse_num(ln, u)?, n)?;
        let v = one_based(ln, parse_num(ln, v)?, n)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::MalformedInput(format!(
            "header declares {m} edges, found {}",
            edges.len()
        )));
    }
    Ok((n, edges))
}

pub fn parse_forest(text: &str) -> Result<SpanningForest> {
    let (n, edges) = parse_edge_list(text)?;
    SpanningForest::new(n, edges)
}

pub fn parse_graph(text: &str) -> Result<SimpleEdgeGraph> {
    let (n, edges) = parse_edge_list(text)?;
    SimpleEdgeGraph::new(n, edges)
}

pub fn write_graph(graph: &SimpleEdgeGraph, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "{} {}", graph.n(), graph.edge_count());
    for &(u, v) in graph.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

pub fn write_forest(forest: &SpanningForest, comments: &[String]) -> String {
    write_graph(forest.as_graph(), comments)
}

pub fn parse_embedding(text: &str) -> Result<Embedding> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::MalformedInput("empty embedding file".into()))?;
    let n: usize = parse_num(ln, header)?;
    let mut pi = Vec::with_capacity(n);
    for (ln, line) in lines {
        for tok in line.split_whitespace() {
            pi.push(one_based(ln, parse_num(ln, tok)?, n)?);
        }
    }
    if pi.len() != n {
        return Err(Error::MalformedInput(format!(
            "expected {n} images, found {}",
            pi.len()
        )));
    }
    Embedding::new(pi)
}

pub fn write_embedding(emb: &Embedding) -> String {
    let images: Vec<String> = emb.as_slice().iter().map(|v| (v + 1).to_string()).collect();
    format!("{}\n{}\n", emb.n(), images.join(" "))
}

pub fn read_labeling(path: &Path) -> Result<EdgeLabeling> {
    parse_labeling(&read(path)?)
}

pub fn read_forest(path: &Path) -> Result<SpanningForest> {
    parse_forest(&read(path)?)
}

pub fn read_graph(path: &Path) -> Result<SimpleEdgeGraph> {
    parse_graph(&read(path)?)
}

pub fn read_embedding(path: &Path) -> Result<Embedding> {
    parse_embedding(&read(path)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
