//! Text formats: edge lists, interval files, packing dumps and vector
//! solution dumps. Parsers report the offending line number; writers are
//! deterministic so identical inputs produce byte-identical files.

use crate::graph::Graph;
use crate::interval::IntervalModel;
use crate::packing::TrianglePacking;
use crate::sdp::VectorSolution;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError { line, message: message.into() }
    }
}

/// Strips `#` comments and yields `(1-based line number, content)` for
/// non-blank lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            None
        } else {
            Some((i + 1, stripped))
        }
    })
}

fn parse_token<T: std::str::FromStr>(
    token: &str,
    line: usize,
    what: &str,
) -> Result<T, ParseError> {
    token
        .parse::<T>()
        .map_err(|_| ParseError::new(line, format!("invalid {what}: {token:?}")))
}

/// Edge-list format: first content line `n m`, then `m` lines `u v` with
/// 0-based ids. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing header line `n m`"))?;
    let mut it = header.split_whitespace();
    let n: usize = parse_token(
        it.next().ok_or_else(|| ParseError::new(header_line, "missing vertex count"))?,
        header_line,
        "vertex count",
    )?;
    let m: usize = parse_token(
        it.next().ok_or_else(|| ParseError::new(header_line, "missing edge count"))?,
        header_line,
        "edge count",
    )?;
    if it.next().is_some() {
        return Err(ParseError::new(header_line, "header must be exactly `n m`"));
    }

    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        let mut it = content.split_whitespace();
        let u: usize = parse_token(
            it.next().ok_or_else(|| ParseError::new(line, "missing endpoint"))?,
            line,
            "endpoint",
        )?;
        let v: usize = parse_token(
            it.next().ok_or_else(|| ParseError::new(line, "missing endpoint"))?,
            line,
            "endpoint",
        )?;
        if it.next().is_some() {
            return Err(ParseError::new(line, "edge line must be exactly `u v`"));
        }
        if u >= n || v >= n {
            return Err(ParseError::new(line, format!("vertex id out of range 0..{n}")));
        }
        if u == v {
            return Err(ParseError::new(line, format!("self-loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::new(line, format!("duplicate edge ({u}, {v})")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::new(
            last_line,
            format!("header promised {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, edges).map_err(|e| ParseError::new(last_line, e.to_string()))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Interval-file format: first content line `n`, then `n` lines `id l r`
/// with half-open integer intervals. Every id in `0..n` must appear exactly
/// once.
pub fn parse_intervals(text: &str) -> Result<IntervalModel, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing header line `n`"))?;
    let n: usize = parse_token(header, header_line, "vertex count")?;

    let mut intervals: Vec<Option<(i64, i64)>> = vec![None; n];
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        let mut it = content.split_whitespace();
        let id: usize = parse_token(
            it.next().ok_or_else(|| ParseError::new(line, "missing id"))?,
            line,
            "id",
        )?;
        let l: i64 = parse_token(
            it.next().ok_or_else(|| ParseError::new(line, "missing left endpoint"))?,
            line,
            "left endpoint",
        )?;
        let r: i64 = parse_token(
            it.next().ok_or_else(|| ParseError::new(line, "missing right endpoint"))?,
            line,
            "right endpoint",
        )?;
        if it.next().is_some() {
            return Err(ParseError::new(line, "interval line must be exactly `id l r`"));
        }
        if id >= n {
            return Err(ParseError::new(line, format!("id {id} out of range 0..{n}")));
        }
        if intervals[id].is_some() {
            return Err(ParseError::new(line, format!("duplicate id {id}")));
        }
        if l >= r {
            return Err(ParseError::new(
                line,
                format!("empty interval [{l}, {r}) for id {id}"),
            ));
        }
        intervals[id] = Some((l, r));
    }
    let mut fixed = Vec::with_capacity(n);
    for (id, iv) in intervals.into_iter().enumerate() {
        match iv {
            Some(iv) => fixed.push(iv),
            None => {
                return Err(ParseError::new(last_line, format!("missing interval for id {id}")))
            }
        }
    }
    IntervalModel::new(fixed).map_err(|e| ParseError::new(last_line, e.to_string()))
}

pub fn write_intervals(m: &IntervalModel) -> String {
    let mut out = format!("{}\n", m.n());
    for (id, &(l, r)) in m.intervals().iter().enumerate() {
        out.push_str(&format!("{id} {l} {r}\n"));
    }
    out
}

/// Packing format: first content line `t`, then `t` lines `u v w`.
pub fn parse_packing(text: &str) -> Result<TrianglePacking, ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing header line `t`"))?;
    let t: usize = parse_token(header, header_line, "triangle count")?;
    let mut triples = Vec::with_capacity(t);
    for (line, content) in lines {
        let parts: Vec<&str> = content.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(ParseError::new(line, "triangle line must be exactly `u v w`"));
        }
        let mut tri = [0usize; 3];
        for (slot, tok) in tri.iter_mut().zip(&parts) {
            *slot = parse_token(tok, line, "vertex id")?;
        }
        triples.push(tri);
    }
    if triples.len() != t {
        return Err(ParseError::new(
            1,
            format!("header promised {t} triangles, found {}", triples.len()),
        ));
    }
    Ok(TrianglePacking::from_triples(triples))
}

pub fn write_packing(p: &TrianglePacking) -> String {
    let mut out = format!("{}\n", p.len());
    for t in p.triangles() {
        out.push_str(&format!("{} {} {}\n", t[0], t[1], t[2]));
    }
    out
}

/// Solution dump: header `n k`, then one line of `k` coordinates per vertex
/// with 17 significant digits (exact f64 round trip).
pub fn write_solution(sol: &VectorSolution) -> String {
    let mut out = format!("{} {}\n", sol.n(), sol.rank());
    for v in 0..sol.n() {
        let coords: Vec<String> = sol.vector(v).iter().map(|x| format!("{x:.16e}")).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}

/// Reads a solution dump back as `(rank, vectors)`.
pub fn parse_solution(text: &str) -> Result<(usize, Vec<Vec<f64>>), ParseError> {
    let mut lines = content_lines(text);
    let (header_line, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing header line `n k`"))?;
    let mut it = header.split_whitespace();
    let n: usize = parse_token(
        it.next().ok_or_else(|| ParseError::new(header_line, "missing vertex count"))?,
        header_line,
        "vertex count",
    )?;
    let k: usize = parse_token(
        it.next().ok_or_else(|| ParseError::new(header_line, "missing rank"))?,
        header_line,
        "rank",
    )?;
    let mut vectors = Vec::with_capacity(n);
    for (line, content) in lines {
        let coords: Result<Vec<f64>, ParseError> = content
            .split_whitespace()
            .map(|tok| parse_token(tok, line, "coordinate"))
            .collect();
        let coords = coords?;
        if coords.len() != k {
            return Err(ParseError::new(line, format!("expected {k} coordinates")));
        }
        vectors.push(coords);
    }
    if vectors.len() != n {
        return Err(ParseError::new(
            1,
            format!("header promised {n} vectors, found {}", vectors.len()),
        ));
    }
    Ok((k, vectors))
}
