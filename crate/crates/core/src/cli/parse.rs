//! Text input formats.
//!
//! * Edge list: first line `n m`, then `m` lines `u v` with 1-based vertices.
//! * Matrix: first line `rows cols`, then `rows` lines of `cols`
//!   whitespace-separated decimals.
//! * Partition: one block per line, 1-based elements separated by spaces.
//!
//! Blank lines are ignored everywhere. Errors carry the 1-based line number.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::DenseMatrix;
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    GraphEdgeList,
    Matrix,
    /// A partition of `1..=ground`.
    Partition {
        ground: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    Graph(Graph),
    Matrix(DenseMatrix),
    Partition(Partition),
}

pub fn parse_input(text: &str, kind: InputKind) -> Result<Input> {
    Ok(match kind {
        InputKind::GraphEdgeList => Input::Graph(parse_graph(text)?),
        InputKind::Matrix => Input::Matrix(parse_matrix(text)?),
        InputKind::Partition { ground } => Input::Partition(parse_partition(text, ground)?),
    })
}

pub fn parse_inputs(path: &Path, kind: InputKind) -> Result<Input> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_input(&text, kind).map_err(|e| match e {
        Error::Parse { line, message } => Error::Parse {
            line,
            message: format!("{}: {message}", path.display()),
        },
        other => other,
    })
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: usize, text: &str, what: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = text.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(err(line, format!("malformed header: expected \"{what}\"")));
    }
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|_| {
            err(
                line,
                format!("malformed header: {s:?} is not a nonnegative integer"),
            )
        })
    };
    Ok((parse(fields[0])?, parse(fields[1])?))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing header \"n m\""))?;
    let (n, m) = parse_header(hline, header, "n m")?;
    let mut seen = std::collections::BTreeSet::new();
    let mut edges = Vec::with_capacity(m);
    for (line, content) in lines.by_ref() {
        if edges.len() == m {
            return Err(err(line, format!("more than the {m} declared edges")));
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(err(line, "expected an edge \"u v\""));
        }
        let mut ends = [0usize; 2];
        for (slot, field) in ends.iter_mut().zip(&fields) {
            let v: usize = field
                .parse()
                .map_err(|_| err(line, format!("{field:?} is not a vertex")))?;
            if v == 0 || v > n {
                return Err(err(line, format!("vertex {v} outside 1..={n}")));
            }
            *slot = v - 1;
        }
        let (u, v) = (ends[0], ends[1]);
        if u == v {
            return Err(err(line, format!("self-loop at vertex {}", u + 1)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(
                line,
                format!("duplicate edge {{{}, {}}}", u + 1, v + 1),
            ));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(err(
            hline,
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    Graph::new(n, edges)
}

pub fn parse_matrix(text: &str) -> Result<DenseMatrix> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing header \"rows cols\""))?;
    let (rows, cols) = parse_header(hline, header, "rows cols")?;
    let mut data = Vec::with_capacity(rows * cols);
    let mut seen_rows = 0;
    for (line, content) in lines {
        if seen_rows == rows {
            return Err(err(line, format!("more than the {rows} declared rows")));
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != cols {
            return Err(err(
                line,
                format!("expected {cols} entries, found {}", fields.len()),
            ));
        }
        for field in fields {
            let x: f64 = field
                .parse()
                .map_err(|_| err(line, format!("non-numeric entry {field:?}")))?;
            if !x.is_finite() {
                return Err(err(line, format!("non-finite entry {field:?}")));
            }
            data.push(x);
        }
        seen_rows += 1;
    }
    if seen_rows != rows {
        return Err(err(
            hline,
            format!("header declares {rows} rows but {seen_rows} were given"),
        ));
    }
    DenseMatrix::new(rows, cols, data)
}

pub fn parse_partition(text: &str, ground: usize) -> Result<Partition> {
    let mut owner: Vec<Option<usize>> = vec![None; ground];
    let mut blocks = Vec::new();
    let mut last_line = 1;
    for (line, content) in content_lines(text) {
        last_line = line;
        let mut block = Vec::new();
        for field in content.split_whitespace() {
            let v: usize = field
                .parse()
                .map_err(|_| err(line, format!("{field:?} is not an element")))?;
            if v == 0 || v > ground {
                return Err(err(line, format!("element {v} outside 1..={ground}")));
            }
            if let Some(first) = owner[v - 1] {
                return Err(err(
                    line,
                    format!("element {v} already appears on line {first}"),
                ));
            }
            owner[v - 1] = Some(line);
            block.push(v - 1);
        }
        blocks.push(block);
    }
    if let Some(v) = owner.iter().position(Option::is_none) {
        return Err(err(
            last_line,
            format!("element {} is not in any block", v + 1),
        ));
    }
    Partition::new(ground, blocks)
}
