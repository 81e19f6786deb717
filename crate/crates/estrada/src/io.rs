//! graph6 and plain edge-list formats.
//!
//! graph6 follows the standard encoding: a size prefix `N(n)` followed by the
//! upper triangle of the adjacency matrix, column by column
//! (`x(0,1) x(0,2) x(1,2) x(0,3) …`), packed six bits per byte with 63 added.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use estrada_core::graph::pair_count;
use estrada_core::{Graph, GraphError};

/// Largest order representable by graph6 (`2^36 - 1`).
pub const GRAPH6_MAX_ORDER: u64 = (1 << 36) - 1;
const GRAPH6_HEADER: &str = ">>graph6<<";
const SHORT_PREFIX_MAX: u64 = 62;
const MEDIUM_PREFIX_MAX: u64 = 258_047;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    Graph6Byte { offset: usize, byte: u8 },
    #[error("graph6 payload has {found} bytes, expected {expected}")]
    Graph6Length { expected: usize, found: usize },
    #[error("graph6 supports at most 2^36 - 1 vertices, got {0}")]
    Graph6Capacity(u64),
    #[error("empty graph6 line")]
    Graph6Empty,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
    #[error("declared {declared} edges but found {actual} distinct edges")]
    EdgeCount { declared: usize, actual: usize },
    #[error("{source_name}, line {line}: {inner}")]
    InDocument {
        source_name: String,
        line: usize,
        inner: Box<FormatError>,
    },
    #[error("{source_name}: {inner}")]
    InFile {
        source_name: String,
        inner: Box<FormatError>,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(
        "cannot infer the input format of `{0}`; use a .g6 or .el extension or pass --input-format"
    )]
    UnknownFormat(String),
}

fn check_byte(offset: usize, byte: u8) -> Result<u8, FormatError> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(FormatError::Graph6Byte { offset, byte })
    }
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and trailing
/// line terminators are ignored.
pub fn parse_graph6(line: &str) -> Result<Graph, FormatError> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let first = *bytes.first().ok_or(FormatError::Graph6Empty)?;

    let (n, body_start) = if first != 126 {
        (u64::from(check_byte(0, first)?), 1)
    } else if bytes.get(1) != Some(&126) {
        (read_size(bytes, 1, 3)?, 4)
    } else {
        (read_size(bytes, 2, 6)?, 8)
    };
    if n > GRAPH6_MAX_ORDER {
        return Err(FormatError::Graph6Capacity(n));
    }
    let n = usize::try_from(n).map_err(|_| FormatError::Graph6Capacity(n))?;
    let pairs = pair_count(n);
    let expected = pairs.div_ceil(6);
    let payload = &bytes[body_start..];
    if payload.len() != expected {
        return Err(FormatError::Graph6Length {
            expected,
            found: payload.len(),
        });
    }

    let mut edges = Vec::new();
    let (mut i, mut j) = (0usize, 1usize);
    let mut k = 0usize;
    for (offset, &byte) in payload.iter().enumerate() {
        let bits = check_byte(body_start + offset, byte)?;
        for shift in (0..6).rev() {
            if k == pairs {
                break;
            }
            if bits >> shift & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    Ok(Graph::new(n, edges).expect("graph6 pairs are in range and loop-free"))
}

fn read_size(bytes: &[u8], start: usize, len: usize) -> Result<u64, FormatError> {
    let digits = bytes
        .get(start..start + len)
        .ok_or(FormatError::Graph6Length {
            expected: start + len,
            found: bytes.len(),
        })?;
    digits.iter().enumerate().try_fold(0u64, |acc, (k, &b)| {
        Ok(acc << 6 | u64::from(check_byte(start + k, b)?))
    })
}

fn push_size(out: &mut String, n: u64, groups: u32) {
    for g in (0..groups).rev() {
        out.push(char::from((n >> (6 * g) & 0x3f) as u8 + 63));
    }
}

/// Canonical graph6 encoding (no header, no newline).
pub fn write_graph6(g: &Graph) -> Result<String, FormatError> {
    let n = g.n() as u64;
    let mut out = String::new();
    if n <= SHORT_PREFIX_MAX {
        out.push(char::from(n as u8 + 63));
    } else if n <= MEDIUM_PREFIX_MAX {
        out.push('~');
        push_size(&mut out, n, 3);
    } else if n <= GRAPH6_MAX_ORDER {
        out.push_str("~~");
        push_size(&mut out, n, 6);
    } else {
        return Err(FormatError::Graph6Capacity(n));
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..g.n() {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(char::from(acc + 63));
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(char::from((acc << (6 - filled)) + 63));
    }
    Ok(out)
}

/// Parses the plain edge-list format: a header `n m`, then `m` lines `i j`
/// with 0-based vertices. `#` starts a comment; blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(FormatError::Parse {
        line: 1,
        message: "missing `n m` header".into(),
    })?;
    let [n, declared] = parse_pair(header_line, header)?;

    let mut g_edges = Vec::new();
    for (line, body) in lines {
        let [i, j] = parse_pair(line, body)?;
        // validate per line so errors carry the line number
        Graph::new(n, [(i, j)]).map_err(|source| FormatError::Graph { line, source })?;
        g_edges.push((i, j));
    }
    let g = Graph::new(n, g_edges).expect("edges validated above");
    if g.m() != declared {
        return Err(FormatError::EdgeCount {
            declared,
            actual: g.m(),
        });
    }
    Ok(g)
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2], FormatError> {
    let fields: Vec<&str> = body.split_whitespace().collect();
    let malformed = || FormatError::Parse {
        line,
        message: format!("expected two non-negative integers, got `{body}`"),
    };
    if fields.len() != 2 {
        return Err(malformed());
    }
    let a = fields[0].parse().map_err(|_| malformed())?;
    let b = fields[1].parse().map_err(|_| malformed())?;
    Ok([a, b])
}

/// Writes `g` in the edge-list format.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (i, j) in g.edges() {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Graph6,
    EdgeList,
}

impl InputFormat {
    /// `.g6` → graph6, `.el` → edge list.
    pub fn sniff(path: &Path) -> Result<Self, FormatError> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("g6") => Ok(InputFormat::Graph6),
            Some("el") => Ok(InputFormat::EdgeList),
            _ => Err(FormatError::UnknownFormat(path.display().to_string())),
        }
    }
}

impl FromStr for InputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "g6" | "graph6" => Ok(InputFormat::Graph6),
            "el" | "edgelist" | "edge-list" => Ok(InputFormat::EdgeList),
            other => Err(format!(
                "unknown input format `{other}` (expected g6 or el)"
            )),
        }
    }
}

/// A graph together with where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDocument {
    pub source_name: String,
    /// 0-based ordinal within the source.
    pub index: usize,
    pub graph: Graph,
}

/// Parses every graph in `text`: one graph6 per non-blank line, or a single
/// edge-list graph.
pub fn parse_documents(
    source_name: &str,
    text: &str,
    format: InputFormat,
) -> Result<Vec<GraphDocument>, FormatError> {
    let wrap = |line: usize, e: FormatError| FormatError::InDocument {
        source_name: source_name.to_string(),
        line,
        inner: Box::new(e),
    };
    match format {
        InputFormat::Graph6 => text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && l.trim() != GRAPH6_HEADER)
            .enumerate()
            .map(|(index, (k, l))| {
                parse_graph6(l.trim())
                    .map_err(|e| wrap(k + 1, e))
                    .map(|graph| GraphDocument {
                        source_name: source_name.to_string(),
                        index,
                        graph,
                    })
            })
            .collect(),
        InputFormat::EdgeList => {
            let graph = parse_edge_list(text).map_err(|e| FormatError::InFile {
                source_name: source_name.to_string(),
                inner: Box::new(e),
            })?;
            Ok(vec![GraphDocument {
                source_name: source_name.to_string(),
                index: 0,
                graph,
            }])
        }
    }
}

/// Reads a graph file, sniffing the format from the extension unless given.
pub fn read_documents(
    path: &Path,
    format: Option<InputFormat>,
) -> Result<Vec<GraphDocument>, FormatError> {
    let format = match format {
        Some(f) => f,
        None => InputFormat::sniff(path)?,
    };
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_documents(&path.display().to_string(), &text, format)
}
