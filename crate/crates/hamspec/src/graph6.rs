//! Codec for the graph6 ASCII format.
//!
//! A graph6 string is a vertex count followed by the upper triangle of the
//! adjacency matrix, packed column by column: bits x(0,1), x(0,2), x(1,2),
//! x(0,3), ... are grouped into 6-bit chunks (MSB first, zero-padded at the
//! end) and each chunk is stored as one printable byte `value + 63`.
//! Counts up to 62 use a single leading byte `n + 63`; larger counts use a
//! `~` marker followed by an 18-bit big-endian count.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty input")]
    Empty,
    #[error("invalid byte 0x{byte:02x} at position {pos}; graph6 uses ASCII 63..=126")]
    BadCharacter { pos: usize, byte: u8 },
    #[error("truncated input: expected {expected} bytes, got {got}")]
    Truncated { expected: usize, got: usize },
    #[error("trailing data after the adjacency bits")]
    TrailingData,
    #[error("padding bits after the last pair must be zero")]
    NonzeroPadding,
    #[error("vertex count {n} exceeds the supported maximum of {MAX_VERTICES}")]
    TooLarge { n: u64 },
    #[error("graphs on {n} vertices cannot be encoded in the short form")]
    UnsupportedEncode { n: usize },
    #[error("vertex count 0 is not a valid graph")]
    ZeroVertices,
}

/// File-level wrapper: the same parse failures, tagged with a line number.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {source}")]
pub struct Graph6FileError {
    pub line: usize,
    pub source: Graph6Error,
}

fn check_bytes(s: &[u8]) -> Result<(), Graph6Error> {
    for (pos, &byte) in s.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadCharacter { pos, byte });
        }
    }
    Ok(())
}

/// Splits the leading vertex count; returns `(n, rest)`.
fn parse_order(s: &[u8]) -> Result<(usize, &[u8]), Graph6Error> {
    match s {
        [] => Err(Graph6Error::Empty),
        [b'~', b'~', ..] => {
            // 8-byte form for n >= 258048: always beyond our 64-vertex cap.
            // Decode the count only to report it.
            if s.len() < 8 {
                return Err(Graph6Error::Truncated { expected: 8, got: s.len() });
            }
            let mut n: u64 = 0;
            for &b in &s[2..8] {
                n = n << 6 | u64::from(b - 63);
            }
            Err(Graph6Error::TooLarge { n })
        }
        [b'~', rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::Truncated { expected: 4, got: s.len() });
            }
            let n = (u64::from(rest[0] - 63) << 12)
                | (u64::from(rest[1] - 63) << 6)
                | u64::from(rest[2] - 63);
            if n > MAX_VERTICES as u64 {
                return Err(Graph6Error::TooLarge { n });
            }
            if n == 0 {
                return Err(Graph6Error::ZeroVertices);
            }
            Ok((n as usize, &rest[3..]))
        }
        [first, rest @ ..] => {
            let n = usize::from(first - 63);
            if n == 0 {
                return Err(Graph6Error::ZeroVertices);
            }
            Ok((n, rest))
        }
    }
}

/// Decodes one graph6 string (no surrounding whitespace).
pub fn parse_graph6(s: &str) -> Result<Graph, Graph6Error> {
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    check_bytes(bytes)?;
    let (n, body) = parse_order(bytes)?;
    let pairs = n * (n - 1) / 2;
    let expected = pairs.div_ceil(6);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected: bytes.len() - body.len() + expected,
            got: bytes.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData);
    }
    let mut g = Graph::new(n).expect("order already validated");
    let mut t = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let chunk = u32::from(body[t / 6] - 63);
            if chunk >> (5 - t % 6) & 1 == 1 {
                g.add_edge(i, j).expect("i < j < n");
            }
            t += 1;
            if t == pairs {
                break 'outer;
            }
        }
    }
    if pairs % 6 != 0 {
        let last = u32::from(body[pairs / 6] - 63);
        let pad = 6 - pairs % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(g)
}

/// Encodes in the short form, which covers `n <= 62`.
pub fn encode_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > 62 {
        return Err(Graph6Error::UnsupportedEncode { n });
    }
    let pairs = n * (n - 1) / 2;
    let mut out = vec![63 + n as u8];
    out.resize(1 + pairs.div_ceil(6), 63);
    let mut t = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                out[1 + t / 6] += 1 << (5 - t % 6);
            }
            t += 1;
        }
    }
    Ok(String::from_utf8(out).expect("all bytes printable"))
}

/// Parses a graph6 file: one graph per line, blank lines skipped, an
/// optional `>>graph6<<` header on the first non-blank line, CRLF tolerated.
pub fn parse_graph6_file(text: &str) -> Result<Vec<Graph>, Graph6FileError> {
    let mut graphs = Vec::new();
    let mut header_allowed = true;
    for (idx, raw) in text.lines().enumerate() {
        let mut line = raw.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        if header_allowed {
            header_allowed = false;
            if let Some(rest) = line.strip_prefix(">>graph6<<") {
                line = rest;
                if line.is_empty() {
                    continue;
                }
            }
        }
        let g = parse_graph6(line).map_err(|source| Graph6FileError { line: idx + 1, source })?;
        graphs.push(g);
    }
    Ok(graphs)
}
