//! graph6 encoding as produced by nauty's `geng` and friends.
//!
//! A record is one length byte `n + 63` followed by the upper triangle of the
//! adjacency matrix in column order `(0,1), (0,2), (1,2), (0,3), ...`, packed
//! six bits per byte (most significant first), each byte offset by 63.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::{Graph, MAX_ORDER};

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("invalid length byte {0:#04x}")]
    BadLength(u8),
    #[error("graph6 order {0} is not supported (maximum {MAX_ORDER})")]
    UnsupportedOrder(usize),
    #[error("byte {byte:#04x} at position {position} is outside the graph6 alphabet")]
    BadByte { position: usize, byte: u8 },
    #[error("expected {expected} data bytes, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("non-zero padding bits in the final byte")]
    NonZeroPadding,
}

fn data_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Decodes one graph6 record. Surrounding whitespace and an optional
/// `>>graph6<<` header are ignored.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.trim();
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let (&first, data) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if !(OFFSET..=126).contains(&first) {
        // 126 ('~') introduces the long form for n > 62
        return Err(Graph6Error::BadLength(first));
    }
    if first == 126 {
        return Err(Graph6Error::UnsupportedOrder(decode_long_order(data)));
    }
    let n = (first - OFFSET) as usize;
    if n == 0 || n > MAX_ORDER {
        return Err(Graph6Error::UnsupportedOrder(n));
    }
    let expected = data_len(n);
    if data.len() != expected {
        return Err(Graph6Error::WrongLength { expected, found: data.len() });
    }
    let mut g = Graph::empty(n).expect("order checked above");
    let mut bit = 0usize;
    for (k, &b) in data.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(Graph6Error::BadByte { position: k + 1, byte: b });
        }
        let v = b - OFFSET;
        for shift in (0..6).rev() {
            if v >> shift & 1 == 1 {
                let Some((i, j)) = column_pair(bit, n) else {
                    return Err(Graph6Error::NonZeroPadding);
                };
                g.set_edge(i, j);
            }
            bit += 1;
        }
    }
    Ok(g)
}

/// Order announced by a long-form header, for error reporting only.
fn decode_long_order(data: &[u8]) -> usize {
    if data.len() >= 3 && data[0] != 126 {
        data[..3].iter().fold(0, |acc, &b| acc << 6 | b.saturating_sub(OFFSET) as usize)
    } else {
        usize::MAX
    }
}

/// Maps a position in the column-major bit stream to its vertex pair.
fn column_pair(bit: usize, n: usize) -> Option<(usize, usize)> {
    // column j holds j bits, so column j starts at j(j-1)/2
    let mut j = 1;
    let mut start = 0;
    while j < n {
        if bit < start + j {
            return Some((bit - start, j));
        }
        start += j;
        j += 1;
    }
    None
}

/// Encodes the labeled adjacency of `g`.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + OFFSET);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

/// One line of a graph6 stream that failed to decode.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {error}")]
pub struct LineError {
    pub line: usize,
    pub error: Graph6Error,
}

/// Decodes a graph6 stream; blank lines are skipped and line numbers are 1-based.
pub fn read_graph6<R: BufRead>(reader: R) -> impl Iterator<Item = std::io::Result<(usize, Result<Graph, LineError>)>> {
    reader.lines().enumerate().filter_map(|(idx, line)| match line {
        Err(e) => Some(Err(e)),
        Ok(l) if l.trim().is_empty() => None,
        Ok(l) => {
            let line = idx + 1;
            Some(Ok((line, parse_graph6(&l).map_err(|error| LineError { line, error }))))
        }
    })
}
