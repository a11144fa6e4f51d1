//! The graph6 line format: a printable-ASCII encoding of a labeled simple
//! graph.
//!
//! A line is `N(n)` followed by the upper-triangle adjacency bits in
//! column-major order (pairs `(i, j)` with `i < j`, ordered by `j` then
//! `i`), packed into 6-bit groups, each group offset by 63, zero-padded to a
//! multiple of six bits. `N(n)` is the single byte `n + 63` for `n <= 62`;
//! the multi-byte extended form is out of scope here, as are sparse6 and
//! digraph6.

use reconlab::Graph;
use thiserror::Error;

/// Largest vertex count the single-byte length form can carry.
pub const GRAPH6_MAX_VERTICES: usize = 62;

/// Optional line prefix some tools emit.
pub const GRAPH6_HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,

    #[error("extended length prefix at byte {offset} is not supported (n > 62)")]
    ExtendedLength { offset: usize },

    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    InvalidByte { byte: u8, offset: usize },

    #[error("graph6 line encodes a graph on 0 vertices")]
    ZeroVertices,

    #[error("payload ends at byte {offset}: expected {expected} payload bytes, found {found}")]
    Truncated { offset: usize, expected: usize, found: usize },

    #[error("trailing data at byte {offset} after a complete payload")]
    TrailingData { offset: usize },

    #[error("nonzero padding bits in the final payload byte at offset {offset}")]
    NonzeroPadding { offset: usize },

    #[error("graph on {n} vertices exceeds the graph6 single-byte limit of {max}")]
    TooLarge { n: usize, max: usize },
}

/// Decodes one graph6 line; an optional `>>graph6<<` header and trailing
/// whitespace are stripped.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.trim_end();
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }

    let first = bytes[0];
    if first == 126 {
        return Err(Graph6Error::ExtendedLength { offset: 0 });
    }
    if !(63..=125).contains(&first) {
        return Err(Graph6Error::InvalidByte { byte: first, offset: 0 });
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(Graph6Error::ZeroVertices);
    }

    let bit_count = n * (n - 1) / 2;
    let expected = bit_count.div_ceil(6);
    let payload = &bytes[1..];
    if payload.len() < expected {
        return Err(Graph6Error::Truncated {
            offset: bytes.len(),
            expected,
            found: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingData { offset: 1 + expected });
    }

    let mut bits = Vec::with_capacity(expected * 6);
    for (k, &byte) in payload.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::InvalidByte { byte, offset: 1 + k });
        }
        let group = byte - 63;
        for shift in (0..6).rev() {
            bits.push((group >> shift) & 1 == 1);
        }
    }
    if bits[bit_count..].iter().any(|&b| b) {
        return Err(Graph6Error::NonzeroPadding { offset: bytes.len() - 1 });
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("decoded edges are in range"))
}

/// Encodes a graph as one graph6 line; bit-exact inverse of
/// [`parse_graph6`].
pub fn emit_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.vertex_count();
    if n > GRAPH6_MAX_VERTICES {
        return Err(Graph6Error::TooLarge { n, max: GRAPH6_MAX_VERTICES });
    }
    let mut out = String::new();
    out.push((n as u8 + 63) as char);

    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push((group + 63) as char);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        out.push((group + 63) as char);
    }
    Ok(out)
}
