//! graph6 encoding for undirected graphs.
//!
//! Supported size classes: `n <= 62` (one byte) and `n <= 258047` (`~` plus
//! three bytes). Body bits follow the upper triangle column by column:
//! `(0,1), (0,2), (1,2), (0,3), ...`, six bits per printable byte.

use pendant_spectra_core::Graph;
use thiserror::Error;

pub const HEADER: &str = ">>graph6<<";

/// Largest order representable in the supported size classes.
pub const MAX_ORDER: usize = 258_047;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("malformed size header: {0}")]
    MalformedHeader(&'static str),
    #[error("body has {found} bytes, expected {expected}")]
    TruncatedBody { expected: usize, found: usize },
    #[error("body has {found} bytes, expected {expected}")]
    TrailingData { expected: usize, found: usize },
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    InvalidCharacter { byte: u8, offset: usize },
    #[error("order {0} exceeds the supported graph6 size classes")]
    SizeUnsupported(usize),
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some((offset, &byte)) = bytes.iter().enumerate().find(|(_, b)| !(63..=126).contains(*b)) {
        return Err(Graph6Error::InvalidCharacter { byte, offset });
    }
    let (n, body) = match bytes {
        [] => return Err(Graph6Error::MalformedHeader("empty input")),
        [b'~', b'~', ..] => return Err(Graph6Error::MalformedHeader("8-byte size class is not supported")),
        [b'~', rest @ ..] => {
            if rest.len() < 3 {
                return Err(Graph6Error::MalformedHeader("truncated 3-byte size"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | usize::from(b - 63));
            if n < 63 {
                return Err(Graph6Error::MalformedHeader("3-byte size below 63"));
            }
            (n, &rest[3..])
        }
        [first, rest @ ..] => (usize::from(first - 63), rest),
    };

    let expected = body_len(n);
    if body.len() < expected {
        return Err(Graph6Error::TruncatedBody {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingData {
            expected,
            found: body.len(),
        });
    }

    let mut pairs = Vec::new();
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                pairs.push((i, j));
            }
            bit += 1;
        }
    }
    Ok(Graph::from_edge_list(n, &pairs).expect("graph6 bits describe a simple graph"))
}

pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(Graph6Error::SizeUnsupported(n));
    }
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(b'~');
        out.extend([12, 6, 0].map(|s| ((n >> s) & 0x3f) as u8 + 63));
    }
    let mut bits = vec![0u8; body_len(n)];
    for &(u, v) in g.edges() {
        // Column v, row u < v.
        let bit = v * (v - 1) / 2 + u;
        bits[bit / 6] |= 1 << (5 - bit % 6);
    }
    out.extend(bits.into_iter().map(|b| b + 63));
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}
