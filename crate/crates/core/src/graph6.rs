//! graph6 text format (orders up to 62 use a single size byte; we cap at 32).
//!
//! Bits are the upper triangle of the adjacency matrix in column order
//! `x(0,1) x(0,2) x(1,2) x(0,3) ...`, packed six to a byte, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(1 + (n * (n - 1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

pub fn decode(text: &str) -> Result<Graph> {
    let text = text.trim_end_matches(['\n', '\r']);
    let body = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = body.as_bytes();
    let malformed = |why: &str| Error::Graph6(format!("{why}: {body:?}"));
    let (&size, data) = bytes.split_first().ok_or_else(|| malformed("empty string"))?;
    if !(63..=126).contains(&size) {
        return Err(malformed("bad size byte"));
    }
    let n = (size - 63) as usize;
    if n == 0 || n > MAX_ORDER {
        return Err(Error::OrderOutOfRange(n));
    }
    let pairs = n * (n - 1) / 2;
    if data.len() != pairs.div_ceil(6) {
        return Err(malformed("wrong length"));
    }
    if let Some(b) = data.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!("byte {b} out of range in {body:?}")));
    }
    let bit_at = |k: usize| (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    // Padding bits must be zero for the encoding to be canonical.
    if (pairs..data.len() * 6).any(bit_at) {
        return Err(malformed("nonzero padding"));
    }
    let mut adj = [0; MAX_ORDER];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit_at(k) {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows(n, adj))
}
