//! graph6 text encoding, bit-exact per the published format.
//!
//! Bits of the upper triangle are taken column by column: x(0,1), x(0,2),
//! x(1,2), x(0,3), ... and packed big-endian into 6-bit groups offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258047 {
        out.push(126);
        out.push(63 + ((n >> 12) & 63) as u8);
        out.push(63 + ((n >> 6) & 63) as u8);
        out.push(63 + (n & 63) as u8);
    } else {
        out.push(126);
        out.push(126);
        for shift in (0..36).rev().step_by(6) {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    }
}

pub fn graph6_encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            bits += 1;
            if bits == 6 {
                out.push(63 + acc);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(63 + (acc << (6 - bits)));
    }
    String::from_utf8(out).expect("graph6 bytes are ascii")
}

pub fn graph6_decode(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let err = |offset: usize, msg: &str| Error::Parse {
        offset,
        msg: msg.to_string(),
    };
    if bytes.is_empty() {
        return Err(err(0, "empty input"));
    }
    let pos;
    let val = |b: u8, at: usize| -> Result<usize> {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse {
                offset: at,
                msg: format!("byte {b} outside graph6 range 63..=126"),
            });
        }
        Ok((b - 63) as usize)
    };
    let n = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            if bytes.len() < 8 {
                return Err(err(bytes.len(), "truncated 8-byte order field"));
            }
            pos = 8;
            let mut n = 0usize;
            for (i, &b) in bytes[2..8].iter().enumerate() {
                n = (n << 6) | val(b, 2 + i)?;
            }
            n
        } else {
            if bytes.len() < 4 {
                return Err(err(bytes.len(), "truncated 4-byte order field"));
            }
            pos = 4;
            let mut n = 0usize;
            for (i, &b) in bytes[1..4].iter().enumerate() {
                n = (n << 6) | val(b, 1 + i)?;
            }
            n
        }
    } else {
        pos = 1;
        val(bytes[0], 0)?
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = (nbits + 5) / 6;
    if bytes.len() - pos != nbytes {
        return Err(Error::Parse {
            offset: bytes.len().min(pos + nbytes),
            msg: format!(
                "expected {} edge bytes for n={}, found {}",
                nbytes,
                n,
                bytes.len() - pos
            ),
        });
    }
    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    let mut cur = 0usize;
    for j in 1..n {
        for i in 0..j {
            if bit % 6 == 0 {
                cur = val(bytes[pos + bit / 6], pos + bit / 6)?;
            }
            if cur & (1 << (5 - bit % 6)) != 0 {
                g.add_edge(i, j);
            }
            bit += 1;
        }
    }
    // trailing padding bits must be zero
    if nbits % 6 != 0 {
        let last = val(bytes[pos + nbytes - 1], pos + nbytes - 1)?;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(err(pos + nbytes - 1, "nonzero padding bits"));
        }
    }
    Ok(g)
}
