//! graph6 encoding: an `N(n)` size header followed by the upper triangle
//! `x(0,1), x(0,2), x(1,2), x(0,3), …` packed big-endian into 6-bit groups,
//! each group offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + OFFSET);
    } else if n <= 258_047 {
        out.push(126);
        push_sextets(&mut out, n as u64, 3);
    } else {
        out.push(126);
        out.push(126);
        push_sextets(&mut out, n as u64, 6);
    }

    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn push_sextets(out: &mut Vec<u8>, value: u64, count: usize) {
    for k in (0..count).rev() {
        out.push(((value >> (6 * k)) & 0x3f) as u8 + OFFSET);
    }
}

fn malformed(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        reason: reason.into(),
    }
}

/// Decodes one graph6 line. An optional `>>graph6<<` header and a trailing
/// newline are accepted; anything else outside the format is an error.
pub fn decode(text: &str) -> Result<Graph> {
    let line = text.strip_suffix('\n').unwrap_or(text);
    let line = line.strip_suffix('\r').unwrap_or(line);
    let (bytes, base) = match line.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (line.as_bytes(), 0),
    };
    if let Some(pos) = bytes.iter().position(|&b| !(63..=126).contains(&b)) {
        return Err(malformed(
            base + pos,
            format!("byte 0x{:02x} outside 63..=126", bytes[pos]),
        ));
    }
    if bytes.is_empty() {
        return Err(malformed(base, "empty input"));
    }

    let (n, pos) = if bytes[0] != 126 {
        ((bytes[0] - OFFSET) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        (read_sextets(bytes, 2, 6, base)? as usize, 8)
    } else {
        (read_sextets(bytes, 1, 3, base)? as usize, 4)
    };

    let pairs = n * n.saturating_sub(1) / 2;
    let expected = pairs.div_ceil(6);
    let body = &bytes[pos..];
    if body.len() != expected {
        return Err(malformed(
            base + pos + body.len().min(expected),
            format!("expected {expected} data bytes for order {n}, found {}", body.len()),
        ));
    }

    let mut g = Graph::empty(n);
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            if (body[bit / 6] - OFFSET) & (0x20 >> (bit % 6)) != 0 {
                g.insert_edge(i, j);
            }
            bit += 1;
        }
    }
    if pairs % 6 != 0 {
        let last = bytes[bytes.len() - 1] - OFFSET;
        let pad_mask = (1u8 << (6 - pairs % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(malformed(base + bytes.len() - 1, "non-zero padding bits"));
        }
    }
    Ok(g)
}

fn read_sextets(bytes: &[u8], start: usize, count: usize, base: usize) -> Result<u64> {
    if bytes.len() < start + count {
        return Err(malformed(base + bytes.len(), "truncated size header"));
    }
    Ok(bytes[start..start + count]
        .iter()
        .fold(0u64, |acc, &b| (acc << 6) | (b - OFFSET) as u64))
}

/// Decodes every non-empty line of a graph6 file.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(decode).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_five_vertices() {
        assert_eq!(encode(&Graph::empty(5)), "D??");
    }

    #[test]
    fn known_encodings() {
        // K4: six ones -> 63 + 63 = '~'.
        assert_eq!(encode(&Graph::complete(4)), "C~");
        // Single edge 0-1 on two vertices: one bit, padded: 0b100000 = 32 -> '_'.
        assert_eq!(encode(&Graph::new(2, [(0, 1)]).unwrap()), "A_");
        assert_eq!(encode(&Graph::empty(0)), "?");
        let big = Graph::empty(63);
        let text = encode(&big);
        assert!(text.starts_with("~??~"));
        assert_eq!(decode(&text).unwrap(), big);
    }

    #[test]
    fn header_and_newline_accepted() {
        let g = Graph::cycle(5).unwrap();
        let text = format!(">>graph6<<{}\n", encode(&g));
        assert_eq!(decode(&text).unwrap(), g);
    }

    #[test]
    fn malformed_input_reports_offset() {
        match decode("not graph6 \x01") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(decode("D?"), Err(Error::Graph6 { .. })));
        assert!(matches!(decode("D???"), Err(Error::Graph6 { .. })));
        assert!(matches!(decode(""), Err(Error::Graph6 { offset: 0, .. })));
        // Order 2 uses one data bit; a set padding bit is malformed.
        assert!(matches!(decode("A`"), Err(Error::Graph6 { offset: 1, .. })));
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..=62, seed in any::<u64>(), density in 0.0f64..1.0) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(density) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).unwrap();
            prop_assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
    }
}
