//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix in column order (`(0,1), (0,2), (1,2), (0,3), ...`),
//! six bits per printable byte, most significant bit first.

use thiserror::Error;

use super::{Graph, SPILL_MAX_N};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {0:#04x} is outside the graph6 range")]
    BadByte(u8),
    #[error("graph6 string has {got} data bytes, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("graph6 header declares {0} vertices, above the supported {SPILL_MAX_N}")]
    TooLarge(usize),
}

fn size_header(n: usize, out: &mut Vec<u8>) {
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    size_header(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn decode(s: &str) -> Result<Graph, Graph6Error> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    let bytes = bytes.strip_prefix(b">>graph6<<").unwrap_or(bytes);
    let (&first, rest) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte(b));
        }
    }
    let (n, data) = if first < 126 {
        ((first - 63) as usize, rest)
    } else {
        if rest.first() == Some(&126) {
            return Err(Graph6Error::TooLarge(usize::MAX));
        }
        if rest.len() < 3 {
            return Err(Graph6Error::Length {
                expected: 3,
                got: rest.len(),
            });
        }
        let n = rest[..3]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &rest[3..])
    };
    if n > SPILL_MAX_N {
        return Err(Graph6Error::TooLarge(n));
    }
    let expected = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if data.len() != expected {
        return Err(Graph6Error::Length {
            expected,
            got: data.len(),
        });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::new(n, edges).expect("decoded edges are in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, cycle, grotzsch};

    #[test]
    fn two_vertex_examples() {
        let edge = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(encode(&edge), "A_");
        assert_eq!(decode("A_").unwrap(), edge);
        let empty = Graph::empty(2).unwrap();
        assert_eq!(encode(&empty), "A?");
        assert_eq!(decode("A?").unwrap(), empty);
    }

    #[test]
    fn known_strings() {
        // reference strings as printed by nauty's geng/showg
        assert_eq!(encode(&cycle(5).unwrap()), "Dhc");
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        let g = Graph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn round_trips() {
        for g in [
            grotzsch(),
            complete_bipartite(40, 30).unwrap(),
            cycle(63).unwrap(),
        ] {
            assert_eq!(decode(&encode(&g)).unwrap(), g);
        }
        assert!(encode(&cycle(63).unwrap()).starts_with('~'));
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert!(matches!(decode("A"), Err(Graph6Error::Length { .. })));
        assert!(matches!(decode("A_?"), Err(Graph6Error::Length { .. })));
        assert_eq!(decode("A\x20"), Err(Graph6Error::BadByte(0x20)));
    }
}
