//! Standard graph6 encoding (short form, n <= 62): one byte `n + 63`, then
//! the upper-triangle adjacency bits in column order, packed big-endian six
//! per byte, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_SHORT: usize = 62;

pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_SHORT {
        return Err(Error::CapacityExceeded {
            n,
            limit: MAX_SHORT,
        });
    }
    let mut out = vec![OFFSET + n as u8];
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ascii"))
}

pub fn decode_graph6(s: &str) -> Result<Graph> {
    let bytes = s.trim_end().as_bytes();
    let malformed = |reason: &str| Error::MalformedGraph6 {
        reason: reason.to_string(),
    };
    if bytes.is_empty() {
        return Err(malformed("empty string"));
    }
    if bytes[0] == b'>' {
        return Err(malformed("header lines are not supported"));
    }
    for &b in bytes {
        if !(OFFSET..=126).contains(&b) {
            return Err(malformed(&format!("byte {b} out of graph6 range")));
        }
    }
    if bytes[0] == 126 {
        return Err(malformed("long-form sizes (n > 62) are not supported"));
    }
    let n = (bytes[0] - OFFSET) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expect = 1 + nbits.div_ceil(6);
    if bytes.len() != expect {
        return Err(malformed(&format!(
            "expected {expect} bytes for n = {n}, got {}",
            bytes.len()
        )));
    }
    let bit = |k: usize| (bytes[1 + k / 6] - OFFSET) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    // padding bits must be zero
    for t in nbits..nbits.div_ceil(6) * 6 {
        if bit(t) {
            return Err(malformed("nonzero padding bits"));
        }
    }
    Graph::from_edge_list(&edges, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::treegen;

    #[test]
    fn hand_packed_strings() {
        // K_2: size byte 'A' (2+63), single bit 1 padded to 100000 -> '_'
        assert_eq!(encode_graph6(&treegen::path(2).unwrap()).unwrap(), "A_");
        // E_2: empty adjacency bit
        let e2 = decode_graph6("A?").unwrap();
        assert_eq!(e2.n(), 2);
        assert_eq!(e2.edge_count(), 0);
        // frozen strings for named graphs
        assert_eq!(encode_graph6(&treegen::path(3).unwrap()).unwrap(), "Bg");
        assert_eq!(encode_graph6(&treegen::path(5).unwrap()).unwrap(), "DhC");
        assert_eq!(encode_graph6(&treegen::star(5).unwrap()).unwrap(), "Ds_");
        assert_eq!(
            encode_graph6(&treegen::pendant_cycle()).unwrap(),
            "KhCGGC@_K??_"
        );
        assert_eq!(encode_graph6(&treegen::chorded_cycle()).unwrap(), "GhcGKC");
        assert_eq!(
            encode_graph6(&treegen::special_tree(19, 4, 4, 2).unwrap()).unwrap(),
            "Rs`AA@?G@?C?G?C?A??_?A??G??O??"
        );
    }

    #[test]
    fn round_trip_on_generated_trees() {
        for n in 1..=12 {
            for t in treegen::generate_free_trees(n).unwrap() {
                let g = decode_graph6(&encode_graph6(&t).unwrap()).unwrap();
                assert_eq!(g, t);
            }
        }
    }

    #[test]
    fn malformed_inputs() {
        assert!(decode_graph6("").is_err());
        assert!(decode_graph6("B").is_err()); // truncated
        assert!(decode_graph6("A ").is_err()); // byte below offset
        assert!(decode_graph6(">>graph6<<A_").is_err());
        assert!(decode_graph6("A@").is_err()); // nonzero padding
        let p63 = Graph::from_edge_list(&[], 63).unwrap();
        assert!(encode_graph6(&p63).is_err());
    }
}
