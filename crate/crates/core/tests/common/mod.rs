//! Shared helpers for integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use surplus_vc::Graph;

/// Graph on `n` vertices from a bit per unordered pair.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Random graphs with `lo..=hi` vertices and edge density drawn from `0.1..0.7`.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, 0.1f64..0.7).prop_flat_map(|(n, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// Cycle on `n` vertices.
pub fn cycle(n: u32) -> Graph {
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n as usize, &e).unwrap()
}
