//! Deterministic graph generators: `G(n, p)`, random regular graphs,
//! circulants and a handful of named graphs.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded RNG used by every generator.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!("edge probability {p} outside [0, 1]")));
    }
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Random `d`-regular graph by sequential random pairing of stubs, restarting
/// whenever only loops or parallel edges remain.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if (n > 0 && d >= n) || (n * d) % 2 == 1 {
        return Err(Error::Precondition(format!("no {d}-regular graph on {n} vertices")));
    }
    let mut r = rng(seed);
    'attempt: for _ in 0..1_000 {
        let mut stubs: Vec<Vertex> = (0..n as Vertex).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut g = Graph::with_vertices(n);
        while !stubs.is_empty() {
            let mut placed = false;
            for _ in 0..100 {
                let i = r.gen_range(0..stubs.len());
                let j = r.gen_range(0..stubs.len());
                let (u, v) = (stubs[i], stubs[j]);
                if i != j && u != v && !g.has_edge(u, v) {
                    g.add_edge(u, v)?;
                    let (hi, lo) = (i.max(j), i.min(j));
                    stubs.swap_remove(hi);
                    stubs.swap_remove(lo);
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'attempt;
            }
        }
        return Ok(g);
    }
    Err(Error::Internal(format!("random pairing failed for n={n}, d={d}")))
}

/// Circulant graph `C_n(offsets)`: `i ~ i ± s (mod n)` for every offset `s`.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph> {
    let mut g = Graph::with_vertices(n);
    for &s in offsets {
        if s == 0 || s >= n {
            return Err(Error::Precondition(format!("offset {s} invalid for n={n}")));
        }
        for i in 0..n {
            let (u, v) = (i as Vertex, ((i + s) % n) as Vertex);
            if u != v {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Cycle `C_n` (`n ≥ 3`).
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Precondition("a cycle needs at least 3 vertices".into()));
    }
    circulant(n, &[1])
}

/// Complete graph `K_n`.
pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n as Vertex).flat_map(|u| (u + 1..n as Vertex).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges).expect("valid edges")
}

/// Star `K_{1,n}` with centre 0.
pub fn star(n: usize) -> Graph {
    let edges: Vec<_> = (1..=n as Vertex).map(|v| (0, v)).collect();
    Graph::from_edges(n + 1, &edges).expect("valid edges")
}

/// Path on `n` vertices.
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n as Vertex).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges).expect("valid edges")
}

/// `d`-dimensional hypercube `Q_d`.
pub fn hypercube(d: u32) -> Graph {
    let n = 1usize << d;
    let edges: Vec<_> =
        (0..n as Vertex).flat_map(|v| (0..d).map(move |b| (v, v ^ (1 << b))).filter(|&(a, b)| a < b)).collect();
    Graph::from_edges(n, &edges).expect("valid edges")
}

/// `r × c` grid.
pub fn grid(r: usize, c: usize) -> Graph {
    let id = |i: usize, j: usize| (i * c + j) as Vertex;
    let mut edges = Vec::new();
    for i in 0..r {
        for j in 0..c {
            if j + 1 < c {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < r {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    Graph::from_edges(r * c, &edges).expect("valid edges")
}

/// The Petersen graph.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges).expect("valid edges")
}

/// A named graph: `petersen`, `kite`, `q<d>`, `c<n>`, `k<n>`, `star<n>`,
/// `p<n>`, `grid<r>x<c>`, `circ<n>:<s1>,<s2>,…`.
pub fn named(name: &str) -> Result<Graph> {
    let bad = || Error::Usage(format!("unknown named graph '{name}'"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match name {
        "petersen" => return Ok(petersen()),
        "kite" => return Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)]),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("circ") {
        let (n, offs) = rest.split_once(':').ok_or_else(bad)?;
        let offsets = offs.split(',').map(num).collect::<Result<Vec<_>>>()?;
        return circulant(num(n)?, &offsets);
    }
    if let Some(rest) = name.strip_prefix("grid") {
        let (r, c) = rest.split_once('x').ok_or_else(bad)?;
        return Ok(grid(num(r)?, num(c)?));
    }
    if let Some(rest) = name.strip_prefix("star") {
        return Ok(star(num(rest)?));
    }
    if let Some(rest) = name.strip_prefix('q') {
        let d = num(rest)?;
        if d > 12 {
            return Err(bad());
        }
        return Ok(hypercube(d as u32));
    }
    if let Some(rest) = name.strip_prefix('c') {
        return cycle(num(rest)?);
    }
    if let Some(rest) = name.strip_prefix('k') {
        return Ok(complete(num(rest)?));
    }
    if let Some(rest) = name.strip_prefix('p') {
        return Ok(path(num(rest)?));
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples() {
        let p = named("petersen").unwrap();
        assert_eq!((p.n(), p.m(), p.max_degree(), p.min_degree()), (10, 15, 3, 3));
        let c = circulant(9, &[1, 2]).unwrap();
        assert_eq!((c.n(), c.m(), c.min_degree()), (9, 18, 4));
        assert_eq!(named("circ9:1,2").unwrap(), c);
        assert_eq!(named("q4").unwrap().m(), 32);
        assert_eq!(named("grid3x4").unwrap().m(), 17);
        assert_eq!(named("star3").unwrap().m(), 3);
        assert_eq!(named("k4").unwrap().m(), 6);
        assert_eq!(named("c5").unwrap().m(), 5);
        assert!(named("nope").is_err());
    }

    #[test]
    fn seeded_generators_are_deterministic() {
        assert_eq!(gnp(12, 0.3, 7).unwrap(), gnp(12, 0.3, 7).unwrap());
        let r = random_regular(20, 6, 3).unwrap();
        assert!(r.vertices().all(|v| r.degree(v) == 6));
        assert_eq!(r, random_regular(20, 6, 3).unwrap());
        assert!(random_regular(7, 3, 0).is_err());
    }
}
