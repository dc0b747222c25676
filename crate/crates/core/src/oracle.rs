//! Exhaustive reference computations used as test oracles.
//!
//! Everything here works on bitmasks over a compacted copy of the graph and
//! is meant for small inputs only.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::half::Half;

/// Largest graph accepted by [`brute_force_vc`].
pub const MAX_ORACLE_N: usize = 26;

struct Masks {
    ids: Vec<Vertex>,
    adj: Vec<u32>,
}

impl Masks {
    fn new(g: &Graph, limit: usize) -> Result<Masks> {
        if g.n() > limit {
            return Err(Error::TooLarge(g.n()));
        }
        let ids: Vec<Vertex> = g.vertices().collect();
        let adj = ids
            .iter()
            .map(|&v| g.neighbors(v).iter().fold(0u32, |m, w| m | 1 << ids.binary_search(w).expect("neighbor")))
            .collect();
        Ok(Masks { ids, adj })
    }

    fn full(&self) -> u32 {
        if self.ids.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.ids.len()) - 1
        }
    }

    fn set(&self, mask: u32) -> VertexSet {
        (0..self.ids.len()).filter(|&i| mask >> i & 1 == 1).map(|i| self.ids[i]).collect()
    }

    /// Minimum vertex cover size of the subgraph induced by `alive`.
    fn mvc(&self, alive: u32) -> u32 {
        let mut best = None::<(u32, usize)>;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & alive).count_ones();
            if d == 0 {
                continue;
            }
            if d == 1 {
                // Taking the neighbour of a pendant vertex is always optimal.
                let w = (self.adj[v] & alive).trailing_zeros() as usize;
                return 1 + self.mvc(alive & !(1 << v) & !(1 << w));
            }
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, v));
            }
        }
        let Some((d, v)) = best else { return 0 };
        if d == 2 && self.is_cycle_union(alive) {
            return self.cycles_cover(alive);
        }
        let nv = self.adj[v] & alive;
        let with_v = 1 + self.mvc(alive & !(1 << v));
        let with_n = nv.count_ones() + self.mvc(alive & !(1 << v) & !nv);
        with_v.min(with_n)
    }

    fn is_cycle_union(&self, alive: u32) -> bool {
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & alive).count_ones();
            if d != 0 && d != 2 {
                return false;
            }
        }
        true
    }

    /// Cover size of a disjoint union of cycles and isolated vertices.
    fn cycles_cover(&self, alive: u32) -> u32 {
        let mut seen = 0u32;
        let mut total = 0;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if seen >> v & 1 == 1 || self.adj[v] & alive == 0 {
                continue;
            }
            let mut comp = 1u32 << v;
            let mut frontier = comp;
            while frontier != 0 {
                let w = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = self.adj[w] & alive & !comp;
                comp |= new;
                frontier |= new;
            }
            seen |= comp;
            total += comp.count_ones().div_ceil(2);
        }
        total
    }

    /// Minimum cover size containing `inc` and avoiding `exc`, if any.
    fn constrained(&self, inc: u32, exc: u32) -> Option<u32> {
        let mut forced = inc;
        let mut rest = exc;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            forced |= self.adj[v];
        }
        if forced & exc != 0 {
            return None;
        }
        Some(forced.count_ones() + self.mvc(self.full() & !forced & !exc))
    }
}

/// Exact minimum vertex cover; returns the size and the lexicographically
/// least optimal cover.
pub fn brute_force_vc(g: &Graph) -> Result<(usize, VertexSet)> {
    let m = Masks::new(g, MAX_ORACLE_N)?;
    let opt = m.mvc(m.full());
    let (mut inc, mut exc) = (0u32, 0u32);
    for i in 0..m.ids.len() {
        let bit = 1u32 << i;
        if m.constrained(inc | bit, exc) == Some(opt) {
            inc |= bit;
        } else {
            exc |= bit;
        }
    }
    debug_assert_eq!(inc.count_ones(), opt);
    Ok((opt as usize, m.set(inc)))
}

/// Exact vertex cover number only.
pub fn brute_force_vc_size(g: &Graph) -> Result<usize> {
    let m = Masks::new(g, MAX_ORACLE_N)?;
    Ok(m.mvc(m.full()) as usize)
}

/// Whether `g` has a vertex cover of size at most `k`.
pub fn brute_force_feasible(g: &Graph, k: i64) -> Result<bool> {
    Ok(k >= 0 && brute_force_vc_size(g)? as i64 <= k)
}

/// Minimum surplus over all non-empty independent sets, with the first
/// minimizer found (by increasing bitmask). `None` for the empty graph.
pub fn brute_force_minsurp(g: &Graph) -> Result<Option<(i64, VertexSet)>> {
    let m = Masks::new(g, 20)?;
    let mut best: Option<(i64, u32)> = None;
    for s in 1..=m.full() {
        let mut nb = 0u32;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            nb |= m.adj[v];
        }
        if nb & s != 0 {
            continue;
        }
        let surp = i64::from(nb.count_ones()) - i64::from(s.count_ones());
        if best.is_none_or(|(b, _)| surp < b) {
            best = Some((surp, s));
        }
    }
    Ok(best.map(|(v, s)| (v, m.set(s))))
}

/// Every non-empty independent set attaining the minimum surplus.
pub fn brute_force_min_sets(g: &Graph) -> Result<Vec<VertexSet>> {
    let m = Masks::new(g, 20)?;
    let mut best = i64::MAX;
    let mut out = Vec::new();
    for s in 1..=m.full() {
        let mut nb = 0u32;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            nb |= m.adj[v];
        }
        if nb & s != 0 {
            continue;
        }
        let surp = i64::from(nb.count_ones()) - i64::from(s.count_ones());
        if surp < best {
            best = surp;
            out.clear();
        }
        if surp == best {
            out.push(m.set(s));
        }
    }
    Ok(out)
}

/// Minimum LP weight over all `{0, ½, 1}` assignments, by enumeration.
pub fn brute_force_lp(g: &Graph) -> Result<Half> {
    let m = Masks::new(g, 12)?;
    let n = m.ids.len();
    let adj = &m.adj;
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).filter(move |&v| adj[u] >> v & 1 == 1).map(move |v| (u, v))).collect();
    let mut theta = vec![0u8; n];
    let mut best = 2 * n as i64;
    loop {
        if edges.iter().all(|&(u, v)| theta[u] + theta[v] >= 2) {
            best = best.min(theta.iter().map(|&t| i64::from(t)).sum());
        }
        // Odometer increment in base 3.
        let mut i = 0;
        while i < n && theta[i] == 2 {
            theta[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        theta[i] += 1;
    }
    Ok(Half(best))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n as usize, &e).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let petersen = Graph::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        assert_eq!(brute_force_vc(&petersen).unwrap().0, 6);
        let (opt, cover) = brute_force_vc(&cycle(5)).unwrap();
        assert_eq!((opt, cover), (3, [0, 1, 3].into()));
        assert_eq!(brute_force_vc(&Graph::from_edges(2, &[(0, 1)]).unwrap()).unwrap(), (1, [0].into()));
        assert!(matches!(brute_force_vc(&Graph::with_vertices(27)), Err(Error::TooLarge(27))));
    }

    #[test]
    fn lp_and_minsurp_oracles() {
        assert_eq!(brute_force_lp(&cycle(5)).unwrap(), Half(5));
        assert_eq!(brute_force_minsurp(&cycle(6)).unwrap().unwrap().0, 0);
        assert_eq!(brute_force_minsurp(&Graph::new()).unwrap(), None);
        // Five singletons and five pairs {i, i + 2}, all of surplus 1.
        assert_eq!(brute_force_min_sets(&cycle(5)).unwrap().len(), 10);
    }
}
