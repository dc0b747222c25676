//! LP, surplus, min-set, shadow and blocker computations against exhaustive oracles.

mod common;

use common::arb_graph;
use proptest::prelude::*;
use surplus_vc::lp::{self, Shadow};
use surplus_vc::oracle;
use surplus_vc::{Graph, VertexSet};

fn smallest(sets: &[VertexSet]) -> VertexSet {
    sets.iter().min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b))).unwrap().clone()
}

fn union_all(sets: &[VertexSet]) -> VertexSet {
    sets.iter().fold(VertexSet::new(), |acc, s| acc.union(s))
}

fn intersect_all(sets: &[VertexSet]) -> VertexSet {
    sets.iter().skip(1).fold(sets[0].clone(), |acc, s| acc.intersection(s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn lp_weight_matches_enumeration(g in arb_graph(0, 9)) {
        let sol = lp::lp_basic_solution(&g);
        prop_assert_eq!(sol.weight, oracle::brute_force_lp(&g).unwrap());
        prop_assert!(sol.is_feasible(&g));
        prop_assert_eq!(sol.weight.doubled(), lp::lambda2(&g));
        let z = sol.zero_set();
        prop_assert!(g.is_independent(&z));
        prop_assert!(g.open_nbhd(&z).is_subset(&sol.one_set()));
        if !z.is_empty() {
            prop_assert_eq!(g.surplus(&z).unwrap(), 2 * sol.weight.doubled() / 2 - g.n() as i64);
        }
    }

    #[test]
    fn minsurp_matches_enumeration(g in arb_graph(1, 12)) {
        let sets = oracle::brute_force_min_sets(&g).unwrap();
        let (best, _) = oracle::brute_force_minsurp(&g).unwrap().unwrap();
        let cert = lp::minsurp(&g).unwrap();
        prop_assert_eq!(cert.surplus, best);
        prop_assert_eq!(g.surplus(&cert.indset).unwrap(), best);
        prop_assert_eq!(&cert.indset, &smallest(&sets));
        prop_assert_eq!(lp::minsurp_minus(&g), best.min(0));
        if best < 0 {
            // The LP zero set is the common core of all minimizers.
            prop_assert_eq!(lp::lp_basic_solution(&g).zero_set(), intersect_all(&sets));
        }
        let big = lp::nonsingleton_min_set(&g).unwrap();
        prop_assert_eq!(big.is_some(), sets.iter().any(|s| s.len() >= 2));
        if let Some(c) = big {
            prop_assert!(c.indset.len() >= 2);
            prop_assert_eq!(g.surplus(&c.indset).unwrap(), best);
        }
        let members = union_all(&sets);
        for v in g.vertices() {
            let found = lp::find_min_set(&g, &VertexSet::single(v)).unwrap();
            prop_assert_eq!(found.is_some(), members.contains(v));
            if let Some(c) = found {
                prop_assert!(c.indset.contains(v));
                prop_assert_eq!(g.surplus(&c.indset).unwrap(), best);
            }
        }
    }

    #[test]
    fn shadows_and_blockers(g in arb_graph(1, 11)) {
        let ms = lp::minsurp_value(&g).unwrap();
        for u in g.vertices() {
            let closed = g.closed_nbhd_of(u);
            let h = g.delete_vertices(&closed).unwrap();
            let sh = lp::shadow(&g, &closed);
            prop_assert!(sh >= Shadow::Finite(ms - closed.len() as i64));
            let single = lp::shadow(&g, &VertexSet::single(u));
            prop_assert!(single >= Shadow::Finite(ms - 1));
            if h.is_empty() {
                prop_assert_eq!(sh, Shadow::Infinite);
                prop_assert!(lp::find_blocker(&g, u).is_none());
                continue;
            }
            let sets = oracle::brute_force_min_sets(&h).unwrap();
            let val = h.surplus(&sets[0]).unwrap();
            prop_assert_eq!(sh, Shadow::Finite(val));
            let blocked = val <= 0;
            prop_assert_eq!(lp::find_blocker(&g, u).is_some(), blocked);
            if blocked {
                prop_assert_eq!(lp::blockers(&g, u), union_all(&sets));
                let (x, cert) = lp::find_blocker(&g, u).unwrap();
                prop_assert_eq!(&cert.indset, &smallest(&sets));
                prop_assert_eq!(Some(x), cert.indset.first());
                prop_assert!(!g.has_edge(x, u));
            } else {
                prop_assert!(lp::blockers(&g, u).is_empty());
            }
        }
    }

    #[test]
    fn lp_lower_bounds_cover(g in arb_graph(0, 12)) {
        let opt = oracle::brute_force_vc_size(&g).unwrap() as i64;
        prop_assert!(lp::lambda2(&g) <= 2 * opt);
    }

    #[test]
    fn surplus_is_modular(g in arb_graph(2, 12)) {
        // Two far-apart singletons: surp({a, b}) = surp(a) + surp(b).
        let vs: Vec<_> = g.vertices().collect();
        for &a in &vs {
            for &b in &vs {
                if a < b && g.closed_nbhd_of(a).intersection(&g.closed_nbhd_of(b)).is_empty() {
                    let s = g.surplus(&[a, b].into()).unwrap();
                    prop_assert_eq!(s, g.surplus(&[a].into()).unwrap() + g.surplus(&[b].into()).unwrap());
                }
            }
        }
    }
}

#[test]
fn minsurp_rejects_empty_graph() {
    assert!(lp::minsurp(&Graph::new()).is_err());
}
