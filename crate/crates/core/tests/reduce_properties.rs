//! Safety and strength of the preprocessing rules, checked against the oracle.

mod common;

use common::arb_graph;
use proptest::prelude::*;
use surplus_vc::lp::{self, Instance};
use surplus_vc::oracle::brute_force_vc_size;
use surplus_vc::reduce::{is_simplified, RuleKind, Simplifier, StepView};
use surplus_vc::{Graph, Vertex, VertexSet};

/// Observes every step of a simplification and checks it exactly.
fn check_steps(g: &Graph, limit: usize) -> Result<(), TestCaseError> {
    let mut failures = Vec::new();
    let mut obs = |v: &StepView<'_>| {
        let dk = v.step.dk();
        let (before, after) = (brute_force_vc_size(v.before).unwrap() as i64, brute_force_vc_size(v.after).unwrap() as i64);
        // Feasibility equivalence for every k is the same as VC(G) = VC(G') + Δk.
        if before != after + dk {
            failures.push(format!("{}: VC {} -> {} with dk {}", v.step, before, after, dk));
        }
        // μ' ≤ μ  ⇔  λ − λ' ≤ Δk.
        let dl2 = lp::lambda2(v.before) - lp::lambda2(v.after);
        if dl2 > 2 * dk {
            failures.push(format!("{}: mu increased", v.step));
        }
        if v.step.is_kite_fold() && v.minsurp_before.is_some_and(|m| m >= 1) && (dk != 2 || 2 * dk - dl2 < 1) {
            failures.push(format!("{}: kite bonus missing", v.step));
        }
    };
    let inst = Instance::new(g.clone(), g.n() as i64);
    let (out, trace) = Simplifier::new(limit).simplify_observed(&inst, &mut obs);
    prop_assert!(failures.is_empty(), "{:?}", failures);
    prop_assert!(is_simplified(out.graph()));
    prop_assert_eq!(out.k(), inst.k() - trace.total_dk());
    prop_assert_eq!(&trace.replay(g).unwrap(), out.graph());
    let reduced_opt = surplus_vc::oracle::brute_force_vc(out.graph()).unwrap();
    let lifted = trace.lift(&reduced_opt.1);
    prop_assert!(g.is_vertex_cover(&lifted));
    prop_assert_eq!(lifted.len() as i64, reduced_opt.0 as i64 + trace.total_dk());
    prop_assert_eq!(lifted.len(), brute_force_vc_size(g).unwrap());
    Ok(())
}

fn s_of(g: &Graph) -> i64 {
    Simplifier::new(0).simplify(&Instance::new(g.clone(), 0)).1.total_dk()
}

fn dist_at_least_3(g: &Graph, a: Vertex, b: Vertex) -> bool {
    a != b && !g.has_edge(a, b) && g.codegree(a, b) == 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn every_step_is_safe(g in arb_graph(1, 12)) {
        check_steps(&g, 0)?;
        check_steps(&g, 5)?;
    }

    #[test]
    fn nonadjacent_subquadratic_pair(g in arb_graph(2, 12)) {
        let ms = lp::minsurp_value(&g).unwrap();
        let s = s_of(&g);
        let vs: Vec<_> = g.vertices().collect();
        for &x in &vs {
            for &y in &vs {
                // Isolated vertices are excluded: deleting them never lowers k.
                if x < y && !g.has_edge(x, y) && (1..=2).contains(&g.degree(x)) && (1..=2).contains(&g.degree(y)) {
                    let cond = g.codegree(x, y) == 0 || g.degree(x) + g.degree(y) >= 3 || ms >= 0;
                    if cond {
                        prop_assert!(s >= 2, "pair ({x},{y}) but S = {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn spread_two_vertices(g in arb_graph(3, 12)) {
        let mut picked: Vec<Vertex> = Vec::new();
        for v in g.vertices() {
            if g.degree(v) == 2 && picked.iter().all(|&p| dist_at_least_3(&g, p, v)) {
                picked.push(v);
            }
        }
        let s = s_of(&g);
        prop_assert!(s >= picked.len() as i64, "2-vertices {picked:?} but S = {s}");
    }

    #[test]
    fn low_surplus_indset(g in arb_graph(2, 11)) {
        if lp::minsurp_value(&g).unwrap() >= 0 {
            let s = s_of(&g);
            let best = surplus_vc::oracle::brute_force_min_sets(&g).unwrap();
            let _ = best;
            // Largest indset with surplus ≤ 1, by enumeration over maximal candidates.
            let vs: Vec<_> = g.vertices().collect();
            let n = vs.len();
            let mut largest = 0;
            for mask in 1u32..(1 << n) {
                let set: VertexSet = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
                if set.len() > largest && g.is_independent(&set) && g.surplus(&set).unwrap() <= 1 {
                    largest = set.len();
                }
            }
            prop_assert!(s >= largest as i64, "indset of size {largest} with surplus <= 1 but S = {s}");
        }
    }
}

#[test]
fn simplified_outputs_on_named_graphs() {
    let petersen = surplus_vc::gen::named("petersen").unwrap();
    let (out, trace) = Simplifier::new(0).simplify(&Instance::new(petersen.clone(), 6));
    assert!(is_simplified(out.graph()));
    assert_eq!(trace.count(RuleKind::ComponentSolve), 0);
    check_steps(&petersen, 0).unwrap();
}
