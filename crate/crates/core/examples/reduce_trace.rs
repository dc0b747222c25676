//! Simplification to a graph with min degree 3, minsurp ≥ 2 and no funnels,
//! then lifting a cover of the reduced graph back.

use surplus_vc::oracle::brute_force_vc;
use surplus_vc::reduce::{is_simplified, Simplifier};
use surplus_vc::{gen, Instance};

fn main() {
    let g = gen::gnp(16, 0.25, 4).unwrap();
    let (reduced, trace) = Simplifier::new(0).simplify(&Instance::new(g.clone(), 10));
    println!("input: n = {}, m = {}, k = 10", g.n(), g.m());
    for step in &trace.steps {
        println!("  {step}");
    }
    let h = reduced.graph();
    println!("reduced: n = {}, m = {}, k = {}, simplified = {}", h.n(), h.m(), reduced.k(), is_simplified(h));
    let (opt, cover) = brute_force_vc(h).unwrap();
    let lifted = trace.lift(&cover);
    println!("opt(reduced) = {opt}, Δk = {}, lifted cover size {} valid = {}", trace.total_dk(), lifted.len(), g.is_vertex_cover(&lifted));
}
