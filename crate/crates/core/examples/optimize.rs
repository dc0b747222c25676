//! Minimum vertex cover by ascending k from ⌈λ⌉, checked against the oracle.

use surplus_vc::oracle::brute_force_vc_size;
use surplus_vc::solver::{solve_optimum, SolverConfig};
use surplus_vc::{gen, lp};

fn main() {
    let cfg = SolverConfig::default();
    for seed in 0..5 {
        let g = gen::gnp(18, 0.3, seed).unwrap();
        let r = solve_optimum(&g, &cfg).unwrap();
        println!(
            "gnp(18, 0.3, seed {seed}): λ = {}, opt = {}, oracle = {}, nodes = {}",
            lp::lambda(&g),
            r.opt,
            brute_force_vc_size(&g).unwrap(),
            r.stats.nodes
        );
    }
    let big = gen::random_regular(60, 5, 1).unwrap();
    let r = solve_optimum(&big, &cfg).unwrap();
    println!("5-regular on 60 vertices: opt = {} in {} nodes ({:.3}s)", r.opt, r.stats.nodes, r.stats.wall_time_s);
}
