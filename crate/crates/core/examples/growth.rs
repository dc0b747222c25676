//! Search-tree growth of level 7 on random 6-regular graphs: ln(nodes)/k.

use surplus_vc::solver::{solve_decision, solve_optimum, Level, SolverConfig};
use surplus_vc::{gen, Instance};

fn main() {
    let cfg = SolverConfig::default();
    println!("reference: ln 1.2575 = {:.4}", 1.2575f64.ln());
    for n in [24, 32, 40, 48] {
        let g = gen::random_regular(n, 6, 0).unwrap();
        let opt = solve_optimum(&g, &cfg).unwrap().opt;
        let r = solve_decision(&Instance::new(g, opt - 1), Level::L7, &cfg).unwrap();
        println!("n = {n}, k = {}: nodes = {}, ln(nodes)/k = {:.4}", opt - 1, r.stats.nodes, (r.stats.nodes as f64).ln() / (opt - 1) as f64);
    }
}
