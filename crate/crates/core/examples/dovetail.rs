//! Dovetailing two exact solvers: alternate node quanta, first answer wins.

use surplus_vc::solver::{dovetail, solve_with, Solver, SolverConfig};
use surplus_vc::{gen, lp, Instance};

fn main() {
    let g = gen::gnp(26, 0.2, 0).unwrap();
    let k = lp::lambda(&g).ceil() - 1;
    let inst = Instance::new(g, k);
    for quantum in [1, 256] {
        let cfg = SolverConfig { quantum, ..SolverConfig::default() };
        for s in [Solver::Agvc, Solver::Maxis] {
            let r = solve_with(s, &inst, &cfg).unwrap();
            println!("quantum {quantum}: {s} alone: feasible={} nodes={}", r.feasible, r.stats.nodes);
        }
        let r = dovetail(Solver::Maxis, Solver::Agvc, &inst, &cfg).unwrap();
        println!("quantum {quantum}: dovetail(maxis, agvc): feasible={} nodes={} wins={:?}", r.feasible, r.stats.nodes, r.stats.dovetail_wins);
    }
}
