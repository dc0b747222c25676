//! Decides "is there a vertex cover of size ≤ k?" with each solver level.

use surplus_vc::solver::{solve_decision, Level, SolverConfig};
use surplus_vc::{gen, Instance};

fn main() {
    let g = gen::petersen();
    let cfg = SolverConfig { component_limit: 0, ..SolverConfig::default() };
    for level in Level::ALL {
        for k in [5, 6] {
            let r = solve_decision(&Instance::new(g.clone(), k), level, &cfg).unwrap();
            let cover = r.cover.map(|c| format!("{:?}", c.as_slice())).unwrap_or_else(|| "-".into());
            println!("{level} k={k}: feasible={} nodes={} cover={cover}", r.feasible, r.stats.nodes);
        }
    }
}
