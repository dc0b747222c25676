//! Instrumented solving: every branching node is checked against the claimed
//! measure drop with exact LP recomputation.

use surplus_vc::solver::{default_params, solve_decision, solve_optimum, Level, SolverConfig};
use surplus_vc::verify::audit_trace;
use surplus_vc::{gen, Instance};

fn main() {
    let cfg = SolverConfig { audit: true, component_limit: 0, ..SolverConfig::default() };
    let mut graphs = vec![gen::random_regular(20, 6, 3).unwrap()];
    graphs.extend((0..6).map(|seed| gen::gnp(20, 0.35, seed).unwrap()));
    for level in Level::ALL {
        let mut records = Vec::new();
        for g in &graphs {
            let opt = solve_optimum(g, &SolverConfig::default()).unwrap().opt;
            for k in [opt - 1, opt] {
                records.extend(solve_decision(&Instance::new(g.clone(), k), level, &cfg).unwrap().stats.audit);
            }
        }
        let s = audit_trace(&records, &default_params());
        println!("{level}: audited={} violations={}", s.records, s.violations);
        for (case, a) in &s.per_case {
            println!("    {case}: {} nodes, max val {:.4}", a.records, a.max_val_realized);
        }
    }
}
