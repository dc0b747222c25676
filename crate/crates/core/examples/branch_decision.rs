//! One branching decision: rule, selector case, claimed vs realized drops,
//! and the measure value `Σ e^{−aΔμ−bΔk}` at level 5.

use surplus_vc::branch::{select_branch_with, val};
use surplus_vc::reduce::Simplifier;
use surplus_vc::solver::{default_params, Level};
use surplus_vc::{gen, Instance};

fn main() {
    let simp = Simplifier::new(0);
    let p = default_params()[Level::L5.index()];
    for seed in 0..4 {
        let g = gen::random_regular(16, 5, seed).unwrap();
        let (s, _) = simp.simplify(&Instance::new(g, 10));
        if s.graph().is_empty() {
            continue;
        }
        let dec = select_branch_with(&s, &simp).unwrap();
        println!(
            "seed {seed}: {} [{}] claimed {} (val {:.4}) realized {} (val {:.4})",
            dec.rule,
            dec.case,
            dec.claimed,
            val(p, &dec.claimed),
            dec.realized(),
            val(p, &dec.realized())
        );
    }
}
