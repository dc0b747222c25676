//! The half-integral LP, surplus, min-sets and shadows.

use surplus_vc::{gen, lp, Graph, VertexSet};

fn main() {
    let star = gen::star(3);
    let c5 = gen::cycle(5).unwrap();
    let petersen = gen::petersen();
    for (name, g) in [("K1,3", &star), ("C5", &c5), ("Petersen", &petersen)] {
        let sol = lp::lp_basic_solution(g);
        let cert = lp::minsurp(g).unwrap();
        println!(
            "{name}: λ = {}, zero set {:?}, minsurp = {} at {:?}",
            sol.weight,
            sol.zero_set().as_slice(),
            cert.surplus,
            cert.indset.as_slice()
        );
    }
    // Shadows: minsurp of what remains after deleting a set.
    let g: &Graph = &petersen;
    let u = 0;
    println!("Petersen: shad({{0}}) = {:?}, shad(N[0]) = {:?}", lp::shadow(g, &VertexSet::single(u)), lp::shadow_closed(g, u));
}
