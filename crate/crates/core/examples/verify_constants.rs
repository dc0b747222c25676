//! Evaluates every constraint profile and prints its table.

use surplus_vc::verify::{evaluate_constraints, Profile};

fn main() {
    for p in Profile::ALL {
        let r = evaluate_constraints(p);
        println!("== {} ({})", p, if r.pass { "pass" } else { "FAIL" });
        print!("{}", r.to_table());
    }
}
