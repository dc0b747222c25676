//! Constraint tables, the rate combiner and the drop audit.

use proptest::prelude::*;
use surplus_vc::branch::val;
use surplus_vc::lp::Instance;
use surplus_vc::solver::{default_params, solve_decision, Level, SolverConfig};
use surplus_vc::verify::{
    audit_trace, combine_rate, evaluate_constraints, evaluate_constraints_with, triple_point, Constants, Profile,
};
use surplus_vc::{gen, Half};

#[test]
fn every_profile_passes_at_default_constants() {
    for p in Profile::ALL {
        let r = evaluate_constraints(p);
        assert!(r.pass, "{p}:\n{}", r.to_table());
        assert!(r.rows.iter().filter(|r| !r.informational).count() >= 5, "{p}");
        for row in &r.rows {
            assert!(row.value.is_finite() && row.bound.is_finite(), "{p} {}", row.label);
        }
    }
}

#[test]
fn perturbed_constants_break_the_simple_profile() {
    // The checks are not vacuous: raising every `a` by 0.05 violates some row.
    let r = evaluate_constraints_with(Profile::Simple, &Constants::default().shift_a(0.05));
    assert!(!r.pass);
    assert!(r.rows.iter().any(|r| !r.informational && !r.pass));
    // Lowering `a` slightly keeps the split rows feasible but upsets the base rows.
    let r = evaluate_constraints_with(Profile::Simple, &Constants::default().shift_a(-0.05));
    assert!(!r.pass);
}

#[test]
fn triple_point_lies_on_the_level4_line() {
    let (t, gap) = triple_point(&Constants::default());
    assert!(t > 0.0 && t < 1.0);
    assert!(gap <= 1e-3, "relative gap {gap}");
}

#[test]
fn profiles_parse_and_print() {
    for p in Profile::ALL {
        assert_eq!(p.to_string().parse::<Profile>().unwrap(), p);
    }
    assert!("advanced-9".parse::<Profile>().is_err());
}

#[test]
fn weights_and_tight_row() {
    let c = Constants::default();
    assert_eq!(c.w5, [0.5093, 0.8243]);
    let r = evaluate_constraints(Profile::Advanced7);
    let row = r.row("(7-2)@a7").unwrap();
    assert!((row.value - 1.0).abs() <= 1e-4);
}

#[test]
fn petersen_audit_is_clean() {
    // Petersen plus a hub keeps level 4 branching at the root.
    let mut g = gen::petersen();
    let h = g.add_vertex();
    for v in [0, 2, 4, 6] {
        g.add_edge(h, v).unwrap();
    }
    let cfg = SolverConfig { audit: true, component_limit: 0, ..SolverConfig::default() };
    for k in [6, 7] {
        let r = solve_decision(&Instance::new(g.clone(), k), Level::L4, &cfg).unwrap();
        let s = audit_trace(&r.stats.audit, &default_params());
        assert_eq!(s.violations, 0);
        assert_eq!(s.records as usize, r.stats.audit.len());
    }
    assert_eq!(audit_trace(&[], &default_params()), Default::default());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn combine_rate_is_monotone(a in 0.0f64..1.0, b in 0.0f64..0.5, c in 0.01f64..0.3, eps in 1e-4f64..0.1) {
        let d = combine_rate(a, b, c).unwrap();
        prop_assert!(combine_rate(a, b, c + eps).unwrap() >= d - 1e-12);
        prop_assert!(combine_rate(a, b + eps, c).unwrap() >= d - 1e-12);
        // And bounded by both exponents it combines (per unit k).
        prop_assert!(d <= 2.0 * c + 1e-12 || d <= a + b + 1e-12);
    }

    #[test]
    fn val_is_monotone_in_drops(a in 0.0f64..1.0, b in 0.01f64..0.5, dm in 0i64..6, dk in 1i64..6) {
        use surplus_vc::branch::{BranchSeq, Drop, MeasureParams};
        let p = MeasureParams::new(a, b).unwrap();
        let s = BranchSeq::new(vec![Drop::new(Half(dm), dk), Drop::new(Half(dm), dk)]).unwrap();
        let t = BranchSeq::new(vec![Drop::new(Half(dm + 1), dk), Drop::new(Half(dm), dk + 1)]).unwrap();
        prop_assert!(val(p, &t) <= val(p, &s));
    }
}
