//! Command-line front end: exit codes, file formats, JSON schema (golden
//! files), and the reduce → oracle → lift size identity.

mod common;

use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;
use serde_json::Value;
use surplus_vc::io::{parse_graph, parse_graph_as, render_graph, Format};
use surplus_vc::oracle::brute_force_vc_size;
use surplus_vc::reduce::Simplifier;
use surplus_vc::{cli, gen, Graph, Instance};

/// Runs the CLI in-process with the given stdin.
fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("vc").chain(args.iter().copied()).map(String::from);
    let code = cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn c9_text() -> String {
    render_graph(&gen::circulant(9, &[1, 2]).unwrap(), Format::Td)
}

fn petersen_text() -> String {
    render_graph(&gen::petersen(), Format::Td)
}

/// Last line of `--json` output, with the timing field removed.
fn report(out: &str) -> Value {
    let mut v: Value = serde_json::from_str(out.lines().last().expect("report line")).unwrap();
    if let Some(stats) = v.get_mut("stats").and_then(Value::as_object_mut) {
        assert!(stats.remove("wall_time_s").is_some());
    }
    v
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Compares against `tests/golden/<name>.json`; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, v: &Value) {
    let path = golden_dir().join(format!("{name}.json"));
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, serde_json::to_string_pretty(v).unwrap() + "\n").unwrap();
    }
    let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v, &want, "golden {name}");
}

#[test]
fn solve_exit_codes() {
    let p = petersen_text();
    let (code, out, _) = run(&["solve", "--k", "6"], &p);
    assert_eq!(code, 0);
    let cover: Vec<u32> = out.lines().find_map(|l| l.strip_prefix("cover: ")).unwrap()
        .split(' ').map(|s| s.parse().unwrap()).collect();
    assert_eq!(cover.len(), 6);
    let g = gen::petersen();
    assert!(g.is_vertex_cover(&cover.iter().map(|v| v - 1).collect()));
    for level in ["level4", "level5", "level6", "level7"] {
        assert_eq!(run(&["solve", "--k", "5", "--algorithm", level], &p).0, 1);
        assert_eq!(run(&["solve", "--k", "6", "--algorithm", level, "--component-limit", "0"], &p).0, 0);
    }
    assert_eq!(run(&["solve"], &p).0, 2);
    assert_eq!(run(&["solve", "--k", "3", "--algorithm", "level9"], &p).0, 2);
    assert_eq!(run(&["solve", "--k", "3"], "p td 3 5\n1 2\n2 3\n").0, 2);
    assert_eq!(run(&["solve", "--k", "3", "--format", "edge"], &p).0, 2);
    assert_eq!(run(&["frobnicate"], "").0, 2);
    assert_eq!(run(&["--help"], "").0, 0);
}

#[test]
fn other_commands() {
    let p = petersen_text();
    let (code, out, _) = run(&["optimize"], &p);
    assert_eq!(code, 0);
    assert!(out.starts_with("opt: 6\n"));
    let (code, out, _) = run(&["oracle"], &p);
    assert_eq!((code, out.lines().next().unwrap()), (0, "opt: 6"));
    assert_eq!(run(&["oracle"], &render_graph(&gen::hypercube(5), Format::Td)).0, 2);
    let (code, out, _) = run(&["verify-constants", "--profile", "simple"], "");
    assert_eq!(code, 0);
    assert!(out.starts_with("# profile simple : pass\n"));
    assert_eq!(run(&["verify-constants"], "").0, 0);
    assert_eq!(run(&["verify-constants", "--profile", "nope"], "").0, 2);
    let (code, out, _) = run(&["audit", "--algorithm", "level4", "--component-limit", "0"], &c9_text());
    assert_eq!(code, 0);
    assert!(out.contains("violations: 0\n"), "{out}");
    assert!(!out.starts_with("audited nodes: 0\n"), "{out}");
    assert_eq!(run(&["solve", "--k", "30", "--budget", "3", "--component-limit", "0"], &render_graph(&gen::random_regular(50, 5, 1).unwrap(), Format::Td)).0, 3);
}

#[test]
fn gen_command() {
    let (code, out, _) = run(&["gen", "named", "petersen"], "");
    assert_eq!(code, 0);
    let g = parse_graph(&out).unwrap();
    assert_eq!((g.n(), g.m()), (10, 15));
    let c9 = parse_graph(&run(&["gen", "circulant", "--n", "9", "--offsets", "1,2"], "").1).unwrap();
    assert_eq!(c9.edges().collect::<Vec<_>>(), gen::circulant(9, &[1, 2]).unwrap().edges().collect::<Vec<_>>());
    let a = run(&["gen", "gnp", "--n", "12", "--p", "0.3", "--seed", "7"], "").1;
    let b = run(&["gen", "gnp", "--n", "12", "--p", "0.3", "--seed", "7"], "").1;
    assert_eq!(a, b);
    assert_ne!(a, run(&["gen", "gnp", "--n", "12", "--p", "0.3", "--seed", "8"], "").1);
    let e = run(&["gen", "regular", "--n", "10", "--d", "3", "--format", "edge"], "").1;
    assert!(e.starts_with("p edge 10 15\n"));
    assert_eq!(parse_graph_as(&e, Format::Edge).unwrap().max_degree(), 3);
    assert_eq!(run(&["gen", "regular", "--n", "9", "--d", "3"], "").0, 2);
}

#[test]
fn reduce_command() {
    // A pendant path gets reduced away; the trace is emitted as comments.
    let (code, out, _) = run(&["reduce", "--k", "2", "--emit-trace"], "p td 4 3\n1 2\n2 3\n3 4\n");
    assert_eq!(code, 0);
    assert!(out.contains("c k 0\n"), "{out}");
    assert!(out.contains("\nc trace "), "{out}");
    let g = parse_graph(&out).unwrap();
    assert_eq!(g.n(), 0);
}

#[test]
fn json_golden() {
    let p = petersen_text();
    let cases: Vec<(&str, Vec<&str>, String)> = vec![
        ("solve_petersen_k6", vec!["solve", "--k", "6", "--json"], p.clone()),
        ("solve_petersen_k5_level4", vec!["solve", "--k", "5", "--json", "--algorithm", "level4", "--component-limit", "0"], p.clone()),
        ("optimize_c9_1_2", vec!["optimize", "--json", "--component-limit", "0"], render_graph(&gen::circulant(9, &[1, 2]).unwrap(), Format::Td)),
        ("oracle_petersen", vec!["oracle", "--json"], p.clone()),
        ("gen_petersen", vec!["gen", "named", "petersen", "--json"], String::new()),
        ("reduce_path", vec!["reduce", "--json", "--k", "2", "--emit-trace"], "p td 4 3\n1 2\n2 3\n3 4\n".into()),
        ("audit_c9_1_2_level4", vec!["audit", "--json", "--k", "6", "--algorithm", "level4", "--component-limit", "0"], c9_text()),
    ];
    for (name, args, input) in cases {
        let (code, out, err) = run(&args, &input);
        assert!(code <= 1, "{name}: {err}");
        check_golden(name, &report(&out));
    }
    // Deterministic across runs apart from timing.
    let a = report(&run(&["optimize", "--json"], &p).1);
    let b = report(&run(&["optimize", "--json"], &p).1);
    assert_eq!(a, b);
}

#[test]
fn audit_records_are_lines() {
    // C9(1,2) is 4-regular, so level 4 branches (and audits) at the root.
    let (code, out, _) = run(&["audit", "--json", "--k", "5", "--algorithm", "level4", "--component-limit", "0"], &c9_text());
    assert_eq!(code, 0);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (records, last) = lines.split_at(lines.len() - 1);
    assert!(!records.is_empty());
    for r in records {
        assert_eq!(r["audit"]["violation"], Value::Bool(false));
    }
    assert_eq!(last[0]["result"]["summary"]["records"].as_u64(), Some(records.len() as u64));
}

#[test]
fn binary_and_budget_env() {
    let exe = env!("CARGO_BIN_EXE_vc");
    let dir = std::env::temp_dir().join(format!("vc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("petersen.td");
    std::fs::write(&file, petersen_text()).unwrap();
    let status = |args: &[&str], env: Option<&str>| {
        let mut c = Command::new(exe);
        c.args(args).env_remove(cli::BUDGET_ENV);
        if let Some(b) = env {
            c.env(cli::BUDGET_ENV, b);
        }
        c.output().unwrap().status.code().unwrap()
    };
    let f = file.to_str().unwrap();
    assert_eq!(status(&["solve", "--k", "6", f], None), 0);
    assert_eq!(status(&["solve", "--k", "5", f], None), 1);
    assert_eq!(status(&["solve", "--k", "6", "--component-limit", "0", "--algorithm", "level4", f], Some("1")), 3);
    assert_eq!(status(&["solve", "--k", "6", "--component-limit", "0", "--algorithm", "level4", "--budget", "1000", f], Some("1")), 0);
    assert_eq!(status(&["solve", "--k", "6", f], Some("lots")), 2);
    assert_eq!(status(&["solve", "--k", "6", "/nonexistent/graph.td"], None), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn small_corpus() -> Vec<Graph> {
    let mut v = vec![gen::petersen(), gen::hypercube(4), gen::circulant(9, &[1, 2]).unwrap(), gen::complete(4), gen::star(4), gen::grid(3, 4)];
    v.extend((5..=9).map(|n| gen::cycle(n).unwrap()));
    for seed in 0..10 {
        v.push(gen::gnp(14, 0.1 + 0.04 * seed as f64, seed).unwrap());
    }
    v
}

#[test]
fn reduce_then_oracle_matches_original() {
    for g in small_corpus() {
        let want = brute_force_vc_size(&g).unwrap() as i64;
        for limit in [0, 24] {
            let (reduced, trace) = Simplifier::new(limit).simplify(&Instance::new(g.clone(), 0));
            let rg = reduced.graph();
            let opt_r = brute_force_vc_size(rg).unwrap() as i64;
            assert_eq!(opt_r + trace.total_dk(), want);
            let (_, cover) = surplus_vc::oracle::brute_force_vc(rg).unwrap();
            let lifted = trace.lift(&cover);
            assert!(g.is_vertex_cover(&lifted) && lifted.len() as i64 == want);
        }
        // Through the CLI: reduced file + dk.
        let (code, out, _) = run(&["reduce", "--k", "0"], &render_graph(&g, Format::Td));
        assert_eq!(code, 0);
        let dk: i64 = out.lines().next().unwrap().rsplit(' ').next().unwrap().parse().unwrap();
        let rg = parse_graph(&out).unwrap();
        assert_eq!(brute_force_vc_size(&rg).unwrap() as i64 + dk, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn render_parse_round_trip(g in common::arb_graph(0, 20), edge in any::<bool>()) {
        let f = if edge { Format::Edge } else { Format::Td };
        let h = parse_graph(&render_graph(&g, f)).unwrap();
        prop_assert_eq!(h.n(), g.n());
        prop_assert_eq!(h.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }
}
