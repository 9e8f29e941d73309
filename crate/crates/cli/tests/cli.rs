mod common;

use std::path::Path;
use std::process::{Command, Output};

use boolnet::reductions::{build_gadget, example_instance, Family};
use boolnet::ts_isomorphic;
use boolnet_cli::{emit_instance, emit_ts, parse_instance, parse_net, parse_ts, ts_to_dot};
use common::{fixture, random_ts, read_fixture};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn boolnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boolnet")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_a1_emits_net() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("a1.net");
    let a1 = fixture("a1.ts");
    let o = boolnet(&["check", "--type", "nop,set,swap,free", "--input", path(&a1), "--output", path(&net)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("solvable"));
    let net = parse_net(&std::fs::read_to_string(&net).unwrap()).unwrap();
    let rg = net.reachability_graph(boolnet::DEFAULT_CAP).unwrap();
    assert!(ts_isomorphic(&rg, &parse_ts(&read_fixture("a1.ts")).unwrap()).is_some());
}

#[test]
fn check_a4_is_unsolvable() {
    let o = boolnet(&["check", "--type", "nop,set,swap,free", "--input", path(&fixture("a4.ts"))]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("unsolvable"));
}

#[test]
fn tiny_budget_is_inconclusive() {
    let dir = tempfile::tempdir().unwrap();
    let g = build_gadget(Family::T2, &example_instance(), None).unwrap();
    let file = dir.path().join("t2.ts");
    std::fs::write(&file, emit_ts(&g.ts)).unwrap();
    let o = boolnet(&["check", "--type", "nop,set,res,used", "--input", path(&file), "--budget", "1"]);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("inconclusive"));
}

#[test]
fn classify_prints_the_class() {
    let o = boolnet(&["classify", "--type", "nop,inp,free", "--g", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "polynomial\n");
    let o = boolnet(&["classify", "--type", "nop,inp,free", "--g", "2"]);
    assert_eq!(stdout(&o), "NP-complete\n");
    let o = boolnet(&["classify", "--type", "nop,set,res,used"]);
    assert_eq!(stdout(&o), "NP-complete\n");
}

#[test]
fn synth_writes_net_to_stdout() {
    let o = boolnet(&["synth", "--type", "nop,set,swap,free", "--input", path(&fixture("a1.ts"))]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let body = text.split_once('\n').unwrap().1;
    assert!(parse_net(body).is_ok(), "{body}");
}

#[test]
fn usage_and_io_errors_exit_2() {
    let a1 = fixture("a1.ts");
    assert_eq!(code(&boolnet(&["check", "--type", "nop,bogus", "--input", path(&a1)])), 2);
    assert_eq!(code(&boolnet(&["check", "--type", "nop", "--input", "/nonexistent/x.ts"])), 2);
    assert_eq!(code(&boolnet(&["frobnicate"])), 2);
    assert_eq!(code(&boolnet(&["check", "--type", "nop", "--input", path(&a1), "--budget", "0"])), 2);
    let unwritable = boolnet(&[
        "check",
        "--type",
        "nop,set,swap,free",
        "--input",
        path(&a1),
        "--output",
        "/nonexistent/dir/a1.net",
    ]);
    assert_eq!(code(&unwritable), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.ts");
    std::fs::write(&bad, "ts x\narc a e b\n").unwrap();
    let o = boolnet(&["check", "--type", "nop", "--input", path(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn gadget_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("t1.ts");
    let dot = dir.path().join("t1.dot");
    let o = boolnet(&[
        "gadget",
        "--family",
        "T1",
        "--input",
        path(&fixture("example.cnf")),
        "--output",
        path(&out),
        "--dot",
        path(&dot),
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("46 states, 21 events, bound 2"));
    let ts = parse_ts(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let direct = build_gadget(Family::T1, &example_instance(), None).unwrap();
    assert_eq!(ts, direct.ts);
    assert_eq!(std::fs::read_to_string(&dot).unwrap(), ts_to_dot(&direct.ts));
}

#[test]
fn gadget_rejects_bad_omega() {
    let o = boolnet(&["gadget", "--family", "T1", "--input", path(&fixture("example.cnf")), "--omega", "swap"]);
    assert_eq!(code(&o), 2);
    let o = boolnet(&["gadget", "--family", "T4", "--input", path(&fixture("example.cnf"))]);
    assert_eq!(code(&o), 2);
    let o = boolnet(&["gadget", "--family", "T4", "--input", path(&fixture("example.cnf")), "--omega", "none"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_gadget_t1() {
    let o = boolnet(&["verify-gadget", "--family", "T1", "--input", path(&fixture("example.cnf"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "confirmed: satisfiable and solvable\n");
    let o = boolnet(&["verify-gadget", "--family", "T1", "--input", path(&fixture("unsat_m4.cnf"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "confirmed: unsatisfiable and unsolvable\n");
}

#[test]
fn bounds_runs_the_polynomial_decider() {
    let o = boolnet(&["bounds", "--input", path(&fixture("a1.ts"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "bound 2\n");
    let o = boolnet(&["bounds", "--input", path(&fixture("a2.ts")), "--type", "nop,inp,set"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("unsolvable at SSP (s1, s2)"));
    let o = boolnet(&["bounds", "--input", path(&fixture("a1.ts")), "--type", "nop,inp,set"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("NP-complete"));
    assert!(stdout(&o).ends_with("no polynomial decider applies\n"));
}

#[test]
fn reach_of_synthesized_net() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("a1.net");
    let rg = dir.path().join("rg.ts");
    let a1 = fixture("a1.ts");
    boolnet(&["check", "--type", "nop,set,swap,free", "--input", path(&a1), "--output", path(&net)]);
    let o = boolnet(&["reach", "--input", path(&net), "--output", path(&rg)]);
    assert_eq!(code(&o), 0);
    let rg = parse_ts(&std::fs::read_to_string(&rg).unwrap()).unwrap();
    assert!(ts_isomorphic(&rg, &parse_ts(&read_fixture("a1.ts")).unwrap()).is_some());
    let o = boolnet(&["reach", "--input", path(&net), "--cap", "1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn dot_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (d1, d2) = (dir.path().join("1.dot"), dir.path().join("2.dot"));
    let a3 = fixture("a3.ts");
    for d in [&d1, &d2] {
        boolnet(&["check", "--type", "nop,set,swap,free", "--input", path(&a3), "--dot", path(d)]);
    }
    assert_eq!(std::fs::read(&d1).unwrap(), std::fs::read(&d2).unwrap());
}

#[test]
fn every_fixture_round_trips() {
    for name in ["a1.ts", "a2.ts", "a3.ts", "a4.ts", "t1_example.ts"] {
        let ts = parse_ts(&read_fixture(name)).unwrap();
        assert_eq!(parse_ts(&emit_ts(&ts)).unwrap(), ts, "{name}");
    }
    for name in ["example.cnf", "unsat_m4.cnf", "unsat_m6.cnf"] {
        let phi = parse_instance(&read_fixture(name)).unwrap();
        assert_eq!(parse_instance(&emit_instance(&phi)).unwrap(), phi, "{name}");
    }
}

proptest! {
    #[test]
    fn emitted_systems_parse_back(seed in any::<u64>()) {
        let ts = random_ts(&mut ChaCha8Rng::seed_from_u64(seed), 10, 5, 0.4);
        let text = emit_ts(&ts);
        prop_assert_eq!(parse_ts(&text).unwrap(), ts.clone());
        prop_assert_eq!(ts_to_dot(&ts), ts_to_dot(&parse_ts(&text).unwrap()));
    }

    #[test]
    fn comments_and_spacing_are_ignored(seed in any::<u64>()) {
        let ts = random_ts(&mut ChaCha8Rng::seed_from_u64(seed), 6, 3, 0.4);
        let noisy: String = emit_ts(&ts)
            .lines()
            .map(|l| format!("  {}\t# note\n\n", l.replace(' ', "   ")))
            .collect();
        prop_assert_eq!(parse_ts(&noisy).unwrap(), ts);
    }
}
