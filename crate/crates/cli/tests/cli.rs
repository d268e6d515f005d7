use std::process::{Command, Output};

use cyclic_mackey::cohomology::MackeyTable;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic-mackey")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn pic_structure_for_c3() {
    let o = run(&["pic", "--p", "3", "--n", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "Z^2 ⊕ (Z/3)^×/{±1} ≅ Z^2");
}

#[test]
fn rep2pic_example() {
    let o = run(&["rep2pic", "--p", "3", "--n", "2", "--rep", "rho(3)*1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2,0,-1;1,1");
}

#[test]
fn unit_table_text() {
    let o = run(&["cohomology", "--p", "3", "--n", "1", "--pic", "0,0;1", "--imin", "-5", "--imax", "5"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().filter(|l| l.ends_with(": Z") || l.contains(": Z ")).count(), 2);
    assert!(s.contains("i =    0: Z   inc from a=1: ×1   trf to a=1: ×3"), "{s}");
    assert_eq!(s.lines().filter(|l| l.contains("i = ")).count(), 22);
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let args = ["cohomology", "--p", "3", "--n", "2", "--rep", "rho(1), triv", "--negate", "--imin", "-3", "--imax", "6", "--json"];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["window"], serde_json::json!([-3, 6]));
    let t = MackeyTable::from_json(&v).unwrap();
    assert_eq!(t.to_json(), v);
}

#[test]
fn default_window() {
    let o = run(&["cohomology", "--p", "3", "--n", "1", "--pic", "0,0;1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["window"], serde_json::json!([-20, 20]));
}

#[test]
fn oracle_agrees_with_the_engine_in_text() {
    let o = run(&["oracle", "--p", "3", "--n", "1", "--rep", "rho(1)", "--imin", "0", "--imax", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("i =    2: Z   inc from a=1: ×3"));
}

#[test]
fn strat_example() {
    let o = run(&["strat", "--group", "A4", "--h", "(1 2)(3 4);(1 3)(2 4)", "--k", "G"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("Tate quotient C3"));
    let o = run(&["strat", "--group", "A4", "--h", "(1 2 3)", "--k", "G"]);
    assert!(stdout(&o).contains("0 summand(s)"));
}

#[test]
fn even_prime_is_rejected() {
    for args in [
        vec!["pic", "--p", "2", "--n", "1"],
        vec!["rep2pic", "--p", "2", "--n", "1", "--rep", "triv"],
        vec!["cohomology", "--p", "2", "--n", "1", "--pic", "0,0;1"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2));
        assert!(String::from_utf8_lossy(&o.stderr).contains("odd prime"));
    }
}

#[test]
fn flag_errors_exit_with_two() {
    assert_eq!(run(&["pic", "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "everything"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--p", "3", "--n", "1", "--pic", "0,0;1", "--rep", "triv"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "--p", "9", "--n", "1", "--pic", "0,0;1"]).status.code(), Some(2));
    assert_eq!(run(&["strat", "--group", "S3", "--h", "(1 2 3)", "--k", "(1 2)"]).status.code(), Some(2));
}

#[test]
fn verify_suite_with_thread_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_cyclic-mackey"))
        .args(["verify", "--suite", "stratcomb"])
        .env("CYCLIC_MACKEY_THREADS", "1")
        .output()
        .unwrap();
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("[PASS] criterion 9"), "{s}");
}
