use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use cvp01::io::{parse_instance, report_from_json, Problem};
use cvp01::maxsat::parse_wcnf;
use cvp01::pipeline::brute_force_cvp;

fn cvp01(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvp01"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = cvp01(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn gen(dir: &Path, name: &str, extra: &[&str]) -> String {
    let file = path(dir, name);
    let mut args = vec!["gen", "-o", &file];
    args.extend_from_slice(extra);
    ok(&args);
    file
}

#[test]
fn gen_solve_verify() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen(dir.path(), "a.txt", &["--n", "8", "--m", "4", "--mode", "planted-near:2", "--seed", "3"]);
    let report = path(dir.path(), "r.json");
    ok(&["solve", &inst, "--method", "brute", "-o", &report]);
    let out = ok(&["verify", &inst, &report]);
    assert!(out.starts_with("OK"));
}

#[test]
fn gen_is_deterministic() {
    let a = ok(&["gen", "--n", "6", "--m", "3", "--seed", "5"]);
    let b = ok(&["gen", "--n", "6", "--m", "3", "--seed", "5"]);
    assert_eq!(a, b);
    assert!(a.starts_with("cvp01-instance 1\n"));
}

#[test]
fn encoded_triangle_matches_brute_at_twelve() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen(dir.path(), "a.txt", &["--n", "12", "--m", "5", "--coord-bound", "8", "--seed", "21"]);
    let brute = path(dir.path(), "brute.json");
    let encoded = path(dir.path(), "enc.json");
    ok(&["solve", &inst, "--method", "brute", "-o", &brute]);
    ok(&["solve", &inst, "--method", "triangle-encoded", "-o", &encoded]);
    let a = report_from_json(&fs::read_to_string(&brute).unwrap()).unwrap();
    let b = report_from_json(&fs::read_to_string(&encoded).unwrap()).unwrap();
    assert_eq!(a.dist_pow, b.dist_pow);
    ok(&["verify", &inst, &encoded, "--against", &brute]);
}

#[test]
fn every_method_agrees_on_a_small_instance() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen(dir.path(), "a.txt", &["--n", "6", "--m", "3", "--coord-bound", "5", "--seed", "2"]);
    let file = parse_instance(&fs::read_to_string(&inst).unwrap()).unwrap();
    let Problem::Cvp(cvp) = &file.problem else { panic!() };
    let expected = brute_force_cvp(cvp).unwrap().dist_pow;
    for method in ["brute", "clique", "triangle", "triangle-encoded", "hyperclique", "maxsat-brute"] {
        let report = report_from_json(&ok(&["solve", &inst, "--method", method])).unwrap();
        assert_eq!(report.dist_pow, expected, "{method}");
    }
    let report = report_from_json(&ok(&["solve", &inst, "--method", "clique", "--k", "2"])).unwrap();
    assert_eq!(report.dist_pow, expected);
}

#[test]
fn svp_instances_solve_through_every_route() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen(dir.path(), "s.txt", &["--svp", "--n", "5", "--m", "3", "--coord-bound", "4", "--seed", "8"]);
    let brute = report_from_json(&ok(&["solve", &inst, "--method", "brute"])).unwrap();
    assert!(brute.z.iter().any(|&b| b));
    for (method, k) in [("triangle", "3"), ("clique", "2"), ("maxsat-brute", "3")] {
        let r = report_from_json(&ok(&["solve", &inst, "--method", method, "--k", k])).unwrap();
        assert_eq!(r.dist_pow, brute.dist_pow, "{method}");
    }
}

#[test]
fn decision_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let yes = gen(dir.path(), "yes.txt", &["--n", "7", "--m", "3", "--mode", "planted-zero", "--seed", "1"]);
    for method in ["brute", "triangle", "maxsat-brute"] {
        assert_eq!(cvp01(&["solve", &yes, "--method", method, "--decide"]).status.code(), Some(0));
    }
    // a target far outside the lattice span with threshold 0
    let text = "cvp01-instance 1\nkind cvp\np 2\nm 1\nn 3\nb 1\nb 1\nb 1\ntarget 100\nthreshold_pow 0\n";
    let no = path(dir.path(), "no.txt");
    fs::write(&no, text).unwrap();
    for method in ["brute", "triangle", "triangle-encoded", "maxsat-brute"] {
        assert_eq!(cvp01(&["solve", &no, "--method", method, "--decide"]).status.code(), Some(1), "{method}");
    }
}

#[test]
fn reduce_to_wcnf_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen(dir.path(), "a.txt", &["--n", "5", "--m", "3", "--mode", "planted-zero", "--seed", "4"]);
    let wcnf = path(dir.path(), "a.wcnf");
    ok(&["reduce", &inst, "--to", "wcnf", "-o", &wcnf]);
    let f = parse_wcnf(&fs::read_to_string(&wcnf).unwrap()).unwrap();
    let out = ok(&["maxsat", &wcnf]);
    assert!(out.trim_end().ends_with("YES"));
    let objective: num_bigint::BigInt = out
        .lines()
        .find_map(|l| l.strip_prefix("objective "))
        .unwrap()
        .parse()
        .unwrap();
    // planted zero: objective is the full budget scale·(n+1)^p·D = threshold
    assert_eq!(objective, f.threshold);
}

#[test]
fn reduce_to_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen(dir.path(), "a.txt", &["--n", "6", "--m", "3", "--seed", "4"]);
    let g = ok(&["reduce", &inst, "--to", "clique", "--k", "3"]);
    assert!(g.starts_with("cvp01-graph 1\nparts 4 4 4\nscale 6\n"));
    let inst4 = gen(dir.path(), "b.txt", &["--n", "4", "--m", "2", "--p", "4", "--seed", "4"]);
    let h = ok(&["reduce", &inst4, "--to", "hyperclique"]);
    assert!(h.starts_with("cvp01-hypergraph 1\np 4\nparts 2 2 2 2\nscale 1\n"));
}

#[test]
fn usage_and_resource_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(cvp01(&["solve"]).status.code(), Some(2));
    assert_eq!(cvp01(&["solve", "/nonexistent/file"]).status.code(), Some(2));
    let inst = gen(dir.path(), "a.txt", &["--n", "6", "--m", "3", "--seed", "4"]);
    assert_eq!(cvp01(&["solve", &inst, "--method", "triangle", "--k", "2"]).status.code(), Some(2));
    assert_eq!(cvp01(&["gen", "--n", "3", "--m", "2", "--p", "3"]).status.code(), Some(2));

    let big = gen(dir.path(), "big.txt", &["--n", "12", "--m", "3", "--seed", "4"]);
    let out = Command::new(env!("CARGO_BIN_EXE_cvp01"))
        .args(["solve", &big, "--method", "triangle"])
        .env("CVP01_ELEMENT_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let wide = gen(dir.path(), "wide.txt", &["--n", "25", "--m", "2", "--seed", "4"]);
    assert_eq!(cvp01(&["solve", &wide, "--method", "brute"]).status.code(), Some(3));
}

#[test]
fn verify_rejects_tampered_report() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen(dir.path(), "a.txt", &["--n", "5", "--m", "3", "--seed", "6"]);
    let report = path(dir.path(), "r.json");
    ok(&["solve", &inst, "-o", &report]);
    let mut r = report_from_json(&fs::read_to_string(&report).unwrap()).unwrap();
    r.dist_pow += 1;
    fs::write(&report, cvp01::io::report_to_json(&r)).unwrap();
    let out = cvp01(&["verify", &inst, &report]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bench_emits_csv_with_thread_cap() {
    let out = ok(&["--threads", "2", "bench", "--suite", "smoke"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,k,method,wall_time_s,distance,vertices,seed"));
    assert_eq!(lines.count(), 9);
    assert_eq!(cvp01(&["bench", "--suite", "nope"]).status.code(), Some(2));
}
