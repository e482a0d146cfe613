use std::path::Path;
use std::process::{Command, Output};

use critlocus::io::{parse_q, read_domain_file};

fn run(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_critlocus")).args(args).current_dir(dir).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let c = run(&["construct", "--base", "disc", "--q", "cantor:depth=2", "--out", "k.domain"], dir.path());
    assert!(c.status.success());
    let v = run(&["verify", "--domain", "k.domain", "--grid", "1000"], dir.path());
    assert!(v.status.success());
    assert!(stdout(&v).contains("agreement_fraction: 1.0000000000000000e0"));
}

#[test]
fn domain_file_round_trip_keeps_gaps_exactly() {
    let dir = tempfile::tempdir().unwrap();
    for q in ["cantor:depth=5", "gaps:0.1,0.2;0.25,0.7"] {
        let o = run(&["construct", "--q", q, "--out", "k.domain"], dir.path());
        assert!(o.status.success());
        let k = read_domain_file(dir.path().join("k.domain")).unwrap();
        let expected = parse_q(q).unwrap();
        assert_eq!(k.as_composite().unwrap().q().gaps(), expected.gaps());
    }
}

#[test]
fn outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let commands: [&[&str]; 4] = [
        &["locus", "disc", "--samples", "25"],
        &["dirichlet", "--alpha", "pi", "--points", "20"],
        &["flow", "--alpha", "sqrt2", "--tmax", "3", "--dt", "0.1"],
        &["dimension", "--q", "cantor:depth=6"],
    ];
    for args in commands {
        let a = run(args, dir.path());
        let b = run(args, dir.path());
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    assert!(run(&["construct", "--q", "cantor:depth=3", "--out", "k.domain"], dir.path()).status.success());
    let render = ["render", "--domain", "k.domain", "--lattice", "t=0", "--out"];
    assert!(run(&[&render[..], &["a.svg"]].concat(), dir.path()).status.success());
    assert!(run(&[&render[..], &["b.svg"]].concat(), dir.path()).status.success());
    let a = std::fs::read(dir.path().join("a.svg")).unwrap();
    assert_eq!(a, std::fs::read(dir.path().join("b.svg")).unwrap());
    // the six boundary points of φ(0) on the composite boundary
    assert_eq!(String::from_utf8(a).unwrap().matches("#d62728").count(), 6);
}

#[test]
fn locus_csv_shape() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["locus", "disc", "--samples", "7"], dir.path());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,p.x,p.y,q.x,q.y,covolume");
    assert_eq!(lines.len(), 8);
    for l in &lines[1..] {
        let cov: f64 = l.split(',').nth(5).unwrap().parse().unwrap();
        assert!((cov - 0.75f64.sqrt()).abs() < 1e-12);
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["selftest"], dir.path()).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["delta"], dir.path()).status.code(), Some(2));
    assert_eq!(run(&["delta", "blob"], dir.path()).status.code(), Some(2));
    let o = run(&["locus", "square", "--samples", "5"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Parallelogram"));
    let o = run(&["construct", "--q", "cantor:depth=31", "--out", "k.domain"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("DepthTooLarge"));
    let o = run(&["locus", "lp:p=3", "--samples", "5"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotIrreducible"));
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let one = Command::new(env!("CARGO_BIN_EXE_critlocus"))
        .args(["delta", "lp:p=3"])
        .env("CRITLOCUS_THREADS", "1")
        .output()
        .unwrap();
    let default = run(&["delta", "lp:p=3"], dir.path());
    assert_eq!(one.stdout, default.stdout);
}
