use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_padic-schur"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn schur_of_identity() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "id.txt", "5 6 2 2\n1 0\n0 1\n");
    let trace = dir.path().join("trace.csv");
    let out = run(&["schur", "--input", &input, "--trace", trace.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("factor T\n5 6 2 2\n1 0\n0 1\n"), "{text}");
    assert!(text.contains("# verification: OK"));
    let csv = fs::read_to_string(trace).unwrap();
    assert!(csv.starts_with("batch,shift_valuation,eps_valuation"));
}

#[test]
fn schur_writes_trace_rows() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "m.txt", "7 10 3 3\n1 2 0\n3 4 1\n0 5 6\n");
    let trace = dir.path().join("trace.csv");
    let output = dir.path().join("out.txt");
    let out = run(&[
        "schur",
        "--input",
        &input,
        "--output",
        output.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(fs::read_to_string(output).unwrap().contains("# verification: OK"));
    let csv = fs::read_to_string(trace).unwrap();
    assert!(csv.lines().count() > 1);
    for line in csv.lines().skip(1) {
        assert_eq!(line.split(',').count(), 3, "{line}");
    }
}

#[test]
fn svd_of_nilpotent_plus_p() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "m.txt", "7 10 2 2\n7 1\n0 0\n");
    let out = run(&["svd", "--input", &input]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("# singular norms: p^0 O(p^10)"));
}

#[test]
fn gze_of_low_precision_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "m.txt", "7 4 3 3\n49 0 0\n0 0 1\n0 0 0\n");
    let out = run(&["gze", "--input", &input]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# dimension: 2"), "{text}");
    assert!(text.contains("7 4 2 3\n0 1 0\n0 0 1\n"), "{text}");

    let out = run(&["gze", "--input", &input, "--track-precision"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# dimension: 3\n# precision: 2"), "{text}");
    assert!(text.contains("# verification: OK"), "{text}");
}

#[test]
fn hessenberg_and_qr_verify() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "m.txt", "3 5 3 3\n1 2 3\n4 5 6\n7 8 10\n");
    for args in [vec!["hessenberg"], vec!["qr"], vec!["qr", "--strict"]] {
        let mut a = args.clone();
        a.extend(["--input", &input]);
        let out = run(&a);
        assert!(out.status.success(), "{args:?}");
        assert!(stdout(&out).contains("# verification: OK"));
    }
}

#[test]
fn parse_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "7 10 2 2\n1 x\n0 0\n");
    assert_eq!(run(&["schur", "--input", &bad]).status.code(), Some(1));
    assert_eq!(run(&["svd", "--input", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn unknown_digits_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "m.txt", "7 5 2 2\n-1:1:3 -1:0:-1\n1 2\n");
    assert_eq!(run(&["schur", "--input", &input]).status.code(), Some(2));
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bench.csv");
    let out = run(&[
        "bench",
        "--p",
        "7",
        "--N",
        "6",
        "--n",
        "1,3",
        "--trials",
        "2",
        "--instances",
        "split",
        "--output",
        csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("method,n,trial,rounds,ops,verified,seconds"));
    assert_eq!(lines.count(), 12);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(5) == Some("true")));
    assert_eq!(run(&["bench", "--methods", "nope"]).status.code(), Some(1));
}
