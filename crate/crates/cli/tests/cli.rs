use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke2"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hecke2"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn m_table_rows() {
    let out = stdout(&run(&["m-table", "--degree", "1"]));
    assert_eq!(out, "(0,0):[1]\n(1,0):[3]\n(0,1):[5]\n");
    let out = stdout(&run(&["m-table", "--degree", "3"]));
    assert!(out.lines().any(|l| l == "(1,2):[11,19]"));
    let out = stdout(&run(&["m-table", "--degree", "0", "--format", "csv"]));
    assert_eq!(out, "0,0,1\n");
}

#[test]
fn tp_rows() {
    let out = stdout(&run(&["tp-table", "--max-prime", "17", "--format", "csv"]));
    let row = |p: &str| {
        out.lines()
            .find(|l| l.split(',').next() == Some(p))
            .unwrap_or_else(|| panic!("no row for {p}"))
            .to_string()
    };
    assert_eq!(row("3"), "3,1 0");
    assert!(row("7").starts_with("7,1 1,3 1,"));
    assert!(row("13").starts_with("13,0 1,2 1,0 3"));
    assert!(row("17").starts_with("17,2 0,0 2,2 2,6 0,4 2,0 6"));
    let primes: Vec<&str> = out.lines().map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(primes, ["3", "5", "7", "11", "13", "17"]);
}

#[test]
fn theta_rows() {
    let out = stdout(&run(&["theta-table", "--max-level", "3", "-c", "2"]));
    assert!(out.lines().any(|l| l == "θ(1,3) c=2: [3,11]"));
    let csv = stdout(&run(&["theta-table", "--max-level", "3", "-c", "4", "--format", "csv"]));
    assert!(csv.lines().any(|l| l == "4,3,1,5 13 21"));
    assert!(csv.lines().any(|l| l == "4,3,2,17"));
}

#[test]
fn code_of_eleven() {
    assert_eq!(stdout(&run(&["code-of", "11"])), "3,0\n");
    assert_eq!(stdout(&run(&["code-of", "19"])), "1,2\n");
    assert_eq!(run(&["code-of", "4"]).status.code(), Some(2));
}

#[test]
fn decompose_round_trips_m_table_rows() {
    let table = stdout(&run(&["m-table", "--degree", "4", "--format", "csv"]));
    let dir = tempfile::tempdir().unwrap();
    for line in table.lines() {
        let mut fields = line.splitn(3, ',');
        let (a, b, exps) = (fields.next().unwrap(), fields.next().unwrap(), fields.next().unwrap());
        let path = dir.path().join(format!("m_{a}_{b}.txt"));
        std::fs::write(&path, exps).unwrap();
        let out = stdout(&run(&["decompose", path.to_str().unwrap(), "--format", "csv"]));
        assert_eq!(out.lines().nth(1), Some(format!("m,{a} {b}").as_str()), "row {line}");
    }
}

#[test]
fn decompose_reads_stdin_and_q_exponents() {
    let out = stdout(&run_with_stdin(&["decompose", "-"], "11, 19\n"));
    assert_eq!(out, "delta: [11,19]\nm: [(1,2)]\npoly: xy^2\n");
    // Δ³ = q³ + q¹¹ + q¹⁹ + …, known here to precision 12.
    let out = stdout(&run_with_stdin(
        &["decompose", "-", "--kind", "q", "--precision", "12"],
        "3 11",
    ));
    assert!(out.starts_with("delta: [3]\n"), "{out}");
    let bad = run_with_stdin(&["decompose", "-"], "3 x");
    assert_eq!(bad.status.code(), Some(2));
    let even = run_with_stdin(&["decompose", "-", "--kind", "q"], "2 5");
    assert_eq!(even.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--suite", "mbasis"]);
    let text = stdout(&ok);
    assert!(text.lines().all(|l| l.starts_with("PASS") || l.starts_with("mbasis:")));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["m-table", "--bogus"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["m-table", "--degree", "4"][..],
        &["tp-table", "--max-prime", "31", "--degree", "8", "--format", "csv"],
        &["theta-table", "--max-level", "4", "-c", "4"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
