use std::path::PathBuf;
use std::process::{Command, Output};

use proptest::prelude::*;
use shortrat_cli::formats::{parse_matrix, parse_polytope, parse_vector};
use tempfile::TempDir;

const CUBE: &str = "6 4\n1 -1 0 0\n1 0 -1 0\n1 0 0 -1\n0 1 0 0\n0 0 1 0\n0 0 0 1\n";
const TWISTED_CUBIC: &str = "2 4\n1 1 1 1\n0 1 2 3\n";

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn shortrat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shortrat"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn run_file(body: &str, args: &[&str]) -> Output {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "input", body);
    let mut full: Vec<&str> = args.to_vec();
    full.push(p.to_str().unwrap());
    shortrat(&full)
}

#[test]
fn cube_count() {
    let o = run_file(CUBE, &["count"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "8");
}

#[test]
fn empty_polytope_exit_code() {
    // 0 ≤ x ≤ -1
    let o = run_file("2 2\n0 1\n-1 -1\n", &["count"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o).trim(), "0");
    let o = run_file("2 2\n0 1\n-1 -1\n", &["ehrhart"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn malformed_input_exit_code() {
    for bad in ["", "2 3\n1 1\n", "1 2\n1 x\n", "1 2\n1 1\nbogus 1 1\n"] {
        let o = run_file(bad, &["count"]);
        assert_eq!(o.status.code(), Some(1), "{bad:?}");
        assert!(!o.stderr.is_empty());
    }
    let o = shortrat(&["count", "/nonexistent/file"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn ehrhart_outputs() {
    // segment [0, 2]: 2m + 1 points
    let o = run_file("2 2\n2 -1\n0 1\n", &["ehrhart", "--terms", "5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[2], "1, 3, 5, 7, 9");
    // unit square: (m + 1)^2
    let o = run_file(
        "4 3\n1 -1 0\n0 1 0\n1 0 -1\n0 0 1\n",
        &["ehrhart", "--terms", "5"],
    );
    assert_eq!(stdout(&o).lines().last().unwrap(), "1, 4, 9, 16, 25");
    assert_eq!(stdout(&o).lines().nth(1).unwrap(), "1 1 ; 1 1 1");
}

#[test]
fn hilbert_and_gorenstein() {
    let orthant = "3 3\n1 0 0\n0 1 0\n0 0 1\n";
    let o = run_file(orthant, &["hilbert", "--grading", "1,1,1", "--terms", "4"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().next().unwrap(), "1 / (1-t)^3");
    assert_eq!(out.lines().last().unwrap(), "1, 3, 6, 10");
    let o = run_file(orthant, &["gorenstein"]);
    assert_eq!(stdout(&o).trim(), "yes (1,1,1)");
    let o = run_file("2 2\n1 0\n1 3\n", &["gorenstein"]);
    assert_eq!(stdout(&o).trim(), "no");
}

#[test]
fn toric_count_and_normal_form() {
    let o = run_file(TWISTED_CUBIC, &["toric", "count", "-D", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "raw 854"), "{out}");
    assert!(out.lines().any(|l| l == "diagonal 256"), "{out}");
    let o = run_file(
        TWISTED_CUBIC,
        &["toric", "count", "-D", "3", "--bound", "first-row"],
    );
    assert!(stdout(&o).lines().any(|l| l == "raw 69"));
    let o = run_file(TWISTED_CUBIC, &["toric", "nf", "--point", "1,0,1,0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "0,2,0,0");
}

#[test]
fn deterministic_and_json() {
    let a = run_file(CUBE, &["brion"]);
    let b = run_file(CUBE, &["brion"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let o = run_file(CUBE, &["--json", "count"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], "8");
}

#[test]
fn genfun_round_trip() {
    let dir = TempDir::new().unwrap();
    let cube = write(&dir, "cube", CUBE);
    let o = shortrat(&["brion", cube.to_str().unwrap()]);
    let g = write(&dir, "genfun", &stdout(&o));
    let o = shortrat(&["genfun", "count", g.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "8");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn parsers_never_panic(s in "[0-9 \\-\\n#a-z]{0,60}") {
        let _ = parse_polytope(&s);
        let _ = parse_matrix(&s);
        let _ = parse_vector(&s);
    }

    #[test]
    fn box_files_count(lo in prop::collection::vec(-3i64..=3, 1..=3), len in prop::collection::vec(0i64..=3, 3)) {
        let n = lo.len();
        let mut rows = Vec::new();
        let mut want = 1;
        for i in 0..n {
            let hi = lo[i] + len[i];
            want *= len[i] + 1;
            let mut up = vec![0; n + 1];
            up[0] = hi;
            up[i + 1] = -1;
            let mut down = vec![0; n + 1];
            down[0] = -lo[i];
            down[i + 1] = 1;
            rows.push(up);
            rows.push(down);
        }
        let text = format!(
            "{} {}\n{}",
            rows.len(),
            n + 1,
            rows.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n").collect::<String>()
        );
        let p = parse_polytope(&text).unwrap();
        prop_assert_eq!(shortrat::polytope::count(&p).unwrap(), shortrat::arith::int(want));
    }
}
