//! End-to-end checks of the command line contract: exit codes, fixed
//! formats, and stream behavior.

use std::io::Write;
use std::process::{Command, Output, Stdio};

const E2: &str = r#"{"period":2,"points":[[0,1],[1,1]]}"#;
const E3: &str = r#"{"period":3,"points":[[0,1],[1,1],[2,1]]}"#;
const E4: &str = r#"{"period":4,"points":[[0,1],[1,1],[2,1],[0,2]]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_triodrot"))
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|s| s.to_string())
        .collect()
}

#[test]
fn enumerate_line_counts_match_the_census() {
    for (period, expected) in [("1", 3), ("2", 6), ("3", 20)] {
        let out = bin().args(["enumerate", "--period", period]).output().unwrap();
        assert!(out.status.success());
        assert_eq!(stdout_lines(&out).len(), expected, "period {period}");
    }
}

#[test]
fn enumerate_period_zero_is_a_usage_error() {
    let out = bin().args(["enumerate", "--period", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_requires_exactly_one_period_flag() {
    let out = bin().args(["enumerate"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin()
        .args(["enumerate", "--period", "2", "--max-period", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_csv_emits_the_fixed_header_and_known_rows() {
    let input = format!("{E3}\n{E4}\n{E2}\n");
    let out = run_with_stdin(&["classify", "--format", "csv"], &input);
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(
        lines[0],
        "period,rho,rp,mrp,green,black,red,regular,order_preserving,twist,modality,chi,laps,bound"
    );
    assert_eq!(lines[1], "3,1/3,\"(1,3)\",\"(1/3,1)\",0,3,0,true,true,true,1,,3,4");
    assert_eq!(lines[2], "4,1/4,\"(1,4)\",\"(1/4,1)\",1,3,0,true,true,true,2,3/4,3,5");
    let e2_row = &lines[3];
    assert!(e2_row.starts_with("2,1/2,"));
    assert!(e2_row.contains("false,false,false") || e2_row.contains(",false,"));
}

#[test]
fn classify_json_records_carry_the_full_field_set() {
    let out = run_with_stdin(&["classify"], &format!("{E4}\n"));
    assert!(out.status.success());
    let record: serde_json::Value =
        serde_json::from_str(&stdout_lines(&out)[0]).unwrap();
    assert_eq!(record["rho"], "1/4");
    assert_eq!(record["twist"], true);
    assert_eq!(record["census"]["black"], 3);
    assert_eq!(record["mrp"], serde_json::json!({"t": "1/4", "m": 1}));
    assert_eq!(record["chi"], "3/4");
    assert_eq!(record["canonicalizable"], true);
    assert_eq!(record["states"]["green"], 1);
    assert_eq!(record["countries"], 1);
}

#[test]
fn classify_reports_the_offending_line_on_parse_failure() {
    let out = run_with_stdin(&["classify"], &format!("{E3}\nnot json\n"));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 2"), "stderr was: {err}");
}

#[test]
fn conjugate_twists_and_flags_non_twists() {
    let out = run_with_stdin(&["conjugate"], &format!("{E3}\n"));
    assert!(out.status.success());
    assert_eq!(
        stdout_lines(&out)[0],
        r#"{"bound":4,"laps":3,"psi":[[0,"0/1"],[1,"1/3"],[2,"2/3"]],"rho":"1/3"}"#
    );

    let out = run_with_stdin(&["conjugate"], &format!("{E3}\n{E2}\n"));
    assert_eq!(out.status.code(), Some(1));
    let lines = stdout_lines(&out);
    assert!(lines[0].starts_with(r#"{"bound":4"#));
    assert_eq!(lines[1], r#"{"error":"NotTriodTwist"}"#);
}

#[test]
fn graph_dump_lists_headers_and_arrows() {
    let out = run_with_stdin(&["graph"], &format!("{E4}\n"));
    assert!(out.status.success());
    let lines = stdout_lines(&out);
    assert_eq!(lines[0], format!("# pattern {E4}"));
    let expected = [
        "x0 -> x1 d=1/3 black",
        "x1 -> x2 d=1/3 black",
        "x2 -> x0 d=1/3 black",
        "x2 -> x3 d=1/3 black",
        "x3 -> x0 d=0/3 green",
        "x3 -> x1 d=1/3 black",
    ];
    assert_eq!(&lines[1..], &expected);
}

#[test]
fn verify_exit_codes_follow_the_outcome() {
    let out = bin()
        .args(["verify", "--max-period", "2", "--deterministic"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["failures_total"], 0);
    assert_eq!(report["corpus_size"], 9);
    assert_eq!(report["wall_time_ms"], serde_json::Value::Null);

    let out = bin()
        .args(["verify", "--max-period", "2", "--checks", "bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // The flipped self-test check proves failures surface as exit 1 with
    // the offending pattern embedded in the report.
    let out = bin()
        .args([
            "verify",
            "--max-period",
            "4",
            "--checks",
            "selftest-flipped-bound",
            "--deterministic",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["failures_total"].as_u64().unwrap() > 0);
    let failures = &report["checks"]["selftest-flipped-bound"]["failures"];
    assert!(failures[0]["pattern"]["period"].is_u64());
}

#[test]
fn rerun_outputs_are_byte_identical() {
    let once = run_with_stdin(&["classify", "--format", "csv"], &format!("{E4}\n{E3}\n"));
    let twice = run_with_stdin(&["classify", "--format", "csv"], &format!("{E4}\n{E3}\n"));
    assert_eq!(once.stdout, twice.stdout);

    let a = bin().args(["enumerate", "--max-period", "4"]).output().unwrap();
    let b = bin().args(["enumerate", "--max-period", "4"]).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout_lines(&a).len(), 3 + 6 + 20 + 90);
}

#[test]
fn jobs_flag_does_not_change_the_report() {
    let one = bin()
        .args(["verify", "--max-period", "3", "--deterministic", "--jobs", "1"])
        .output()
        .unwrap();
    let many = bin()
        .args(["verify", "--max-period", "3", "--deterministic", "--jobs", "4"])
        .output()
        .unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}
