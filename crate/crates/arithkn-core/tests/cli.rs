//! End-to-end tests of the `arithkn` binary: exit codes, stdout/stderr
//! separation, format handling, and byte-level determinism.

use std::process::{Command, Output};

fn arithkn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arithkn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("stderr is UTF-8")
}

#[test]
fn verify_accepts_the_five_value_example() {
    let o = arithkn(&["verify", "105", "70", "15", "14", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"n\":5,\"values\":[105,70,15,14,6],\"sum\":210,\"b\":2}\n"
    );
    assert!(stderr(&o).is_empty());
}

#[test]
fn verify_rejects_with_exit_1() {
    let o = arithkn(&["verify", "2", "2", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "{\"error\":\"values share the common factor 2\"}\n"
    );
    assert!(stderr(&o).is_empty());
}

#[test]
fn feasible_infeasible_exits_1_with_reason() {
    let o = arithkn(&["feasible", "--n", "18", "--target", "79"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "{\"n\":18,\"c\":79,\"status\":\"infeasible\",\"reason\":\"search_exhausted\",\"witness\":null}\n"
    );
    assert!(stderr(&o).is_empty());
}

#[test]
fn feasible_feasible_exits_0() {
    let o = arithkn(&["feasible", "--n", "27", "--target", "181"]);
    assert_eq!(o.status.code(), Some(0));
    let line = stdout(&o);
    assert!(line.contains("\"status\":\"feasible\""));
    assert!(line.contains("\"witness\":{"));
}

#[test]
fn count_n4_payload() {
    let o = arithkn(&["count", "--n", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"n\":4,\"count\":14}\n");
}

#[test]
fn construct_and_bounds_round_trip() {
    let o = arithkn(&["construct", "--n", "13", "--target", "41"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("{\"n\":13,\"values\":[41,"));

    let o = arithkn(&["--format", "csv", "bounds", "--n", "18"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "18,71,3,77,3,90.25,82\n");
}

#[test]
fn enumerate_streams_three_lines_for_n3() {
    let o = arithkn(&["enumerate", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 3);
    assert!(out.starts_with("{\"n\":3,\"values\":[3,2,1]"));
}

#[test]
fn unit_fractions_respects_limit() {
    let o = arithkn(&["unit-fractions", "--n", "4", "--limit", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"n\":4,\"denominators\":[2,3,7,42],\"lcm\":42}\n\
         {\"n\":4,\"denominators\":[2,3,8,24],\"lcm\":24}\n"
    );
}

#[test]
fn prime_table_markdown_row() {
    let o = arithkn(&["prime-table", "--n-min", "14", "--n-max", "14", "--format", "markdown"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "| n | Yes, bound | No, obstruction | Yes, quadratic | Yes, other | No, other |\n\
         | --- | --- | --- | --- | --- | --- |\n\
         | 14 | p <= 45 | p > 50 |  | 47 |  |\n"
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &[][..],
        &["feasible", "--n", "18"][..],
        &["count", "--n", "x"][..],
    ] {
        let o = arithkn(args);
        assert_eq!(o.status.code(), Some(2), "args: {args:?}");
        assert!(stdout(&o).is_empty());
        assert_eq!(stderr(&o).lines().count(), 1);
    }
}

#[test]
fn domain_errors_exit_2_with_stderr_only() {
    let o = arithkn(&["enumerate", "--n", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    assert!(stderr(&o).starts_with("error: "));
}

#[test]
fn markdown_restricted_to_prime_table() {
    let o = arithkn(&["--format", "markdown", "count", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    assert_eq!(
        stderr(&o),
        "error: markdown format is only available for prime-table\n"
    );
}

#[test]
fn quiet_keeps_exit_codes() {
    let o = arithkn(&["--quiet", "feasible", "--n", "18", "--target", "79"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).is_empty());
}

#[test]
fn help_exits_0() {
    let o = arithkn(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("unit-fractions"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        &["prime-table", "--n-min", "3", "--n-max", "27"][..],
        &["prime-table", "--n-min", "3", "--n-max", "27", "--format", "markdown"][..],
        &["enumerate", "--n", "6", "--format", "csv"][..],
        &["count", "--n", "6", "--jobs", "4"][..],
        &["feasible", "--n", "26", "--target", "167"][..],
    ] {
        let first = arithkn(args);
        let second = arithkn(args);
        assert_eq!(first.status.code(), second.status.code(), "args: {args:?}");
        assert_eq!(first.stdout, second.stdout, "args: {args:?}");
        assert_eq!(first.stderr, second.stderr, "args: {args:?}");
    }
}
