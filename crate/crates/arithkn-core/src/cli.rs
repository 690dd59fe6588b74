//! The `arithkn` command-line interface.
//!
//! One subcommand per capability: `verify`, `construct`, `bounds`,
//! `feasible`, `enumerate`, `count`, `prime-table`, `unit-fractions`.
//! Output is machine-readable (`--format json` by default, `csv` for flat
//! rows, `markdown` for the prime table only) and byte-identical across
//! runs of the same invocation. Diagnostics go to standard error only.
//!
//! Exit codes: 0 for success (including "feasible"), 1 for a proven
//! negative (invalid structure, no construction found, infeasible target),
//! 2 for usage or domain errors. Negative verify/construct results print a
//! one-line `{"error": "..."}` object regardless of format; an error payload
//! has no meaningful CSV shape.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds::{bound_report, general_threshold_string, prime_threshold_string};
use crate::constructions::construct_any;
use crate::search::{
    count_structures_with, enumerate_structures_with, max_value_feasible_with, prime_table,
    unit_fraction_solutions, PrimeTableRow,
};
use crate::structure::{verify, Structure, UnitFractionSolution};
use crate::{Error, Value};

/// Captured outcome of one CLI invocation, for embedding and tests. The
/// binary streams instead via [`run_streaming`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    /// 0 success/feasible, 1 proven negative, 2 usage or domain error.
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Parser)]
#[command(
    name = "arithkn",
    version,
    about = "Arithmetical structures on complete graphs: construct, verify, enumerate, decide"
)]
struct Cli {
    /// Output format (markdown is available for prime-table only).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Suppress standard output; exit codes still convey the outcome.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check whether the given values form an arithmetical structure.
    Verify {
        /// The candidate values, in any order.
        #[arg(required = true, num_args = 1..)]
        values: Vec<Value>,
    },
    /// Build a structure with the given largest value from the closed-form
    /// families.
    Construct {
        /// Number of vertices.
        #[arg(long)]
        n: u32,
        /// Requested largest value.
        #[arg(long)]
        target: Value,
    },
    /// Report the construction bounds and obstruction thresholds for K_n.
    Bounds {
        /// Number of vertices.
        #[arg(long)]
        n: u32,
    },
    /// Decide whether some structure on K_n attains the given largest value.
    Feasible {
        /// Number of vertices.
        #[arg(long)]
        n: u32,
        /// Largest value to decide.
        #[arg(long)]
        target: Value,
        /// Skip obstruction and construction shortcuts; run the exhaustive
        /// case search only. The answer is identical either way.
        #[arg(long)]
        no_fast_paths: bool,
    },
    /// Enumerate all structures on K_n, one per line.
    Enumerate {
        /// Number of vertices.
        #[arg(long)]
        n: u32,
        /// Stop after this many structures.
        #[arg(long)]
        limit: Option<u64>,
        /// Run past the n <= 8 cap.
        #[arg(long)]
        force: bool,
    },
    /// Count all structures on K_n without printing them.
    Count {
        /// Number of vertices.
        #[arg(long)]
        n: u32,
        /// Worker threads for the count (default: sequential).
        #[arg(long)]
        jobs: Option<usize>,
        /// Run past the n <= 8 cap.
        #[arg(long)]
        force: bool,
    },
    /// Classify prime largest values for each n in a range.
    PrimeTable {
        /// First n (>= 3).
        #[arg(long)]
        n_min: u32,
        /// Last n (<= 30).
        #[arg(long)]
        n_max: u32,
    },
    /// Enumerate the solutions of 1/x_1 + ... + 1/x_n = 1, one per line.
    UnitFractions {
        /// Number of denominators.
        #[arg(long)]
        n: u32,
        /// Stop after this many solutions.
        #[arg(long)]
        limit: Option<u64>,
        /// Run past the n <= 8 cap.
        #[arg(long)]
        force: bool,
    },
}

const USAGE_HINT: &str = "usage: arithkn [--format json|csv|markdown] [--quiet] \
<verify VALUES... | construct --n N --target C | bounds --n N | \
feasible --n N --target C [--no-fast-paths] | enumerate --n N [--limit K] [--force] | \
count --n N [--jobs J] [--force] | prime-table --n-min A --n-max B | \
unit-fractions --n N [--limit K] [--force]>";

/// Runs one invocation (arguments without the program name) and captures the
/// output.
pub fn run<I, S>(args: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let mut out = Vec::new();
    let mut err = Vec::new();
    let exit_code = run_streaming(args, &mut out, &mut err);
    CommandResult {
        exit_code,
        stdout: String::from_utf8_lossy(&out).into_owned(),
        stderr: String::from_utf8_lossy(&err).into_owned(),
    }
}

/// Runs one invocation, streaming payload to `out` and diagnostics to `err`,
/// and returns the exit code.
pub fn run_streaming<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("arithkn")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = write!(out, "{}", e.render());
                return 0;
            }
            _ => {
                let _ = writeln!(err, "{USAGE_HINT}");
                return 2;
            }
        },
    };
    let mut sink = io::sink();
    let out: &mut dyn Write = if cli.quiet { &mut sink } else { out };
    dispatch(cli.command, cli.format, out, err)
}

fn domain_error(e: &Error, err: &mut dyn Write) -> i32 {
    let _ = writeln!(err, "error: {e}");
    2
}

/// One-line `{"error": "..."}` payload for proven-negative outcomes.
fn negative_payload(e: &Error, out: &mut dyn Write) -> i32 {
    let _ = writeln!(out, "{}", serde_json::json!({ "error": e.to_string() }));
    1
}

fn reject_markdown(format: Format, err: &mut dyn Write) -> Option<i32> {
    if format == Format::Markdown {
        let _ = writeln!(err, "error: markdown format is only available for prime-table");
        Some(2)
    } else {
        None
    }
}

fn emit_structure(s: &Structure, format: Format, out: &mut dyn Write) {
    let _ = match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(s).expect("structure is JSON")),
        Format::Csv => writeln!(out, "{}", s.csv_row()),
        Format::Markdown => unreachable!("rejected before dispatch"),
    };
}

/// Count payload; field order is the output order.
#[derive(Serialize)]
struct CountPayload {
    n: u32,
    count: u64,
}

/// Bounds payload with thresholds included; field order is the output order.
#[derive(Serialize)]
struct BoundsPayload {
    n: u32,
    general_bound: Value,
    general_k: u32,
    prime_bound: Value,
    prime_k: u32,
    obstruction_general_threshold: String,
    obstruction_prime_threshold: String,
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn prime_table_cells(row: &PrimeTableRow, list_sep: &str) -> [String; 6] {
    [
        row.n().to_string(),
        format!("p <= {}", row.prime_bound()),
        format!("p > {}", row.obstruction_threshold()),
        join(row.yes_quadratic(), list_sep),
        join(row.yes_other(), list_sep),
        join(row.no_other(), list_sep),
    ]
}

fn dispatch(command: Command, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match command {
        Command::Verify { values } => {
            if let Some(code) = reject_markdown(format, err) {
                return code;
            }
            match verify(&values) {
                Ok(s) => {
                    emit_structure(&s, format, out);
                    0
                }
                Err(
                    e @ (Error::Empty
                    | Error::NonPositive
                    | Error::NotDivisor { .. }
                    | Error::CommonFactor(_)),
                ) => negative_payload(&e, out),
                Err(e) => domain_error(&e, err),
            }
        }
        Command::Construct { n, target } => {
            if let Some(code) = reject_markdown(format, err) {
                return code;
            }
            match construct_any(n, target) {
                Ok(found) => {
                    emit_structure(&found.structure, format, out);
                    0
                }
                Err(e @ Error::NotFoundByConstruction { .. }) => negative_payload(&e, out),
                Err(e) => domain_error(&e, err),
            }
        }
        Command::Bounds { n } => {
            if let Some(code) = reject_markdown(format, err) {
                return code;
            }
            let report = match bound_report(n) {
                Ok(r) => r,
                Err(e) => return domain_error(&e, err),
            };
            let payload = BoundsPayload {
                n: report.n(),
                general_bound: report.general_bound(),
                general_k: report.general_k(),
                prime_bound: report.prime_bound(),
                prime_k: report.prime_k(),
                obstruction_general_threshold: general_threshold_string(n),
                obstruction_prime_threshold: prime_threshold_string(n),
            };
            let _ = match format {
                Format::Json => writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&payload).expect("bounds are JSON")
                ),
                Format::Csv => writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    payload.n,
                    payload.general_bound,
                    payload.general_k,
                    payload.prime_bound,
                    payload.prime_k,
                    payload.obstruction_general_threshold,
                    payload.obstruction_prime_threshold
                ),
                Format::Markdown => unreachable!("rejected before dispatch"),
            };
            0
        }
        Command::Feasible {
            n,
            target,
            no_fast_paths,
        } => {
            if let Some(code) = reject_markdown(format, err) {
                return code;
            }
            match max_value_feasible_with(n, target, !no_fast_paths) {
                Ok(result) => {
                    let _ = match format {
                        Format::Json => writeln!(
                            out,
                            "{}",
                            serde_json::to_string(&result).expect("result is JSON")
                        ),
                        Format::Csv => writeln!(
                            out,
                            "{},{},{},{},{}",
                            result.n(),
                            result.target_c(),
                            result.status_name(),
                            result.reason_name(),
                            result.witness().map_or(String::new(), |w| join(w.values(), " "))
                        ),
                        Format::Markdown => unreachable!("rejected before dispatch"),
                    };
                    if result.is_feasible() {
                        0
                    } else {
                        1
                    }
                }
                Err(e) => domain_error(&e, err),
            }
        }
        Command::Enumerate { n, limit, force } => {
            if let Some(code) = reject_markdown(format, err) {
                return code;
            }
            let stream = match enumerate_structures_with(n, force) {
                Ok(s) => s,
                Err(e) => return domain_error(&e, err),
            };
            let mut emitted = 0u64;
            let mut skipped = 0u64;
            for item in stream {
                if limit.is_some_and(|cap| emitted >= cap) {
                    break;
                }
                match item {
                    Ok(s) => {
                        emit_structure(&s, format, out);
                        emitted += 1;
                    }
                    Err(_) => skipped += 1,
                }
            }
            if skipped > 0 {
                let _ = writeln!(
                    err,
                    "error: {skipped} structures exceed 128-bit arithmetic and were skipped"
                );
                2
            } else {
                0
            }
        }
        Command::Count { n, jobs, force } => {
            if let Some(code) = reject_markdown(format, err) {
                return code;
            }
            match count_structures_with(n, jobs, force) {
                Ok(count) => {
                    let _ = match format {
                        Format::Json => writeln!(
                            out,
                            "{}",
                            serde_json::to_string(&CountPayload { n, count })
                                .expect("count is JSON")
                        ),
                        Format::Csv => writeln!(out, "{n},{count}"),
                        Format::Markdown => unreachable!("rejected before dispatch"),
                    };
                    0
                }
                Err(e) => domain_error(&e, err),
            }
        }
        Command::PrimeTable { n_min, n_max } => {
            let rows = match prime_table(n_min, n_max) {
                Ok(rows) => rows,
                Err(e) => return domain_error(&e, err),
            };
            match format {
                Format::Json => {
                    for row in &rows {
                        let _ = writeln!(
                            out,
                            "{}",
                            serde_json::to_string(row).expect("row is JSON")
                        );
                    }
                }
                Format::Csv => {
                    for row in &rows {
                        let _ = writeln!(out, "{}", prime_table_cells(row, " ").join(","));
                    }
                }
                Format::Markdown => {
                    let _ = writeln!(
                        out,
                        "| n | Yes, bound | No, obstruction | Yes, quadratic | Yes, other | No, other |"
                    );
                    let _ = writeln!(out, "| --- | --- | --- | --- | --- | --- |");
                    for row in &rows {
                        let _ = writeln!(out, "| {} |", prime_table_cells(row, ", ").join(" | "));
                    }
                }
            }
            0
        }
        Command::UnitFractions { n, limit, force } => {
            if let Some(code) = reject_markdown(format, err) {
                return code;
            }
            let stream = match unit_fraction_solutions(n, force) {
                Ok(s) => s,
                Err(e) => return domain_error(&e, err),
            };
            let mut emitted = 0u64;
            let mut skipped = 0u64;
            for item in stream {
                if limit.is_some_and(|cap| emitted >= cap) {
                    break;
                }
                let solution = item.and_then(|d| UnitFractionSolution::new(&d));
                match solution {
                    Ok(u) => {
                        let _ = match format {
                            Format::Json => writeln!(
                                out,
                                "{}",
                                serde_json::to_string(&u).expect("solution is JSON")
                            ),
                            Format::Csv => writeln!(
                                out,
                                "{},{},{}",
                                u.n(),
                                u.lcm(),
                                join(u.denominators(), " ")
                            ),
                            Format::Markdown => unreachable!("rejected before dispatch"),
                        };
                        emitted += 1;
                    }
                    Err(_) => skipped += 1,
                }
            }
            if skipped > 0 {
                let _ = writeln!(
                    err,
                    "error: {skipped} solutions exceed 128-bit arithmetic and were skipped"
                );
                2
            } else {
                0
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(args: &[&str]) -> CommandResult {
        let r = run(args.iter().copied());
        assert_eq!(r.exit_code, 0, "stderr: {}", r.stderr);
        assert!(r.stderr.is_empty(), "stderr: {}", r.stderr);
        r
    }

    #[test]
    fn verify_accepts_opening_example() {
        let r = ok(&["verify", "105", "70", "15", "14", "6"]);
        assert_eq!(
            r.stdout,
            "{\"n\":5,\"values\":[105,70,15,14,6],\"sum\":210,\"b\":2}\n"
        );
        let r = ok(&["--format", "csv", "verify", "6", "14", "15", "70", "105"]);
        assert_eq!(r.stdout, "5,2,210,105 70 15 14 6\n");
    }

    #[test]
    fn verify_rejects_with_payload() {
        let r = run(["verify", "2", "2", "2"]);
        assert_eq!(r.exit_code, 1);
        assert_eq!(r.stdout, "{\"error\":\"values share the common factor 2\"}\n");
        assert!(r.stderr.is_empty());

        let r = run(["verify", "5", "2", "1"]);
        assert_eq!(r.exit_code, 1);
        assert_eq!(
            r.stdout,
            "{\"error\":\"value 5 at index 0 does not divide the sum 8\"}\n"
        );
    }

    #[test]
    fn construct_finds_and_reports_misses() {
        let r = ok(&["construct", "--n", "13", "--target", "37"]);
        assert!(r.stdout.contains("\"sum\":"));
        assert!(r.stdout.starts_with("{\"n\":13,\"values\":[37,"));

        let r = run(["construct", "--n", "18", "--target", "79"]);
        assert_eq!(r.exit_code, 1);
        assert_eq!(
            r.stdout,
            "{\"error\":\"no construction yields largest value 79 on 18 vertices\"}\n"
        );
    }

    #[test]
    fn bounds_payload_shape() {
        let r = ok(&["bounds", "--n", "18"]);
        assert_eq!(
            r.stdout,
            "{\"n\":18,\"general_bound\":71,\"general_k\":3,\"prime_bound\":77,\"prime_k\":3,\
             \"obstruction_general_threshold\":\"90.25\",\"obstruction_prime_threshold\":\"82\"}\n"
        );
        let r = ok(&["--format", "csv", "bounds", "--n", "18"]);
        assert_eq!(r.stdout, "18,71,3,77,3,90.25,82\n");
    }

    #[test]
    fn feasible_exit_codes_and_rows() {
        let r = run(["feasible", "--n", "18", "--target", "79"]);
        assert_eq!(r.exit_code, 1);
        assert_eq!(
            r.stdout,
            "{\"n\":18,\"c\":79,\"status\":\"infeasible\",\"reason\":\"search_exhausted\",\
             \"witness\":null}\n"
        );
        assert!(r.stderr.is_empty());

        let r = run(["--format", "csv", "feasible", "--n", "18", "--target", "79"]);
        assert_eq!(r.exit_code, 1);
        assert_eq!(r.stdout, "18,79,infeasible,search_exhausted,\n");

        let r = ok(&["--format", "csv", "feasible", "--n", "3", "--target", "3"]);
        assert_eq!(r.stdout, "3,3,feasible,construction,3 2 1\n");

        let r = run([
            "feasible",
            "--n",
            "18",
            "--target",
            "79",
            "--no-fast-paths",
        ]);
        assert_eq!(r.exit_code, 1);
        assert!(r.stdout.contains("\"reason\":\"search_exhausted\""));
    }

    #[test]
    fn enumerate_streams_lines() {
        let r = ok(&["enumerate", "--n", "3"]);
        assert_eq!(
            r.stdout,
            "{\"n\":3,\"values\":[3,2,1],\"sum\":6,\"b\":2}\n\
             {\"n\":3,\"values\":[2,1,1],\"sum\":4,\"b\":2}\n\
             {\"n\":3,\"values\":[1,1,1],\"sum\":3,\"b\":3}\n"
        );
        let r = ok(&["enumerate", "--n", "3", "--limit", "2"]);
        assert_eq!(r.stdout.lines().count(), 2);
        let r = ok(&["--format", "csv", "enumerate", "--n", "3", "--limit", "1"]);
        assert_eq!(r.stdout, "3,2,6,3 2 1\n");
    }

    #[test]
    fn count_payloads() {
        let r = ok(&["count", "--n", "4"]);
        assert_eq!(r.stdout, "{\"n\":4,\"count\":14}\n");
        let r = ok(&["--format", "csv", "count", "--n", "4", "--jobs", "2"]);
        assert_eq!(r.stdout, "4,14\n");
    }

    #[test]
    fn unit_fractions_streams_solutions() {
        let r = ok(&["unit-fractions", "--n", "3"]);
        assert_eq!(
            r.stdout,
            "{\"n\":3,\"denominators\":[2,3,6],\"lcm\":6}\n\
             {\"n\":3,\"denominators\":[2,4,4],\"lcm\":4}\n\
             {\"n\":3,\"denominators\":[3,3,3],\"lcm\":3}\n"
        );
        let r = ok(&["--format", "csv", "unit-fractions", "--n", "3"]);
        assert_eq!(r.stdout, "3,6,2 3 6\n3,4,2 4 4\n3,3,3 3 3\n");
    }

    #[test]
    fn prime_table_formats() {
        let r = ok(&["prime-table", "--n-min", "18", "--n-max", "18"]);
        assert_eq!(
            r.stdout,
            "{\"n\":18,\"prime_bound\":77,\"obstruction_threshold\":\"82\",\
             \"yes_quadratic\":[],\"yes_other\":[],\"no_other\":[79]}\n"
        );
        let r = ok(&["--format", "csv", "prime-table", "--n-min", "18", "--n-max", "18"]);
        assert_eq!(r.stdout, "18,p <= 77,p > 82,,,79\n");
        let r = ok(&["--format", "markdown", "prime-table", "--n-min", "18", "--n-max", "18"]);
        assert_eq!(
            r.stdout,
            "| n | Yes, bound | No, obstruction | Yes, quadratic | Yes, other | No, other |\n\
             | --- | --- | --- | --- | --- | --- |\n\
             | 18 | p <= 77 | p > 82 |  |  | 79 |\n"
        );
    }

    #[test]
    fn markdown_is_prime_table_only() {
        for args in [
            vec!["--format", "markdown", "bounds", "--n", "5"],
            vec!["--format", "markdown", "verify", "1", "1"],
            vec!["--format", "markdown", "count", "--n", "3"],
        ] {
            let r = run(args);
            assert_eq!(r.exit_code, 2);
            assert!(r.stdout.is_empty());
            assert_eq!(
                r.stderr,
                "error: markdown format is only available for prime-table\n"
            );
        }
    }

    #[test]
    fn usage_errors_exit_2_with_one_line_hint() {
        for args in [
            vec!["bogus"],
            vec![],
            vec!["feasible", "--n", "18"],
            vec!["verify"],
            vec!["count", "--n", "not-a-number"],
        ] {
            let r = run(args);
            assert_eq!(r.exit_code, 2);
            assert!(r.stdout.is_empty());
            assert_eq!(r.stderr.lines().count(), 1);
            assert!(r.stderr.contains("usage: arithkn"));
        }
    }

    #[test]
    fn domain_errors_exit_2_on_stderr() {
        let r = run(["enumerate", "--n", "9"]);
        assert_eq!(r.exit_code, 2);
        assert!(r.stdout.is_empty());
        assert!(r.stderr.starts_with("error: "));
        assert_eq!(r.stderr.lines().count(), 1);

        let r = run(["count", "--n", "0"]);
        assert_eq!(r.exit_code, 2);
        let r = run(["bounds", "--n", "1"]);
        assert_eq!(r.exit_code, 2);
        let r = run(["prime-table", "--n-min", "2", "--n-max", "5"]);
        assert_eq!(r.exit_code, 2);
    }

    #[test]
    fn quiet_suppresses_stdout_not_exit_codes() {
        let r = run(["--quiet", "feasible", "--n", "18", "--target", "79"]);
        assert_eq!(r.exit_code, 1);
        assert!(r.stdout.is_empty());

        let r = run(["--quiet", "count", "--n", "4"]);
        assert_eq!(r.exit_code, 0);
        assert!(r.stdout.is_empty());

        let r = run(["--quiet", "enumerate", "--n", "9"]);
        assert_eq!(r.exit_code, 2);
        assert!(!r.stderr.is_empty());
    }

    #[test]
    fn help_and_version_exit_0() {
        let r = run(["--help"]);
        assert_eq!(r.exit_code, 0);
        assert!(r.stdout.contains("prime-table"));
        let r = run(["--version"]);
        assert_eq!(r.exit_code, 0);
        assert!(r.stdout.starts_with("arithkn "));
    }

    #[test]
    fn identical_invocations_are_byte_identical() {
        for args in [
            vec!["verify", "105", "70", "15", "14", "6"],
            vec!["feasible", "--n", "14", "--target", "47"],
            vec!["prime-table", "--n-min", "3", "--n-max", "20"],
            vec!["--format", "csv", "enumerate", "--n", "5"],
            vec!["count", "--n", "5", "--jobs", "3"],
        ] {
            let first = run(args.iter().copied());
            let second = run(args.iter().copied());
            assert_eq!(first, second, "args: {args:?}");
        }
    }
}
