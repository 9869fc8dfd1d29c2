//! End-to-end tests of the `xhermite` binary: golden output, JSON
//! round-trips, exit-code contract, and the stderr warning channel.

use std::process::{Command, Output};
use xhermite_cli::reports::{to_json_string, ChainReport, FamilyReport, GapsReport, VerifyReport};

fn xhermite(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xhermite"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn family_human_output_is_stable() {
    let out = xhermite(&["family", "--partition", "2,2", "--cutoff", "8"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stderr_of(&out), "");
    let expected = "\
partition (2, 2): N = 4, ell = 2
exceptional degrees: {0, 1, 4, 5}
sporadic degrees: {2, 3}
allowed degrees up to 8: {2, 3, 6, 7, 8}
eta = 16x^4 + 12
H[2] = 4x^2 + 2   (degree 2, leading 4)
H[3] = 8x^3 + 12x   (degree 3, leading 8)
H[6] = 64x^6 + 96x^4 + 144x^2 - 72   (degree 6, leading 64)
H[7] = 128x^7 + 64x^5 + 160x^3 - 240x   (degree 7, leading 128)
H[8] = 256x^8 - 256x^6 - 960x^2 + 240   (degree 8, leading 256)
";
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn family_json_round_trips_byte_identically() {
    let out = xhermite(&["family", "--partition", "3,3,1,1", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let report: FamilyReport = serde_json::from_str(&text).expect("valid FamilyReport JSON");
    assert_eq!(report.partition, vec![3, 3, 1, 1]);
    assert_eq!(report.n, 8);
    assert_eq!(report.ell, 4);
    assert_eq!(report.exceptional_degrees, vec![0, 1, 2, 3, 5, 6, 9, 10]);
    assert_eq!(report.sporadic_degrees, vec![4, 7, 8]);
    assert_eq!(to_json_string(&report), text);
}

#[test]
fn family_csv_lists_eta_and_members() {
    let out = xhermite(&["family", "--partition", "2,2", "--cutoff", "7", "--format", "csv"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("kind,n,degree,leading,coeffs"));
    assert_eq!(lines.next(), Some("eta,,4,16,12;0;0;0;16"));
    assert_eq!(lines.next(), Some("H,2,2,4,2;0;4"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn family_odd_partition_warns_but_succeeds() {
    let out = xhermite(&["family", "--partition", "2,1", "--cutoff", "5"]);
    assert_eq!(code_of(&out), 0);
    assert!(stderr_of(&out).contains("not even"));
    assert!(stdout_of(&out).contains("eta = 8x^3"));
}

#[test]
fn verify_passes_and_round_trips() {
    let out = xhermite(&["verify", "--partition", "2,2", "--cutoff", "10", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let report: VerifyReport = serde_json::from_str(&text).expect("valid VerifyReport JSON");
    assert_eq!(report.failures, 0);
    assert!(report.checks.len() >= 20);
    assert!(report.checks.iter().all(|c| c.status == "PASS"));
    assert_eq!(to_json_string(&report), text);
}

#[test]
fn verify_seed_changes_probes_but_not_verdicts() {
    let a = xhermite(&["verify", "--partition", "1,1", "--seed", "1"]);
    let b = xhermite(&["verify", "--partition", "1,1", "--seed", "2"]);
    assert_eq!(code_of(&a), 0);
    assert_eq!(code_of(&b), 0);
    assert!(stdout_of(&a).contains("0 failures"));
    assert!(stdout_of(&b).contains("0 failures"));
}

#[test]
fn verify_inject_fault_reports_failure_and_exits_nonzero() {
    let out = xhermite(&["verify", "--partition", "2,2", "--inject-fault"]);
    assert_eq!(code_of(&out), 1);
    let text = stdout_of(&out);
    assert!(text.contains("FAIL"));
    assert!(text.contains("injected corrupted H"));
    assert!(text.contains("residual = "));
    assert!(text.contains("1 failures"));
}

#[test]
fn verify_classical_family_has_no_failures() {
    let out = xhermite(&["verify", "--cutoff", "4"]);
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("0 failures"));
}

#[test]
fn chain_human_walks_every_level() {
    let out = xhermite(&["chain", "--partition", "2,2", "--cutoff", "8"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("level j = 0: lambda^(0) = (2, 2), N_0 = 4, ell_0 = 2"));
    assert!(text.contains("K(lambda^(0)) = {0, 1, 4, 5}, K_0 = {0, 1, 4, 5}"));
    assert!(text.contains("level j = 1: lambda^(1) = (1, 1), N_1 = 2, ell_1 = 2"));
    assert!(text.contains("K(lambda^(1)) = {1, 2}, K_1 = {0, 1, 2, 4, 5}"));
    assert!(text.contains("level j = 2: lambda^(2) = (), N_2 = 0, ell_2 = 0 [classical operator]"));
    assert!(text.contains("eps0 = 2*ell_0 = 4"));
    assert!(text.contains("verified at every step"));
}

#[test]
fn chain_json_round_trips_and_matches_bookkeeping() {
    let out = xhermite(&["chain", "--partition", "3,3,1,1", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let report: ChainReport = serde_json::from_str(&text).expect("valid ChainReport JSON");
    assert!(report.removal_rule_verified);
    assert_eq!(report.levels.len(), 4);
    let partitions: Vec<&[usize]> = report.levels.iter().map(|l| l.partition.as_slice()).collect();
    assert_eq!(
        partitions,
        vec![&[3, 3, 1, 1][..], &[2, 2][..], &[1, 1][..], &[][..]]
    );
    let big_n: Vec<usize> = report.levels.iter().map(|l| l.n).collect();
    assert_eq!(big_n, vec![8, 4, 2, 0]);
    let ells: Vec<usize> = report.levels.iter().map(|l| l.ell).collect();
    assert_eq!(ells, vec![4, 2, 2, 0]);
    let cumulative: Vec<&[usize]> = report
        .levels
        .iter()
        .map(|l| l.cumulative_degrees.as_slice())
        .collect();
    assert_eq!(
        cumulative,
        vec![
            &[0, 1, 2, 3, 5, 6, 9, 10][..],
            &[0, 1, 2, 3, 4, 5, 6, 9, 10][..],
            &[0, 1, 2, 3, 4, 5, 6, 7, 9, 10][..],
            &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10][..],
        ]
    );
    let eps0: Vec<Option<i64>> = report.levels.iter().map(|l| l.eps0).collect();
    assert_eq!(eps0, vec![Some(8), Some(4), Some(4), None]);
    for level in &report.levels {
        assert_eq!(level.spectrum.first(), Some(&(2 * level.ell as i64)));
    }
    assert_eq!(to_json_string(&report), text);
}

#[test]
fn chain_rejects_odd_partition() {
    let out = xhermite(&["chain", "--partition", "2,1"]);
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("not even"));
    assert_eq!(stdout_of(&out), "");
}

#[test]
fn gaps_inverts_a_feasible_set() {
    let out = xhermite(&["gaps", "--gapset", "0,1,4,5"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "gap set {0, 1, 4, 5} -> partition (2, 2), N = 4, even = true\n"
    );
}

#[test]
fn gaps_inverts_the_worked_example_set() {
    let out = xhermite(&["gaps", "--gapset", "0,1,2,3,5,6,9,10"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(
        stdout_of(&out),
        "gap set {0, 1, 2, 3, 5, 6, 9, 10} -> partition (3, 3, 1, 1), N = 8, even = true\n"
    );
}

#[test]
fn gaps_json_round_trips() {
    let out = xhermite(&["gaps", "--gapset", "5,1,0,4", "--format", "json"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let report: GapsReport = serde_json::from_str(&text).expect("valid GapsReport JSON");
    assert_eq!(report.gapset, vec![0, 1, 4, 5]);
    assert_eq!(report.partition, vec![2, 2]);
    assert!(report.even);
    assert_eq!(to_json_string(&report), text);
}

#[test]
fn gaps_rejects_an_infeasible_set_with_a_reason() {
    let out = xhermite(&["gaps", "--gapset", "0,2"]);
    assert_eq!(code_of(&out), 1);
    let err = stderr_of(&out);
    assert!(err.contains("infeasible"));
    assert!(err.contains("sum 2 != 3"));
}

#[test]
fn gram_csv_has_labeled_rows_and_formula_comparison() {
    let out = xhermite(&["gram", "--partition", "1,1", "--cutoff", "4", "--format", "csv"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "degrees,0,3,4");
    assert!(lines[1].starts_with("0,"));
    assert!(lines[2].starts_with("3,"));
    assert!(lines[3].starts_with("4,"));
    assert!(lines[4].starts_with("formula_diagonal,"));
    assert!(lines[5].starts_with("relative_deviation,"));
    assert_eq!(lines.len(), 6);
    for (i, line) in lines[1..4].iter().enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 4);
        let diag: f64 = cells[i + 1].parse().expect("float cell");
        assert!(diag > 0.0);
    }
    let deviations: Vec<f64> = lines[5]
        .strip_prefix("relative_deviation,")
        .unwrap()
        .split(',')
        .map(|c| c.parse().expect("float cell"))
        .collect();
    assert!(deviations.iter().all(|d| *d < 1e-8));
}

#[test]
fn gram_classical_diagonal_matches_the_closed_form() {
    let out = xhermite(&["gram", "--cutoff", "4", "--format", "csv"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let formula_line = text
        .lines()
        .find(|l| l.starts_with("formula_diagonal,"))
        .expect("formula row present");
    let values: Vec<f64> = formula_line
        .strip_prefix("formula_diagonal,")
        .unwrap()
        .split(',')
        .map(|c| c.parse().expect("float cell"))
        .collect();
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let expected = [1.0, 2.0, 8.0, 48.0, 384.0].map(|v| v * sqrt_pi);
    assert_eq!(values.len(), expected.len());
    for (got, want) in values.iter().zip(expected) {
        assert!(((got - want) / want).abs() < 1e-12, "{got} vs {want}");
    }
    for line in text.lines().filter(|l| l.starts_with("relative_deviation,")) {
        for cell in line.strip_prefix("relative_deviation,").unwrap().split(',') {
            let dev: f64 = cell.parse().expect("float cell");
            assert!(dev < 1e-10);
        }
    }
}

#[test]
fn gram_escalates_a_tiny_quadrature_order_with_a_warning() {
    let out = xhermite(&["gram", "--partition", "2,2", "--cutoff", "6", "--quad-order", "1"]);
    assert_eq!(code_of(&out), 0);
    let err = stderr_of(&out);
    assert!(err.contains("convergence guard raised the quadrature order from 1"));
    assert!(stdout_of(&out).contains("(converged)"));
}

#[test]
fn gram_rejects_odd_partition() {
    let out = xhermite(&["gram", "--partition", "3,2,1"]);
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("not even"));
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("family.json");
    let piped = xhermite(&["family", "--partition", "2,2", "--format", "json"]);
    assert_eq!(code_of(&piped), 0);
    let to_file = xhermite(&[
        "family",
        "--partition",
        "2,2",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&to_file), 0);
    assert_eq!(stdout_of(&to_file), "");
    let written = std::fs::read(&path).expect("file written");
    assert_eq!(written, piped.stdout);
}

#[test]
fn malformed_partition_text_is_a_usage_error() {
    for bad in ["1,2", "2,a", "2,,2", "-1"] {
        let out = xhermite(&["family", "--partition", bad]);
        assert_eq!(code_of(&out), 2, "partition text {bad:?} must exit 2");
        assert!(stderr_of(&out).contains("error"));
    }
}

#[test]
fn cutoff_below_the_family_floor_is_a_usage_error() {
    let out = xhermite(&["family", "--partition", "2,2", "--cutoff", "5"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("below the minimum 6"));
}

#[test]
fn malformed_gapset_entry_is_a_usage_error() {
    let out = xhermite(&["gaps", "--gapset", "0,x"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("invalid entry 'x'"));
}

#[test]
fn quad_order_zero_is_a_usage_error() {
    let out = xhermite(&["gram", "--partition", "2,2", "--quad-order", "0"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("--quad-order"));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let out = xhermite(&["frobnicate"]);
    assert_eq!(code_of(&out), 2);
}
