//! End-to-end tests of the `dualmp` binary: golden outputs, the exit-code
//! contract, determinism, and flag/environment precedence.

use std::path::PathBuf;
use std::process::{Command, Output};

const ROW: &str = r#"{"rows":1,"cols":2,"standard":[[[1,0],[0,0]]],"dual":[[[0,0],[1,0]]]}"#;
const DIAG: &str = concat!(
    r#"{"rows":2,"cols":2,"standard":[[[1,0],[0,0]],[[0,0],[0,0]]],"#,
    r#""dual":[[[0,0],[0,0]],[[0,0],[1,0]]]}"#
);
const PURELY_INFINITESIMAL: &str = concat!(
    r#"{"rows":2,"cols":2,"standard":[[[0,0],[0,0]],[[0,0],[0,0]]],"#,
    r#""dual":[[[0,0],[0,0]],[[0,0],[1,0]]]}"#
);
/// Relative nonessential norm ~5e-6: below tol 1e-2, above tol 1e-9.
const SMALL_GATE: &str = concat!(
    r#"{"rows":2,"cols":2,"standard":[[[1,0],[0,0]],[[0,0],[0,0]]],"#,
    r#""dual":[[[0,0],[0,0]],[[0,0],[0.00001,0]]]}"#
);
const GOOD_CANDIDATE: &str =
    r#"{"rows":2,"cols":1,"standard":[[[1,0]],[[0,0]]],"dual":[[[0,0]],[[1,0]]]}"#;
const TRUNCATED_CANDIDATE: &str =
    r#"{"rows":2,"cols":1,"standard":[[[1,0]],[[0,0]]],"dual":[[[0,0]],[[0,0]]]}"#;
const MALFORMED: &str = r#"{"rows":1,"cols":2,"standard":[[[1,0],[1]]],"dual":[[[0,0],[0,0]]]}"#;

fn workdir(test: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dualmp-cli-{}-{test}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    dir
}

fn file(dir: &PathBuf, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("write fixture");
    path.to_string_lossy().into_owned()
}

fn dualmp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualmp"))
        .args(args)
        .env_remove("DUALMP_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn ndmpi_of_worked_row_is_golden_and_deterministic() {
    let dir = workdir("ndmpi");
    let a = file(&dir, "a.json", ROW);

    let run = dualmp(&["ndmpi", &a, "--format", "json"]);
    assert_eq!(run.status.code(), Some(0), "stderr: {}", stderr(&run));
    assert_eq!(
        stdout(&run).trim_end(),
        concat!(
            r#"{"rows":2,"cols":1,"standard":[[[1.0,0.0]],[[0.0,0.0]]],"#,
            r#""dual":[[[0.0,0.0]],[[1.0,0.0]]]}"#
        )
    );

    // Byte-identical across repeat runs, and across the exact oracle.
    let again = dualmp(&["ndmpi", &a, "--format", "json"]);
    assert_eq!(run.stdout, again.stdout);
    let exact = dualmp(&["ndmpi", &a, "--format", "json", "--exact"]);
    assert_eq!(exact.status.code(), Some(0), "stderr: {}", stderr(&exact));
    assert_eq!(run.stdout, exact.stdout);
}

#[test]
fn pretty_format_is_deterministic_and_readable() {
    let dir = workdir("pretty");
    let a = file(&dir, "a.json", ROW);
    let run = dualmp(&["ndmpi", &a]);
    assert_eq!(run.status.code(), Some(0));
    let text = stdout(&run);
    assert!(text.contains("(1)eps"), "pretty output was: {text}");
    let again = dualmp(&["ndmpi", &a]);
    assert_eq!(run.stdout, again.stdout);
}

#[test]
fn dmpgi_nonexistence_exits_2() {
    let dir = workdir("dmpgi");
    let n = file(&dir, "n.json", PURELY_INFINITESIMAL);
    let run = dualmp(&["dmpgi", &n]);
    assert_eq!(run.status.code(), Some(2), "stderr: {}", stderr(&run));
    assert!(stderr(&run).contains("does not exist"));

    // The same gate through the exact oracle.
    let exact = dualmp(&["dmpgi", &n, "--exact"]);
    assert_eq!(exact.status.code(), Some(2));

    // Rank decomposition shares the gate.
    let decompose = dualmp(&["decompose", &n]);
    assert_eq!(decompose.status.code(), Some(2));
    assert!(stderr(&decompose).contains("no dual rank decomposition"));
}

#[test]
fn check_rol_plain_reports_failing_premise_with_exit_0() {
    let dir = workdir("checkrol");
    let a = file(&dir, "a.json", ROW);
    let b = file(&dir, "b.json", DIAG);
    let run = dualmp(&["check-rol", "plain", &a, &b, "--format", "json"]);
    assert_eq!(run.status.code(), Some(0), "stderr: {}", stderr(&run));
    let report: serde_json::Value = serde_json::from_str(stdout(&run).trim_end()).unwrap();
    assert_eq!(report["law_id"], "rol-plain");
    assert_eq!(report["conclusion_holds"], true);
    assert_eq!(report["premises_hold"][1], false);
    assert_eq!(report["implication_respected"], true);
    let premise2 = report["premise_residuals"][1].as_f64().unwrap();
    assert!((premise2 - 0.5).abs() <= 1e-12, "premise 2 residual {premise2}");
}

#[test]
fn check_fol_on_worked_pair() {
    let dir = workdir("checkfol");
    let a = file(&dir, "a.json", DIAG);
    let identity = file(
        &dir,
        "i.json",
        concat!(
            r#"{"rows":2,"cols":2,"standard":[[[1,0],[0,0]],[[0,0],[1,0]]],"#,
            r#""dual":[[[0,0],[0,0]],[[0,0],[0,0]]]}"#
        ),
    );
    let run = dualmp(&["check-fol", &a, &identity, "--format", "json"]);
    assert_eq!(run.status.code(), Some(0), "stderr: {}", stderr(&run));
    let report: serde_json::Value = serde_json::from_str(stdout(&run).trim_end()).unwrap();
    assert_eq!(report["conclusion_holds"], true);
    assert_eq!(report["premises_hold"][2], false);
}

#[test]
fn verify_exit_codes_track_the_verdict() {
    let dir = workdir("verify");
    let a = file(&dir, "a.json", ROW);
    let good = file(&dir, "good.json", GOOD_CANDIDATE);
    let bad = file(&dir, "bad.json", TRUNCATED_CANDIDATE);

    let pass = dualmp(&["verify", &a, &good, "--format", "json"]);
    assert_eq!(pass.status.code(), Some(0), "stderr: {}", stderr(&pass));
    let report: serde_json::Value = serde_json::from_str(stdout(&pass).trim_end()).unwrap();
    assert_eq!(report["passed"], true);

    let fail = dualmp(&["verify", &a, &bad, "--format", "json"]);
    assert_eq!(fail.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_str(stdout(&fail).trim_end()).unwrap();
    assert_eq!(report["passed"], false);
    assert_eq!(report["report"]["residual_eq4"].as_f64().is_some(), true);

    // The truncated candidate satisfies the first three equations only.
    let partial = dualmp(&["verify", &a, &bad, "--equations", "1,2,3"]);
    assert_eq!(partial.status.code(), Some(0));

    // Exact oracle agrees on both verdicts.
    let exact_pass = dualmp(&["verify", &a, &good, "--exact", "--format", "json"]);
    assert_eq!(exact_pass.status.code(), Some(0));
    let exact_fail = dualmp(&["verify", &a, &bad, "--exact", "--format", "json"]);
    assert_eq!(exact_fail.status.code(), Some(3));
    let report: serde_json::Value = serde_json::from_str(stdout(&exact_fail).trim_end()).unwrap();
    assert_eq!(report["equations_hold"], serde_json::json!([true, true, true, false]));
}

#[test]
fn malformed_input_exits_1_with_index_diagnostics() {
    let dir = workdir("malformed");
    let bad = file(&dir, "bad.json", MALFORMED);
    let run = dualmp(&["ndmpi", &bad]);
    assert_eq!(run.status.code(), Some(1));
    assert!(
        stderr(&run).contains("standard[0][1]"),
        "stderr was: {}",
        stderr(&run)
    );

    let missing = dualmp(&["ndmpi", &dir.join("nope.json").to_string_lossy()]);
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn tolerance_flag_beats_environment() {
    let dir = workdir("tol");
    let gate = file(&dir, "gate.json", SMALL_GATE);

    // Default tolerance (1e-9): the 1e-5 nonessential part blocks DMPGI.
    let default_run = dualmp(&["dmpgi", &gate]);
    assert_eq!(default_run.status.code(), Some(2));

    // Loose tolerance via environment: the gate passes.
    let env_run = Command::new(env!("CARGO_BIN_EXE_dualmp"))
        .args(["dmpgi", &gate])
        .env("DUALMP_TOL", "1e-2")
        .output()
        .expect("binary runs");
    assert_eq!(env_run.status.code(), Some(0), "stderr: {}", stderr(&env_run));

    // Explicit flag wins over the environment.
    let flag_run = Command::new(env!("CARGO_BIN_EXE_dualmp"))
        .args(["dmpgi", &gate, "--tol", "1e-9"])
        .env("DUALMP_TOL", "1e-2")
        .output()
        .expect("binary runs");
    assert_eq!(flag_run.status.code(), Some(2));
}

#[test]
fn structural_subcommands_emit_parseable_json() {
    let dir = workdir("struct");
    let a = file(&dir, "a.json", DIAG);
    let rhs = file(
        &dir,
        "b.json",
        r#"{"rows":2,"cols":1,"standard":[[[1,0]],[[0,0]]],"dual":[[[0,0]],[[0,0]]]}"#,
    );

    let dsvd = dualmp(&["dsvd", &a, "--format", "json"]);
    assert_eq!(dsvd.status.code(), Some(0), "stderr: {}", stderr(&dsvd));
    let report: serde_json::Value = serde_json::from_str(stdout(&dsvd).trim_end()).unwrap();
    assert_eq!(report["rank_appreciable"], 1);
    assert_eq!(report["rank_total"], 2);
    assert_eq!(report["sigma"][0], serde_json::json!([1.0, 0.0]));
    assert_eq!(report["sigma"][1], serde_json::json!([0.0, 1.0]));

    let esplit = dualmp(&["esplit", &a, "--format", "json"]);
    assert_eq!(esplit.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&esplit).trim_end()).unwrap();
    assert_eq!(report["nonessential"]["dual"][1][1], serde_json::json!([1.0, 0.0]));

    let solve = dualmp(&["solve", &a, &rhs, "--format", "json"]);
    assert_eq!(solve.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(stdout(&solve).trim_end()).unwrap();
    assert_eq!(report["rank_used"], 1);
    assert_eq!(report["residual_norm"], serde_json::json!([0.0, 0.0]));

    // Remaining inverse variants all run cleanly on the worked row.
    let row = file(&dir, "row.json", ROW);
    for command in ["mpdgi", "wdmpgi", "esplit"] {
        let run = dualmp(&[command, &row, "--format", "json"]);
        assert_eq!(run.status.code(), Some(0), "{command} stderr: {}", stderr(&run));
    }
}

#[test]
fn exact_flag_is_rejected_where_unsupported() {
    let dir = workdir("exactreject");
    let a = file(&dir, "a.json", ROW);
    let run = dualmp(&["mpdgi", &a, "--exact"]);
    assert_eq!(run.status.code(), Some(1));
    assert!(stderr(&run).contains("--exact"));

    // Oversized input for the exact oracle is an input error.
    let mut standard = vec![vec![[0.0f64, 0.0]; 5]; 5];
    for (i, row) in standard.iter_mut().enumerate() {
        row[i] = [1.0, 0.0];
    }
    let big = serde_json::json!({
        "rows": 5,
        "cols": 5,
        "standard": standard,
        "dual": vec![vec![[0.0f64, 0.0]; 5]; 5],
    });
    let big_path = file(&dir, "big.json", &big.to_string());
    let run = dualmp(&["ndmpi", &big_path, "--exact"]);
    assert_eq!(run.status.code(), Some(1));
    assert!(stderr(&run).contains("up to 4"));
}
