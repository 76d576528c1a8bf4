//! End-to-end checks of the binary: worked examples, exit codes, file
//! input, and the JSON shapes tooling relies on.

use std::io::Write;
use std::process::{Command, Output};

fn twistspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twistspin"))
        .args(args)
        .env_remove("TWISTSPIN_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 diagnostics")
}

#[test]
fn deg_brieskorn_json_worked_example() {
    let output = twistspin(&["deg", "--brieskorn", "2", "3", "7", "--format", "json"]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["invariant"], "deg");
    assert_eq!(value["value"], 3);
    assert_eq!(value["method"], "MONTESINOS_CHI");
    assert_eq!(value["inputs"], serde_json::json!({"p": 2, "q": 3, "r": 7}));
    assert_eq!(value["obstruction"], "OBSTRUCTED");
    assert_eq!(value["warnings"], serde_json::json!([]));
}

#[test]
fn spin_torus_worked_example() {
    let output = twistspin(&["spin", "--torus", "2", "3", "--m", "6", "--n", "0"]);
    assert!(output.status.success());
    assert!(
        stdout_of(&output).contains("fiber is NOT a rational homology ball"),
        "{output:?}"
    );
}

#[test]
fn deg_rejects_r_not_coprime_to_six() {
    let output = twistspin(&["deg", "--brieskorn", "2", "3", "4"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("r must be coprime to 6"), "{output:?}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["alex"][..],
        &["alex", "--torus", "2", "3", "--braid", "B2: s1"][..],
        &["frobnicate"][..],
        &["gradedroot", "--brieskorn", "2", "3"][..],
        &["deg", "--braid", "B2: s1 s1 s1"][..],
    ] {
        let output = twistspin(args);
        assert_eq!(output.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn domain_errors_exit_one() {
    for args in [
        &["alex", "--braid", "B3: s1"][..],
        &["spin", "--torus", "2", "3", "--m", "6", "--n", "x"][..],
        &["alex", "--presentation", "/no/such/file"][..],
        &["gradedroot", "--brieskorn", "2", "4", "5"][..],
    ] {
        let output = twistspin(args);
        // clap catches the unparsable integer before we do.
        let code = output.status.code().unwrap();
        assert!(code == 1 || code == 2, "{args:?} exited {code}");
        assert!(!stderr_of(&output).is_empty(), "{args:?}");
    }
    let output = twistspin(&["alex", "--braid", "B3: s1"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("2 components"), "{output:?}");
}

#[test]
fn presentation_file_input() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(
        file,
        "# trefoil, Wirtinger\ngens: a b c\nweights: a=1 b=1 c=1\nrel: a b A C\nrel: b c B A\nlongitude: b a c a^-3"
    )
    .unwrap();
    let path = file.path().to_str().unwrap();

    let output = twistspin(&["alex", "--presentation", path]);
    assert!(output.status.success());
    assert!(stdout_of(&output).contains("(1 - T + T^2)"), "{output:?}");

    let output = twistspin(&["spin", "--presentation", path, "--m", "6", "--n", "1"]);
    assert!(output.status.success());
    assert!(
        stdout_of(&output).contains("fiber is NOT a rational homology ball"),
        "{output:?}"
    );
}

#[test]
fn roll_spin_json_shape() {
    let output = twistspin(&[
        "spin", "--braid", "B3: s1 s2^-1 s1 s2^-1", "--m", "0", "--n", "2", "--format", "json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["invariant"], "roll_spin");
    assert_eq!(value["obstructed"], true);
    assert_eq!(value["ideal_generator"], "1 - 3*T + T^2");
    assert_eq!(value["inputs"]["m"], 0);
    assert_eq!(value["inputs"]["n"], 2);
}

#[test]
fn gradedroot_dump_is_consistent() {
    let output = twistspin(&[
        "gradedroot", "--brieskorn", "2", "3", "13", "--dump", "--format", "json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["summary"]["total_rank"], 2);
    assert_eq!(value["summary"]["anti_invariant_euler"], 1);
    let vertices = value["vertices"].as_array().unwrap();
    assert_eq!(vertices.len(), 4);
    for (id, vertex) in vertices.iter().enumerate() {
        assert_eq!(vertex["id"], id);
        let image = vertex["involution_image"].as_u64().unwrap() as usize;
        assert!(image < vertices.len());
        // The involution is its own inverse on vertex ids.
        assert_eq!(vertices[image]["involution_image"], id);
    }
    // Exactly one root.
    let roots = vertices.iter().filter(|v| v["parent"].is_null()).count();
    assert_eq!(roots, 1);
}

#[test]
fn sweep_row_policy() {
    let output = twistspin(&["sweep", "--r-max", "4", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["rows"].as_array().unwrap().len(), 0);

    let output = twistspin(&["sweep", "--r-max", "5", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["r"], 5);
    assert_eq!(rows[0]["deg_closed_form"], 1);

    let output = twistspin(&["sweep", "--r-max", "5", "--include-trivial", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["r"], 1);

    let output = twistspin(&["sweep", "--r-max", "25", "--format", "json"]);
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    let rows = value["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|row| row["agree"] == true));
}

#[test]
fn selftest_passes() {
    let output = twistspin(&["selftest"]);
    assert!(output.status.success(), "{output:?}");
    let text = stdout_of(&output);
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 8);
    assert!(!text.contains("FAIL"));
}

#[test]
fn invalid_thread_cap_warns_but_runs() {
    let output = Command::new(env!("CARGO_BIN_EXE_twistspin"))
        .args(["deg", "--brieskorn", "2", "3", "7", "--format", "json"])
        .env("TWISTSPIN_THREADS", "many")
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    assert!(stderr_of(&output).contains("TWISTSPIN_THREADS"), "{output:?}");
}

#[test]
fn transfer_flags_on_deg() {
    let output = twistspin(&[
        "deg", "--brieskorn", "2", "3", "7", "--m", "6", "--n", "0", "--format", "json",
    ]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(value["method"], "TRANSFER");
    assert_eq!(value["value"], 3);
    assert_eq!(value["obstruction"], "OBSTRUCTED");

    let output = twistspin(&["deg", "--brieskorn", "2", "3", "7", "--m", "4"]);
    assert_eq!(output.status.code(), Some(1));
    assert!(stderr_of(&output).contains("m + 2n"), "{output:?}");
}
