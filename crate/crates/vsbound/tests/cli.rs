//! End-to-end tests of the `vsbound` binary: output shapes, exit codes,
//! and byte-level determinism of generated artifacts.

use std::path::PathBuf;
use std::process::{Command, Output};

fn vsbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vsbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmpfile(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("vsbound-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn mu_reports_exact_rationals_and_witnesses() {
    let out = vsbound(&[
        "mu",
        "--field",
        "p=5,e=1",
        "--vars",
        "x1,x2",
        "x1 + x1^3*x2",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["mu"], "1/1");
    assert_eq!(v["witness"], serde_json::json!([3, 1]));
    assert_eq!(v["generators"], serde_json::json!([[1, 0], [3, 1]]));
    assert_eq!(v["degenerate"], false);

    let out = vsbound(&["mu", "--field", "p=5,e=1", "--vars", "x1,x2", "x1^4 + x2^4"]);
    let v = stdout_json(&out);
    assert_eq!(v["mu"], "1/2");
    assert_eq!(v["witness"], serde_json::json!([1, 1]));
}

#[test]
fn mu_degenerate_warns_but_succeeds() {
    let out = vsbound(&["mu", "--field", "p=2,e=1", "--vars", "x1,x2", "x1"]);
    let v = stdout_json(&out);
    assert_eq!(v["mu"], "inf");
    assert_eq!(v["degenerate"], true);
    assert!(v["witness"].is_null());
    assert!(v["warning"].as_str().unwrap().contains("absent"));
}

#[test]
fn mu_csv_emits_generator_table() {
    let out = vsbound(&[
        "mu",
        "--field",
        "p=5,e=1",
        "--vars",
        "x1,x2",
        "--format",
        "csv",
        "x1 + x1^3*x2",
    ]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "v1,v2\n1,0\n3,1\n");
}

#[test]
fn verify_sharp_instance_exits_zero() {
    let out = vsbound(&["verify", "--field", "p=3,e=1", "--map", "x1; x1^2*x2"]);
    let v = stdout_json(&out);
    assert_eq!(v["vf_size"], 7);
    assert_eq!(v["bound_polytope"], 7);
    assert_eq!(v["flags"]["sharp"], true);
    assert_eq!(v["u_invariant"], 2);
}

#[test]
fn verify_permutation_is_vacuously_fine() {
    let out = vsbound(&["verify", "--field", "p=2,e=1", "--map", "x1; x2"]);
    let v = stdout_json(&out);
    assert_eq!(v["flags"]["permutation"], true);
    assert_eq!(v["flags"]["theorem_holds"], true);
}

#[test]
fn parse_errors_exit_two() {
    let out = vsbound(&["verify", "--field", "p=3,e=1", "--map", "x1 + ; x2"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("syntax error"), "stderr: {msg}");

    let out = vsbound(&["verify", "--field", "p=4,e=1", "--map", "x1; x2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = vsbound(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_errors_exit_three() {
    let out = vsbound(&[
        "valueset",
        "--field",
        "p=5,e=1",
        "--map",
        "x1; x2",
        "--budget-domain",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn valueset_counts_images() {
    let out = vsbound(&["valueset", "--field", "p=2,e=1", "--map", "x1; x1*x2"]);
    let v = stdout_json(&out);
    assert_eq!(v["vf_size"], 3);
    assert_eq!(v["domain_size"], 4);
    assert_eq!(v["permutation"], false);
}

#[test]
fn u_invariant_with_trace() {
    let trace = tmpfile("trace.jsonl");
    let out = vsbound(&[
        "u-invariant",
        "--field",
        "p=2,e=1",
        "--map",
        "x1; x1*x2",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["u"], 1);
    assert_eq!(v["witness_k"], 1);
    assert_eq!(v["precision"], 1);

    let lines: Vec<serde_json::Value> = std::fs::read_to_string(&trace)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    std::fs::remove_file(&trace).ok();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["k"], 1);
    assert_eq!(lines[0]["nonzero"], true);
}

#[test]
fn sweep_is_deterministic_and_clean() {
    let out1 = tmpfile("sweep1.json");
    let out2 = tmpfile("sweep2.json");
    for path in [&out1, &out2] {
        let out = vsbound(&[
            "sweep",
            "--q",
            "2..3",
            "--n",
            "2",
            "--deg-max",
            "3",
            "--samples",
            "15",
            "--seed",
            "42",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(&out1).unwrap();
    let b = std::fs::read(&out2).unwrap();
    std::fs::remove_file(&out1).ok();
    std::fs::remove_file(&out2).ok();
    assert_eq!(
        a, b,
        "sweep output must be byte-identical for a fixed config"
    );

    let doc: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(doc["summary"]["instances"], 30);
    assert_eq!(doc["summary"]["violations"]["theorem"], 0);
}

#[test]
fn sweep_empty_and_family_modes() {
    let out = vsbound(&["sweep", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["summary"]["instances"], 0);

    let out = vsbound(&[
        "sweep",
        "--q",
        "3..3",
        "--family",
        "polytope-sharp",
        "--a",
        "1..3",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["summary"]["instances"], 3);
    assert_eq!(v["summary"]["sharp"], 3);
}

#[test]
fn sweep_csv_format() {
    let out = vsbound(&["sweep", "--q", "2..2", "--samples", "5", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("q,nvars,map"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn polytope_svg_is_deterministic() {
    let a = vsbound(&[
        "polytope-svg",
        "--field",
        "p=5,e=1",
        "--map",
        "x1 + x1^3*x2; x1^4 + x2^4",
        "--dilation",
        "2/4",
    ]);
    assert!(a.status.success());
    let b = vsbound(&[
        "polytope-svg",
        "--field",
        "p=5,e=1",
        "--map",
        "x1 + x1^3*x2; x1^4 + x2^4",
        "--dilation",
        "2/4",
    ]);
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8_lossy(&a.stdout);
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("dilation 1/2")); // 2/4 reduces
    assert_eq!(svg.matches("<polygon").count(), 4); // 2 panels x (hull + dilation)
}

#[test]
fn polytope_svg_rejects_univariate_input() {
    let out = vsbound(&["polytope-svg", "--field", "p=2,e=1", "--map", "x1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2-variable"));
    assert!(out.stdout.is_empty());
}

#[test]
fn variety_check_reports_and_exit_code() {
    let out = vsbound(&[
        "variety-check",
        "--field",
        "p=3,e=1",
        "--vars",
        "x1,x2",
        "--map",
        "x1*x2",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["n_points"], 5);
    assert_eq!(v["ord_q"], "0/1");
    assert_eq!(v["mu_aux"], "1/1");
    assert_eq!(v["holds"], true);
}

#[test]
fn verify_report_roundtrips_through_its_own_instance() {
    let out = vsbound(&["verify", "--field", "p=3,e=1", "--map", "x1; x1^2*x2"]);
    let v = stdout_json(&out);
    let map = v["instance"]["map"].as_str().unwrap();
    let p = v["instance"]["field"]["p"].to_string();
    let out2 = vsbound(&["verify", "--field", &format!("p={p},e=1"), "--map", map]);
    let v2 = stdout_json(&out2);
    assert_eq!(
        v, v2,
        "re-running verify on the serialized instance must reproduce the report"
    );
}
