//! End-to-end tests of the command-line interface: exit-code contract,
//! report files, and manifest replay determinism.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_raolab"))
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("raolab-cli-{name}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn reproduce_known_tags_exit_zero() {
    for tag in ["cubic-intersection", "arith-genus-0"] {
        let out = bin().args(["reproduce", tag]).output().unwrap();
        assert!(
            out.status.success(),
            "{tag}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        assert!(String::from_utf8_lossy(&out.stdout).contains("all values match"));
    }
}

#[test]
fn unknown_tag_is_usage_error() {
    let out = bin().args(["reproduce", "no-such-table"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_recipe_in_manifest_is_usage_error() {
    let dir = temp_dir("badrecipe");
    let manifest = dir.join("manifest.json");
    std::fs::write(
        &manifest,
        r#"{"recipe": {"recipe": "not-a-recipe", "seed": 1}}"#,
    )
    .unwrap();
    let out = bin()
        .args(["analyze", manifest.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exhaustion_is_exit_three() {
    let dir = temp_dir("budget");
    let out = bin()
        .args([
            "audit",
            "--max-r",
            "3",
            "--max-t",
            "4",
            "--budget",
            "1",
            "--out",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn audit_small_is_clean() {
    let dir = temp_dir("audit");
    let out = bin()
        .args([
            "audit",
            "--max-r",
            "3",
            "--max-t",
            "5",
            "--out",
            dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("audit.json")).unwrap()).unwrap();
    assert_eq!(report["discrepancies"].as_array().unwrap().len(), 0);
}

#[test]
fn manifest_replay_is_deterministic_modulo_timestamp() {
    let dir = temp_dir("replay");
    let manifest = dir.join("manifest.json");
    std::fs::write(
        &manifest,
        r#"{"recipe": {"recipe": "quadric-ruling-lines", "params": {"r": 5}, "seed": 7}, "m": [1], "trials": 2}"#,
    )
    .unwrap();
    let strip = |path: &PathBuf| {
        let mut v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("generated_at");
        serde_json::to_string(&v).unwrap()
    };
    let out_a = dir.join("a");
    let out_b = dir.join("b");
    for out in [&out_a, &out_b] {
        let st = bin()
            .args([
                "analyze",
                manifest.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
            ])
            .status()
            .unwrap();
        assert!(st.success());
    }
    assert_eq!(
        strip(&out_a.join("report_m1_p32003.json")),
        strip(&out_b.join("report_m1_p32003.json"))
    );
}

#[test]
fn two_prime_analyze_writes_agreement() {
    let dir = temp_dir("twoprime");
    let manifest = dir.join("manifest.json");
    std::fs::write(
        &manifest,
        r#"{"recipe": {"recipe": "general-skew-lines", "params": {"r": 4}, "seed": 3}, "m": [1]}"#,
    )
    .unwrap();
    let st = bin()
        .args([
            "analyze",
            manifest.to_str().unwrap(),
            "--second-prime",
            "65537",
            "--out",
            dir.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert!(st.success());
    let agreement: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("agreement.json")).unwrap())
            .unwrap();
    assert_eq!(agreement["agree"], serde_json::json!(true));
}

#[test]
fn scan_writes_table_and_markdown() {
    let dir = temp_dir("scan");
    let spec = dir.join("spec.json");
    std::fs::write(
        &spec,
        r#"{"kind": "flat-fat", "m": 3, "s": [2, 4], "trials": 2, "seed": 5}"#,
    )
    .unwrap();
    let st = bin()
        .args([
            "scan",
            spec.to_str().unwrap(),
            "--out",
            dir.to_str().unwrap(),
            "--format",
            "md",
        ])
        .status()
        .unwrap();
    assert!(st.success());
    let table: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("scan.json")).unwrap()).unwrap();
    let cells = table["table"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 3);
    // s = 2 is the designed failure; s = 3, 4 are generic.
    assert_eq!(cells[0]["generic"], serde_json::json!(false));
    assert_eq!(cells[1]["generic"], serde_json::json!(true));
    assert!(dir.join("scan.md").exists());
}

#[test]
fn seed_env_variable_is_honored() {
    let out_a = bin()
        .args(["reproduce", "cubic-intersection"])
        .env("RAOLAB_SEED", "12345")
        .output()
        .unwrap();
    assert!(out_a.status.success());
}
