//! End-to-end tests over the compiled binary: document handling, exit
//! codes, report determinism and cache transparency.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_dpd")
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(bin());
    cmd.args(args);
    cmd.env_remove("DPD_CACHE");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn algebra_check_reports_basis() {
    let alg = fixtures().join("arrow_loop.algebra.json");
    let out = run(&["algebra", "check", "--algebra", alg.to_str().unwrap(), "--format", "json"], &[]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dim"], 4);
    assert_eq!(v["nilpotency"], 2);
}

#[test]
fn module_dpd_fixture_values() {
    let cases = [
        ("dual_numbers.algebra.json", "dual_numbers.point.module.json", serde_json::json!(0)),
        ("a2.algebra.json", "a2.top_simple.module.json", serde_json::json!(1)),
        ("arrow_loop.algebra.json", "arrow_loop.loop_simple.module.json", serde_json::json!("+inf")),
    ];
    for (alg, module, expected) in cases {
        let out = run(
            &[
                "module", "dpd",
                "--algebra", fixtures().join(alg).to_str().unwrap(),
                "--module", fixtures().join(module).to_str().unwrap(),
                "--format", "json", "--window", "6",
            ],
            &[],
        );
        assert!(out.status.success(), "{alg}: {}", String::from_utf8_lossy(&out.stderr));
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["value"], expected, "{module}");
    }
}

#[test]
fn undetermined_is_a_success_exit() {
    let out = run(
        &[
            "module", "dpd",
            "--algebra", fixtures().join("fat_point.algebra.json").to_str().unwrap(),
            "--module", fixtures().join("fat_point.point.module.json").to_str().unwrap(),
            "--format", "json", "--window", "4",
        ],
        &[],
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["value"]["undetermined_geq"].is_number());
}

#[test]
fn complex_dpd_with_witness() {
    let out = run(
        &[
            "complex", "dpd",
            "--algebra", fixtures().join("a2.algebra.json").to_str().unwrap(),
            "--complex", fixtures().join("a2.rad_inclusion.complex.json").to_str().unwrap(),
            "--format", "json", "--window", "6",
        ],
        &[],
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 1);
    assert!(v["witness_complex"].is_object());
}

#[test]
fn homology_report() {
    let out = run(
        &[
            "complex", "homology",
            "--algebra", fixtures().join("a2.algebra.json").to_str().unwrap(),
            "--complex", fixtures().join("a2.rad_inclusion.complex.json").to_str().unwrap(),
            "--format", "json",
        ],
        &[],
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["hsup"], 0);
    assert_eq!(v["hinf"], 0);
}

#[test]
fn corrupt_document_is_exit_one_with_field() {
    let dir = std::env::temp_dir().join(format!("dpd-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.module.json");
    std::fs::write(&bad, r#"{"dims": [1, "x"]}"#).unwrap();
    let out = run(
        &[
            "module", "dpd",
            "--algebra", fixtures().join("a2.algebra.json").to_str().unwrap(),
            "--module", bad.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.module.json"), "stderr: {err}");
    // shape errors carry the offending field
    std::fs::write(&bad, r#"{"dims": [1]}"#).unwrap();
    let out = run(
        &[
            "module", "dpd",
            "--algebra", fixtures().join("a2.algebra.json").to_str().unwrap(),
            "--module", bad.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dims"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn check_ta_positive_and_negative() {
    let out = run(
        &[
            "check-ta",
            "--algebra", fixtures().join("dual_numbers.algebra.json").to_str().unwrap(),
            "--module", fixtures().join("dual_numbers.point.module.json").to_str().unwrap(),
            "--format", "json", "--window", "6",
        ],
        &[],
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["all_pass"], true);
    // non Ding projective module is rejected as input
    let out = run(
        &[
            "check-ta",
            "--algebra", fixtures().join("arrow_loop.algebra.json").to_str().unwrap(),
            "--module", fixtures().join("arrow_loop.loop_simple.module.json").to_str().unwrap(),
            "--window", "4",
        ],
        &[],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "suite",
        "--seed", "7",
        "--window", "3",
        "--format", "json",
    ];
    let a = run(&args, &[]);
    let b = run(&args, &[]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b), "same seed and window must be byte identical");
}

#[test]
fn cache_is_transparent() {
    let dir = std::env::temp_dir().join(format!("dpd-cache-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let alg_path = fixtures().join("dual_numbers.algebra.json");
    let mod_path = fixtures().join("dual_numbers.point.module.json");
    let args = [
        "module", "dpd",
        "--algebra", alg_path.to_str().unwrap(),
        "--module", mod_path.to_str().unwrap(),
        "--format", "json", "--window", "5",
    ];
    let plain = run(&args, &[]);
    let cold = run(&args, &[("DPD_CACHE", dir.to_str().unwrap())]);
    let warm = run(&args, &[("DPD_CACHE", dir.to_str().unwrap())]);
    assert!(std::fs::read_dir(&dir).unwrap().count() > 0, "cache populated");
    assert_eq!(stdout(&plain), stdout(&cold));
    assert_eq!(stdout(&plain), stdout(&warm));
    let off = run(
        &[
            "module", "dpd",
            "--algebra", fixtures().join("dual_numbers.algebra.json").to_str().unwrap(),
            "--module", fixtures().join("dual_numbers.point.module.json").to_str().unwrap(),
            "--format", "json", "--window", "5",
            "--cache", "off",
        ],
        &[("DPD_CACHE", dir.to_str().unwrap())],
    );
    assert_eq!(stdout(&plain), stdout(&off));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn resolve_emits_complex_document() {
    let out = run(
        &[
            "resolve",
            "--algebra", fixtures().join("dual_numbers.algebra.json").to_str().unwrap(),
            "--module", fixtures().join("dual_numbers.point.module.json").to_str().unwrap(),
            "--degree", "4",
            "--format", "json",
        ],
        &[],
    );
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["minimal"], true);
    assert_eq!(v["complex"]["lo"], 0);
    assert_eq!(v["complex"]["hi"], 4);
}

#[test]
fn rhom_report() {
    let out = run(
        &[
            "complex", "rhom",
            "--algebra", fixtures().join("a2.algebra.json").to_str().unwrap(),
            "--complex", fixtures().join("a2.rad_inclusion.complex.json").to_str().unwrap(),
            "--target", fixtures().join("a2.rad_inclusion.complex.json").to_str().unwrap(),
            "--lo", "-3", "--hi", "3",
            "--format", "json",
        ],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["dims"].is_object());
}
