//! End-to-end tests of the binary: golden outputs, exit codes,
//! determinism, and the shipped spec files.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zdzeta"))
}

fn specs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn spec(name: &str) -> String {
    specs_dir().join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_golden_values() {
    assert_eq!(
        stdout(&["count", "--spec", &spec("ledrappier.json"), "--hnf", "3,1,0,1"]).trim(),
        "2^2"
    );
    assert_eq!(
        stdout(&["count", "--spec", &spec("ledrappier.json"), "--hnf", "2,0,0,2"]).trim(),
        "1"
    );
    assert_eq!(
        stdout(&["count", "--spec", &spec("pshift.json"), "--n", "6"]).trim(),
        "2^4"
    );
    assert_eq!(
        stdout(&["count", "--spec", &spec("pshift.json"), "--n", "6", "--decimal"]).trim(),
        "16"
    );
    assert_eq!(
        stdout(&["count", "--spec", &spec("ledrappier3.json"), "--hnf", "3,1,0,0,1,0,0,0,2"])
            .trim(),
        "2^4"
    );
}

#[test]
fn zeta_partition_numbers() {
    let out = stdout(&["zeta", "--spec", &spec("point.json"), "--terms", "10"]);
    assert!(out.contains("c = 1,1,2,3,5,7,11,15,22,30,42"), "got:\n{out}");
}

#[test]
fn growth_golden_line() {
    let out = stdout(&["growth", "--spec", &spec("ledrappier3.json"), "--max-index", "7"]);
    assert!(
        out.contains("g = 2/3·log 2, attained at [3,1,0,1], tail certified"),
        "got:\n{out}"
    );
}

#[test]
fn classify_both_branches() {
    let out = stdout(&["classify", "--spec", &spec("pshift.json")]);
    assert!(out.contains("boundary"));
    assert!(out.contains("(t+1),1,1,2,0.5"));
    let out = stdout(&["classify", "--spec", &spec("fullshift.json")]);
    assert!(out.contains("rational: zeta(z) = (1 - 2z)^(-1)"));
}

#[test]
fn overconv_table() {
    let out = stdout(&["overconv", "--spec", &spec("pshift.json"), "--depth", "6"]);
    for k in 1..=6u32 {
        assert!(
            out.contains(&format!("{k},{},0.500000000,2^-{}", 1u64 << k, 1u64 << k)),
            "missing row {k} in:\n{out}"
        );
    }
    // explicit witness in coefficient form
    let with_witness =
        stdout(&["overconv", "--spec", &spec("pshift.json"), "--witness", "1,1", "--depth", "2"]);
    assert!(with_witness.contains("witness=(t+1)"));
}

#[test]
fn poles_contains_first_ring() {
    let out = stdout(&["poles", "--spec", &spec("ledrappier3.json"), "--max-index", "4"]);
    assert!(out.contains("0.629960525,3,\"[3,1,0,1]\",2^2"), "got:\n{out}");
}

#[test]
fn primescan_flags_and_threshold() {
    let out = stdout(&[
        "primescan",
        "--spec",
        &spec("ledrappier.json"),
        "--eps",
        "1/10",
        "--qmax",
        "30",
    ]);
    assert!(out.contains("# threshold_q0=107."));
    assert!(out.contains("5,true,m_2=4,\"1\""));
    assert!(out.contains("7,false,m_2=3,"));
}

#[test]
fn all_shipped_specs_validate_at_24() {
    for name in [
        "point.json",
        "ledrappier.json",
        "ledrappier3.json",
        "pshift.json",
        "fullshift.json",
        "principal2.json",
        "mixed.json",
    ] {
        let out = run(&["validate", "--spec", &spec(name), "--max-index", "24", "--jobs", "4"]);
        assert!(out.status.success(), "{name} failed validation");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(
            text.contains("comparisons match"),
            "{name} summary missing: {text}"
        );
    }
}

#[test]
fn byte_identical_reruns() {
    let args = ["zeta", "--spec", &spec("ledrappier.json"), "--terms", "20"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(a.status.success());

    // parallel and serial runs agree too
    let serial = run(&["validate", "--spec", &spec("ledrappier.json"), "--max-index", "10"]);
    let parallel = run(&[
        "validate",
        "--spec",
        &spec("ledrappier.json"),
        "--max-index",
        "10",
        "--jobs",
        "8",
    ]);
    assert_eq!(serial.stdout, parallel.stdout);
}

#[test]
fn exit_codes() {
    // usage error: unknown flag
    let out = run(&["count", "--nonsense"]);
    assert_eq!(out.status.code(), Some(1));

    // usage error: missing spec file
    let out = run(&["count", "--spec", "/nonexistent.json", "--hnf", "1,0,0,1"]);
    assert_eq!(out.status.code(), Some(1));

    // domain error: non-mixing spec
    let path = std::env::temp_dir().join(format!("zdzeta-nonmixing-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{ "d": 2, "components": [ { "kind": "curve", "p": 2,
             "images": ["0,1", "0,1"], "inverted": ["0,1"], "mult": 1 } ] }"#,
    )
    .unwrap();
    let out = run(&["count", "--spec", path.to_str().unwrap(), "--hnf", "1,0,0,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not mixing"));
    std::fs::remove_file(&path).ok();

    // domain error: sigma of zero
    let out = run(&["sigma", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_file_and_json_format() {
    let path = std::env::temp_dir().join(format!("zdzeta-out-{}.csv", std::process::id()));
    let _ = stdout(&[
        "poles",
        "--spec",
        &spec("ledrappier3.json"),
        "--max-index",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("radius,multiplicity"));
    std::fs::remove_file(&path).ok();

    let json = stdout(&[
        "growth",
        "--spec",
        &spec("ledrappier3.json"),
        "--max-index",
        "7",
        "--format",
        "json",
    ]);
    let body: serde_json::Value =
        serde_json::from_str(json.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n").as_str())
            .unwrap();
    assert_eq!(body["certified"], serde_json::Value::Bool(true));
    assert_eq!(body["argmax"], "[3,1,0,1]");
}

#[test]
fn gronwall_and_sigma() {
    assert_eq!(stdout(&["sigma", "6"]).trim(), "12");
    assert_eq!(stdout(&["sigma", "30"]).trim(), "72");
    let out = stdout(&["gronwall", "--t", "1", "--q", "2", "--k", "3"]);
    assert!(out.starts_with("N = 3,"), "got {out}");
}
